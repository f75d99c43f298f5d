#pragma once

#include "numkit/tensor.hpp"

namespace manipenv {

/// Greedy farthest point sampling over an N x 2 cloud. Selection starts at
/// seed_index; each round picks the point maximizing the minimum distance to
/// the selected set, ties broken by lowest index. Output rows are in
/// selection order. Throws if N < target.
numkit::Tensor fps_downsample(const numkit::Tensor& points, int target, int seed_index = 0);

/// Index variant used by tests and callers that need provenance.
std::vector<int> fps_indices(const numkit::Tensor& points, int target, int seed_index = 0);

}  // namespace manipenv
