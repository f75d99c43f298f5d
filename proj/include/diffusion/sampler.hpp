#pragma once

#include <functional>

#include "diffusion/ops.hpp"
#include "diffusion/schedule.hpp"
#include "numkit/rng.hpp"
#include "numkit/tensor.hpp"

namespace diffusion {

/// Raw denoiser output for a noisy chunk at timestep t, with any conditioning
/// already bound. Interpreted through the supplied PredictionType.
using DenoiseFn = std::function<numkit::Tensor(const numkit::Tensor& a_t, int t)>;

struct SampleResult {
    numkit::Tensor chunk;  // final a0 estimate, clipped to [-1, 1]
    int nfe = 0;           // network evaluations actually performed
};

/// Deterministic DDIM sampling from pure Gaussian noise over a strided grid
/// of n_steps timesteps. Sample estimates are clipped to [-1, 1] at every
/// solver step; exactly n_steps denoiser evaluations are performed.
SampleResult ddim_sample(const DenoiseFn& denoise, PredictionType type,
                         const std::vector<int>& chunk_shape, int n_steps,
                         const NoiseSchedule& sched, numkit::RngStream& rng);

}  // namespace diffusion
