#pragma once

#include <cstdint>
#include <string_view>

#include "numkit/tensor.hpp"

namespace numkit {

/// Counter-based splittable PRNG. A stream is (key, counter); drawing advances
/// the counter only, so identical seeds replay identical sequences and child
/// streams derived via split() are independent of the parent's position.
class RngStream {
public:
    static RngStream root(uint64_t seed);

    RngStream split(uint64_t index) const;
    RngStream split(std::string_view name) const;

    uint64_t next_u64();
    double uniform();                  // [0, 1)
    double uniform(double lo, double hi);
    double normal();                   // N(0, 1), Box-Muller, two draws per call
    int uniform_int(int lo, int hi);   // inclusive bounds

    Tensor normal_tensor(std::vector<int> shape);
    void shuffle(std::vector<int>& indices);  // Fisher-Yates

    uint64_t key() const { return key_; }

private:
    RngStream(uint64_t key, uint64_t counter) : key_(key), counter_(counter) {}

    uint64_t key_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace numkit
