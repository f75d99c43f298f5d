#include "numkit/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace numkit {

namespace {

// SplitMix64 finalizer; full 64-bit permutation.
uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

RngStream RngStream::root(uint64_t seed) { return RngStream(mix64(seed), 0); }

RngStream RngStream::split(uint64_t index) const {
    return RngStream(mix64(key_ ^ mix64(0xD1B54A32D192ED03ULL ^ index)), 0);
}

RngStream RngStream::split(std::string_view name) const { return split(fnv1a(name)); }

uint64_t RngStream::next_u64() { return mix64(key_ ^ mix64(++counter_)); }

double RngStream::uniform() {
    // 53-bit mantissa construction, [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int RngStream::uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
}

Tensor RngStream::normal_tensor(std::vector<int> shape) {
    Tensor t(std::move(shape));
    for (int64_t i = 0; i < t.size(); ++i) t[i] = normal();
    return t;
}

void RngStream::shuffle(std::vector<int>& indices) {
    for (size_t i = indices.size(); i > 1; --i) {
        const size_t j = next_u64() % i;
        std::swap(indices[i - 1], indices[j]);
    }
}

}  // namespace numkit
