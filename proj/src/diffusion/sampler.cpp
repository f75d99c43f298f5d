#include "diffusion/sampler.hpp"

#include <stdexcept>

namespace diffusion {

using numkit::Tensor;

SampleResult ddim_sample(const DenoiseFn& denoise, PredictionType type,
                         const std::vector<int>& chunk_shape, int n_steps,
                         const NoiseSchedule& sched, numkit::RngStream& rng) {
    const std::vector<int> grid = sampler_grid(sched.timesteps(), n_steps);

    SampleResult res;
    Tensor a = rng.normal_tensor(chunk_shape);
    for (size_t i = 0; i < grid.size(); ++i) {
        const int t = grid[i];
        const int t_next = (i + 1 < grid.size()) ? grid[i + 1] : 0;
        const Tensor raw = denoise(a, t);
        ++res.nfe;
        const PredictionPair est = convert_prediction(raw, type, a, t, sched);
        const Tensor sample_clipped = numkit::clip(est.sample, -1.0, 1.0);
        a = ddim_jump(a, t, t_next, sample_clipped, sched);
    }
    if (res.nfe != n_steps)
        throw std::logic_error("ddim_sample: NFE accounting mismatch");
    res.chunk = numkit::clip(a, -1.0, 1.0);
    return res;
}

}  // namespace diffusion
