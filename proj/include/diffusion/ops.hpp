#pragma once

#include <utility>
#include <vector>

#include "diffusion/schedule.hpp"
#include "numkit/tensor.hpp"

namespace diffusion {

/// a_t = sqrt(alpha_bar_t) * a0 + sqrt(1 - alpha_bar_t) * noise, t >= 1.
numkit::Tensor forward_noise(const numkit::Tensor& a0, int t, const numkit::Tensor& noise,
                             const NoiseSchedule& sched);

/// One reverse step t -> t-1:
///   a_{t-1} = step_alpha[t] * (a_t - step_gamma[t] * eps_hat) + eta * step_sigma[t] * z.
/// eta = 0 (default) is the deterministic DDIM update; eta > 0 requires z.
numkit::Tensor reverse_step(const numkit::Tensor& a_t, int t, const numkit::Tensor& eps_hat,
                            const NoiseSchedule& sched, const numkit::Tensor* z = nullptr,
                            double eta = 0.0);

struct PredictionPair {
    numkit::Tensor sample;   // a0 estimate
    numkit::Tensor epsilon;  // noise estimate
};

/// Resolve a raw network output into both estimates through the noising
/// identity a_t = sqrt(ab)*a0_hat + sqrt(1-ab)*eps_hat. For Sample inputs at
/// t = 0 the epsilon estimate is unconstrained and returned as zeros.
PredictionPair convert_prediction(const numkit::Tensor& pred, PredictionType type,
                                  const numkit::Tensor& a_t, int t, const NoiseSchedule& sched);

/// Deterministic jump t_from -> t_to (t_to < t_from) given a clipped sample
/// estimate: recomputes the epsilon consistent with it, then re-noises to
/// t_to. At t_to = 0 returns the sample estimate unchanged.
numkit::Tensor ddim_jump(const numkit::Tensor& a_from, int t_from, int t_to,
                         const numkit::Tensor& sample_est, const NoiseSchedule& sched);

/// Timestep grid for an n-step sampler: n strictly decreasing values from T
/// down to T/n (uniform stride); the final jump target after the last entry
/// is t = 0.
std::vector<int> sampler_grid(int timesteps, int n_steps);

}  // namespace diffusion
