#include "diffusion/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace diffusion {

using numkit::Tensor;

Tensor forward_noise(const Tensor& a0, int t, const Tensor& noise, const NoiseSchedule& sched) {
    sched.require_in_range(t, 1, "forward_noise");
    if (!a0.same_shape(noise))
        throw std::invalid_argument("forward_noise: a0/noise shape mismatch");
    const double sa = sched.sqrt_alpha_bar(t);
    const double sb = sched.sqrt_one_minus_alpha_bar(t);
    Tensor out = a0;
    for (int64_t i = 0; i < out.size(); ++i) out[i] = sa * out[i] + sb * noise[i];
    return out;
}

Tensor reverse_step(const Tensor& a_t, int t, const Tensor& eps_hat, const NoiseSchedule& sched,
                    const Tensor* z, double eta) {
    sched.require_in_range(t, 1, "reverse_step");
    if (!a_t.same_shape(eps_hat))
        throw std::invalid_argument("reverse_step: a_t/eps_hat shape mismatch");
    if (eta != 0.0 && z == nullptr)
        throw std::invalid_argument("reverse_step: eta > 0 requires a noise tensor");
    const double al = sched.step_alpha(t);
    const double ga = sched.step_gamma(t);
    Tensor out = a_t;
    for (int64_t i = 0; i < out.size(); ++i) out[i] = al * (out[i] - ga * eps_hat[i]);
    if (eta != 0.0) {
        const double sg = eta * sched.step_sigma(t);
        for (int64_t i = 0; i < out.size(); ++i) out[i] += sg * (*z)[i];
    }
    return out;
}

PredictionPair convert_prediction(const Tensor& pred, PredictionType type, const Tensor& a_t,
                                  int t, const NoiseSchedule& sched) {
    sched.require_in_range(t, 0, "convert_prediction");
    if (!pred.same_shape(a_t))
        throw std::invalid_argument("convert_prediction: pred/a_t shape mismatch");
    const double sa = sched.sqrt_alpha_bar(t);
    const double sb = sched.sqrt_one_minus_alpha_bar(t);
    PredictionPair out;
    if (type == PredictionType::Sample) {
        out.sample = pred;
        out.epsilon = Tensor(a_t.shape());
        if (t > 0) {
            for (int64_t i = 0; i < a_t.size(); ++i)
                out.epsilon[i] = (a_t[i] - sa * pred[i]) / sb;
        }
        // at t = 0 the identity reads a_0 = a0_hat; epsilon is unconstrained
    } else {
        if (t == 0)
            throw std::invalid_argument(
                "convert_prediction: epsilon prediction undefined at t = 0");
        out.epsilon = pred;
        out.sample = Tensor(a_t.shape());
        for (int64_t i = 0; i < a_t.size(); ++i) out.sample[i] = (a_t[i] - sb * pred[i]) / sa;
    }
    return out;
}

Tensor ddim_jump(const Tensor& a_from, int t_from, int t_to, const Tensor& sample_est,
                 const NoiseSchedule& sched) {
    sched.require_in_range(t_from, 1, "ddim_jump");
    if (t_to < 0 || t_to >= t_from)
        throw std::invalid_argument("ddim_jump: need 0 <= t_to < t_from");
    if (!a_from.same_shape(sample_est))
        throw std::invalid_argument("ddim_jump: shape mismatch");
    if (t_to == 0) return sample_est;
    const double sa_from = sched.sqrt_alpha_bar(t_from);
    const double sb_from = sched.sqrt_one_minus_alpha_bar(t_from);
    const double sa_to = sched.sqrt_alpha_bar(t_to);
    const double sb_to = sched.sqrt_one_minus_alpha_bar(t_to);
    Tensor out = a_from;
    for (int64_t i = 0; i < out.size(); ++i) {
        const double eps = (a_from[i] - sa_from * sample_est[i]) / sb_from;
        out[i] = sa_to * sample_est[i] + sb_to * eps;
    }
    return out;
}

std::vector<int> sampler_grid(int timesteps, int n_steps) {
    if (n_steps < 1 || n_steps > timesteps)
        throw std::invalid_argument("sampler_grid: n_steps must be in [1, timesteps]");
    std::vector<int> grid(static_cast<size_t>(n_steps));
    for (int i = 0; i < n_steps; ++i) {
        const long long v =
            static_cast<long long>(timesteps) * (n_steps - i) / n_steps;
        grid[static_cast<size_t>(i)] = static_cast<int>(v);
    }
    grid[0] = timesteps;
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] >= grid[i - 1] || grid[i] < 1)
            throw std::invalid_argument("sampler_grid: n_steps too large for timesteps");
    return grid;
}

}  // namespace diffusion
