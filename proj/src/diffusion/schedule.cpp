#include "diffusion/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diffusion {

std::string to_string(PredictionType t) {
    return t == PredictionType::Sample ? "sample" : "epsilon";
}

PredictionType prediction_type_from_string(const std::string& s) {
    if (s == "sample") return PredictionType::Sample;
    if (s == "epsilon") return PredictionType::Epsilon;
    throw std::invalid_argument("unknown prediction type '" + s + "'");
}

namespace {

// Squared-cosine alpha-bar profile with the usual 0.008 offset.
double cosine_profile(double u) {
    const double s = 0.008;
    const double angle = (u + s) / (1.0 + s) * std::numbers::pi / 2.0;
    const double c = std::cos(angle);
    return c * c;
}

}  // namespace

NoiseSchedule::NoiseSchedule(int timesteps) : T_(timesteps) {
    if (T_ < 1) throw std::invalid_argument("NoiseSchedule: timesteps must be >= 1");
    beta_.assign(static_cast<size_t>(T_) + 1, 0.0);
    alpha_bar_.assign(static_cast<size_t>(T_) + 1, 0.0);
    step_alpha_.assign(static_cast<size_t>(T_) + 1, 0.0);
    step_gamma_.assign(static_cast<size_t>(T_) + 1, 0.0);
    step_sigma_.assign(static_cast<size_t>(T_) + 1, 0.0);

    alpha_bar_[0] = 1.0;
    for (int t = 1; t <= T_; ++t) {
        const double ratio =
            cosine_profile(static_cast<double>(t) / T_) / cosine_profile(static_cast<double>(t - 1) / T_);
        beta_[static_cast<size_t>(t)] = std::min(1.0 - ratio, 0.999);
        alpha_bar_[static_cast<size_t>(t)] =
            alpha_bar_[static_cast<size_t>(t) - 1] * (1.0 - beta_[static_cast<size_t>(t)]);
    }

    for (int t = 1; t <= T_; ++t) {
        const double ab = alpha_bar_[static_cast<size_t>(t)];
        const double ab_prev = alpha_bar_[static_cast<size_t>(t) - 1];
        step_alpha_[static_cast<size_t>(t)] = std::sqrt(ab_prev / ab);
        step_gamma_[static_cast<size_t>(t)] =
            std::sqrt(1.0 - ab) - std::sqrt((1.0 - ab_prev) * ab / ab_prev);
        // eta = 1 ancestral std
        step_sigma_[static_cast<size_t>(t)] =
            std::sqrt((1.0 - ab_prev) / (1.0 - ab)) * std::sqrt(1.0 - ab / ab_prev);
    }
}

void NoiseSchedule::require_in_range(int t, int lo, const char* op) const {
    if (t < lo || t > T_)
        throw std::out_of_range(std::string(op) + ": timestep " + std::to_string(t) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(T_) + "]");
}

double NoiseSchedule::beta(int t) const {
    require_in_range(t, 1, "beta");
    return beta_[static_cast<size_t>(t)];
}

double NoiseSchedule::alpha(int t) const { return 1.0 - beta(t); }

double NoiseSchedule::alpha_bar(int t) const {
    require_in_range(t, 0, "alpha_bar");
    return alpha_bar_[static_cast<size_t>(t)];
}

double NoiseSchedule::sqrt_alpha_bar(int t) const { return std::sqrt(alpha_bar(t)); }

double NoiseSchedule::sqrt_one_minus_alpha_bar(int t) const {
    return std::sqrt(1.0 - alpha_bar(t));
}

double NoiseSchedule::step_alpha(int t) const {
    require_in_range(t, 1, "step_alpha");
    return step_alpha_[static_cast<size_t>(t)];
}

double NoiseSchedule::step_gamma(int t) const {
    require_in_range(t, 1, "step_gamma");
    return step_gamma_[static_cast<size_t>(t)];
}

double NoiseSchedule::step_sigma(int t) const {
    require_in_range(t, 1, "step_sigma");
    return step_sigma_[static_cast<size_t>(t)];
}

}  // namespace diffusion
