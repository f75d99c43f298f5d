#pragma once

#include <string>
#include <vector>

namespace diffusion {

enum class PredictionType { Sample, Epsilon };

std::string to_string(PredictionType t);
PredictionType prediction_type_from_string(const std::string& s);

/// Discrete-time noise schedule over timesteps t in [0, T]; t = 0 is clean
/// data (alpha_bar[0] == 1 exactly). Betas follow the squared-cosine family.
///
/// Derived per-step coefficients drive the deterministic reverse update
///   a_{t-1} = step_alpha[t] * (a_t - step_gamma[t] * eps_hat) + sigma * z,
/// which with sigma = 0 is the eta=0 DDIM step; step_sigma[t] is the
/// ancestral (eta = 1) standard deviation kept for the stochastic test path.
class NoiseSchedule {
public:
    explicit NoiseSchedule(int timesteps = 100);

    int timesteps() const { return T_; }

    double beta(int t) const;        // t in [1, T]
    double alpha(int t) const;       // 1 - beta(t)
    double alpha_bar(int t) const;   // t in [0, T]
    double sqrt_alpha_bar(int t) const;
    double sqrt_one_minus_alpha_bar(int t) const;

    double step_alpha(int t) const;  // t in [1, T]
    double step_gamma(int t) const;
    double step_sigma(int t) const;

    void require_in_range(int t, int lo, const char* op) const;

private:
    int T_;
    std::vector<double> beta_;        // index 1..T
    std::vector<double> alpha_bar_;   // index 0..T
    std::vector<double> step_alpha_;  // index 1..T
    std::vector<double> step_gamma_;
    std::vector<double> step_sigma_;
};

}  // namespace diffusion
