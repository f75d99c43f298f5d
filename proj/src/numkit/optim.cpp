#include "numkit/optim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace numkit {

AdamW::AdamW(Config cfg) : cfg_(cfg) {
    if (cfg_.lr < 0.0) throw std::invalid_argument("AdamW: lr must be >= 0");
}

void AdamW::set_lr(double lr) {
    if (lr < 0.0) throw std::invalid_argument("AdamW: lr must be >= 0");
    cfg_.lr = lr;
}

void AdamW::step(ParamMap& params, const GradMap& grads) {
    // Validate before mutating anything.
    for (auto& [name, p] : params) {
        auto it = grads.find(name);
        if (it == grads.end())
            throw std::invalid_argument("AdamW: missing gradient for parameter '" + name + "'");
        if (!it->second.same_shape(p))
            throw std::invalid_argument("AdamW: gradient shape mismatch for '" + name + "'");
        if (!it->second.all_finite())
            throw std::invalid_argument("AdamW: non-finite gradient for '" + name + "'");
    }

    ++step_count_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_count_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_count_));

    for (auto& [name, p] : params) {
        const Tensor& g = grads.at(name);
        Tensor& m = m_.try_emplace(name, Tensor(p.shape())).first->second;
        Tensor& v = v_.try_emplace(name, Tensor(p.shape())).first->second;
        double* pp = p.data();
        double* pm = m.data();
        double* pv = v.data();
        const double* pg = g.data();
        for (int64_t i = 0; i < p.size(); ++i) {
            pm[i] = cfg_.beta1 * pm[i] + (1.0 - cfg_.beta1) * pg[i];
            pv[i] = cfg_.beta2 * pv[i] + (1.0 - cfg_.beta2) * pg[i] * pg[i];
            const double mhat = pm[i] / bc1;
            const double vhat = pv[i] / bc2;
            pp[i] -= cfg_.lr * cfg_.weight_decay * pp[i];
            pp[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
        }
    }
}

double lr_at(const LrSchedule& sched, int iter) {
    if (sched.total_iters < 1) throw std::invalid_argument("lr_at: total_iters must be >= 1");
    if (sched.warmup_iters < 0) throw std::invalid_argument("lr_at: warmup_iters must be >= 0");
    if (iter < 0 || iter > sched.total_iters)
        throw std::out_of_range("lr_at: iter " + std::to_string(iter) + " outside [0, " +
                                std::to_string(sched.total_iters) + "]");
    if (sched.warmup_iters > 0 && iter < sched.warmup_iters)
        return sched.base_lr * static_cast<double>(iter) / sched.warmup_iters;
    if (sched.kind == LrKind::Constant) return sched.base_lr;
    const double span = static_cast<double>(sched.total_iters - sched.warmup_iters);
    if (span <= 0.0) return 0.0;
    const double progress = static_cast<double>(iter - sched.warmup_iters) / span;
    return sched.base_lr * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

}  // namespace numkit
