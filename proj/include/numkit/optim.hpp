#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "numkit/graph.hpp"
#include "numkit/tensor.hpp"

namespace numkit {

using ParamMap = std::map<std::string, Tensor>;

/// AdamW with decoupled weight decay: decay is applied to the parameters
/// directly, never folded into the gradient-based update.
class AdamW {
public:
    struct Config {
        double lr = 5e-5;
        double beta1 = 0.9;
        double beta2 = 0.999;
        double eps = 1e-8;
        double weight_decay = 0.0;
    };

    explicit AdamW(Config cfg);

    /// One update. Throws on NaN/Inf gradients or shape mismatch; in either
    /// case neither the parameters nor the moments are touched.
    void step(ParamMap& params, const GradMap& grads);

    void set_lr(double lr);
    double lr() const { return cfg_.lr; }
    int64_t step_count() const { return step_count_; }

private:
    Config cfg_;
    int64_t step_count_ = 0;
    std::map<std::string, Tensor> m_;
    std::map<std::string, Tensor> v_;
};

enum class LrKind { CosineWithWarmup, Constant };

/// Linear warmup from 0 to base_lr over warmup_iters, then either a half
/// cosine down to 0 at total_iters or a constant plateau.
struct LrSchedule {
    double base_lr = 5e-5;
    int warmup_iters = 500;
    int total_iters = 1;
    LrKind kind = LrKind::CosineWithWarmup;
};

double lr_at(const LrSchedule& sched, int iter);

}  // namespace numkit
