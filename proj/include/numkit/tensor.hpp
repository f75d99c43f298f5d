#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace numkit {

/// Dense row-major tensor of 64-bit floats. The only numeric carrier in the
/// project; shapes are explicit everywhere (no broadcasting beyond bias-add).
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape);  // zero-filled
    Tensor(std::vector<int> shape, std::vector<double> data);

    static Tensor scalar(double v);
    static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }
    static Tensor full(std::vector<int> shape, double v);

    const std::vector<int>& shape() const { return shape_; }
    int64_t size() const { return static_cast<int64_t>(data_.size()); }
    bool empty() const { return data_.empty(); }

    // 2-D accessors; rows()/cols() treat a 1-D tensor as a single row.
    int rows() const;
    int cols() const;

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& vec() { return data_; }
    const std::vector<double>& vec() const { return data_; }

    double& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
    double operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }
    double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols() + c]; }
    double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols() + c]; }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    bool all_finite() const;

    std::string shape_str() const;

private:
    std::vector<int> shape_;
    std::vector<double> data_;
};

int64_t shape_product(const std::vector<int>& shape);

// Elementwise / BLAS-ish helpers. All validate shapes and throw
// std::invalid_argument on mismatch.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
Tensor clip(const Tensor& a, double lo, double hi);

// y += alpha * x
void axpy_inplace(Tensor& y, double alpha, const Tensor& x);
// y = mu * y + (1 - mu) * x
void ema_inplace(Tensor& y, double mu, const Tensor& x);

// C(m,n) = A(m,k) * B(k,n)
Tensor matmul(const Tensor& a, const Tensor& b);
// C(m,n) = A(k,m)^T * B(k,n)
Tensor matmul_tn(const Tensor& a, const Tensor& b);
// C(m,n) = A(m,k) * B(n,k)^T
Tensor matmul_nt(const Tensor& a, const Tensor& b);

double dot(const Tensor& a, const Tensor& b);
double sum_all(const Tensor& a);
double max_abs(const Tensor& a);

}  // namespace numkit
