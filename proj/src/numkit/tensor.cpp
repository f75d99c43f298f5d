#include "numkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace numkit {

int64_t shape_product(const std::vector<int>& shape) {
    int64_t n = 1;
    for (int d : shape) {
        if (d <= 0) throw std::invalid_argument("Tensor: non-positive dimension in shape");
        n *= d;
    }
    return n;
}

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    data_.assign(static_cast<size_t>(shape_product(shape_)), 0.0);
}

Tensor::Tensor(std::vector<int> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_product(shape_) != static_cast<int64_t>(data_.size()))
        throw std::invalid_argument("Tensor: shape/data length mismatch");
}

Tensor Tensor::scalar(double v) { return Tensor({1}, {v}); }

Tensor Tensor::full(std::vector<int> shape, double v) {
    Tensor t(std::move(shape));
    std::fill(t.data_.begin(), t.data_.end(), v);
    return t;
}

int Tensor::rows() const {
    if (shape_.size() == 2) return shape_[0];
    if (shape_.size() == 1) return 1;
    throw std::invalid_argument("Tensor::rows: tensor is not 1-D or 2-D");
}

int Tensor::cols() const {
    if (shape_.size() == 2) return shape_[1];
    if (shape_.size() == 1) return shape_[0];
    throw std::invalid_argument("Tensor::cols: tensor is not 1-D or 2-D");
}

bool Tensor::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::string Tensor::shape_str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < shape_.size(); ++i) os << (i ? "," : "") << shape_[i];
    os << "]";
    return os.str();
}

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + a.shape_str() +
                                    " vs " + b.shape_str());
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "add");
    Tensor out = a;
    const double* pb = b.data();
    double* po = out.data();
    for (int64_t i = 0; i < out.size(); ++i) po[i] += pb[i];
    return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "sub");
    Tensor out = a;
    const double* pb = b.data();
    double* po = out.data();
    for (int64_t i = 0; i < out.size(); ++i) po[i] -= pb[i];
    return out;
}

Tensor mul(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "mul");
    Tensor out = a;
    const double* pb = b.data();
    double* po = out.data();
    for (int64_t i = 0; i < out.size(); ++i) po[i] *= pb[i];
    return out;
}

Tensor scale(const Tensor& a, double s) {
    Tensor out = a;
    double* po = out.data();
    for (int64_t i = 0; i < out.size(); ++i) po[i] *= s;
    return out;
}

Tensor clip(const Tensor& a, double lo, double hi) {
    Tensor out = a;
    double* po = out.data();
    for (int64_t i = 0; i < out.size(); ++i) po[i] = std::clamp(po[i], lo, hi);
    return out;
}

void axpy_inplace(Tensor& y, double alpha, const Tensor& x) {
    require_same_shape(y, x, "axpy");
    double* py = y.data();
    const double* px = x.data();
    for (int64_t i = 0; i < y.size(); ++i) py[i] += alpha * px[i];
}

void ema_inplace(Tensor& y, double mu, const Tensor& x) {
    require_same_shape(y, x, "ema");
    double* py = y.data();
    const double* px = x.data();
    for (int64_t i = 0; i < y.size(); ++i) py[i] = mu * py[i] + (1.0 - mu) * px[i];
}

namespace {

void require_2d(const Tensor& t, const char* op) {
    if (t.shape().size() != 2)
        throw std::invalid_argument(std::string(op) + ": expected 2-D tensor, got " + t.shape_str());
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
    require_2d(a, "matmul");
    require_2d(b, "matmul");
    const int m = a.rows(), k = a.cols(), n = b.cols();
    if (b.rows() != k)
        throw std::invalid_argument("matmul: inner dimension mismatch " + a.shape_str() + " x " +
                                    b.shape_str());
    Tensor c({m, n});
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    for (int i = 0; i < m; ++i) {
        double* crow = pc + static_cast<size_t>(i) * n;
        for (int l = 0; l < k; ++l) {
            const double av = pa[static_cast<size_t>(i) * k + l];
            const double* brow = pb + static_cast<size_t>(l) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

Tensor matmul_tn(const Tensor& a, const Tensor& b) {
    require_2d(a, "matmul_tn");
    require_2d(b, "matmul_tn");
    const int k = a.rows(), m = a.cols(), n = b.cols();
    if (b.rows() != k)
        throw std::invalid_argument("matmul_tn: leading dimension mismatch " + a.shape_str() +
                                    " x " + b.shape_str());
    Tensor c({m, n});
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    for (int l = 0; l < k; ++l) {
        const double* arow = pa + static_cast<size_t>(l) * m;
        const double* brow = pb + static_cast<size_t>(l) * n;
        for (int i = 0; i < m; ++i) {
            const double av = arow[i];
            double* crow = pc + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
    require_2d(a, "matmul_nt");
    require_2d(b, "matmul_nt");
    const int m = a.rows(), k = a.cols(), n = b.rows();
    if (b.cols() != k)
        throw std::invalid_argument("matmul_nt: trailing dimension mismatch " + a.shape_str() +
                                    " x " + b.shape_str());
    Tensor c({m, n});
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    for (int i = 0; i < m; ++i) {
        const double* arow = pa + static_cast<size_t>(i) * k;
        double* crow = pc + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const double* brow = pb + static_cast<size_t>(j) * k;
            double acc = 0.0;
            for (int l = 0; l < k; ++l) acc += arow[l] * brow[l];
            crow[j] = acc;
        }
    }
    return c;
}

double dot(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "dot");
    double acc = 0.0;
    for (int64_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double sum_all(const Tensor& a) {
    double acc = 0.0;
    for (int64_t i = 0; i < a.size(); ++i) acc += a[i];
    return acc;
}

double max_abs(const Tensor& a) {
    double m = 0.0;
    for (int64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

}  // namespace numkit
