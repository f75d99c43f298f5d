#include "numkit/graph.hpp"

#include <cmath>
#include <stdexcept>

namespace numkit {

namespace {

double softplus(double x) {
    if (x > 20.0) return x;
    if (x < -20.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0) {
        const double z = std::exp(-x);
        return 1.0 / (1.0 + z);
    }
    const double z = std::exp(x);
    return z / (1.0 + z);
}

double mish_fwd(double x) { return x * std::tanh(softplus(x)); }

double mish_bwd(double x) {
    const double ts = std::tanh(softplus(x));
    return ts + x * (1.0 - ts * ts) * sigmoid(x);
}

}  // namespace

NodeId Graph::push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
}

const Graph::Node& Graph::node(NodeId id) const {
    if (id < 0 || static_cast<size_t>(id) >= nodes_.size())
        throw std::invalid_argument("Graph: invalid node id");
    return nodes_[static_cast<size_t>(id)];
}

bool Graph::any_needs_grad(const std::vector<NodeId>& args) const {
    for (NodeId a : args)
        if (node(a).needs_grad) return true;
    return false;
}

void Graph::fail(const char* op, NodeId id, const std::string& what) const {
    throw std::invalid_argument(std::string("Graph::") + op + " (node " + std::to_string(id) +
                                "): " + what);
}

NodeId Graph::input(std::string name, Tensor value) {
    Node n;
    n.value = std::move(value);
    n.name = std::move(name);
    return push(std::move(n));
}

NodeId Graph::param(std::string name, Tensor value) {
    Node n;
    n.value = std::move(value);
    n.name = std::move(name);
    n.is_param = true;
    n.needs_grad = true;
    return push(std::move(n));
}

NodeId Graph::constant(Tensor value) {
    Node n;
    n.value = std::move(value);
    return push(std::move(n));
}

NodeId Graph::matmul(NodeId a, NodeId b) {
    Node n;
    n.op = Op::MatMul;
    n.args = {a, b};
    n.needs_grad = any_needs_grad(n.args);
    n.value = numkit::matmul(node(a).value, node(b).value);
    return push(std::move(n));
}

NodeId Graph::add(NodeId a, NodeId b) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    if (!node(a).value.same_shape(node(b).value))
        fail("add", id, "shape mismatch " + node(a).value.shape_str() + " vs " +
                            node(b).value.shape_str());
    Node n;
    n.op = Op::Add;
    n.args = {a, b};
    n.needs_grad = any_needs_grad(n.args);
    n.value = numkit::add(node(a).value, node(b).value);
    return push(std::move(n));
}

NodeId Graph::sub(NodeId a, NodeId b) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    if (!node(a).value.same_shape(node(b).value))
        fail("sub", id, "shape mismatch " + node(a).value.shape_str() + " vs " +
                            node(b).value.shape_str());
    Node n;
    n.op = Op::Sub;
    n.args = {a, b};
    n.needs_grad = any_needs_grad(n.args);
    n.value = numkit::sub(node(a).value, node(b).value);
    return push(std::move(n));
}

NodeId Graph::mul(NodeId a, NodeId b) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    if (!node(a).value.same_shape(node(b).value))
        fail("mul", id, "shape mismatch " + node(a).value.shape_str() + " vs " +
                            node(b).value.shape_str());
    Node n;
    n.op = Op::Mul;
    n.args = {a, b};
    n.needs_grad = any_needs_grad(n.args);
    n.value = numkit::mul(node(a).value, node(b).value);
    return push(std::move(n));
}

NodeId Graph::scale(NodeId a, double s) {
    Node n;
    n.op = Op::Scale;
    n.args = {a};
    n.c0 = s;
    n.needs_grad = any_needs_grad(n.args);
    n.value = numkit::scale(node(a).value, s);
    return push(std::move(n));
}

NodeId Graph::affine(NodeId x, NodeId w, NodeId b) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    const Tensor& xv = node(x).value;
    const Tensor& wv = node(w).value;
    const Tensor& bv = node(b).value;
    if (xv.shape().size() != 2 || wv.shape().size() != 2)
        fail("affine", id, "x and w must be 2-D");
    if (xv.cols() != wv.rows())
        fail("affine", id, "inner dimension mismatch " + xv.shape_str() + " x " + wv.shape_str());
    if (bv.size() != wv.cols())
        fail("affine", id, "bias length " + bv.shape_str() + " vs w " + wv.shape_str());
    Node n;
    n.op = Op::Affine;
    n.args = {x, w, b};
    n.needs_grad = any_needs_grad(n.args);
    Tensor y = numkit::matmul(xv, wv);
    const int m = y.rows(), c = y.cols();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < c; ++j) y.at(i, j) += bv[j];
    n.value = std::move(y);
    return push(std::move(n));
}

NodeId Graph::tanh_act(NodeId a) {
    Node n;
    n.op = Op::Tanh;
    n.args = {a};
    n.needs_grad = any_needs_grad(n.args);
    Tensor y = node(a).value;
    for (int64_t i = 0; i < y.size(); ++i) y[i] = std::tanh(y[i]);
    n.value = std::move(y);
    return push(std::move(n));
}

NodeId Graph::mish(NodeId a) {
    Node n;
    n.op = Op::Mish;
    n.args = {a};
    n.needs_grad = any_needs_grad(n.args);
    Tensor y = node(a).value;
    for (int64_t i = 0; i < y.size(); ++i) y[i] = mish_fwd(y[i]);
    n.value = std::move(y);
    return push(std::move(n));
}

NodeId Graph::sum(NodeId a) {
    Node n;
    n.op = Op::Sum;
    n.args = {a};
    n.needs_grad = any_needs_grad(n.args);
    n.value = Tensor::scalar(sum_all(node(a).value));
    return push(std::move(n));
}

NodeId Graph::mse(NodeId pred, NodeId target) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    if (!node(pred).value.same_shape(node(target).value))
        fail("mse", id, "shape mismatch " + node(pred).value.shape_str() + " vs " +
                            node(target).value.shape_str());
    Node n;
    n.op = Op::Mse;
    n.args = {pred, target};
    n.needs_grad = any_needs_grad(n.args);
    const Tensor& p = node(pred).value;
    const Tensor& t = node(target).value;
    double acc = 0.0;
    for (int64_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - t[i];
        acc += d * d;
    }
    n.value = Tensor::scalar(acc / static_cast<double>(p.size()));
    return push(std::move(n));
}

NodeId Graph::concat_cols(const std::vector<NodeId>& parts) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    if (parts.empty()) fail("concat_cols", id, "no parts");
    const int m = node(parts[0]).value.rows();
    int total = 0;
    for (NodeId p : parts) {
        if (node(p).value.shape().size() != 2) fail("concat_cols", id, "parts must be 2-D");
        if (node(p).value.rows() != m) fail("concat_cols", id, "row count mismatch");
        total += node(p).value.cols();
    }
    Node n;
    n.op = Op::ConcatCols;
    n.args = parts;
    n.needs_grad = any_needs_grad(n.args);
    Tensor y({m, total});
    int off = 0;
    for (NodeId p : parts) {
        const Tensor& v = node(p).value;
        const int c = v.cols();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < c; ++j) y.at(i, off + j) = v.at(i, j);
        off += c;
    }
    n.value = std::move(y);
    return push(std::move(n));
}

NodeId Graph::row_scale(NodeId x, NodeId s) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    const Tensor& xv = node(x).value;
    const Tensor& sv = node(s).value;
    if (xv.shape().size() != 2) fail("row_scale", id, "x must be 2-D");
    if (sv.shape().size() != 2 || sv.cols() != 1 || sv.rows() != xv.rows())
        fail("row_scale", id, "scale must be (" + std::to_string(xv.rows()) + ",1), got " +
                                  sv.shape_str());
    Node n;
    n.op = Op::RowScale;
    n.args = {x, s};
    n.needs_grad = any_needs_grad(n.args);
    Tensor y = xv;
    for (int i = 0; i < y.rows(); ++i) {
        const double f = sv.at(i, 0);
        for (int j = 0; j < y.cols(); ++j) y.at(i, j) *= f;
    }
    n.value = std::move(y);
    return push(std::move(n));
}

NodeId Graph::segment_rowmax(NodeId x, int group_rows) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    const Tensor& xv = node(x).value;
    if (xv.shape().size() != 2) fail("segment_rowmax", id, "x must be 2-D");
    if (group_rows < 1 || xv.rows() % group_rows != 0)
        fail("segment_rowmax", id,
             "rows " + std::to_string(xv.rows()) + " not divisible by group " +
                 std::to_string(group_rows));
    const int groups = xv.rows() / group_rows;
    const int c = xv.cols();
    Node n;
    n.op = Op::SegmentRowMax;
    n.args = {x};
    n.group = group_rows;
    n.needs_grad = any_needs_grad(n.args);
    Tensor y({groups, c});
    n.argmax.assign(static_cast<size_t>(groups) * c, 0);
    for (int g = 0; g < groups; ++g) {
        for (int j = 0; j < c; ++j) {
            int best = g * group_rows;
            double bv = xv.at(best, j);
            for (int r = 1; r < group_rows; ++r) {
                const int row = g * group_rows + r;
                if (xv.at(row, j) > bv) {  // strict: first max wins ties
                    bv = xv.at(row, j);
                    best = row;
                }
            }
            y.at(g, j) = bv;
            n.argmax[static_cast<size_t>(g) * c + j] = best;
        }
    }
    n.value = std::move(y);
    return push(std::move(n));
}

NodeId Graph::clip(NodeId x, double lo, double hi) {
    Node n;
    n.op = Op::Clip;
    n.args = {x};
    n.c0 = lo;
    n.c1 = hi;
    n.needs_grad = any_needs_grad(n.args);
    n.value = numkit::clip(node(x).value, lo, hi);
    return push(std::move(n));
}

const Tensor& Graph::value(NodeId id) const { return node(id).value; }

GradMap Graph::backward(NodeId loss) const {
    const Node& ln = node(loss);
    if (ln.value.size() != 1)
        throw std::invalid_argument("Graph::backward: loss must be scalar, got " +
                                    ln.value.shape_str());

    std::vector<Tensor> adj(nodes_.size());
    std::vector<bool> has_adj(nodes_.size(), false);
    adj[static_cast<size_t>(loss)] = Tensor::scalar(1.0);
    has_adj[static_cast<size_t>(loss)] = true;

    auto accum = [&](NodeId id, Tensor&& g) {
        const size_t i = static_cast<size_t>(id);
        if (!has_adj[i]) {
            adj[i] = std::move(g);
            has_adj[i] = true;
        } else {
            axpy_inplace(adj[i], 1.0, g);
        }
    };

    for (NodeId id = loss; id >= 0; --id) {
        const size_t i = static_cast<size_t>(id);
        if (!has_adj[i] || !nodes_[i].needs_grad) continue;
        const Node& n = nodes_[i];
        const Tensor& g = adj[i];
        switch (n.op) {
            case Op::Leaf:
                break;
            case Op::MatMul: {
                const Tensor& a = node(n.args[0]).value;
                const Tensor& b = node(n.args[1]).value;
                if (node(n.args[0]).needs_grad) accum(n.args[0], matmul_nt(g, b));
                if (node(n.args[1]).needs_grad) accum(n.args[1], matmul_tn(a, g));
                break;
            }
            case Op::Add: {
                if (node(n.args[0]).needs_grad) accum(n.args[0], Tensor(g));
                if (node(n.args[1]).needs_grad) accum(n.args[1], Tensor(g));
                break;
            }
            case Op::Sub: {
                if (node(n.args[0]).needs_grad) accum(n.args[0], Tensor(g));
                if (node(n.args[1]).needs_grad) accum(n.args[1], numkit::scale(g, -1.0));
                break;
            }
            case Op::Mul: {
                if (node(n.args[0]).needs_grad) accum(n.args[0], numkit::mul(g, node(n.args[1]).value));
                if (node(n.args[1]).needs_grad) accum(n.args[1], numkit::mul(g, node(n.args[0]).value));
                break;
            }
            case Op::Scale: {
                if (node(n.args[0]).needs_grad) accum(n.args[0], numkit::scale(g, n.c0));
                break;
            }
            case Op::Affine: {
                const Tensor& x = node(n.args[0]).value;
                const Tensor& w = node(n.args[1]).value;
                if (node(n.args[0]).needs_grad) accum(n.args[0], matmul_nt(g, w));
                if (node(n.args[1]).needs_grad) accum(n.args[1], matmul_tn(x, g));
                if (node(n.args[2]).needs_grad) {
                    Tensor db(node(n.args[2]).value.shape());
                    for (int r = 0; r < g.rows(); ++r)
                        for (int j = 0; j < g.cols(); ++j) db[j] += g.at(r, j);
                    accum(n.args[2], std::move(db));
                }
                break;
            }
            case Op::Tanh: {
                Tensor dx = g;
                for (int64_t e = 0; e < dx.size(); ++e) {
                    const double y = n.value[e];
                    dx[e] *= 1.0 - y * y;
                }
                accum(n.args[0], std::move(dx));
                break;
            }
            case Op::Mish: {
                const Tensor& x = node(n.args[0]).value;
                Tensor dx = g;
                for (int64_t e = 0; e < dx.size(); ++e) dx[e] *= mish_bwd(x[e]);
                accum(n.args[0], std::move(dx));
                break;
            }
            case Op::Sum: {
                accum(n.args[0], Tensor::full(node(n.args[0]).value.shape(), g[0]));
                break;
            }
            case Op::Mse: {
                const Tensor& p = node(n.args[0]).value;
                const Tensor& t = node(n.args[1]).value;
                const double f = 2.0 * g[0] / static_cast<double>(p.size());
                if (node(n.args[0]).needs_grad) {
                    Tensor dp = numkit::sub(p, t);
                    accum(n.args[0], numkit::scale(dp, f));
                }
                if (node(n.args[1]).needs_grad) {
                    Tensor dt = numkit::sub(t, p);
                    accum(n.args[1], numkit::scale(dt, f));
                }
                break;
            }
            case Op::ConcatCols: {
                int off = 0;
                for (NodeId p : n.args) {
                    const Tensor& v = node(p).value;
                    const int c = v.cols();
                    if (node(p).needs_grad) {
                        Tensor gp({v.rows(), c});
                        for (int r = 0; r < v.rows(); ++r)
                            for (int j = 0; j < c; ++j) gp.at(r, j) = g.at(r, off + j);
                        accum(p, std::move(gp));
                    }
                    off += c;
                }
                break;
            }
            case Op::RowScale: {
                const Tensor& x = node(n.args[0]).value;
                const Tensor& s = node(n.args[1]).value;
                if (node(n.args[0]).needs_grad) {
                    Tensor dx = g;
                    for (int r = 0; r < dx.rows(); ++r) {
                        const double f = s.at(r, 0);
                        for (int j = 0; j < dx.cols(); ++j) dx.at(r, j) *= f;
                    }
                    accum(n.args[0], std::move(dx));
                }
                if (node(n.args[1]).needs_grad) {
                    Tensor ds({s.rows(), 1});
                    for (int r = 0; r < x.rows(); ++r) {
                        double acc = 0.0;
                        for (int j = 0; j < x.cols(); ++j) acc += g.at(r, j) * x.at(r, j);
                        ds.at(r, 0) = acc;
                    }
                    accum(n.args[1], std::move(ds));
                }
                break;
            }
            case Op::SegmentRowMax: {
                const Tensor& x = node(n.args[0]).value;
                Tensor dx(x.shape());
                const int c = x.cols();
                for (int gi = 0; gi < n.value.rows(); ++gi)
                    for (int j = 0; j < c; ++j)
                        dx.at(n.argmax[static_cast<size_t>(gi) * c + j], j) += g.at(gi, j);
                accum(n.args[0], std::move(dx));
                break;
            }
            case Op::Clip: {
                const Tensor& x = node(n.args[0]).value;
                Tensor dx = g;
                for (int64_t e = 0; e < dx.size(); ++e)
                    if (x[e] < n.c0 || x[e] > n.c1) dx[e] = 0.0;
                accum(n.args[0], std::move(dx));
                break;
            }
        }
    }

    GradMap grads;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (!nodes_[i].is_param) continue;
        if (has_adj[i])
            grads[nodes_[i].name] = std::move(adj[i]);
        else
            grads[nodes_[i].name] = Tensor(nodes_[i].value.shape());
    }
    return grads;
}

}  // namespace numkit
