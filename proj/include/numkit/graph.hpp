#pragma once

#include <map>
#include <string>
#include <vector>

#include "numkit/tensor.hpp"

namespace numkit {

using NodeId = int32_t;

/// Gradient of a scalar loss with respect to every named parameter node.
using GradMap = std::map<std::string, Tensor>;

/// Define-by-run tape. Each builder call validates shapes, evaluates the node
/// immediately and appends it; construction order is therefore a topological
/// order and backward() walks it in exact reverse.
class Graph {
public:
    NodeId input(std::string name, Tensor value);
    NodeId param(std::string name, Tensor value);
    NodeId constant(Tensor value);

    NodeId matmul(NodeId a, NodeId b);
    NodeId add(NodeId a, NodeId b);
    NodeId sub(NodeId a, NodeId b);
    NodeId mul(NodeId a, NodeId b);
    NodeId scale(NodeId a, double s);
    // y = x(m,in) * w(in,out) + b(out) broadcast over rows
    NodeId affine(NodeId x, NodeId w, NodeId b);
    NodeId tanh_act(NodeId a);
    NodeId mish(NodeId a);
    NodeId sum(NodeId a);                    // scalar: sum of all entries
    NodeId mse(NodeId pred, NodeId target);  // scalar: mean of squared differences
    NodeId concat_cols(const std::vector<NodeId>& parts);
    // y[i,j] = x[i,j] * s[i,0]; s has shape (rows, 1)
    NodeId row_scale(NodeId x, NodeId s);
    // rows grouped in consecutive blocks of group_rows; per-column max per group
    NodeId segment_rowmax(NodeId x, int group_rows);
    NodeId clip(NodeId x, double lo, double hi);

    const Tensor& value(NodeId id) const;
    size_t node_count() const { return nodes_.size(); }

    /// Reverse-mode pass from a scalar loss node. Returns gradients for every
    /// param node (zero tensors for params the loss does not depend on).
    GradMap backward(NodeId loss) const;

private:
    enum class Op {
        Leaf,
        MatMul,
        Add,
        Sub,
        Mul,
        Scale,
        Affine,
        Tanh,
        Mish,
        Sum,
        Mse,
        ConcatCols,
        RowScale,
        SegmentRowMax,
        Clip,
    };

    struct Node {
        Op op = Op::Leaf;
        std::vector<NodeId> args;
        Tensor value;
        std::string name;       // params and inputs only
        bool is_param = false;
        bool needs_grad = false;
        double c0 = 0.0, c1 = 0.0;     // scale factor / clip bounds
        int group = 0;                 // segment_rowmax group size
        std::vector<int32_t> argmax;   // segment_rowmax winner rows
    };

    NodeId push(Node n);
    const Node& node(NodeId id) const;
    bool any_needs_grad(const std::vector<NodeId>& args) const;
    [[noreturn]] void fail(const char* op, NodeId id, const std::string& what) const;

    std::vector<Node> nodes_;
};

}  // namespace numkit
