#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qdp/error.hpp"

namespace qdp {

using Shape = std::vector<std::int64_t>;

namespace detail {
struct TensorNode {
    Shape shape;
    std::vector<double> values;
    std::vector<double> grad;  // empty until a backward pass touches this node
    bool requires_grad = false;
};
}  // namespace detail

// Dense 64-bit float tensor. Copying a Tensor copies a handle to shared
// storage: reads are safe from any thread, mutation is reserved for the
// owner (parameter updates between steps).
class Tensor {
public:
    Tensor() = default;

    static Tensor zeros(Shape shape, bool requires_grad = false);
    static Tensor full(Shape shape, double value, bool requires_grad = false);
    static Tensor from_values(Shape shape, std::vector<double> values, bool requires_grad = false);
    // Row vector [1 x n].
    static Tensor row(std::vector<double> values, bool requires_grad = false);
    static Tensor scalar_tensor(double value, bool requires_grad = false);

    bool defined() const { return node_ != nullptr; }
    const Shape& shape() const;
    std::int64_t size() const;
    std::int64_t rows() const;  // rank-2 only
    std::int64_t cols() const;  // rank-2 only
    bool is_matrix() const;

    std::span<const double> values() const;
    std::span<double> values_mut();
    double value_at(std::int64_t row, std::int64_t col) const;
    double scalar() const;  // size-1 tensors

    bool requires_grad() const;
    void set_requires_grad(bool rg);
    bool has_grad() const;
    std::span<const double> grad() const;
    std::span<double> grad_mut();       // allocates zeros if absent
    void zero_grad();                   // drops the grad buffer
    void accumulate_grad(std::span<const double> delta);

    // Pointer identity of the underlying storage (parameter bookkeeping).
    const void* id() const { return node_.get(); }

private:
    std::shared_ptr<detail::TensorNode> node_;
    explicit Tensor(std::shared_ptr<detail::TensorNode> node) : node_(std::move(node)) {}
    friend class Graph;
    detail::TensorNode& node() const;
};

// Tape of executed operations. Operations append their adjoint in execution
// order, which is a topological order by construction; backward() replays
// them in reverse. One Graph per training step; backward may run once.
class Graph {
public:
    Graph() = default;
    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    // Keys the counter-based dropout stream. `lane` separates parallel
    // sub-streams (one per example in a batch); the per-lane op counter
    // restarts at zero.
    void set_dropout_stream(std::uint64_t global_seed, std::uint64_t step, std::uint64_t lane = 0);

    // --- linear algebra ---
    Tensor matmul(const Tensor& a, const Tensor& b);
    Tensor transpose(const Tensor& a);

    // --- elementwise / structural family ---
    Tensor add(const Tensor& a, const Tensor& b);
    Tensor subtract(const Tensor& a, const Tensor& b);
    Tensor hadamard(const Tensor& a, const Tensor& b);
    Tensor scale(const Tensor& a, double s);
    // [m x n] + [1 x n], the only broadcast offered.
    Tensor add_bias_rows(const Tensor& a, const Tensor& bias);
    Tensor gelu(const Tensor& a);
    Tensor relu(const Tensor& a);
    Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta, double eps = 1e-12);
    Tensor concat_cols(std::span<const Tensor> parts);
    Tensor concat_rows(std::span<const Tensor> parts);
    Tensor slice_rows(const Tensor& a, std::int64_t start, std::int64_t count);
    Tensor slice_cols(const Tensor& a, std::int64_t start, std::int64_t count);
    // out[r] = a[rows[r]]; backward scatter-adds (indices may repeat).
    Tensor gather_rows(const Tensor& a, std::vector<std::int64_t> rows);
    // keep[i] == 0 -> fill (typically -inf); gradient blocked there.
    Tensor mask_fill(const Tensor& a, const std::vector<std::uint8_t>& keep, double fill);
    // Inverted-scaling dropout. In eval mode (train == false) or at p == 0
    // this is the identity and consumes no randomness.
    Tensor dropout(const Tensor& a, double p, bool train);
    Tensor sum(const Tensor& a);

    // Row softmax. `keep`, when non-empty, must match a's shape; dropped
    // entries get probability exactly 0. A row with no kept entry is an error.
    Tensor softmax_rows(const Tensor& logits, const std::vector<std::uint8_t>& keep = {});

    // Mean over rows of -log softmax(logits)[target]; max-subtraction
    // stabilized. Masked classes are excluded from normalization; a target
    // on a masked class or a fully masked row is an error. -inf logits are
    // treated as masked.
    Tensor softmax_cross_entropy(const Tensor& logits, std::span<const std::int64_t> targets,
                                 const std::vector<std::uint8_t>& class_mask = {});

    // Reverse sweep from a scalar loss. Populates .grad() on every
    // requires_grad tensor that contributed to the loss.
    void backward(const Tensor& loss);

    std::size_t op_count() const { return tape_.size(); }

private:
    struct Op {
        std::function<void()> adjoint;
    };
    std::vector<Op> tape_;
    bool consumed_ = false;
    std::uint64_t drop_seed_ = 0;
    std::uint64_t drop_step_ = 0;
    std::uint64_t drop_lane_ = 0;
    std::uint64_t drop_counter_ = 0;

    void record(std::function<void()> adjoint);
    static bool wants_grad(const Tensor& t) { return t.defined() && t.requires_grad(); }
};

// Max relative error between the analytic gradient of f at x and central
// finite differences. f must be deterministic; eps in (0, 1e-2].
double finite_difference_check(const std::function<Tensor(Graph&, const Tensor&)>& f,
                               const Tensor& x, double eps = 1e-5);

// Same check across several inputs at once (e.g. every parameter of a model).
double finite_difference_check_many(const std::function<Tensor(Graph&, std::span<const Tensor>)>& f,
                                    std::span<const Tensor> xs, double eps = 1e-5);

}  // namespace qdp
