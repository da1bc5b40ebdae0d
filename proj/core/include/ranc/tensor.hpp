#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ranc/errors.hpp"

namespace ranc {

class Tape;

// Dense 2-D float32 array with a lazily allocated gradient of the same
// shape. Copies are shallow (shared storage), which is what the tape needs:
// a recorded operation and the caller both see the same buffers.
class Tensor {
  public:
    Tensor() = default;

    static Tensor zeros(int rows, int cols);
    static Tensor full(int rows, int cols, float value);
    static Tensor from(int rows, int cols, std::vector<float> values);
    // Column vector from arbitrary float data.
    static Tensor column(std::span<const float> values);

    bool defined() const { return d_ != nullptr; }
    int rows() const { return d_->rows; }
    int cols() const { return d_->cols; }
    std::size_t size() const { return d_->values.size(); }

    std::span<float> values() { return d_->values; }
    std::span<const float> values() const { return d_->values; }
    float value(int i, int j) const { return d_->values[std::size_t(i) * d_->cols + j]; }

    // Gradient buffer, allocated zero-filled on first access.
    std::span<float> grad();
    bool has_grad() const { return !d_->grad.empty(); }
    void zero_grad();

    bool requires_grad() const { return d_->requires_grad; }
    Tensor& set_requires_grad(bool on) { d_->requires_grad = on; return *this; }

    // Value of a 1x1 tensor.
    float item() const;

    // Deep copy of the values as a fresh leaf with no tape history.
    Tensor detached() const;

    // Identity of the underlying storage (used by freezing tests).
    const void* storage_id() const { return d_.get(); }

  private:
    friend class Tape;
    struct Data {
        int rows = 0, cols = 0;
        std::vector<float> values;
        std::vector<float> grad;  // empty until touched
        bool requires_grad = false;
        Tape* tape = nullptr;  // producing tape, nullptr for leaves
        int node = -1;         // index of the producing op on that tape
    };
    std::shared_ptr<Data> d_;
};

// Ordered record of the primitive operations of one forward pass. Replaying
// the record backwards accumulates reverse-mode gradients. A tape and the
// tensors produced under it are confined to one thread; independent tapes
// never interact.
class Tape {
  public:
    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    std::size_t size() const { return nodes_.size(); }

    // Accumulates d(loss)/d(t) into the grad of every tensor recorded on
    // this tape that requires grad, walking the record in reverse from
    // `loss`. `loss` must be a 1x1 tensor produced under this tape.
    void backward(const Tensor& loss);

    // Extension point for composite operations: registers a backward
    // closure and marks `out` as produced by it. Used by all primitives.
    void record(Tensor& out, std::function<void()> backward_fn);

  private:
    std::vector<std::function<void()>> nodes_;
};

// ---- forward primitives -------------------------------------------------
//
// Every primitive computes eagerly and, when `tape` is non-null and some
// input requires grad, records its backward closure. Passing tape=nullptr
// gives a plain inference computation with no gradient bookkeeping.
//
// add/mul accept a right operand with fewer rows as a vertically tiled
// matrix: b's row r applies to a's rows r, r+b.rows(), r+2*b.rows(), ...
// This is how per-position layer parameters broadcast over a batch whose
// rows are consecutive positions of consecutive samples. Gradients for the
// tiled operand sum over all tiles.

// Elementwise sum; rhs may tile vertically.
Tensor add(Tape* tape, const Tensor& a, const Tensor& b);
// Elementwise (Hadamard) product; rhs may tile vertically.
Tensor mul(Tape* tape, const Tensor& a, const Tensor& b);
// Elementwise difference; equal shapes only.
Tensor sub(Tape* tape, const Tensor& a, const Tensor& b);
// Scalar broadcast multiply/add: scale * t + shift.
Tensor affine(Tape* tape, const Tensor& t, float scale, float shift);
// Outer-product-style projection: out[i][j] = x[i]*w[j] + b[j].
// x is (R x 1); w and b are (m x 1); out is (R x m).
Tensor project(Tape* tape, const Tensor& x, const Tensor& w, const Tensor& b);
// Row-wise sum reduction: (R x c) -> (R x 1).
Tensor row_sum(Tape* tape, const Tensor& t);
// Elementwise tanh.
Tensor tanh(Tape* tape, const Tensor& t);

// Root-mean-square error over all entries of two equal-shape tensors:
// sqrt(mean((x - y)^2)). Output is 1x1. At an exact zero the backward
// pass uses subgradient 0 for both operands.
Tensor rmse(Tape* tape, const Tensor& x, const Tensor& y);

// Scalar tanh kernel used by the tensor op, exposed for reference checks.
double tanh_reference(double x);

}  // namespace ranc
