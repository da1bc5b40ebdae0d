#pragma once

#include "ranc/optim.hpp"
#include "ranc/rng.hpp"
#include "ranc/tensor.hpp"

namespace ranc {

// Weight initialization bounds. Weights draw a magnitude uniform in
// [magnitude_lo, magnitude_hi] with an equiprobable sign; biases start at
// zero. Zero biases make every layer an odd function of its input at
// initialization, and the zero-avoiding magnitude keeps each output
// position's response well away from the noise floor of the first
// optimizer steps; both properties are what lets training bootstrap.
struct InitConfig {
    float magnitude_lo = 0.5f;
    float magnitude_hi = 1.5f;
};

// Maps a length-R signal column to an (R x n_proj) matrix:
// out[i][j] = tanh(x[i] * w[j] + b[j]).
struct ProjectionLayer {
    Parameter w;  // (n_proj x 1)
    Parameter b;  // (n_proj x 1)

    ProjectionLayer() = default;
    ProjectionLayer(const std::string& name, int n_proj, Rng& rng, const InitConfig& init);
    Tensor forward(Tape* tape, const Tensor& x) const;
    int n_proj() const { return w.tensor.rows(); }
};

// Elementwise multiply-add over an (R x n_proj) tensor with per-position
// parameters: out[i][j] = tanh(X[i][j] * W[i%n_bits][j] + B[i%n_bits][j]).
struct DotProductLayer {
    Parameter w;  // (n_bits x n_proj)
    Parameter b;  // (n_bits x n_proj)

    DotProductLayer() = default;
    DotProductLayer(const std::string& name, int n_bits, int n_proj, Rng& rng, const InitConfig& init);
    Tensor forward(Tape* tape, const Tensor& x) const;
};

// Row-wise weighted-sum reduction back to a signal column:
// out[i] = tanh(sum_j (X[i][j] * W[i%n_bits][j] + B[i%n_bits][j])).
struct InverseProjectionLayer {
    Parameter w;  // (n_bits x n_proj)
    Parameter b;  // (n_bits x n_proj)

    InverseProjectionLayer() = default;
    InverseProjectionLayer(const std::string& name, int n_bits, int n_proj, Rng& rng, const InitConfig& init);
    Tensor forward(Tape* tape, const Tensor& x) const;
};

// Parameter-free combiner of the message and key branches:
// out = tanh(x_d (Hadamard) k_d).
Tensor transform(Tape* tape, const Tensor& x_d, const Tensor& k_d);

}  // namespace ranc
