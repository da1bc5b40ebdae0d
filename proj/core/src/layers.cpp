#include "ranc/layers.hpp"

namespace ranc {

namespace {

Tensor init_weights(int rows, int cols, Rng& rng, const InitConfig& init) {
    Tensor t = Tensor::zeros(rows, cols);
    for (float& v : t.values()) v = rng.signed_magnitude(init.magnitude_lo, init.magnitude_hi);
    return t;
}

}  // namespace

ProjectionLayer::ProjectionLayer(const std::string& name, int n_proj, Rng& rng, const InitConfig& init)
    : w(name + ".w", init_weights(n_proj, 1, rng, init)),
      b(name + ".b", Tensor::zeros(n_proj, 1)) {}

Tensor ProjectionLayer::forward(Tape* tape, const Tensor& x) const {
    return ranc::tanh(tape, project(tape, x, w.tensor, b.tensor));
}

DotProductLayer::DotProductLayer(const std::string& name, int n_bits, int n_proj, Rng& rng,
                                 const InitConfig& init)
    : w(name + ".w", init_weights(n_bits, n_proj, rng, init)),
      b(name + ".b", Tensor::zeros(n_bits, n_proj)) {}

Tensor DotProductLayer::forward(Tape* tape, const Tensor& x) const {
    return ranc::tanh(tape, add(tape, mul(tape, x, w.tensor), b.tensor));
}

InverseProjectionLayer::InverseProjectionLayer(const std::string& name, int n_bits, int n_proj,
                                               Rng& rng, const InitConfig& init)
    : w(name + ".w", init_weights(n_bits, n_proj, rng, init)),
      b(name + ".b", Tensor::zeros(n_bits, n_proj)) {}

Tensor InverseProjectionLayer::forward(Tape* tape, const Tensor& x) const {
    return ranc::tanh(tape, row_sum(tape, add(tape, mul(tape, x, w.tensor), b.tensor)));
}

Tensor transform(Tape* tape, const Tensor& x_d, const Tensor& k_d) {
    if (x_d.rows() != k_d.rows() || x_d.cols() != k_d.cols())
        throw ShapeError("transform: branch shapes differ");
    return ranc::tanh(tape, mul(tape, x_d, k_d));
}

}  // namespace ranc
