#pragma once

// Double-precision mirrors of the layer and loss math, written as plain
// scalar loops with no shared code with the library. These are the
// reference side of the finite-difference gradient checks and of the
// value-level scalar oracles.

#include <cmath>
#include <cstddef>
#include <vector>

namespace testoracle {

using dvec = std::vector<double>;

inline dvec tanh_all(dvec v) {
    for (double& x : v) x = std::tanh(x);
    return v;
}

// out[i*np + j] = x[i]*w[j] + b[j]
inline dvec project(const dvec& x, const dvec& w, const dvec& b) {
    const std::size_t np = w.size();
    dvec out(x.size() * np);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < np; ++j) out[i * np + j] = x[i] * w[j] + b[j];
    return out;
}

// out[r*np + j] = X[r*np + j] * W[(r%nb)*np + j] + B[(r%nb)*np + j]
inline dvec dot_affine(const dvec& X, const dvec& W, const dvec& B, std::size_t nb, std::size_t np) {
    dvec out(X.size());
    const std::size_t rows = X.size() / np;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < np; ++j)
            out[r * np + j] = X[r * np + j] * W[(r % nb) * np + j] + B[(r % nb) * np + j];
    return out;
}

// y[r] = sum_j (X[r*np + j] * W[(r%nb)*np + j] + B[(r%nb)*np + j])
inline dvec invproj(const dvec& X, const dvec& W, const dvec& B, std::size_t nb, std::size_t np) {
    const std::size_t rows = X.size() / np;
    dvec out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t j = 0; j < np; ++j)
            acc += X[r * np + j] * W[(r % nb) * np + j] + B[(r % nb) * np + j];
        out[r] = acc;
    }
    return out;
}

inline dvec hadamard(const dvec& a, const dvec& b) {
    dvec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

inline double rmse(const dvec& a, const dvec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc / double(a.size()));
}

// ---- whole-network mirrors -------------------------------------------------

struct ProjParams { dvec w, b; };   // np each
struct MatParams { dvec w, b; };    // nb*np each

struct AliceParams {
    ProjParams msg_proj, key_proj;
    MatParams msg_dot, key_dot, post_dot, head_x, head_y, head_k;
};
struct BobParams {
    ProjParams cipher_proj, key_proj;
    MatParams cipher_dot, key_dot, post_dot, head_x, head_k;
};
struct EveParams {
    ProjParams proj;
    MatParams dot, inv;
};

struct AliceOut { dvec x_hat, y, k_hat; };

inline AliceOut alice_forward(const AliceParams& p, const dvec& x, const dvec& k,
                              std::size_t nb, std::size_t np) {
    const dvec xw = tanh_all(project(x, p.msg_proj.w, p.msg_proj.b));
    const dvec xd = tanh_all(dot_affine(xw, p.msg_dot.w, p.msg_dot.b, nb, np));
    const dvec kw = tanh_all(project(k, p.key_proj.w, p.key_proj.b));
    const dvec kd = tanh_all(dot_affine(kw, p.key_dot.w, p.key_dot.b, nb, np));
    const dvec t = tanh_all(hadamard(xd, kd));
    const dvec post = tanh_all(dot_affine(t, p.post_dot.w, p.post_dot.b, nb, np));
    AliceOut out;
    out.x_hat = tanh_all(invproj(post, p.head_x.w, p.head_x.b, nb, np));
    out.y = tanh_all(invproj(post, p.head_y.w, p.head_y.b, nb, np));
    out.k_hat = tanh_all(invproj(post, p.head_k.w, p.head_k.b, nb, np));
    return out;
}

struct BobOut { dvec x_hat, k_hat; };

inline BobOut bob_forward(const BobParams& p, const dvec& y, const dvec& k,
                          std::size_t nb, std::size_t np) {
    const dvec yw = tanh_all(project(y, p.cipher_proj.w, p.cipher_proj.b));
    const dvec yd = tanh_all(dot_affine(yw, p.cipher_dot.w, p.cipher_dot.b, nb, np));
    const dvec kw = tanh_all(project(k, p.key_proj.w, p.key_proj.b));
    const dvec kd = tanh_all(dot_affine(kw, p.key_dot.w, p.key_dot.b, nb, np));
    const dvec t = tanh_all(hadamard(yd, kd));
    const dvec post = tanh_all(dot_affine(t, p.post_dot.w, p.post_dot.b, nb, np));
    BobOut out;
    out.x_hat = tanh_all(invproj(post, p.head_x.w, p.head_x.b, nb, np));
    out.k_hat = tanh_all(invproj(post, p.head_k.w, p.head_k.b, nb, np));
    return out;
}

inline dvec eve_forward(const EveParams& p, const dvec& y, std::size_t nb, std::size_t np) {
    const dvec yw = tanh_all(project(y, p.proj.w, p.proj.b));
    const dvec yd = tanh_all(dot_affine(yw, p.dot.w, p.dot.b, nb, np));
    return tanh_all(invproj(yd, p.inv.w, p.inv.b, nb, np));
}

// Composite losses. `y_round_frozen` is the rounded ciphertext captured at
// the unperturbed parameters: the implementation blocks gradient through
// the rounded copy, so the reference must hold it constant while the
// finite-difference probe moves the parameters.
inline double alice_loss(const AliceParams& ap, const BobParams& bp, const EveParams& ep,
                         const dvec& x, const dvec& k, const dvec& y_round_frozen,
                         std::size_t nb, std::size_t np) {
    const AliceOut a = alice_forward(ap, x, k, nb, np);
    const BobOut b = bob_forward(bp, a.y, k, nb, np);
    const dvec e = eve_forward(ep, a.y, nb, np);
    return rmse(x, a.x_hat) + rmse(k, a.k_hat) + rmse(a.y, y_round_frozen) + rmse(x, b.x_hat) +
           (2.0 - rmse(x, e));
}

inline double bob_loss(const BobParams& bp, const dvec& y, const dvec& x, const dvec& k,
                       std::size_t nb, std::size_t np) {
    const BobOut b = bob_forward(bp, y, k, nb, np);
    return rmse(x, b.x_hat) + rmse(k, b.k_hat);
}

inline double eve_loss(const EveParams& ep, const dvec& y, const dvec& x,
                       std::size_t nb, std::size_t np) {
    return rmse(x, eve_forward(ep, y, nb, np));
}

}  // namespace testoracle
