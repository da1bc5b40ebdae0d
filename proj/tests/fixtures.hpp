#pragma once

// Hand-built converged model: every weight 1, every bias 0. With zero
// biases each layer is odd, so the ciphertext sign is exactly
// sign(x_i * k_i) per position and Bob's two multiplications by the key
// undo the mask. No balanced key is all-ones, so the passthrough predicate
// never fires. Tests that need a converged model use this instead of
// spending minutes training one.

#include "ranc/evaluation.hpp"
#include "ranc/network.hpp"

namespace testfix {

inline ranc::AncModel make_xor_model(int n_proj = 8) {
    ranc::AncModel m(8, n_proj, 1);
    for (ranc::Parameter* p : m.all_parameters()) {
        const bool is_bias = p->name.size() >= 2 && p->name.compare(p->name.size() - 2, 2, ".b") == 0;
        for (float& v : p->tensor.values()) v = is_bias ? 0.0f : 1.0f;
    }
    return m;
}

// Same model with convergence verified against the pool and flagged.
inline ranc::AncModel make_converged_model(const ranc::KeyPool& pool, int n_proj = 8) {
    ranc::AncModel m = make_xor_model(n_proj);
    if (ranc::bit_recovery_accuracy(m, pool) != 1.0)
        throw std::logic_error("fixture model failed to decrypt perfectly");
    m.converged = true;
    return m;
}

}  // namespace testfix
