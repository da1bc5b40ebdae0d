#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ranc/layers.hpp"

namespace ranc {

// Encryption network. Message and key are independently lifted by a
// projection + dot-product branch, combined by the transform layer,
// processed by one more dot-product layer, and read out by three
// inverse-projection heads: message estimate, ciphertext, key estimate.
struct AliceNet {
    ProjectionLayer msg_proj, key_proj;
    DotProductLayer msg_dot, key_dot, post_dot;
    InverseProjectionLayer head_x, head_y, head_k;

    struct Out {
        Tensor x_hat;  // message estimate
        Tensor y;      // encrypted message (unrounded signal)
        Tensor k_hat;  // key estimate
    };

    AliceNet() = default;
    AliceNet(int n_bits, int n_proj, Rng& rng, const InitConfig& init);
    Out forward(Tape* tape, const Tensor& x, const Tensor& k) const;
    std::vector<Parameter*> parameters();
    std::vector<const Parameter*> parameters() const;
};

// Decryption network: same two-branch layout with the ciphertext in place
// of the message and no ciphertext head.
struct BobNet {
    ProjectionLayer cipher_proj, key_proj;
    DotProductLayer cipher_dot, key_dot, post_dot;
    InverseProjectionLayer head_x, head_k;

    struct Out {
        Tensor x_hat;
        Tensor k_hat;
    };

    BobNet() = default;
    BobNet(int n_bits, int n_proj, Rng& rng, const InitConfig& init);
    Out forward(Tape* tape, const Tensor& y, const Tensor& k) const;
    std::vector<Parameter*> parameters();
    std::vector<const Parameter*> parameters() const;
};

// Adversary network: sees only the intercepted ciphertext.
struct EveNet {
    ProjectionLayer proj;
    DotProductLayer dot;
    InverseProjectionLayer inv;

    EveNet() = default;
    EveNet(int n_bits, int n_proj, Rng& rng, const InitConfig& init);
    Tensor forward(Tape* tape, const Tensor& y) const;
    std::vector<Parameter*> parameters();
    std::vector<const Parameter*> parameters() const;
};

// A trained (or training) encryption/decryption pair plus the training-time
// adversary and metadata.
struct AncModel {
    AliceNet alice;
    BobNet bob;
    std::optional<EveNet> eve;
    int n_bits = 0;
    int n_proj = 0;
    std::uint64_t seed = 0;
    bool converged = false;
    std::uint32_t training_epochs = 0;

    AncModel() = default;
    // Randomly initialized trio; all randomness derives from `seed`.
    AncModel(int n_bits, int n_proj, std::uint64_t seed, const InitConfig& init = {});

    std::vector<Parameter*> all_parameters();
    void zero_all_grads();
};

// Float count of each network for the given dimensions. Alice carries two
// branch pairs (projection + dot-product), the post-transform dot-product
// and three heads; with each projection holding 2*n_proj floats and each
// dot-shaped layer 2*n_bits*n_proj:
//   alice = 2*(2*n_proj) + 6*(2*n_bits*n_proj)
//   bob   = 2*(2*n_proj) + 5*(2*n_bits*n_proj)
//   eve   = 1*(2*n_proj) + 2*(2*n_bits*n_proj)
std::size_t alice_parameter_count(int n_bits, int n_proj);
std::size_t bob_parameter_count(int n_bits, int n_proj);
std::size_t eve_parameter_count(int n_bits, int n_proj);
std::size_t parameter_count(const std::vector<const Parameter*>& params);

}  // namespace ranc
