#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranc/evaluation.hpp"
#include "ranc/keygen.hpp"
#include "ranc/network.hpp"

namespace ranc {

enum class UpdateTarget { alice, bob, eve };

enum class TrainingOutcome {
    converged,
    epoch_cap_reached,
    identity_passthrough_rejected,
    numeric_divergence,
};

const char* to_string(TrainingOutcome o);

struct TrainingConfig {
    int n_bits = 8;
    int n_proj = 8;
    float learning_rate = 0.001f;
    float adam_beta1 = 0.9f;
    float adam_beta2 = 0.999f;
    float adam_eps = 1e-8f;
    int max_epochs = 256;
    // Pairs per minibatch. Keys are dealt into chunks so that each chunk,
    // crossed with all 2^n_bits messages, holds about this many pairs; one
    // epoch walks every chunk once (a full pass over the cross product).
    int minibatch_messages = 2560;
    std::uint64_t seed = 0;
    int key_psl_tolerance = 5;
    std::array<UpdateTarget, 3> update_order{UpdateTarget::alice, UpdateTarget::bob, UpdateTarget::eve};
    InitConfig init;
};

struct IterationStats {
    float loss_alice = 0.0f;
    float loss_bob = 0.0f;
    float loss_eve = 0.0f;
    float acc_bob = 0.0f;  // minibatch, unrounded ciphertext (training domain)
    float acc_eve = 0.0f;
};

struct TrainingReport {
    std::vector<IterationStats> series;
    TrainingOutcome outcome = TrainingOutcome::epoch_cap_reached;
    int epochs_used = 0;
    double wall_seconds = 0.0;
    double final_bob_accuracy = 0.0;  // rounded, full cross product
    double final_eve_accuracy = 0.0;
};

// ---- losses ---------------------------------------------------------------
// The shared root-mean-square error lives in tensor.hpp as ranc::rmse.

// Outputs of a joint forward pass Alice -> (Bob, Eve) over one minibatch.
struct TrioOutputs {
    AliceNet::Out alice;
    BobNet::Out bob;
    Tensor eve_x_hat;
};

// Rounded copy of a signal tensor (+1 for y >= 0, -1 otherwise) as a fresh
// gradient-blocked leaf.
Tensor sign_round_detached(const Tensor& y);

// rmse(x,x_hat_A) + rmse(k,k_hat_A) + rmse(y, round(y)) + rmse(x,x_hat_B)
// + (2 - rmse(x,x_hat_E)); the rounded ciphertext copy is a constant.
Tensor alice_loss(Tape* tape, const Tensor& x, const Tensor& k, const TrioOutputs& out);

// rmse(x,x_hat_B) + rmse(k,k_hat_B)
Tensor bob_loss(Tape* tape, const Tensor& x, const Tensor& k, const BobNet::Out& out);

// rmse(x,x_hat_E)
Tensor eve_loss(Tape* tape, const Tensor& x, const Tensor& eve_x_hat);

// ---- training -------------------------------------------------------------

// Fresh random model for the config (dimensions, seed, init bounds).
AncModel make_model(const TrainingConfig& cfg);

// Trains `model` in place with the adversarial schedule: per minibatch one
// optimizer step each in cfg.update_order (Alice's loss flows through the
// frozen Bob and Eve; Bob and Eve train on Alice's unrounded ciphertext as
// a constant input). At the end of every epoch the full cross product is
// evaluated with rounded ciphertexts; training stops early at 100% Bob bit
// accuracy, after which a model whose ciphertext equals the message for
// any (x,k) pair is rejected as an identity passthrough.
TrainingReport train_model(AncModel& model, const TrainingConfig& cfg, const KeyPool& pool);

// make_model + train_model.
std::pair<AncModel, TrainingReport> train_realization(const TrainingConfig& cfg, const KeyPool& pool);

// Retry protocol: reinitialize on every non-converged outcome with seeds
// cfg.seed, cfg.seed+1, ... until convergence or the attempt budget runs
// out (returns the last attempt's model/report either way).
struct ProtocolResult {
    AncModel model;
    TrainingReport report;
    int realizations_used = 0;
    std::vector<TrainingOutcome> attempts;
};
ProtocolResult train_with_restarts(const TrainingConfig& cfg, const KeyPool& pool, int max_realizations);

void write_training_csv(const TrainingReport& report, const std::string& path);

// ---- projection-dimension sweep --------------------------------------------

struct SweepRow {
    int n_proj = 0;
    int realizations = 0;
    int converged = 0;
    int passthrough_rejected = 0;
    int epoch_capped = 0;
    int diverged = 0;
    double convergence_rate = 0.0;
    double rate_ci_lo = 0.0;  // 95% Wilson interval
    double rate_ci_hi = 0.0;
    double mean_epochs_converged = 0.0;
    double mean_wall_seconds = 0.0;      // over all realizations
    double mean_eve_accuracy = 0.0;      // over converged realizations
};

// Independent realizations per dimension (seeds derived from cfg.seed),
// parallel across realizations; workers=0 uses max_workers().
std::vector<SweepRow> sweep_projection_dims(const std::vector<int>& dims, int realizations_per_dim,
                                            const TrainingConfig& cfg, int workers = 0);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace ranc
