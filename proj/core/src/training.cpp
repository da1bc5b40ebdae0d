#include "ranc/training.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ranc/errors.hpp"
#include "ranc/parallel.hpp"

namespace ranc {

namespace {

struct Minibatch {
    Tensor x, k;  // constant columns, n_pairs * n_bits rows
};

std::vector<Minibatch> make_key_chunk_batches(const TrainingConfig& cfg, const KeyPool& pool) {
    const int nb = cfg.n_bits;
    const std::uint64_t n_msgs = std::uint64_t(1) << nb;
    int keys_per_chunk = int(std::max<std::uint64_t>(1, std::uint64_t(cfg.minibatch_messages) / n_msgs));
    if (keys_per_chunk > int(pool.size())) keys_per_chunk = int(pool.size());

    std::vector<Minibatch> batches;
    for (std::size_t c0 = 0; c0 < pool.size(); c0 += std::size_t(keys_per_chunk)) {
        const std::size_t c1 = std::min(pool.size(), c0 + std::size_t(keys_per_chunk));
        std::vector<float> xs, ks;
        xs.reserve(n_msgs * (c1 - c0) * std::size_t(nb));
        ks.reserve(n_msgs * (c1 - c0) * std::size_t(nb));
        for (std::uint64_t m = 0; m < n_msgs; ++m) {
            const BitVector mbits = value_to_bits(m, nb);
            for (std::size_t ki = c0; ki < c1; ++ki) {
                for (std::uint8_t b : mbits) xs.push_back(b ? 1.0f : -1.0f);
                for (std::uint8_t b : pool.keys[ki].bits) ks.push_back(b ? 1.0f : -1.0f);
            }
        }
        Minibatch mb;
        mb.x = Tensor::from(int(xs.size()), 1, std::move(xs));
        mb.k = Tensor::from(int(ks.size()), 1, std::move(ks));
        batches.push_back(std::move(mb));
    }
    return batches;
}

float sign_match_fraction(const Tensor& a, const Tensor& b) {
    auto av = a.values();
    auto bv = b.values();
    std::size_t hits = 0;
    for (std::size_t i = 0; i < av.size(); ++i) hits += (av[i] >= 0.0f) == (bv[i] >= 0.0f);
    return float(double(hits) / double(av.size()));
}

double wilson_bound(double p, double n, double z, int sign) {
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    const double v = center + sign * half;
    return std::min(1.0, std::max(0.0, v));
}

}  // namespace

const char* to_string(TrainingOutcome o) {
    switch (o) {
        case TrainingOutcome::converged: return "converged";
        case TrainingOutcome::epoch_cap_reached: return "epoch_cap_reached";
        case TrainingOutcome::identity_passthrough_rejected: return "identity_passthrough_rejected";
        case TrainingOutcome::numeric_divergence: return "numeric_divergence";
    }
    return "unknown";
}

Tensor sign_round_detached(const Tensor& y) {
    Tensor r = Tensor::zeros(y.rows(), y.cols());
    auto yv = y.values();
    auto rv = r.values();
    for (std::size_t i = 0; i < yv.size(); ++i) rv[i] = yv[i] >= 0.0f ? 1.0f : -1.0f;
    return r;
}

Tensor alice_loss(Tape* tape, const Tensor& x, const Tensor& k, const TrioOutputs& out) {
    const Tensor own = add(tape, add(tape, rmse(tape, x, out.alice.x_hat), rmse(tape, k, out.alice.k_hat)),
                           rmse(tape, out.alice.y, sign_round_detached(out.alice.y)));
    const Tensor bob_term = rmse(tape, x, out.bob.x_hat);
    const Tensor eve_term = affine(tape, rmse(tape, x, out.eve_x_hat), -1.0f, 2.0f);
    return add(tape, add(tape, own, bob_term), eve_term);
}

Tensor bob_loss(Tape* tape, const Tensor& x, const Tensor& k, const BobNet::Out& out) {
    return add(tape, rmse(tape, x, out.x_hat), rmse(tape, k, out.k_hat));
}

Tensor eve_loss(Tape* tape, const Tensor& x, const Tensor& eve_x_hat) {
    return rmse(tape, x, eve_x_hat);
}

AncModel make_model(const TrainingConfig& cfg) {
    return AncModel(cfg.n_bits, cfg.n_proj, cfg.seed, cfg.init);
}

TrainingReport train_model(AncModel& model, const TrainingConfig& cfg, const KeyPool& pool) {
    if (pool.keys.empty()) throw ArgumentError("train_model: key pool is empty");
    if (pool.n_bits != cfg.n_bits) throw ArgumentError("train_model: pool/config bit length mismatch");
    if (model.n_bits != cfg.n_bits || model.n_proj != cfg.n_proj)
        throw ArgumentError("train_model: model/config dimension mismatch");
    if (!(cfg.learning_rate > 0.0f)) throw ArgumentError("train_model: learning_rate must be > 0");
    if (cfg.max_epochs < 0) throw ArgumentError("train_model: max_epochs must be >= 0");
    if (!model.eve) throw ArgumentError("train_model: model bundle carries no Eve network");

    const AdamConfig adam{cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps};
    const std::vector<Minibatch> batches = make_key_chunk_batches(cfg, pool);
    const PairBatch full(cfg.n_bits, pool);

    auto alice_params = model.alice.parameters();
    auto bob_params = model.bob.parameters();
    auto eve_params = model.eve->parameters();

    TrainingReport report;
    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&t0]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    const auto finish = [&](TrainingOutcome outcome, int epochs, double bob_acc, double eve_acc) {
        report.outcome = outcome;
        report.epochs_used = epochs;
        report.wall_seconds = elapsed();
        report.final_bob_accuracy = bob_acc;
        report.final_eve_accuracy = eve_acc;
        model.converged = outcome == TrainingOutcome::converged;
        model.training_epochs = std::uint32_t(epochs);
        return report;
    };

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        for (const Minibatch& mb : batches) {
            IterationStats stats;
            Tensor y_input;  // Alice's unrounded ciphertext, detached for Bob/Eve steps
            bool y_valid = false;
            try {
                for (UpdateTarget target : cfg.update_order) {
                    switch (target) {
                        case UpdateTarget::alice: {
                            Tape tape;
                            TrioOutputs trio;
                            trio.alice = model.alice.forward(&tape, mb.x, mb.k);
                            trio.bob = model.bob.forward(&tape, trio.alice.y, mb.k);
                            trio.eve_x_hat = model.eve->forward(&tape, trio.alice.y);
                            const Tensor loss = alice_loss(&tape, mb.x, mb.k, trio);
                            stats.loss_alice = loss.item();
                            if (!std::isfinite(stats.loss_alice)) throw NumericError("alice loss diverged");
                            tape.backward(loss);
                            for (Parameter* p : alice_params) adam_step(*p, adam);
                            model.zero_all_grads();
                            y_valid = false;
                            break;
                        }
                        case UpdateTarget::bob: {
                            if (!y_valid) {
                                y_input = model.alice.forward(nullptr, mb.x, mb.k).y;
                                y_valid = true;
                            }
                            Tape tape;
                            const BobNet::Out out = model.bob.forward(&tape, y_input, mb.k);
                            const Tensor loss = bob_loss(&tape, mb.x, mb.k, out);
                            stats.loss_bob = loss.item();
                            stats.acc_bob = sign_match_fraction(out.x_hat, mb.x);
                            if (!std::isfinite(stats.loss_bob)) throw NumericError("bob loss diverged");
                            tape.backward(loss);
                            for (Parameter* p : bob_params) adam_step(*p, adam);
                            model.zero_all_grads();
                            break;
                        }
                        case UpdateTarget::eve: {
                            if (!y_valid) {
                                y_input = model.alice.forward(nullptr, mb.x, mb.k).y;
                                y_valid = true;
                            }
                            Tape tape;
                            const Tensor x_hat = model.eve->forward(&tape, y_input);
                            const Tensor loss = eve_loss(&tape, mb.x, x_hat);
                            stats.loss_eve = loss.item();
                            stats.acc_eve = sign_match_fraction(x_hat, mb.x);
                            if (!std::isfinite(stats.loss_eve)) throw NumericError("eve loss diverged");
                            tape.backward(loss);
                            for (Parameter* p : eve_params) adam_step(*p, adam);
                            model.zero_all_grads();
                            break;
                        }
                    }
                }
            } catch (const NumericError&) {
                report.series.push_back(stats);
                const double nan = std::numeric_limits<double>::quiet_NaN();
                return finish(TrainingOutcome::numeric_divergence, epoch, nan, nan);
            }
            report.series.push_back(stats);
        }

        const PairEvalResult eval = evaluate_pairs(model, full, true);
        if (eval.bob_bit_accuracy == 1.0) {
            const TrainingOutcome outcome = eval.any_passthrough
                                                ? TrainingOutcome::identity_passthrough_rejected
                                                : TrainingOutcome::converged;
            return finish(outcome, epoch, eval.bob_bit_accuracy, eval.eve_bit_accuracy);
        }
    }

    const PairEvalResult eval = evaluate_pairs(model, full, true);
    return finish(TrainingOutcome::epoch_cap_reached, cfg.max_epochs, eval.bob_bit_accuracy,
                  eval.eve_bit_accuracy);
}

std::pair<AncModel, TrainingReport> train_realization(const TrainingConfig& cfg, const KeyPool& pool) {
    AncModel model = make_model(cfg);
    TrainingReport report = train_model(model, cfg, pool);
    return {std::move(model), std::move(report)};
}

ProtocolResult train_with_restarts(const TrainingConfig& cfg, const KeyPool& pool, int max_realizations) {
    if (max_realizations < 1) throw ArgumentError("train_with_restarts: need at least one realization");
    ProtocolResult result;
    for (int attempt = 0; attempt < max_realizations; ++attempt) {
        TrainingConfig c = cfg;
        c.seed = cfg.seed + std::uint64_t(attempt);
        auto [model, report] = train_realization(c, pool);
        result.attempts.push_back(report.outcome);
        result.realizations_used = attempt + 1;
        result.model = std::move(model);
        result.report = std::move(report);
        if (result.report.outcome == TrainingOutcome::converged) break;
    }
    return result;
}

void write_training_csv(const TrainingReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("write_training_csv: cannot open '" + path + "'");
    out << "iteration,loss_alice,loss_bob,loss_eve,acc_bob,acc_eve\n";
    char buf[160];
    for (std::size_t i = 0; i < report.series.size(); ++i) {
        const IterationStats& s = report.series[i];
        std::snprintf(buf, sizeof buf, "%zu,%.7g,%.7g,%.7g,%.7g,%.7g\n", i + 1, double(s.loss_alice),
                      double(s.loss_bob), double(s.loss_eve), double(s.acc_bob), double(s.acc_eve));
        out << buf;
    }
}

std::vector<SweepRow> sweep_projection_dims(const std::vector<int>& dims, int realizations_per_dim,
                                            const TrainingConfig& cfg, int workers) {
    if (dims.empty()) throw ArgumentError("sweep_projection_dims: dims must be nonempty");
    if (realizations_per_dim < 1) throw ArgumentError("sweep_projection_dims: need at least one realization");

    const KeyPool pool = generate_pool(cfg.n_bits, cfg.key_psl_tolerance);

    struct TaskResult {
        TrainingOutcome outcome = TrainingOutcome::epoch_cap_reached;
        int epochs = 0;
        double wall = 0.0;
        double eve_acc = 0.0;
    };
    const int n_tasks = int(dims.size()) * realizations_per_dim;
    std::vector<TaskResult> results(static_cast<std::size_t>(n_tasks));

    parallel_for(n_tasks, [&](int t) {
        const int di = t / realizations_per_dim;
        const int r = t % realizations_per_dim;
        TrainingConfig c = cfg;
        c.n_proj = dims[std::size_t(di)];
        c.seed = cfg.seed + std::uint64_t(di) * std::uint64_t(realizations_per_dim) + std::uint64_t(r);
        auto [model, report] = train_realization(c, pool);
        results[std::size_t(t)] = TaskResult{report.outcome, report.epochs_used, report.wall_seconds,
                                             report.final_eve_accuracy};
    }, workers);

    std::vector<SweepRow> rows;
    for (std::size_t di = 0; di < dims.size(); ++di) {
        SweepRow row;
        row.n_proj = dims[di];
        row.realizations = realizations_per_dim;
        double epochs_sum = 0.0, wall_sum = 0.0, eve_sum = 0.0;
        for (int r = 0; r < realizations_per_dim; ++r) {
            const TaskResult& tr = results[di * std::size_t(realizations_per_dim) + std::size_t(r)];
            wall_sum += tr.wall;
            switch (tr.outcome) {
                case TrainingOutcome::converged:
                    row.converged += 1;
                    epochs_sum += tr.epochs;
                    eve_sum += tr.eve_acc;
                    break;
                case TrainingOutcome::identity_passthrough_rejected: row.passthrough_rejected += 1; break;
                case TrainingOutcome::epoch_cap_reached: row.epoch_capped += 1; break;
                case TrainingOutcome::numeric_divergence: row.diverged += 1; break;
            }
        }
        const double n = double(realizations_per_dim);
        row.convergence_rate = row.converged / n;
        row.rate_ci_lo = wilson_bound(row.convergence_rate, n, 1.959964, -1);
        row.rate_ci_hi = wilson_bound(row.convergence_rate, n, 1.959964, +1);
        row.mean_epochs_converged = row.converged ? epochs_sum / row.converged : 0.0;
        row.mean_wall_seconds = wall_sum / n;
        row.mean_eve_accuracy = row.converged ? eve_sum / row.converged : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("write_sweep_csv: cannot open '" + path + "'");
    out << "n_proj,realizations,converged,passthrough_rejected,epoch_capped,diverged,"
           "convergence_rate,rate_ci_lo,rate_ci_hi,mean_epochs_converged,mean_wall_seconds,"
           "mean_eve_accuracy\n";
    char buf[256];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%.6f,%.6f,%.6f,%.3f,%.3f,%.6f\n", r.n_proj,
                      r.realizations, r.converged, r.passthrough_rejected, r.epoch_capped, r.diverged,
                      r.convergence_rate, r.rate_ci_lo, r.rate_ci_hi, r.mean_epochs_converged,
                      r.mean_wall_seconds, r.mean_eve_accuracy);
        out << buf;
    }
}

}  // namespace ranc
