#include "ranc/evaluation.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "ranc/errors.hpp"

namespace ranc {

namespace {

void append_signal(std::vector<float>& out, const BitVector& bits) {
    for (std::uint8_t b : bits) out.push_back(b ? 1.0f : -1.0f);
}

Tensor sign_round(const Tensor& y) {
    Tensor r = Tensor::zeros(y.rows(), y.cols());
    auto yv = y.values();
    auto rv = r.values();
    for (std::size_t i = 0; i < yv.size(); ++i) rv[i] = yv[i] >= 0.0f ? 1.0f : -1.0f;
    return r;
}

double sign_match_fraction(const Tensor& a, const Tensor& b) {
    auto av = a.values();
    auto bv = b.values();
    std::size_t hits = 0;
    for (std::size_t i = 0; i < av.size(); ++i)
        hits += (av[i] >= 0.0f) == (bv[i] >= 0.0f);
    return double(hits) / double(av.size());
}

}  // namespace

PairBatch::PairBatch(int n_bits, const KeyPool& pool) : n_bits_(n_bits) {
    if (pool.n_bits != n_bits) throw ShapeError("PairBatch: pool bit length differs from n_bits");
    const std::uint64_t n_msgs = std::uint64_t(1) << n_bits;
    n_pairs_ = int(n_msgs * pool.size());
    std::vector<float> xs, ks;
    xs.reserve(std::size_t(n_pairs_) * n_bits);
    ks.reserve(std::size_t(n_pairs_) * n_bits);
    for (std::uint64_t m = 0; m < n_msgs; ++m) {
        const BitVector mbits = value_to_bits(m, n_bits);
        for (const Key& key : pool.keys) {
            append_signal(xs, mbits);
            append_signal(ks, key.bits);
        }
    }
    x_ = Tensor::from(n_pairs_ * n_bits, 1, std::move(xs));
    k_ = Tensor::from(n_pairs_ * n_bits, 1, std::move(ks));
}

PairBatch::PairBatch(const BitVector& message, const KeyPool& pool) : n_bits_(int(message.size())) {
    if (pool.n_bits != n_bits_) throw ShapeError("PairBatch: pool bit length differs from message length");
    n_pairs_ = int(pool.size());
    std::vector<float> xs, ks;
    xs.reserve(std::size_t(n_pairs_) * n_bits_);
    ks.reserve(std::size_t(n_pairs_) * n_bits_);
    for (const Key& key : pool.keys) {
        append_signal(xs, message);
        append_signal(ks, key.bits);
    }
    x_ = Tensor::from(n_pairs_ * n_bits_, 1, std::move(xs));
    k_ = Tensor::from(n_pairs_ * n_bits_, 1, std::move(ks));
}

PairBatch::PairBatch(int n_bits, const std::vector<std::pair<BitVector, BitVector>>& pairs)
    : n_pairs_(int(pairs.size())), n_bits_(n_bits) {
    std::vector<float> xs, ks;
    xs.reserve(pairs.size() * std::size_t(n_bits));
    ks.reserve(pairs.size() * std::size_t(n_bits));
    for (const auto& [m, k] : pairs) {
        if (int(m.size()) != n_bits || int(k.size()) != n_bits)
            throw ShapeError("PairBatch: pair bit length differs from n_bits");
        append_signal(xs, m);
        append_signal(ks, k);
    }
    x_ = Tensor::from(n_pairs_ * n_bits_, 1, std::move(xs));
    k_ = Tensor::from(n_pairs_ * n_bits_, 1, std::move(ks));
}

PairEvalResult evaluate_pairs(const AncModel& model, const PairBatch& batch, bool with_eve) {
    PairEvalResult res;
    const AliceNet::Out a = model.alice.forward(nullptr, batch.x(), batch.k());
    const Tensor y_rounded = sign_round(a.y);
    const BobNet::Out b = model.bob.forward(nullptr, y_rounded, batch.k());
    res.bob_bit_accuracy = sign_match_fraction(b.x_hat, batch.x());

    const int nb = batch.n_bits();
    auto yv = y_rounded.values();
    auto xv = batch.x().values();
    for (int p = 0; p < batch.n_pairs(); ++p) {
        bool same = true;
        for (int i = 0; i < nb && same; ++i) {
            const std::size_t r = std::size_t(p) * nb + std::size_t(i);
            same = (yv[r] >= 0.0f) == (xv[r] >= 0.0f);
        }
        if (same) {
            res.any_passthrough = true;
            break;
        }
    }

    if (with_eve && model.eve) {
        const Tensor e = model.eve->forward(nullptr, y_rounded);
        res.eve_bit_accuracy = sign_match_fraction(e, batch.x());
    } else {
        res.eve_bit_accuracy = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

double bit_recovery_accuracy(const AncModel& model, const KeyPool& pool) {
    return evaluate_pairs(model, PairBatch(model.n_bits, pool), false).bob_bit_accuracy;
}

double eve_bit_accuracy(const AncModel& model, const KeyPool& pool) {
    if (!model.eve) throw UsageError("eve_bit_accuracy: model bundle carries no Eve network");
    return evaluate_pairs(model, PairBatch(model.n_bits, pool), true).eve_bit_accuracy;
}

UniquenessScore uniqueness_from_table(const BitVector& message,
                                      const std::vector<BitVector>& cipher_rows) {
    if (cipher_rows.size() < 2)
        throw ArgumentError("uniqueness: need at least 2 keys, got " + std::to_string(cipher_rows.size()));
    const std::size_t n_keys = cipher_rows.size();
    const std::size_t n_bits = cipher_rows.front().size();
    for (const BitVector& row : cipher_rows)
        if (row.size() != n_bits) throw ShapeError("uniqueness: ragged ciphertext table");

    std::size_t matches = 0;
    for (std::size_t i = 0; i < n_bits; ++i) {
        std::size_t ones = 0;
        for (const BitVector& row : cipher_rows) ones += row[i];
        const bool mode = 2 * ones >= n_keys;  // tie -> bit 1
        matches += mode ? ones : (n_keys - ones);
    }
    UniquenessScore score;
    score.message = message;
    score.similarity_pct = 100.0 * double(matches) / double(n_bits * n_keys);
    score.uniqueness_pct = 100.0 * (100.0 - score.similarity_pct) / 50.0;
    return score;
}

UniquenessScore uniqueness(const AncModel& model, const KeyPool& pool, const BitVector& message) {
    if (pool.size() < 2) throw ArgumentError("uniqueness: pool must hold at least 2 keys");
    const PairBatch batch(message, pool);
    const AliceNet::Out a = model.alice.forward(nullptr, batch.x(), batch.k());
    auto yv = a.y.values();
    std::vector<BitVector> rows(pool.size());
    for (std::size_t kidx = 0; kidx < pool.size(); ++kidx) {
        rows[kidx].resize(message.size());
        for (std::size_t i = 0; i < message.size(); ++i)
            rows[kidx][i] = signal_bit(yv[kidx * message.size() + i]);
    }
    return uniqueness_from_table(message, rows);
}

UniquenessReport uniqueness_report(const AncModel& model, const KeyPool& pool) {
    if (pool.size() < 2) throw ArgumentError("uniqueness_report: pool must hold at least 2 keys");
    const int nb = model.n_bits;
    const std::uint64_t n_msgs = std::uint64_t(1) << nb;
    const std::size_t n_keys = pool.size();

    // One batched pass over the whole cross product, then slice per message.
    const PairBatch batch(nb, pool);
    const AliceNet::Out a = model.alice.forward(nullptr, batch.x(), batch.k());
    auto yv = a.y.values();

    UniquenessReport report;
    report.per_message.reserve(n_msgs);
    double total = 0.0;
    for (std::uint64_t m = 0; m < n_msgs; ++m) {
        std::vector<BitVector> rows(n_keys, BitVector(std::size_t(nb)));
        for (std::size_t kidx = 0; kidx < n_keys; ++kidx) {
            const std::size_t base = (m * n_keys + kidx) * std::size_t(nb);
            for (int i = 0; i < nb; ++i) rows[kidx][std::size_t(i)] = signal_bit(yv[base + std::size_t(i)]);
        }
        report.per_message.push_back(uniqueness_from_table(value_to_bits(m, nb), rows));
        total += report.per_message.back().uniqueness_pct;
    }
    report.mean_uniqueness_pct = total / double(n_msgs);
    return report;
}

void write_uniqueness_csv(const UniquenessReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("write_uniqueness_csv: cannot open '" + path + "'");
    out << "message,similarity_pct,uniqueness_pct\n";
    char buf[64];
    for (const UniquenessScore& s : report.per_message) {
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f\n", bits_to_hex(s.message).c_str(),
                      s.similarity_pct, s.uniqueness_pct);
        out << buf;
    }
}

CrossTab table_crosstab(const AncModel& model, const std::vector<BitVector>& messages,
                        const std::vector<BitVector>& keys) {
    CrossTab tab;
    tab.messages = messages;
    tab.keys = keys;
    std::vector<std::pair<BitVector, BitVector>> pairs;
    for (const BitVector& m : messages)
        for (const BitVector& k : keys) pairs.emplace_back(m, k);
    const PairBatch batch(model.n_bits, pairs);
    const AliceNet::Out a = model.alice.forward(nullptr, batch.x(), batch.k());
    auto yv = a.y.values();

    std::set<std::string> seen;
    tab.cipher_hex.assign(messages.size(), std::vector<std::string>(keys.size()));
    for (std::size_t mi = 0; mi < messages.size(); ++mi) {
        for (std::size_t ki = 0; ki < keys.size(); ++ki) {
            const std::size_t base = (mi * keys.size() + ki) * std::size_t(model.n_bits);
            BitVector bits(std::size_t(model.n_bits));
            for (int i = 0; i < model.n_bits; ++i) bits[std::size_t(i)] = signal_bit(yv[base + std::size_t(i)]);
            tab.cipher_hex[mi][ki] = bits_to_hex(bits);
            seen.insert(tab.cipher_hex[mi][ki]);
        }
    }
    tab.all_distinct = seen.size() == messages.size() * keys.size();
    return tab;
}

CrossTab table_crosstab_default(const AncModel& model) {
    if (model.n_bits != 8)
        throw ArgumentError("table_crosstab_default: needs an 8-bit model, got n_bits=" +
                            std::to_string(model.n_bits));
    const std::vector<BitVector> messages = {hex_to_bits("FF", 8), hex_to_bits("00", 8),
                                             hex_to_bits("AA", 8), hex_to_bits("55", 8)};
    const std::vector<BitVector> keys = {hex_to_bits("0F", 8), hex_to_bits("17", 8),
                                         hex_to_bits("1B", 8), hex_to_bits("1D", 8)};
    return table_crosstab(model, messages, keys);
}

BitVector quantize(const SignalVector& y, const QuantizationConfig& cfg) {
    const int nq = cfg.n_steps_exponent;
    if (nq < 1 || nq > 32)
        throw ArgumentError("quantize: n_steps_exponent must be in [1,32], got " + std::to_string(nq));
    const double levels = double((std::uint64_t(1) << nq) - 1);
    BitVector bits;
    bits.reserve(y.size() * std::size_t(nq));
    for (std::size_t i = 0; i < y.size(); ++i) {
        const float v = y[i];
        if (!(v >= -1.0f && v <= 1.0f))
            throw ArgumentError("quantize: entry " + std::to_string(i) + " is outside [-1,1]");
        const auto q = std::uint64_t(std::llround(levels * (double(v) + 1.0) / 2.0));
        for (int b = nq - 1; b >= 0; --b) bits.push_back(std::uint8_t((q >> b) & 1u));
    }
    return bits;
}

SignalVector dequantize(const BitVector& bits, const QuantizationConfig& cfg) {
    const int nq = cfg.n_steps_exponent;
    if (nq < 1 || nq > 32)
        throw ArgumentError("dequantize: n_steps_exponent must be in [1,32], got " + std::to_string(nq));
    if (bits.size() % std::size_t(nq) != 0)
        throw FormatError(FormatError::Kind::framing,
                          "dequantize: bit count " + std::to_string(bits.size()) +
                              " is not a multiple of N_q=" + std::to_string(nq));
    const double levels = double((std::uint64_t(1) << nq) - 1);
    SignalVector y(bits.size() / std::size_t(nq));
    for (std::size_t s = 0; s < y.size(); ++s) {
        std::uint64_t q = 0;
        for (int b = 0; b < nq; ++b) q = (q << 1) | bits[s * std::size_t(nq) + std::size_t(b)];
        y[s] = float(2.0 * double(q) / levels - 1.0);
    }
    return y;
}

}  // namespace ranc
