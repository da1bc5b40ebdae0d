#pragma once

#include <string>
#include <vector>

#include "ranc/keygen.hpp"
#include "ranc/network.hpp"

namespace ranc {

// Precomputed signal columns for a list of (message, key) pairs, each pair
// occupying n_bits consecutive rows. The full constructor takes the cross
// product of all 2^n_bits messages (ascending) with every pool key (pool
// order), messages outer, keys inner.
class PairBatch {
  public:
    PairBatch(int n_bits, const KeyPool& pool);
    // Pairs of one fixed message against every key in pool order.
    PairBatch(const BitVector& message, const KeyPool& pool);
    // Explicit pair list.
    PairBatch(int n_bits, const std::vector<std::pair<BitVector, BitVector>>& pairs);

    const Tensor& x() const { return x_; }
    const Tensor& k() const { return k_; }
    int n_pairs() const { return n_pairs_; }
    int n_bits() const { return n_bits_; }

  private:
    Tensor x_, k_;
    int n_pairs_ = 0;
    int n_bits_ = 0;
};

struct PairEvalResult {
    double bob_bit_accuracy = 0.0;
    double eve_bit_accuracy = 0.0;  // NaN when Eve is absent or not requested
    bool any_passthrough = false;   // some pair produced ciphertext bits equal to the message bits
};

// Rounded-ciphertext evaluation: Alice's y is sign-rounded to +/-1 before
// Bob decrypts (and before Eve intercepts).
PairEvalResult evaluate_pairs(const AncModel& model, const PairBatch& batch, bool with_eve);

// Fraction of correctly recovered bits over all 2^n_bits messages x all
// pool keys, with rounded ciphertexts.
double bit_recovery_accuracy(const AncModel& model, const KeyPool& pool);

// Eve's bit accuracy over the same cross product (rounded ciphertexts).
double eve_bit_accuracy(const AncModel& model, const KeyPool& pool);

// ---- ciphertext uniqueness ------------------------------------------------

struct UniquenessScore {
    BitVector message;
    double similarity_pct = 0.0;  // s in [50,100] for even key counts
    double uniqueness_pct = 0.0;  // u = 100*(100-s)/50
};

// Core of the metric, over an explicit ciphertext bit table with one row
// per key: per bit position take the most common bit across keys (ties
// count as bit 1), count table cells equal to their column mode, express
// the count as a percentage of n_keys*n_bits, and map similarity s to
// uniqueness u = 100*(100-s)/50.
UniquenessScore uniqueness_from_table(const BitVector& message,
                                      const std::vector<BitVector>& cipher_rows);

// Encrypts `message` under every pool key (rounded) and scores the table.
UniquenessScore uniqueness(const AncModel& model, const KeyPool& pool, const BitVector& message);

struct UniquenessReport {
    std::vector<UniquenessScore> per_message;  // all 2^n_bits messages, ascending
    double mean_uniqueness_pct = 0.0;
};

UniquenessReport uniqueness_report(const AncModel& model, const KeyPool& pool);
void write_uniqueness_csv(const UniquenessReport& report, const std::string& path);

// ---- message/key cross tabulation ----------------------------------------

struct CrossTab {
    std::vector<BitVector> messages;
    std::vector<BitVector> keys;
    std::vector<std::vector<std::string>> cipher_hex;  // [message][key]
    bool all_distinct = false;
};

// Rounded ciphertext hex for each (message, key) cell; flags whether all
// cells are pairwise distinct.
CrossTab table_crosstab(const AncModel& model, const std::vector<BitVector>& messages,
                        const std::vector<BitVector>& keys);

// The four standard probe messages {0xFF, 0x00, 0xAA, 0x55} against keys
// {0x0F, 0x17, 0x1B, 0x1D} (n_bits must be 8).
CrossTab table_crosstab_default(const AncModel& model);

// ---- uniform quantization codec -------------------------------------------

struct QuantizationConfig {
    int n_steps_exponent = 4;  // N_q: bits per sample, in [1,32]
};

// Maps each y in [-1,1] to q = round((2^N_q - 1) * (y+1)/2), ties away
// from zero, and emits q as an N_q-bit big-endian word. Throws
// ArgumentError when an entry leaves [-1,1].
BitVector quantize(const SignalVector& y, const QuantizationConfig& cfg);

// Inverse mapping y = 2q/(2^N_q - 1) - 1. Throws FormatError(framing) when
// the bit count is not a multiple of N_q.
SignalVector dequantize(const BitVector& bits, const QuantizationConfig& cfg);

}  // namespace ranc
