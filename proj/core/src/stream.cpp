#include "ranc/stream.hpp"

#include <algorithm>

#include "ranc/errors.hpp"
#include "ranc/parallel.hpp"

namespace ranc {

namespace {

// Below this many bytes a chunk is not worth a thread of its own.
constexpr std::size_t kMinChunkBytes = 32;

void validate(const AncModel& model, const Key& key, const KeyPool* pool) {
    if (model.n_bits != 8)
        throw ShapeError("stream: byte pipelines need an 8-bit model, got n_bits=" +
                         std::to_string(model.n_bits));
    if (!model.converged)
        throw ModelStateError("stream: model has not converged; refusing to encrypt/decrypt");
    if (int(key.bits.size()) != model.n_bits)
        throw KeyError("stream: key length " + std::to_string(key.bits.size()) +
                       " does not match model n_bits=" + std::to_string(model.n_bits));
    if (pool && !pool->contains(key.bits))
        throw KeyError("stream: key " + bits_to_hex(key.bits) + " is not in the pool");
}

// Builds the signal columns for bytes [lo,hi) and the tiled key column.
void build_columns(std::span<const std::uint8_t> bytes, std::size_t lo, std::size_t hi,
                   const SignalVector& key_signal, Tensor& x, Tensor& k) {
    const std::size_t n = (hi - lo) * 8;
    std::vector<float> xs(n), ks(n);
    for (std::size_t b = lo; b < hi; ++b) {
        const std::size_t base = (b - lo) * 8;
        for (int i = 0; i < 8; ++i) {
            xs[base + std::size_t(i)] = ((bytes[b] >> (7 - i)) & 1u) ? 1.0f : -1.0f;
            ks[base + std::size_t(i)] = key_signal[std::size_t(i)];
        }
    }
    x = Tensor::from(int(n), 1, std::move(xs));
    k = Tensor::from(int(n), 1, std::move(ks));
}

std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t n_bytes, int workers) {
    if (workers <= 0) workers = max_workers();
    std::size_t n_chunks = std::max<std::size_t>(1, std::min<std::size_t>(std::size_t(workers),
                                                                          n_bytes / kMinChunkBytes));
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    const std::size_t per = (n_bytes + n_chunks - 1) / n_chunks;
    for (std::size_t lo = 0; lo < n_bytes; lo += per)
        ranges.emplace_back(lo, std::min(n_bytes, lo + per));
    return ranges;
}

}  // namespace

CipherStream encrypt_stream(const AncModel& model, const Key& key,
                            std::span<const std::uint8_t> plaintext, const KeyPool* pool, int workers) {
    validate(model, key, pool);
    CipherStream out;
    out.key_hex = bits_to_hex(key.bits);
    out.bits.assign(plaintext.size() * 8, 0);
    if (plaintext.empty()) return out;

    const SignalVector key_signal = bits_to_signal(key.bits);
    const auto ranges = chunk_ranges(plaintext.size(), workers);
    parallel_for(int(ranges.size()), [&](int ci) {
        const auto [lo, hi] = ranges[std::size_t(ci)];
        Tensor x, k;
        build_columns(plaintext, lo, hi, key_signal, x, k);
        const Tensor y = model.alice.forward(nullptr, x, k).y;
        auto yv = y.values();
        for (std::size_t i = 0; i < yv.size(); ++i) out.bits[lo * 8 + i] = signal_bit(yv[i]);
    }, workers);
    return out;
}

std::vector<std::uint8_t> decrypt_bits(const AncModel& model, const Key& key, const BitVector& bits,
                                       const KeyPool* pool, int workers) {
    validate(model, key, pool);
    if (bits.size() % 8 != 0)
        throw FormatError(FormatError::Kind::framing,
                          "decrypt: ciphertext bit count " + std::to_string(bits.size()) +
                              " is not a multiple of 8");
    std::vector<std::uint8_t> plain(bits.size() / 8, 0);
    if (plain.empty()) return plain;

    const SignalVector key_signal = bits_to_signal(key.bits);
    const auto ranges = chunk_ranges(plain.size(), workers);
    parallel_for(int(ranges.size()), [&](int ci) {
        const auto [lo, hi] = ranges[std::size_t(ci)];
        const std::size_t n = (hi - lo) * 8;
        std::vector<float> ys(n), ks(n);
        for (std::size_t i = 0; i < n; ++i) {
            ys[i] = bits[lo * 8 + i] ? 1.0f : -1.0f;
            ks[i] = key_signal[i % 8];
        }
        const Tensor y = Tensor::from(int(n), 1, std::move(ys));
        const Tensor k = Tensor::from(int(n), 1, std::move(ks));
        const Tensor x_hat = model.bob.forward(nullptr, y, k).x_hat;
        auto xv = x_hat.values();
        for (std::size_t b = lo; b < hi; ++b) {
            std::uint8_t byte = 0;
            for (int i = 0; i < 8; ++i)
                byte = std::uint8_t((byte << 1) | signal_bit(xv[(b - lo) * 8 + std::size_t(i)]));
            plain[b] = byte;
        }
    }, workers);
    return plain;
}

std::vector<std::uint8_t> decrypt_stream(const AncModel& model, const Key& key,
                                         const CipherStream& cipher, const KeyPool* pool, int workers) {
    return decrypt_bits(model, key, cipher.bits, pool, workers);
}

}  // namespace ranc
