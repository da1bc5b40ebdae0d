#include "ranc/bits.hpp"

#include <cmath>

#include "ranc/errors.hpp"

namespace ranc {

SignalVector bits_to_signal(const BitVector& bits) {
    SignalVector s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? 1.0f : -1.0f;
    return s;
}

BitVector signal_to_bits(const SignalVector& y) {
    BitVector b(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i]))
            throw NumericError("signal_to_bits: non-finite entry at index " + std::to_string(i));
        b[i] = signal_bit(y[i]);
    }
    return b;
}

BitVector value_to_bits(std::uint64_t value, int n_bits) {
    BitVector bits(static_cast<std::size_t>(n_bits));
    for (int i = 0; i < n_bits; ++i)
        bits[std::size_t(i)] = std::uint8_t((value >> (n_bits - 1 - i)) & 1u);
    return bits;
}

std::uint64_t bits_to_value(const BitVector& bits) {
    std::uint64_t v = 0;
    for (std::uint8_t b : bits) v = (v << 1) | (b ? 1u : 0u);
    return v;
}

std::string bits_to_hex(const BitVector& bits) {
    static const char* digits = "0123456789ABCDEF";
    const int n_digits = int((bits.size() + 3) / 4);
    const std::uint64_t v = bits_to_value(bits);
    std::string out(std::size_t(n_digits), '0');
    for (int d = 0; d < n_digits; ++d)
        out[std::size_t(n_digits - 1 - d)] = digits[(v >> (4 * d)) & 0xF];
    return out;
}

BitVector hex_to_bits(const std::string& hex, int n_bits) {
    std::size_t start = 0;
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) start = 2;
    if (start == hex.size()) throw ArgumentError("hex_to_bits: empty hex string '" + hex + "'");
    std::uint64_t v = 0;
    for (std::size_t i = start; i < hex.size(); ++i) {
        const char c = hex[i];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = 10 + c - 'a';
        else if (c >= 'A' && c <= 'F') d = 10 + c - 'A';
        else throw ArgumentError("hex_to_bits: invalid hex digit '" + std::string(1, c) + "' in '" + hex + "'");
        if (v > (~std::uint64_t(0) >> 4)) throw ArgumentError("hex_to_bits: value too large: '" + hex + "'");
        v = (v << 4) | std::uint64_t(d);
    }
    if (n_bits < 64 && v >= (std::uint64_t(1) << n_bits))
        throw ArgumentError("hex_to_bits: '" + hex + "' does not fit in " + std::to_string(n_bits) + " bits");
    return value_to_bits(v, n_bits);
}

BitVector bytes_to_bits(const std::vector<std::uint8_t>& bytes) {
    BitVector bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t byte : bytes)
        for (int i = 7; i >= 0; --i) bits.push_back(std::uint8_t((byte >> i) & 1u));
    return bits;
}

std::vector<std::uint8_t> bits_to_bytes(const BitVector& bits) {
    if (bits.size() % 8 != 0)
        throw FormatError(FormatError::Kind::framing,
                          "bits_to_bytes: bit count " + std::to_string(bits.size()) + " is not a multiple of 8");
    std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        bytes[i / 8] = std::uint8_t((bytes[i / 8] << 1) | (bits[i] ? 1u : 0u));
    return bytes;
}

}  // namespace ranc
