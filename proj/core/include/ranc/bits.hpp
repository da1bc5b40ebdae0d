#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ranc {

// Sequence of {0,1} bit values, most significant bit first.
using BitVector = std::vector<std::uint8_t>;
// Sequence of reals in [-1,1]; the +/-1-coded form consumed by networks.
using SignalVector = std::vector<float>;

// 0 -> -1, 1 -> +1.
SignalVector bits_to_signal(const BitVector& bits);

// Rounds (y+1)/2 to the nearest of {0,1}; a tie at exactly y=0 resolves to
// bit 1. Throws NumericError on non-finite entries.
BitVector signal_to_bits(const SignalVector& y);

// Single-entry form of the rounding rule above.
inline std::uint8_t signal_bit(float y) { return y >= 0.0f ? 1u : 0u; }

// Value <-> MSB-first bit expansion for small words.
BitVector value_to_bits(std::uint64_t value, int n_bits);
std::uint64_t bits_to_value(const BitVector& bits);

// Hex text for a bit vector, zero-padded, uppercase ("0F" for 00001111).
std::string bits_to_hex(const BitVector& bits);
// Parses "0F", "0x0F" or "0X0f" into an n_bits-long vector.
// Throws ArgumentError on malformed text or overflow.
BitVector hex_to_bits(const std::string& hex, int n_bits);

// Bits of each byte, MSB first.
BitVector bytes_to_bits(const std::vector<std::uint8_t>& bytes);
// Inverse of bytes_to_bits. Throws FormatError(framing) when the bit count
// is not a multiple of 8.
std::vector<std::uint8_t> bits_to_bytes(const BitVector& bits);

}  // namespace ranc
