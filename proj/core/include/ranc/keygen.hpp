#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranc/bits.hpp"

namespace ranc {

// An encryption key: a bitwise-symmetric bit sequence (equal zero and one
// counts) whose peak sidelobe is within the pool tolerance.
struct Key {
    BitVector bits;
    int psl = 0;

    std::string hex() const { return bits_to_hex(bits); }
};

// The exhaustively enumerated set of valid keys for one bit length, sorted
// ascending by unsigned value of the bit pattern.
struct KeyPool {
    std::vector<Key> keys;
    int n_bits = 0;
    int tolerance = 0;

    std::size_t size() const { return keys.size(); }
    bool contains(const BitVector& bits) const;
    // Index of the key, or -1 when absent.
    int find(const BitVector& bits) const;
};

// Peak sidelobe of a bit sequence: the maximum over the nonzero circular
// shifts n of  p[n] = sum_i k[i] * k[(i+n) mod N],  evaluated on the raw
// {0,1} bit values. The zero shift (the main lobe) is excluded.
//
// The {0,1} convention matters: under +/-1 coding a balanced byte such as
// 0xAA reaches sidelobe 8 and tolerance 5 would reject it, leaving fewer
// than the expected seventy 8-bit keys. On {0,1} values every balanced
// 8-bit pattern stays at or below sidelobe 4, so the (8,5) pool holds all
// C(8,4) = 70 balanced bytes.
int psl(const BitVector& bits);

// All n_bits-long patterns that are bitwise symmetric and whose psl() is
// within tolerance, sorted ascending. n_bits must be even (symmetry is
// impossible otherwise) and at most 24 (exhaustive enumeration).
KeyPool generate_pool(int n_bits, int tolerance);

// One uppercase hex pattern per line, LF endings, sorted ascending.
void write_pool(const KeyPool& pool, const std::string& path);
// Reads a pool file back; recomputes psl per key and validates symmetry.
KeyPool read_pool(const std::string& path, int n_bits, int tolerance);

}  // namespace ranc
