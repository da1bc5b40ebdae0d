#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ranc/evaluation.hpp"
#include "ranc/keygen.hpp"
#include "ranc/network.hpp"

namespace ranc {

// Encrypted byte stream: exactly 8 ciphertext bits per plaintext byte,
// no padding or framing.
struct CipherStream {
    BitVector bits;
    std::string key_hex;

    std::size_t byte_count() const { return bits.size() / 8; }
    std::vector<std::uint8_t> packed_bytes() const { return bits_to_bytes(bits); }
};

// Encrypts each plaintext byte independently through Alice with the given
// key, rounding the ciphertext signal to bits. Bytes are processed in
// batches and may be split across worker threads (outputs are identical
// either way; workers=0 uses max_workers()).
//
// Requires a converged model with n_bits == 8. When `pool` is given the
// key must be a member. Throws ModelStateError / KeyError / ShapeError.
CipherStream encrypt_stream(const AncModel& model, const Key& key,
                            std::span<const std::uint8_t> plaintext,
                            const KeyPool* pool = nullptr, int workers = 0);

// Inverse pipeline through Bob. Throws FormatError(framing) when the bit
// count is not a multiple of 8.
std::vector<std::uint8_t> decrypt_stream(const AncModel& model, const Key& key,
                                         const CipherStream& cipher,
                                         const KeyPool* pool = nullptr, int workers = 0);

std::vector<std::uint8_t> decrypt_bits(const AncModel& model, const Key& key, const BitVector& bits,
                                       const KeyPool* pool = nullptr, int workers = 0);

}  // namespace ranc
