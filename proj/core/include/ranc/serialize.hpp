#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranc/network.hpp"

namespace ranc {

// Model bundle format (all integers little-endian):
//
//   bytes 0..7   magic "RANCMDL\0"
//   u32          format version (currently 1)
//   u32          n_bits
//   u32          n_proj
//   u64          seed
//   u32          flags: bit0 converged, bit1 bundle includes Eve
//   u32          training epochs
//   payload      float32 values, row-major, little-endian: Alice's layers
//                (msg_proj w,b; key_proj w,b; msg_dot w,b; key_dot w,b;
//                post_dot w,b; head_x w,b; head_y w,b; head_k w,b), then
//                Bob's (cipher_proj w,b; key_proj w,b; cipher_dot w,b;
//                key_dot w,b; post_dot w,b; head_x w,b; head_k w,b), then
//                Eve's (proj w,b; dot w,b; inv w,b) when present
//   u32          CRC-32 (IEEE) of the payload bytes
//
// Writing the same model twice produces identical bytes.

inline constexpr std::uint32_t kModelFormatVersion = 1;

std::vector<std::uint8_t> serialize_model(const AncModel& m, bool include_eve);
AncModel deserialize_model(const std::vector<std::uint8_t>& bytes);

void save_model(const AncModel& m, const std::string& path, bool include_eve = true);
AncModel load_model(const std::string& path);

// CRC-32 (IEEE 802.3, reflected 0xEDB88320).
std::uint32_t crc32(const std::uint8_t* data, std::size_t len);

}  // namespace ranc
