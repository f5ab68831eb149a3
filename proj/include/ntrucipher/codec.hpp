#ifndef NTRUCIPHER_CODEC_HPP
#define NTRUCIPHER_CODEC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ntrucipher/cipher.hpp"
#include "ntrucipher/params.hpp"

namespace ntrucipher {

// Message stream layout, split across blocks of block_payload_bytes():
//   u64 LE byte length | u32 LE CRC-32 of the data | data | zero padding
inline constexpr std::size_t kMessageHeaderBytes = 12;

struct MessageBlocking {
  std::size_t block_payload_bytes;
  std::uint64_t total_length;
  std::uint32_t checksum;
  std::size_t block_count;
};

// floor((n - 2) * log2(3) / 8): bytes per block when two trits are held in
// reserve. 50 at n = 256. Throws ParameterError for p != 3 or when n is too
// small to carry a byte.
std::size_t block_payload_bytes(const ParamSet& ps);

// CRC-32 (IEEE 802.3, as in zlib).
std::uint32_t crc32(std::span<const std::uint8_t> data);

MessageBlocking describe_blocking(std::span<const std::uint8_t> data,
                                  const ParamSet& ps);

// Each block's bytes are read as a big-endian integer and written as n
// balanced-ternary digits, least significant digit in coefficient 0.
std::vector<Plaintext> encode_bytes(std::span<const std::uint8_t> data,
                                    const ParamSet& ps);

// Inverse of encode_bytes. Throws IntegrityError when a block is not a valid
// digit string, the block count disagrees with the header length, padding is
// non-zero, or the CRC does not match.
std::vector<std::uint8_t> decode_blocks(std::span<const Plaintext> blocks,
                                        const ParamSet& ps);

// Key file:
//   "NTRK" | u8 version=1 | u32 CRC-32 of all following bytes |
//   u32 n, p, q, a1, a2, a3, a_mu, lambda | n x i16 k | n x i16 k_inv
// All integers little-endian. 1065 bytes at n = 256.
std::vector<std::uint8_t> serialize_key(const SecretKey& sk);
// Throws FormatError on bad magic/version/length and CorruptionError on a
// checksum mismatch or any SecretKey invariant violation.
SecretKey deserialize_key(std::span<const std::uint8_t> bytes);
std::size_t key_file_size(const ParamSet& ps);

// Ciphertext file:
//   "NTRC" | u8 version=1 | u32 CRC-32 of all following bytes |
//   u32 x 8 parameter echo | u32 block count | per block n x i16
struct CiphertextFile {
  ParamSet params;
  std::vector<Ciphertext> blocks;
};

std::vector<std::uint8_t> serialize_ciphertext(
    const ParamSet& ps, std::span<const Ciphertext> blocks);
CiphertextFile deserialize_ciphertext(std::span<const std::uint8_t> bytes);
std::size_t ciphertext_file_size(const ParamSet& ps, std::size_t blocks);

}  // namespace ntrucipher

#endif  // NTRUCIPHER_CODEC_HPP
