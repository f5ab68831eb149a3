#ifndef NTRUCIPHER_RANDOM_SOURCE_HPP
#define NTRUCIPHER_RANDOM_SOURCE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace ntrucipher {

using Seed = std::array<std::uint8_t, 32>;

// Parses up to 64 hex digits (an even count) into a seed; shorter inputs are
// right-padded with zero bytes. Throws ParameterError on malformed input.
Seed seed_from_hex(std::string_view hex);
std::string seed_to_hex(const Seed& seed);

// Byte stream from ChaCha20 (IETF variant, zero nonce) keyed by a 32-byte
// seed. Equal seeds give equal streams; a default-constructed source takes
// its seed from the operating system CSPRNG.
//
// A source is single-owner: it is movable but not copyable and must not be
// shared between threads. Use split() to derive independent sub-streams.
class RandomSource {
 public:
  RandomSource();
  explicit RandomSource(const Seed& seed);

  // Seed bytes are the little-endian encoding of `index` followed by zeros.
  static RandomSource from_index(std::uint64_t index);

  RandomSource(RandomSource&&) noexcept = default;
  RandomSource& operator=(RandomSource&&) noexcept = default;
  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;

  void fill(std::uint8_t* out, std::size_t len);
  std::uint64_t next_u64();

  // Uniform in [0, bound), by rejection on 64-bit words. bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);

  // Child seed = BLAKE2b-256 keyed by this source's seed over
  // "ntrucipher/split" || le64(index). Does not advance this stream.
  RandomSource split(std::uint64_t index) const;

  const Seed& seed() const { return seed_; }

 private:
  void refill();

  Seed seed_{};
  std::array<std::uint8_t, 512> buffer_{};
  std::size_t offset_ = buffer_.size();
  std::uint32_t block_counter_ = 0;
};

}  // namespace ntrucipher

#endif  // NTRUCIPHER_RANDOM_SOURCE_HPP
