#include "ntrucipher/random_source.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "ntrucipher/errors.hpp"

namespace ntrucipher {
namespace {

void ensure_sodium() {
  static const bool ready = [] { return sodium_init() >= 0; }();
  if (!ready) throw Error("libsodium initialization failed");
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Seed seed_from_hex(std::string_view hex) {
  if (hex.size() > 64 || hex.size() % 2 != 0 || hex.empty()) {
    throw ParameterError("seed must be 2..64 hex digits (even count)");
  }
  Seed seed{};
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_value(hex[i]);
    const int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw ParameterError("seed is not valid hex");
    seed[i / 2] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return seed;
}

std::string seed_to_hex(const Seed& seed) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t b : seed) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

RandomSource::RandomSource() {
  ensure_sodium();
  randombytes_buf(seed_.data(), seed_.size());
}

RandomSource::RandomSource(const Seed& seed) : seed_(seed) { ensure_sodium(); }

RandomSource RandomSource::from_index(std::uint64_t index) {
  Seed seed{};
  for (int i = 0; i < 8; ++i) seed[i] = static_cast<std::uint8_t>(index >> (8 * i));
  return RandomSource(seed);
}

void RandomSource::refill() {
  static_assert(sizeof(buffer_) % 64 == 0);
  static const std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES>
      kNonce{};
  std::memset(buffer_.data(), 0, buffer_.size());
  crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), buffer_.data(),
                                     buffer_.size(), kNonce.data(),
                                     block_counter_, seed_.data());
  block_counter_ += static_cast<std::uint32_t>(buffer_.size() / 64);
  if (block_counter_ == 0) throw Error("random stream exhausted");
  offset_ = 0;
}

void RandomSource::fill(std::uint8_t* out, std::size_t len) {
  while (len > 0) {
    if (offset_ == buffer_.size()) refill();
    const std::size_t take = std::min(len, buffer_.size() - offset_);
    std::memcpy(out, buffer_.data() + offset_, take);
    offset_ += take;
    out += take;
    len -= take;
  }
}

std::uint64_t RandomSource::next_u64() {
  std::uint8_t b[8];
  fill(b, sizeof(b));
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = v << 8 | b[i];
  return v;
}

std::uint64_t RandomSource::uniform(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("uniform bound must be positive");
  // 2^64 mod bound. Words below it are rejected so the accepted range has a
  // size divisible by bound.
  const std::uint64_t reject_below = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t w = next_u64();
    if (w >= reject_below) return w % bound;
  }
}

RandomSource RandomSource::split(std::uint64_t index) const {
  static constexpr char kLabel[] = "ntrucipher/split";
  std::uint8_t msg[sizeof(kLabel) - 1 + 8];
  std::memcpy(msg, kLabel, sizeof(kLabel) - 1);
  for (int i = 0; i < 8; ++i) {
    msg[sizeof(kLabel) - 1 + i] = static_cast<std::uint8_t>(index >> (8 * i));
  }
  Seed child{};
  crypto_generichash(child.data(), child.size(), msg, sizeof(msg),
                     seed_.data(), seed_.size());
  return RandomSource(child);
}

}  // namespace ntrucipher
