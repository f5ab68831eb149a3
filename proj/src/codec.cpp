#include "ntrucipher/codec.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <optional>
#include <string>

#include "ntrucipher/errors.hpp"

namespace ntrucipher {
namespace {

constexpr std::array<std::uint8_t, 4> kKeyMagic{'N', 'T', 'R', 'K'};
constexpr std::array<std::uint8_t, 4> kCiphertextMagic{'N', 'T', 'R', 'C'};
constexpr std::uint8_t kFormatVersion = 0x01;
// magic + version + checksum
constexpr std::size_t kFileHeaderBytes = 9;
constexpr std::size_t kParamBytes = 8 * 4;

// Little-endian multi-precision integer with 32-bit limbs.
using Limbs = std::vector<std::uint32_t>;

std::size_t limbs_for_trits(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(n * std::log2(3.0) / 32.0)) + 2;
}

// In-place division by 3; returns the remainder.
std::uint32_t divmod3(Limbs& v) {
  std::uint64_t rem = 0;
  for (std::size_t i = v.size(); i-- > 0;) {
    const std::uint64_t cur = rem << 32 | v[i];
    v[i] = static_cast<std::uint32_t>(cur / 3);
    rem = cur % 3;
  }
  return static_cast<std::uint32_t>(rem);
}

void add_small(Limbs& v, std::uint32_t a) {
  std::uint64_t carry = a;
  for (std::size_t i = 0; i < v.size() && carry != 0; ++i) {
    const std::uint64_t cur = std::uint64_t{v[i]} + carry;
    v[i] = static_cast<std::uint32_t>(cur);
    carry = cur >> 32;
  }
}

bool is_zero(const Limbs& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

std::vector<std::int64_t> bytes_to_trits(std::span<const std::uint8_t> be,
                                         std::size_t n) {
  Limbs v(be.size() / 4 + 2, 0);
  for (std::size_t i = 0; i < be.size(); ++i) {
    const std::size_t bit = 8 * (be.size() - 1 - i);
    v[bit / 32] |= std::uint32_t{be[i]} << (bit % 32);
  }
  std::vector<std::int64_t> digits(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t r = divmod3(v);
    if (r == 2) {
      digits[i] = -1;
      add_small(v, 1);
    } else {
      digits[i] = r;
    }
  }
  if (!is_zero(v)) throw Error("block value exceeds ternary capacity");
  return digits;
}

// Horner evaluation of sum d_i 3^i. nullopt if the value is negative or does
// not fit in `width` bytes.
std::optional<std::vector<std::uint8_t>> trits_to_bytes(const Poly& digits,
                                                        std::size_t width) {
  const std::size_t n = digits.degree_bound();
  Limbs v(limbs_for_trits(n), 0);
  for (std::size_t i = n; i-- > 0;) {
    const std::int32_t d = digits[i];
    if (d < -1 || d > 1) return std::nullopt;
    const bool was_zero = is_zero(v);
    if (was_zero && d == -1) return std::nullopt;
    std::uint64_t carry = 0;
    for (auto& limb : v) {
      const std::uint64_t cur = std::uint64_t{limb} * 3 + carry;
      limb = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (d == 1) {
      add_small(v, 1);
    } else if (d == -1) {
      // v >= 3 here, so the borrow terminates.
      for (auto& limb : v) {
        if (limb-- != 0) break;
      }
    }
  }
  std::vector<std::uint8_t> out(width);
  for (std::size_t bit = 0; bit < v.size() * 32; bit += 8) {
    const std::uint8_t byte =
        static_cast<std::uint8_t>(v[bit / 32] >> (bit % 32));
    if (bit / 8 < width) {
      out[width - 1 - bit / 8] = byte;
    } else if (byte != 0) {
      return std::nullopt;
    }
  }
  return out;
}

class Writer {
 public:
  void bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i16(std::int32_t v) {
    const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(v));
    out_.push_back(static_cast<std::uint8_t>(u));
    out_.push_back(static_cast<std::uint8_t>(u >> 8));
  }
  std::vector<std::uint8_t>& data() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  std::size_t remaining() const { return in_.size() - pos_; }
  void need(std::size_t len) const {
    if (remaining() < len) throw FormatError("truncated file");
  }
  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{in_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return v;
  }
  std::int64_t i16() {
    need(2);
    const auto u = static_cast<std::uint16_t>(in_[pos_] | in_[pos_ + 1] << 8);
    pos_ += 2;
    return static_cast<std::int16_t>(u);
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void write_header(Writer& w, const std::array<std::uint8_t, 4>& magic) {
  w.bytes(magic);
  w.u8(kFormatVersion);
  w.u32(0);  // checksum, patched by seal()
}

std::vector<std::uint8_t> seal(Writer& w) {
  auto& out = w.data();
  const std::uint32_t sum =
      crc32(std::span<const std::uint8_t>(out).subspan(kFileHeaderBytes));
  for (int i = 0; i < 4; ++i) out[5 + i] = static_cast<std::uint8_t>(sum >> (8 * i));
  return std::move(out);
}

// Checks magic, version and checksum; returns a reader positioned after the
// header.
Reader open_file(std::span<const std::uint8_t> bytes,
                 const std::array<std::uint8_t, 4>& magic, const char* kind) {
  if (bytes.size() < kFileHeaderBytes ||
      !std::equal(magic.begin(), magic.end(), bytes.begin())) {
    throw FormatError(std::string("not a ") + kind + " file (bad magic)");
  }
  if (bytes[4] != kFormatVersion) {
    throw FormatError(std::string("unsupported ") + kind + " version " +
                      std::to_string(bytes[4]));
  }
  Reader r(bytes);
  for (std::size_t i = 0; i < 5; ++i) r.u8();
  const std::uint32_t stored = r.u32();
  if (stored != crc32(bytes.subspan(kFileHeaderBytes))) {
    throw CorruptionError(std::string(kind) + " file checksum mismatch");
  }
  return r;
}

void write_params(Writer& w, const ParamSet& ps) {
  for (std::uint32_t v : {ps.n, ps.p, ps.q, ps.a1, ps.a2, ps.a3, ps.a_mu, ps.lambda}) {
    w.u32(v);
  }
}

ParamSet read_params(Reader& r) {
  ParamSet ps;
  for (std::uint32_t* f : {&ps.n, &ps.p, &ps.q, &ps.a1, &ps.a2, &ps.a3,
                           &ps.a_mu, &ps.lambda}) {
    *f = r.u32();
  }
  if (!validate(ps).empty()) {
    throw CorruptionError("stored parameter set is invalid");
  }
  return ps;
}

void write_poly(Writer& w, const Poly& f) {
  for (std::int32_t c : f.coeffs()) w.i16(c);
}

Poly read_poly(Reader& r, const ParamSet& ps) {
  r.need(2 * std::size_t{ps.n});
  const std::int64_t half = (ps.q - 1) / 2;
  std::vector<std::int64_t> c(ps.n);
  for (auto& v : c) {
    v = r.i16();
    if (v < -half || v > half) {
      throw CorruptionError("coefficient outside the centered range");
    }
  }
  return Poly::from_coefficients(c, ps.q);
}

}  // namespace

std::size_t block_payload_bytes(const ParamSet& ps) {
  if (ps.p != 3) throw ParameterError("byte encoding requires p = 3");
  if (ps.n < 3) throw ParameterError("n too small to encode bytes");
  const auto bytes = static_cast<std::size_t>(
      std::floor((ps.n - 2) * std::log2(3.0) / 8.0));
  if (bytes == 0) throw ParameterError("n too small to encode bytes");
  return bytes;
}

std::uint32_t crc32(std::span<const std::uint8_t> data) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths.
  while (!data.empty()) {
    const std::size_t chunk = std::min<std::size_t>(data.size(), 1u << 30);
    crc = ::crc32(crc, data.data(), static_cast<uInt>(chunk));
    data = data.subspan(chunk);
  }
  return static_cast<std::uint32_t>(crc);
}

MessageBlocking describe_blocking(std::span<const std::uint8_t> data,
                                  const ParamSet& ps) {
  const std::size_t width = block_payload_bytes(ps);
  const std::size_t stream = kMessageHeaderBytes + data.size();
  return MessageBlocking{width, data.size(), crc32(data),
                         (stream + width - 1) / width};
}

std::vector<Plaintext> encode_bytes(std::span<const std::uint8_t> data,
                                    const ParamSet& ps) {
  const MessageBlocking info = describe_blocking(data, ps);
  std::vector<std::uint8_t> stream(info.block_count * info.block_payload_bytes, 0);
  const std::uint64_t len = info.total_length;
  for (int i = 0; i < 8; ++i) stream[i] = static_cast<std::uint8_t>(len >> (8 * i));
  for (int i = 0; i < 4; ++i) {
    stream[8 + i] = static_cast<std::uint8_t>(info.checksum >> (8 * i));
  }
  std::copy(data.begin(), data.end(), stream.begin() + kMessageHeaderBytes);

  std::vector<Plaintext> blocks;
  blocks.reserve(info.block_count);
  for (std::size_t b = 0; b < info.block_count; ++b) {
    const auto chunk = std::span<const std::uint8_t>(stream).subspan(
        b * info.block_payload_bytes, info.block_payload_bytes);
    blocks.push_back(Plaintext{
        Poly::from_coefficients(bytes_to_trits(chunk, ps.n), ps.q)});
  }
  return blocks;
}

std::vector<std::uint8_t> decode_blocks(std::span<const Plaintext> blocks,
                                        const ParamSet& ps) {
  const std::size_t width = block_payload_bytes(ps);
  if (blocks.empty()) throw IntegrityError("no blocks");
  std::vector<std::uint8_t> stream;
  stream.reserve(blocks.size() * width);
  for (const Plaintext& block : blocks) {
    if (block.mu.degree_bound() != ps.n) {
      throw IntegrityError("block has wrong length");
    }
    auto bytes = trits_to_bytes(block.mu, width);
    if (!bytes) throw IntegrityError("block is not a valid digit string");
    stream.insert(stream.end(), bytes->begin(), bytes->end());
  }
  if (stream.size() < kMessageHeaderBytes) {
    throw IntegrityError("stream shorter than its header");
  }
  std::uint64_t len = 0;
  for (int i = 7; i >= 0; --i) len = len << 8 | stream[i];
  std::uint32_t expected_crc = 0;
  for (int i = 3; i >= 0; --i) expected_crc = expected_crc << 8 | stream[8 + i];

  const std::uint64_t capacity = stream.size() - kMessageHeaderBytes;
  if (len > capacity) throw IntegrityError("length exceeds block data");
  const std::uint64_t needed_blocks =
      (kMessageHeaderBytes + len + width - 1) / width;
  if (needed_blocks != blocks.size()) {
    throw IntegrityError("block count does not match the encoded length");
  }
  const auto payload_end = stream.begin() + kMessageHeaderBytes +
                           static_cast<std::ptrdiff_t>(len);
  if (!std::all_of(payload_end, stream.end(),
                   [](std::uint8_t b) { return b == 0; })) {
    throw IntegrityError("non-zero padding");
  }
  std::vector<std::uint8_t> data(stream.begin() + kMessageHeaderBytes,
                                 payload_end);
  if (crc32(data) != expected_crc) throw IntegrityError("checksum mismatch");
  return data;
}

std::vector<std::uint8_t> serialize_key(const SecretKey& sk) {
  Writer w;
  write_header(w, kKeyMagic);
  write_params(w, sk.params());
  write_poly(w, sk.k());
  write_poly(w, sk.k_inv());
  return seal(w);
}

SecretKey deserialize_key(std::span<const std::uint8_t> bytes) {
  Reader r = open_file(bytes, kKeyMagic, "key");
  const ParamSet ps = read_params(r);
  if (r.remaining() != 4 * std::size_t{ps.n}) {
    throw FormatError("key file length does not match n");
  }
  Poly k = read_poly(r, ps);
  Poly k_inv = read_poly(r, ps);
  return SecretKey::from_parts(ps, std::move(k), std::move(k_inv));
}

std::size_t key_file_size(const ParamSet& ps) {
  return kFileHeaderBytes + kParamBytes + 4 * std::size_t{ps.n};
}

std::vector<std::uint8_t> serialize_ciphertext(
    const ParamSet& ps, std::span<const Ciphertext> blocks) {
  Writer w;
  write_header(w, kCiphertextMagic);
  write_params(w, ps);
  w.u32(static_cast<std::uint32_t>(blocks.size()));
  for (const Ciphertext& c : blocks) {
    if (c.c.degree_bound() != ps.n || c.c.modulus() != ps.q) {
      throw DimensionError("ciphertext block does not match parameters");
    }
    write_poly(w, c.c);
  }
  return seal(w);
}

CiphertextFile deserialize_ciphertext(std::span<const std::uint8_t> bytes) {
  Reader r = open_file(bytes, kCiphertextMagic, "ciphertext");
  CiphertextFile file{read_params(r), {}};
  const std::uint32_t count = r.u32();
  if (r.remaining() != std::uint64_t{count} * 2 * file.params.n) {
    throw FormatError("ciphertext file length does not match block count");
  }
  file.blocks.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    file.blocks.push_back(Ciphertext{read_poly(r, file.params)});
  }
  return file;
}

std::size_t ciphertext_file_size(const ParamSet& ps, std::size_t blocks) {
  return kFileHeaderBytes + kParamBytes + 4 + 2 * std::size_t{ps.n} * blocks;
}

}  // namespace ntrucipher
