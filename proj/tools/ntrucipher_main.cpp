#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ntrucipher/analysis.hpp"
#include "ntrucipher/cipher.hpp"
#include "ntrucipher/codec.hpp"
#include "ntrucipher/errors.hpp"
#include "ntrucipher/params.hpp"
#include "ntrucipher/random_source.hpp"

namespace fs = std::filesystem;
using namespace ntrucipher;

namespace {

constexpr const char* kDefaultProfile = "paper-2017";

struct ParamOptions {
  std::string profile;
  std::optional<std::uint32_t> n, p, q, a1, a2, a3, a_mu, lambda;

  void attach(CLI::App& cmd) {
    cmd.add_option("--profile", profile, "Parameter profile")
        ->envname("NTRUCIPHER_PROFILE");
    cmd.add_option("--n", n, "Ring degree");
    cmd.add_option("--p", p, "Plaintext modulus");
    cmd.add_option("--q", q, "Ciphertext modulus");
    cmd.add_option("--a1", a1, "Product-form weight a1");
    cmd.add_option("--a2", a2, "Product-form weight a2");
    cmd.add_option("--a3", a3, "Product-form weight a3");
    cmd.add_option("--a-mu", a_mu, "Expected plaintext zero count");
    cmd.add_option("--lambda", lambda, "Security target in bits");
  }

  ParamSet resolve() const {
    const std::string name = profile.empty() ? kDefaultProfile : profile;
    auto ps = ntrucipher::profile(name);
    if (!ps) {
      std::string names;
      for (const auto& s : profile_names()) names += "\n  " + s;
      throw ParameterError("unknown profile '" + name + "'; available:" + names);
    }
    auto apply = [](std::uint32_t& field, const std::optional<std::uint32_t>& v) {
      if (v) field = *v;
    };
    apply(ps->n, n);
    apply(ps->p, p);
    apply(ps->q, q);
    apply(ps->a1, a1);
    apply(ps->a2, a2);
    apply(ps->a3, a3);
    apply(ps->a_mu, a_mu);
    apply(ps->lambda, lambda);
    return *ps;
  }
};

struct SeedOptions {
  std::string seed_hex;
  bool deterministic = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--seed", seed_hex, "Hex seed (requires --deterministic)");
    cmd.add_flag("--deterministic", deterministic,
                 "Derive all randomness from --seed (testing only)");
  }

  RandomSource source() const {
    if (seed_hex.empty()) {
      if (deterministic) throw InputError("--deterministic needs --seed");
      return RandomSource();
    }
    if (!deterministic) {
      throw InputError(
          "--seed is only honored with --deterministic; seeded keys and "
          "ciphertexts are reproducible by anyone who knows the seed");
    }
    std::cerr << "warning: deterministic mode, output is reproducible from the seed\n";
    return RandomSource(seed_from_hex(seed_hex));
  }
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes to a sibling temp file and renames it into place, so a failure never
// leaves a partial file. "-" writes to stdout.
void write_output(const std::string& path, const std::vector<std::uint8_t>& data) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()),
                    static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to stdout failed");
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path);
  }
}

void print_failure_report(std::ostream& os, const ParamSet& ps) {
  const FailureReport r = failure_report(ps);
  os << "sigma: " << std::fixed;
  os.precision(4);
  os << r.sigma << "\n";
  os.precision(2);
  os << "log2 failure probability: " << r.log2_failure_prob << " (target < -"
     << ps.lambda << ": " << (r.meets_lambda ? "met" : "NOT met") << ")\n";
  os << "deterministic bound q > 8p(2a1a2+a3)+2: "
     << (r.deterministic_ok ? "satisfied" : "not satisfied") << "\n";
  os.unsetf(std::ios::fixed);
  os.precision(6);
}

void print_keyspace(std::ostream& os, const ParamSet& ps) {
  const KeyspaceReport k = keyspace_report(ps, 1);
  os.setf(std::ios::fixed);
  os.precision(1);
  os << "log2 key space (|k|_inf = 1): " << k.log2_key_space
     << (k.key_space_above_floor ? "" : " (below 2^80 floor)") << "\n";
  os << "log2 plaintext space: " << k.log2_plaintext_space
     << (k.plaintext_space_above_floor ? "" : " (below 2^80 floor)") << "\n";
  os.unsetf(std::ios::fixed);
  os.precision(6);
}

int cmd_keygen(const ParamOptions& po, const SeedOptions& so, const std::string& out) {
  const ParamSet ps = po.resolve();
  require_valid(ps);
  RandomSource rng = so.source();
  const SecretKey sk = keygen(ps, rng);
  write_output(out, serialize_key(sk));
  std::ostream& os = out == "-" ? std::cerr : std::cout;
  os << "key written: " << (out == "-" ? "<stdout>" : out) << " ("
     << key_file_size(ps) << " bytes, " << sk.keygen_attempts() << " attempt"
     << (sk.keygen_attempts() == 1 ? "" : "s") << ")\n";
  print_keyspace(os, ps);
  print_failure_report(os, ps);
  return 0;
}

int cmd_encrypt(const SeedOptions& so, const std::string& key_path,
                const std::string& in_path, const std::string& out) {
  const SecretKey sk = deserialize_key(read_file(key_path));
  const ParamSet& ps = sk.params();
  const auto data = read_file(in_path);
  RandomSource master = so.source();
  const auto blocks = encode_bytes(data, ps);
  std::vector<Ciphertext> cts;
  cts.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    RandomSource sub = master.split(i);
    cts.push_back(encrypt(blocks[i], sk, sub));
  }
  write_output(out, serialize_ciphertext(ps, cts));
  std::cerr << "encrypted " << data.size() << " bytes into " << cts.size()
            << " block" << (cts.size() == 1 ? "" : "s") << "\n";
  return 0;
}

int cmd_decrypt(const std::string& key_path, const std::string& in_path,
                const std::string& out) {
  const SecretKey sk = deserialize_key(read_file(key_path));
  const CiphertextFile file = deserialize_ciphertext(read_file(in_path));
  if (!(file.params == sk.params())) {
    throw InputError("ciphertext parameters do not match the key");
  }
  std::vector<Plaintext> pts;
  pts.reserve(file.blocks.size());
  for (const Ciphertext& c : file.blocks) pts.push_back(decrypt(c, sk));
  write_output(out, decode_blocks(pts, sk.params()));
  return 0;
}

int cmd_params(const ParamOptions& po) {
  const ParamSet ps = po.resolve();
  std::cout << format_params(ps);
  const auto violations = validate(ps);
  if (!violations.empty()) {
    std::cout << "validation: FAILED\n";
    for (const auto& v : violations) std::cerr << "invalid: " << v << "\n";
    return 1;
  }
  std::cout << "validation: ok\n";
  print_failure_report(std::cout, ps);
  const SpaceSizes s = space_sizes(ps, 1, 1);
  std::cout << "secret key bits: " << s.secret_key_bits << "\n"
            << "ephemeral key bits: " << s.ephemeral_key_bits << "\n"
            << "plaintext bits: " << s.plaintext_bits << "\n"
            << "ciphertext bits: " << s.ciphertext_bits
            << " (stored as " << 16 * ps.n << " bits per block, 16-bit coefficients)\n";
  if (ps.p == 3 && ps.n >= 8) {
    std::cout << "payload bytes per block: " << block_payload_bytes(ps) << "\n";
  }
  print_keyspace(std::cout, ps);
  const NonzeroEstimate nz = expected_nonzero_count(ps);
  std::cout << "expected nonzero coefficients of k': " << nz.count << "\n";
  return 0;
}

RandomSource demo_source(const std::string& seed_hex) {
  return seed_hex.empty() ? RandomSource::from_index(0) : RandomSource(seed_from_hex(seed_hex));
}

int cmd_attack(const std::string& demo, const std::string& seed_hex) {
  RandomSource rng = demo_source(seed_hex);
  if (demo == "brute-force") {
    const ParamSet ps = *profile("toy-brute-force");
    std::cout << "parameters: " << "n=" << ps.n << " p=" << ps.p << " q=" << ps.q
              << " a=" << ps.a1 << "," << ps.a2 << "," << ps.a3 << "\n";
    const SecretKey sk = keygen(ps, rng);
    std::vector<std::int64_t> mu(ps.n);
    for (auto& x : mu) x = static_cast<std::int64_t>(rng.uniform(3)) - 1;
    const Plaintext pt = make_plaintext(ps, mu);
    const EncryptionTranscript tr = encrypt_with_transcript(pt, sk, rng);
    const auto res = brute_force_crack(tr.ciphertext, ps);
    const bool ok = res && res->k == sk.k() && res->r == tr.r_witness.combined && res->mu == pt;
    std::cout << "key recovered: " << (ok ? "yes" : "no") << "\n"
              << "recovered=" << (ok ? 1 : 0) << "\n"
              << "hits=" << (res ? res->hits : 0) << "\n"
              << "pairs_examined=" << (res ? res->pairs_examined : 0) << "\n"
              << "plaintext_recovered=" << (res && res->mu == pt ? 1 : 0) << "\n";
    return ok ? 0 : 1;
  }
  if (demo == "multi-transmission") {
    const ParamSet ps = *profile("toy-lattice");
    std::cout << "parameters: " << "n=" << ps.n << " p=" << ps.p << " q=" << ps.q
              << " a=" << ps.a1 << "," << ps.a2 << "," << ps.a3 << " t=3\n";
    const AttackTranscript tr = make_attack_transcript(ps, 3, rng);
    const AttackOutcome out = multiple_transmission_attack(tr);
    std::cout << "key recovered: " << (out.recovered ? "yes" : "no") << "\n"
              << format_attack_summary(out)
              << "note: one key, one plaintext, three transmissions. Each block "
                 "already gets a fresh r; the leak comes from sending the same "
                 "plaintext repeatedly under one key.\n";
    return out.recovered ? 0 : 1;
  }
  throw InputError("unknown demo '" + demo + "' (expected brute-force or multi-transmission)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NTRUCipher secret-key encryption"};
  app.require_subcommand(1);

  ParamOptions keygen_params, params_params;
  SeedOptions keygen_seed, encrypt_seed;
  std::string out_path, key_path, in_path, demo, attack_seed;

  auto* kg = app.add_subcommand("keygen", "Generate a secret key file");
  keygen_params.attach(*kg);
  keygen_seed.attach(*kg);
  kg->add_option("-o,--output", out_path, "Key file ('-' for stdout)")->required();

  auto* enc = app.add_subcommand("encrypt", "Encrypt a file");
  encrypt_seed.attach(*enc);
  enc->add_option("-k,--key", key_path, "Key file")->required();
  enc->add_option("-i,--input", in_path, "Plaintext file")->required();
  enc->add_option("-o,--output", out_path, "Ciphertext file ('-' for stdout)")->required();

  auto* dec = app.add_subcommand("decrypt", "Decrypt a file");
  dec->add_option("-k,--key", key_path, "Key file")->required();
  dec->add_option("-i,--input", in_path, "Ciphertext file")->required();
  dec->add_option("-o,--output", out_path, "Plaintext file ('-' for stdout)")->required();

  auto* par = app.add_subcommand("params", "Report on a parameter set");
  params_params.attach(*par);

  auto* att = app.add_subcommand("attack", "Run a toy attack demo");
  att->add_option("demo", demo, "brute-force | multi-transmission")->required();
  att->add_option("--seed", attack_seed, "Hex seed for the demo transcript");

  CLI11_PARSE(app, argc, argv);

  try {
    if (kg->parsed()) return cmd_keygen(keygen_params, keygen_seed, out_path);
    if (enc->parsed()) return cmd_encrypt(encrypt_seed, key_path, in_path, out_path);
    if (dec->parsed()) return cmd_decrypt(key_path, in_path, out_path);
    if (par->parsed()) return cmd_params(params_params);
    if (att->parsed()) return cmd_attack(demo, attack_seed);
  } catch (const IntegrityError& e) {
    std::cerr << "error: decryption failed integrity check: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
