// Command-line front end for key generation, key agreement and cycle estimates.
//
// Exit codes: 0 success, 1 usage, 2 I/O or format error, 3 fault detected,
// 4 invalid peer key.

#include <sodium.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "csidh/action.hpp"
#include "csidh/datapath.hpp"
#include "csidh/errors.hpp"
#include "csidh/fp.hpp"
#include "csidh/params.hpp"
#include "csidh/rng.hpp"
#include "csidh/trace.hpp"

namespace {

using namespace csidh;

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitFault = 3;
constexpr int kExitInvalidPeer = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string params = "csidh512";
  std::string mode = "fpga";
  bool vartime = false;
  std::string seed;
  bool fault_check = false;
  bool skip_validate = false;
  bool reveal = false;
  std::string out;
  std::string cost_table;
  std::string sk_path;
  std::string peer_path;
  std::string pk_path;
  std::string ledger_path;
  double freq_mhz = 0;
  std::size_t validation_rounds = 1;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

ChaChaRng make_rng(const Options& opt) {
  if (opt.seed.empty()) return ChaChaRng::from_entropy();
  std::vector<std::uint8_t> seed;
  try {
    seed = fp::from_hex(opt.seed);
  } catch (const FormatError&) {
    throw CLI::ValidationError("--seed", "expected a hex string");
  }
  return ChaChaRng::from_seed(seed);
}

ActionConfig action_config(const Options& opt) {
  ActionConfig cfg;
  cfg.constant_time = !opt.vartime;
  cfg.fault_check = opt.fault_check;
  cfg.skip_validation = opt.skip_validate;
  cfg.validation_rounds = opt.validation_rounds;
  return cfg;
}

std::string digest_hex(std::span<const std::uint8_t> bytes) {
  if (sodium_init() < 0) throw RngFailure("libsodium initialization failed");
  std::uint8_t h[32];
  crypto_generichash(h, sizeof(h), bytes.data(), bytes.size(), nullptr, 0);
  return fp::to_hex(h);
}

PrivateKey load_private_key(const std::string& path, const CsidhParams& params) {
  auto [file_params, sk] = decode_private_key(read_file(path));
  if (file_params != &params) throw FormatError("private key belongs to parameter set " + file_params->name);
  return sk;
}

int cmd_keygen(const Options& opt) {
  const CsidhParams& params = params_by_name(opt.params);
  ChaChaRng rng = make_rng(opt);
  const PrivateKey sk = opt.sk_path.empty() ? random_private_key(params, rng) : load_private_key(opt.sk_path, params);
  const PublicKey pk = keygen(sk, params, rng, action_config(opt));
  if (!opt.out.empty()) {
    if (opt.sk_path.empty()) write_file(opt.out + ".sk", encode_private_key(sk, params));
    write_file(opt.out + ".pk", encode_public_key(pk, params));
  }
  std::cout << fp::to_hex(fp::to_bytes(pk.a, params)) << '\n';
  return 0;
}

int cmd_dh(const Options& opt) {
  const CsidhParams& params = params_by_name(opt.params);
  const PrivateKey sk = load_private_key(opt.sk_path, params);
  PublicKey peer;
  try {
    auto [peer_params, pk] = decode_public_key(read_file(opt.peer_path));
    if (peer_params != &params) throw InvalidPeerKey();
    peer = pk;
  } catch (const FormatError& e) {
    std::cerr << "peer key: " << e.what() << '\n';
    return kExitInvalidPeer;
  }
  ChaChaRng rng = make_rng(opt);
  const FieldElement secret = shared_secret(sk, peer, params, rng, action_config(opt));
  const std::vector<std::uint8_t> bytes = fp::to_bytes(secret, params);
  if (!opt.out.empty()) write_file(opt.out, bytes);
  std::cout << (opt.reveal ? fp::to_hex(bytes) : digest_hex(bytes)) << '\n';
  return 0;
}

int cmd_validate(const Options& opt) {
  PublicKey pk;
  const CsidhParams* params = nullptr;
  try {
    std::tie(params, pk) = decode_public_key(read_file(opt.pk_path));
  } catch (const FormatError& e) {
    std::cerr << "public key: " << e.what() << '\n';
    std::cout << "invalid\n";
    return kExitInvalidPeer;
  }
  ChaChaRng rng = make_rng(opt);
  const bool ok = validate_pk(pk.a, *params, rng, opt.validation_rounds);
  std::cout << (ok ? "valid" : "invalid") << '\n';
  return ok ? 0 : kExitInvalidPeer;
}

datapath::CostTable cost_table(const Options& opt) {
  return opt.cost_table.empty() ? datapath::CostTable::defaults() : datapath::CostTable::load(opt.cost_table);
}

int cmd_bench(const Options& opt) {
  const CsidhParams& params = params_by_name(opt.params);
  EstimateConfig cfg;
  cfg.mode = parse_mode(opt.mode);
  cfg.table = cost_table(opt);
  cfg.fault_check = opt.fault_check;
  if (!opt.seed.empty()) cfg.seed = fp::from_hex(opt.seed);
  if (!opt.sk_path.empty()) cfg.private_key = load_private_key(opt.sk_path, params).e;
  const KeygenEstimate est = estimate_keygen(params, cfg);
  if (!est.success) return kExitFault;

  const double mhz = opt.freq_mhz > 0 ? opt.freq_mhz : (cfg.mode == AluMode::Asic ? 180.0 : 200.0);
  std::cout << "params = " << params.name << '\n';
  std::cout << ledger_text(est.ledger, cfg.mode);
  std::ostringstream latency;
  latency.precision(6);
  latency << static_cast<double>(est.cycles) / (mhz * 1e6);
  std::cout << "frequency_mhz = " << mhz << '\n';
  std::cout << "latency_s = " << latency.str() << '\n';
  return 0;
}

int cmd_trace(const Options& opt) {
  const CsidhParams& params = params_by_name(opt.params);
  ChaChaRng rng = make_rng(opt);
  const PrivateKey sk = opt.sk_path.empty() ? random_private_key(params, rng) : load_private_key(opt.sk_path, params);
  OpTrace trace;
  const ActionResult r = group_action(base_public_key(), sk, params, rng, action_config(opt), &trace);
  if (!r.success) return kExitFault;
  write_text(opt.out, trace.to_text());
  if (!opt.ledger_path.empty()) {
    CycleLedger ledger{r.counts, cost_table(opt)};
    write_text(opt.ledger_path, ledger_text(ledger, parse_mode(opt.mode)));
  }
  std::cout << "entries = " << trace.size() << '\n';
  return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--params", opt.params, "Parameter set")->check(CLI::IsMember({"csidh512", "toy419"}));
  cmd->add_option("--mode", opt.mode, "ALU cost model")->check(CLI::IsMember({"fpga", "asic"}));
  cmd->add_flag("--vartime", opt.vartime, "Use the variable-time group action");
  cmd->add_option("--seed", opt.seed, "Hex seed; fixes all randomness");
  cmd->add_flag("--fault-check", opt.fault_check, "Verify every kernel point has the expected order");
  cmd->add_option("--cost-table", opt.cost_table, "Cycle cost table file");
  cmd->add_option("--validation-rounds", opt.validation_rounds, "Points sampled when validating curves")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSIDH key exchange with a modeled hardware datapath"};
  app.require_subcommand(1);
  Options opt;

  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair");
  add_common(keygen_cmd, opt);
  keygen_cmd->add_option("--out", opt.out, "Write <out>.sk and <out>.pk");
  keygen_cmd->add_option("--sk-in", opt.sk_path, "Use an existing private key file");

  auto* dh_cmd = app.add_subcommand("dh", "Derive a shared secret");
  add_common(dh_cmd, opt);
  dh_cmd->add_option("--sk", opt.sk_path, "Own private key file")->required();
  dh_cmd->add_option("--peer", opt.peer_path, "Peer public key file")->required();
  dh_cmd->add_flag("--skip-validate", opt.skip_validate, "Do not validate the peer key");
  dh_cmd->add_flag("--reveal", opt.reveal, "Print the secret instead of its BLAKE2b hash");
  dh_cmd->add_option("--out", opt.out, "Write the raw secret bytes");

  auto* validate_cmd = app.add_subcommand("validate", "Validate a public key file");
  add_common(validate_cmd, opt);
  validate_cmd->add_option("--pk", opt.pk_path, "Public key file")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Estimate key generation cycles");
  add_common(bench_cmd, opt);
  bench_cmd->add_option("--sk", opt.sk_path, "Private key file (default: drawn from the seed)");
  bench_cmd->add_option("--freq-mhz", opt.freq_mhz, "Clock for the latency line (default 200 fpga, 180 asic)");

  auto* trace_cmd = app.add_subcommand("trace", "Export the ALU operation trace of one key generation");
  add_common(trace_cmd, opt);
  trace_cmd->add_option("--sk", opt.sk_path, "Private key file (default: drawn from the seed)");
  trace_cmd->add_option("--out", opt.out, "Trace output file")->required();
  trace_cmd->add_option("--ledger", opt.ledger_path, "Also write the cycle ledger");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*keygen_cmd) return cmd_keygen(opt);
    if (*dh_cmd) return cmd_dh(opt);
    if (*validate_cmd) return cmd_validate(opt);
    if (*bench_cmd) return cmd_bench(opt);
    if (*trace_cmd) return cmd_trace(opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidPeerKey& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalidPeer;
  } catch (const FaultDetected& e) {
    std::cerr << e.what() << '\n';
    return kExitFault;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
