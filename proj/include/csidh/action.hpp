#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csidh/context.hpp"
#include "csidh/curve.hpp"
#include "csidh/params.hpp"
#include "csidh/rng.hpp"
#include "csidh/trace.hpp"

namespace csidh {

// Exponent vector, one entry per small prime, each in [-m, m].
struct PrivateKey {
  std::vector<std::int8_t> e;

  friend bool operator==(const PrivateKey&, const PrivateKey&) = default;
};

// Affine Montgomery coefficient in the standard domain.
struct PublicKey {
  FieldElement a;
  bool validated = false;

  friend bool operator==(const PublicKey& x, const PublicKey& y) { return x.a == y.a; }
};

struct ActionConfig {
  bool constant_time = true;
  bool fault_check = false;
  std::size_t batch_limit = 16;
  std::optional<std::vector<std::uint8_t>> rng_seed;
  std::size_t validation_rounds = 1;
  bool skip_validation = false;  // peer checks in shared_secret
  // Test hook: corrupt the kernel point of the n-th isogeny (0-based).
  std::optional<std::size_t> inject_kernel_fault;
};

struct ActionResult {
  PublicKey key;
  bool success = false;
  bool fault = false;
  std::vector<std::uint32_t> isogenies;       // per prime, real plus dummy
  std::vector<std::uint32_t> real_isogenies;  // per prime
  // Constant-time path only: one entry per isogeny slot visited, the prime
  // index times two plus 1 when the slot was consumed and 0 when skipped.
  // Depends on sampled points, not on the private key directly.
  std::vector<std::uint32_t> schedule;
  OpCounts counts;
};

PublicKey base_public_key();

// Canonical encoding and A not in {2, p - 2}.
bool validate_basic(const FieldElement& a, const CsidhParams& params);

// Random point (X : 1) whose x lies on the requested side, by rejection.
ProjPoint sample_point(FieldContext& ctx, const ProjCurve& curve, CurveSide side, RandomSource& rng);

// Two points from one random u, one on each side: (on curve, on twist).
// Operation count is independent of the curve and of u.
std::pair<ProjPoint, ProjPoint> sample_point_pair(FieldContext& ctx, const ProjCurve& curve, RandomSource& rng);

ActionResult group_action_vartime(const PublicKey& a, const PrivateKey& sk, const CsidhParams& params,
                                  RandomSource& rng, const ActionConfig& config = {}, OpTrace* trace = nullptr);

// Every prime runs exactly m isogenies, real ones first and dummies after.
ActionResult group_action_ct(const PublicKey& a, const PrivateKey& sk, const CsidhParams& params,
                             RandomSource& rng, const ActionConfig& config = {}, OpTrace* trace = nullptr);

ActionResult group_action(const PublicKey& a, const PrivateKey& sk, const CsidhParams& params, RandomSource& rng,
                          const ActionConfig& config = {}, OpTrace* trace = nullptr);

// [p + 1]P = O for validation_rounds random points, after validate_basic.
bool validate_pk(const FieldElement& a, const CsidhParams& params, RandomSource& rng, std::size_t rounds = 1);

PrivateKey random_private_key(const CsidhParams& params, RandomSource& rng);
// Throws FaultDetected when the action reports a fault or fails validation.
PublicKey keygen(const PrivateKey& sk, const CsidhParams& params, RandomSource& rng,
                 const ActionConfig& config = {});
// Throws InvalidPeerKey (unless skip_validation) and FaultDetected.
FieldElement shared_secret(const PrivateKey& sk, const PublicKey& peer, const CsidhParams& params,
                           RandomSource& rng, const ActionConfig& config = {});

// Key files: magic, parameter id byte, payload.
//   private: "CSIDHSK1" id e[0..n) as two's-complement bytes
//   public:  "CSIDHPK1" id A as little-endian field bytes
std::vector<std::uint8_t> encode_private_key(const PrivateKey& sk, const CsidhParams& params);
std::vector<std::uint8_t> encode_public_key(const PublicKey& pk, const CsidhParams& params);
// Throw FormatError on bad magic, unknown id, wrong length or out-of-range content.
std::pair<const CsidhParams*, PrivateKey> decode_private_key(std::span<const std::uint8_t> bytes);
std::pair<const CsidhParams*, PublicKey> decode_public_key(std::span<const std::uint8_t> bytes);

}  // namespace csidh
