#include <doctest.h>

#include <map>

#include "csidh/action.hpp"
#include "csidh/errors.hpp"
#include "csidh/trace.hpp"

using namespace csidh;

namespace {

std::vector<PrivateKey> all_toy_keys() {
  std::vector<PrivateKey> keys;
  for (int i = 0; i < 27; ++i) {
    keys.push_back({{static_cast<std::int8_t>(i % 3 - 1), static_cast<std::int8_t>(i / 3 % 3 - 1),
                     static_cast<std::int8_t>(i / 9 - 1)}});
  }
  return keys;
}

CycleLedger single(Opcode op) {
  CycleLedger ledger;
  ledger.counts.add(op, ModuleTag::Csidh);
  return ledger;
}

}  // namespace

TEST_CASE("recording preserves order and tags") {
  OpTrace t;
  CHECK(t.empty());
  t.record(Opcode::Add, ModuleTag::XMul);
  CHECK(t.size() == 1);
  t.record(Opcode::MontMul, ModuleTag::XIsog);
  t.record(Opcode::Sub, ModuleTag::XMul);
  CHECK(t.entries()[1] == TraceEntry{Opcode::MontMul, ModuleTag::XIsog});
  CHECK(t.to_text() == "ADD\txMUL\nMONT_MUL\txISOG\nSUB\txMUL\n");
  CHECK(trace_equal(t, t));
  CHECK(OpTrace::parse(t.to_text()) == t);
  OpTrace u = t;
  u.record(Opcode::Add, ModuleTag::XMul);
  CHECK_FALSE(trace_equal(t, u));

  CHECK_THROWS_AS(OpTrace::parse("ADD xMUL\n"), FormatError);
  CHECK_THROWS_AS(OpTrace::parse("DIV\txMUL\n"), FormatError);
  CHECK_THROWS_AS(OpTrace::parse("ADD\txFOO\n"), FormatError);
  CHECK(OpTrace::parse("").empty());
}

TEST_CASE("pricing single operations") {
  CHECK(total_cycles(single(Opcode::MontMul), AluMode::Fpga) == 87);
  CHECK(total_cycles(single(Opcode::MulWide), AluMode::Fpga) == 22);
  CHECK(total_cycles(single(Opcode::MulWide), AluMode::Asic) == 23);
  CHECK(total_cycles(CycleLedger{}, AluMode::Fpga) == 0);
  CycleLedger with_overhead = single(Opcode::Add);
  with_overhead.counts.add(Opcode::Sub, ModuleTag::XTwist, 9);
  with_overhead.table.set_overhead(2);
  CHECK(total_cycles(with_overhead, AluMode::Fpga) == 10 * (4 + 2));
  CHECK(module_cycles(with_overhead, ModuleTag::XTwist, AluMode::Fpga) == 9 * 6);
  CHECK(opcode_cycles(with_overhead, Opcode::Add, AluMode::Fpga) == 6);

  const std::string text = ledger_text(with_overhead, AluMode::Fpga);
  CHECK(text.find("count.SUB = 9\n") != std::string::npos);
  CHECK(text.find("cycles.xTWIST = 54\n") != std::string::npos);
  CHECK(text.find("total = 60\n") != std::string::npos);
}

TEST_CASE("calibration picks the closest per-operation overhead") {
  CycleLedger ledger;
  ledger.counts.add(Opcode::MontMul, ModuleTag::XMul, 1000);
  CHECK(calibrate_overhead(ledger, AluMode::Fpga, 87000) == 0);
  CHECK(calibrate_overhead(ledger, AluMode::Fpga, 90000) == 3);
  CHECK(calibrate_overhead(ledger, AluMode::Fpga, 90400) == 3);
  CHECK(calibrate_overhead(ledger, AluMode::Fpga, 50000) == 0);
}

TEST_CASE("a recorded action reprices to its own counts") {
  const CsidhParams& params = toy419();
  for (const PrivateKey& sk : all_toy_keys()) {
    ChaChaRng rng = ChaChaRng::from_seed(std::vector<std::uint8_t>{7});
    OpTrace trace;
    const ActionResult r = group_action_ct(base_public_key(), sk, params, rng, {}, &trace);
    CHECK(OpCounts::from_trace(trace) == r.counts);
    CHECK(OpCounts::from_trace(OpTrace::parse(trace.to_text())) == r.counts);
  }
}

TEST_CASE("every module issues operations during a key generation") {
  ChaChaRng rng = ChaChaRng::from_seed(std::vector<std::uint8_t>{8});
  const ActionResult r = group_action_ct(base_public_key(), {{1, -1, 0}}, toy419(), rng);
  for (ModuleTag tag : kAllModules) {
    std::uint64_t n = 0;
    for (Opcode op : kAllOpcodes) n += r.counts.count(op, tag);
    CAPTURE(module_name(tag));
    CHECK(n > 0);
  }
}

TEST_CASE("constant-time traces are fixed by the public slot schedule") {
  // Traces of the constant-time path depend on the sampled points only
  // through which slots were skipped. Keys that see the same schedule under
  // the same seed must produce identical traces.
  const CsidhParams& params = toy419();
  std::size_t groups_with_several = 0;
  for (std::uint8_t seed = 0; seed < 12; ++seed) {
    std::map<std::vector<std::uint32_t>, OpTrace> by_schedule;
    std::map<std::vector<std::uint32_t>, std::size_t> sizes;
    for (const PrivateKey& sk : all_toy_keys()) {
      ChaChaRng rng = ChaChaRng::from_seed(std::vector<std::uint8_t>{'s', seed});
      OpTrace trace;
      const ActionResult r = group_action_ct(base_public_key(), sk, params, rng, {}, &trace);
      REQUIRE(r.success);
      for (std::uint32_t n : r.isogenies) CHECK(n == 1);
      auto [it, inserted] = by_schedule.emplace(r.schedule, trace);
      if (!inserted) CHECK(trace_equal(it->second, trace));
      if (++sizes[r.schedule] == 2) ++groups_with_several;
    }
  }
  CHECK(groups_with_several > 0);
}

TEST_CASE("variable-time traces depend on the key") {
  const CsidhParams& params = toy419();
  OpTrace a, b;
  ChaChaRng r1 = ChaChaRng::from_seed(std::vector<std::uint8_t>{9});
  ChaChaRng r2 = ChaChaRng::from_seed(std::vector<std::uint8_t>{9});
  (void)group_action_vartime(base_public_key(), {{1, 0, 0}}, params, r1, {}, &a);
  (void)group_action_vartime(base_public_key(), {{0, 0, 0}}, params, r2, {}, &b);
  CHECK_FALSE(trace_equal(a, b));
}

TEST_CASE("key generation estimate") {
  EstimateConfig config;
  config.keep_trace = true;
  const KeygenEstimate e1 = estimate_keygen(toy419(), config);
  const KeygenEstimate e2 = estimate_keygen(toy419(), config);
  CHECK(e1.success);
  CHECK(e1.cycles == e2.cycles);
  CHECK(e1.trace == e2.trace);
  CHECK(e1.cycles == total_cycles(e1.ledger, AluMode::Fpga));
  std::uint64_t sum = 0;
  for (std::uint64_t c : e1.module_cycles) sum += c;
  CHECK(sum == e1.cycles);

  // fixed key through the same seed, both modes
  config.private_key = std::vector<std::int8_t>{1, 1, -1};
  config.keep_trace = false;
  const KeygenEstimate fpga = estimate_keygen(toy419(), config);
  config.mode = AluMode::Asic;
  const KeygenEstimate asic = estimate_keygen(toy419(), config);
  CHECK(fpga.ledger.counts == asic.ledger.counts);
  CHECK(asic.cycles > fpga.cycles);
  CHECK(fpga.trace.empty());
}

TEST_CASE("full-size estimate is multiplication bound") {
  const KeygenEstimate e = estimate_keygen(csidh512());
  REQUIRE(e.success);
  const std::uint64_t mont = opcode_cycles(e.ledger, Opcode::MontMul, AluMode::Fpga);
  CHECK(static_cast<double>(mont) / static_cast<double>(e.cycles) > 0.8);
  CHECK(e.ledger.counts.count(Opcode::MulWide) == 0);
  CHECK(estimate_keygen(csidh512()).cycles == e.cycles);
}
