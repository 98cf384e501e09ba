#include "csidh/action.hpp"
#include "csidh/trace.hpp"

namespace csidh {

KeygenEstimate estimate_keygen(const CsidhParams& params, const EstimateConfig& config) {
  ChaChaRng rng = ChaChaRng::from_seed(config.seed);
  PrivateKey sk;
  if (config.private_key) {
    sk.e = *config.private_key;
  } else {
    sk = random_private_key(params, rng);
  }
  ActionConfig action;
  action.constant_time = true;
  action.fault_check = config.fault_check;

  KeygenEstimate out;
  const ActionResult r =
      group_action_ct(base_public_key(), sk, params, rng, action, config.keep_trace ? &out.trace : nullptr);
  out.success = r.success;
  out.ledger.counts = r.counts;
  out.ledger.table = config.table;
  out.cycles = total_cycles(out.ledger, config.mode);
  for (ModuleTag tag : kAllModules) {
    out.module_cycles[static_cast<std::size_t>(tag)] = module_cycles(out.ledger, tag, config.mode);
  }
  return out;
}

}  // namespace csidh
