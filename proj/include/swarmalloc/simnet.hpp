#pragma once

#include <cstdint>
#include <ostream>
#include <span>

#include "swarmalloc/cbba.hpp"
#include "swarmalloc/domain.hpp"
#include "swarmalloc/scoring.hpp"

namespace swarmalloc {

struct NetworkStats {
  int rounds = 0;
  std::int64_t messages_sent = 0;
  bool converged = false;
};

struct CbbaOptions {
  // 0 selects the default cap: max(#tasks * #agents, 2). The extra round in
  // the degenerate single-pair case is the quiet round that proves nothing
  // moved.
  int max_rounds = 0;
  // When set, every broadcast snapshot is appended as one JSON object per
  // line.
  std::ostream* message_trace = nullptr;
};

// One synchronous round: every agent rebuilds its bundle, all outgoing
// messages are snapshotted, then every snapshot is delivered to every other
// agent. Resolves therefore act on the post-build, pre-delivery state of all
// peers, so the outcome does not depend on agent iteration order. Returns
// true when any agent changed.
bool run_round(std::span<AgentState> agents, std::ostream* trace = nullptr);

// Full run: one agent per capacity, rounds until convergence or the cap.
// Hitting the cap yields ConvergenceTimeout, which on diminishing-marginal-
// gain utilities indicates a bug rather than an expected outcome.
std::pair<CbbaResult, NetworkStats> allocate_cbba(
    const Application& app, std::span<const Capacity> caps, const Weights& w,
    const NormBounds& nb, const CbbaOptions& options = {});

}  // namespace swarmalloc
