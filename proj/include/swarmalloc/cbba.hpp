#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmalloc/domain.hpp"
#include "swarmalloc/scoring.hpp"

namespace swarmalloc {

inline constexpr int kUnassigned = -1;

// One agent per capacity; the agent id equals the capacity id and doubles as
// the final tie-break rank. Task index t refers to the application's
// microservices sorted by id. Invariants: y[t] == 0 exactly when
// z[t] == kUnassigned; the bundle holds exactly the tasks with
// z[t] == agent_id; tentative_remaining equals capacity.remaining minus the
// bundled demands.
struct AgentState {
  int agent_id = kUnassigned;
  const Capacity* capacity = nullptr;
  std::vector<int> bundle;               // task indexes in append order
  std::vector<double> y;                 // best known bid per task
  std::vector<int> z;                    // believed winner per task
  std::vector<int> s;                    // round the entry was produced
  std::vector<double> winner_discount;   // believed winner's price discount
  Resources tentative_remaining;
  std::vector<double> task_utility;      // fixed for the whole run
  std::vector<Resources> task_demand;
  int round = 0;
  bool changed = false;
};

struct ConsensusMessage {
  int sender_id = kUnassigned;
  std::vector<double> y;
  std::vector<int> z;
  std::vector<int> s;
  double sender_discount = 0.0;
};

AgentState make_agent(const Capacity& cap, const Application& app,
                      const Weights& w, const NormBounds& nb);

// Greedy bundle growth: repeatedly add the feasible task with the highest
// utility that outbids the current winner (strictly, or on an exact tie won
// through higher discount, then lower agent id). New claims are stamped with
// the current round.
void build_bundle(AgentState& agent);

ConsensusMessage snapshot_message(const AgentState& agent);

// Per task, adopt the message entry when it is newer, or same-round with a
// strictly higher bid, or tied on both with a higher sender discount, or
// tied throughout with a lower winner id. Adoption that displaces a bundled
// task releases that task's reservation and resets every task appended after
// it to unassigned at the current round.
void resolve(AgentState& agent, const ConsensusMessage& msg);

// All winner vectors identical and no agent changed during the last round.
bool converged(std::span<const AgentState> agents);

struct CbbaResult {
  std::optional<Allocation> allocation;
  Outcome outcome = Outcome::NoValidAllocation;
  std::vector<int> unassigned_microservices;
};

// Reads the agreed winner vector. Any task left unassigned fails the
// application; otherwise the allocation is scored and revalidated. Call only
// on a converged population.
CbbaResult extract_allocation(std::span<const AgentState> agents,
                              const Application& app,
                              std::span<const Capacity> caps, const Weights& w,
                              const NormBounds& nb);

}  // namespace swarmalloc
