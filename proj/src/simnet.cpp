#include "swarmalloc/simnet.hpp"

#include <algorithm>
#include <vector>

namespace swarmalloc {

namespace {

void write_trace(std::ostream& out, int round, const ConsensusMessage& msg) {
  out << "{\"round\":" << round << ",\"sender\":" << msg.sender_id << ",\"y\":[";
  for (std::size_t i = 0; i < msg.y.size(); ++i)
    out << (i ? "," : "") << msg.y[i];
  out << "],\"z\":[";
  for (std::size_t i = 0; i < msg.z.size(); ++i)
    out << (i ? "," : "") << msg.z[i];
  out << "],\"s\":[";
  for (std::size_t i = 0; i < msg.s.size(); ++i)
    out << (i ? "," : "") << msg.s[i];
  out << "],\"sender_discount\":" << msg.sender_discount << "}\n";
}

}  // namespace

bool run_round(std::span<AgentState> agents, std::ostream* trace) {
  for (AgentState& agent : agents) {
    ++agent.round;
    agent.changed = false;
    build_bundle(agent);
  }
  std::vector<ConsensusMessage> snapshots;
  snapshots.reserve(agents.size());
  for (const AgentState& agent : agents)
    snapshots.push_back(snapshot_message(agent));
  if (trace != nullptr)
    for (const ConsensusMessage& msg : snapshots)
      write_trace(*trace, agents.empty() ? 0 : agents.front().round, msg);
  for (AgentState& agent : agents)
    for (const ConsensusMessage& msg : snapshots) resolve(agent, msg);
  return std::any_of(agents.begin(), agents.end(),
                     [](const AgentState& a) { return a.changed; });
}

std::pair<CbbaResult, NetworkStats> allocate_cbba(const Application& app,
                                                  std::span<const Capacity> caps,
                                                  const Weights& w,
                                                  const NormBounds& nb,
                                                  const CbbaOptions& options) {
  NetworkStats stats;
  std::vector<AgentState> agents;
  agents.reserve(caps.size());
  for (const Capacity& cap : caps)
    agents.push_back(make_agent(cap, app, w, nb));

  const int n_agents = static_cast<int>(agents.size());
  const int n_tasks = static_cast<int>(app.microservices.size());
  if (n_agents == 0) {
    stats.converged = true;
    CbbaResult result;
    result.outcome = Outcome::NoValidAllocation;
    for (const Microservice* ms : microservices_by_id(app))
      result.unassigned_microservices.push_back(ms->id);
    return {std::move(result), stats};
  }

  const int max_rounds = options.max_rounds > 0
                             ? options.max_rounds
                             : std::max(n_tasks * n_agents, 2);
  for (int round = 0; round < max_rounds; ++round) {
    run_round(agents, options.message_trace);
    ++stats.rounds;
    stats.messages_sent +=
        static_cast<std::int64_t>(n_agents) * (n_agents - 1);
    if (converged(agents)) {
      stats.converged = true;
      break;
    }
  }
  if (!stats.converged)
    return {CbbaResult{std::nullopt, Outcome::ConvergenceTimeout, {}}, stats};
  return {extract_allocation(agents, app, caps, w, nb), stats};
}

}  // namespace swarmalloc
