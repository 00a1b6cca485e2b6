#include "swarmalloc/cbba.hpp"

#include <algorithm>
#include <stdexcept>

namespace swarmalloc {

namespace {

bool fits(const Resources& demand, const Resources& free) {
  return demand.cpu <= free.cpu && demand.ram <= free.ram &&
         demand.storage <= free.storage;
}

void release_task(AgentState& agent, int task, int stamp) {
  agent.y[task] = 0.0;
  agent.z[task] = kUnassigned;
  agent.s[task] = stamp;
  agent.winner_discount[task] = 0.0;
  agent.tentative_remaining.cpu += agent.task_demand[task].cpu;
  agent.tentative_remaining.ram += agent.task_demand[task].ram;
  agent.tentative_remaining.storage += agent.task_demand[task].storage;
}

}  // namespace

AgentState make_agent(const Capacity& cap, const Application& app,
                      const Weights& w, const NormBounds& nb) {
  AgentState agent;
  agent.agent_id = cap.id;
  agent.capacity = &cap;
  agent.tentative_remaining = cap.remaining;
  const auto tasks = microservices_by_id(app);
  agent.y.assign(tasks.size(), 0.0);
  agent.z.assign(tasks.size(), kUnassigned);
  agent.s.assign(tasks.size(), 0);
  agent.winner_discount.assign(tasks.size(), 0.0);
  agent.task_utility.reserve(tasks.size());
  agent.task_demand.reserve(tasks.size());
  for (const Microservice* ms : tasks) {
    agent.task_utility.push_back(utility(*ms, cap, app.id, w, nb));
    agent.task_demand.push_back({ms->cpu, ms->ram, ms->storage});
  }
  return agent;
}

void build_bundle(AgentState& agent) {
  const int n_tasks = static_cast<int>(agent.y.size());
  for (;;) {
    int best = -1;
    double best_utility = 0.0;
    for (int t = 0; t < n_tasks; ++t) {
      if (agent.z[t] == agent.agent_id) continue;
      const double u = agent.task_utility[t];
      if (u <= 0.0) continue;
      if (!fits(agent.task_demand[t], agent.tentative_remaining)) continue;
      const bool outbids =
          u > agent.y[t] ||
          (u == agent.y[t] &&
           (agent.capacity->discount > agent.winner_discount[t] ||
            (agent.capacity->discount == agent.winner_discount[t] &&
             agent.agent_id < agent.z[t])));
      if (!outbids) continue;
      if (best == -1 || u > best_utility) {
        best = t;
        best_utility = u;
      }
    }
    if (best == -1) return;
    agent.bundle.push_back(best);
    agent.tentative_remaining.cpu -= agent.task_demand[best].cpu;
    agent.tentative_remaining.ram -= agent.task_demand[best].ram;
    agent.tentative_remaining.storage -= agent.task_demand[best].storage;
    agent.y[best] = best_utility;
    agent.z[best] = agent.agent_id;
    agent.s[best] = agent.round;
    agent.winner_discount[best] = agent.capacity->discount;
    agent.changed = true;
  }
}

ConsensusMessage snapshot_message(const AgentState& agent) {
  return {agent.agent_id, agent.y, agent.z, agent.s,
          agent.capacity->discount};
}

void resolve(AgentState& agent, const ConsensusMessage& msg) {
  if (msg.sender_id == agent.agent_id) return;
  const int n_tasks = static_cast<int>(agent.y.size());
  for (int t = 0; t < n_tasks; ++t) {
    if (msg.y[t] == agent.y[t] && msg.z[t] == agent.z[t] &&
        msg.s[t] == agent.s[t])
      continue;
    bool adopt = false;
    if (msg.s[t] > agent.s[t]) {
      adopt = true;
    } else if (msg.s[t] == agent.s[t]) {
      if (msg.y[t] > agent.y[t]) {
        adopt = true;
      } else if (msg.y[t] == agent.y[t] && msg.z[t] != agent.z[t]) {
        if (msg.sender_discount > agent.winner_discount[t])
          adopt = true;
        else if (msg.sender_discount == agent.winner_discount[t] &&
                 msg.z[t] != kUnassigned && msg.z[t] < agent.z[t])
          adopt = true;
      }
    }
    if (!adopt) continue;
    const auto pos = std::find(agent.bundle.begin(), agent.bundle.end(), t);
    if (pos != agent.bundle.end()) {
      // Releases are stamped one round ahead so they beat every claim made
      // this round, including echoes of this agent's own superseded claims.
      // A release stamped with the current round would lose the equal-stamp
      // higher-bid tiebreak against such an echo and resurrect a claim for a
      // task no longer in the bundle.
      for (auto it = agent.bundle.end(); it != pos + 1;)
        release_task(agent, *--it, agent.round + 1);
      agent.tentative_remaining.cpu += agent.task_demand[t].cpu;
      agent.tentative_remaining.ram += agent.task_demand[t].ram;
      agent.tentative_remaining.storage += agent.task_demand[t].storage;
      agent.bundle.erase(pos, agent.bundle.end());
    }
    agent.y[t] = msg.y[t];
    agent.z[t] = msg.z[t];
    agent.s[t] = msg.s[t];
    agent.winner_discount[t] =
        msg.z[t] == kUnassigned ? 0.0 : msg.sender_discount;
    agent.changed = true;
  }
}

bool converged(std::span<const AgentState> agents) {
  for (const AgentState& agent : agents) {
    if (agent.changed) return false;
    if (agent.z != agents.front().z) return false;
  }
  return true;
}

CbbaResult extract_allocation(std::span<const AgentState> agents,
                              const Application& app,
                              std::span<const Capacity> caps, const Weights& w,
                              const NormBounds& nb) {
  const auto tasks = microservices_by_id(app);
  CbbaResult result;
  if (agents.empty()) {
    result.outcome = Outcome::NoValidAllocation;
    for (const Microservice* ms : tasks)
      result.unassigned_microservices.push_back(ms->id);
    return result;
  }
  const std::vector<int>& z = agents.front().z;
  for (std::size_t t = 0; t < tasks.size(); ++t)
    if (z[t] == kUnassigned)
      result.unassigned_microservices.push_back(tasks[t]->id);
  if (!result.unassigned_microservices.empty()) {
    result.outcome = Outcome::NoValidAllocation;
    return result;
  }
  Allocation alloc;
  alloc.application_id = app.id;
  for (std::size_t t = 0; t < tasks.size(); ++t)
    alloc.assignments[tasks[t]->id] = z[t];
  const AllocationScore score =
      score_assignment(app, alloc.assignments, caps, w, nb);
  alloc.total_cost = score.total_cost;
  alloc.qos_breakdown = score.breakdown;
  if (!validate_allocation(alloc, app, caps))
    throw std::logic_error("converged winner vector is not a valid allocation");
  result.allocation = std::move(alloc);
  result.outcome = Outcome::Success;
  return result;
}

}  // namespace swarmalloc
