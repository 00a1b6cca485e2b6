#include "swarmalloc/baselines.hpp"

#include <map>

namespace swarmalloc {

namespace {

bool fits(const Microservice& ms, const Resources& free) {
  return ms.cpu <= free.cpu && ms.ram <= free.ram && ms.storage <= free.storage;
}

struct Search {
  const Application& app;
  std::span<const Capacity> caps;
  const Weights& w;
  const NormBounds& nb;
  std::uint64_t budget;

  std::vector<const Microservice*> order;
  std::vector<std::vector<const Capacity*>> candidates;  // per order position
  std::map<int, Resources> used;                         // capacity id -> load
  std::vector<int> chosen;                               // capacity id per position

  std::uint64_t evaluated = 0;
  bool budget_exceeded = false;
  double best_cost = 0.0;
  std::map<int, int> best_assignment;
  bool found = false;

  void descend(std::size_t pos) {
    if (budget_exceeded) return;
    if (pos == order.size()) {
      if (evaluated == budget) {
        budget_exceeded = true;
        return;
      }
      ++evaluated;
      std::map<int, int> assignment;
      for (std::size_t i = 0; i < order.size(); ++i)
        assignment[order[i]->id] = chosen[i];
      const double cost =
          score_assignment(app, assignment, caps, w, nb).total_cost;
      if (!found || cost < best_cost) {
        found = true;
        best_cost = cost;
        best_assignment = std::move(assignment);
      }
      return;
    }
    const Microservice& ms = *order[pos];
    for (const Capacity* cap : candidates[pos]) {
      Resources& load = used[cap->id];
      const Resources free{cap->remaining.cpu - load.cpu,
                           cap->remaining.ram - load.ram,
                           cap->remaining.storage - load.storage};
      if (!fits(ms, free)) continue;
      load.cpu += ms.cpu;
      load.ram += ms.ram;
      load.storage += ms.storage;
      chosen[pos] = cap->id;
      descend(pos + 1);
      load.cpu -= ms.cpu;
      load.ram -= ms.ram;
      load.storage -= ms.storage;
      if (budget_exceeded) return;
    }
  }
};

}  // namespace

std::vector<Offer> collect_offers(const Application& app,
                                  std::span<const Capacity> caps) {
  std::vector<Offer> offers;
  for (const Capacity* cap : capacities_by_id(caps))
    for (const Microservice* ms : microservices_by_id(app))
      if (feasible(*ms, *cap, app.id))
        offers.push_back({cap->id, ms->id});
  return offers;
}

ExhaustiveResult centralised_exhaustive(const Application& app,
                                        std::span<const Capacity> caps,
                                        const Weights& w, const NormBounds& nb,
                                        const ExhaustiveOptions& options) {
  Search search{app, caps, w, nb, options.candidate_budget};
  search.order = microservices_by_id(app);
  for (const Microservice* ms : search.order) {
    std::vector<const Capacity*> feas;
    for (const Capacity* cap : capacities_by_id(caps))
      if (feasible(*ms, *cap, app.id)) feas.push_back(cap);
    if (feas.empty()) return {std::nullopt, Outcome::NoValidAllocation, 0};
    search.candidates.push_back(std::move(feas));
  }
  search.chosen.resize(search.order.size());
  search.descend(0);

  ExhaustiveResult result;
  result.candidates_evaluated = search.evaluated;
  if (search.budget_exceeded) {
    result.outcome = Outcome::EnumerationBudgetExceeded;
    return result;
  }
  if (!search.found) {
    result.outcome = Outcome::NoValidAllocation;
    return result;
  }
  Allocation alloc;
  alloc.application_id = app.id;
  alloc.assignments = std::move(search.best_assignment);
  const AllocationScore score =
      score_assignment(app, alloc.assignments, caps, w, nb);
  alloc.total_cost = score.total_cost;
  alloc.qos_breakdown = score.breakdown;
  result.allocation = std::move(alloc);
  result.outcome = Outcome::Success;
  return result;
}

FirstFitResult first_fit(const Application& app, std::span<const Capacity> caps,
                         const Weights& w, const NormBounds& nb) {
  const std::vector<const Capacity*> by_id = capacities_by_id(caps);
  std::map<int, Resources> reserved;
  std::map<int, int> assignment;
  for (const Microservice* ms : microservices_by_id(app)) {
    const Capacity* placed = nullptr;
    for (const Capacity* cap : by_id) {
      if (!feasible(*ms, *cap, app.id)) continue;
      const Resources& load = reserved[cap->id];
      const Resources free{cap->remaining.cpu - load.cpu,
                           cap->remaining.ram - load.ram,
                           cap->remaining.storage - load.storage};
      if (!fits(*ms, free)) continue;
      placed = cap;
      break;
    }
    if (placed == nullptr)
      return {std::nullopt, Outcome::NoValidAllocation, ms->id};
    Resources& load = reserved[placed->id];
    load.cpu += ms->cpu;
    load.ram += ms->ram;
    load.storage += ms->storage;
    assignment[ms->id] = placed->id;
  }
  Allocation alloc;
  alloc.application_id = app.id;
  alloc.assignments = std::move(assignment);
  const AllocationScore score =
      score_assignment(app, alloc.assignments, caps, w, nb);
  alloc.total_cost = score.total_cost;
  alloc.qos_breakdown = score.breakdown;
  return {std::move(alloc), Outcome::Success, -1};
}

}  // namespace swarmalloc
