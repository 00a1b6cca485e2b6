#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarmalloc/domain.hpp"
#include "swarmalloc/scoring.hpp"

namespace swarmalloc {

struct Offer {
  int capacity_id = 0;
  int microservice_id = 0;

  bool operator==(const Offer&) const = default;
};

// Every feasible (capacity, microservice) pair against current remaining
// resources, ordered by capacity id, then microservice id.
std::vector<Offer> collect_offers(const Application& app,
                                  std::span<const Capacity> caps);

struct ExhaustiveOptions {
  // Complete assignments evaluated before the search gives up.
  std::uint64_t candidate_budget = 100'000'000;
};

struct ExhaustiveResult {
  std::optional<Allocation> allocation;
  Outcome outcome = Outcome::NoValidAllocation;
  std::uint64_t candidates_evaluated = 0;
};

// Depth-first search over the per-microservice feasible capacities, pruning
// as soon as a partial assignment overcommits a capacity. Every complete
// assignment is scored with the allocation cost; the minimum wins, ties go
// to the lexicographically smallest assignment vector. Exceeding the
// candidate budget aborts with EnumerationBudgetExceeded and no allocation.
ExhaustiveResult centralised_exhaustive(const Application& app,
                                        std::span<const Capacity> caps,
                                        const Weights& w, const NormBounds& nb,
                                        const ExhaustiveOptions& options = {});

struct FirstFitResult {
  std::optional<Allocation> allocation;
  Outcome outcome = Outcome::NoValidAllocation;
  int first_unplaceable_ms = -1;
};

// Walks microservices in id order and picks the first capacity, in offer
// order, that fits on top of the reservations already made for this
// application. No backtracking: a dead end fails the whole application.
FirstFitResult first_fit(const Application& app, std::span<const Capacity> caps,
                         const Weights& w, const NormBounds& nb);

}  // namespace swarmalloc
