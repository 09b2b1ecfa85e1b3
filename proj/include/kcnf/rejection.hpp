#pragma once

#include <cstdint>
#include <vector>

#include "kcnf/formula.hpp"
#include "kcnf/rng.hpp"

namespace kcnf {

struct RejectionBudget {
    std::uint64_t max_attempts_per_component = 0;  // 0 = unbounded
};

struct RejectionResult {
    bool exhausted = false;
    std::uint64_t attempts = 0;                 // total uniform proposals drawn
    std::uint64_t exhausted_component = 0;      // index into the component list when exhausted
};

// Component-wise rejection sampling of mu_S^sigma: factor the restricted
// formula into maximal components intersecting S, sample each component
// uniformly until it satisfies its clauses, glue, and write the values of S
// into sigma. Star and untouched are treated identically. Components are
// processed in ascending order of smallest variable; bits are drawn in
// ascending variable order, so runs replay from the seed.
RejectionResult rejection_sampling(const Formula& f, PartialAssignment& sigma,
                                   const std::vector<Var>& S, Rng& rng,
                                   const RejectionBudget& budget = {});

}  // namespace kcnf
