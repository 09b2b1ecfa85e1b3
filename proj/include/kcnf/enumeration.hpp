#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcnf/formula.hpp"

namespace kcnf {

inline constexpr std::uint32_t kDefaultEnumCap = 26;

// Exact number of solutions of one component (clauses restricted by sigma,
// free variables = comp.vars). Exhaustive with early clause pruning.
std::uint64_t count_component_solutions(const Formula& f, const PartialAssignment& sigma,
                                        const Component& comp, std::uint32_t var_cap = kDefaultEnumCap);

// Exact number of extensions of sigma to full solutions, as a product over
// components. Total unassigned variable count must stay within cap bits.
std::uint64_t count_solutions(const Formula& f, const PartialAssignment& sigma,
                              std::uint32_t var_cap = kDefaultEnumCap, std::uint32_t total_cap = 62);

std::uint64_t count_solutions(const Formula& f, std::uint32_t var_cap = kDefaultEnumCap,
                              std::uint32_t total_cap = 62);

// All satisfying assignments, duplicate-free, lexicographic in (v1,...,vn)
// with v1 most significant. Packed: bit (n-i) holds the value of v_i.
std::vector<std::uint64_t> brute_force_solutions(const Formula& f, std::uint32_t cap = kDefaultEnumCap);

std::uint64_t pack_assignment(const PartialAssignment& sigma);

// p = mu_v^sigma(1) as an exact rational (solutions of v's component with
// v=1 over all solutions of that component).
Rational exact_marginal(const Formula& f, const PartialAssignment& sigma, Var v,
                        std::uint32_t var_cap = kDefaultEnumCap);

// Same, with the component supplied by the caller (local discovery).
Rational exact_marginal_component(const Formula& f, const PartialAssignment& sigma,
                                  const Component& comp, Var v, std::uint32_t var_cap = kDefaultEnumCap);

// One enumeration pass yielding the marginals of every component variable:
// total solution count plus per-variable counts with that variable at 1,
// ordered as comp.vars.
struct ComponentMarginals {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> ones;
};

ComponentMarginals component_marginals(const Formula& f, const PartialAssignment& sigma,
                                       const Component& comp, std::uint32_t var_cap = kDefaultEnumCap);

}  // namespace kcnf
