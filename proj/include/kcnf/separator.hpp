#pragma once

#include <cstdint>
#include <vector>

#include "kcnf/formula.hpp"
#include "kcnf/rational.hpp"

namespace kcnf {

struct SeparatorPair {
    std::vector<Var> v_sep;                // ascending
    std::vector<std::uint32_t> c_sep;      // ascending clause indices
    std::vector<std::uint8_t> in_v_sep;    // size n+1
    std::vector<std::uint8_t> in_c_sep;    // size m
};

// High-degree seed set: variables of from_set with degree >= D.
std::vector<Var> high_degree_vars(const Formula& f, const std::vector<Var>& from_set, double degree_threshold);

// Closure of the high-degree seed: while some clause outside c_sep has at
// least ceil(2*eta*k) distinct variables inside v_sep, absorb it. Worklist
// with per-clause overlap counters, near-linear; the fixed point does not
// depend on scan order.
SeparatorPair construct_sep(const Formula& f, const std::vector<Var>& candidate_vars,
                            double degree_threshold, const Rational& eta);

// Overlap threshold ceil(2*eta*k) as an integer, computed exactly.
long long sep_overlap_threshold(const Rational& eta, std::uint32_t k);

}  // namespace kcnf
