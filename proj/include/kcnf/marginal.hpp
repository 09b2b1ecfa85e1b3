#pragma once

#include <cstdint>
#include <variant>

#include "kcnf/enumeration.hpp"
#include "kcnf/live_state.hpp"
#include "kcnf/rng.hpp"

namespace kcnf {

// Three-outcome padding law: 0 and 1 with probability (1-delta)/2 each,
// star with probability delta. Exact categorical draw over 2*den outcomes.
enum class TauOutcome : std::uint8_t { Zero, One, Star };

TauOutcome tau_sample(Rng& rng, const Rational& delta);

enum class HaltSite : std::uint8_t { Recursing, Sampling };

struct HaltInfo {
    HaltSite site = HaltSite::Recursing;
    std::uint64_t ccon_size = 0;
    std::uint64_t depth = 0;
};

struct SampleStats {
    std::uint64_t tau_draws = 0;
    std::uint64_t overflow_calls = 0;
    std::uint64_t leaf_count = 0;
    std::uint64_t max_depth = 0;
    std::uint64_t max_ccon = 0;
    std::uint64_t rejection_attempts = 0;
    std::uint64_t depth_bound_violations = 0;  // observed depth > s*k + 1 on truncated runs

    void merge(const SampleStats& o) {
        tau_draws += o.tau_draws;
        overflow_calls += o.overflow_calls;
        leaf_count += o.leaf_count;
        max_depth = std::max(max_depth, o.max_depth);
        max_ccon = std::max(max_ccon, o.max_ccon);
        rejection_attempts += o.rejection_attempts;
        depth_bound_violations += o.depth_bound_violations;
    }
};

// Overflow law nu_v^sigma(1) = (mu_v^sigma(1) - (1-delta)/2) / delta as an
// exact rational; throws LocalUniformityViolated when it leaves [0,1].
Rational nu_probability(const Rational& marginal_one, const Rational& delta);

// Leaf oracle: computes the exact marginal of v by enumeration and draws one
// bit distributed exactly as nu_v^sigma. Requires sigma(v) = star.
int nu_sample(const LiveState& st, Var v, const Rational& delta, Rng& rng);

using BitOrHalt = std::variant<int, HaltInfo>;

// Recursive overflow resolution for v with sigma(v) = star: truncation check
// against s, NextVar chain with tau draws and star overwrites, nu leaf at
// bottom. Returns the bit for v; the caller resolves v's star.
BitOrHalt margin_overflow(LiveState& st, Var v, Rng& rng, SampleStats& stats);

// tau draw on alive v; 0/1 sticks, star routes through margin_overflow and
// the resulting bit overwrites the star. Post: sigma(v) in {0,1} unless Halt.
BitOrHalt margin_sample(LiveState& st, Var v, Rng& rng, SampleStats& stats);

}  // namespace kcnf
