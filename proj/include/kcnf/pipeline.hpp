#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcnf/live_state.hpp"
#include "kcnf/marginal.hpp"
#include "kcnf/params.hpp"
#include "kcnf/rejection.hpp"

namespace kcnf {

enum class Outcome : std::uint8_t { Sample, Halt, BudgetExhausted };

const char* outcome_name(Outcome o);

struct RunReport {
    Outcome outcome = Outcome::Sample;
    std::vector<std::uint8_t> assignment;  // size n+1 when outcome == Sample, index 0 unused
    HaltInfo halt;
    SampleStats stats;
    Regime regime = Regime::Typical;
    std::string path;  // "recursive" or "rejection"
    double wall_ms = 0;
};

// Truncated recursive sampler: ConstructSep, ascending alive-variable loop of
// margin_sample, component-size truncation check, final rejection sampling on
// the remaining unassigned variables. The returned assignment is verified
// against every clause before being reported.
RunReport solution_sampling(const Formula& f, const Params& params, Rng& rng);
RunReport solution_sampling(const Formula& f, const SeparatorPair& sep, const Params& params, Rng& rng);

enum class HaltPolicy : std::uint8_t { ReportHalt, FallbackRejection };

// Regime dispatch: atypical regimes (tiny eps or tiny density) go straight to
// plain rejection sampling, which is exact there; otherwise the recursive
// sampler runs, and on Halt the policy decides between reporting it and
// rerunning full rejection sampling (exactness-preserving, possibly slow).
RunReport sample_with_policy(const Formula& f, const Params& params, Rng& rng,
                             HaltPolicy policy = HaltPolicy::FallbackRejection);

struct CountStep {
    Var v = 0;
    int value = 0;
    double marginal = 0;   // estimate of mu_v(value)
    double radius = 0;     // 3-sigma binomial radius (0 for exact steps)
    bool exact = false;
    std::uint64_t samples = 0;
};

struct CountReport {
    double estimate = 0;       // Z estimate
    double log2_estimate = 0;
    double lower = 0, upper = 0;  // from per-step radii
    bool all_exact = false;
    bool unsat_detected = false;
    std::vector<CountStep> steps;
};

struct CountOptions {
    std::uint64_t runs_per_step = 10000;
    bool use_exact_shortcut = true;
    std::uint32_t enum_cap = kDefaultEnumCap;
    std::uint64_t rejection_budget = 1000000;  // per component per sample
};

// Telescoping product estimator: fix v_1..v_n in ascending order, estimate
// the marginal of the majority side at each step by component-restricted
// sampling (or exactly, under the cap, when the shortcut is on), accumulate
// Z ~= prod 1/mu_i.
CountReport approx_count(const Formula& f, const CountOptions& opts, Rng& rng);

struct CertifyReport {
    double required_delta = 0;  // max over probes of 2*|p - 1/2|
    std::uint64_t probes = 0;
    std::uint64_t skipped = 0;  // components above the enumeration cap
    bool certifies(const Rational& delta) const { return delta.to_double() >= required_delta; }
};

// Probes random alive-fixing trajectories and records how far the exact
// marginals stray from 1/2; any delta at least required_delta keeps every
// probed tau draw inside its band.
CertifyReport certify_delta(const Formula& f, const SeparatorPair& sep, const Params& params,
                            std::uint64_t trajectories, Rng& rng);

// Smallest grid rational delta = ceil(required * grid)/grid with headroom,
// clamped to (0, 1].
Rational pick_certified_delta(const CertifyReport& report, long long grid = 256);

}  // namespace kcnf
