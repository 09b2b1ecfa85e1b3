#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "kcnf/enumeration.hpp"
#include "kcnf/formula.hpp"
#include "kcnf/pipeline.hpp"
#include "kcnf/rng.hpp"

namespace kcnf {

struct SolutionHistogram {
    std::map<std::uint64_t, std::uint64_t> counts;  // packed solution -> observations
    std::uint64_t halts = 0;
    std::uint64_t non_solutions = 0;
    std::uint64_t total = 0;

    void merge(const SolutionHistogram& o);
};

// One sampler run: a packed full assignment, or nothing on Halt/exhaustion.
using SamplerFn = std::function<std::optional<std::uint64_t>(Rng&)>;

struct DistributionTest {
    double tv_estimate = 0;       // TV to uniform-over-solutions; halts and
                                  // non-solutions count with their full mass
    double chi_square_stat = 0;   // over solutions, halts excluded
    double p_value = 1.0;
    double halt_rate = 0;
    double noise_radius = 0;      // expected-absolute-deviation envelope of the TV estimate
    std::uint64_t solutions = 0;  // brute-force solution count
    SolutionHistogram histogram;
};

// Runs the sampler `runs` times against the brute-force solution list.
// jobs > 1 fans runs out over threads with split RNG streams.
DistributionTest distribution_test(const SamplerFn& sampler, const Formula& f, std::uint64_t runs,
                                   Rng& rng, unsigned jobs = 1);

struct HaltRateReport {
    double halt_rate = 0;
    std::uint64_t runs = 0;
    std::uint64_t halts = 0;
    std::uint64_t halts_recursing = 0;
    std::uint64_t halts_sampling = 0;
    std::uint64_t budget_exhausted = 0;
    std::map<std::uint64_t, std::uint64_t> depth_histogram;  // over halted runs
    std::map<std::uint64_t, std::uint64_t> ccon_histogram;
    std::uint64_t max_depth = 0;  // across all runs
    std::uint64_t max_ccon = 0;
    std::uint64_t depth_bound_violations = 0;
};

// Empirical halt frequency of solution_sampling under report-halt policy.
HaltRateReport measure_halt_rate(const Formula& f, const Params& params, std::uint64_t runs,
                                 Rng& rng, unsigned jobs = 1);

}  // namespace kcnf
