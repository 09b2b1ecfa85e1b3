#include "kcnf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "kcnf/stats.hpp"

namespace kcnf {

void SolutionHistogram::merge(const SolutionHistogram& o) {
    for (const auto& [key, cnt] : o.counts) counts[key] += cnt;
    halts += o.halts;
    non_solutions += o.non_solutions;
    total += o.total;
}

DistributionTest distribution_test(const SamplerFn& sampler, const Formula& f, std::uint64_t runs,
                                   Rng& rng, unsigned jobs) {
    DistributionTest out;
    std::vector<std::uint64_t> solutions = brute_force_solutions(f);
    out.solutions = solutions.size();

    jobs = std::max(1u, jobs);
    std::vector<SolutionHistogram> partial(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    auto worker = [&](unsigned w) {
        try {
            Rng local = rng.split(1000 + w);
            SolutionHistogram& h = partial[w];
            std::uint64_t lo = runs * w / jobs, hi = runs * (w + 1) / jobs;
            for (std::uint64_t r = lo; r < hi; ++r) {
                std::optional<std::uint64_t> s = sampler(local);
                ++h.total;
                if (!s) {
                    ++h.halts;
                } else if (!std::binary_search(solutions.begin(), solutions.end(), *s)) {
                    ++h.non_solutions;
                } else {
                    ++h.counts[*s];
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
        for (auto& t : threads) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (auto& h : partial) out.histogram.merge(h);

    const double total = static_cast<double>(out.histogram.total);
    const double nsol = static_cast<double>(solutions.size());
    out.halt_rate = total > 0 ? static_cast<double>(out.histogram.halts) / total : 0;

    double tv = 0;
    double chi = 0;
    const double counted = total - static_cast<double>(out.histogram.halts) -
                           static_cast<double>(out.histogram.non_solutions);
    for (std::uint64_t s : solutions) {
        auto it = out.histogram.counts.find(s);
        double obs = it == out.histogram.counts.end() ? 0 : static_cast<double>(it->second);
        double emp = total > 0 ? obs / total : 0;
        tv += std::fabs(emp - 1.0 / nsol);
        double expected = counted / nsol;
        if (expected > 0) chi += (obs - expected) * (obs - expected) / expected;
    }
    // halts and non-solutions carry their whole mass against TV: half directly,
    // half through the mass missing from the solution bins
    tv += out.halt_rate + (total > 0 ? static_cast<double>(out.histogram.non_solutions) / total : 0);
    out.tv_estimate = 0.5 * tv;
    out.chi_square_stat = chi;
    out.p_value = counted > 0 && nsol > 1 ? chi_square_sf(chi, nsol - 1.0) : 1.0;

    double noise = 0;
    if (total > 0) {
        for (std::uint64_t i = 0; i < solutions.size(); ++i) {
            double u = 1.0 / nsol;
            noise += std::sqrt(u * (1 - u) / total);
        }
        noise = 0.5 * noise + std::sqrt(std::max(out.halt_rate, 1.0 / total) / total);
    }
    out.noise_radius = noise;
    return out;
}

HaltRateReport measure_halt_rate(const Formula& f, const Params& params, std::uint64_t runs, Rng& rng,
                                 unsigned jobs) {
    HaltRateReport out;
    out.runs = runs;
    std::vector<Var> vars(f.num_vars());
    for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
    SeparatorPair sep = construct_sep(f, vars, params.degree_threshold, params.eta);

    jobs = std::max(1u, jobs);
    std::vector<HaltRateReport> partial(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    auto worker = [&](unsigned w) {
        try {
            Rng local = rng.split(2000 + w);
            HaltRateReport& h = partial[w];
            std::uint64_t lo = runs * w / jobs, hi = runs * (w + 1) / jobs;
            for (std::uint64_t r = lo; r < hi; ++r) {
                RunReport rep = solution_sampling(f, sep, params, local);
                h.max_depth = std::max(h.max_depth, rep.stats.max_depth);
                h.max_ccon = std::max(h.max_ccon, rep.stats.max_ccon);
                h.depth_bound_violations += rep.stats.depth_bound_violations;
                if (rep.outcome == Outcome::Halt) {
                    ++h.halts;
                    if (rep.halt.site == HaltSite::Recursing) ++h.halts_recursing;
                    else ++h.halts_sampling;
                    ++h.depth_histogram[rep.halt.depth];
                    ++h.ccon_histogram[rep.halt.ccon_size];
                } else if (rep.outcome == Outcome::BudgetExhausted) {
                    ++h.budget_exhausted;
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
        for (auto& t : threads) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& h : partial) {
        out.halts += h.halts;
        out.halts_recursing += h.halts_recursing;
        out.halts_sampling += h.halts_sampling;
        out.budget_exhausted += h.budget_exhausted;
        out.max_depth = std::max(out.max_depth, h.max_depth);
        out.max_ccon = std::max(out.max_ccon, h.max_ccon);
        out.depth_bound_violations += h.depth_bound_violations;
        for (const auto& [d, c] : h.depth_histogram) out.depth_histogram[d] += c;
        for (const auto& [d, c] : h.ccon_histogram) out.ccon_histogram[d] += c;
    }
    out.halt_rate = runs > 0 ? static_cast<double>(out.halts) / static_cast<double>(runs) : 0;
    return out;
}

}  // namespace kcnf
