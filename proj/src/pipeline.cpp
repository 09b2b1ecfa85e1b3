#include "kcnf/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

namespace kcnf {

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::vector<Var> all_vars(const Formula& f) {
    std::vector<Var> vs(f.num_vars());
    for (Var v = 1; v <= f.num_vars(); ++v) vs[v - 1] = v;
    return vs;
}

void extract_assignment(const PartialAssignment& sigma, RunReport& report) {
    report.assignment.assign(sigma.states.size(), 0);
    for (Var v = 1; v < sigma.states.size(); ++v)
        report.assignment[v] = sigma[v] == VarState::One ? 1 : 0;
}

RunReport plain_rejection_run(const Formula& f, const Params& params, Rng& rng) {
    RunReport report;
    report.path = "rejection";
    report.regime = params.regime;
    double t0 = now_ms();
    PartialAssignment sigma(f.num_vars());
    RejectionResult rr =
        rejection_sampling(f, sigma, all_vars(f), rng, RejectionBudget{params.rejection_budget});
    report.stats.rejection_attempts = rr.attempts;
    if (rr.exhausted) {
        report.outcome = Outcome::BudgetExhausted;
    } else {
        if (!satisfies_all(f, sigma)) fail(Errc::Internal, "rejection sample violates a clause");
        report.outcome = Outcome::Sample;
        extract_assignment(sigma, report);
    }
    report.wall_ms = now_ms() - t0;
    return report;
}

}  // namespace

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Sample: return "sample";
        case Outcome::Halt: return "halt";
        case Outcome::BudgetExhausted: return "budget_exhausted";
    }
    return "?";
}

RunReport solution_sampling(const Formula& f, const SeparatorPair& sep, const Params& params, Rng& rng) {
    RunReport report;
    report.path = "recursive";
    report.regime = params.regime;
    double t0 = now_ms();

    if (!params.delta.positive())
        fail(Errc::DeltaNotPositive,
             "solution_sampling: delta underflowed at this scale; supply an override");

    LiveState st(f, sep, params);
    for (Var v = 1; v <= f.num_vars(); ++v) {
        if (!st.is_alive(v)) continue;
        BitOrHalt r = margin_sample(st, v, rng, report.stats);
        if (std::holds_alternative<HaltInfo>(r)) {
            report.outcome = Outcome::Halt;
            report.halt = std::get<HaltInfo>(r);
            report.wall_ms = now_ms() - t0;
            return report;
        }
        st.trail_clear();
        // prescribed-maximum-work guard: inputs without the assumed structure
        // are cut off rather than run forever
        if (params.step_budget != 0 &&
            report.stats.tau_draws + report.stats.overflow_calls > params.step_budget) {
            report.outcome = Outcome::BudgetExhausted;
            report.wall_ms = now_ms() - t0;
            return report;
        }
    }

    PartialAssignment sigma = st.sigma();
    std::vector<Var> remaining = sigma.unassigned_vars();
    if (!params.s_infinite) {
        for (const Component& comp : components_under(f, sigma, remaining)) {
            if (comp.clauses.size() > params.s) {
                report.outcome = Outcome::Halt;
                report.halt = HaltInfo{HaltSite::Sampling, comp.clauses.size(), 0};
                report.wall_ms = now_ms() - t0;
                return report;
            }
        }
    }

    RejectionResult rr =
        rejection_sampling(f, sigma, remaining, rng, RejectionBudget{params.rejection_budget});
    report.stats.rejection_attempts += rr.attempts;
    if (rr.exhausted) {
        report.outcome = Outcome::BudgetExhausted;
        report.wall_ms = now_ms() - t0;
        return report;
    }

    if (!satisfies_all(f, sigma)) fail(Errc::Internal, "sampled assignment violates a clause");
    report.outcome = Outcome::Sample;
    extract_assignment(sigma, report);
    report.wall_ms = now_ms() - t0;
    return report;
}

RunReport solution_sampling(const Formula& f, const Params& params, Rng& rng) {
    SeparatorPair sep = construct_sep(f, all_vars(f), params.degree_threshold, params.eta);
    return solution_sampling(f, sep, params, rng);
}

RunReport sample_with_policy(const Formula& f, const Params& params, Rng& rng, HaltPolicy policy) {
    if (params.regime != Regime::Typical) return plain_rejection_run(f, params, rng);
    RunReport report = solution_sampling(f, params, rng);
    if (report.outcome == Outcome::Halt && policy == HaltPolicy::FallbackRejection) {
        RunReport fallback = plain_rejection_run(f, params, rng);
        fallback.stats.merge(report.stats);
        fallback.path = "recursive+fallback";
        return fallback;
    }
    return report;
}

CountReport approx_count(const Formula& f, const CountOptions& opts, Rng& rng) {
    CountReport out;
    PartialAssignment sigma(f.num_vars());
    long double log2z = 0, log2lo = 0, log2hi = 0;
    out.all_exact = true;

    for (Var v = 1; v <= f.num_vars(); ++v) {
        if (!sigma.unassigned(v)) continue;
        CountStep step;
        step.v = v;
        std::vector<Component> comps = components_under(f, sigma, {v});
        const Component& comp = comps.front();

        bool did_exact = false;
        if (opts.use_exact_shortcut && comp.vars.size() <= opts.enum_cap) {
            Rational p = [&]() {
                try {
                    return exact_marginal(f, sigma, v, opts.enum_cap);
                } catch (const Error& e) {
                    if (e.code() == Errc::UnsatisfiableComponent) {
                        out.unsat_detected = true;
                        return Rational(0);
                    }
                    throw;
                }
            }();
            if (out.unsat_detected) {
                out.estimate = 0;
                out.log2_estimate = -std::numeric_limits<double>::infinity();
                return out;
            }
            step.exact = true;
            did_exact = true;
            int b = p >= Rational(1, 2) ? 1 : 0;
            Rational pb = b ? p : Rational(1) - p;
            step.value = b;
            step.marginal = pb.to_double();
            log2z += -log2l(pb.to_double());
            log2lo += -log2l(pb.to_double());
            log2hi += -log2l(pb.to_double());
            sigma[v] = b ? VarState::One : VarState::Zero;
        }
        if (!did_exact) {
            out.all_exact = false;
            std::uint64_t ones = 0, total = 0;
            PartialAssignment probe = sigma;
            for (std::uint64_t r = 0; r < opts.runs_per_step; ++r) {
                probe[v] = VarState::Untouched;
                RejectionResult rr = rejection_sampling(f, probe, {v}, rng,
                                                        RejectionBudget{opts.rejection_budget});
                if (rr.exhausted) continue;
                ++total;
                if (probe[v] == VarState::One) ++ones;
            }
            if (total == 0) {
                out.unsat_detected = true;
                out.estimate = 0;
                out.log2_estimate = -std::numeric_limits<double>::infinity();
                return out;
            }
            int b = 2 * ones >= total ? 1 : 0;
            std::uint64_t hits = b ? ones : total - ones;
            if (hits == 0) fail(Errc::DegenerateMarginal, "marginal estimate is 0 for both sides; increase runs_per_step");
            double ph = static_cast<double>(hits) / static_cast<double>(total);
            double radius = 3.0 * std::sqrt(ph * (1 - ph) / static_cast<double>(total));
            step.value = b;
            step.marginal = ph;
            step.radius = radius;
            step.samples = total;
            log2z += -std::log2(ph);
            log2hi += -std::log2(std::max(1e-12, ph - radius));
            log2lo += -std::log2(std::min(1.0, ph + radius));
            sigma[v] = b ? VarState::One : VarState::Zero;
        }
        out.steps.push_back(step);
    }

    out.log2_estimate = static_cast<double>(log2z);
    out.estimate = std::pow(2.0, out.log2_estimate);
    out.lower = std::pow(2.0, static_cast<double>(log2lo));
    out.upper = std::pow(2.0, static_cast<double>(log2hi));
    return out;
}

CertifyReport certify_delta(const Formula& f, const SeparatorPair& sep, const Params& params,
                            std::uint64_t trajectories, Rng& rng) {
    CertifyReport rep;
    // States reachable by the sampler are exactly those built from alive-only
    // fixings (star and untouched have the same restricted formula), and the
    // band must hold for every unassigned non-separator variable there. Each
    // state is probed once (trajectories share prefixes) with one enumeration
    // pass per component.
    std::unordered_set<std::string> seen_states;
    auto probe_state = [&](const LiveState& st) {
        std::string key(reinterpret_cast<const char*>(st.sigma().states.data()), st.sigma().states.size());
        if (!seen_states.insert(std::move(key)).second) return;
        std::vector<Var> targets;
        for (Var v = 1; v <= f.num_vars(); ++v)
            if (st.sigma().unassigned(v) && !sep.in_v_sep[v]) targets.push_back(v);
        for (const Component& comp : components_under(f, st.sigma(), targets)) {
            if (comp.vars.size() > params.enum_cap) {
                rep.skipped += comp.vars.size();
                continue;
            }
            ComponentMarginals cm = component_marginals(f, st.sigma(), comp, params.enum_cap);
            if (cm.total == 0) {
                // a reachable dead end: only delta = 1 (every move goes
                // through exact conditional marginals) avoids it
                rep.required_delta = 1.0;
                ++rep.probes;
                continue;
            }
            for (std::size_t i = 0; i < comp.vars.size(); ++i) {
                if (sep.in_v_sep[comp.vars[i]]) continue;
                double p = static_cast<double>(cm.ones[i]) / static_cast<double>(cm.total);
                rep.required_delta = std::max(rep.required_delta, std::fabs(p - 0.5) * 2.0);
                ++rep.probes;
            }
        }
    };

    for (std::uint64_t t = 0; t < trajectories && rep.required_delta < 1.0; ++t) {
        LiveState st(f, sep, params);
        while (rep.required_delta < 1.0) {
            probe_state(st);
            std::vector<Var> alive;
            for (Var v = 1; v <= f.num_vars(); ++v)
                if (st.is_alive(v)) alive.push_back(v);
            if (alive.empty()) break;
            Var v = alive[rng.below(alive.size())];
            st.assign(v, rng.bit() ? VarState::One : VarState::Zero);
        }
    }
    return rep;
}

Rational pick_certified_delta(const CertifyReport& report, long long grid) {
    double target = std::min(1.0, report.required_delta * 1.25 + 0.05);
    long long num = static_cast<long long>(std::ceil(target * static_cast<double>(grid)));
    num = std::max<long long>(1, std::min(num, grid));
    return Rational(num, grid);
}

}  // namespace kcnf
