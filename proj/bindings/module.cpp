#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kcnf/enumeration.hpp"
#include "kcnf/pipeline.hpp"
#include "kcnf/structure_checks.hpp"
#include "kcnf/verify.hpp"

namespace py = pybind11;
using namespace kcnf;

namespace {

Rational rational_from_object(const py::object& obj) {
    if (py::isinstance<py::tuple>(obj)) {
        auto t = obj.cast<std::pair<long long, long long>>();
        return Rational(t.first, t.second);
    }
    if (py::isinstance<py::str>(obj)) {
        std::string s = obj.cast<std::string>();
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        return Rational::from_double(std::stod(s), 1LL << 30);
    }
    return Rational::from_double(obj.cast<double>(), 1LL << 30);
}

Params params_from_kwargs(const Formula& f, double eps, double xi, const py::kwargs& kw) {
    ParamOverrides ov;
    if (kw.contains("eta")) ov.eta = rational_from_object(kw["eta"]);
    if (kw.contains("delta")) ov.delta = rational_from_object(kw["delta"]);
    if (kw.contains("degree_threshold")) ov.degree_threshold = kw["degree_threshold"].cast<double>();
    if (kw.contains("s")) {
        py::object s = kw["s"];
        if (py::isinstance<py::str>(s) && s.cast<std::string>() == "inf") ov.s_infinite = true;
        else ov.s = s.cast<std::uint64_t>();
    }
    Params p = derive_params(std::max(2u, f.width()), std::max<std::uint64_t>(1, f.num_vars()),
                             f.num_clauses(), eps, xi, ov);
    if (kw.contains("rejection_budget")) p.rejection_budget = kw["rejection_budget"].cast<std::uint64_t>();
    if (kw.contains("enum_cap")) p.enum_cap = kw["enum_cap"].cast<std::uint32_t>();
    if (kw.contains("debug_shadow")) p.debug_shadow = kw["debug_shadow"].cast<bool>();
    if (kw.contains("certify")) {
        std::vector<Var> vars(f.num_vars());
        for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
        SeparatorPair sep = construct_sep(f, vars, p.degree_threshold, p.eta);
        std::uint64_t seed = kw.contains("seed") ? kw["seed"].cast<std::uint64_t>() : 0;
        Rng rng(Rng::mix(seed ^ 0xCE271FULL));
        CertifyReport cert = certify_delta(f, sep, p, kw["certify"].cast<std::uint64_t>(), rng);
        p.delta = pick_certified_delta(cert);
        p.delta_overridden = true;
    }
    return p;
}

py::dict params_dict(const Params& p) {
    py::dict d;
    d["k"] = p.k;
    d["n"] = p.n;
    d["m"] = p.m;
    d["alpha"] = p.alpha.str();
    d["eps"] = p.eps;
    d["xi"] = p.xi;
    d["eta"] = p.eta.str();
    d["eta_in_theory"] = p.eta_in_theory;
    d["degree_threshold"] = p.degree_threshold;
    d["delta"] = p.delta.str();
    d["delta_underflowed"] = p.delta_underflowed;
    d["s"] = p.s_infinite ? py::object(py::str("inf")) : py::object(py::int_(p.s));
    d["regime"] = regime_name(p.regime);
    d["live_floor"] = p.live_floor;
    d["sep_overlap_min"] = p.sep_overlap_min;
    return d;
}

py::dict report_dict(const RunReport& r, const Params& p) {
    py::dict d;
    d["params"] = params_dict(p);
    d["regime"] = regime_name(r.regime);
    d["outcome"] = outcome_name(r.outcome);
    d["path"] = r.path;
    if (r.outcome == Outcome::Sample) {
        py::list bits;
        for (Var v = 1; v < r.assignment.size(); ++v) bits.append(static_cast<int>(r.assignment[v]));
        d["assignment"] = bits;
    }
    if (r.outcome == Outcome::Halt) {
        py::dict h;
        h["site"] = r.halt.site == HaltSite::Recursing ? "recursing" : "sampling";
        h["ccon_size"] = r.halt.ccon_size;
        h["depth"] = r.halt.depth;
        d["halt"] = h;
    }
    py::dict c;
    c["tau_draws"] = r.stats.tau_draws;
    c["overflow_calls"] = r.stats.overflow_calls;
    c["leaf_count"] = r.stats.leaf_count;
    c["max_depth"] = r.stats.max_depth;
    c["max_ccon"] = r.stats.max_ccon;
    c["rejection_attempts"] = r.stats.rejection_attempts;
    d["counters"] = c;
    d["wall_ms"] = r.wall_ms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sampling, counting and structural checks for random k-CNF formulas";

    py::register_exception<Error>(m, "KcnfError");

    py::class_<Formula>(m, "Formula")
        .def_property_readonly("n", &Formula::num_vars)
        .def_property_readonly("m", &Formula::num_clauses)
        .def_property_readonly("k", &Formula::width)
        .def("max_degree", &Formula::max_degree)
        .def("__repr__", [](const Formula& f) {
            std::ostringstream os;
            os << "Formula(n=" << f.num_vars() << ", m=" << f.num_clauses() << ", k=" << f.width() << ")";
            return os.str();
        });

    m.def("parse_dimacs", [](const std::string& text) { return parse_dimacs(text); },
          py::arg("text"), "Parse a DIMACS CNF string into a Formula");
    m.def("write_dimacs", [](const Formula& f) { return write_dimacs(f); }, py::arg("formula"));
    m.def("generate_random_kcnf",
          [](std::uint32_t k, Var n, std::uint64_t m, std::uint64_t seed) {
              Rng rng(seed);
              return generate_random_kcnf(k, n, m, rng);
          },
          py::arg("k"), py::arg("n"), py::arg("m"), py::arg("seed") = 0,
          "Draw each of the k*m literals i.i.d. uniform over the 2n signed variables");

    m.def("count_solutions",
          [](const Formula& f, std::uint32_t var_cap) { return count_solutions(f, var_cap); },
          py::arg("formula"), py::arg("var_cap") = kDefaultEnumCap,
          "Exact solution count by component-factorized enumeration");
    m.def("brute_force_solutions",
          [](const Formula& f, std::uint32_t cap) {
              std::vector<std::uint64_t> sols = brute_force_solutions(f, cap);
              py::list out;
              for (std::uint64_t s : sols) {
                  py::list bits;
                  for (Var v = 1; v <= f.num_vars(); ++v)
                      bits.append(static_cast<int>((s >> (f.num_vars() - v)) & 1));
                  out.append(bits);
              }
              return out;
          },
          py::arg("formula"), py::arg("cap") = kDefaultEnumCap,
          "All satisfying assignments as 0/1 lists in variable order");
    m.def("exact_marginal",
          [](const Formula& f, Var v, const std::vector<int>& assignment) {
              PartialAssignment sigma(f.num_vars());
              for (std::size_t i = 0; i < assignment.size() && i < f.num_vars(); ++i) {
                  if (assignment[i] == 0) sigma[static_cast<Var>(i + 1)] = VarState::Zero;
                  else if (assignment[i] == 1) sigma[static_cast<Var>(i + 1)] = VarState::One;
              }
              Rational p = exact_marginal(f, sigma, v);
              return std::make_pair(p.num, p.den);
          },
          py::arg("formula"), py::arg("v"), py::arg("assignment") = std::vector<int>{},
          "Exact marginal of v (numerator, denominator); assignment entries: 0, 1, or -1 for unassigned");

    m.def("construct_sep",
          [](const Formula& f, double degree_threshold, const py::object& eta) {
              std::vector<Var> vars(f.num_vars());
              for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
              SeparatorPair sep = construct_sep(f, vars, degree_threshold, rational_from_object(eta));
              return std::make_pair(sep.v_sep, sep.c_sep);
          },
          py::arg("formula"), py::arg("degree_threshold"), py::arg("eta"),
          "High-degree closure; returns (variable separators, clause separator indices)");

    m.def("rejection_sample",
          [](const Formula& f, std::uint64_t seed, std::uint64_t budget) -> py::object {
              PartialAssignment sigma(f.num_vars());
              Rng rng(seed);
              RejectionResult rr =
                  rejection_sampling(f, sigma, sigma.unassigned_vars(), rng, RejectionBudget{budget});
              if (rr.exhausted) return py::none();
              py::list bits;
              for (Var v = 1; v <= f.num_vars(); ++v)
                  bits.append(sigma[v] == VarState::One ? 1 : 0);
              return bits;
          },
          py::arg("formula"), py::arg("seed") = 0, py::arg("budget") = 1000000,
          "Exact uniform solution by component-wise rejection, or None when the budget trips");

    m.def("solution_sample",
          [](const Formula& f, std::uint64_t seed, double eps, double xi, const py::kwargs& kw) {
              Params p = params_from_kwargs(f, eps, xi, kw);
              Rng rng(seed);
              RunReport r = solution_sampling(f, p, rng);
              return report_dict(r, p);
          },
          py::arg("formula"), py::arg("seed") = 0, py::arg("eps") = 0.05, py::arg("xi") = 1.0,
          "Truncated recursive sampler; overrides: eta, delta, s ('inf' or int), degree_threshold, "
          "certify=<trajectories>, rejection_budget, enum_cap");

    m.def("sample_with_policy",
          [](const Formula& f, std::uint64_t seed, double eps, double xi, const std::string& policy,
             const py::kwargs& kw) {
              Params p = params_from_kwargs(f, eps, xi, kw);
              Rng rng(seed);
              RunReport r = sample_with_policy(
                  f, p, rng, policy == "report_halt" ? HaltPolicy::ReportHalt : HaltPolicy::FallbackRejection);
              return report_dict(r, p);
          },
          py::arg("formula"), py::arg("seed") = 0, py::arg("eps") = 0.05, py::arg("xi") = 1.0,
          py::arg("policy") = "fallback", "Regime dispatch plus halt policy");

    m.def("approx_count",
          [](const Formula& f, std::uint64_t runs_per_step, std::uint64_t seed, bool use_exact_shortcut) {
              CountOptions opts;
              opts.runs_per_step = runs_per_step;
              opts.use_exact_shortcut = use_exact_shortcut;
              Rng rng(seed);
              CountReport r = approx_count(f, opts, rng);
              py::dict d;
              d["estimate"] = r.estimate;
              d["log2_estimate"] = r.log2_estimate;
              d["lower"] = r.lower;
              d["upper"] = r.upper;
              d["all_exact"] = r.all_exact;
              d["unsat_detected"] = r.unsat_detected;
              return d;
          },
          py::arg("formula"), py::arg("runs_per_step") = 10000, py::arg("seed") = 0,
          py::arg("use_exact_shortcut") = true, "Telescoping-product estimate of the solution count");

    m.def("certify_delta",
          [](const Formula& f, std::uint64_t trajectories, std::uint64_t seed, const py::kwargs& kw) {
              Params p = params_from_kwargs(f, 0.05, 1.0, kw);
              std::vector<Var> vars(f.num_vars());
              for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
              SeparatorPair sep = construct_sep(f, vars, p.degree_threshold, p.eta);
              Rng rng(seed);
              CertifyReport rep = certify_delta(f, sep, p, trajectories, rng);
              py::dict d;
              d["required_delta"] = rep.required_delta;
              d["probes"] = rep.probes;
              d["skipped"] = rep.skipped;
              Rational chosen = pick_certified_delta(rep);
              d["suggested_delta"] = chosen.str();
              return d;
          },
          py::arg("formula"), py::arg("trajectories") = 64, py::arg("seed") = 0,
          "Probe reachable states and report the smallest workable overflow mass");

    m.def("measure_halt_rate",
          [](const Formula& f, std::uint64_t runs, std::uint64_t seed, unsigned jobs, const py::kwargs& kw) {
              Params p = params_from_kwargs(f, 0.05, 1.0, kw);
              Rng rng(seed);
              HaltRateReport h = measure_halt_rate(f, p, runs, rng, jobs);
              py::dict d;
              d["halt_rate"] = h.halt_rate;
              d["halts_recursing"] = h.halts_recursing;
              d["halts_sampling"] = h.halts_sampling;
              d["budget_exhausted"] = h.budget_exhausted;
              d["max_depth"] = h.max_depth;
              d["max_ccon"] = h.max_ccon;
              d["depth_bound_violations"] = h.depth_bound_violations;
              return d;
          },
          py::arg("formula"), py::arg("runs") = 1000, py::arg("seed") = 0, py::arg("jobs") = 1,
          "Empirical truncation frequency under report-halt policy");

    m.def("verify_sampler",
          [](const Formula& f, std::uint64_t runs, std::uint64_t seed, const std::string& mode,
             unsigned jobs, const py::kwargs& kw) {
              Params p = params_from_kwargs(f, 0.05, 1.0, kw);
              std::vector<Var> vars(f.num_vars());
              for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
              SeparatorPair sep = construct_sep(f, vars, p.degree_threshold, p.eta);
              SamplerFn sampler;
              if (mode == "rejection") {
                  sampler = [&](Rng& r) -> std::optional<std::uint64_t> {
                      PartialAssignment sigma(f.num_vars());
                      RejectionResult rr = rejection_sampling(f, sigma, sigma.unassigned_vars(), r,
                                                              RejectionBudget{p.rejection_budget});
                      if (rr.exhausted) return std::nullopt;
                      return pack_assignment(sigma);
                  };
              } else {
                  sampler = [&](Rng& r) -> std::optional<std::uint64_t> {
                      RunReport rep = solution_sampling(f, sep, p, r);
                      if (rep.outcome != Outcome::Sample) return std::nullopt;
                      PartialAssignment sigma(f.num_vars());
                      for (Var v = 1; v <= f.num_vars(); ++v)
                          sigma[v] = rep.assignment[v] ? VarState::One : VarState::Zero;
                      return pack_assignment(sigma);
                  };
              }
              Rng rng(seed);
              DistributionTest dt = distribution_test(sampler, f, runs, rng, jobs);
              py::dict d;
              d["tv_estimate"] = dt.tv_estimate;
              d["chi_square"] = dt.chi_square_stat;
              d["p_value"] = dt.p_value;
              d["halt_rate"] = dt.halt_rate;
              d["noise_radius"] = dt.noise_radius;
              d["solutions"] = dt.solutions;
              d["non_solutions"] = dt.histogram.non_solutions;
              return d;
          },
          py::arg("formula"), py::arg("runs") = 10000, py::arg("seed") = 0, py::arg("mode") = "recursive",
          py::arg("jobs") = 1, "Distribution test against the brute-force solution list");

    m.def("check_property",
          [](const Formula& f, const std::string& property_id, const std::string& mode,
             std::uint64_t trials, std::uint64_t seed, const py::kwargs& kw) {
              Params p = params_from_kwargs(f, 0.05, 1.0, kw);
              CheckCaps caps;
              if (kw.contains("domain_bound")) caps.domain_bound_override = kw["domain_bound"].cast<double>();
              if (kw.contains("max_ell")) caps.max_ell = kw["max_ell"].cast<std::uint32_t>();
              Rng rng(seed);
              CheckReport rep = check_property(
                  f, property_id, p, mode == "exhaustive" ? CheckMode::Exhaustive : CheckMode::Sampled,
                  trials, rng, caps);
              py::dict d;
              d["property"] = rep.property;
              d["mode"] = check_mode_name(rep.mode);
              d["verdict"] = verdict_name(rep.verdict);
              d["extremal_ratio"] = rep.extremal_ratio;
              d["note"] = rep.note;
              if (rep.verdict == Verdict::Violated) {
                  py::dict w;
                  w["vars"] = rep.witness.vars;
                  w["clauses"] = rep.witness.clauses;
                  w["sequence"] = rep.witness.sequence;
                  w["ell"] = rep.witness.ell;
                  w["lhs"] = rep.witness.lhs;
                  w["rhs"] = rep.witness.rhs;
                  w["reverified"] = verify_witness(f, property_id, p, rep.witness, caps);
                  d["witness"] = w;
              }
              return d;
          },
          py::arg("formula"), py::arg("property_id"), py::arg("mode") = "sampled",
          py::arg("trials") = 10000, py::arg("seed") = 0,
          "Structural property checker (p3.2 .. p3.10)");

    m.def("derive_params",
          [](std::uint32_t k, std::uint64_t n, std::uint64_t m, double eps, double xi) {
              return params_dict(derive_params(k, n, m, eps, xi));
          },
          py::arg("k"), py::arg("n"), py::arg("m"), py::arg("eps") = 0.05, py::arg("xi") = 1.0,
          "Profile parameter ledger for (k, n, m)");

    m.def("all_property_ids", &all_property_ids);
}
