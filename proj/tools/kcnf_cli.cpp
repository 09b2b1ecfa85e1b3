#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "kcnf/enumeration.hpp"
#include "kcnf/pipeline.hpp"
#include "kcnf/structure_checks.hpp"
#include "kcnf/verify.hpp"

using json = nlohmann::ordered_json;
using namespace kcnf;

namespace {

struct CommonOpts {
    std::string input_path;
    std::uint32_t gen_k = 0;
    std::uint64_t gen_n = 0;
    std::uint64_t gen_m = 0;
    double gen_alpha = -1;
    std::uint64_t gen_seed = 0;
    bool gen_seed_set = false;

    std::uint64_t seed = 0;
    unsigned jobs = 1;
    double eps = 0.05;
    double xi = 1.0;
    std::string delta_str, eta_str, s_str;
    double degree_threshold = -1;
    std::string policy = "fallback";
    std::string format = "json";
    std::uint64_t budget = 1000000;
    std::uint64_t step_budget = 0;
    std::uint32_t enum_cap = kDefaultEnumCap;
    bool certify = false;
    std::uint64_t certify_trajectories = 64;
};

void add_generator_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-i,--input", o.input_path, "DIMACS CNF input path");
    cmd->add_option("-k", o.gen_k, "generator: clause width");
    cmd->add_option("-n", o.gen_n, "generator: variable count");
    cmd->add_option("--m", o.gen_m, "generator: clause count");
    cmd->add_option("--alpha", o.gen_alpha, "generator: density, m = floor(alpha*n)");
    auto* gs = cmd->add_option("--gen-seed", o.gen_seed, "generator seed (defaults to --seed)");
    gs->each([&o](const std::string&) { o.gen_seed_set = true; });
}

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "master RNG seed");
    cmd->add_option("--jobs", o.jobs, "worker threads for fan-out subcommands");
    cmd->add_option("--eps", o.eps, "target total variation error");
    cmd->add_option("--xi", o.xi, "density slack in [2^{-k/8}, 1]");
    cmd->add_option("--delta", o.delta_str, "overflow mass override (rational a/b or decimal)");
    cmd->add_option("--eta", o.eta_str, "overlap parameter override (rational a/b or decimal)");
    cmd->add_option("--s", o.s_str, "truncation size override (integer or 'inf')");
    cmd->add_option("--degree-threshold", o.degree_threshold, "high-degree cutoff override (D)");
    cmd->add_option("--policy", o.policy, "halt policy: report_halt | fallback")
        ->check(CLI::IsMember({"report_halt", "fallback"}));
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--budget", o.budget, "rejection attempts per component (0 = unbounded)");
    cmd->add_option("--step-budget", o.step_budget, "total recursion-work guard (0 = none)");
    cmd->add_option("--enum-cap", o.enum_cap, "exact enumeration variable cap");
    cmd->add_flag("--certify-delta", o.certify, "probe the instance and auto-pick a certified delta");
    cmd->add_option("--certify-trajectories", o.certify_trajectories, "probe trajectories for --certify-delta");
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        return Rational(num, den);
    }
    return Rational::from_double(std::stod(s), 1LL << 30);
}

Formula load_formula(const CommonOpts& o) {
    bool have_input = !o.input_path.empty();
    bool have_gen = o.gen_k > 0 || o.gen_n > 0;
    if (have_input == have_gen)
        fail(Errc::InvalidDimensions, "provide exactly one of --input or a generator spec (-k/-n/--m|--alpha)");
    if (have_input) {
        std::ifstream in(o.input_path);
        if (!in) fail(Errc::MalformedHeader, "cannot open " + o.input_path);
        return parse_dimacs(in);
    }
    if (o.gen_k == 0 || o.gen_n == 0)
        fail(Errc::InvalidDimensions, "generator spec needs both -k and -n");
    std::uint64_t m = o.gen_m;
    if (o.gen_alpha >= 0) m = static_cast<std::uint64_t>(o.gen_alpha * static_cast<double>(o.gen_n));
    Rng rng(o.gen_seed_set ? o.gen_seed : o.seed);
    return generate_random_kcnf(o.gen_k, static_cast<Var>(o.gen_n), m, rng);
}

Params make_params(const Formula& f, const CommonOpts& o) {
    ParamOverrides ov;
    if (!o.eta_str.empty()) ov.eta = parse_rational(o.eta_str);
    if (!o.delta_str.empty()) ov.delta = parse_rational(o.delta_str);
    if (o.degree_threshold >= 0) ov.degree_threshold = o.degree_threshold;
    if (!o.s_str.empty()) {
        if (o.s_str == "inf") ov.s_infinite = true;
        else ov.s = std::stoull(o.s_str);
    }
    Params p = derive_params(std::max(2u, f.width()), std::max<std::uint64_t>(1, f.num_vars()),
                             f.num_clauses(), o.eps, o.xi, ov);
    p.rejection_budget = o.budget;
    p.step_budget = o.step_budget;
    p.enum_cap = o.enum_cap;
    if (o.certify) {
        std::vector<Var> vars(f.num_vars());
        for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
        SeparatorPair sep = construct_sep(f, vars, p.degree_threshold, p.eta);
        Rng rng(Rng::mix(o.seed ^ 0xCE271FULL));
        CertifyReport cert = certify_delta(f, sep, p, o.certify_trajectories, rng);
        ParamOverrides ov2 = ov;
        ov2.delta = pick_certified_delta(cert);
        p = derive_params(std::max(2u, f.width()), std::max<std::uint64_t>(1, f.num_vars()),
                          f.num_clauses(), o.eps, o.xi, ov2);
        p.rejection_budget = o.budget;
        p.step_budget = o.step_budget;
        p.enum_cap = o.enum_cap;
    }
    return p;
}

json params_json(const Params& p) {
    json j;
    j["k"] = p.k;
    j["n"] = p.n;
    j["m"] = p.m;
    j["alpha"] = p.alpha.str();
    j["eps"] = p.eps;
    j["xi"] = p.xi;
    j["eta"] = p.eta.str();
    j["eta_overridden"] = p.eta_overridden;
    j["eta_in_theory"] = p.eta_in_theory;
    j["degree_threshold"] = p.degree_threshold;
    j["degree_threshold_overridden"] = p.degree_threshold_overridden;
    j["delta"] = p.delta.str();
    j["delta_overridden"] = p.delta_overridden;
    j["delta_underflowed"] = p.delta_underflowed;
    j["s"] = p.s_infinite ? json("inf") : json(p.s);
    j["s_overridden"] = p.s_overridden;
    j["live_floor"] = p.live_floor;
    j["sep_overlap_min"] = p.sep_overlap_min;
    j["rejection_budget"] = p.rejection_budget;
    j["enum_cap"] = p.enum_cap;
    return j;
}

json counters_json(const SampleStats& s) {
    json j;
    j["tau_draws"] = s.tau_draws;
    j["overflow_calls"] = s.overflow_calls;
    j["leaf_count"] = s.leaf_count;
    j["max_depth"] = s.max_depth;
    j["max_ccon"] = s.max_ccon;
    j["rejection_attempts"] = s.rejection_attempts;
    j["depth_bound_violations"] = s.depth_bound_violations;
    return j;
}

json run_report_json(const RunReport& r, const Params& p) {
    json j;
    j["params"] = params_json(p);
    j["regime"] = regime_name(r.regime);
    j["outcome"] = outcome_name(r.outcome);
    j["path"] = r.path;
    if (r.outcome == Outcome::Halt) {
        j["halt"] = {{"site", r.halt.site == HaltSite::Recursing ? "recursing" : "sampling"},
                     {"ccon_size", r.halt.ccon_size},
                     {"depth", r.halt.depth}};
    }
    j["counters"] = counters_json(r.stats);
    j["timing"] = {{"wall_ms", r.wall_ms}};
    return j;
}

std::string solution_line(const std::vector<std::uint8_t>& assignment) {
    std::ostringstream os;
    os << "v";
    for (std::size_t v = 1; v < assignment.size(); ++v)
        os << " " << (assignment[v] ? static_cast<long long>(v) : -static_cast<long long>(v));
    os << " 0";
    return os.str();
}

int cmd_generate(const CommonOpts& o, const std::string& out_path) {
    CommonOpts gen = o;
    if (gen.input_path.empty() && gen.gen_k == 0)
        fail(Errc::InvalidDimensions, "generate needs -k and -n");
    Formula f = load_formula(gen);
    if (out_path.empty() || out_path == "-") {
        write_dimacs(f, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) fail(Errc::MalformedHeader, "cannot open " + out_path);
        write_dimacs(f, out);
    }
    return 0;
}

int cmd_sample(const CommonOpts& o, const std::string& mode) {
    Formula f = load_formula(o);
    Params p = make_params(f, o);
    Rng rng(o.seed);
    RunReport r;
    if (mode == "rejection") {
        Params pr = p;
        pr.regime = Regime::SmallDensity;  // force the plain rejection path
        r = sample_with_policy(f, pr, rng, HaltPolicy::ReportHalt);
        r.regime = p.regime;
    } else if (mode == "recursive") {
        r = solution_sampling(f, p, rng);
        if (r.outcome == Outcome::Halt && o.policy == "fallback") {
            Params pr = p;
            pr.regime = Regime::SmallDensity;
            RunReport fb = sample_with_policy(f, pr, rng, HaltPolicy::ReportHalt);
            fb.stats.merge(r.stats);
            fb.path = "recursive+fallback";
            fb.regime = p.regime;
            r = fb;
        }
    } else {
        r = sample_with_policy(f, p, rng,
                               o.policy == "fallback" ? HaltPolicy::FallbackRejection : HaltPolicy::ReportHalt);
    }
    if (r.outcome == Outcome::Sample) {
        // re-check the emitted assignment against the input formula
        PartialAssignment sigma(f.num_vars());
        for (Var v = 1; v <= f.num_vars(); ++v)
            sigma[v] = r.assignment[v] ? VarState::One : VarState::Zero;
        if (!satisfies_all(f, sigma)) fail(Errc::Internal, "emitted assignment violates the formula");
        std::cout << solution_line(r.assignment) << "\n";
    }
    std::cout << run_report_json(r, p).dump(2) << "\n";
    if (r.outcome == Outcome::Halt) return 2;
    if (r.outcome == Outcome::BudgetExhausted) return 3;
    return 0;
}

int cmd_count(const CommonOpts& o, std::uint64_t runs_per_step, bool no_shortcut) {
    Formula f = load_formula(o);
    CountOptions copts;
    copts.runs_per_step = runs_per_step;
    copts.use_exact_shortcut = !no_shortcut;
    copts.enum_cap = o.enum_cap;
    copts.rejection_budget = o.budget;
    Rng rng(o.seed);
    CountReport r = approx_count(f, copts, rng);
    json j;
    j["estimate"] = r.estimate;
    j["log2_estimate"] = r.log2_estimate;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["all_exact"] = r.all_exact;
    j["unsat_detected"] = r.unsat_detected;
    j["steps"] = r.steps.size();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_check(const CommonOpts& o, const std::string& property, const std::string& mode_str,
              std::uint64_t trials, double domain_bound) {
    Formula f = load_formula(o);
    Params p = make_params(f, o);
    std::vector<Var> vars(f.num_vars());
    for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
    SeparatorPair sep = construct_sep(f, vars, p.degree_threshold, p.eta);

    CheckMode mode = mode_str == "exhaustive" ? CheckMode::Exhaustive : CheckMode::Sampled;
    CheckCaps caps;
    if (domain_bound >= 0) caps.domain_bound_override = domain_bound;
    std::vector<std::string> ids =
        property == "all" ? all_property_ids() : std::vector<std::string>{property};

    json out;
    out["separator"] = {{"v_sep_size", sep.v_sep.size()}, {"c_sep_size", sep.c_sep.size()}};
    out["note"] =
        "verdicts describe this instance under the supplied parameters; they do not "
        "certify the whole-distribution statements";
    json checks = json::array();
    Rng rng(o.seed);
    for (const std::string& id : ids) {
        CheckReport rep = check_property(f, id, p, mode, trials, rng, caps);
        json cj;
        cj["property"] = rep.property;
        cj["mode"] = check_mode_name(rep.mode);
        cj["verdict"] = verdict_name(rep.verdict);
        cj["extremal_ratio"] = rep.extremal_ratio;
        cj["trials"] = rep.trials;
        if (!rep.note.empty()) cj["note"] = rep.note;
        if (rep.verdict == Verdict::Violated) {
            cj["witness"] = {{"vars", rep.witness.vars},
                             {"clauses", rep.witness.clauses},
                             {"sequence", rep.witness.sequence},
                             {"ell", rep.witness.ell},
                             {"lhs", rep.witness.lhs},
                             {"rhs", rep.witness.rhs},
                             {"reverified", verify_witness(f, id, p, rep.witness, caps)}};
        }
        checks.push_back(cj);
    }
    out["checks"] = checks;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const CommonOpts& o, std::uint64_t runs, const std::string& mode) {
    Formula f = load_formula(o);
    Params p = make_params(f, o);
    std::vector<Var> vars(f.num_vars());
    for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
    SeparatorPair sep = construct_sep(f, vars, p.degree_threshold, p.eta);
    Rng rng(o.seed);

    json out;
    out["params"] = params_json(p);
    out["solutions"] = brute_force_solutions(f, o.enum_cap).size();

    auto run_dist = [&](const std::string& which) {
        SamplerFn sampler;
        if (which == "rejection") {
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
        DistributionTest dt = distribution_test(sampler, f, runs, rng, o.jobs);
        json j;
        j["tv_estimate"] = dt.tv_estimate;
        j["chi_square"] = dt.chi_square_stat;
        j["p_value"] = dt.p_value;
        j["halt_rate"] = dt.halt_rate;
        j["noise_radius"] = dt.noise_radius;
        j["non_solutions"] = dt.histogram.non_solutions;
        return j;
    };

    if (mode == "rejection" || mode == "full") out["rejection"] = run_dist("rejection");
    if (mode == "recursive" || mode == "full") out["recursive"] = run_dist("recursive");
    if (mode == "full") {
        HaltRateReport h = measure_halt_rate(f, p, runs, rng, o.jobs);
        out["halt_rate"] = h.halt_rate;
        out["halts_recursing"] = h.halts_recursing;
        out["halts_sampling"] = h.halts_sampling;
        out["max_depth"] = h.max_depth;
        out["max_ccon"] = h.max_ccon;
        out["depth_bound_violations"] = h.depth_bound_violations;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_bench(const CommonOpts& o, std::uint64_t runs) {
    Formula f = load_formula(o);
    Params p = make_params(f, o);
    std::vector<Var> vars(f.num_vars());
    for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
    SeparatorPair sep = construct_sep(f, vars, p.degree_threshold, p.eta);

    struct Row {
        std::uint64_t run;
        std::string outcome;
        double wall_ms;
        SampleStats stats;
    };
    std::vector<Row> rows(runs);
    unsigned jobs = std::max(1u, o.jobs);
    Rng master(o.seed);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(jobs);
    auto worker = [&](unsigned w) {
        try {
            std::uint64_t lo = runs * w / jobs, hi = runs * (w + 1) / jobs;
            for (std::uint64_t i = lo; i < hi; ++i) {
                Rng local = master.split(i);
                RunReport r = solution_sampling(f, sep, p, local);
                rows[i] = Row{i, outcome_name(r.outcome), r.wall_ms, r.stats};
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    if (o.format == "csv") {
        std::cout << "run,outcome,wall_ms,tau_draws,overflow_calls,leaf_count,max_depth,max_ccon,"
                     "rejection_attempts\n";
        for (const Row& r : rows)
            std::cout << r.run << "," << r.outcome << "," << r.wall_ms << "," << r.stats.tau_draws << ","
                      << r.stats.overflow_calls << "," << r.stats.leaf_count << "," << r.stats.max_depth
                      << "," << r.stats.max_ccon << "," << r.stats.rejection_attempts << "\n";
    } else {
        json arr = json::array();
        for (const Row& r : rows) {
            json j;
            j["run"] = r.run;
            j["outcome"] = r.outcome;
            j["counters"] = counters_json(r.stats);
            j["timing"] = {{"wall_ms", r.wall_ms}};
            arr.push_back(j);
        }
        json out;
        out["params"] = params_json(p);
        out["runs"] = arr;
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kcnf: sampling, counting and checking for random k-CNF formulas"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string out_path, mode = "auto", property = "all", check_mode = "sampled", verify_mode = "full";
    std::uint64_t runs = 10000, runs_per_step = 10000, trials = 10000;
    bool no_shortcut = false;
    double domain_bound = -1;

    CLI::App* gen = app.add_subcommand("generate", "write a random k-CNF in DIMACS format");
    add_generator_flags(gen, o);
    add_param_flags(gen, o);
    gen->add_option("-o,--output", out_path, "output path (default stdout)");

    CLI::App* sample = app.add_subcommand("sample", "draw one (approximately) uniform solution");
    add_generator_flags(sample, o);
    add_param_flags(sample, o);
    sample->add_option("--mode", mode, "auto | rejection | recursive")
        ->check(CLI::IsMember({"auto", "rejection", "recursive"}));

    CLI::App* count = app.add_subcommand("count", "estimate the number of solutions");
    add_generator_flags(count, o);
    add_param_flags(count, o);
    count->add_option("--runs-per-step", runs_per_step, "samples per telescoping step");
    count->add_flag("--no-exact-shortcut", no_shortcut, "always estimate marginals by sampling");

    CLI::App* check = app.add_subcommand("check", "run structural property checkers");
    add_generator_flags(check, o);
    add_param_flags(check, o);
    check->add_option("--property", property, "p3.2 .. p3.10 or 'all'");
    check->add_option("--mode", check_mode, "exhaustive | sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    check->add_option("--trials", trials, "sampled-mode trials");
    check->add_option("--domain-bound", domain_bound, "override the statement's subset-size bound");

    CLI::App* verify = app.add_subcommand("verify", "statistical verification against brute force");
    add_generator_flags(verify, o);
    add_param_flags(verify, o);
    verify->add_option("--runs", runs, "sampler runs");
    verify->add_option("--mode", verify_mode, "rejection | recursive | full")
        ->check(CLI::IsMember({"rejection", "recursive", "full"}));

    CLI::App* bench = app.add_subcommand("bench", "repeated sampling runs with counters");
    add_generator_flags(bench, o);
    add_param_flags(bench, o);
    bench->add_option("--runs", runs, "number of runs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (gen->parsed()) return cmd_generate(o, out_path);
        if (sample->parsed()) return cmd_sample(o, mode);
        if (count->parsed()) return cmd_count(o, runs_per_step, no_shortcut);
        if (check->parsed()) return cmd_check(o, property, check_mode, trials, domain_bound);
        if (verify->parsed()) return cmd_verify(o, runs, verify_mode);
        if (bench->parsed()) return cmd_bench(o, runs);
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
