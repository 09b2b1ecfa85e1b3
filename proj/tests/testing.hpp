#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcnf/enumeration.hpp"
#include "kcnf/formula.hpp"
#include "kcnf/params.hpp"
#include "kcnf/pipeline.hpp"
#include "kcnf/rng.hpp"
#include "kcnf/separator.hpp"

namespace kcnf::testing {

// Clause from DIMACS-style signed ints.
inline Clause clause(std::initializer_list<int> lits) {
    Clause c;
    for (int l : lits) c.lits.push_back(Literal::from_dimacs(l));
    c.build_vbl();
    return c;
}

inline Formula formula(Var n, std::initializer_list<std::initializer_list<int>> cls) {
    std::vector<Clause> cs;
    std::uint32_t k = 0;
    for (auto& c : cls) {
        cs.push_back(clause(c));
        k = static_cast<std::uint32_t>(c.size());
    }
    return Formula(n, k, std::move(cs));
}

// Desk-scale parameter profile: small eta keeps the freezing machinery
// active so marginals of alive variables stay near 1/2.
inline Params desk_params(const Formula& f, Rational delta = Rational(1, 2),
                          bool s_inf = true, std::uint64_t s = 0) {
    ParamOverrides ov;
    ov.eta = Rational(1, 4 * static_cast<long long>(f.width()));
    ov.degree_threshold = 1e18;  // no separator at desk scale
    ov.delta = delta;
    if (s_inf) ov.s_infinite = true;
    else ov.s = s;
    return derive_params(f.width(), f.num_vars(), f.num_clauses(), 0.05, 1.0, ov);
}

inline SeparatorPair full_separator(const Formula& f, const Params& p) {
    std::vector<Var> vars(f.num_vars());
    for (Var v = 1; v <= f.num_vars(); ++v) vars[v - 1] = v;
    return construct_sep(f, vars, p.degree_threshold, p.eta);
}

// Seeded random satisfiable instance with a bounded solution count.
struct TestInstance {
    Formula f;
    std::uint64_t solutions = 0;
    std::uint64_t seed = 0;
};

inline std::optional<TestInstance> try_instance(std::uint64_t seed, std::uint32_t kmin, std::uint32_t kmax,
                                                Var nmin, Var nmax, std::uint64_t max_solutions) {
    Rng rng(seed);
    std::uint32_t k = kmin + static_cast<std::uint32_t>(rng.below(kmax - kmin + 1));
    Var n = nmin + static_cast<Var>(rng.below(nmax - nmin + 1));
    double alpha = 0.6 + 0.15 * static_cast<double>(rng.below(12));
    std::uint64_t m = static_cast<std::uint64_t>(alpha * n);
    if (m == 0) m = 1;
    Formula f = generate_random_kcnf(k, n, m, rng);
    std::uint64_t z = count_solutions(f);
    if (z == 0 || z > max_solutions) return std::nullopt;
    return TestInstance{std::move(f), z, seed};
}

inline TestInstance find_instance(std::uint64_t& seed_cursor, std::uint32_t kmin, std::uint32_t kmax,
                                  Var nmin, Var nmax, std::uint64_t max_solutions) {
    for (;;) {
        auto inst = try_instance(seed_cursor++, kmin, kmax, nmin, nmax, max_solutions);
        if (inst) return std::move(*inst);
    }
}

// Desk params with a per-instance certified delta: probes alive-fixing
// trajectories, then rebuilds the profile around the certified value.
inline Params certified_params(const Formula& f, std::uint64_t seed, std::uint64_t trajectories = 80,
                               bool s_inf = true, std::uint64_t s = 0) {
    Params probe = desk_params(f, Rational(1, 2), true, 0);
    SeparatorPair sep = full_separator(f, probe);
    Rng rng(Rng::mix(seed ^ 0xCE271FULL));
    CertifyReport cert = certify_delta(f, sep, probe, trajectories, rng);
    return desk_params(f, pick_certified_delta(cert), s_inf, s);
}

// |observed/trials - p| <= 3 sqrt(p(1-p)/trials)
inline bool within_3sigma(std::uint64_t observed, std::uint64_t trials, double p) {
    double phat = static_cast<double>(observed) / static_cast<double>(trials);
    double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
    return std::fabs(phat - p) <= 3.0 * sigma + 1e-12;
}

}  // namespace kcnf::testing
