#include "kcnf/separator.hpp"

#include <algorithm>

namespace kcnf {

long long sep_overlap_threshold(const Rational& eta, std::uint32_t k) {
    Rational t = eta * Rational(2) * Rational(static_cast<long long>(k));
    return t.ceil();
}

std::vector<Var> high_degree_vars(const Formula& f, const std::vector<Var>& from_set, double degree_threshold) {
    std::vector<Var> hd;
    for (Var v : from_set)
        if (static_cast<double>(f.degree(v)) >= degree_threshold) hd.push_back(v);
    return hd;
}

SeparatorPair construct_sep(const Formula& f, const std::vector<Var>& candidate_vars,
                            double degree_threshold, const Rational& eta) {
    const Var n = f.num_vars();
    const std::size_t m = f.num_clauses();
    const long long threshold = std::max<long long>(1, sep_overlap_threshold(eta, f.width()));

    SeparatorPair out;
    out.in_v_sep.assign(n + 1, 0);
    out.in_c_sep.assign(m, 0);

    std::vector<long long> overlap(m, 0);
    std::vector<std::uint32_t> worklist;

    auto add_var = [&](Var v) {
        if (out.in_v_sep[v]) return;
        out.in_v_sep[v] = 1;
        for (std::uint32_t c : f.clauses_of(v)) {
            if (out.in_c_sep[c]) continue;
            if (++overlap[c] == threshold) worklist.push_back(c);
        }
    };

    for (Var v : high_degree_vars(f, candidate_vars, degree_threshold)) add_var(v);

    while (!worklist.empty()) {
        std::uint32_t c = worklist.back();
        worklist.pop_back();
        if (out.in_c_sep[c]) continue;
        out.in_c_sep[c] = 1;
        for (Var v : f.clause(c).vbl) add_var(v);
    }

    for (Var v = 1; v <= n; ++v)
        if (out.in_v_sep[v]) out.v_sep.push_back(v);
    for (std::uint32_t c = 0; c < m; ++c)
        if (out.in_c_sep[c]) out.c_sep.push_back(c);
    return out;
}

}  // namespace kcnf
