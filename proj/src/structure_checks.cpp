#include "kcnf/structure_checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "kcnf/errors.hpp"

namespace kcnf {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::NoViolationFound: return "no_violation_found";
        case Verdict::Skipped: return "skipped";
    }
    return "?";
}

const char* check_mode_name(CheckMode m) { return m == CheckMode::Exhaustive ? "exhaustive" : "sampled"; }

std::vector<std::string> all_property_ids() {
    return {"p3.2", "p3.3.1", "p3.3.2", "p3.4", "p3.5", "p3.6", "p3.7", "p3.8", "p3.9", "p3.10"};
}

namespace {

// ---- graphs ---------------------------------------------------------------

// Variable incidence graph: u ~ v iff some clause contains both.
std::vector<std::vector<Var>> var_graph(const Formula& f) {
    std::vector<std::set<Var>> adj(f.num_vars() + 1);
    for (const Clause& c : f.clauses())
        for (Var u : c.vbl)
            for (Var w : c.vbl)
                if (u != w) adj[u].insert(w);
    std::vector<std::vector<Var>> out(f.num_vars() + 1);
    for (Var v = 1; v <= f.num_vars(); ++v) out[v].assign(adj[v].begin(), adj[v].end());
    return out;
}

// Clause incidence graph: c1 ~ c2 iff they share a variable.
std::vector<std::vector<std::uint32_t>> clause_graph(const Formula& f) {
    std::vector<std::set<std::uint32_t>> adj(f.num_clauses());
    for (Var v = 1; v <= f.num_vars(); ++v) {
        const auto& cs = f.clauses_of(v);
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                adj[cs[i]].insert(cs[j]);
                adj[cs[j]].insert(cs[i]);
            }
    }
    std::vector<std::vector<std::uint32_t>> out(f.num_clauses());
    for (std::uint32_t c = 0; c < f.num_clauses(); ++c) out[c].assign(adj[c].begin(), adj[c].end());
    return out;
}

bool is_connected_in(const std::vector<std::vector<Var>>& adj, const std::vector<Var>& set) {
    if (set.empty()) return false;
    if (set.size() == 1) return true;
    std::set<Var> want(set.begin(), set.end());
    std::vector<Var> stack{set[0]};
    std::set<Var> seen{set[0]};
    while (!stack.empty()) {
        Var v = stack.back();
        stack.pop_back();
        for (Var w : adj[v])
            if (want.count(w) && !seen.count(w)) { seen.insert(w); stack.push_back(w); }
    }
    return seen.size() == want.size();
}

// Enumerate every connected vertex set that contains `root` and avoids
// vertices in `banned`, up to max_size, each exactly once.
template <typename Node>
void enumerate_connected_from(const std::vector<std::vector<Node>>& adj, Node root,
                              const std::vector<std::uint8_t>& banned, std::size_t max_size,
                              const std::function<bool(const std::vector<Node>&)>& emit) {
    std::vector<Node> cur{root};
    std::vector<std::uint8_t> seen(adj.size(), 0);
    seen[root] = 1;
    for (std::size_t i = 0; i < banned.size(); ++i) seen[i] |= banned[i];
    bool stop = false;

    std::function<void(std::vector<Node>)> rec = [&](std::vector<Node> ext) {
        if (stop) return;
        if (!emit(cur)) { stop = true; return; }
        if (cur.size() == max_size) return;
        while (!ext.empty() && !stop) {
            Node u = ext.back();
            ext.pop_back();
            std::vector<Node> next = ext;
            std::vector<Node> added;
            for (Node w : adj[u])
                if (!seen[w]) { seen[w] = 1; added.push_back(w); next.push_back(w); }
            cur.push_back(u);
            rec(std::move(next));
            cur.pop_back();
            // u stays marked seen: sets without u that could include it were
            // already produced through this branch point
            for (Node w : added) seen[w] = 0;
        }
    };

    std::vector<Node> ext0;
    for (Node w : adj[root])
        if (!seen[w]) { seen[w] = 1; ext0.push_back(w); }
    rec(std::move(ext0));
}

double statement_domain_bound(const std::string& id, const Formula& f) {
    const double k = f.width();
    const double n = f.num_vars();
    const double lk = std::log2(std::max(2.0, k));
    if (id == "p3.3.1") return n / std::pow(2.0, k / lk);
    if (id == "p3.3.2") return n / std::pow(2.0, 2.0 * k / lk);
    if (id == "p3.4") return n / std::pow(2.0, 3.0 * k / lk);
    if (id == "p3.10") return n / std::pow(2.0, 4.0 * k);
    return n;
}

struct Eval {
    bool violated = false;
    double ratio = 0;
    Witness witness;
};

void track(CheckReport& rep, const Eval& e) {
    rep.extremal_ratio = std::max(rep.extremal_ratio, e.ratio);
    if (e.violated && rep.verdict != Verdict::Violated) {
        rep.verdict = Verdict::Violated;
        rep.witness = e.witness;
    }
}

// ---- property evaluators on a candidate witness ---------------------------

Eval eval_331(const Formula& f, const Params& p, const std::vector<Var>& vset) {
    Eval e;
    std::vector<std::uint8_t> in(f.num_vars() + 1, 0);
    for (Var v : vset) in[v] = 1;
    long long count = 0;
    std::vector<std::uint32_t> inside;
    for (std::uint32_t c = 0; c < f.num_clauses(); ++c) {
        bool sub = true;
        for (Var u : f.clause(c).vbl)
            if (!in[u]) { sub = false; break; }
        if (sub) { ++count; inside.push_back(c); }
    }
    // count <= (1+eta)*|V'|/k, exactly: count*k <= (1+eta)*|V'|
    Rational lhs(count * static_cast<long long>(f.width()));
    Rational rhs = (Rational(1) + p.eta) * Rational(static_cast<long long>(vset.size()));
    e.violated = lhs > rhs;
    e.ratio = rhs.positive() ? lhs.to_double() / rhs.to_double() : (count > 0 ? 1e18 : 0);
    e.witness.vars = vset;
    e.witness.clauses = inside;
    e.witness.lhs = static_cast<double>(count);
    e.witness.rhs = rhs.to_double() / f.width();
    return e;
}

Eval eval_332(const Formula& f, const Params& p, const std::vector<std::uint32_t>& cset) {
    Eval e;
    std::set<Var> uni;
    for (std::uint32_t c : cset)
        for (Var u : f.clause(c).vbl) uni.insert(u);
    // k*|C'|/(1+eta) <= |union|, exactly: k*|C'| <= (1+eta)*|union|
    Rational lhs(static_cast<long long>(f.width()) * static_cast<long long>(cset.size()));
    Rational rhs = (Rational(1) + p.eta) * Rational(static_cast<long long>(uni.size()));
    e.violated = lhs > rhs;
    e.ratio = rhs.positive() ? lhs.to_double() / rhs.to_double() : (cset.empty() ? 0 : 1e18);
    e.witness.clauses = cset;
    e.witness.vars.assign(uni.begin(), uni.end());
    e.witness.lhs = lhs.to_double() / (1.0 + p.eta.to_double());
    e.witness.rhs = static_cast<double>(uni.size());
    return e;
}

Eval eval_34(const Formula& f, const Params& p, const std::vector<Var>& vset) {
    Eval e;
    std::vector<std::uint8_t> in(f.num_vars() + 1, 0);
    for (Var v : vset) in[v] = 1;
    const std::uint32_t k = f.width();
    std::vector<long long> overlap_count(k + 1, 0);  // N_t = #clauses with |vbl ∩ V'| >= t
    for (const Clause& c : f.clauses()) {
        std::uint32_t o = 0;
        for (Var u : c.vbl)
            if (in[u]) ++o;
        if (o > 0) ++overlap_count[o];
    }
    for (std::uint32_t t = k; t >= 1; --t) {
        if (t < k) overlap_count[t] += overlap_count[t + 1];
    }
    Rational eta_k = p.eta * Rational(k);
    long long t_min = std::max<long long>(1, eta_k.ceil());
    for (long long t = t_min; t <= k; ++t) {
        // need |V'| >= (t/k - eta)*k*N_t = (t - eta*k)*N_t
        Rational factor = Rational(t) - eta_k;
        if (!factor.positive()) continue;
        Rational need = factor * Rational(overlap_count[t]);
        Rational have(static_cast<long long>(vset.size()));
        double ratio = have.positive() ? need.to_double() / have.to_double() : (need.positive() ? 1e18 : 0);
        if (ratio > e.ratio) {
            e.ratio = ratio;
            e.witness.vars = vset;
            e.witness.ell = t;
            e.witness.lhs = need.to_double();
            e.witness.rhs = have.to_double();
        }
        if (need > have) e.violated = true;
    }
    return e;
}

Eval eval_35_root(const Formula& f, const Params& p, const std::vector<std::vector<std::uint32_t>>& cg,
                  std::uint32_t root, std::uint32_t max_ell) {
    Eval e;
    std::vector<std::uint64_t> count_by_size(max_ell + 1, 0);
    std::vector<std::uint8_t> banned(f.num_clauses(), 0);
    enumerate_connected_from<std::uint32_t>(cg, root, banned, max_ell,
                                            [&](const std::vector<std::uint32_t>& s) {
                                                ++count_by_size[s.size()];
                                                return true;
                                            });
    const long double alpha = static_cast<long double>(f.num_clauses()) / f.num_vars();
    const long double n = f.num_vars();
    const long double base = 2.718281828459045L * f.width() * f.width() * alpha;
    for (std::uint32_t ell = 1; ell <= max_ell; ++ell) {
        long double rhs = alpha * alpha * n * n * n * n * powl(base, ell);
        long double lhs = count_by_size[ell];
        double ratio = rhs > 0 ? static_cast<double>(lhs / rhs) : (lhs > 0 ? 1e18 : 0);
        if (ratio > e.ratio) {
            e.ratio = ratio;
            e.witness.clauses = {root};
            e.witness.ell = ell;
            e.witness.lhs = static_cast<double>(lhs);
            e.witness.rhs = static_cast<double>(rhs);
        }
        if (lhs > rhs) e.violated = true;
    }
    return e;
}

Eval eval_36(const Formula& f, const Params&, const std::vector<std::vector<Var>>& vg,
             const std::vector<Var>& vset) {
    Eval e;
    std::set<Var> closed(vset.begin(), vset.end());
    for (Var v : vset)
        for (Var w : vg[v]) closed.insert(w);
    const double alpha = static_cast<double>(f.num_clauses()) / f.num_vars();
    const double k = f.width();
    double cap = std::floor(k * std::log2(static_cast<double>(f.num_vars())));
    double rhs = 3.0 * k * k * k * k * alpha * std::max<double>(static_cast<double>(vset.size()), cap);
    double lhs = static_cast<double>(closed.size());
    e.ratio = rhs > 0 ? lhs / rhs : 1e18;
    e.violated = lhs > rhs;
    e.witness.vars = vset;
    e.witness.lhs = lhs;
    e.witness.rhs = rhs;
    return e;
}

Eval eval_39(const Formula& f, const Params& p, const std::vector<Var>& vset) {
    Eval e;
    double logn = std::log2(static_cast<double>(f.num_vars()));
    if (static_cast<double>(vset.size()) < logn) return e;  // outside the quantified domain
    long long hd = 0;
    std::vector<Var> hd_vars;
    for (Var v : vset)
        if (static_cast<double>(f.degree(v)) >= p.degree_threshold) { ++hd; hd_vars.push_back(v); }
    double rhs = static_cast<double>(vset.size()) / (static_cast<double>(f.width()) * f.width());
    e.ratio = rhs > 0 ? static_cast<double>(hd) / rhs : (hd > 0 ? 1e18 : 0);
    e.violated = static_cast<double>(hd) > rhs;
    e.witness.vars = vset;
    e.witness.lhs = static_cast<double>(hd);
    e.witness.rhs = rhs;
    e.witness.clauses.clear();
    return e;
}

// Peeling closure: any clause outside cur overlapping the accumulated
// variable set by >= 6 joins; overlap only grows, so the closure is unique.
Eval eval_310(const Formula& f, const Params&, const std::vector<std::uint32_t>& cset) {
    Eval e;
    std::vector<std::uint8_t> in_cur(f.num_clauses(), 0);
    std::vector<std::uint8_t> in_vars(f.num_vars() + 1, 0);
    for (std::uint32_t c : cset) {
        in_cur[c] = 1;
        for (Var u : f.clause(c).vbl) in_vars[u] = 1;
    }
    std::vector<std::uint32_t> sequence;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::uint32_t c = 0; c < f.num_clauses(); ++c) {
            if (in_cur[c]) continue;
            std::uint32_t overlap = 0;
            for (Var u : f.clause(c).vbl)
                if (in_vars[u]) ++overlap;
            if (overlap >= 6) {
                in_cur[c] = 1;
                for (Var u : f.clause(c).vbl) in_vars[u] = 1;
                sequence.push_back(c);
                grew = true;
            }
        }
    }
    long long ell = static_cast<long long>(sequence.size());
    long long bound = static_cast<long long>(cset.size());
    e.violated = ell > bound;
    e.ratio = bound > 0 ? static_cast<double>(ell) / bound : (ell > 0 ? 1e18 : 0);
    e.witness.clauses = cset;
    e.witness.sequence = sequence;
    e.witness.ell = ell;
    e.witness.lhs = static_cast<double>(ell);
    e.witness.rhs = static_cast<double>(bound);
    return e;
}

// ---- candidate generation -------------------------------------------------

std::vector<Var> random_var_subset(const Formula& f, std::size_t max_size, Rng& rng) {
    std::size_t t = 1 + rng.below(std::max<std::size_t>(1, max_size));
    std::set<Var> s;
    for (std::size_t i = 0; i < t; ++i) s.insert(static_cast<Var>(1 + rng.below(f.num_vars())));
    return {s.begin(), s.end()};
}

std::vector<Var> clause_seeded_subset(const Formula& f, std::size_t max_size, Rng& rng) {
    if (f.num_clauses() == 0) return random_var_subset(f, max_size, rng);
    std::set<Var> s;
    std::size_t picks = 1 + rng.below(3);
    for (std::size_t i = 0; i < picks; ++i) {
        const Clause& c = f.clause(static_cast<std::uint32_t>(rng.below(f.num_clauses())));
        for (Var u : c.vbl) {
            if (s.size() >= max_size) break;
            s.insert(u);
        }
    }
    return {s.begin(), s.end()};
}

std::vector<Var> grow_connected(const Formula& f, const std::vector<std::vector<Var>>& vg,
                                std::size_t target, Rng& rng) {
    Var seed;
    if (f.num_clauses() > 0) {
        const Clause& c = f.clause(static_cast<std::uint32_t>(rng.below(f.num_clauses())));
        seed = c.vbl[rng.below(c.vbl.size())];
    } else {
        seed = static_cast<Var>(1 + rng.below(f.num_vars()));
    }
    std::set<Var> cur{seed};
    std::vector<Var> frontier(vg[seed].begin(), vg[seed].end());
    while (cur.size() < target && !frontier.empty()) {
        std::size_t i = rng.below(frontier.size());
        Var v = frontier[i];
        frontier.erase(frontier.begin() + static_cast<long>(i));
        if (cur.count(v)) continue;
        cur.insert(v);
        for (Var w : vg[v])
            if (!cur.count(w)) frontier.push_back(w);
    }
    return {cur.begin(), cur.end()};
}

std::vector<std::uint32_t> random_clause_subset(const Formula& f, std::size_t max_size, Rng& rng) {
    std::set<std::uint32_t> s;
    std::size_t t = 1 + rng.below(std::max<std::size_t>(1, max_size));
    for (std::size_t i = 0; i < t && s.size() < f.num_clauses(); ++i)
        s.insert(static_cast<std::uint32_t>(rng.below(f.num_clauses())));
    return {s.begin(), s.end()};
}

}  // namespace

CheckReport check_property(const Formula& f, const std::string& id, const Params& params,
                           CheckMode mode, std::uint64_t trials, Rng& rng, const CheckCaps& caps) {
    CheckReport rep;
    rep.property = id;
    rep.mode = mode;
    rep.trials = trials;
    rep.verdict = mode == CheckMode::Exhaustive ? Verdict::Holds : Verdict::NoViolationFound;

    const double domain = caps.domain_bound_override.value_or(statement_domain_bound(id, f));
    if (caps.domain_bound_override) rep.note = "domain bound overridden";

    if (id == "p3.2") {
        // always exhaustive
        for (std::uint32_t c = 0; c < f.num_clauses(); ++c) {
            const Clause& cl = f.clause(c);
            long long lhs = static_cast<long long>(f.width()) - 2;
            long long have = static_cast<long long>(cl.vbl.size());
            double ratio = have > 0 ? static_cast<double>(lhs) / have : 1e18;
            rep.extremal_ratio = std::max(rep.extremal_ratio, ratio);
            if (have < lhs && rep.verdict != Verdict::Violated) {
                rep.verdict = Verdict::Violated;
                rep.witness.clauses = {c};
                rep.witness.lhs = static_cast<double>(have);
                rep.witness.rhs = static_cast<double>(lhs);
            }
        }
        if (rep.verdict == Verdict::NoViolationFound) rep.verdict = Verdict::Holds;
        rep.mode = CheckMode::Exhaustive;
        return rep;
    }

    if (id == "p3.7") {
        double rhs = 4.0 * f.width() * f.alpha().to_double() +
                     6.0 * std::log2(static_cast<double>(f.num_vars()));
        for (Var v = 1; v <= f.num_vars(); ++v) {
            double lhs = static_cast<double>(f.degree(v));
            double ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? 1e18 : 0);
            rep.extremal_ratio = std::max(rep.extremal_ratio, ratio);
            if (lhs > rhs && rep.verdict != Verdict::Violated) {
                rep.verdict = Verdict::Violated;
                rep.witness.vars = {v};
                rep.witness.lhs = lhs;
                rep.witness.rhs = rhs;
            }
        }
        if (rep.verdict == Verdict::NoViolationFound) rep.verdict = Verdict::Holds;
        rep.mode = CheckMode::Exhaustive;
        return rep;
    }

    if (id == "p3.8") {
        double rhs = static_cast<double>(f.num_vars()) / std::pow(2.0, 4.0 * f.width());
        std::vector<Var> hd;
        for (Var v = 1; v <= f.num_vars(); ++v)
            if (static_cast<double>(f.degree(v)) >= params.degree_threshold) hd.push_back(v);
        double lhs = static_cast<double>(hd.size());
        rep.extremal_ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? 1e18 : 0);
        if (lhs > rhs) {
            rep.verdict = Verdict::Violated;
            rep.witness.vars = hd;
            rep.witness.lhs = lhs;
            rep.witness.rhs = rhs;
        } else {
            rep.verdict = Verdict::Holds;
        }
        rep.mode = CheckMode::Exhaustive;
        return rep;
    }

    if (id == "p3.5") {
        auto cg = clause_graph(f);
        std::uint32_t max_ell = caps.max_ell;
        if (mode == CheckMode::Exhaustive) {
            for (std::uint32_t c = 0; c < f.num_clauses(); ++c) track(rep, eval_35_root(f, params, cg, c, max_ell));
            if (rep.verdict == Verdict::NoViolationFound) rep.verdict = Verdict::Holds;
            rep.note = "ell <= " + std::to_string(max_ell);
        } else {
            for (std::uint64_t t = 0; t < trials && f.num_clauses() > 0; ++t) {
                std::uint32_t c = static_cast<std::uint32_t>(rng.below(f.num_clauses()));
                track(rep, eval_35_root(f, params, cg, c, max_ell));
                if (rep.verdict == Verdict::Violated) break;
            }
        }
        return rep;
    }

    if (id == "p3.3.1" || id == "p3.4") {
        const std::size_t max_size = static_cast<std::size_t>(std::max(0.0, std::min(domain, static_cast<double>(f.num_vars()))));
        if (mode == CheckMode::Exhaustive) {
            if (f.num_vars() > caps.max_subset_n)
                fail(Errc::UnsupportedMode, "exhaustive subset check needs n <= " + std::to_string(caps.max_subset_n));
            if (max_size < 1) {
                rep.verdict = Verdict::Holds;
                rep.note += (rep.note.empty() ? "" : "; ") + std::string("quantified domain is empty");
                return rep;
            }
            const std::uint64_t total = 1ULL << f.num_vars();
            for (std::uint64_t mask = 1; mask < total; ++mask) {
                if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_size) continue;
                std::vector<Var> vs;
                for (Var v = 1; v <= f.num_vars(); ++v)
                    if (mask & (1ULL << (v - 1))) vs.push_back(v);
                track(rep, id == "p3.3.1" ? eval_331(f, params, vs) : eval_34(f, params, vs));
                if (rep.verdict == Verdict::Violated) return rep;
            }
            if (rep.verdict == Verdict::NoViolationFound) rep.verdict = Verdict::Holds;
        } else {
            if (max_size < 1) return rep;
            for (std::uint64_t t = 0; t < trials; ++t) {
                std::vector<Var> vs = rng.bit() ? clause_seeded_subset(f, max_size, rng)
                                                : random_var_subset(f, max_size, rng);
                if (vs.empty() || vs.size() > max_size) continue;
                track(rep, id == "p3.3.1" ? eval_331(f, params, vs) : eval_34(f, params, vs));
                if (rep.verdict == Verdict::Violated) return rep;
            }
        }
        return rep;
    }

    if (id == "p3.3.2" || id == "p3.10") {
        const std::size_t max_size = static_cast<std::size_t>(std::max(0.0, std::min(domain, static_cast<double>(f.num_clauses()))));
        if (mode == CheckMode::Exhaustive) {
            if (f.num_clauses() > 20)
                fail(Errc::UnsupportedMode, "exhaustive clause-subset check needs m <= 20");
            if (id == "p3.10") track(rep, eval_310(f, params, {}));  // empty C' is in the domain
            if (max_size >= 1) {
                const std::uint64_t total = 1ULL << f.num_clauses();
                for (std::uint64_t mask = 1; mask < total; ++mask) {
                    std::size_t pc = static_cast<std::size_t>(__builtin_popcountll(mask));
                    if (pc > std::min<std::size_t>(max_size, caps.max_clause_subset)) continue;
                    std::vector<std::uint32_t> cs;
                    for (std::uint32_t c = 0; c < f.num_clauses(); ++c)
                        if (mask & (1ULL << c)) cs.push_back(c);
                    track(rep, id == "p3.3.2" ? eval_332(f, params, cs) : eval_310(f, params, cs));
                    if (rep.verdict == Verdict::Violated) return rep;
                }
            } else if (id == "p3.3.2") {
                rep.note += (rep.note.empty() ? "" : "; ") + std::string("quantified domain is empty");
            }
            if (rep.verdict == Verdict::NoViolationFound) rep.verdict = Verdict::Holds;
        } else {
            if (max_size < 1 && id == "p3.3.2") return rep;
            for (std::uint64_t t = 0; t < trials && f.num_clauses() > 0; ++t) {
                std::vector<std::uint32_t> cs =
                    random_clause_subset(f, std::min<std::size_t>(std::max<std::size_t>(1, max_size), caps.max_clause_subset), rng);
                if (cs.size() > std::max<std::size_t>(1, max_size)) continue;
                track(rep, id == "p3.3.2" ? eval_332(f, params, cs) : eval_310(f, params, cs));
                if (rep.verdict == Verdict::Violated) return rep;
            }
        }
        return rep;
    }

    if (id == "p3.6" || id == "p3.9") {
        auto vg = var_graph(f);
        if (mode == CheckMode::Exhaustive) {
            if (f.num_vars() > caps.max_subset_n)
                fail(Errc::UnsupportedMode, "exhaustive connected-set check needs n <= " + std::to_string(caps.max_subset_n));
            std::vector<std::uint8_t> banned(f.num_vars() + 1, 0);
            for (Var root = 1; root <= f.num_vars(); ++root) {
                enumerate_connected_from<Var>(vg, root, banned, caps.max_connected_size,
                                              [&](const std::vector<Var>& s) {
                                                  std::vector<Var> vs(s);
                                                  std::sort(vs.begin(), vs.end());
                                                  track(rep, id == "p3.6" ? eval_36(f, params, vg, vs)
                                                                          : eval_39(f, params, vs));
                                                  return rep.verdict != Verdict::Violated;
                                              });
                banned[root] = 1;
                if (rep.verdict == Verdict::Violated) return rep;
            }
            if (rep.verdict == Verdict::NoViolationFound) rep.verdict = Verdict::Holds;
            rep.note += (rep.note.empty() ? "" : "; ") + ("connected sets up to size " + std::to_string(caps.max_connected_size));
        } else {
            for (std::uint64_t t = 0; t < trials && f.num_vars() > 0; ++t) {
                std::size_t target = 1 + rng.below(std::max<std::size_t>(1, caps.max_connected_size));
                std::vector<Var> vs = grow_connected(f, vg, target, rng);
                track(rep, id == "p3.6" ? eval_36(f, params, vg, vs) : eval_39(f, params, vs));
                if (rep.verdict == Verdict::Violated) return rep;
            }
        }
        return rep;
    }

    fail(Errc::UnsupportedMode, "unknown property id: " + id);
}

bool verify_witness(const Formula& f, const std::string& id, const Params& params,
                    const Witness& w, const CheckCaps&) {
    if (id == "p3.2") {
        if (w.clauses.size() != 1) return false;
        const Clause& cl = f.clause(w.clauses[0]);
        return static_cast<long long>(cl.vbl.size()) < static_cast<long long>(f.width()) - 2;
    }
    if (id == "p3.3.1") return eval_331(f, params, w.vars).violated;
    if (id == "p3.3.2") return eval_332(f, params, w.clauses).violated;
    if (id == "p3.4") return eval_34(f, params, w.vars).violated;
    if (id == "p3.5") {
        if (w.clauses.size() != 1) return false;
        auto cg = clause_graph(f);
        Eval e = eval_35_root(f, params, cg, w.clauses[0], static_cast<std::uint32_t>(w.ell));
        return e.violated;
    }
    if (id == "p3.6") {
        auto vg = var_graph(f);
        if (!is_connected_in(vg, w.vars)) return false;
        return eval_36(f, params, vg, w.vars).violated;
    }
    if (id == "p3.7") {
        if (w.vars.size() != 1) return false;
        double rhs = 4.0 * f.width() * f.alpha().to_double() + 6.0 * std::log2(static_cast<double>(f.num_vars()));
        return static_cast<double>(f.degree(w.vars[0])) > rhs;
    }
    if (id == "p3.8") {
        for (Var v : w.vars)
            if (static_cast<double>(f.degree(v)) < params.degree_threshold) return false;
        return static_cast<double>(w.vars.size()) >
               static_cast<double>(f.num_vars()) / std::pow(2.0, 4.0 * f.width());
    }
    if (id == "p3.9") {
        auto vg = var_graph(f);
        if (!is_connected_in(vg, w.vars)) return false;
        return eval_39(f, params, w.vars).violated;
    }
    if (id == "p3.10") {
        // replay the sequence instead of recomputing the closure
        std::vector<std::uint8_t> in_vars(f.num_vars() + 1, 0);
        std::vector<std::uint8_t> used(f.num_clauses(), 0);
        for (std::uint32_t c : w.clauses) {
            used[c] = 1;
            for (Var u : f.clause(c).vbl) in_vars[u] = 1;
        }
        for (std::uint32_t c : w.sequence) {
            if (used[c]) return false;
            std::uint32_t overlap = 0;
            for (Var u : f.clause(c).vbl)
                if (in_vars[u]) ++overlap;
            if (overlap < 6) return false;
            used[c] = 1;
            for (Var u : f.clause(c).vbl) in_vars[u] = 1;
        }
        return w.sequence.size() > w.clauses.size();
    }
    return false;
}

}  // namespace kcnf
