#include "kcnf/formula.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace kcnf {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::MalformedHeader: return "MalformedHeader";
        case Errc::VariableOutOfRange: return "VariableOutOfRange";
        case Errc::NonUniformWidth: return "NonUniformWidth";
        case Errc::ClauseCountMismatch: return "ClauseCountMismatch";
        case Errc::InvalidDimensions: return "InvalidDimensions";
        case Errc::SNotUnassigned: return "SNotUnassigned";
        case Errc::VariableNotUntouched: return "VariableNotUntouched";
        case Errc::ComponentTooLarge: return "ComponentTooLarge";
        case Errc::UnsatisfiableComponent: return "UnsatisfiableComponent";
        case Errc::LocalUniformityViolated: return "LocalUniformityViolated";
        case Errc::InvalidSlack: return "InvalidSlack";
        case Errc::DeltaNotPositive: return "DeltaNotPositive";
        case Errc::DegenerateMarginal: return "DegenerateMarginal";
        case Errc::UnsupportedMode: return "UnsupportedMode";
        case Errc::TooLarge: return "TooLarge";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

void Clause::build_vbl() {
    vbl.clear();
    vbl.reserve(lits.size());
    for (const Literal& l : lits) vbl.push_back(l.var());
    std::sort(vbl.begin(), vbl.end());
    vbl.erase(std::unique(vbl.begin(), vbl.end()), vbl.end());
}

Formula::Formula(Var n, std::uint32_t k, std::vector<Clause> clauses)
    : n_(n), k_(k), clauses_(std::move(clauses)) {
    var_to_clauses_.assign(n_ + 1, {});
    for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
        Clause& cl = clauses_[c];
        if (cl.vbl.empty()) cl.build_vbl();
        for (const Literal& l : cl.lits) {
            if (l.var() < 1 || l.var() > n_)
                fail(Errc::VariableOutOfRange,
                     "variable " + std::to_string(l.var()) + " out of range [1," + std::to_string(n_) + "]");
        }
        if (cl.lits.size() != k_)
            fail(Errc::NonUniformWidth, "clause " + std::to_string(c) + " has width " +
                                            std::to_string(cl.lits.size()) + ", expected " + std::to_string(k_));
        for (Var v : cl.vbl) var_to_clauses_[v].push_back(c);
    }
}

std::size_t Formula::max_degree() const {
    std::size_t d = 0;
    for (Var v = 1; v <= n_; ++v) d = std::max(d, var_to_clauses_[v].size());
    return d;
}

bool satisfies_all(const Formula& f, const PartialAssignment& sigma) {
    for (const Clause& c : f.clauses())
        if (!sigma.satisfies(c)) return false;
    return true;
}

Formula parse_dimacs(std::istream& in) {
    std::string line;
    Var n = 0;
    std::uint64_t m = 0;
    bool have_header = false;
    std::vector<Clause> clauses;
    std::vector<int> pending;
    std::uint32_t k = 0;
    bool k_known = false;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size() || line[i] == 'c') continue;
        if (line[i] == 'p') {
            std::istringstream hs(line.substr(i));
            std::string p, cnf;
            long long hn = -1, hm = -1;
            hs >> p >> cnf >> hn >> hm;
            if (p != "p" || cnf != "cnf" || hn < 0 || hm < 0 || hs.fail())
                fail(Errc::MalformedHeader, "bad DIMACS header: " + line);
            n = static_cast<Var>(hn);
            m = static_cast<std::uint64_t>(hm);
            have_header = true;
            continue;
        }
        if (!have_header) fail(Errc::MalformedHeader, "clause before 'p cnf' header");
        std::istringstream ls(line.substr(i));
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                Clause cl;
                cl.lits.reserve(pending.size());
                for (int d : pending) {
                    Var v = static_cast<Var>(d < 0 ? -d : d);
                    if (v < 1 || v > n)
                        fail(Errc::VariableOutOfRange, "literal " + std::to_string(d) + " out of range, n=" + std::to_string(n));
                    cl.lits.push_back(Literal::from_dimacs(d));
                }
                if (!k_known) {
                    k = static_cast<std::uint32_t>(cl.lits.size());
                    k_known = true;
                } else if (cl.lits.size() != k) {
                    fail(Errc::NonUniformWidth, "mixed clause widths: expected " + std::to_string(k) +
                                                    ", got " + std::to_string(cl.lits.size()));
                }
                cl.build_vbl();
                clauses.push_back(std::move(cl));
                pending.clear();
            } else {
                pending.push_back(lit);
            }
        }
    }
    if (!have_header) fail(Errc::MalformedHeader, "missing 'p cnf' header");
    if (!pending.empty()) fail(Errc::ClauseCountMismatch, "unterminated clause at end of input");
    if (clauses.size() != m)
        fail(Errc::ClauseCountMismatch, "header announces " + std::to_string(m) + " clauses, found " +
                                            std::to_string(clauses.size()));
    if (!k_known) k = 0;
    return Formula(n, k, std::move(clauses));
}

Formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

void write_dimacs(const Formula& f, std::ostream& out) {
    out << "p cnf " << f.num_vars() << " " << f.num_clauses() << "\n";
    for (const Clause& c : f.clauses()) {
        for (const Literal& l : c.lits) out << l.to_dimacs() << " ";
        out << "0\n";
    }
}

std::string write_dimacs(const Formula& f) {
    std::ostringstream out;
    write_dimacs(f, out);
    return out.str();
}

Formula generate_random_kcnf(std::uint32_t k, Var n, std::uint64_t m, Rng& rng) {
    if (k < 1 || n < 1) fail(Errc::InvalidDimensions, "need k >= 1 and n >= 1");
    std::vector<Clause> clauses(m);
    for (std::uint64_t c = 0; c < m; ++c) {
        Clause& cl = clauses[c];
        cl.lits.reserve(k);
        for (std::uint32_t j = 0; j < k; ++j) {
            std::uint64_t r = rng.below(2 * static_cast<std::uint64_t>(n));
            cl.lits.push_back(Literal(static_cast<Var>(r >> 1) + 1, (r & 1) != 0));
        }
        cl.build_vbl();
    }
    return Formula(n, k, std::move(clauses));
}

std::vector<Component> components_under(const Formula& f, const PartialAssignment& sigma,
                                        const std::vector<Var>& S) {
    for (Var v : S)
        if (!sigma.unassigned(v))
            fail(Errc::SNotUnassigned, "S contains assigned variable " + std::to_string(v));

    const Var n = f.num_vars();
    std::vector<std::uint8_t> clause_live(f.num_clauses(), 0);
    for (std::uint32_t c = 0; c < f.num_clauses(); ++c)
        clause_live[c] = sigma.satisfies(f.clause(c)) ? 0 : 1;

    std::vector<int> var_comp(n + 1, -1);
    std::vector<int> clause_comp(f.num_clauses(), -1);
    std::vector<Component> comps;

    for (Var s : S) {
        if (var_comp[s] >= 0) continue;
        int id = static_cast<int>(comps.size());
        comps.emplace_back();
        Component& comp = comps.back();
        std::vector<Var> stack{s};
        var_comp[s] = id;
        while (!stack.empty()) {
            Var v = stack.back();
            stack.pop_back();
            comp.vars.push_back(v);
            for (std::uint32_t c : f.clauses_of(v)) {
                if (!clause_live[c] || clause_comp[c] >= 0) continue;
                clause_comp[c] = id;
                comp.clauses.push_back(c);
                for (Var u : f.clause(c).vbl) {
                    if (!sigma.unassigned(u) || var_comp[u] >= 0) continue;
                    var_comp[u] = id;
                    stack.push_back(u);
                }
            }
        }
        std::sort(comp.vars.begin(), comp.vars.end());
        std::sort(comp.clauses.begin(), comp.clauses.end());
    }
    return comps;
}

}  // namespace kcnf
