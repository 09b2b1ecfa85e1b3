#include "kcnf/enumeration.hpp"

#include <algorithm>
#include <string>

namespace kcnf {

namespace {

struct MaskedClauses {
    std::vector<std::uint64_t> pos;  // bit set where a positive literal lives
    std::vector<std::uint64_t> neg;
    bool contradiction = false;  // clause with no free vars and not satisfied
};

// Compile the component's clauses into bitmasks over comp.vars' local indices.
MaskedClauses compile_component(const Formula& f, const PartialAssignment& sigma,
                                const Component& comp, const std::vector<std::uint32_t>& local_index) {
    MaskedClauses mc;
    mc.pos.reserve(comp.clauses.size());
    for (std::uint32_t c : comp.clauses) {
        const Clause& cl = f.clause(c);
        if (sigma.satisfies(cl)) continue;
        std::uint64_t pos = 0, neg = 0;
        for (const Literal& l : cl.lits) {
            if (!sigma.unassigned(l.var())) continue;  // assigned literal, necessarily false here
            std::uint64_t bit = 1ULL << local_index[l.var()];
            if (l.negated()) neg |= bit; else pos |= bit;
        }
        if (pos == 0 && neg == 0) {
            mc.contradiction = true;
            return mc;
        }
        mc.pos.push_back(pos);
        mc.neg.push_back(neg);
    }
    return mc;
}

std::uint64_t count_masked(const MaskedClauses& mc, std::uint32_t nbits) {
    if (mc.contradiction) return 0;
    const std::uint64_t space = 1ULL << nbits;
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < space; ++x) {
        bool ok = true;
        for (std::size_t i = 0; i < mc.pos.size(); ++i) {
            if (((x & mc.pos[i]) | (~x & mc.neg[i])) == 0) { ok = false; break; }
        }
        count += ok;
    }
    return count;
}

}  // namespace

std::uint64_t count_component_solutions(const Formula& f, const PartialAssignment& sigma,
                                        const Component& comp, std::uint32_t var_cap) {
    if (comp.vars.size() > var_cap)
        fail(Errc::ComponentTooLarge, "component has " + std::to_string(comp.vars.size()) +
                                          " variables, cap " + std::to_string(var_cap));
    std::vector<std::uint32_t> local_index(f.num_vars() + 1, 0);
    for (std::uint32_t i = 0; i < comp.vars.size(); ++i) local_index[comp.vars[i]] = i;
    MaskedClauses mc = compile_component(f, sigma, comp, local_index);
    return count_masked(mc, static_cast<std::uint32_t>(comp.vars.size()));
}

std::uint64_t count_solutions(const Formula& f, const PartialAssignment& sigma,
                              std::uint32_t var_cap, std::uint32_t total_cap) {
    // A clause falsified outright by sigma belongs to no component; catch it here.
    for (const Clause& c : f.clauses()) {
        if (sigma.satisfies(c)) continue;
        bool any_free = false;
        for (const Literal& l : c.lits)
            if (sigma.unassigned(l.var())) { any_free = true; break; }
        if (!any_free) return 0;
    }
    std::vector<Var> free_vars = sigma.unassigned_vars();
    if (free_vars.size() > total_cap)
        fail(Errc::TooLarge, "formula has " + std::to_string(free_vars.size()) + " unassigned variables, cap " +
                                 std::to_string(total_cap));
    std::uint64_t total = 1;
    for (const Component& comp : components_under(f, sigma, free_vars)) {
        std::uint64_t z = count_component_solutions(f, sigma, comp, var_cap);
        if (z == 0) return 0;
        total *= z;
    }
    return total;
}

std::uint64_t count_solutions(const Formula& f, std::uint32_t var_cap, std::uint32_t total_cap) {
    PartialAssignment sigma(f.num_vars());
    return count_solutions(f, sigma, var_cap, total_cap);
}

std::uint64_t pack_assignment(const PartialAssignment& sigma) {
    const Var n = sigma.num_vars();
    std::uint64_t x = 0;
    for (Var v = 1; v <= n; ++v) {
        x <<= 1;
        if (sigma[v] == VarState::One) x |= 1;
    }
    return x;
}

std::vector<std::uint64_t> brute_force_solutions(const Formula& f, std::uint32_t cap) {
    const Var n = f.num_vars();
    if (n > cap) fail(Errc::TooLarge, "n=" + std::to_string(n) + " exceeds brute-force cap " + std::to_string(cap));
    // Clause masks with v1 at the most significant of n bits, so ascending x
    // enumerates assignments in lexicographic (v1,...,vn) order.
    std::vector<std::uint64_t> pos(f.num_clauses(), 0), neg(f.num_clauses(), 0);
    for (std::uint32_t c = 0; c < f.num_clauses(); ++c) {
        for (const Literal& l : f.clause(c).lits) {
            std::uint64_t bit = 1ULL << (n - l.var());
            if (l.negated()) neg[c] |= bit; else pos[c] |= bit;
        }
    }
    std::vector<std::uint64_t> out;
    const std::uint64_t space = n >= 64 ? 0 : (1ULL << n);
    for (std::uint64_t x = 0; x < space; ++x) {
        bool ok = true;
        for (std::size_t i = 0; i < pos.size(); ++i) {
            if (((x & pos[i]) | (~x & neg[i])) == 0) { ok = false; break; }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

ComponentMarginals component_marginals(const Formula& f, const PartialAssignment& sigma,
                                       const Component& comp, std::uint32_t var_cap) {
    if (comp.vars.size() > var_cap)
        fail(Errc::ComponentTooLarge, "component has " + std::to_string(comp.vars.size()) +
                                          " variables, cap " + std::to_string(var_cap));
    std::vector<std::uint32_t> local_index(f.num_vars() + 1, 0);
    for (std::uint32_t i = 0; i < comp.vars.size(); ++i) local_index[comp.vars[i]] = i;
    MaskedClauses mc = compile_component(f, sigma, comp, local_index);
    ComponentMarginals out;
    out.ones.assign(comp.vars.size(), 0);
    if (mc.contradiction) return out;
    const std::uint32_t nbits = static_cast<std::uint32_t>(comp.vars.size());
    const std::uint64_t space = 1ULL << nbits;
    for (std::uint64_t x = 0; x < space; ++x) {
        bool ok = true;
        for (std::size_t i = 0; i < mc.pos.size(); ++i) {
            if (((x & mc.pos[i]) | (~x & mc.neg[i])) == 0) { ok = false; break; }
        }
        if (!ok) continue;
        ++out.total;
        std::uint64_t bits = x;
        while (bits) {
            out.ones[static_cast<std::uint32_t>(__builtin_ctzll(bits))] += 1;
            bits &= bits - 1;
        }
    }
    return out;
}

Rational exact_marginal(const Formula& f, const PartialAssignment& sigma, Var v, std::uint32_t var_cap) {
    if (!sigma.unassigned(v))
        fail(Errc::SNotUnassigned, "exact_marginal: variable " + std::to_string(v) + " is assigned");
    std::vector<Component> comps = components_under(f, sigma, {v});
    return exact_marginal_component(f, sigma, comps.front(), v, var_cap);
}

Rational exact_marginal_component(const Formula& f, const PartialAssignment& sigma,
                                  const Component& comp, Var v, std::uint32_t var_cap) {
    if (comp.vars.size() > var_cap)
        fail(Errc::ComponentTooLarge, "marginal component has " + std::to_string(comp.vars.size()) +
                                          " variables, cap " + std::to_string(var_cap));

    std::vector<std::uint32_t> local_index(f.num_vars() + 1, 0);
    for (std::uint32_t i = 0; i < comp.vars.size(); ++i) local_index[comp.vars[i]] = i;
    MaskedClauses mc = compile_component(f, sigma, comp, local_index);
    if (mc.contradiction) fail(Errc::UnsatisfiableComponent, "component contains a falsified clause");

    const std::uint32_t nbits = static_cast<std::uint32_t>(comp.vars.size());
    const std::uint64_t vbit = 1ULL << local_index[v];
    const std::uint64_t space = 1ULL << nbits;
    std::uint64_t z = 0, z1 = 0;
    for (std::uint64_t x = 0; x < space; ++x) {
        bool ok = true;
        for (std::size_t i = 0; i < mc.pos.size(); ++i) {
            if (((x & mc.pos[i]) | (~x & mc.neg[i])) == 0) { ok = false; break; }
        }
        if (ok) {
            ++z;
            if (x & vbit) ++z1;
        }
    }
    if (z == 0) fail(Errc::UnsatisfiableComponent, "component has no solutions");
    return Rational(static_cast<long long>(z1), static_cast<long long>(z));
}

}  // namespace kcnf
