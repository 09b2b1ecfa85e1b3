#include "kcnf/rejection.hpp"

#include <algorithm>

namespace kcnf {

namespace {

struct LocalClause {
    std::vector<std::uint64_t> pos;  // word-indexed masks over component bits
    std::vector<std::uint64_t> neg;
};

}  // namespace

RejectionResult rejection_sampling(const Formula& f, PartialAssignment& sigma,
                                   const std::vector<Var>& S, Rng& rng, const RejectionBudget& budget) {
    RejectionResult res;
    if (S.empty()) return res;
    std::vector<Component> comps = components_under(f, sigma, S);

    std::vector<std::uint32_t> local_index(f.num_vars() + 1, 0);
    std::vector<std::uint8_t> in_S(f.num_vars() + 1, 0);
    for (Var v : S) in_S[v] = 1;

    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const Component& comp = comps[ci];
        const std::uint32_t nv = static_cast<std::uint32_t>(comp.vars.size());
        const std::uint32_t words = (nv + 63) / 64;
        for (std::uint32_t i = 0; i < nv; ++i) local_index[comp.vars[i]] = i;

        // Compile unsatisfied clauses to masks over the component's bits.
        std::vector<LocalClause> cls;
        bool contradiction = false;
        for (std::uint32_t c : comp.clauses) {
            const Clause& cl = f.clause(c);
            LocalClause lc;
            lc.pos.assign(words, 0);
            lc.neg.assign(words, 0);
            bool any = false;
            for (const Literal& l : cl.lits) {
                if (!sigma.unassigned(l.var())) continue;
                std::uint32_t idx = local_index[l.var()];
                if (l.negated()) lc.neg[idx / 64] |= 1ULL << (idx % 64);
                else lc.pos[idx / 64] |= 1ULL << (idx % 64);
                any = true;
            }
            if (!any) { contradiction = true; break; }
            cls.push_back(std::move(lc));
        }

        std::vector<std::uint64_t> bits(words, 0);
        bool accepted = false;
        std::uint64_t attempts = 0;
        while (!contradiction) {
            if (budget.max_attempts_per_component != 0 && attempts >= budget.max_attempts_per_component) break;
            ++attempts;
            for (std::uint32_t w = 0; w < words; ++w) bits[w] = rng.next_u64();
            bool ok = true;
            for (const LocalClause& lc : cls) {
                bool sat = false;
                for (std::uint32_t w = 0; w < words && !sat; ++w)
                    if ((bits[w] & lc.pos[w]) | (~bits[w] & lc.neg[w])) sat = true;
                if (!sat) { ok = false; break; }
            }
            if (ok) { accepted = true; break; }
        }
        res.attempts += attempts;
        if (!accepted) {
            res.exhausted = true;
            res.exhausted_component = ci;
            return res;
        }
        for (std::uint32_t i = 0; i < nv; ++i) {
            Var v = comp.vars[i];
            if (!in_S[v]) continue;
            bool one = (bits[i / 64] >> (i % 64)) & 1;
            sigma[v] = one ? VarState::One : VarState::Zero;
        }
    }
    return res;
}

}  // namespace kcnf
