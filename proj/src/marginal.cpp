#include "kcnf/marginal.hpp"

#include <string>

namespace kcnf {

TauOutcome tau_sample(Rng& rng, const Rational& delta) {
    if (!(delta.num > 0 && delta.num <= delta.den))
        fail(Errc::DeltaNotPositive, "tau_sample: delta must be in (0, 1], got " + delta.str());
    // p0 = p1 = (den-num)/(2 den), pstar = num/den; draw r uniform in [0, 2 den)
    const std::uint64_t den = static_cast<std::uint64_t>(delta.den);
    const std::uint64_t num = static_cast<std::uint64_t>(delta.num);
    const std::uint64_t r = rng.below(2 * den);
    if (r < den - num) return TauOutcome::Zero;
    if (r < 2 * (den - num)) return TauOutcome::One;
    return TauOutcome::Star;
}

Rational nu_probability(const Rational& marginal_one, const Rational& delta) {
    if (!delta.positive()) fail(Errc::DeltaNotPositive, "nu: delta must be positive");
    Rational half_pad(delta.den - delta.num, 2 * delta.den);  // (1-delta)/2
    Rational nu1 = (marginal_one - half_pad) / delta;
    if (nu1 < Rational(0) || nu1 > Rational(1))
        fail(Errc::LocalUniformityViolated,
             "marginal " + marginal_one.str() + " outside [(1-delta)/2, (1+delta)/2] for delta=" + delta.str());
    return nu1;
}

int nu_sample(const LiveState& st, Var v, const Rational& delta, Rng& rng) {
    if (st.sigma()[v] != VarState::Star)
        fail(Errc::VariableNotUntouched, "nu_sample: sigma(v) must be star");
    Component comp = st.local_component(v);
    Rational p = exact_marginal_component(st.formula(), st.sigma(), comp, v, st.params().enum_cap);
    Rational nu1 = nu_probability(p, delta);
    return rng.bernoulli(nu1) ? 1 : 0;
}

namespace {

// Every clause of v's component in the restricted formula must already be in
// C_con at a leaf; checked under debug_shadow.
void check_leaf_containment(const LiveState& st, Var v, const ConView& con) {
    std::vector<Component> comps = components_under(st.formula(), st.sigma(), {v});
    for (std::uint32_t c : comps.front().clauses) {
        if (!std::binary_search(con.clauses.begin(), con.clauses.end(), c))
            fail(Errc::Internal, "leaf component clause " + std::to_string(c) + " not inside C_con");
    }
}

void verify_tau_point(const LiveState& st, Var u) {
    Rational p = exact_marginal(st.formula(), st.sigma(), u, st.params().enum_cap);
    nu_probability(p, st.params().delta);  // throws if outside the band
}

BitOrHalt margin_overflow_at(LiveState& st, Var v, Rng& rng, SampleStats& stats, std::uint64_t depth) {
    const Params& params = st.params();
    const bool finite = !params.s_infinite;
    const std::uint64_t s = params.s;

    while (true) {
        ++stats.overflow_calls;
        stats.max_depth = std::max(stats.max_depth, depth);
        ConView con = st.con_component();
        stats.max_ccon = std::max<std::uint64_t>(stats.max_ccon, con.clauses.size());
        if (finite && con.clauses.size() > s) {
            if (depth > s * params.k + 1) ++stats.depth_bound_violations;
            return HaltInfo{HaltSite::Recursing, con.clauses.size(), depth};
        }
        std::optional<Var> u = st.next_var_in(con);
        if (!u) {
            ++stats.leaf_count;
            if (params.debug_shadow) check_leaf_containment(st, v, con);
            return nu_sample(st, v, params.delta, rng);
        }
        ++stats.tau_draws;
        if (params.verify_local_uniformity) verify_tau_point(st, *u);
        TauOutcome t = tau_sample(rng, params.delta);
        ++depth;
        if (t == TauOutcome::Star) {
            // the sub-recursion's internal assignments are local to it: the
            // state after resolving u differs from the current one only at u
            LiveState::TrailMark mark = st.trail_mark();
            st.assign(*u, VarState::Star);
            BitOrHalt sub = margin_overflow_at(st, *u, rng, stats, depth);
            if (std::holds_alternative<HaltInfo>(sub)) return sub;  // run aborts, state discarded
            st.rollback_to(mark);
            st.assign(*u, std::get<int>(sub) ? VarState::One : VarState::Zero);
        } else {
            st.assign(*u, t == TauOutcome::One ? VarState::One : VarState::Zero);
        }
        // tail recursion on v at the incremented depth
    }
}

}  // namespace

BitOrHalt margin_overflow(LiveState& st, Var v, Rng& rng, SampleStats& stats) {
    return margin_overflow_at(st, v, rng, stats, 0);
}

BitOrHalt margin_sample(LiveState& st, Var v, Rng& rng, SampleStats& stats) {
    ++stats.tau_draws;
    if (st.params().verify_local_uniformity) verify_tau_point(st, v);
    TauOutcome t = tau_sample(rng, st.params().delta);
    if (t != TauOutcome::Star) {
        int b = t == TauOutcome::One ? 1 : 0;
        st.assign(v, b ? VarState::One : VarState::Zero);
        return b;
    }
    LiveState::TrailMark mark = st.trail_mark();
    st.assign(v, VarState::Star);
    BitOrHalt res = margin_overflow(st, v, rng, stats);
    if (std::holds_alternative<int>(res)) {
        st.rollback_to(mark);
        st.assign(v, std::get<int>(res) ? VarState::One : VarState::Zero);
    }
    return res;
}

}  // namespace kcnf
