#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "kcnf/live_state.hpp"
#include "testing.hpp"

using namespace kcnf;
namespace kt = kcnf::testing;

namespace {

Params shadow_params(const Formula& f, Rational eta, double d_threshold) {
    ParamOverrides ov;
    ov.eta = eta;
    ov.degree_threshold = d_threshold;
    ov.delta = Rational(1, 2);
    ov.s_infinite = true;
    Params p = derive_params(f.width(), f.num_vars(), std::max<std::uint64_t>(1, f.num_clauses()), 0.05, 1.0, ov);
    p.debug_shadow = true;
    return p;
}

}  // namespace

TEST_CASE("fresh init of an empty formula") {
    Formula f(5, 3, {});
    Params p = shadow_params(f, Rational(1, 12), 1e18);
    SeparatorPair sep = kt::full_separator(f, p);
    LiveState st(f, sep, p);
    for (Var v = 1; v <= 5; ++v) CHECK(st.is_alive(v));
    CHECK(st.con_component().clauses.empty());
    CHECK(!st.next_var());
}

TEST_CASE("threshold ladder at k=3, eta=1/12") {
    // T = (2/3 - 1/6)*3 = 1.5, so live_floor = 2: frozen iff live <= 2,
    // a variable of an unsatisfied clause is fixable iff live >= 3.
    Formula f = kt::formula(4, {{1, 2, 3}});
    Params p = shadow_params(f, Rational(1, 12), 1e18);
    CHECK(p.live_floor == 2);
    SeparatorPair sep = kt::full_separator(f, p);
    LiveState st(f, sep, p);

    CHECK(st.live_count(0) == 3);
    CHECK(!st.clause_flags(0).frozen);
    CHECK(st.is_alive(1));
    CHECK(st.is_alive(4));  // clause-free variable

    st.assign(1, VarState::Zero);  // does not satisfy (positive literal, zero)
    CHECK(st.live_count(0) == 2);
    CHECK(st.clause_flags(0).frozen);
    // boundary: live_count exactly at the floor blocks its variables
    CHECK(!st.is_alive(2));
    CHECK(st.is_alive(4));  // untouched, no unsatisfied tight clause contains it
    CHECK(st.assumption_holds());
}

TEST_CASE("satisfaction clears tracking") {
    Formula f = kt::formula(3, {{1, 2, 3}});
    Params p = shadow_params(f, Rational(1, 12), 1e18);
    SeparatorPair sep = kt::full_separator(f, p);
    LiveState st(f, sep, p);
    st.assign(1, VarState::One);
    CHECK(st.clause_flags(0).satisfied);
    CHECK(!st.clause_flags(0).frozen);
    CHECK(st.is_alive(2));
}

TEST_CASE("star marks the clause and resolving a star can satisfy it") {
    Formula f = kt::formula(3, {{1, 2, 3}});
    Params p = shadow_params(f, Rational(1, 12), 1e18);
    SeparatorPair sep = kt::full_separator(f, p);
    LiveState st(f, sep, p);
    st.assign(1, VarState::Star);
    CHECK(st.clause_flags(0).starred);
    CHECK(st.star_vars() == std::vector<Var>{1});
    CHECK(st.live_count(0) == 3);  // star stays unassigned
    st.assign(1, VarState::One);   // star -> 1 overwrite
    CHECK(st.clause_flags(0).satisfied);
    CHECK(!st.clause_flags(0).starred);
    CHECK(st.star_vars().empty());
}

TEST_CASE("bad classification gadget") {
    // k=3, eta=1/12: frozen at live <= 2. Freeze (4,1,2) and (5,3,6) by
    // assigning 4 and 5 to false; then (1,2,3) has live 3 (not frozen) but all
    // its untouched variables are covered by frozen clauses -> bad.
    Formula f = kt::formula(6, {{1, 2, 3}, {4, 1, 2}, {5, 3, 6}});
    Params p = shadow_params(f, Rational(1, 12), 1e18);
    SeparatorPair sep = kt::full_separator(f, p);
    LiveState st(f, sep, p);
    CHECK(st.is_alive(4));
    st.assign(4, VarState::Zero);
    CHECK(st.clause_flags(1).frozen);
    CHECK(!st.clause_flags(0).bad);  // var 3 not yet covered
    st.assign(5, VarState::Zero);
    CHECK(st.clause_flags(2).frozen);
    CHECK(st.clause_flags(0).bad);
    CHECK(!st.clause_flags(0).frozen);
    CHECK(st.assumption_holds());

    // frozen and bad stay disjoint everywhere
    for (std::uint32_t c = 0; c < f.num_clauses(); ++c) {
        ClauseFlags fl = st.clause_flags(c);
        CHECK(!(fl.frozen && fl.bad));
    }
}

TEST_CASE("con component examples") {
    Formula f = kt::formula(5, {{1, 2, 3}, {3, 4, 5}});
    Params p = shadow_params(f, Rational(1, 12), 1e18);
    SeparatorPair sep = kt::full_separator(f, p);
    LiveState st(f, sep, p);

    CHECK(st.con_component().clauses.empty());  // no stars

    st.assign(1, VarState::Star);
    ConView con = st.con_component();
    // no frozen/bad/sep clauses: C_con = clauses containing v only
    CHECK(con.clauses == std::vector<std::uint32_t>{0});
    CHECK(con.vars == std::vector<Var>{1, 2, 3});

    // next_var picks the smallest alive variable of V_con
    std::optional<Var> u = st.next_var();
    REQUIRE(u.has_value());
    CHECK(*u == 2);
}

TEST_CASE("next_var skips dead V_con variables") {
    // freeze the only clause; its variables are not alive, so next_var is empty
    Formula f = kt::formula(3, {{1, 2, 3}});
    Params p = shadow_params(f, Rational(1, 12), 1e18);
    SeparatorPair sep = kt::full_separator(f, p);
    LiveState st(f, sep, p);
    st.assign(1, VarState::Star);
    st.assign(2, VarState::Zero);  // live drops to 2 -> frozen
    CHECK(st.clause_flags(0).frozen);
    CHECK(!st.next_var());
}

TEST_CASE("incremental equals from-scratch along random mutation runs") {
    std::uint64_t cursor = 3000;
    std::uint64_t steps_validated = 0;
    int instances = 0;
    while (instances < 8) {
        Rng rng(cursor++);
        Var n = 10 + static_cast<Var>(rng.below(30));  // <= 40 vars
        Formula f = generate_random_kcnf(3, n, 1 + rng.below(2 * n), rng);
        Params p = shadow_params(f, Rational(1, 12), 6.0);
        SeparatorPair sep = kt::full_separator(f, p);
        ++instances;
        for (int run = 0; run < 16; ++run) {
            LiveState st(f, sep, p);  // debug_shadow: every assign cross-checks
            std::vector<Var> stars;
            LiveState::TrailMark mark = 0;
            std::vector<Var> stars_at_mark;
            bool marked = false;
            for (int step = 0; step < 200; ++step) {
                if (marked && rng.below(6) == 0) {
                    // rollback segments exercise the trail restore path
                    st.rollback_to(mark);
                    stars = stars_at_mark;
                    marked = false;
                    continue;
                }
                if (!marked && rng.below(5) == 0) {
                    mark = st.trail_mark();
                    stars_at_mark = stars;
                    marked = true;
                }
                // random legal mutation: untouched -> 0/1/star, or star -> 0/1
                std::vector<Var> untouched;
                for (Var v = 1; v <= n; ++v)
                    if (st.sigma()[v] == VarState::Untouched && !sep.in_v_sep[v]) untouched.push_back(v);
                bool resolve = !stars.empty() && (untouched.empty() || rng.below(4) == 0);
                if (!resolve && untouched.empty()) break;
                if (resolve) {
                    std::size_t i = rng.below(stars.size());
                    st.assign(stars[i], rng.bit() ? VarState::One : VarState::Zero);
                    stars.erase(stars.begin() + static_cast<long>(i));
                } else {
                    Var v = untouched[rng.below(untouched.size())];
                    std::uint64_t r = rng.below(3);
                    if (r == 2) {
                        st.assign(v, VarState::Star);
                        stars.push_back(v);
                    } else {
                        st.assign(v, r ? VarState::One : VarState::Zero);
                    }
                }
            }
            steps_validated += st.shadow_checks();
        }
    }
    CHECK(steps_validated >= 1000);
}

TEST_CASE("monotone classification along alive-only runs") {
    std::uint64_t cursor = 4000;
    int done = 0;
    while (done < 10) {
        Rng rng(cursor++);
        Var n = 8 + static_cast<Var>(rng.below(12));
        Formula f = generate_random_kcnf(3, n, 1 + rng.below(30), rng);
        Params p = shadow_params(f, Rational(1, 12), 1e18);
        SeparatorPair sep = kt::full_separator(f, p);
        LiveState st(f, sep, p);

        std::set<std::uint32_t> prev_star, prev_frozen, prev_bad;
        bool any = false;
        for (int step = 0; step < 50; ++step) {
            std::vector<Var> alive;
            for (Var v = 1; v <= n; ++v)
                if (st.is_alive(v)) alive.push_back(v);
            if (alive.empty()) break;
            Var v = alive[rng.below(alive.size())];
            std::uint64_t r = rng.below(3);
            st.assign(v, r == 2 ? VarState::Star : (r ? VarState::One : VarState::Zero));
            any = true;

            CHECK(st.assumption_holds());
            std::set<std::uint32_t> stars, frozen, bad;
            for (std::uint32_t c = 0; c < f.num_clauses(); ++c) {
                ClauseFlags fl = st.clause_flags(c);
                if (fl.starred) stars.insert(c);
                if (fl.frozen) frozen.insert(c);
                if (fl.bad) bad.insert(c);
            }
            for (std::uint32_t c : prev_star) CHECK(stars.count(c));
            for (std::uint32_t c : prev_frozen) CHECK(frozen.count(c));
            for (std::uint32_t c : prev_bad) CHECK(bad.count(c));
            prev_star = stars;
            prev_frozen = frozen;
            prev_bad = bad;
        }
        if (any) ++done;
    }
}

TEST_CASE("assign rejects illegal transitions") {
    Formula f = kt::formula(2, {{1, 2, 2}});
    Params p = shadow_params(f, Rational(1, 12), 1e18);
    SeparatorPair sep = kt::full_separator(f, p);
    LiveState st(f, sep, p);
    st.assign(1, VarState::Zero);
    CHECK_THROWS_AS(st.assign(1, VarState::One), Error);
    st.assign(2, VarState::Star);
    CHECK_THROWS_AS(st.assign(2, VarState::Star), Error);
}
