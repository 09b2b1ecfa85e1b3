#include "kcnf/live_state.hpp"

#include <algorithm>
#include <string>

namespace kcnf {

LiveState::LiveState(const Formula& f, const SeparatorPair& sep, const Params& params)
    : f_(&f), sep_(&sep), params_(&params), sigma_(f.num_vars()) {
    const std::size_t m = f.num_clauses();
    const Var n = f.num_vars();
    satisfied_.assign(m, 0);
    live_count_.assign(m, 0);
    star_count_.assign(m, 0);
    frozen_.assign(m, 0);
    bad_.assign(m, 0);
    violating_.assign(m, 0);
    uncovered_untouched_.assign(m, 0);
    frozen_cover_.assign(n + 1, 0);
    clause_mark_.assign(m, 0);
    int_mark_.assign(m, 0);
    var_mark_.assign(n + 1, 0);
    var_out_mark_.assign(n + 1, 0);

    const long long floor = params.live_floor;
    for (std::uint32_t c = 0; c < m; ++c) {
        const Clause& cl = f.clause(c);
        std::int32_t live = 0;
        for (Var u : cl.vbl)
            if (!sep.in_v_sep[u]) ++live;
        live_count_[c] = live;
        if (!sep.in_c_sep[c]) {
            frozen_[c] = live <= floor;
            violating_[c] = live <= floor - 1;
            if (violating_[c]) ++assumption_violations_;
        }
    }
    for (std::uint32_t c = 0; c < m; ++c)
        if (frozen_[c])
            for (Var u : f.clause(c).vbl) ++frozen_cover_[u];
    for (std::uint32_t c = 0; c < m; ++c) {
        std::int32_t uncovered = 0;
        for (Var u : f.clause(c).vbl)
            if (!sep.in_v_sep[u] && frozen_cover_[u] == 0) ++uncovered;
        uncovered_untouched_[c] = uncovered;
        bad_[c] = !satisfied_[c] && !sep.in_c_sep[c] && !frozen_[c] && uncovered == 0;
    }
}

bool LiveState::literal_made_true(const Clause& cl, Var v, VarState val) const {
    for (const Literal& l : cl.lits) {
        if (l.var() != v) continue;
        if (val == VarState::One && !l.negated()) return true;
        if (val == VarState::Zero && l.negated()) return true;
    }
    return false;
}

void LiveState::save_clause(std::uint32_t c) {
    UndoRecord r;
    r.kind = UndoRecord::Kind::Clause;
    r.index = c;
    r.live = live_count_[c];
    r.star = star_count_[c];
    r.uncovered = uncovered_untouched_[c];
    r.satisfied = satisfied_[c];
    r.frozen = frozen_[c];
    r.bad = bad_[c];
    r.violating = violating_[c];
    trail_.push_back(std::move(r));
}

void LiveState::save_cover(Var v) {
    UndoRecord r;
    r.kind = UndoRecord::Kind::Cover;
    r.index = v;
    r.cover_old = frozen_cover_[v];
    trail_.push_back(std::move(r));
}

void LiveState::save_violations() {
    UndoRecord r;
    r.kind = UndoRecord::Kind::Violations;
    r.violations_old = assumption_violations_;
    trail_.push_back(std::move(r));
}

void LiveState::rollback_to(TrailMark mark) {
    while (trail_.size() > mark) {
        const UndoRecord& r = trail_.back();
        switch (r.kind) {
            case UndoRecord::Kind::Sigma:
                sigma_[r.index] = r.sigma_old;
                break;
            case UndoRecord::Kind::Cover:
                frozen_cover_[r.index] = r.cover_old;
                break;
            case UndoRecord::Kind::Clause:
                live_count_[r.index] = r.live;
                star_count_[r.index] = r.star;
                uncovered_untouched_[r.index] = r.uncovered;
                satisfied_[r.index] = r.satisfied;
                frozen_[r.index] = r.frozen;
                bad_[r.index] = r.bad;
                violating_[r.index] = r.violating;
                break;
            case UndoRecord::Kind::Violations:
                assumption_violations_ = r.violations_old;
                break;
            case UndoRecord::Kind::Stars:
                star_vars_ = r.stars_old;
                break;
        }
        trail_.pop_back();
    }
    if (params_->debug_shadow) {
        check_consistency();
        ++shadow_checks_;
    }
}

void LiveState::assign(Var v, VarState value) {
    VarState old = sigma_[v];
    bool legal = (old == VarState::Untouched &&
                  (value == VarState::Zero || value == VarState::One || value == VarState::Star)) ||
                 (old == VarState::Star && (value == VarState::Zero || value == VarState::One));
    if (!legal)
        fail(Errc::VariableNotUntouched,
             "assign: illegal transition for variable " + std::to_string(v));

    {
        UndoRecord r;
        r.kind = UndoRecord::Kind::Sigma;
        r.index = v;
        r.sigma_old = old;
        trail_.push_back(std::move(r));
    }
    sigma_[v] = value;
    ++mutation_steps_;

    const bool v_in_sep = sep_->in_v_sep[v] != 0;
    const bool untouched_exit = old == VarState::Untouched && !v_in_sep && frozen_cover_[v] == 0;
    std::vector<std::uint32_t> pending_sat;

    for (std::uint32_t c : f_->clauses_of(v)) {
        save_clause(c);
        if (old == VarState::Star) --star_count_[c];
        if (value == VarState::Star) ++star_count_[c];
        if (is_assigned(value)) {
            if (!v_in_sep) --live_count_[c];
            if (!satisfied_[c] && literal_made_true(f_->clause(c), v, value)) pending_sat.push_back(c);
        }
        if (untouched_exit) --uncovered_untouched_[c];
    }
    for (std::uint32_t c : pending_sat) satisfied_[c] = 1;

    std::vector<std::uint32_t> work;
    for (std::uint32_t c : f_->clauses_of(v)) refresh_clause(c, work);
    while (!work.empty()) {
        std::uint32_t c = work.back();
        work.pop_back();
        refresh_clause(c, work);
    }

    if (value == VarState::Star || old == VarState::Star) {
        UndoRecord r;
        r.kind = UndoRecord::Kind::Stars;
        r.stars_old = star_vars_;
        trail_.push_back(std::move(r));
        if (value == VarState::Star) {
            star_vars_.push_back(v);
        } else {
            star_vars_.erase(std::find(star_vars_.begin(), star_vars_.end(), v));
        }
    }

    if (params_->debug_shadow) {
        check_consistency();
        ++shadow_checks_;
    }
}

void LiveState::refresh_clause(std::uint32_t c, std::vector<std::uint32_t>& work) {
    const long long floor = params_->live_floor;
    const bool sep_clause = sep_->in_c_sep[c] != 0;
    const bool now_viol = !satisfied_[c] && !sep_clause && live_count_[c] <= floor - 1;
    if (static_cast<bool>(violating_[c]) != now_viol) {
        save_violations();
        save_clause(c);
        assumption_violations_ += now_viol ? 1 : -1;
        violating_[c] = now_viol;
    }
    const bool now_frozen = !satisfied_[c] && !sep_clause && live_count_[c] <= floor;
    if (static_cast<bool>(frozen_[c]) != now_frozen) {
        save_clause(c);
        frozen_[c] = now_frozen;
        const int d = now_frozen ? 1 : -1;
        for (Var u : f_->clause(c).vbl) {
            save_cover(u);
            const std::int32_t before = frozen_cover_[u];
            frozen_cover_[u] += d;
            const bool was_covered = before > 0;
            const bool is_covered = frozen_cover_[u] > 0;
            if (was_covered != is_covered && sigma_[u] == VarState::Untouched && !sep_->in_v_sep[u]) {
                for (std::uint32_t c2 : f_->clauses_of(u)) {
                    save_clause(c2);
                    uncovered_untouched_[c2] += is_covered ? -1 : 1;
                    work.push_back(c2);
                }
            }
        }
    }
    const bool new_bad = !satisfied_[c] && !sep_clause && !frozen_[c] && uncovered_untouched_[c] == 0;
    if (static_cast<bool>(bad_[c]) != new_bad) {
        save_clause(c);
        bad_[c] = new_bad;
    }
}

bool LiveState::is_alive(Var v) const {
    if (sigma_[v] != VarState::Untouched || sep_->in_v_sep[v]) return false;
    if (assumption_violations_ != 0) return false;
    const long long floor = params_->live_floor;
    for (std::uint32_t c : f_->clauses_of(v)) {
        if (satisfied_[c] || sep_->in_c_sep[c]) continue;
        if (live_count_[c] < floor + 1) return false;
    }
    return true;
}

ClauseFlags LiveState::clause_flags(std::uint32_t c) const {
    ClauseFlags fl;
    fl.satisfied = satisfied_[c];
    fl.frozen = frozen_[c];
    fl.bad = bad_[c];
    fl.starred = star_count_[c] > 0;
    fl.in_sep = sep_->in_c_sep[c] != 0;
    return fl;
}

ConView LiveState::con_component() const {
    ConView out;
    ++epoch_;
    const std::uint32_t e = epoch_;
    std::vector<std::uint32_t> int_queue;

    auto add_con = [&](std::uint32_t c) {
        if (clause_mark_[c] == e) return;
        clause_mark_[c] = e;
        out.clauses.push_back(c);
        if (tracked(c) && int_mark_[c] != e) {
            int_mark_[c] = e;
            int_queue.push_back(c);
        }
    };

    for (Var v : star_vars_)
        for (std::uint32_t c : f_->clauses_of(v)) add_con(c);

    while (!int_queue.empty()) {
        std::uint32_t c = int_queue.back();
        int_queue.pop_back();
        for (Var u : f_->clause(c).vbl) {
            if (!sigma_.unassigned(u) || var_mark_[u] == e) continue;
            var_mark_[u] = e;
            for (std::uint32_t c2 : f_->clauses_of(u)) add_con(c2);
        }
    }

    for (std::uint32_t c : out.clauses)
        for (Var u : f_->clause(c).vbl) {
            if (var_out_mark_[u] == e) continue;
            var_out_mark_[u] = e;
            out.vars.push_back(u);
        }
    std::sort(out.clauses.begin(), out.clauses.end());
    std::sort(out.vars.begin(), out.vars.end());
    return out;
}

std::optional<Var> LiveState::next_var_in(const ConView& con) const {
    for (Var v : con.vars)
        if (is_alive(v)) return v;
    return std::nullopt;
}

std::optional<Var> LiveState::next_var() const { return next_var_in(con_component()); }

Component LiveState::local_component(Var v) const {
    Component comp;
    if (!sigma_.unassigned(v))
        fail(Errc::SNotUnassigned, "local_component: variable " + std::to_string(v) + " is assigned");
    ++epoch_;
    const std::uint32_t e = epoch_;
    std::vector<Var> stack{v};
    var_mark_[v] = e;
    while (!stack.empty()) {
        Var u = stack.back();
        stack.pop_back();
        comp.vars.push_back(u);
        for (std::uint32_t c : f_->clauses_of(u)) {
            if (satisfied_[c] || clause_mark_[c] == e) continue;
            clause_mark_[c] = e;
            comp.clauses.push_back(c);
            for (Var w : f_->clause(c).vbl) {
                if (!sigma_.unassigned(w) || var_mark_[w] == e) continue;
                var_mark_[w] = e;
                stack.push_back(w);
            }
        }
    }
    std::sort(comp.vars.begin(), comp.vars.end());
    std::sort(comp.clauses.begin(), comp.clauses.end());
    return comp;
}

void LiveState::check_consistency() const {
    const std::size_t m = f_->num_clauses();
    const Var n = f_->num_vars();
    const long long floor = params_->live_floor;

    std::vector<std::uint8_t> sat(m, 0), frozen(m, 0), bad(m, 0), viol(m, 0);
    std::vector<std::int32_t> live(m, 0), stars(m, 0), uncovered(m, 0);
    std::vector<std::int32_t> cover(n + 1, 0);
    long long violations = 0;

    for (std::uint32_t c = 0; c < m; ++c) {
        const Clause& cl = f_->clause(c);
        sat[c] = sigma_.satisfies(cl);
        for (Var u : cl.vbl) {
            if (sigma_.unassigned(u) && !sep_->in_v_sep[u]) ++live[c];
            if (sigma_[u] == VarState::Star) ++stars[c];
        }
        if (!sat[c] && !sep_->in_c_sep[c]) {
            frozen[c] = live[c] <= floor;
            viol[c] = live[c] <= floor - 1;
            if (viol[c]) ++violations;
        }
    }
    for (std::uint32_t c = 0; c < m; ++c)
        if (frozen[c])
            for (Var u : f_->clause(c).vbl) ++cover[u];
    for (std::uint32_t c = 0; c < m; ++c) {
        const Clause& cl = f_->clause(c);
        for (Var u : cl.vbl)
            if (!sep_->in_v_sep[u] && sigma_[u] == VarState::Untouched && cover[u] == 0) ++uncovered[c];
        bad[c] = !sat[c] && !sep_->in_c_sep[c] && !frozen[c] && uncovered[c] == 0;
    }

    auto mismatch = [&](const char* what, std::uint64_t where) {
        fail(Errc::Internal, std::string("live state shadow mismatch: ") + what + " at " + std::to_string(where));
    };
    for (std::uint32_t c = 0; c < m; ++c) {
        if (sat[c] != satisfied_[c]) mismatch("satisfied", c);
        if (live[c] != live_count_[c]) mismatch("live_count", c);
        if (stars[c] != star_count_[c]) mismatch("star_count", c);
        if (frozen[c] != frozen_[c]) mismatch("frozen", c);
        if (bad[c] != bad_[c]) mismatch("bad", c);
        if (viol[c] != violating_[c]) mismatch("violating", c);
        if (uncovered[c] != uncovered_untouched_[c]) mismatch("uncovered_untouched", c);
        if (frozen_[c] && bad_[c]) mismatch("frozen&bad", c);
    }
    for (Var v = 1; v <= n; ++v)
        if (cover[v] != frozen_cover_[v]) mismatch("frozen_cover", v);
    if (violations != assumption_violations_) mismatch("assumption_violations", 0);

    // Independent C_con closure: repeated passes instead of BFS.
    std::vector<std::uint8_t> in_int(m, 0), in_con(m, 0);
    for (std::uint32_t c = 0; c < m; ++c) {
        if (!(frozen[c] || bad[c] || sep_->in_c_sep[c])) continue;
        for (Var u : f_->clause(c).vbl)
            if (sigma_[u] == VarState::Star) { in_int[c] = 1; break; }
    }
    auto shares_unassigned_var = [&](std::uint32_t a, std::uint32_t b) {
        for (Var u : f_->clause(a).vbl) {
            if (!sigma_.unassigned(u)) continue;
            for (Var w : f_->clause(b).vbl)
                if (w == u) return true;
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t c = 0; c < m; ++c) {
            if (in_int[c] || !(frozen[c] || bad[c] || sep_->in_c_sep[c])) continue;
            for (std::uint32_t c2 = 0; c2 < m; ++c2) {
                if (!in_int[c2] || c2 == c) continue;
                if (shares_unassigned_var(c2, c)) { in_int[c] = 1; changed = true; break; }
            }
        }
    }
    for (std::uint32_t c = 0; c < m; ++c) {
        if (in_int[c]) { in_con[c] = 1; continue; }
        for (Var u : f_->clause(c).vbl)
            if (sigma_[u] == VarState::Star) { in_con[c] = 1; break; }
        if (in_con[c]) continue;
        for (std::uint32_t c2 = 0; c2 < m && !in_con[c]; ++c2)
            if (in_int[c2] && shares_unassigned_var(c2, c)) in_con[c] = 1;
    }
    ConView fast = con_component();
    std::vector<std::uint32_t> slow;
    for (std::uint32_t c = 0; c < m; ++c)
        if (in_con[c]) slow.push_back(c);
    if (slow != fast.clauses) mismatch("c_con", 0);
}

}  // namespace kcnf
