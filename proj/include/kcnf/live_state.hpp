#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcnf/formula.hpp"
#include "kcnf/params.hpp"
#include "kcnf/separator.hpp"

namespace kcnf {

struct ClauseFlags {
    bool satisfied = false;
    bool frozen = false;
    bool bad = false;
    bool starred = false;
    bool in_sep = false;
};

struct ConView {
    std::vector<std::uint32_t> clauses;  // C_con, ascending
    std::vector<Var> vars;               // V_con = union of vbl over C_con, ascending
};

// Dynamic clause/variable tracker for the recursive sampler. Supported
// transitions: untouched -> {0,1,star} and star -> {0,1}. All counters are
// maintained incrementally; with debug_shadow on, every mutation is checked
// against an independent from-scratch recomputation.
//
// The overflow recursion resolves a star by running a sub-recursion whose
// internal assignments are local to it: the caller marks the trail, lets the
// sub-recursion mutate the state, rolls back, and applies only the resolved
// bit. rollback_to restores every counter exactly.
class LiveState {
  public:
    LiveState(const Formula& f, const SeparatorPair& sep, const Params& params);

    const Formula& formula() const { return *f_; }
    const SeparatorPair& separator() const { return *sep_; }
    const Params& params() const { return *params_; }
    const PartialAssignment& sigma() const { return sigma_; }

    void assign(Var v, VarState value);

    bool is_alive(Var v) const;
    ClauseFlags clause_flags(std::uint32_t c) const;
    long long live_count(std::uint32_t c) const { return live_count_[c]; }
    long long star_count(std::uint32_t c) const { return star_count_[c]; }
    const std::vector<Var>& star_vars() const { return star_vars_; }

    // Every unsatisfied non-separator clause keeps at least live_floor live
    // variables; preserved automatically when only alive variables are fixed.
    bool assumption_holds() const { return assumption_violations_ == 0; }

    ConView con_component() const;
    // Smallest-index alive variable in V_con, or nullopt.
    std::optional<Var> next_var() const;
    std::optional<Var> next_var_in(const ConView& con) const;

    // Maximal connected component of v in the restricted formula, discovered
    // locally through the maintained satisfied flags.
    Component local_component(Var v) const;

    using TrailMark = std::size_t;
    TrailMark trail_mark() const { return trail_.size(); }
    void rollback_to(TrailMark mark);
    // Drops undo history; earlier marks become invalid. Call between
    // top-level assignments to keep long runs at O(1) trail memory.
    void trail_clear() { trail_.clear(); }

    std::uint64_t mutation_steps() const { return mutation_steps_; }
    std::uint64_t shadow_checks() const { return shadow_checks_; }

    // From-scratch recomputation of every maintained quantity; throws
    // Errc::Internal on any mismatch. Called automatically per mutation when
    // params.debug_shadow is set.
    void check_consistency() const;

  private:
    struct UndoRecord {
        enum class Kind : std::uint8_t { Sigma, Cover, Clause, Violations, Stars };
        Kind kind;
        std::uint32_t index = 0;
        VarState sigma_old = VarState::Untouched;
        std::int32_t cover_old = 0;
        long long violations_old = 0;
        std::int32_t live = 0, star = 0, uncovered = 0;
        std::uint8_t satisfied = 0, frozen = 0, bad = 0, violating = 0;
        std::vector<Var> stars_old;
    };

    void save_clause(std::uint32_t c);
    void save_cover(Var v);
    void save_violations();
    void refresh_clause(std::uint32_t c, std::vector<std::uint32_t>& work);
    bool tracked(std::uint32_t c) const { return frozen_[c] || bad_[c] || sep_->in_c_sep[c]; }
    bool literal_made_true(const Clause& cl, Var v, VarState val) const;

    const Formula* f_;
    const SeparatorPair* sep_;
    const Params* params_;
    PartialAssignment sigma_;

    std::vector<std::uint8_t> satisfied_;
    std::vector<std::int32_t> live_count_;
    std::vector<std::int32_t> star_count_;
    std::vector<std::uint8_t> frozen_;
    std::vector<std::uint8_t> bad_;
    std::vector<std::uint8_t> violating_;
    std::vector<std::int32_t> uncovered_untouched_;  // per clause
    std::vector<std::int32_t> frozen_cover_;         // per var
    std::vector<Var> star_vars_;
    long long assumption_violations_ = 0;
    std::vector<UndoRecord> trail_;

    std::uint64_t mutation_steps_ = 0;
    std::uint64_t shadow_checks_ = 0;

    // epoch-marked scratch space for con_component
    mutable std::vector<std::uint32_t> clause_mark_, int_mark_, var_mark_, var_out_mark_;
    mutable std::uint32_t epoch_ = 0;
};

}  // namespace kcnf
