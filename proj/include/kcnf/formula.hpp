#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kcnf/errors.hpp"
#include "kcnf/rational.hpp"
#include "kcnf/rng.hpp"

namespace kcnf {

using Var = std::uint32_t;  // 1-based variable index

// Literal packed SAT-solver style: code = 2*var + sign, sign 1 = negated.
struct Literal {
    std::uint32_t code = 0;

    Literal() = default;
    Literal(Var v, bool negated) : code((v << 1) | (negated ? 1u : 0u)) {}

    Var var() const { return code >> 1; }
    bool negated() const { return (code & 1u) != 0; }

    // DIMACS integer form: +v or -v.
    int to_dimacs() const { return negated() ? -static_cast<int>(var()) : static_cast<int>(var()); }
    static Literal from_dimacs(int lit) {
        return Literal(static_cast<Var>(lit < 0 ? -lit : lit), lit < 0);
    }

    friend bool operator==(const Literal& a, const Literal& b) { return a.code == b.code; }
};

struct Clause {
    std::vector<Literal> lits;  // exactly k literals, duplicates allowed
    std::vector<Var> vbl;       // distinct variables, sorted ascending

    void build_vbl();
};

class Formula {
  public:
    Formula() = default;
    Formula(Var n, std::uint32_t k, std::vector<Clause> clauses);

    Var num_vars() const { return n_; }
    std::uint32_t width() const { return k_; }
    std::size_t num_clauses() const { return clauses_.size(); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(std::size_t c) const { return clauses_[c]; }

    // Clause indices containing v (deduplicated), ascending.
    const std::vector<std::uint32_t>& clauses_of(Var v) const { return var_to_clauses_[v]; }
    std::size_t degree(Var v) const { return var_to_clauses_[v].size(); }
    std::size_t max_degree() const;

    Rational alpha() const { return n_ == 0 ? Rational(0) : Rational(static_cast<long long>(clauses_.size()), static_cast<long long>(n_)); }

  private:
    Var n_ = 0;
    std::uint32_t k_ = 0;
    std::vector<Clause> clauses_;
    std::vector<std::vector<std::uint32_t>> var_to_clauses_;  // index 0 unused
};

// Per-variable assignment state. Star and Untouched are both "unassigned".
enum class VarState : std::uint8_t { Untouched = 0, Zero = 1, One = 2, Star = 3 };

inline bool is_unassigned(VarState s) { return s == VarState::Untouched || s == VarState::Star; }
inline bool is_assigned(VarState s) { return s == VarState::Zero || s == VarState::One; }

struct PartialAssignment {
    std::vector<VarState> states;  // size n+1, index 0 unused

    PartialAssignment() = default;
    explicit PartialAssignment(Var n) : states(n + 1, VarState::Untouched) {}

    Var num_vars() const { return states.empty() ? 0 : static_cast<Var>(states.size() - 1); }
    VarState operator[](Var v) const { return states[v]; }
    VarState& operator[](Var v) { return states[v]; }

    bool unassigned(Var v) const { return is_unassigned(states[v]); }

    // True iff some 0/1 value makes a literal of c true. Star never satisfies.
    bool satisfies(const Clause& c) const {
        for (const Literal& l : c.lits) {
            VarState s = states[l.var()];
            if (s == VarState::One && !l.negated()) return true;
            if (s == VarState::Zero && l.negated()) return true;
        }
        return false;
    }

    std::vector<Var> unassigned_vars() const {
        std::vector<Var> out;
        for (Var v = 1; v < states.size(); ++v)
            if (is_unassigned(states[v])) out.push_back(v);
        return out;
    }
};

// True iff every clause of f is satisfied by the (full or partial) assignment.
bool satisfies_all(const Formula& f, const PartialAssignment& sigma);

Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(const std::string& text);
void write_dimacs(const Formula& f, std::ostream& out);
std::string write_dimacs(const Formula& f);

// Each of the k*m literals i.i.d. uniform over the 2n signed variables.
Formula generate_random_kcnf(std::uint32_t k, Var n, std::uint64_t m, Rng& rng);

struct Component {
    std::vector<Var> vars;               // ascending
    std::vector<std::uint32_t> clauses;  // ascending clause indices
};

// Maximal connected components of the formula restricted by sigma (clauses
// satisfied by sigma drop out, connectivity runs through unassigned shared
// variables), keeping only components that intersect S. An isolated v in S
// yields ({v}, {}). Components are ordered by smallest variable.
std::vector<Component> components_under(const Formula& f, const PartialAssignment& sigma,
                                        const std::vector<Var>& S);

}  // namespace kcnf
