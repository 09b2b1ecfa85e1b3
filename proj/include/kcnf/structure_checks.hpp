#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcnf/formula.hpp"
#include "kcnf/params.hpp"
#include "kcnf/rng.hpp"

namespace kcnf {

enum class CheckMode : std::uint8_t { Exhaustive, Sampled };
enum class Verdict : std::uint8_t { Holds, Violated, NoViolationFound, Skipped };

const char* verdict_name(Verdict v);
const char* check_mode_name(CheckMode m);

struct Witness {
    std::vector<Var> vars;
    std::vector<std::uint32_t> clauses;
    std::vector<std::uint32_t> sequence;  // ordered, for the peeling property
    long long ell = 0;                    // size/threshold parameter where applicable
    double lhs = 0;
    double rhs = 0;
};

struct CheckCaps {
    Var max_subset_n = 16;               // exhaustive subset quantification requires n <= this
    std::uint32_t max_clause_subset = 12;
    std::uint32_t max_ell = 6;           // connected clause-set size for p3.5
    std::uint32_t max_connected_size = 10;
    // Replaces the statement's own domain size bound (e.g. n/2^{k/log k})
    // when set; recorded in the report note.
    std::optional<double> domain_bound_override;
};

struct CheckReport {
    std::string property;
    CheckMode mode = CheckMode::Exhaustive;
    Verdict verdict = Verdict::Holds;
    Witness witness;
    double extremal_ratio = 0;  // max lhs/rhs seen over the examined domain
    std::uint64_t trials = 0;
    std::string note;
};

// Property ids: p3.2, p3.3.1, p3.3.2, p3.4, p3.5, p3.6, p3.7, p3.8, p3.9, p3.10.
// Evaluates the quantified statement literally over the permitted domain
// (exhaustive) or over sampled candidate witnesses; sampling never claims
// "holds", only "no violation found in N trials".
CheckReport check_property(const Formula& f, const std::string& property_id, const Params& params,
                           CheckMode mode, std::uint64_t trials, Rng& rng, const CheckCaps& caps = {});

// Independent naive re-evaluation of a violation witness.
bool verify_witness(const Formula& f, const std::string& property_id, const Params& params,
                    const Witness& w, const CheckCaps& caps = {});

std::vector<std::string> all_property_ids();

}  // namespace kcnf
