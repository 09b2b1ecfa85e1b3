#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kcnf/rational.hpp"

namespace kcnf {

enum class Regime { Typical, SmallError, SmallDensity };

const char* regime_name(Regime r);

struct ParamOverrides {
    std::optional<Rational> eta;
    std::optional<double> degree_threshold;  // D
    std::optional<Rational> delta;
    std::optional<std::uint64_t> s;          // truncation size
    std::optional<bool> s_infinite;
};

// Parameter ledger. The profile formulas are
//   eta = 15*log2(k)/k,  D = k^8*(alpha+1)/xi,  delta = xi/(k^40*alpha),
//   s = ceil(6*k^4*alpha*log2(n/eps)),
// with overrides applied last and recorded. Integer thresholds derived from
// eta are kept in exact form; see live_floor below.
struct Params {
    std::uint32_t k = 0;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    Rational alpha;       // m/n
    double eps = 0.05;
    double xi = 1.0;

    Rational eta;
    bool eta_overridden = false;
    bool eta_in_theory = false;  // eta < 1, the range the profile formula assumes

    double degree_threshold = 0;  // D
    bool degree_threshold_overridden = false;

    Rational delta;  // tau's star mass
    bool delta_overridden = false;
    bool delta_underflowed = false;  // profile formula produced 0 at this scale

    std::uint64_t s = 0;
    bool s_infinite = false;
    bool s_overridden = false;

    Regime regime = Regime::Typical;

    // Integer threshold ladder from T = (2/3 - 2*eta)*k, computed exactly:
    //   clause frozen            iff unsat, non-sep, live <= live_floor
    //   assumption holds for C   iff sat, sep, or live >= live_floor
    //   v can be fixed in C      iff sat, sep, or live >= live_floor + 1
    long long live_floor = 0;  // ceil(T)
    long long sep_overlap_min = 0;

    // Operational knobs.
    std::uint32_t enum_cap = 26;
    std::uint64_t rejection_budget = 0;  // attempts per component, 0 = unbounded
    std::uint64_t step_budget = 0;       // total work guard, 0 = none
    bool verify_local_uniformity = false;
    bool debug_shadow = false;

    std::string describe() const;
};

Params derive_params(std::uint32_t k, std::uint64_t n, std::uint64_t m, double eps, double xi,
                     const ParamOverrides& overrides = {});

// Profile formula values, exposed for testing and reports.
Rational eta_profile(std::uint32_t k);
double degree_threshold_profile(std::uint32_t k, const Rational& alpha, double xi);
double delta_profile(std::uint32_t k, const Rational& alpha, double xi);
std::uint64_t s_profile(std::uint32_t k, const Rational& alpha, std::uint64_t n, double eps);

// Exact ceil((2/3 - 2*eta)*k).
long long live_floor_from_eta(const Rational& eta, std::uint32_t k);

}  // namespace kcnf
