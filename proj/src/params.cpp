#include "kcnf/params.hpp"

#include <cmath>
#include <sstream>

#include "kcnf/errors.hpp"
#include "kcnf/separator.hpp"

namespace kcnf {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Typical: return "typical";
        case Regime::SmallError: return "small_error";
        case Regime::SmallDensity: return "small_density";
    }
    return "?";
}

Rational eta_profile(std::uint32_t k) {
    if ((k & (k - 1)) == 0) {
        // power of two: log2 is exact
        long long lg = 0;
        while ((1u << lg) < k) ++lg;
        return Rational(15 * lg, k);
    }
    return Rational::from_double(15.0 * std::log2(static_cast<double>(k)) / k, 1LL << 24);
}

double degree_threshold_profile(std::uint32_t k, const Rational& alpha, double xi) {
    return std::pow(static_cast<double>(k), 8.0) * (alpha.to_double() + 1.0) / xi;
}

double delta_profile(std::uint32_t k, const Rational& alpha, double xi) {
    if (alpha.is_zero()) return 1.0;  // no clauses: marginals are exactly fair
    long double kd = static_cast<long double>(k);
    long double v = static_cast<long double>(xi) / (powl(kd, 40.0L) * alpha.to_double());
    return static_cast<double>(v);
}

std::uint64_t s_profile(std::uint32_t k, const Rational& alpha, std::uint64_t n, double eps) {
    long double kd = static_cast<long double>(k);
    long double v = 6.0L * kd * kd * kd * kd * alpha.to_double() * log2l(static_cast<long double>(n) / eps);
    if (v <= 0) return 0;
    if (v >= 1e18L) return UINT64_MAX - 1;
    return static_cast<std::uint64_t>(ceill(v));
}

long long live_floor_from_eta(const Rational& eta, std::uint32_t k) {
    Rational t = (Rational(2, 3) - Rational(2) * eta) * Rational(static_cast<long long>(k));
    return t.ceil();
}

Params derive_params(std::uint32_t k, std::uint64_t n, std::uint64_t m, double eps, double xi,
                     const ParamOverrides& overrides) {
    if (k < 2) fail(Errc::InvalidDimensions, "derive_params: need k >= 2");
    if (n < 1) fail(Errc::InvalidDimensions, "derive_params: need n >= 1");
    if (!(eps > 0.0 && eps < 1.0)) fail(Errc::InvalidDimensions, "derive_params: need 0 < eps < 1");
    double xi_min = std::pow(2.0, -static_cast<double>(k) / 8.0);
    if (!(xi >= xi_min && xi <= 1.0))
        fail(Errc::InvalidSlack, "xi=" + std::to_string(xi) + " outside [2^{-k/8}, 1]");

    Params p;
    p.k = k;
    p.n = n;
    p.m = m;
    p.alpha = Rational(static_cast<long long>(m), static_cast<long long>(n));
    p.eps = eps;
    p.xi = xi;

    p.eta = overrides.eta.value_or(eta_profile(k));
    p.eta_overridden = overrides.eta.has_value();
    p.eta_in_theory = p.eta < Rational(1);

    p.degree_threshold = overrides.degree_threshold.value_or(degree_threshold_profile(k, p.alpha, xi));
    p.degree_threshold_overridden = overrides.degree_threshold.has_value();

    if (overrides.delta) {
        p.delta = *overrides.delta;
        p.delta_overridden = true;
    } else {
        double dv = delta_profile(k, p.alpha, xi);
        p.delta = Rational::from_double(dv, 1LL << 40);
        p.delta_underflowed = !p.delta.positive();
    }

    if (overrides.s_infinite.value_or(false)) {
        p.s_infinite = true;
        p.s_overridden = true;
    } else if (overrides.s) {
        p.s = *overrides.s;
        p.s_overridden = true;
    } else {
        p.s = s_profile(k, p.alpha, n, eps);
    }

    // Regime boundaries, evaluated in log space: small error means
    // ln(eps) <= -n / 2^{k/2}; small density means alpha <= 1/k^3.
    long double half_k_pow = exp2l(static_cast<long double>(k) / 2.0L);
    bool small_error = logl(static_cast<long double>(eps)) <= -static_cast<long double>(n) / half_k_pow;
    bool small_density =
        p.alpha <= Rational(1, static_cast<long long>(k) * k * k);
    p.regime = small_error ? Regime::SmallError : (small_density ? Regime::SmallDensity : Regime::Typical);

    p.live_floor = live_floor_from_eta(p.eta, k);
    p.sep_overlap_min = sep_overlap_threshold(p.eta, k);
    return p;
}

std::string Params::describe() const {
    std::ostringstream os;
    os << "k=" << k << " n=" << n << " m=" << m << " alpha=" << alpha.str() << " eps=" << eps
       << " xi=" << xi << " eta=" << eta.str() << (eta_overridden ? "(override)" : "")
       << " D=" << degree_threshold << (degree_threshold_overridden ? "(override)" : "")
       << " delta=" << delta.str() << (delta_overridden ? "(override)" : "")
       << " s=" << (s_infinite ? std::string("inf") : std::to_string(s))
       << (s_overridden ? "(override)" : "") << " regime=" << regime_name(regime);
    return os.str();
}

}  // namespace kcnf
