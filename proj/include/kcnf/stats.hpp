#pragma once

#include <cstdint>

namespace kcnf {

// Regularized incomplete gamma functions (series for x < a+1, continued
// fraction otherwise), accurate to ~1e-12 over the ranges used here.
double gamma_p(double a, double x);  // P(a, x)
double gamma_q(double a, double x);  // Q(a, x) = 1 - P(a, x)

// Survival function of the chi-square distribution with df degrees of freedom.
double chi_square_sf(double stat, double df);

}  // namespace kcnf
