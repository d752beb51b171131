// Special functions used by the Bernstein-function catalog: exponential
// integrals, incomplete gamma functions on the extended parameter range,
// the two-parameter Mittag-Leffler function on the negative real axis, and
// Tricomi's confluent hypergeometric function.
//
// Everything is double precision. Accuracy targets (validated against
// independent high-precision references): ~1e-13 relative for E1/Ei and the
// incomplete gammas, ~1e-11 relative for Mittag-Leffler on the parameter
// ranges used by the catalog (worst stress cases ~1e-8), ~1e-11 for Tricomi.

#pragma once

namespace bgm::sf {

// E1(x) = \int_x^inf e^{-u}/u du, x > 0.
// Series for x <= 1, modified Lentz continued fraction for x > 1;
// usable down to the subnormal range of e^{-x} (x ~ 700).
double e1(double x);

// Ei(x) = PV \int_{-inf}^x e^{u}/u du for x > 0 (all-positive series
// gamma + ln x + sum x^k/(k k!)); needed for the log-decay catalog entry.
double ei(double x);

// Upper incomplete gamma Gamma(rho, x) = \int_x^inf u^{rho-1} e^{-u} du
// for x > 0 and rho in (-2, 2]; negative rho is reached by the downward
// recurrence Gamma(rho, x) = (Gamma(rho+1, x) - x^rho e^{-x}) / rho.
double gamma_upper(double rho, double x);

// Lower incomplete gamma gamma(beta, x) = \int_0^x u^{beta-1} e^{-u} du,
// beta > 0, x >= 0. Series for small x, complement against Gamma(beta)
// otherwise.
double gamma_lower(double beta, double x);

// Two-parameter Mittag-Leffler function on the negative real axis:
//   E_{alpha,beta}(-x) = sum_{k>=0} (-x)^k / Gamma(beta + alpha k),
// for alpha in (0, 1], beta real (beta <= 0 included), x >= 0.
// Dispatch: guarded Taylor series -> asymptotic series with min-term
// truncation (x > 10) -> Gorenflo-Loutchko-Luchko integral (beta <= 1)
// -> beta-reduction recursion. alpha = 1 uses a cancellation-free
// Kummer-transformed series.
double mittag_leffler_neg(double alpha, double beta, double x);

// Tricomi confluent hypergeometric function
//   Psi(a; c; x) = (1/Gamma(a)) \int_0^inf e^{-x u} u^{a-1} (1+u)^{c-a-1} du,
// a > 0, x > 0 (integral representation, adaptive quadrature).
double tricomi_psi(double a, double c, double x);

// Regularized lower incomplete gamma P(beta, x) = gamma(beta, x)/Gamma(beta).
double gamma_lower_reg(double beta, double x);

} // namespace bgm::sf
