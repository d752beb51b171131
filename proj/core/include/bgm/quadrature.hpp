// Adaptive quadrature toolkit: Gauss-Kronrod 7-15 bisection, semi-infinite
// maps, power substitutions for integrable endpoint singularities, and an
// alternating-series accelerator for oscillatory tails.
//
// The integrators are deliberately small and deterministic: same inputs give
// bit-identical results regardless of thread context.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace bgm::quad {

// Gauss-Kronrod 7-15 node/weight tables (positive half; node[7] = 0).
extern const double kGK15Nodes[8];
extern const double kGK15WeightsK[8];
extern const double kGK15WeightsG[4];

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  int max_depth = 48;
  // Hard cap on bisections per integrate() call. Every integrand with
  // resolvable structure converges orders of magnitude below this; integrands
  // whose error estimates sit at an evaluation noise floor (e.g. evaluators
  // that are internally quadratures, with noise amplified by cancellation)
  // would otherwise subdivide without bound chasing noise. Exhausting the
  // budget accepts the outstanding intervals at their current estimates,
  // degrading gracefully to the noise-limited accuracy. Deterministic:
  // the depth-first split order is fixed.
  int max_splits = 10000;
};

namespace detail {

// Single Gauss-Kronrod 7-15 rule application on [a, b].
// Returns {K15 value, |K15 - G7| error estimate}.
template <class F>
inline std::pair<double, double> gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kGK15WeightsK[7] * fc;
  double resg = kGK15WeightsG[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kGK15Nodes[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kGK15WeightsK[j] * fsum;
    if (j % 2 == 1) resg += kGK15WeightsG[j / 2] * fsum;
  }
  return {resk * h, std::fabs((resk - resg) * h)};
}

// Recursive refinement of one node whose GK15 value/error are already known.
// Three stopping rules beyond the plain tolerance test keep pathological
// integrands from exploding into full binary subdivision:
//  - round-off acceptance: |K - G| bottoms out near eps * |integral| on a
//    smooth piece, below which the halved tolerance is unreachable;
//  - width floor and depth cap;
//  - stagnation at the integrand's own noise floor: when a split leaves the
//    children's combined error estimate at the parent's level even though
//    that estimate already sits at relative round-off scale of the local
//    value, the "error" is noise carried by the integrand itself (e.g. an
//    evaluator that is internally a quadrature), not structure that
//    refinement can resolve. Resolvable features never trip this: a kink,
//    an unresolved oscillation, or a singular chain keeps the error large
//    relative to the local value (orders of magnitude above 1e-9).
template <class F>
inline double adapt(F&& f, double a, double b, double v, double e, double tol,
                    int depth, int max_depth, int& splits_left) {
  if (e <= tol || e <= 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(v) ||
      depth >= max_depth || splits_left <= 0 ||
      !(b - a > 1e-15 * (std::fabs(a) + std::fabs(b) + 1e-300)))
    return v;
  --splits_left;
  const double c = 0.5 * (a + b);
  auto [vl, el] = gk15(f, a, c);
  auto [vr, er] = gk15(f, c, b);
  if (depth >= 8 && el + er >= 0.5 * e &&
      el + er <= 1e-9 * (std::fabs(vl) + std::fabs(vr)))
    return vl + vr;
  return adapt(f, a, c, vl, el, 0.5 * tol, depth + 1, max_depth, splits_left) +
         adapt(f, c, b, vr, er, 0.5 * tol, depth + 1, max_depth, splits_left);
}

} // namespace detail

// Adaptive integral of f over the finite interval [a, b].
template <class F>
inline double integrate(F&& f, double a, double b, Options opt = {}) {
  if (!(b > a)) return 0.0;
  auto [v0, e0] = detail::gk15(f, a, b);
  const double tol = std::fmax(opt.abs_tol, opt.rel_tol * std::fabs(v0));
  int splits_left = opt.max_splits;
  return detail::adapt(f, a, b, v0, e0, tol, 0, opt.max_depth, splits_left);
}

// Integral of f over [a, inf) via x = a + u/(1-u). The integrand must decay
// at least like x^{-p} with p > 1 for convergence; algebraic decay produces an
// integrable endpoint singularity in u that the bisection resolves.
template <class F>
inline double integrate_to_inf(F&& f, double a, Options opt = {}) {
  auto g = [&](double u) {
    const double om = 1.0 - u;
    // Deep bisection near u = 1 can round a node to exactly 1; the mapped
    // point is then x = inf, where any convergent integrand contributes 0.
    if (om <= 0.0) return 0.0;
    const double x = a + u / om;
    return f(x) / (om * om);
  };
  return integrate(g, 0.0, 1.0, opt);
}

// Integral of f over [a, b], 0 < a < b, split into dyadic panels [c, 2c].
// A single wide stencil can miss integrands localized near the left edge
// entirely (e.g. e^{-x} over [1, 4000]: every quadrature node lands where
// the integrand has already decayed to ~0, and the error estimate accepts
// the interval as zero). Panels whose width is comparable to their location
// sample every scale, so such mass is never skipped.
template <class F>
inline double integrate_dyadic(F&& f, double a, double b, Options opt = {}) {
  double s = 0.0;
  while (a < b) {
    const double c = std::fmin(2.0 * a, b);
    s += integrate(f, a, c, opt);
    a = c;
  }
  return s;
}

// Integral of f over [0, b] where f has an integrable power singularity at 0
// (f ~ x^{-g}, g < 1). Substituting x = v^p with p >= 1/(1-g) makes the
// transformed integrand bounded: \int f(x) dx = \int f(v^p) p v^{p-1} dv.
template <class F>
inline double integrate_power0(F&& f, double b, double p, Options opt = {}) {
  const double vb = std::pow(b, 1.0 / p);
  auto g = [&](double v) { return f(std::pow(v, p)) * p * std::pow(v, p - 1.0); };
  return integrate(g, 0.0, vb, opt);
}

// Sum of an eventually-alternating sequence of half-wave integrals:
// integrates f over consecutive intervals [z0 + k*h, z0 + (k+1)*h] and
// accelerates the partial-sum sequence by repeated averaging (Euler/van
// Wijngaarden). Intended for oscillatory tails \int_{z0}^inf f with f a
// smooth envelope times cos/sin whose half-period is h.
template <class F>
inline double alternating_tail(F&& f, double z0, double h, int n_terms = 28, Options opt = {}) {
  // Interval errors accumulate across the series, so split the caller's
  // absolute budget across the terms (floored near machine noise).
  opt.abs_tol = std::fmax(opt.abs_tol / n_terms, 1e-14);
  double partial[64];
  if (n_terms > 64) n_terms = 64;
  double s = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    s += integrate(f, z0 + k * h, z0 + (k + 1) * h, opt);
    partial[k] = s;
  }
  // repeated averaging of the partial-sum sequence
  int n = n_terms;
  while (n > 1) {
    for (int i = 0; i + 1 < n; ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    --n;
  }
  return partial[0];
}

} // namespace bgm::quad
