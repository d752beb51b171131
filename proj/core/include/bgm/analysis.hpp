// Memory structure (increment covariances rho_n, short- vs long-range
// dependence), variance asymptotics, and regularity scaling diagnostics.

#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "bgm/covariance.hpp"

namespace bgm {

// rho_n = E[B_1 (B_{n+1} - B_n)], computed from the direct integral form
//   rho_n = C [ int_0^1 g(x)(g(n+x) - g(n-1+x)) dx
//             + int_0^inf (g(1+w) - g(w))(g(n+1+w) - g(n+w)) dw ]
// which avoids the catastrophic cancellation of second-differencing V.
double rho_n(const ProcessSpec& spec, int n);

// The same quantity as the second difference [V(n+1) + V(n-1) - 2V(n)]/2;
// used as a cross-check of the direct form.
double rho_n_from_variance(const ProcessSpec& spec, int n);

// sum_{n=1}^N rho_n via the telescoping identity
//   [V(N+1) - V(N) - V(1)] / 2
// (cheap at large N; drives the long-range divergence checks).
double rho_partial_sum_telescoped(const ProcessSpec& spec, int N);

enum class MemoryClass { short_range, long_range, indeterminate };
const char* to_string(MemoryClass c);

struct MemoryReport {
  std::vector<std::pair<int, double>> rho; // (n, rho_n), n = 1..N
  bool all_negative = false;
  bool all_positive = false;
  std::vector<double> partial_abs_sums;    // running sum of |rho_n|
  double decay_exponent = 0.0;             // log|rho_n| vs log n fit, upper half
  double fit_r2 = 0.0;
  MemoryClass classification = MemoryClass::indeterminate;
};

// Classification policy: short_range needs Cauchy tail sums (increments of
// sum|rho| below 1e-6) and fitted exponent < -1; long_range needs diverging
// partial sums or exponent >= -1.
MemoryReport memory_report(const ProcessSpec& spec, int n_max);

enum class VarianceClass { finite_limit, diverges_sublinearly };
const char* to_string(VarianceClass c);

// Derivative flavor only: nu in L^2(R+) gives a finite variance limit,
// otherwise V(t) -> inf sublinearly. Probed by tail-exponent fit of nu and
// cross-checked on V at t in {1e2, 1e3, 1e4}.
VarianceClass variance_class(const ProcessSpec& spec);

struct ScalingReport {
  std::vector<double> a_grid;
  std::vector<double> g_values;   // g(a) = int A(a x)(1-cos x)/x^2 dx = a W(1/a)
  double fitted_exponent = 0.0;   // slope e* of log g vs log a
  double fit_r2 = 0.0;
  // Paths are gamma-Holder for gamma < (1-e*)/2, the small-time variance
  // exponent over two (g(1/t)*t is proportional to V(t), so V(h) ~ h^{1-e*}).
  double holder_gamma_bound = 0.0;
  double local_time_beta = 0.0;   // = e* when the fit is clean (r2 >= 0.99), else NaN
};

ScalingReport regularity_scaling(const ProcessSpec& spec,
                                 const std::vector<double>& a_grid);

// part1/part2 of the variance decomposition over a time grid (the ratio
// whose limit separates the example kernels: ->0, ->const, ->inf).
std::vector<std::pair<double, double>> variance_ratio_curve(
    const ProcessSpec& spec, const std::vector<double>& t_grid);

// CSV writers. MemoryReport: "n,rho,partial_abs_sum"; ScalingReport:
// "a,g,fit_exponent" (constant fit column).
void write_csv(const MemoryReport& report, std::ostream& os);
void write_csv(const ScalingReport& report, std::ostream& os);

} // namespace bgm
