// Variance and covariance of the process by two independent routes:
// time-domain kernel quadrature and a Fourier-domain spectral integral.
//
// Time domain, derivative flavor:
//   V(t) = C [ I1 + I2 ],  I1 = int_0^inf (nu(u) - nu(t+u))^2 du,
//                          I2 = int_0^t nu(u)^2 du
// integral flavor replaces nu-differences by chi-increments (J1, J2).
// Covariance follows from stationary increments:
//   cov(t,s) = [V(t) + V(s) - V(|t-s|)] / 2.
//
// Fourier route: W(tau) = int_0^inf A(x) (1 - cos(tau x)) / x^2 dx with
// A = the flavor kernel's squared Fourier symbol; V_F(t) = W(t)/W(1).

#pragma once

#include <iosfwd>
#include <vector>

#include "bgm/kernels.hpp"

namespace bgm {

struct VarianceDecomposition {
  double t;
  double total; // C * (part1 + part2)
  double part1; // I1 (derivative) or J1 (integral)
  double part2; // I2 or J2
};

// Decomposed variance at time t; relative accuracy ~1e-9.
VarianceDecomposition variance_time(const ProcessSpec& spec, double t);

// Cached total variance (memoized per spec; exact recomputation per distinct t).
double variance(const ProcessSpec& spec, double t);

// [V(t) + V(s) - V(|t-s|)] / 2.
double covariance_time(const ProcessSpec& spec, double t, double s);

// Spectral workhorse W(tau) = int_0^inf A(x)(1-cos(tau x))/x^2 dx.
double fourier_w(const ProcessSpec& spec, double tau);

// Fourier-route covariance, calibrated so covariance_fourier(1,1) = 1:
// N * int_0^inf A(x)[1 - cos tx - cos sx + cos((t-s)x)]/x^2 dx.
double covariance_fourier(const ProcessSpec& spec, double t, double s);

enum class Route { time_domain, fourier };

struct CovarianceTable {
  std::vector<double> grid;   // sorted times >= 0
  std::vector<double> values; // row-major n x n, symmetric
  Route route;
  std::string spec_string;

  double at(std::size_t i, std::size_t j) const {
    return values[i * grid.size() + j];
  }
};

// Evaluate the covariance on grid x grid (threads > 1 parallelizes rows).
CovarianceTable covariance_table(const ProcessSpec& spec,
                                 const std::vector<double>& grid, Route route,
                                 int threads = 1);

// CSV: header "t,s,cov,route", one row per ordered pair, 17 significant digits.
void write_csv(const CovarianceTable& table, std::ostream& os);

} // namespace bgm
