// Generalised Ornstein-Uhlenbeck process driven by a Bernstein-Gaussian
// motion X:
//
//   dU_t = -theta U_t dt + sigma dX_t,   U_0 = u0,
//
// understood through the explicit solution
//
//   U_t = u0 e^{-theta t} + sigma [ X_t - theta int_0^t e^{theta(s-t)} X_s ds ].
//
// The Gaussian fluctuation admits the moving-average form int h_t(x) dB_x with
//
//   h_t(x) = k_ind(0,t,x) - theta int_0^t e^{theta(s-t)} k_ind(0,s,x) ds,
//
// where k_ind(a,b,x) is the kernel of the driver's increment on (a,b]
// (gfo_indicator). Mean and covariance follow by Ito isometry:
//
//   E U_t        = u0 e^{-theta t},
//   Cov(U_s,U_t) = sigma^2 int_{-inf}^{max} h_s(x) h_t(x) dx.
//
// For the Brownian driver both reduce to the classical OU closed forms, which
// the tests use as oracles.

#pragma once

#include <cstdint>
#include <vector>

#include "bgm/kernels.hpp"
#include "bgm/simulate.hpp"

namespace bgm {

struct OuSpec {
  ProcessSpec process;
  double theta = 1.0;
  double sigma = 1.0;
  double u0 = 0.0;
};

// Moving-average kernel h_t(x) of the fluctuation part (x < t; 0 for x >= t).
double ou_h_kernel(const OuSpec& ou, double t, double x);

// E U_t = u0 e^{-theta t}.
double ou_mean(const OuSpec& ou, double t);

// Cov(U_{t1}, U_{t2}) = sigma^2 int h_{t1}(x) h_{t2}(x) dx.
double ou_cov(const OuSpec& ou, double t1, double t2);

// Pathwise construction: given driver paths X on a uniform grid, evaluate the
// solution formula with the trapezoid rule via the O(n) recursion
//   G_i = e^{-theta h} G_{i-1} + (h/2)(e^{-theta h} X_{i-1} + X_i),
// so that U_i = u0 e^{-theta t_i} + sigma (X_i - theta G_i).
// The output ensemble keeps the driver's grid, seed, and method.
PathEnsemble ou_simulate(const OuSpec& ou, const PathEnsemble& driver);

// Residual of the integrated SDE along one simulated pair (U, X):
//   r = max_i | U_{t_i} - u0 + theta * trapz(U, 0, t_i) - sigma X_{t_i} |.
// Decays O(h^2) as the grid refines; used as a structural self-test.
double ou_sde_residual(const OuSpec& ou, const std::vector<double>& grid,
                       const std::vector<double>& u_path,
                       const std::vector<double>& x_path);

} // namespace bgm
