// Moving-average (Mandelbrot-van Ness type) kernels built from a Bernstein
// family and a flavor, their L^2 normalization, and the generalized
// fractional operators applied to indicators and smooth test functions.

#pragma once

#include <functional>
#include <memory>
#include <string>

#include "bgm/bernstein.hpp"

namespace bgm {

// A fully specified process: family + kernel flavor. Immutable value type;
// copies share the lazily computed normalization and variance cache.
class ProcessSpec {
 public:
  ProcessSpec(FamilyPtr family, Flavor flavor);

  const BernsteinFamily& family() const { return *family_; }
  const FamilyPtr& family_ptr() const { return family_; }
  Flavor flavor() const { return flavor_; }

  // Kernel ingredient g = nu (derivative) or chi (integral), and its
  // cancellation-free increment g(w+t) - g(w).
  double g(double x) const;
  double g_increment(double w, double t) const;

  // C_phi = 1 / int_R k_raw(1,u)^2 du, computed once on first use
  // (thread-safe); makes Var(B_1) = 1.
  double normalization() const;

  std::string to_string() const; // "<family>/<flavor>"

 private:
  friend struct SpecCacheAccess;
  FamilyPtr family_;
  Flavor flavor_;
  std::shared_ptr<struct SpecCache> cache_;
};

// Unnormalized kernel g((t-u)_+) - g((-u)_+), each term dropped when its
// argument is <= 0. Returns +infinity at u = t in derivative flavor (the
// kernel's integrable singularity); exact 0 for u >= t otherwise.
double kernel_raw(const ProcessSpec& spec, double t, double u);

// sqrt(C_phi) * kernel_raw.
double kernel_eval(const ProcessSpec& spec, double t, double u);

// Image of the indicator 1_{(a,b]} under the flavor operator:
// g((b-x)_+) - g((a-x)_+).
double gfo_indicator(const ProcessSpec& spec, double a, double b, double x);

// Weyl-type operator on a smooth test function with known derivative:
// derivative flavor  int_0^inf f'(x-t) nu(t) dt
// integral flavor    int_0^inf f(x-t) kappa(t) dt
// f must decay at -inf (Gaussian-type test functions).
double gfo_apply_smooth(const ProcessSpec& spec,
                        const std::function<double(double)>& f,
                        const std::function<double(double)>& fprime,
                        double x);

// |<f, M 1_{(0,t]}> - <M f, 1_{(0,t]}>|: integration-by-parts residual with
// the two sides computed by independent quadratures.
double ibp_residual(const ProcessSpec& spec,
                    const std::function<double(double)>& f,
                    const std::function<double(double)>& fprime, double t);

} // namespace bgm
