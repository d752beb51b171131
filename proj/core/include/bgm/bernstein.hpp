// Catalog of Bernstein functions phi with their Levy densities/tails and
// Sonine partners (kappa, chi), plus numerical probes for the integrability
// conditions that decide which kernel flavor a family supports.
//
// Families and the grammar accepted by make_family():
//   stable:alpha=0.5            phi = x^{|1-alpha|/2},        alpha in (0,2)
//   tempered1:alpha=0.5,lambda=1.0   phi = x (x+lambda)^{-(1+alpha)/2}
//   tempered2:alpha=0.3,lambda=1.0   phi = (lambda+x)^alpha - lambda^alpha
//   ml:alpha=0.3,beta=0.7       phi = x^{1-beta+alpha} / (x^alpha + 1)
//   gamma                       phi = log(1+x)
//   exponential                 phi = x/(1+x)
//   composite:alpha=0.4,beta=0.8    kappa = z^-alpha (z<=1), z^-beta (z>1)
//   distorder:alphas=0.3|0.6,weights=0.5|0.5   weighted stable mixture
//
// Derivative-flavor kernels are built from the tail nu; integral-flavor
// kernels from chi = int_0^x kappa. Increment evaluators exist because the
// variance/memory quadratures need g(w+t)-g(w) far into the tail, where naive
// subtraction of two nearly equal kernel values loses all significance.

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgm {

enum class Flavor { derivative, integral };

std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& s); // "derivative" | "integral"

// Requested evaluator does not exist for the family (e.g. tempered-I kappa).
struct UnsupportedEvaluator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Strategy { closed_form, quadrature, laplace_inversion, unavailable };
const char* to_string(Strategy s);

struct EvaluatorStrategies {
  Strategy nu_bar, nu, kappa, chi;
};

enum class Verdict { pass, fail, indeterminate };
const char* to_string(Verdict v);

// One numeric condition probe: a local power-law fit at the relevant
// endpoint. `exponent` is the fitted log-log slope, `r2` the fit quality;
// verdict falls to `indeterminate` when the fit cannot discriminate.
struct ProbeResult {
  Verdict verdict = Verdict::indeterminate;
  double exponent = 0.0;
  double r2 = 0.0;
};

// Conditions (C), (K) on phi, (A1)-(A2) on the density/tail, (B1)-(B2) on
// kappa/chi. Probes never upgrade a combination the source analysis rules
// out; such overrides are explained in `notes`.
struct ConditionReport {
  ProbeResult cond_c, cond_k, a1, a2, b1, b2;
  std::string notes;
};

class BernsteinFamily {
 public:
  virtual ~BernsteinFamily() = default;

  // Canonical grammar string, e.g. "stable:alpha=0.5".
  virtual std::string name() const = 0;

  virtual double phi(double theta) const = 0;

  // |phi(i x)|^2 by per-family complex closed form.
  virtual double phi_mod2(double x) const = 0;

  // Levy density nu_bar and tail nu(s) = int_s^inf nu_bar.
  virtual double nu_bar(double s) const;
  virtual double nu(double s) const;
  virtual bool has_nu() const { return true; }

  // Sonine partner kappa and its running integral chi (when available).
  virtual bool has_kappa() const { return false; }
  virtual double kappa(double s) const;
  virtual double chi(double x) const;

  // g(w+t) - g(w) for g = nu resp. chi, cancellation-free for large w.
  // Defaults do the naive subtraction; power-law families override.
  virtual double nu_increment(double w, double t) const;
  virtual double chi_increment(double w, double t) const;

  // nu(s) ~ s^{-e0} as s -> 0 (0 for logarithmic or bounded kernels);
  // guides the substitution that removes the head singularity.
  virtual double nu_zero_exponent() const = 0;

  // kappa(s) ~ s^{-g} as s -> 0 (g < 1); guides the substitution used by the
  // Sonine convolution. Only meaningful when has_kappa().
  virtual double kappa_zero_exponent() const;

  // chi(x) ~ x^E as x -> inf with E in (0, 1/2); guides the tail map of the
  // integral-flavor quadratures. Only meaningful when has_kappa().
  virtual double chi_tail_exponent() const;

  // Closed-form remainder int_U^inf (chi(w+t)-chi(w))^2 dw for families whose
  // kappa decays only logarithmically faster than 1/sqrt(w) (no power-map
  // substitution resolves those tails). NaN when unavailable (the default).
  virtual double chi_inc_sq_tail_remainder(double U, double t) const;

  // True when nu decays exponentially (tails can be truncated aggressively).
  virtual bool nu_exponential_tail() const { return false; }

  // Squared modulus of the flavor kernel's Fourier symbol:
  // derivative -> |phi(ix)|^2; integral -> |phi(ix)|^{-2} by default.
  // Families whose integral kernel is an operator sum (distorder) or a
  // transform-defined kappa (composite) override the integral branch.
  virtual double fourier_symbol_sq(double x, Flavor flavor) const;

  virtual EvaluatorStrategies strategies() const = 0;

  // Which kernel flavors the family supports (validity matrix from the
  // source analysis; probes can only narrow it, never widen it).
  virtual bool flavor_supported(Flavor flavor) const;
};

using FamilyPtr = std::shared_ptr<const BernsteinFamily>;

// Parse a family grammar string (see file header). Throws std::invalid_argument
// on unknown families, malformed parameters, or out-of-range values.
FamilyPtr make_family(const std::string& spec);

// The canonical catalog exercised by tests and `bgm catalog`.
struct CatalogEntry {
  std::string spec;
  Flavor flavor;
};
const std::vector<CatalogEntry>& canonical_catalog();

// Ratio-curve example kernels (integral flavor only; not in the CLI grammar).
// ex54: kappa = z^-delta (z<1), 1/z (z>=1)  -> part1/part2 -> 0
// ex55: kappa = z^-1/2 (z<e), 1/(sqrt z log z) (z>=e) -> part1/part2 -> inf
FamilyPtr make_example54(double delta);
FamilyPtr make_example55();

// |int_0^t nu(z) kappa(t-z) dz - 1|. Throws UnsupportedEvaluator unless both
// kernels exist.
double sonine_residual(const BernsteinFamily& fam, double t);

// |int_0^t nu(z) chi(t-z) dz - t|, the integrated form of the same identity;
// usable for families whose kappa is too singular to convolve directly.
double integrated_sonine_residual(const BernsteinFamily& fam, double t);

// Probe conditions (C)/(K) and the flavor-relevant integrability conditions.
ConditionReport check_conditions(const BernsteinFamily& fam, Flavor flavor);

} // namespace bgm
