#include "bgm/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "bgm/quadrature.hpp"
#include "detail.hpp"

namespace bgm {

ProcessSpec::ProcessSpec(FamilyPtr family, Flavor flavor)
    : family_(std::move(family)),
      flavor_(flavor),
      cache_(std::make_shared<SpecCache>()) {
  if (!family_) throw std::invalid_argument("ProcessSpec: null family");
  if (!family_->flavor_supported(flavor_))
    throw std::invalid_argument(family_->name() + ": the " +
                                bgm::to_string(flavor_) +
                                " flavor is not supported by this family "
                                "(validity conditions fail)");
}

double ProcessSpec::g(double x) const {
  return flavor_ == Flavor::derivative ? family_->nu(x) : family_->chi(x);
}

double ProcessSpec::g_increment(double w, double t) const {
  return flavor_ == Flavor::derivative ? family_->nu_increment(w, t)
                                       : family_->chi_increment(w, t);
}

double ProcessSpec::normalization() const {
  std::call_once(cache_->norm_once, [&] {
    auto [p1, p2] = detail::raw_variance_parts(*this, 1.0);
    cache_->normalization = 1.0 / (p1 + p2);
  });
  return cache_->normalization;
}

std::string ProcessSpec::to_string() const {
  return family_->name() + "/" + bgm::to_string(flavor_);
}

double kernel_raw(const ProcessSpec& spec, double t, double u) {
  if (!(t > 0.0)) return 0.0;
  if (u > t) return 0.0;
  if (u == t)
    return spec.flavor() == Flavor::derivative
               ? std::numeric_limits<double>::infinity()
               : 0.0;
  if (u >= 0.0) return spec.g(t - u);
  return spec.g_increment(-u, t);
}

double kernel_eval(const ProcessSpec& spec, double t, double u) {
  return std::sqrt(spec.normalization()) * kernel_raw(spec, t, u);
}

double gfo_indicator(const ProcessSpec& spec, double a, double b, double x) {
  if (!(b > a)) throw std::invalid_argument("gfo_indicator: requires a < b");
  if (x >= b) return 0.0;
  if (x >= a) return spec.g(b - x);
  return spec.g_increment(a - x, b - a);
}

double gfo_apply_smooth(const ProcessSpec& spec,
                        const std::function<double(double)>& f,
                        const std::function<double(double)>& fprime,
                        double x) {
  const auto& fam = spec.family();
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-10;
  if (spec.flavor() == Flavor::derivative) {
    auto h = [&](double t) { return fprime(x - t) * fam.nu(t); };
    return quad::integrate_power0(h, 1.0, 4.0, opt) +
           quad::integrate_to_inf(h, 1.0, opt);
  }
  auto h = [&](double t) { return f(x - t) * fam.kappa(t); };
  const double gk = fam.kappa_zero_exponent();
  if (!(gk < 0.999))
    throw std::runtime_error(fam.name() +
                             ": kappa too singular for smooth application");
  const double p = std::max(4.0, std::ceil(2.0 / (1.0 - gk)) + 2.0);
  return quad::integrate_power0(h, 1.0, p, opt) +
         quad::integrate_to_inf(h, 1.0, opt);
}

double ibp_residual(const ProcessSpec& spec,
                    const std::function<double(double)>& f,
                    const std::function<double(double)>& fprime, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("ibp_residual: requires t > 0");
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-9;

  // <f, M 1_(0,t]>: split at x = 0 where the kernel changes form. On x < 0
  // (w = -x) the kernel is an increment of g; on 0 < x < t it is g(t - x).
  auto neg = [&](double w) { return f(-w) * spec.g_increment(w, t); };
  double left = quad::integrate_power0(neg, 1.0, 4.0, opt) +
                quad::integrate_to_inf(neg, 1.0, opt);
  auto pos = [&](double u) { return f(t - u) * spec.g(u); };  // u = t - x
  left += quad::integrate_power0(pos, std::min(1.0, t), 4.0, opt);
  if (t > 1.0) left += quad::integrate(pos, 1.0, t, opt);

  // <M f, 1_(0,t]>: the outer tolerance sits well above the noise floor of
  // the inner quadrature so the subdivision never chases inner noise.
  quad::Options outer;
  outer.abs_tol = 1e-9;
  outer.rel_tol = 1e-7;
  double right = quad::integrate(
      [&](double x) { return gfo_apply_smooth(spec, f, fprime, x); }, 0.0, t,
      outer);

  return std::fabs(left - right);
}

}  // namespace bgm
