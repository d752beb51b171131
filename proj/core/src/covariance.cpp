#include "bgm/covariance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bgm/io.hpp"
#include "bgm/quadrature.hpp"
#include "detail.hpp"

namespace bgm {

namespace detail {

double integrate_tail(const std::function<double(double)>& f, double U,
                      double p) {
  auto g = [&](double v) {
    const double w = U * std::pow(v, -p);
    const double jac = p * U * std::pow(v, -p - 1.0);
    const double fv = f(w);
    return fv == 0.0 ? 0.0 : fv * jac;
  };
  return quad::integrate(g, 0.0, 1.0);
}

double tail_map_power(const ProcessSpec& spec) {
  if (spec.flavor() == Flavor::derivative) return 2.0;
  // Integral flavor: squared chi-increments decay like w^{2E-2} where
  // chi(x) ~ x^E at infinity; the map w = U v^{-p} turns that into
  // v^{p(1-2E)-1}, so p(1-2E) must exceed ~1.2 for a smooth transformed
  // integrand. E >= 1/2 has no workable power map (the family then has to
  // supply a closed-form remainder).
  const double E = spec.family().chi_tail_exponent();
  if (!(E < 0.45))
    throw std::runtime_error(spec.family().name() +
                             ": chi tail too heavy for the power-map tail "
                             "quadrature and no closed-form remainder");
  return std::ceil(2.2 / (1.0 - 2.0 * E) - 1e-9);
}

std::pair<double, double> raw_variance_parts(const ProcessSpec& spec,
                                             double t) {
  if (!(t > 0.0)) return {0.0, 0.0};
  const auto& fam = spec.family();
  quad::Options opt;  // defaults: abs 1e-12, rel 1e-11

  // part2 = int_0^t g^2, with a power map soaking up the origin singularity.
  auto g2 = [&](double x) {
    const double v = spec.g(x);
    return v * v;
  };
  double part2 = quad::integrate_power0(g2, std::min(1.0, t), 4.0, opt);
  if (t > 1.0) part2 += quad::integrate(g2, 1.0, t, opt);

  // part1 = int_0^inf of squared g-increments. Beyond U the increment is in
  // its asymptotic regime (U >= 4t), where the tail map or a closed-form
  // remainder finishes the job.
  const double U = std::max(32.0, 4.0 * t);
  auto D2 = [&](double w) {
    const double d = spec.g_increment(w, t);
    return d * d;
  };
  double part1;
  if (spec.flavor() == Flavor::derivative) {
    part1 = quad::integrate_power0(D2, 1.0, 4.0, opt) +
            quad::integrate(D2, 1.0, U, opt) + integrate_tail(D2, U, 2.0);
  } else {
    part1 = quad::integrate(D2, 0.0, 1.0, opt) +
            quad::integrate(D2, 1.0, U, opt);
    const double rem = fam.chi_inc_sq_tail_remainder(U, t);
    part1 += std::isnan(rem) ? integrate_tail(D2, U, tail_map_power(spec))
                             : rem;
  }
  return {part1, part2};
}

}  // namespace detail

VarianceDecomposition variance_time(const ProcessSpec& spec, double t) {
  if (t < 0.0) throw std::invalid_argument("variance_time: requires t >= 0");
  if (t == 0.0) return {0.0, 0.0, 0.0, 0.0};
  auto [p1, p2] = detail::raw_variance_parts(spec, t);
  const double c = spec.normalization();
  return {t, c * (p1 + p2), p1, p2};
}

double variance(const ProcessSpec& spec, double t) {
  if (t < 0.0) throw std::invalid_argument("variance: requires t >= 0");
  if (t == 0.0) return 0.0;
  auto& cache = SpecCacheAccess::cache(spec);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.variance_memo.find(t);
    if (it != cache.variance_memo.end()) return it->second;
  }
  const double v = variance_time(spec, t).total;
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.variance_memo.emplace(t, v);
  }
  return v;
}

double covariance_time(const ProcessSpec& spec, double t, double s) {
  if (t < 0.0 || s < 0.0)
    throw std::invalid_argument("covariance_time: requires t, s >= 0");
  if (t == 0.0 || s == 0.0) return 0.0;
  return 0.5 * (variance(spec, t) + variance(spec, s) -
                variance(spec, std::fabs(t - s)));
}

double fourier_w(const ProcessSpec& spec, double tau) {
  if (tau == 0.0) return 0.0;
  tau = std::fabs(tau);
  auto& cache = SpecCacheAccess::cache(spec);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.w_memo.find(tau);
    if (it != cache.w_memo.end()) return it->second;
  }

  const auto& fam = spec.family();
  const Flavor flavor = spec.flavor();
  auto A = [&](double x) { return fam.fourier_symbol_sq(x, flavor); };
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-11;

  // W(tau) = int_0^inf A(x) (1 - cos(tau x)) / x^2 dx, split at
  // x0 = max(1, 1/tau). The head keeps the cancellation-free 2 sin^2 form;
  // beyond x0 the constant part integrates smoothly under x = 1/u and the
  // cosine part alternates over half-periods.
  const double x0 = std::max(1.0, 1.0 / tau);
  auto head_f = [&](double x) {
    const double s = std::sin(0.5 * tau * x);
    return A(x) * 2.0 * s * s / (x * x);
  };
  double head;
  if (flavor == Flavor::integral) {
    // A(x) ~ x^{-2E'} at the origin for the integral flavor.
    head = quad::integrate_power0(head_f, std::min(1.0, x0), 8.0, opt);
    if (x0 > 1.0) head += quad::integrate(head_f, 1.0, x0, opt);
  } else {
    head = quad::integrate(head_f, 0.0, x0, opt);
  }

  auto smooth_f = [&](double u) { return A(1.0 / u); };
  const double smooth = quad::integrate_power0(smooth_f, 1.0 / x0, 8.0, opt);

  auto osc_f = [&](double x) { return A(x) * std::cos(tau * x) / (x * x); };
  const double pi = std::numbers::pi;
  const int k0 = static_cast<int>(std::ceil((tau * x0 - 0.5 * pi) / pi));
  const double z0 = (0.5 * pi + k0 * pi) / tau;
  const double osc = quad::integrate(osc_f, x0, z0, opt) +
                     quad::alternating_tail(osc_f, z0, pi / tau, 28, opt);

  const double w = head + smooth - osc;
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.w_memo.emplace(tau, w);
  }
  return w;
}

double covariance_fourier(const ProcessSpec& spec, double t, double s) {
  if (t < 0.0 || s < 0.0)
    throw std::invalid_argument("covariance_fourier: requires t, s >= 0");
  if (t == 0.0 || s == 0.0) return 0.0;
  const double w1 = fourier_w(spec, 1.0);
  if (!(w1 > 0.0) || !std::isfinite(w1))
    throw std::runtime_error(spec.to_string() +
                             ": spectral calibration failed (W(1) = " +
                             fmt17(w1) + ")");
  const double n = 0.5 / w1;
  return n * (fourier_w(spec, t) + fourier_w(spec, s) -
              fourier_w(spec, std::fabs(t - s)));
}

namespace {

const char* route_name(Route route) {
  return route == Route::time_domain ? "time" : "fourier";
}

// Warm the per-spec memo for every distinct argument the table needs, so the
// fill afterwards is pure lookups and the result is independent of the
// thread schedule.
void warm_values(const ProcessSpec& spec, const std::vector<double>& args,
                 Route route, int threads) {
  auto eval = [&](double v) {
    if (route == Route::time_domain)
      variance(spec, v);
    else
      fourier_w(spec, v);
  };
  const int n = static_cast<int>(args.size());
  const int workers =
      std::max(1, std::min(threads, n));
  if (workers == 1) {
    for (double v : args) eval(v);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        eval(args[static_cast<size_t>(i)]);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

CovarianceTable covariance_table(const ProcessSpec& spec,
                                 const std::vector<double>& grid, Route route,
                                 int threads) {
  for (double t : grid)
    if (t < 0.0 || !std::isfinite(t))
      throw std::invalid_argument("covariance_table: grid times must be "
                                  "finite and >= 0");
  CovarianceTable table;
  table.grid = grid;
  table.route = route;
  table.spec_string = spec.to_string();
  const size_t n = grid.size();
  table.values.assign(n * n, 0.0);
  if (n == 0) return table;

  if (route == Route::fourier) fourier_w(spec, 1.0);  // calibration first
  std::set<double> needed;
  for (size_t i = 0; i < n; ++i) {
    if (grid[i] > 0.0) needed.insert(grid[i]);
    for (size_t j = 0; j < i; ++j) {
      const double d = std::fabs(grid[i] - grid[j]);
      if (d > 0.0) needed.insert(d);
    }
  }
  warm_values(spec, std::vector<double>(needed.begin(), needed.end()), route,
              threads);

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      table.values[i * n + j] =
          route == Route::time_domain
              ? covariance_time(spec, grid[i], grid[j])
              : covariance_fourier(spec, grid[i], grid[j]);
  return table;
}

void write_csv(const CovarianceTable& table, std::ostream& os) {
  os << "t,s,cov,route\n";
  const size_t n = table.grid.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      os << fmt17(table.grid[i]) << ',' << fmt17(table.grid[j]) << ','
         << fmt17(table.at(i, j)) << ',' << route_name(table.route) << '\n';
}

}  // namespace bgm
