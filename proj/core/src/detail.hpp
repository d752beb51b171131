// Internals shared by kernels.cpp, covariance.cpp and analysis.cpp: the
// per-spec cache behind ProcessSpec and the raw variance quadratures that
// both the normalization constant and the covariance engine are built on.

#pragma once

#include <functional>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "bgm/kernels.hpp"

namespace bgm {

struct SpecCache {
  std::once_flag norm_once;
  double normalization = 0.0;

  std::mutex mu;  // guards the memo maps
  std::unordered_map<double, double> variance_memo;
  std::unordered_map<double, double> w_memo;  // spectral workhorse W(tau)
};

struct SpecCacheAccess {
  static SpecCache& cache(const ProcessSpec& spec) { return *spec.cache_; }
};

namespace detail {

// Raw (unnormalized) variance pieces at time t:
//   derivative flavor: part1 = int_0^inf (nu(u) - nu(t+u))^2 du,
//                      part2 = int_0^t nu(u)^2 du;
//   integral flavor:   part1 = int_0^inf (chi(t+u) - chi(u))^2 du,
//                      part2 = int_0^t chi(u)^2 du.
std::pair<double, double> raw_variance_parts(const ProcessSpec& spec, double t);

// Power p for the tail map w = U v^{-p} regularizing int_U^inf of squared
// g-increments and increment products: chosen so the transformed integrand
// vanishes like v^{>=1.2} at v = 0. Throws when no power map can work (the
// family must then provide a closed-form tail remainder).
double tail_map_power(const ProcessSpec& spec);

// int_U^inf f via w = U v^{-p}; f must decay like w^{-q} with p(q-1) > 1.
double integrate_tail(const std::function<double(double)>& f, double U,
                      double p);

}  // namespace detail
}  // namespace bgm
