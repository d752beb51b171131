// Sample-path generation for the Gaussian motions defined by a ProcessSpec.
//
// Three methods are offered:
//   cholesky  - exact joint sampling from the covariance matrix (reference).
//   circulant - circulant embedding of the stationary increment sequence,
//               O(n log n) per path; falls back to cholesky if the embedding
//               eigenvalues are significantly negative.
//   mc_mvn    - direct discretisation of the moving-average representation
//               X_t = int k(t,u) dB_u on a truncated grid; approximate, kept
//               as an independent consistency route.
//
// Randomness is counter-based (see rng.hpp): path p of a run with seed s uses
// stream p, so ensembles are reproducible and embarrassingly parallel.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgm/covariance.hpp"
#include "bgm/kernels.hpp"

namespace bgm {

enum class Method { cholesky, circulant, mc_mvn };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct PathEnsemble {
  std::string spec_string;           // e.g. "stable:alpha=0.5/derivative"
  std::vector<double> grid;          // observation times, strictly increasing
  int n_paths = 0;
  std::vector<double> data;          // row-major: data[p * grid.size() + i]
  std::uint64_t seed = 0;
  Method method = Method::cholesky;
  double jitter_used = 0.0;          // diagonal jitter added by cholesky, 0 if none
  bool circulant_fell_back = false;  // true if circulant deferred to cholesky

  double at(int path, int i) const { return data[static_cast<std::size_t>(path) * grid.size() + i]; }
};

// Simulate n_paths paths observed at t_i = (i+1)*h, i = 0..n_steps-1.
PathEnsemble simulate(const ProcessSpec& spec, int n_steps, double h, int n_paths,
                      std::uint64_t seed, Method method, int threads = 1);

// Lower Cholesky factor of A (n x n, row-major). Adds up to `max_jitter`
// relative diagonal jitter if needed; records what was added in *jitter_used.
std::vector<double> cholesky_factor(std::vector<double> a, int n, double* jitter_used);

// Ensemble statistics across paths.
std::vector<double> empirical_mean(const PathEnsemble& e);
// Empirical covariance matrix (row-major, grid.size() x grid.size()).
std::vector<double> empirical_cov(const PathEnsemble& e);
// Empirical fourth moments E[X_{t_i}^4] per grid point.
std::vector<double> empirical_fourth(const PathEnsemble& e);

// CSV with header "path_id,t,value" (17 significant digits), plus a metadata
// sidecar `<path>.meta` recording spec, method, seed, grid, and fallbacks.
void write_csv(const PathEnsemble& e, const std::string& path);

} // namespace bgm
