// Copyright 2026 The QCL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

namespace qcl {

struct NelderMeadOptions {
  double ftol = 1e-10;       // spread of simplex values
  int max_evaluations = 20000;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> point;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes f by the reflection/expansion/contraction/shrink simplex method.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start,
                                    const NelderMeadOptions& opts = {}) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opts.initial_step;
  std::vector<double> values(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& p) {
    ++evals;
    const double v = f(p);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  bool converged = false;
  while (evals < opts.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(values[worst] - values[best]) <=
        opts.ftol * std::max(1.0, std::abs(values[best]))) {
      converged = true;
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
    }
    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + (centroid[k] - simplex[worst][k]);
    const double fr = eval(trial);
    if (fr < values[best]) {
      for (std::size_t k = 0; k < n; ++k)
        trial2[k] = centroid[k] + 2.0 * (centroid[k] - simplex[worst][k]);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    for (std::size_t k = 0; k < n; ++k) {
      const double dir = outside ? (trial[k] - centroid[k]) : (simplex[worst][k] - centroid[k]);
      trial2[k] = centroid[k] + 0.5 * dir;
    }
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k)
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto best_it = std::min_element(values.begin(), values.end());
  const std::size_t b = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[b], values[b], evals, converged};
}

/// Restarts Nelder-Mead from its own optimum with a fresh, smaller simplex
/// until a restart no longer improves the value; guards against simplex
/// collapse in higher dimensions.
inline NelderMeadResult nelder_mead_restarted(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
    NelderMeadOptions opts = {}, int max_restarts = 4) {
  NelderMeadResult res = nelder_mead(f, std::move(start), opts);
  int total = res.evaluations;
  for (int r = 0; r < max_restarts; ++r) {
    opts.initial_step *= 0.5;
    NelderMeadResult next = nelder_mead(f, res.point, opts);
    total += next.evaluations;
    const bool improved = next.value < res.value - opts.ftol * std::max(1.0, std::abs(res.value));
    if (next.value <= res.value) res = std::move(next);
    if (!improved) break;
  }
  res.evaluations = total;
  return res;
}

/// SplitMix64 step; derives independent per-task seeds from one user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Worker count: QCL_THREADS if set and positive, else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("QCL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {
inline thread_local bool in_parallel_region = false;
}

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
/// index writes only its own slot, so results do not depend on scheduling.
/// Nested calls from inside a worker run serially.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned workers = detail::in_parallel_region
                               ? 1u
                               : static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      detail::in_parallel_region = true;
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qcl
