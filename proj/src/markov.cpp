// Copyright 2026 The phaserand authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phaserand/markov.hpp"

#include <cmath>
#include <stdexcept>

namespace phaserand {

namespace {

void check_chain(const HypercubeChain& chain, int max_l) {
  if (chain.l < 1 || chain.l > max_l) {
    throw std::invalid_argument("chain dimension outside supported range");
  }
  if (chain.stay_prob + chain.l * chain.neighbor_prob > 1.0 + 1e-12) {
    throw std::invalid_argument("chain rows would exceed probability 1");
  }
}

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(acc);
}

}  // namespace

HypercubeChain HypercubeChain::standard(int n) {
  return standard(n, n - 1);
}

HypercubeChain HypercubeChain::standard(int n, int l) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (l < 1 || l > n - 1) throw std::invalid_argument("need 1 <= l <= n-1");
  HypercubeChain chain;
  chain.n = n;
  chain.l = l;
  chain.stay_prob = 1.0 - 2.0 / n;
  chain.neighbor_prob = 2.0 / (static_cast<double>(n) * (n - 1));
  return chain;
}

HypercubeChain HypercubeChain::slowed(int n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  HypercubeChain chain;
  chain.n = n;
  chain.l = n - 1;
  chain.stay_prob = 1.0 - 1.0 / (n - 1);
  chain.neighbor_prob = 1.0 / (static_cast<double>(n - 1) * (n - 1));
  return chain;
}

std::vector<std::pair<double, long long>> spectrum(int n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  std::vector<std::pair<double, long long>> eigs;
  const double denom = static_cast<double>(n) * (n - 1);
  for (int k = 0; k < n; ++k) {
    eigs.emplace_back(1.0 - 4.0 * k / denom,
                      static_cast<long long>(binomial(n - 1, k)));
  }
  return eigs;
}

std::pair<double, double> relaxation_bounds(int n, double eps) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
  const double t_rel = static_cast<double>(n) * (n - 1) / 4.0;
  const double pi_min = std::ldexp(1.0, -(n - 1));
  double lower = (t_rel - 1.0) * std::log(1.0 / (2.0 * eps));
  double upper = std::log(1.0 / (eps * pi_min)) * t_rel;
  return {lower, upper};
}

Eigen::MatrixXd dense_transition(const HypercubeChain& chain) {
  check_chain(chain, 14);
  const Eigen::Index states = Eigen::Index{1} << chain.l;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(states, states);
  for (Eigen::Index v = 0; v < states; ++v) {
    p(v, v) = chain.diagonal();
    for (int k = 0; k < chain.l; ++k) {
      p(v, v ^ (Eigen::Index{1} << k)) = chain.neighbor_prob;
    }
  }
  return p;
}

std::vector<double> exact_delta_series(const HypercubeChain& chain,
                                       int t_max) {
  check_chain(chain, 24);
  if (t_max < 0) throw std::invalid_argument("t_max must be >= 0");
  const int l = chain.l;
  const double nu = chain.neighbor_prob;
  const double diag = chain.diagonal();
  const double uniform = std::ldexp(1.0, -l);
  std::vector<double> choose(l + 1);
  for (int k = 0; k <= l; ++k) choose[k] = binomial(l, k);

  // Weight-k cell probability of the lumped birth-death chain; the start is
  // a point mass, so permutation symmetry holds at every step.
  std::vector<double> weight(l + 1, 0.0), next(l + 1, 0.0);
  weight[0] = 1.0;
  std::vector<double> series;
  series.reserve(t_max + 1);
  for (int t = 0;; ++t) {
    double delta = 0.0;
    for (int k = 0; k <= l; ++k) {
      delta = std::max(delta, std::abs(weight[k] / choose[k] - uniform));
    }
    series.push_back(delta);
    if (t == t_max) break;
    for (int k = 0; k <= l; ++k) {
      double acc = diag * weight[k];
      if (k > 0) acc += weight[k - 1] * nu * (l - (k - 1));
      if (k < l) acc += weight[k + 1] * nu * (k + 1);
      next[k] = acc;
    }
    weight.swap(next);
  }
  return series;
}

double exact_delta(const HypercubeChain& chain, int t) {
  return exact_delta_series(chain, t).back();
}

std::vector<double> exact_delta_series_dense(const HypercubeChain& chain,
                                             int t_max) {
  check_chain(chain, 14);
  const std::size_t states = std::size_t{1} << chain.l;
  const double uniform = 1.0 / static_cast<double>(states);
  std::vector<double> prob(states, 0.0), next(states, 0.0);
  prob[0] = 1.0;
  std::vector<double> series;
  series.reserve(t_max + 1);
  for (int t = 0;; ++t) {
    double delta = 0.0;
    for (double p : prob) delta = std::max(delta, std::abs(p - uniform));
    series.push_back(delta);
    if (t == t_max) break;
    for (std::size_t v = 0; v < states; ++v) {
      double acc = chain.diagonal() * prob[v];
      for (int k = 0; k < chain.l; ++k) {
        acc += chain.neighbor_prob * prob[v ^ (std::size_t{1} << k)];
      }
      next[v] = acc;
    }
    prob.swap(next);
  }
  return series;
}

int mixing_time(const HypercubeChain& chain, double eps, int t_cap) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
  std::vector<double> series = exact_delta_series(chain, t_cap);
  double prev = series.front();
  for (int t = 0; t <= t_cap; ++t) {
    if (series[t] > prev + 1e-15) {
      throw std::logic_error("delta series is not non-increasing");
    }
    prev = series[t];
    if (series[t] <= eps) return t;
  }
  throw std::runtime_error("mixing time exceeds the step cap");
}

CouplingSample coupling_run(int n, Rng& rng) {
  if (n < 2 || n > 33) throw std::invalid_argument("need 2 <= n <= 33");
  const int l = n - 1;
  std::uint64_t x = 0;
  std::uint64_t y = (std::uint64_t{1} << l) - 1;  // antipodal worst case
  std::vector<long long> first_drawn(l + 1, -1);
  int drawn_count = 0;
  long long stopping_time = (x == y) ? 0 : -1;

  for (long long t = 1;; ++t) {
    if (t > 100000000LL) throw std::runtime_error("coupling failed to stop");
    const int k0 = 1 + static_cast<int>((t - 1) % l);
    const int j = 1 + static_cast<int>(rng.below(l));
    if (j == k0) {
      if (first_drawn[k0] < 0) {
        first_drawn[k0] = t;
        ++drawn_count;
      }
      const std::uint64_t bit = std::uint64_t{1} << (k0 - 1);
      if (((x ^ y) & bit) == 0) {
        x ^= bit;
        y ^= bit;
      } else {
        // Next mismatched position cyclically after k0 (k0 itself when it
        // is the only mismatch, in which case only x moves and the pair
        // coalesces there).
        int alpha = k0;
        for (int step = 1; step <= l; ++step) {
          int cand = 1 + (k0 - 1 + step) % l;
          if ((x ^ y) & (std::uint64_t{1} << (cand - 1))) {
            alpha = cand;
            break;
          }
        }
        x ^= bit;
        if (alpha != k0) y ^= std::uint64_t{1} << (alpha - 1);
      }
    }
    if (stopping_time < 0 && x == y) stopping_time = t;
    if (stopping_time >= 0 && drawn_count == l) break;
  }

  long long max_periods = 0;
  for (int k = 1; k <= l; ++k) {
    long long periods = (first_drawn[k] - k) / l + 1;
    max_periods = std::max(max_periods, periods);
  }
  CouplingSample sample;
  sample.stopping_time = static_cast<int>(stopping_time);
  sample.coupon_bound = static_cast<long long>(l) * max_periods;
  return sample;
}

int coupling_stopping_time(int n, Rng& rng) {
  return coupling_run(n, rng).stopping_time;
}

double coupon_tail_analytic(int r, int r0, double c) {
  if (r < 1 || r0 < 0 || r0 >= r) {
    throw std::invalid_argument("need 0 <= r0 < r");
  }
  if (!(c > 0.0)) throw std::invalid_argument("need c > 0");
  const double missing = static_cast<double>(r - r0);
  const double threshold = r * (std::log(missing) + c);
  return missing * std::pow(1.0 - 1.0 / r, threshold);
}

double coupon_tail_simulated(int r, int r0, double c, long long trials,
                             std::uint64_t seed) {
  if (r < 1 || r0 < 0 || r0 >= r || r > 63) {
    throw std::invalid_argument("need 0 <= r0 < r <= 63");
  }
  if (!(c > 0.0)) throw std::invalid_argument("need c > 0");
  if (trials < 1) throw std::invalid_argument("need trials >= 1");
  const double threshold =
      r * (std::log(static_cast<double>(r - r0)) + c);
  const std::uint64_t need = (std::uint64_t{1} << (r - r0)) - 1;
  long long exceeded = 0;
  for (long long trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    std::uint64_t seen = 0;
    long long tau = 0;
    while ((seen & need) != need) {
      ++tau;
      std::uint64_t coupon = rng.below(static_cast<std::uint64_t>(r));
      if (coupon < static_cast<std::uint64_t>(r - r0)) {
        seen |= std::uint64_t{1} << coupon;
      }
    }
    if (static_cast<double>(tau) > threshold) ++exceeded;
  }
  return static_cast<double>(exceeded) / static_cast<double>(trials);
}

CouplingFaithfulnessReport coupling_faithfulness_report(int n,
                                                        long long trials,
                                                        std::uint64_t seed) {
  if (n < 3 || n > 5) {
    throw std::invalid_argument("faithfulness check supports 3 <= n <= 5");
  }
  if (trials < 1000) throw std::invalid_argument("need at least 1000 trials");
  const int l = n - 1;
  const std::size_t states = std::size_t{1} << l;
  const std::uint64_t x0 = 0;
  const std::uint64_t y0 = states - 1;

  std::vector<long long> hist_x(states, 0), hist_y(states, 0);
  for (long long trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    std::uint64_t x = x0, y = y0;
    for (int t = 1; t <= l; ++t) {
      const int k0 = t;
      const int j = 1 + static_cast<int>(rng.below(l));
      if (j != k0) continue;
      const std::uint64_t bit = std::uint64_t{1} << (k0 - 1);
      if (((x ^ y) & bit) == 0) {
        x ^= bit;
        y ^= bit;
      } else {
        int alpha = k0;
        for (int step = 1; step <= l; ++step) {
          int cand = 1 + (k0 - 1 + step) % l;
          if ((x ^ y) & (std::uint64_t{1} << (cand - 1))) {
            alpha = cand;
            break;
          }
        }
        x ^= bit;
        if (alpha != k0) y ^= std::uint64_t{1} << (alpha - 1);
      }
    }
    ++hist_x[x];
    ++hist_y[y];
  }

  // Scheduled one-period law: each coordinate flips independently w.p. 1/l.
  auto scheduled_law = [&](std::uint64_t start, std::uint64_t v) {
    int flips = __builtin_popcountll(start ^ v);
    return std::pow(1.0 / l, flips) * std::pow(1.0 - 1.0 / l, l - flips);
  };
  HypercubeChain slowed = HypercubeChain::slowed(n);
  Eigen::MatrixXd homogeneous = dense_transition(slowed);
  Eigen::MatrixXd period = Eigen::MatrixXd::Identity(states, states);
  for (int t = 0; t < l; ++t) period = period * homogeneous;

  auto chi2 = [&](const std::vector<long long>& hist, auto expected) {
    double acc = 0.0;
    for (std::size_t v = 0; v < states; ++v) {
      double e = static_cast<double>(trials) * expected(v);
      double diff = static_cast<double>(hist[v]) - e;
      acc += diff * diff / e;
    }
    return acc;
  };

  CouplingFaithfulnessReport report;
  report.n = n;
  report.trials = trials;
  report.dof = static_cast<int>(states) - 1;
  report.chi2_x_vs_scheduled =
      chi2(hist_x, [&](std::size_t v) { return scheduled_law(x0, v); });
  report.chi2_y_vs_scheduled =
      chi2(hist_y, [&](std::size_t v) { return scheduled_law(y0, v); });
  report.chi2_x_vs_homogeneous = chi2(hist_x, [&](std::size_t v) {
    return period(static_cast<Eigen::Index>(x0), static_cast<Eigen::Index>(v));
  });
  // Wilson-Hilferty approximation of the 99.9% chi-square quantile.
  const double dof = report.dof;
  const double z = 3.0902;
  const double wh = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
  report.chi2_flag_threshold = dof * wh * wh * wh;
  report.x_matches_scheduled =
      report.chi2_x_vs_scheduled <= report.chi2_flag_threshold;
  report.x_matches_homogeneous =
      report.chi2_x_vs_homogeneous <= report.chi2_flag_threshold;
  return report;
}

}  // namespace phaserand
