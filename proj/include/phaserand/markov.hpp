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

#ifndef PHASERAND_MARKOV_HPP
#define PHASERAND_MARKOV_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "phaserand/rng.hpp"

namespace phaserand {

/// Random walk on the l-dimensional hypercube induced by the pair-averaged
/// gate step. The standard chain has staying probability 1 - 2/n and
/// per-neighbor probability 2/(n(n-1)); the slowed variant used for the
/// coupling argument has 1 - 1/(n-1) and 1/(n-1)^2. Rows are completed to
/// 1 on the diagonal, which reproduces the nominal staying probability
/// exactly at the worst-case dimension l = n - 1.
struct HypercubeChain {
  int l = 1;
  int n = 2;
  double stay_prob = 0.0;
  double neighbor_prob = 0.0;

  static HypercubeChain standard(int n);       // l = n - 1
  static HypercubeChain standard(int n, int l);
  static HypercubeChain slowed(int n);         // l = n - 1, lazier diagonal

  double diagonal() const { return 1.0 - l * neighbor_prob; }
};

/// Eigenvalues {1 - 4k/(n(n-1))} with multiplicities C(n-1, k), k = 0..n-1.
std::vector<std::pair<double, long long>> spectrum(int n);

/// Relaxation-time bracket for the mixing time at error eps:
/// lower = (T_rel - 1) log(1/(2 eps)), upper = T_rel log(1/(eps Pi_min)),
/// T_rel = n(n-1)/4, Pi_min = 2^{-(n-1)}.
std::pair<double, double> relaxation_bounds(int n, double eps);

/// Dense 2^l x 2^l transition matrix (l <= 14).
Eigen::MatrixXd dense_transition(const HypercubeChain& chain);

/// Max-over-vertices deviation from uniform after t steps, starting from a
/// point mass. Exact via the Hamming-weight lumped birth-death chain
/// (vertex-permutation symmetry makes lumping lossless); l <= 24.
double exact_delta(const HypercubeChain& chain, int t);

/// The full series Delta(0..t_max); one lumped propagation pass.
std::vector<double> exact_delta_series(const HypercubeChain& chain, int t_max);

/// Same series by dense 2^l-state propagation (oracle, l <= 14).
std::vector<double> exact_delta_series_dense(const HypercubeChain& chain,
                                             int t_max);

/// First t with Delta(t) <= eps; verifies monotonicity along the way.
/// Throws if t_cap is reached first.
int mixing_time(const HypercubeChain& chain, double eps, int t_cap);

/// One run of the scheduled coupling of the slowed chain from the
/// antipodal pair. `stopping_time` is the first step with X = Y;
/// `coupon_bound` is the pathwise bound (n-1) * (slowest coordinate's
/// scheduled-draw wait in periods), always >= stopping_time.
struct CouplingSample {
  int stopping_time = 0;
  long long coupon_bound = 0;
};
CouplingSample coupling_run(int n, Rng& rng);
int coupling_stopping_time(int n, Rng& rng);

/// Union bound (r - r0) (1 - 1/r)^{r (log(r - r0) + c)} on
/// Prob[tau > r (log(r - r0) + c)]; always <= e^{-c}.
double coupon_tail_analytic(int r, int r0, double c);

/// Empirical Prob[tau > r (log(r - r0) + c)] over `trials` runs.
double coupon_tail_simulated(int r, int r0, double c, long long trials,
                             std::uint64_t seed);

/// Chi-square comparison of the coupling marginals over one full schedule
/// period against (a) the scheduled per-coordinate law and (b) the
/// homogeneous slowed chain. The scheduled interpretation is not the
/// homogeneous chain, so (b) is expected to flag; the report makes that
/// explicit instead of letting it pass silently.
struct CouplingFaithfulnessReport {
  int n = 0;
  long long trials = 0;
  double chi2_x_vs_scheduled = 0.0;
  double chi2_x_vs_homogeneous = 0.0;
  double chi2_y_vs_scheduled = 0.0;
  int dof = 0;
  double chi2_flag_threshold = 0.0;  // 99.9% quantile approximation
  bool x_matches_scheduled = false;
  bool x_matches_homogeneous = false;
};
CouplingFaithfulnessReport coupling_faithfulness_report(int n,
                                                        long long trials,
                                                        std::uint64_t seed);

}  // namespace phaserand

#endif  // PHASERAND_MARKOV_HPP
