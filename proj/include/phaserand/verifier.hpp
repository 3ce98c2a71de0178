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

#ifndef PHASERAND_VERIFIER_HPP
#define PHASERAND_VERIFIER_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaserand/coeffs.hpp"
#include "phaserand/moment.hpp"

namespace phaserand {

enum class Metric : std::uint32_t {
  MaxCoeffError = 0,
  MaxMomentEntryError = 1,
  L2MomentError = 2,
  StateMomentTraceError = 3,
};

std::string metric_name(Metric m);

/// Approximation certificate for a candidate second-moment ensemble.
///
/// A measured coefficient error v certifies the ensemble as an
/// epsilon-approximate design for every epsilon >= v * 2^{7n}
/// (sufficient direction) and rules out every epsilon < v (necessary
/// direction); the certificate exposes that interval, never a point value.
struct DesignCertificate {
  int n = 0;
  std::string ensemble;
  Metric metric = Metric::MaxCoeffError;
  double value = 0.0;
  double epsilon_sufficient = 0.0;
  double epsilon_necessary = 0.0;
  bool exact = false;
  std::string provenance_json = "{}";

  std::string to_json_string() const;
};

DesignCertificate certify(Metric metric, double value, int n,
                          const std::string& ensemble = "",
                          const std::string& provenance_json = "{}");

/// Max over index pairs of |a - b|. Tables must share n and mode.
double max_coeff_error(const CoeffTable& a, const CoeffTable& b);

/// A weighted ensemble of pure states on a common Hilbert space.
using StateEnsemble = std::vector<std::pair<double, Eigen::VectorXcd>>;

/// sum_mu w_mu (|psi_mu><psi_mu|)^{⊗t}, t = 2. States must be normalized
/// and weights must sum to 1 within 1e-12.
Eigen::MatrixXcd state_moment(const StateEnsemble& ensemble);

/// Projector (I + SWAP)/2 onto the symmetric subspace of two copies of an
/// n-qubit space; trace d(d+1)/2.
Eigen::MatrixXcd sym_projector(int n);

/// sum_{mu,nu} w_mu w_nu |<psi_mu|psi_nu>|^{2t}.
double frame_potential(const StateEnsemble& ensemble, int t);

/// (1/2) * trace norm of (a - b) for Hermitian a, b.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

double max_entry_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace phaserand

#endif  // PHASERAND_VERIFIER_HPP
