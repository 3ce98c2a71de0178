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

#include "phaserand/verifier.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace phaserand {

namespace {
// State-moment operators are capped at 2^{20} dense elements (n <= 4 for
// two copies), matching the exact-certification scale.
constexpr int kMaxStateMomentN = 4;
}  // namespace

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::MaxCoeffError: return "max_coeff_error";
    case Metric::MaxMomentEntryError: return "max_moment_entry_error";
    case Metric::L2MomentError: return "l2_moment_error";
    case Metric::StateMomentTraceError: return "state_moment_trace_error";
  }
  throw std::invalid_argument("bad metric");
}

DesignCertificate certify(Metric metric, double value, int n,
                          const std::string& ensemble,
                          const std::string& provenance_json) {
  if (value < 0.0) throw std::invalid_argument("metric value must be >= 0");
  DesignCertificate cert;
  cert.n = n;
  cert.ensemble = ensemble;
  cert.metric = metric;
  cert.value = value;
  cert.epsilon_sufficient = value * std::ldexp(1.0, 7 * n);
  cert.epsilon_necessary = value;
  cert.exact = value <= 1e-12;
  cert.provenance_json = provenance_json;
  return cert;
}

std::string DesignCertificate::to_json_string() const {
  nlohmann::json j;
  j["n"] = n;
  j["ensemble"] = ensemble;
  j["metric"] = metric_name(metric);
  j["value"] = value;
  j["epsilon_sufficient"] = epsilon_sufficient;
  j["epsilon_necessary"] = epsilon_necessary;
  j["exact"] = exact;
  j["provenance"] = nlohmann::json::parse(provenance_json);
  return j.dump(2);
}

double max_coeff_error(const CoeffTable& a, const CoeffTable& b) {
  if (a.n() != b.n() || a.mode() != b.mode() ||
      a.values().size() != b.values().size()) {
    throw std::invalid_argument("coefficient table shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    worst = std::max(worst, std::abs(a.values()[k] - b.values()[k]));
  }
  return worst;
}

namespace {

void check_ensemble(const StateEnsemble& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empty state ensemble");
  const Eigen::Index d = ensemble.front().second.size();
  double weight_sum = 0.0;
  for (const auto& [w, psi] : ensemble) {
    if (psi.size() != d) throw std::invalid_argument("mixed state dimensions");
    if (w < 0.0) throw std::invalid_argument("negative weight");
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
      throw std::invalid_argument("states must be normalized");
    }
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    throw std::invalid_argument("weights must sum to 1");
  }
}

}  // namespace

Eigen::MatrixXcd state_moment(const StateEnsemble& ensemble) {
  check_ensemble(ensemble);
  const Eigen::Index d = ensemble.front().second.size();
  if (d > 16) {
    throw std::invalid_argument("state moment exceeds the dense-operator cap");
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d * d, d * d);
  Eigen::VectorXcd two_copy(d * d);
  for (const auto& [w, psi] : ensemble) {
    for (Eigen::Index a1 = 0; a1 < d; ++a1) {
      for (Eigen::Index a2 = 0; a2 < d; ++a2) {
        two_copy(a1 * d + a2) = psi(a1) * psi(a2);
      }
    }
    acc.noalias() += w * two_copy * two_copy.adjoint();
  }
  return acc;
}

Eigen::MatrixXcd sym_projector(int n) {
  if (n < 1 || n > kMaxStateMomentN) {
    throw std::invalid_argument("symmetric projector supports 1 <= n <= 4");
  }
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (Eigen::Index a1 = 0; a1 < d; ++a1) {
    for (Eigen::Index a2 = 0; a2 < d; ++a2) {
      proj(a1 * d + a2, a1 * d + a2) += 0.5;
      proj(a1 * d + a2, a2 * d + a1) += 0.5;
    }
  }
  return proj;
}

double frame_potential(const StateEnsemble& ensemble, int t) {
  check_ensemble(ensemble);
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  double acc = 0.0;
  for (const auto& [wa, psi_a] : ensemble) {
    for (const auto& [wb, psi_b] : ensemble) {
      double overlap_sq = std::norm(psi_a.dot(psi_b));
      acc += wa * wb * std::pow(overlap_sq, t);
    }
  }
  return acc;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("operator shape mismatch");
  }
  Eigen::MatrixXcd diff = a - b;
  if ((diff - diff.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("trace distance requires Hermitian inputs");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      (diff + diff.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double max_entry_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("operator shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace phaserand
