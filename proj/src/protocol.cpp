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

#include "phaserand/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace phaserand {

ProtocolSample sample_protocol(int n, Rng& rng) {
  if (n < 2 || n > 20) throw std::invalid_argument("protocol needs 2 <= n <= 20");
  const std::uint64_t d = std::uint64_t{1} << n;
  ProtocolSample sample;
  sample.n = n;
  if (rng.below(d + 1) == 0) {
    sample.branch = ProtocolSample::Branch::Basis;
    sample.basis_index = 1 + static_cast<int>(rng.below(d));
  } else {
    sample.branch = ProtocolSample::Branch::Circuit;
    CircuitInstance c;
    c.n = n;
    c.policy = "cp-all-pairs";
    for (auto [i, j] : all_pairs(n)) {
      int alpha = static_cast<int>(rng.below(3));
      int beta = static_cast<int>(rng.below(3));
      int gamma = static_cast<int>(rng.below(2));
      c.gates.emplace_back(i, j, GateFamily::CP, alpha, beta, gamma);
    }
    sample.circuit = std::move(c);
  }
  return sample;
}

Eigen::VectorXcd sample_protocol_state(const ProtocolSample& sample) {
  const Eigen::Index d = Eigen::Index{1} << sample.n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  if (sample.branch == ProtocolSample::Branch::Basis) {
    psi(sample.basis_index - 1) = 1.0;
    return psi;
  }
  if (!sample.circuit) throw std::invalid_argument("missing circuit payload");
  std::vector<int> units = materialize_units(*sample.circuit);
  const double amp = std::pow(0.5, 0.5 * sample.n);
  for (Eigen::Index b = 0; b < d; ++b) {
    psi(b) = amp * sixth_root(units[b]);
  }
  return psi;
}

Eigen::MatrixXcd toric_moment_equal_amplitudes(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("dense operator cap: n <= 4");
  const Eigen::Index d = Eigen::Index{1} << n;
  const double norm = std::ldexp(1.0, -2 * n);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (Eigen::Index a1 = 0; a1 < d; ++a1) {
    for (Eigen::Index a2 = 0; a2 < d; ++a2) {
      // 2 P_sym contributes on |a1 a2> and |a2 a1>; the diagonal-pair
      // subtraction cancels one of the two when a1 = a2.
      acc(a1 * d + a2, a1 * d + a2) += norm;
      acc(a1 * d + a2, a2 * d + a1) += norm;
      if (a1 == a2) acc(a1 * d + a2, a1 * d + a2) -= norm;
    }
  }
  return acc;
}

Eigen::MatrixXcd exact_protocol_moment(int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("dense operator cap: 2 <= n <= 4");
  const Eigen::Index d = Eigen::Index{1} << n;
  const double basis_weight = 1.0 / static_cast<double>(d + 1);
  const double circuit_weight = static_cast<double>(d) / (d + 1);

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d * d, d * d);
  const double basis_norm = basis_weight / static_cast<double>(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    acc(a * d + a, a * d + a) += basis_norm;
  }

  // Circuit branch: |psi> = U |+...+> has flat amplitudes, so the two-copy
  // average is 2^{-2n} times the circuit's second-moment diagonal.
  MomentVector circuit = cp_circuit_moment(n);
  const double amp = std::ldexp(1.0, -2 * n);
  const std::uint64_t dim = static_cast<std::uint64_t>(d) * d;
  for (std::uint64_t a = 0; a < dim; ++a) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      acc(a, b) += circuit_weight * amp * circuit.entries[a * dim + b];
    }
  }
  return acc;
}

double protocol_entropy_bits_basis(int n) {
  return std::log2(std::ldexp(1.0, n) + 1.0) + n;
}

double protocol_entropy_bits_circuit(int n) {
  const double gates = 0.5 * n * (n - 1);
  return std::log2(std::ldexp(1.0, n) + 1.0) + gates * (2.0 * std::log2(3.0) + 1.0);
}

std::string ProtocolSample::to_json_string() const {
  nlohmann::json j;
  j["n"] = n;
  j["branch"] = branch == Branch::Basis ? "basis" : "circuit";
  if (branch == Branch::Basis) {
    j["basis_index"] = basis_index;
  } else {
    j["circuit"] = nlohmann::json::parse(circuit->to_json_string());
  }
  return j.dump();
}

}  // namespace phaserand
