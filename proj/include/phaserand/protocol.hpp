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

#ifndef PHASERAND_PROTOCOL_HPP
#define PHASERAND_PROTOCOL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "phaserand/circuits.hpp"
#include "phaserand/rng.hpp"

namespace phaserand {

/// One draw of the two-branch state generator: with probability
/// 1/(2^n + 1) a uniformly random computational basis state, otherwise a
/// discrete-phase CP circuit applied to |+...+>.
struct ProtocolSample {
  enum class Branch { Basis, Circuit };
  int n = 0;
  Branch branch = Branch::Basis;
  int basis_index = 1;  // 1-based, valid for the basis branch
  std::optional<CircuitInstance> circuit;

  std::string to_json_string() const;
};

/// Branch probabilities are exactly 1/(2^n + 1) and 2^n/(2^n + 1)
/// (integer draw over 2^n + 1 outcomes). n >= 2.
ProtocolSample sample_protocol(int n, Rng& rng);

/// Materialize the sampled pure state.
Eigen::VectorXcd sample_protocol_state(const ProtocolSample& sample);

/// Exact two-copy average of the generated ensemble (n <= 4): the weighted
/// mix of the basis-state moment and the CP-circuit moment of |+...+>.
/// Equals sym_projector(n) / (d(d+1)/2).
Eigen::MatrixXcd exact_protocol_moment(int n);

/// 2^{-2n} (2 P_sym - sum_n |nn><nn|): the exact two-copy average of
/// equal-amplitude phase-random states, and of the CP-circuit branch.
Eigen::MatrixXcd toric_moment_equal_amplitudes(int n);

/// Classical randomness cost of one sample in bits: the branch draw plus
/// either n basis bits or the circuit's phase draws
/// (n(n-1) trits and n(n-1)/2 bits). The quadratic gate budget dominates
/// even though the branch draw itself is linear in n.
double protocol_entropy_bits_basis(int n);
double protocol_entropy_bits_circuit(int n);

}  // namespace phaserand

#endif  // PHASERAND_PROTOCOL_HPP
