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

#ifndef PHASERAND_CIRCUITS_HPP
#define PHASERAND_CIRCUITS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "phaserand/moment.hpp"
#include "phaserand/rng.hpp"

namespace phaserand {

enum class GateFamily : std::uint8_t { CP, CZ };

/// One diagonal two-qubit gate on sites (i, j), i < j, 1-based.
///
/// The 4x4 diagonal over (bit_i, bit_j) = 00, 10, 01, 11 is
/// (1, e^{i a}, e^{i b}, e^{i(a + b + g)}) with
///   a = alpha_thirds * 2*pi/3,  b = beta_thirds * 2*pi/3,  g = gamma_pi * pi.
/// The CZ family fixes gamma_pi = 1, so its 11-entry is -e^{i(a+b)}.
/// All phases are exact multiples of pi/3.
struct GateSpec {
  int i = 1;
  int j = 2;
  GateFamily family = GateFamily::CP;
  int alpha_thirds = 0;  // {0, 1, 2}
  int beta_thirds = 0;   // {0, 1, 2}
  int gamma_pi = 0;      // {0, 1}; forced to 1 for CZ

  GateSpec() = default;
  GateSpec(int i_in, int j_in, GateFamily family_in, int alpha, int beta,
           int gamma);
};

/// A concrete phase-random circuit: commuting diagonal gates, so the
/// induced unitary is diagonal and the gate order never matters.
struct CircuitInstance {
  int n = 0;
  std::vector<GateSpec> gates;
  std::uint64_t seed = 0;
  std::string policy;

  std::string to_json_string() const;
  static CircuitInstance from_json_string(const std::string& text);
};

/// Phase of each diagonal entry in exact units of pi/3 (mod 6).
std::vector<int> materialize_units(const CircuitInstance& circuit);
DiagonalPhaseVector materialize(const CircuitInstance& circuit);

/// Unordered qubit pairs (i < j) in lexicographic order.
std::vector<std::pair<int, int>> all_pairs(int n);

/// Pair list of the deterministic covering prefix: (1,2), (3,4), ... for
/// even n; for odd n the last gate overlaps, (1,2), ..., (n-2,n-1), (n-1,n).
/// ceil(n/2) gates, every site covered.
std::vector<std::pair<int, int>> modified_prefix_pairs(int n);

/// Covering prefix with CZ-family phases drawn from the discrete sets.
CircuitInstance modified_prefix(int n, Rng& rng);

/// T gates on uniformly random pairs, alpha/beta uniform over thirds.
CircuitInstance sample_cz_circuit(int n, int t, Rng& rng);

/// Integer exponent coefficients of one second-moment entry of a single
/// gate: the entry's phase is c_alpha*a + c_beta*b + c_gamma*g.  Aliasing
/// guards: |c_alpha|, |c_beta| <= 2 always, and |c_gamma| <= 1 whenever
/// c_alpha = c_beta = 0, so the three-valued alpha/beta set and two-valued
/// gamma set average exactly like the continuous one.
struct GateExponent {
  int c_alpha = 0;
  int c_beta = 0;
  int c_gamma = 0;
};
GateExponent gate_exponent(int i, int j, std::uint64_t n1, std::uint64_t n2,
                           std::uint64_t m1, std::uint64_t m2);

/// Second-moment factor of one CP gate averaged over the discrete phase
/// sets, embedded at sites (i, j) of n qubits. Entries are exactly 0 or 1
/// and agree with the continuous average (checked per entry).
MomentVector cp_gate_moment_factor(int i, int j, int n);

/// Same factor for the CZ family (gamma fixed); entries in {0, +1, -1}.
MomentVector cz_gate_moment_factor(int i, int j, int n);

/// Entrywise discrete and continuous averages of one CP gate entry.
/// Both are exact; they are equal for every entry.
std::pair<double, double> cp_gate_entry_averages(const GateExponent& e);

/// CP circuit applied to all pairs: entrywise product of the per-gate
/// factors (gate phases are independent, so the expectation factorizes).
MomentVector cp_circuit_moment(int n);

/// CZ gates on all pairs (deterministic pair choice), factorized.
MomentVector cz_all_pairs_moment(int n);

/// Same average by full enumeration of the 3^{n(n-1)} phase assignments;
/// cross-check only, n <= 3.
MomentVector cz_all_pairs_moment_enumerated(int n);

/// Exact expected moment of the length-T random-pair CZ circuit:
/// each entry is g^T where g is the entry's pair-averaged gate factor.
MomentVector cz_sampled_expected_moment(int n, long long t);

/// Human-readable phase of diagonal entry `basis_index` (1-based), e.g.
/// "-exp(i(a1+b1+a2+a3))"; a_t/b_t refer to the t-th gate's phases.
std::string phase_expression(const CircuitInstance& circuit, int basis_index);

}  // namespace phaserand

#endif  // PHASERAND_CIRCUITS_HPP
