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

#ifndef PHASERAND_MOMENT_HPP
#define PHASERAND_MOMENT_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "phaserand/rng.hpp"

namespace phaserand {

/// Largest materialized moment vector: d^{2t} entries, d = 2^n.
inline constexpr std::uint64_t kMomentEntryCap = std::uint64_t{1} << 24;

/// Eigenphases of one diagonal unitary in the computational basis.
/// phases[b] in [0, 2*pi), b = 0 .. 2^n - 1 (qubit 1 is the least
/// significant bit of b).
struct DiagonalPhaseVector {
  int n = 0;
  std::vector<double> phases;

  DiagonalPhaseVector() = default;
  DiagonalPhaseVector(int n_in, std::vector<double> phases_in);
  static DiagonalPhaseVector zero(int n);
};

enum class MomentMode : std::uint32_t {
  ExactTarget = 0,
  DiscreteEnumeration = 1,
  MonteCarlo = 2,
  GateFactor = 3,
  CircuitProduct = 4,
  Ensemble = 5,
};

/// Diagonal of E[U^{⊗t} ⊗ U^{†⊗t}] for an ensemble of diagonal unitaries,
/// stored index-major over (n_1..n_t, m_1..m_t) with zero-based flattening
/// (((n_1*d + n_2)*d + m_1)*d + m_2 for t = 2).
struct MomentVector {
  int n = 0;
  int t = 2;
  MomentMode mode = MomentMode::ExactTarget;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<std::complex<double>> entries;

  std::uint64_t dim() const { return std::uint64_t{1} << n; }

  /// Flat offset from 1-based basis indices (t entries each).
  std::uint64_t flat(std::span<const int> ns, std::span<const int> ms) const;
  std::complex<double> at(std::span<const int> ns,
                          std::span<const int> ms) const;
  /// t = 2 convenience accessor, 1-based indices.
  std::complex<double> at2(int n1, int n2, int m1, int m2) const;
};

/// Exact complex values of exp(i*k*pi/3); every discrete ensemble in this
/// artifact lives on these sixth roots, so enumeration averages are done by
/// counting roots and dividing once (integer-exact cancellation).
std::complex<double> sixth_root(int k);

struct Root6Counts {
  std::array<std::int64_t, 6> c{};
  void add(int k) { ++c[k]; }
  std::complex<double> average(std::int64_t total) const;
};

/// Analytic second-moment target for uniformly random diagonal phases:
/// entry 1 when the n-multiset equals the m-multiset, else 0.
MomentVector target_moment(int n, int t);

/// Entry-wise query form of target_moment (no materialization), 1-based.
double target_moment_entry(std::span<const int> ns, std::span<const int> ms);

/// Exact enumeration over the (t+1)-valued discrete phase set
/// {2*pi*k/(t+1)}. Requires (t+1)^(2^n) enumerable (n <= 3 for t = 2).
MomentVector discrete_design_moment(int n, int t);

/// Monte-Carlo estimate over the same discrete set; carries (seed, samples).
MomentVector discrete_design_moment_mc(int n, int t, std::uint64_t samples,
                                       std::uint64_t seed);

/// Weighted second moment of an explicit finite ensemble. Weights must be
/// non-negative and sum to 1 within 1e-12.
MomentVector ensemble_moment(
    std::span<const std::pair<double, DiagonalPhaseVector>> members, int t);

/// rho -> U^{⊗2} rho U^{†⊗2} for a diagonal U on n qubits; rho is a dense
/// Hermitian unit-trace matrix on 2n qubits.
Eigen::MatrixXcd conjugate_density(const DiagonalPhaseVector& u,
                                   const Eigen::MatrixXcd& rho);

double max_moment_entry_error(const MomentVector& a, const MomentVector& b);
double l2_moment_error(const MomentVector& a, const MomentVector& b);

namespace detail {
void check_moment_cap(int n, int t);
}

}  // namespace phaserand

#endif  // PHASERAND_MOMENT_HPP
