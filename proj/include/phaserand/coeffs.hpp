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

#ifndef PHASERAND_COEFFS_HPP
#define PHASERAND_COEFFS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "phaserand/circuits.hpp"
#include "phaserand/pauli.hpp"

namespace phaserand {

/// Pauli-expansion coefficient tables.
///
/// Full mode stores xi(p, q) = 2^{-n} tr(rho sigma_p ⊗ sigma_q) for all
/// 16^n index pairs, addressed by the packed 4-bit/site code (n <= 5).
///
/// Class-restricted mode stores one orbit of a completely classified class:
/// the 2^lambda values xi(f_S(base)) for S ranging over subsets of the
/// Lambda sites. This is the regime after the covering prefix, where the
/// pair-averaged step closes on the orbit; it is what makes convergence
/// studies up to n ~ 20 affordable.
enum class TableMode : std::uint32_t { Full = 0, ClassRestricted = 1 };

struct ClassDescriptor {
  int n = 0;
  std::uint64_t base_code = 0;      // packed representative index
  std::vector<int> lambda_sites;    // ascending, 1-based
  std::vector<int> gamma_sites;     // ascending, 1-based

  int lambda() const { return static_cast<int>(lambda_sites.size()); }
  int gamma() const { return static_cast<int>(gamma_sites.size()); }
};

/// The worst-mixing class: lambda = n-1 (sites 1..n-1 in Lambda+ as (z,z)),
/// gamma = 1 (site n in Gamma+ as (x,x)).
ClassDescriptor maximal_class(int n);

class CoeffTable {
 public:
  static CoeffTable zeros_full(int n);
  static CoeffTable class_table(ClassDescriptor cls,
                                std::vector<double> values);

  int n() const { return n_; }
  TableMode mode() const { return mode_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  const ClassDescriptor& cls() const;

  double at_packed(std::uint64_t code) const;
  double& at_packed(std::uint64_t code);
  double at(const PauliPairIndex& idx) const { return at_packed(idx.packed()); }

  std::uint64_t size() const { return values_.size(); }

 private:
  int n_ = 0;
  TableMode mode_ = TableMode::Full;
  std::vector<double> values_;
  std::optional<ClassDescriptor> cls_;
};

/// xi(p, q) = 2^{-n} tr(rho sigma_p ⊗ sigma_q); rho Hermitian on 2n qubits.
CoeffTable coeffs_from_density(const Eigen::MatrixXcd& rho, int n);
/// rho = 2^{-n} sum xi(p, q) sigma_p ⊗ sigma_q.
Eigen::MatrixXcd density_from_coeffs(const CoeffTable& table);

/// One gate of the CP family averaged over its phases (full mode).
CoeffTable step_cp(const CoeffTable& table, int i, int j);
/// One gate of the CZ family averaged over its phases (full mode).
CoeffTable step_cz(const CoeffTable& table, int i, int j);

/// Uniform average of step_cz over all pairs. In class-restricted mode the
/// map is the sparse stencil
///   out = [lambda(lambda-1)+gamma(gamma-1)]/[n(n-1)] * in
///       + 2 gamma/[n(n-1)] * (sum of single-Lambda-site flips of in),
/// which requires the post-prefix sign relation and is valid there.
CoeffTable step_cz_pair_averaged(const CoeffTable& table);

/// Exact average under uniformly random diagonal phases: indices with
/// lambda = n copy through, completely classified indices take the
/// 2^{-n} (sum over even flips - sum over odd flips) form, the rest vanish.
CoeffTable target_coeffs(const CoeffTable& initial);

/// Closed form of the table after the covering prefix:
///   2^{-gamma} [sum_{s ⊆ Gamma-, |s| even} - sum_{|s| odd}]
///   sum_{s' ⊆ Gamma+} xi_0(f_{s ∪ s'} f_Ltilde (p, q))
/// for completely classified indices, zero otherwise. Ltilde is the set of
/// Lambda sites paired with a Gamma site an odd number of times in the
/// prefix (the parity matters when the odd-n prefix overlaps).
CoeffTable post_prefix_coeffs(const CoeffTable& initial,
                              std::span<const std::pair<int, int>> pairs);

/// Restrict a full table to one class orbit. Verifies the post-prefix sign
/// relation xi(f_j(p,q)) = ±xi(p,q) for j in Gamma± before accepting.
CoeffTable class_restrict(const CoeffTable& full, const ClassDescriptor& cls);

/// Mean of a class table's values (its pair-averaged fixed point).
double class_mean(const CoeffTable& table);

/// Two-site transfer operator of one averaged gate on the 4^4 local index
/// space: out[(p_i p_j q_i q_j)] = sum_in L[out, in] * xi(... in ...).
/// Built from the closed-form delta/flip/antisymmetric-swap pieces; the
/// enumeration-averaged trace formula reproduces it entrywise.
Eigen::Matrix<double, 256, 256> local_transfer_closed_form(GateFamily family);

/// Apply the local two-site tensor at sites (i, j) of a full table.
CoeffTable apply_local_transfer(const CoeffTable& table,
                                const Eigen::Matrix<double, 256, 256>& local,
                                int i, int j);

enum class EvolvePolicy { CpAllPairs, CzPairAveraged, CzSampled };

/// CpAllPairs: step_cp over every pair once (the stationary circuit).
/// CzPairAveraged: covering-prefix average, then T pair-averaged steps.
/// CzSampled: Monte-Carlo average over `trials` sampled length-T circuits
/// (full mode, n <= 3; exact per-instance conjugation in moment space).
CoeffTable evolve(const CoeffTable& table, EvolvePolicy policy, int t,
                  std::uint64_t seed = 0, int trials = 0);

}  // namespace phaserand

#endif  // PHASERAND_COEFFS_HPP
