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

#ifndef PHASERAND_PAULI_HPP
#define PHASERAND_PAULI_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace phaserand {

/// Single-site Pauli axis. `I` is the identity (written `0` in string form).
enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Self-inverse flip: I <-> Z and X <-> Y.
constexpr Axis flip(Axis a) {
  return static_cast<Axis>(3 - static_cast<int>(a));
}

/// True for X and Y (the off-diagonal axes).
constexpr bool is_xy(Axis a) { return a == Axis::X || a == Axis::Y; }

char axis_char(Axis a);
Axis axis_from_char(char c);

/// How the pair (p_i, q_i) at one site behaves under diagonal conjugation.
enum class SiteClass : std::uint8_t {
  LambdaPlus,   // p = q in {I, Z}
  LambdaMinus,  // p = flip(q) in {I, Z}
  GammaPlus,    // p = q in {X, Y}
  GammaMinus,   // p = flip(q) in {X, Y}
  None,         // mixed diagonal/off-diagonal site
};

constexpr SiteClass site_class(Axis p, Axis q) {
  if (is_xy(p) != is_xy(q)) return SiteClass::None;
  if (is_xy(p)) return p == q ? SiteClass::GammaPlus : SiteClass::GammaMinus;
  return p == q ? SiteClass::LambdaPlus : SiteClass::LambdaMinus;
}

constexpr bool is_gamma(SiteClass c) {
  return c == SiteClass::GammaPlus || c == SiteClass::GammaMinus;
}
constexpr bool is_lambda(SiteClass c) {
  return c == SiteClass::LambdaPlus || c == SiteClass::LambdaMinus;
}
/// +1 for the "+" classes, -1 for the "-" classes.
constexpr int class_sign(SiteClass c) {
  return (c == SiteClass::LambdaMinus || c == SiteClass::GammaMinus) ? -1 : 1;
}

/// A pair (p, q) of length-N axis strings indexing one expansion
/// coefficient. Sites are 1-based in the public API.
///
/// The pair packs into a 64-bit code with 4 bits per site
/// (low 2 bits p_i, high 2 bits q_i), which is the representation the
/// coefficient engine works in. N <= 16.
struct PauliPairIndex {
  int n = 0;
  std::vector<Axis> p, q;

  PauliPairIndex() = default;
  PauliPairIndex(std::vector<Axis> p_in, std::vector<Axis> q_in);
  /// Build from strings over {0, x, y, z}, e.g. ("x0z", "yzz").
  static PauliPairIndex from_strings(const std::string& p_str,
                                     const std::string& q_str);

  static PauliPairIndex from_packed(int n, std::uint64_t code);
  std::uint64_t packed() const;

  Axis p_at(int site) const { return p[site - 1]; }
  Axis q_at(int site) const { return q[site - 1]; }
  std::string p_string() const;
  std::string q_string() const;

  bool operator==(const PauliPairIndex& other) const = default;
};

/// The four disjoint site sets of an index pair plus their derived counts.
struct PartitionSets {
  std::vector<int> gamma_plus, gamma_minus, lambda_plus, lambda_minus;

  int gamma() const {
    return static_cast<int>(gamma_plus.size() + gamma_minus.size());
  }
  int lambda() const {
    return static_cast<int>(lambda_plus.size() + lambda_minus.size());
  }
  /// Every site classified, i.e. gamma + lambda == n.
  bool complete(int n) const { return gamma() + lambda() == n; }

  std::vector<int> gamma_union() const;
  std::vector<int> lambda_union() const;
};

PartitionSets classify(const PauliPairIndex& idx);

/// f_S: flips both strings on every site in `sites` (1-based).
/// Throws std::out_of_range for sites outside 1..n.
PauliPairIndex flip_subset(const PauliPairIndex& idx,
                           std::span<const int> sites);

struct FlipFamilies {
  std::vector<PauliPairIndex> even;  // |s ∩ Gamma-| even
  std::vector<PauliPairIndex> odd;   // |s ∩ Gamma-| odd
};

/// All images f_s(p, q) for s ranging over subsets of Lambda ∪ Gamma, split
/// by the parity of |s ∩ Gamma-|. Requires every site classified
/// (gamma + lambda == n) and n <= 12 for materialized lists; use
/// for_each_flip_image above that.
FlipFamilies enumerate_flip_families(const PauliPairIndex& idx);

/// Streaming form of enumerate_flip_families for large n.
/// Calls fn(image, odd) once per subset.
void for_each_flip_image(
    const PauliPairIndex& idx,
    const std::function<void(const PauliPairIndex&, bool odd)>& fn);

namespace detail {

/// Per-nibble site class, indexed by the packed 4-bit (p, q) value.
constexpr std::array<SiteClass, 16> make_nibble_class_table() {
  std::array<SiteClass, 16> table{};
  for (int v = 0; v < 16; ++v) {
    table[v] = site_class(static_cast<Axis>(v & 3), static_cast<Axis>(v >> 2));
  }
  return table;
}
inline constexpr std::array<SiteClass, 16> kNibbleClass =
    make_nibble_class_table();

inline constexpr int nibble(std::uint64_t code, int site0) {
  return static_cast<int>((code >> (4 * site0)) & 0xF);
}
/// XOR with this mask flips both axes at `site0` (15 - v complements the
/// nibble, which is exactly the flip map on both 2-bit fields).
inline constexpr std::uint64_t flip_mask(int site0) {
  return std::uint64_t{0xF} << (4 * site0);
}

}  // namespace detail

}  // namespace phaserand

#endif  // PHASERAND_PAULI_HPP
