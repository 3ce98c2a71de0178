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

#include "phaserand/pauli.hpp"

#include <stdexcept>

namespace phaserand {

char axis_char(Axis a) {
  switch (a) {
    case Axis::I: return '0';
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  throw std::invalid_argument("bad axis");
}

Axis axis_from_char(char c) {
  switch (c) {
    case '0': case 'i': case 'I': return Axis::I;
    case 'x': case 'X': return Axis::X;
    case 'y': case 'Y': return Axis::Y;
    case 'z': case 'Z': return Axis::Z;
  }
  throw std::invalid_argument(std::string("bad axis character: ") + c);
}

PauliPairIndex::PauliPairIndex(std::vector<Axis> p_in, std::vector<Axis> q_in)
    : n(static_cast<int>(p_in.size())), p(std::move(p_in)), q(std::move(q_in)) {
  if (p.size() != q.size() || p.empty()) {
    throw std::invalid_argument("p and q must have equal nonzero length");
  }
  if (n > 16) throw std::invalid_argument("site count exceeds 16");
}

PauliPairIndex PauliPairIndex::from_strings(const std::string& p_str,
                                            const std::string& q_str) {
  std::vector<Axis> p, q;
  p.reserve(p_str.size());
  q.reserve(q_str.size());
  for (char c : p_str) p.push_back(axis_from_char(c));
  for (char c : q_str) q.push_back(axis_from_char(c));
  return PauliPairIndex(std::move(p), std::move(q));
}

PauliPairIndex PauliPairIndex::from_packed(int n, std::uint64_t code) {
  std::vector<Axis> p(n), q(n);
  for (int i = 0; i < n; ++i) {
    int v = detail::nibble(code, i);
    p[i] = static_cast<Axis>(v & 3);
    q[i] = static_cast<Axis>(v >> 2);
  }
  return PauliPairIndex(std::move(p), std::move(q));
}

std::uint64_t PauliPairIndex::packed() const {
  std::uint64_t code = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t v = static_cast<std::uint64_t>(p[i]) |
                      (static_cast<std::uint64_t>(q[i]) << 2);
    code |= v << (4 * i);
  }
  return code;
}

std::string PauliPairIndex::p_string() const {
  std::string s;
  for (Axis a : p) s.push_back(axis_char(a));
  return s;
}

std::string PauliPairIndex::q_string() const {
  std::string s;
  for (Axis a : q) s.push_back(axis_char(a));
  return s;
}

std::vector<int> PartitionSets::gamma_union() const {
  std::vector<int> u = gamma_plus;
  u.insert(u.end(), gamma_minus.begin(), gamma_minus.end());
  std::sort(u.begin(), u.end());
  return u;
}

std::vector<int> PartitionSets::lambda_union() const {
  std::vector<int> u = lambda_plus;
  u.insert(u.end(), lambda_minus.begin(), lambda_minus.end());
  std::sort(u.begin(), u.end());
  return u;
}

PartitionSets classify(const PauliPairIndex& idx) {
  PartitionSets sets;
  for (int site = 1; site <= idx.n; ++site) {
    switch (site_class(idx.p_at(site), idx.q_at(site))) {
      case SiteClass::LambdaPlus: sets.lambda_plus.push_back(site); break;
      case SiteClass::LambdaMinus: sets.lambda_minus.push_back(site); break;
      case SiteClass::GammaPlus: sets.gamma_plus.push_back(site); break;
      case SiteClass::GammaMinus: sets.gamma_minus.push_back(site); break;
      case SiteClass::None: break;
    }
  }
  return sets;
}

PauliPairIndex flip_subset(const PauliPairIndex& idx,
                           std::span<const int> sites) {
  PauliPairIndex out = idx;
  for (int site : sites) {
    if (site < 1 || site > idx.n) {
      throw std::out_of_range("flip site outside 1..n");
    }
    out.p[site - 1] = flip(out.p[site - 1]);
    out.q[site - 1] = flip(out.q[site - 1]);
  }
  return out;
}

void for_each_flip_image(
    const PauliPairIndex& idx,
    const std::function<void(const PauliPairIndex&, bool odd)>& fn) {
  PartitionSets sets = classify(idx);
  if (!sets.complete(idx.n)) {
    throw std::invalid_argument(
        "flip families require every site classified (gamma + lambda = n)");
  }
  std::vector<int> union_sites = sets.lambda_union();
  for (int s : sets.gamma_union()) union_sites.push_back(s);
  std::sort(union_sites.begin(), union_sites.end());

  std::uint64_t minus_membership = 0;
  for (std::size_t k = 0; k < union_sites.size(); ++k) {
    for (int m : sets.gamma_minus) {
      if (union_sites[k] == m) minus_membership |= std::uint64_t{1} << k;
    }
  }

  const std::uint64_t base = idx.packed();
  const std::uint64_t subsets = std::uint64_t{1} << union_sites.size();
  for (std::uint64_t s = 0; s < subsets; ++s) {
    std::uint64_t code = base;
    for (std::size_t k = 0; k < union_sites.size(); ++k) {
      if (s & (std::uint64_t{1} << k)) {
        code ^= detail::flip_mask(union_sites[k] - 1);
      }
    }
    bool odd = __builtin_popcountll(s & minus_membership) & 1;
    fn(PauliPairIndex::from_packed(idx.n, code), odd);
  }
}

FlipFamilies enumerate_flip_families(const PauliPairIndex& idx) {
  if (idx.n > 12) {
    throw std::invalid_argument(
        "materialized flip families limited to n <= 12; use "
        "for_each_flip_image");
  }
  FlipFamilies families;
  for_each_flip_image(idx, [&](const PauliPairIndex& image, bool odd) {
    (odd ? families.odd : families.even).push_back(image);
  });
  return families;
}

}  // namespace phaserand
