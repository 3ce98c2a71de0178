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

#include "phaserand/moment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phaserand {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kHalfSqrt3 = 0.8660254037844386467637232;
}  // namespace

DiagonalPhaseVector::DiagonalPhaseVector(int n_in,
                                         std::vector<double> phases_in)
    : n(n_in), phases(std::move(phases_in)) {
  if (n < 0 || n > 24) throw std::invalid_argument("bad qubit count");
  if (phases.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("phase vector length must be 2^n");
  }
  for (double ph : phases) {
    if (!(ph >= 0.0 && ph < kTwoPi)) {
      throw std::invalid_argument("phases must lie in [0, 2*pi)");
    }
  }
}

DiagonalPhaseVector DiagonalPhaseVector::zero(int n) {
  return DiagonalPhaseVector(n, std::vector<double>(std::size_t{1} << n, 0.0));
}

std::complex<double> sixth_root(int k) {
  static const std::complex<double> roots[6] = {
      {1.0, 0.0},  {0.5, kHalfSqrt3},  {-0.5, kHalfSqrt3},
      {-1.0, 0.0}, {-0.5, -kHalfSqrt3}, {0.5, -kHalfSqrt3}};
  return roots[((k % 6) + 6) % 6];
}

std::complex<double> Root6Counts::average(std::int64_t total) const {
  // re = c0 - c3 + (c1 + c5 - c2 - c4)/2, im = (√3/2)(c1 + c2 - c4 - c5).
  std::int64_t re2 = 2 * (c[0] - c[3]) + (c[1] + c[5]) - (c[2] + c[4]);
  std::int64_t im_units = c[1] + c[2] - c[4] - c[5];
  double inv = 1.0 / static_cast<double>(total);
  return {0.5 * static_cast<double>(re2) * inv,
          kHalfSqrt3 * static_cast<double>(im_units) * inv};
}

namespace detail {
void check_moment_cap(int n, int t) {
  if (n < 1 || n > 20 || (t != 1 && t != 2)) {
    throw std::invalid_argument("moment vectors support n >= 1, t in {1,2}");
  }
  // d^{2t} entries must stay under the materialization cap.
  if (static_cast<std::uint64_t>(2 * t) * n >= 64 ||
      (std::uint64_t{1} << (2 * t * n)) > kMomentEntryCap) {
    throw std::invalid_argument("moment vector exceeds materialization cap");
  }
}
}  // namespace detail

std::uint64_t MomentVector::flat(std::span<const int> ns,
                                 std::span<const int> ms) const {
  if (static_cast<int>(ns.size()) != t || static_cast<int>(ms.size()) != t) {
    throw std::invalid_argument("index tuple length must equal t");
  }
  std::uint64_t d = dim();
  std::uint64_t off = 0;
  for (int v : ns) {
    if (v < 1 || static_cast<std::uint64_t>(v) > d)
      throw std::out_of_range("basis index");
    off = off * d + static_cast<std::uint64_t>(v - 1);
  }
  for (int v : ms) {
    if (v < 1 || static_cast<std::uint64_t>(v) > d)
      throw std::out_of_range("basis index");
    off = off * d + static_cast<std::uint64_t>(v - 1);
  }
  return off;
}

std::complex<double> MomentVector::at(std::span<const int> ns,
                                      std::span<const int> ms) const {
  return entries[flat(ns, ms)];
}

std::complex<double> MomentVector::at2(int n1, int n2, int m1, int m2) const {
  const int ns[2] = {n1, n2};
  const int ms[2] = {m1, m2};
  return at(ns, ms);
}

double target_moment_entry(std::span<const int> ns, std::span<const int> ms) {
  std::vector<int> a(ns.begin(), ns.end());
  std::vector<int> b(ms.begin(), ms.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b ? 1.0 : 0.0;
}

MomentVector target_moment(int n, int t) {
  detail::check_moment_cap(n, t);
  MomentVector m;
  m.n = n;
  m.t = t;
  m.mode = MomentMode::ExactTarget;
  const std::uint64_t d = std::uint64_t{1} << n;
  std::uint64_t dt = 1;
  for (int k = 0; k < t; ++k) dt *= d;
  m.entries.assign(dt * dt, 0.0);
  // Multiset equality via sorted tuples; t is 1 or 2 so this is direct.
  for (std::uint64_t a = 0; a < dt; ++a) {
    for (std::uint64_t b = 0; b < dt; ++b) {
      bool equal;
      if (t == 1) {
        equal = a == b;
      } else {
        std::uint64_t a1 = a / d, a2 = a % d, b1 = b / d, b2 = b % d;
        std::uint64_t alo = std::min(a1, a2), ahi = std::max(a1, a2);
        std::uint64_t blo = std::min(b1, b2), bhi = std::max(b1, b2);
        equal = alo == blo && ahi == bhi;
      }
      if (equal) m.entries[a * dt + b] = 1.0;
    }
  }
  return m;
}

namespace {

/// Shared core of the discrete enumeration and its Monte-Carlo variant.
/// Accumulates sixth-root counts of exp(i sum_k (phi_{n_k} - phi_{m_k}))
/// per entry; `next_assignment` fills `levels` and returns false when done.
MomentVector discrete_moment_accumulate(
    int n, int t, MomentMode mode, std::uint64_t seed,
    const std::function<bool(std::vector<int>&)>& next_assignment) {
  detail::check_moment_cap(n, t);
  const int levels_count = t + 1;
  const int units_per_level = 6 / levels_count;  // t in {1, 2}
  const std::uint64_t d = std::uint64_t{1} << n;
  std::uint64_t dt = 1;
  for (int k = 0; k < t; ++k) dt *= d;

  std::vector<Root6Counts> counts(dt * dt);
  std::vector<int> levels(d, 0);
  std::vector<int> tuple_units(dt);
  std::int64_t total = 0;
  while (next_assignment(levels)) {
    ++total;
    // Units of pi/3 accumulated over each ordered t-tuple of basis indices.
    if (t == 1) {
      for (std::uint64_t a = 0; a < d; ++a) {
        tuple_units[a] = levels[a] * units_per_level;
      }
    } else {
      for (std::uint64_t a1 = 0; a1 < d; ++a1) {
        int u1 = levels[a1] * units_per_level;
        for (std::uint64_t a2 = 0; a2 < d; ++a2) {
          tuple_units[a1 * d + a2] = u1 + levels[a2] * units_per_level;
        }
      }
    }
    for (std::uint64_t a = 0; a < dt; ++a) {
      int ua = tuple_units[a];
      Root6Counts* row = counts.data() + a * dt;
      for (std::uint64_t b = 0; b < dt; ++b) {
        row[b].add(((ua - tuple_units[b]) % 6 + 6) % 6);
      }
    }
  }

  MomentVector m;
  m.n = n;
  m.t = t;
  m.mode = mode;
  m.seed = seed;
  m.samples = mode == MomentMode::MonteCarlo ? total : 0;
  m.entries.resize(dt * dt);
  for (std::uint64_t e = 0; e < dt * dt; ++e) {
    m.entries[e] = counts[e].average(total);
  }
  return m;
}

}  // namespace

MomentVector discrete_design_moment(int n, int t) {
  const std::uint64_t d = std::uint64_t{1} << n;
  double assignments = std::pow(static_cast<double>(t + 1),
                                static_cast<double>(d));
  if (assignments > 4.0e7) {
    throw std::invalid_argument(
        "discrete enumeration above cap; use the Monte-Carlo mode");
  }
  bool first = true;
  auto next = [&, first](std::vector<int>& levels) mutable -> bool {
    if (first) {
      first = false;
      return true;
    }
    // Odometer over (t+1)^d assignments.
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (++levels[i] <= t) return true;
      levels[i] = 0;
    }
    return false;
  };
  return discrete_moment_accumulate(n, t, MomentMode::DiscreteEnumeration, 0,
                                    next);
}

MomentVector discrete_design_moment_mc(int n, int t, std::uint64_t samples,
                                       std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("sample count must be > 0");
  std::uint64_t done = 0;
  auto next = [&, n, t, seed](std::vector<int>& levels) mutable -> bool {
    if (done == samples) return false;
    Rng rng = Rng::stream(seed, done);
    for (auto& level : levels) {
      level = static_cast<int>(rng.below(static_cast<std::uint64_t>(t) + 1));
    }
    ++done;
    return true;
  };
  return discrete_moment_accumulate(n, t, MomentMode::MonteCarlo, seed, next);
}

MomentVector ensemble_moment(
    std::span<const std::pair<double, DiagonalPhaseVector>> members, int t) {
  if (members.empty()) throw std::invalid_argument("empty ensemble");
  const int n = members[0].second.n;
  detail::check_moment_cap(n, t);
  double weight_sum = 0.0;
  for (const auto& [w, member] : members) {
    if (member.n != n) throw std::invalid_argument("mixed qubit counts");
    if (w < 0.0) throw std::invalid_argument("negative ensemble weight");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    throw std::invalid_argument("ensemble weights must sum to 1");
  }

  const std::uint64_t d = std::uint64_t{1} << n;
  std::uint64_t dt = 1;
  for (int k = 0; k < t; ++k) dt *= d;

  MomentVector m;
  m.n = n;
  m.t = t;
  m.mode = MomentMode::Ensemble;
  m.entries.assign(dt * dt, 0.0);

  std::vector<std::complex<double>> tuple_phase(dt);
  for (const auto& [w, member] : members) {
    if (t == 1) {
      for (std::uint64_t a = 0; a < d; ++a) {
        tuple_phase[a] = std::polar(1.0, member.phases[a]);
      }
    } else {
      std::vector<std::complex<double>> z(d);
      for (std::uint64_t a = 0; a < d; ++a) {
        z[a] = std::polar(1.0, member.phases[a]);
      }
      for (std::uint64_t a1 = 0; a1 < d; ++a1) {
        for (std::uint64_t a2 = 0; a2 < d; ++a2) {
          tuple_phase[a1 * d + a2] = z[a1] * z[a2];
        }
      }
    }
    for (std::uint64_t a = 0; a < dt; ++a) {
      for (std::uint64_t b = 0; b < dt; ++b) {
        // |z|^2 is identically 1 when the tuples coincide pointwise.
        m.entries[a * dt + b] +=
            a == b ? w : w * tuple_phase[a] * std::conj(tuple_phase[b]);
      }
    }
  }
  for (auto& e : m.entries) e /= weight_sum;
  return m;
}

Eigen::MatrixXcd conjugate_density(const DiagonalPhaseVector& u,
                                   const Eigen::MatrixXcd& rho) {
  const std::uint64_t d = std::uint64_t{1} << u.n;
  const std::uint64_t dim = d * d;
  if (rho.rows() != static_cast<Eigen::Index>(dim) ||
      rho.cols() != static_cast<Eigen::Index>(dim)) {
    throw std::invalid_argument("density dimension must be 4^n (2n qubits)");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("density must be Hermitian");
  }
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("density must have unit trace");
  }
  std::vector<std::complex<double>> zz(dim);
  for (std::uint64_t a1 = 0; a1 < d; ++a1) {
    std::complex<double> z1 = std::polar(1.0, u.phases[a1]);
    for (std::uint64_t a2 = 0; a2 < d; ++a2) {
      zz[a1 * d + a2] = z1 * std::polar(1.0, u.phases[a2]);
    }
  }
  Eigen::MatrixXcd out(dim, dim);
  for (std::uint64_t a = 0; a < dim; ++a) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      out(a, b) = a == b ? rho(a, b) : zz[a] * std::conj(zz[b]) * rho(a, b);
    }
  }
  return out;
}

double max_moment_entry_error(const MomentVector& a, const MomentVector& b) {
  if (a.n != b.n || a.t != b.t || a.entries.size() != b.entries.size()) {
    throw std::invalid_argument("moment vector shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t e = 0; e < a.entries.size(); ++e) {
    worst = std::max(worst, std::abs(a.entries[e] - b.entries[e]));
  }
  return worst;
}

double l2_moment_error(const MomentVector& a, const MomentVector& b) {
  if (a.n != b.n || a.t != b.t || a.entries.size() != b.entries.size()) {
    throw std::invalid_argument("moment vector shape mismatch");
  }
  double sum = 0.0;
  for (std::size_t e = 0; e < a.entries.size(); ++e) {
    sum += std::norm(a.entries[e] - b.entries[e]);
  }
  return std::sqrt(sum);
}

}  // namespace phaserand
