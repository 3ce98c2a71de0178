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

#include "phaserand/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phaserand {

namespace {

using detail::flip_mask;
using detail::kNibbleClass;
using detail::nibble;

constexpr int kMaxFullN = 5;
constexpr int kMaxDensityN = 3;

void check_full(const CoeffTable& t) {
  if (t.mode() != TableMode::Full) {
    throw std::invalid_argument("operation requires a full-mode table");
  }
}

std::uint64_t full_size(int n) { return std::uint64_t{1} << (4 * n); }

/// Expand an n-bit site mask into the packed-code XOR mask that flips
/// those sites.
std::uint64_t expand_site_mask(std::uint64_t sites) {
  std::uint64_t out = 0;
  while (sites) {
    int k = __builtin_ctzll(sites);
    out |= flip_mask(k);
    sites &= sites - 1;
  }
  return out;
}

/// Quarter-turn exponent of the single nonzero entry of sigma_a in the
/// column with bit value c: entries are i^k for k in Z_4.
inline int pauli_entry_quarter_turns(Axis a, int c) {
  switch (a) {
    case Axis::I: return 0;
    case Axis::X: return 0;
    case Axis::Y: return c ? 3 : 1;  // i * (-1)^c
    case Axis::Z: return c ? 2 : 0;  // (-1)^c
  }
  return 0;
}

inline std::complex<double> quarter_turn(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

struct PauliStringInfo {
  std::uint64_t x_mask = 0;       // bits where the axis is X or Y
  std::vector<int> turns;         // quarter turns per column index
};

/// Column-indexed entry data of sigma_p (x_mask gives the row offset).
PauliStringInfo pauli_string_info(std::span<const Axis> axes) {
  PauliStringInfo info;
  const int n = static_cast<int>(axes.size());
  const std::uint64_t d = std::uint64_t{1} << n;
  for (int i = 0; i < n; ++i) {
    if (is_xy(axes[i])) info.x_mask |= std::uint64_t{1} << i;
  }
  info.turns.resize(d);
  for (std::uint64_t c = 0; c < d; ++c) {
    int k = 0;
    for (int i = 0; i < n; ++i) {
      k += pauli_entry_quarter_turns(axes[i], (c >> i) & 1);
    }
    info.turns[c] = k & 3;
  }
  return info;
}

}  // namespace

ClassDescriptor maximal_class(int n) {
  if (n < 2 || n > 20) throw std::invalid_argument("maximal class needs 2 <= n <= 20");
  ClassDescriptor cls;
  cls.n = n;
  for (int i = 1; i < n; ++i) cls.lambda_sites.push_back(i);
  cls.gamma_sites.push_back(n);
  std::uint64_t code = 0;
  for (int i = 0; i < n - 1; ++i) code |= std::uint64_t{0xF} << (4 * i);  // (z, z)
  code |= std::uint64_t{0x5} << (4 * (n - 1));                            // (x, x)
  cls.base_code = code;
  return cls;
}

CoeffTable CoeffTable::zeros_full(int n) {
  if (n < 1 || n > kMaxFullN) {
    throw std::invalid_argument("full tables support 1 <= n <= 5");
  }
  CoeffTable t;
  t.n_ = n;
  t.mode_ = TableMode::Full;
  t.values_.assign(full_size(n), 0.0);
  return t;
}

CoeffTable CoeffTable::class_table(ClassDescriptor cls,
                                   std::vector<double> values) {
  if (values.size() != (std::size_t{1} << cls.lambda())) {
    throw std::invalid_argument("class table needs 2^lambda values");
  }
  PauliPairIndex base = PauliPairIndex::from_packed(cls.n, cls.base_code);
  PartitionSets sets = classify(base);
  if (sets.lambda_union() != cls.lambda_sites ||
      sets.gamma_union() != cls.gamma_sites || !sets.complete(cls.n)) {
    throw std::invalid_argument("descriptor does not match its base index");
  }
  CoeffTable t;
  t.n_ = cls.n;
  t.mode_ = TableMode::ClassRestricted;
  t.values_ = std::move(values);
  t.cls_ = std::move(cls);
  return t;
}

const ClassDescriptor& CoeffTable::cls() const {
  if (!cls_) throw std::logic_error("not a class-restricted table");
  return *cls_;
}

double CoeffTable::at_packed(std::uint64_t code) const {
  return const_cast<CoeffTable*>(this)->at_packed(code);
}

double& CoeffTable::at_packed(std::uint64_t code) {
  if (mode_ == TableMode::Full) {
    if (code >= values_.size()) throw std::out_of_range("packed index");
    return values_[code];
  }
  // Class mode: locate the orbit element (base xor Lambda-subset flips).
  const ClassDescriptor& c = *cls_;
  std::uint64_t diff = code ^ c.base_code;
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < c.lambda_sites.size(); ++k) {
    std::uint64_t site_bits = flip_mask(c.lambda_sites[k] - 1);
    if ((diff & site_bits) == site_bits) {
      mask |= std::uint64_t{1} << k;
      diff &= ~site_bits;
    }
  }
  if (diff != 0) throw std::out_of_range("index not in the stored orbit");
  return values_[mask];
}

CoeffTable coeffs_from_density(const Eigen::MatrixXcd& rho, int n) {
  if (n < 1 || n > kMaxDensityN) {
    throw std::invalid_argument("full-density mode supports n <= 3");
  }
  const std::uint64_t d = std::uint64_t{1} << n;
  const std::uint64_t dim = d * d;
  if (rho.rows() != static_cast<Eigen::Index>(dim) ||
      rho.cols() != static_cast<Eigen::Index>(dim)) {
    throw std::invalid_argument("density dimension must be 4^n");
  }
  CoeffTable table = CoeffTable::zeros_full(n);
  const double norm = std::ldexp(1.0, -n);  // 2^{-n}
  for (std::uint64_t code = 0; code < full_size(n); ++code) {
    PauliPairIndex idx = PauliPairIndex::from_packed(n, code);
    PauliStringInfo pinfo = pauli_string_info(idx.p);
    PauliStringInfo qinfo = pauli_string_info(idx.q);
    // tr(rho sigma) = sum_A rho(A, A^X) w(A) with w the column entry of
    // sigma; X is the composite x-mask.
    std::complex<double> trace = 0.0;
    for (std::uint64_t a1 = 0; a1 < d; ++a1) {
      std::uint64_t r1 = a1 ^ pinfo.x_mask;
      for (std::uint64_t a2 = 0; a2 < d; ++a2) {
        std::uint64_t r2 = a2 ^ qinfo.x_mask;
        trace += rho(a1 * d + a2, r1 * d + r2) *
                 quarter_turn(pinfo.turns[a1] + qinfo.turns[a2]);
      }
    }
    table.values()[code] = trace.real() * norm;
    if (std::abs(trace.imag()) > 1e-8) {
      throw std::invalid_argument("density is not Hermitian");
    }
  }
  return table;
}

Eigen::MatrixXcd density_from_coeffs(const CoeffTable& table) {
  check_full(table);
  const int n = table.n();
  if (n > kMaxDensityN) {
    throw std::invalid_argument("full-density mode supports n <= 3");
  }
  const std::uint64_t d = std::uint64_t{1} << n;
  const std::uint64_t dim = d * d;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const double norm = std::ldexp(1.0, -n);
  for (std::uint64_t code = 0; code < full_size(n); ++code) {
    double xi = table.values()[code];
    if (xi == 0.0) continue;
    PauliPairIndex idx = PauliPairIndex::from_packed(n, code);
    PauliStringInfo pinfo = pauli_string_info(idx.p);
    PauliStringInfo qinfo = pauli_string_info(idx.q);
    for (std::uint64_t c1 = 0; c1 < d; ++c1) {
      std::uint64_t r1 = c1 ^ pinfo.x_mask;
      for (std::uint64_t c2 = 0; c2 < d; ++c2) {
        std::uint64_t r2 = c2 ^ qinfo.x_mask;
        rho(r1 * d + r2, c1 * d + c2) +=
            norm * xi * quarter_turn(pinfo.turns[c1] + qinfo.turns[c2]);
      }
    }
  }
  return rho;
}

namespace {

enum class StepRule { Cp, Cz };

CoeffTable step_gate(const CoeffTable& table, int i, int j, StepRule rule) {
  check_full(table);
  const int n = table.n();
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw std::invalid_argument("gate sites must be distinct and in 1..n");
  }
  const std::uint64_t mi = flip_mask(i - 1);
  const std::uint64_t mj = flip_mask(j - 1);
  const auto& in = table.values();
  CoeffTable out_table = CoeffTable::zeros_full(n);
  auto& out = out_table.values();
  for (std::uint64_t code = 0; code < in.size(); ++code) {
    SiteClass ci = kNibbleClass[nibble(code, i - 1)];
    SiteClass cj = kNibbleClass[nibble(code, j - 1)];
    if (ci == SiteClass::None || cj == SiteClass::None) {
      out[code] = 0.0;
      continue;
    }
    const bool gi = is_gamma(ci);
    const bool gj = is_gamma(cj);
    if (!gi && !gj) {
      out[code] = in[code];
    } else if (gi && gj) {
      double u = class_sign(ci);
      double v = class_sign(cj);
      out[code] = 0.25 * (in[code] + u * in[code ^ mi] + v * in[code ^ mj] +
                          u * v * in[code ^ mi ^ mj]);
    } else if (rule == StepRule::Cp) {
      // One site in Gamma, the other in Lambda: quarter-average with the
      // Gamma site's sign on its own flips.
      double s = class_sign(gi ? ci : cj);
      std::uint64_t mg = gi ? mi : mj;
      std::uint64_t ml = gi ? mj : mi;
      out[code] = 0.25 * (in[code] + s * in[code ^ mg] + in[code ^ ml] +
                          s * in[code ^ mg ^ ml]);
    } else {
      // CZ keeps no unflipped term in the mixed case.
      double s = class_sign(gi ? ci : cj);
      std::uint64_t ml = gi ? mj : mi;
      out[code] = 0.5 * (in[code ^ ml] + s * in[code ^ mi ^ mj]);
    }
  }
  return out_table;
}

}  // namespace

CoeffTable step_cp(const CoeffTable& table, int i, int j) {
  return step_gate(table, i, j, StepRule::Cp);
}

CoeffTable step_cz(const CoeffTable& table, int i, int j) {
  return step_gate(table, i, j, StepRule::Cz);
}

CoeffTable step_cz_pair_averaged(const CoeffTable& table) {
  const int n = table.n();
  if (table.mode() == TableMode::ClassRestricted) {
    const ClassDescriptor& cls = table.cls();
    const int lambda = cls.lambda();
    const int gamma = cls.gamma();
    const double denom = static_cast<double>(n) * (n - 1);
    const double w_diag =
        (lambda * (lambda - 1.0) + gamma * (gamma - 1.0)) / denom;
    const double w_flip = 2.0 * gamma / denom;
    const auto& in = table.values();
    std::vector<double> out(in.size());
    for (std::uint64_t mask = 0; mask < in.size(); ++mask) {
      double acc = w_diag * in[mask];
      for (int k = 0; k < lambda; ++k) {
        acc += w_flip * in[mask ^ (std::uint64_t{1} << k)];
      }
      out[mask] = acc;
    }
    return CoeffTable::class_table(cls, std::move(out));
  }

  check_full(table);
  auto pairs = all_pairs(n);
  CoeffTable acc = CoeffTable::zeros_full(n);
  for (auto [i, j] : pairs) {
    CoeffTable stepped = step_cz(table, i, j);
    for (std::uint64_t code = 0; code < acc.size(); ++code) {
      acc.values()[code] += stepped.values()[code];
    }
  }
  const double inv = 1.0 / static_cast<double>(pairs.size());
  for (auto& v : acc.values()) v *= inv;
  return acc;
}

CoeffTable target_coeffs(const CoeffTable& initial) {
  check_full(initial);
  const int n = initial.n();
  const auto& in = initial.values();
  CoeffTable out_table = CoeffTable::zeros_full(n);
  auto& out = out_table.values();
  const double norm = std::ldexp(1.0, -n);
  for (std::uint64_t code = 0; code < in.size(); ++code) {
    std::uint64_t gamma_minus_sites = 0;
    int gamma = 0;
    bool complete = true;
    for (int k = 0; k < n; ++k) {
      SiteClass c = kNibbleClass[nibble(code, k)];
      if (c == SiteClass::None) {
        complete = false;
        break;
      }
      if (is_gamma(c)) {
        ++gamma;
        if (c == SiteClass::GammaMinus) gamma_minus_sites |= std::uint64_t{1} << k;
      }
    }
    if (!complete) {
      out[code] = 0.0;
    } else if (gamma == 0) {
      out[code] = in[code];
    } else {
      double acc = 0.0;
      const std::uint64_t subsets = std::uint64_t{1} << n;
      for (std::uint64_t s = 0; s < subsets; ++s) {
        double sign =
            (__builtin_popcountll(s & gamma_minus_sites) & 1) ? -1.0 : 1.0;
        acc += sign * in[code ^ expand_site_mask(s)];
      }
      out[code] = norm * acc;
    }
  }
  return out_table;
}

CoeffTable post_prefix_coeffs(const CoeffTable& initial,
                              std::span<const std::pair<int, int>> pairs) {
  check_full(initial);
  const int n = initial.n();
  const auto& in = initial.values();
  CoeffTable out_table = CoeffTable::zeros_full(n);
  auto& out = out_table.values();
  for (std::uint64_t code = 0; code < in.size(); ++code) {
    std::array<SiteClass, 20> cls{};
    bool complete = true;
    for (int k = 0; k < n; ++k) {
      cls[k] = kNibbleClass[nibble(code, k)];
      if (cls[k] == SiteClass::None) {
        complete = false;
        break;
      }
    }
    if (!complete) {
      out[code] = 0.0;
      continue;
    }
    // Lambda sites flipped by the prefix: paired with a Gamma site an odd
    // number of times (overlap gates can pair a site twice).
    std::uint64_t ltilde = 0;
    for (auto [a, b] : pairs) {
      if (is_lambda(cls[a - 1]) && is_gamma(cls[b - 1])) {
        ltilde ^= std::uint64_t{1} << (a - 1);
      }
      if (is_lambda(cls[b - 1]) && is_gamma(cls[a - 1])) {
        ltilde ^= std::uint64_t{1} << (b - 1);
      }
    }
    std::vector<int> gamma_sites;
    std::uint64_t gamma_minus_sites = 0;
    for (int k = 0; k < n; ++k) {
      if (is_gamma(cls[k])) {
        gamma_sites.push_back(k);
        if (cls[k] == SiteClass::GammaMinus) {
          gamma_minus_sites |= std::uint64_t{1} << k;
        }
      }
    }
    const std::uint64_t base = code ^ expand_site_mask(ltilde);
    const std::uint64_t subsets = std::uint64_t{1} << gamma_sites.size();
    double acc = 0.0;
    for (std::uint64_t s = 0; s < subsets; ++s) {
      std::uint64_t sites = 0;
      std::uint64_t bits = s;
      while (bits) {
        int k = __builtin_ctzll(bits);
        sites |= std::uint64_t{1} << gamma_sites[k];
        bits &= bits - 1;
      }
      double sign =
          (__builtin_popcountll(sites & gamma_minus_sites) & 1) ? -1.0 : 1.0;
      acc += sign * in[base ^ expand_site_mask(sites)];
    }
    out[code] = std::ldexp(acc, -static_cast<int>(gamma_sites.size()));
  }
  return out_table;
}

CoeffTable class_restrict(const CoeffTable& full, const ClassDescriptor& cls) {
  check_full(full);
  if (full.n() != cls.n) throw std::invalid_argument("qubit count mismatch");
  PauliPairIndex base = PauliPairIndex::from_packed(cls.n, cls.base_code);
  PartitionSets sets = classify(base);
  if (sets.lambda_union() != cls.lambda_sites ||
      sets.gamma_union() != cls.gamma_sites || !sets.complete(cls.n)) {
    throw std::invalid_argument("descriptor does not match its base index");
  }

  const int lambda = cls.lambda();
  std::vector<double> values(std::size_t{1} << lambda);
  double scale = 0.0;
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
    std::uint64_t code = cls.base_code;
    for (int k = 0; k < lambda; ++k) {
      if (mask & (std::uint64_t{1} << k)) {
        code ^= flip_mask(cls.lambda_sites[k] - 1);
      }
    }
    values[mask] = full.at_packed(code);
    scale = std::max(scale, std::abs(values[mask]));
  }

  // Post-prefix sign relation: xi(f_j(p,q)) = ±xi(p,q) for j in Gamma±.
  const double tol = 1e-12 * std::max(1.0, scale);
  for (int site : cls.gamma_sites) {
    int sign = class_sign(kNibbleClass[nibble(cls.base_code, site - 1)]);
    for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
      std::uint64_t code = cls.base_code;
      for (int k = 0; k < lambda; ++k) {
        if (mask & (std::uint64_t{1} << k)) {
          code ^= flip_mask(cls.lambda_sites[k] - 1);
        }
      }
      double flipped = full.at_packed(code ^ flip_mask(site - 1));
      if (std::abs(flipped - sign * values[mask]) > tol) {
        throw std::invalid_argument(
            "table violates the post-prefix sign relation on this class");
      }
    }
  }
  return CoeffTable::class_table(cls, std::move(values));
}

double class_mean(const CoeffTable& table) {
  if (table.mode() != TableMode::ClassRestricted) {
    throw std::invalid_argument("class_mean requires a class table");
  }
  double sum = 0.0;
  for (double v : table.values()) sum += v;
  return sum / static_cast<double>(table.values().size());
}

Eigen::Matrix<double, 256, 256> local_transfer_closed_form(GateFamily family) {
  auto dz = [](int a) { return a == 0 || a == 3; };
  auto dxy = [](int a) { return a == 1 || a == 2; };
  auto dmat = [](int a, int b) {  // I <-> Z swap
    return ((a == 0 && b == 3) || (a == 3 && b == 0)) ? 1.0 : 0.0;
  };
  auto emat = [](int a, int b) {  // antisymmetric X <-> Y swap
    if (a == 1 && b == 2) return 1.0;
    if (a == 2 && b == 1) return -1.0;
    return 0.0;
  };
  auto eq = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  Eigen::Matrix<double, 256, 256> local =
      Eigen::Matrix<double, 256, 256>::Zero();
  for (int out = 0; out < 256; ++out) {
    int pi = out & 3, pj = (out >> 2) & 3, qi = (out >> 4) & 3,
        qj = (out >> 6) & 3;
    for (int in = 0; in < 256; ++in) {
      int pi2 = in & 3, pj2 = (in >> 2) & 3, qi2 = (in >> 4) & 3,
          qj2 = (in >> 6) & 3;
      double idp = eq(pi, pi2) * eq(pj, pj2) * eq(qi, qi2) * eq(qj, qj2);
      double v = 0.0;
      if (family == GateFamily::CP) {
        v += idp * (dz(pi) * dz(pj) * dz(qi) * dz(qj) +
                    0.25 * dz(pi) * dz(qi) * dxy(pj) * dxy(qj) +
                    0.25 * dxy(pi) * dxy(qi) * dz(pj) * dz(qj) +
                    0.25 * dxy(pi) * dxy(pj) * dxy(qi) * dxy(qj));
        v += 0.25 * dxy(pi) * dxy(qi) * eq(pi, pi2) * eq(qi, qi2) *
             (dmat(pj, pj2) * dmat(qj, qj2) + emat(pj, pj2) * emat(qj, qj2));
        v += 0.25 * dxy(pj) * dxy(qj) * eq(pj, pj2) * eq(qj, qj2) *
             (dmat(pi, pi2) * dmat(qi, qi2) + emat(pi, pi2) * emat(qi, qi2));
        v += 0.25 * emat(pi, pi2) * emat(qi, qi2) *
             (dz(pj) * dz(qj) * eq(pj, pj2) * eq(qj, qj2) +
              dmat(pj, pj2) * dmat(qj, qj2));
        v += 0.25 * emat(pj, pj2) * emat(qj, qj2) *
             (dz(pi) * dz(qi) * eq(pi, pi2) * eq(qi, qi2) +
              dmat(pi, pi2) * dmat(qi, qi2));
        v += 0.25 * emat(pi, pi2) * emat(qi, qi2) * emat(pj, pj2) *
             emat(qj, qj2);
      } else {
        v += idp * (dz(pi) * dz(pj) * dz(qi) * dz(qj) +
                    0.25 * dxy(pi) * dxy(pj) * dxy(qi) * dxy(qj));
        v += 0.5 * dxy(pi) * dxy(qi) * eq(pi, pi2) * eq(qi, qi2) *
             (dmat(pj, pj2) * dmat(qj, qj2) +
              0.5 * emat(pj, pj2) * emat(qj, qj2));
        v += 0.5 * dxy(pj) * dxy(qj) * eq(pj, pj2) * eq(qj, qj2) *
             (dmat(pi, pi2) * dmat(qi, qi2) +
              0.5 * emat(pi, pi2) * emat(qi, qi2));
        v += 0.5 * dmat(pi, pi2) * dmat(qi, qi2) * emat(pj, pj2) *
             emat(qj, qj2);
        v += 0.5 * emat(pi, pi2) * emat(qi, qi2) * dmat(pj, pj2) *
             dmat(qj, qj2);
        v += 0.25 * emat(pi, pi2) * emat(qi, qi2) * emat(pj, pj2) *
             emat(qj, qj2);
      }
      local(out, in) = v;
    }
  }
  return local;
}

CoeffTable apply_local_transfer(const CoeffTable& table,
                                const Eigen::Matrix<double, 256, 256>& local,
                                int i, int j) {
  check_full(table);
  const int n = table.n();
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw std::invalid_argument("gate sites must be distinct and in 1..n");
  }
  const auto& in = table.values();
  CoeffTable out_table = CoeffTable::zeros_full(n);
  auto& out = out_table.values();
  const int si = 4 * (i - 1);
  const int sj = 4 * (j - 1);
  const std::uint64_t clear = ~(flip_mask(i - 1) | flip_mask(j - 1));
  for (std::uint64_t code = 0; code < in.size(); ++code) {
    int ni = nibble(code, i - 1);
    int nj = nibble(code, j - 1);
    // local index packs (p_i, p_j, q_i, q_j) as 2-bit fields
    int out_loc = (ni & 3) | ((nj & 3) << 2) | ((ni >> 2) << 4) |
                  ((nj >> 2) << 6);
    double acc = 0.0;
    for (int in_loc = 0; in_loc < 256; ++in_loc) {
      double w = local(out_loc, in_loc);
      if (w == 0.0) continue;
      std::uint64_t ni2 = static_cast<std::uint64_t>(
          (in_loc & 3) | (((in_loc >> 4) & 3) << 2));
      std::uint64_t nj2 = static_cast<std::uint64_t>(
          ((in_loc >> 2) & 3) | (((in_loc >> 6) & 3) << 2));
      std::uint64_t code2 = (code & clear) | (ni2 << si) | (nj2 << sj);
      acc += w * in[code2];
    }
    out[code] = acc;
  }
  return out_table;
}

CoeffTable evolve(const CoeffTable& table, EvolvePolicy policy, int t,
                  std::uint64_t seed, int trials) {
  switch (policy) {
    case EvolvePolicy::CpAllPairs: {
      check_full(table);
      CoeffTable state = table;
      for (auto [i, j] : all_pairs(table.n())) state = step_cp(state, i, j);
      return state;
    }
    case EvolvePolicy::CzPairAveraged: {
      CoeffTable state = table;
      if (table.mode() == TableMode::Full) {
        for (auto [i, j] : modified_prefix_pairs(table.n())) {
          state = step_cz(state, i, j);
        }
      }
      // Class tables are post-prefix by construction.
      for (int k = 0; k < t; ++k) state = step_cz_pair_averaged(state);
      return state;
    }
    case EvolvePolicy::CzSampled: {
      check_full(table);
      const int n = table.n();
      if (n > kMaxDensityN) {
        throw std::invalid_argument("sampled evolution supports n <= 3");
      }
      if (trials <= 0) throw std::invalid_argument("trials must be > 0");
      const std::uint64_t d = std::uint64_t{1} << n;
      const std::uint64_t dim = d * d;
      std::vector<Root6Counts> counts(dim * dim);
      for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        CircuitInstance c = sample_cz_circuit(n, t, rng);
        std::vector<int> units = materialize_units(c);
        for (std::uint64_t a = 0; a < dim; ++a) {
          int ua = units[a / d] + units[a % d];
          for (std::uint64_t b = 0; b < dim; ++b) {
            int ub = units[b / d] + units[b % d];
            counts[a * dim + b].add(((ua - ub) % 6 + 6) % 6);
          }
        }
      }
      Eigen::MatrixXcd rho = density_from_coeffs(table);
      Eigen::MatrixXcd averaged(dim, dim);
      for (std::uint64_t a = 0; a < dim; ++a) {
        for (std::uint64_t b = 0; b < dim; ++b) {
          averaged(a, b) = rho(a, b) * counts[a * dim + b].average(trials);
        }
      }
      // The averaged matrix is Hermitian but no longer unit trace in
      // general tables, so convert directly.
      CoeffTable out = CoeffTable::zeros_full(n);
      const double norm = std::ldexp(1.0, -n);
      for (std::uint64_t code = 0; code < out.size(); ++code) {
        PauliPairIndex idx = PauliPairIndex::from_packed(n, code);
        PauliStringInfo pinfo = pauli_string_info(idx.p);
        PauliStringInfo qinfo = pauli_string_info(idx.q);
        std::complex<double> trace = 0.0;
        for (std::uint64_t a1 = 0; a1 < d; ++a1) {
          std::uint64_t r1 = a1 ^ pinfo.x_mask;
          for (std::uint64_t a2 = 0; a2 < d; ++a2) {
            std::uint64_t r2 = a2 ^ qinfo.x_mask;
            trace += averaged(a1 * d + a2, r1 * d + r2) *
                     quarter_turn(pinfo.turns[a1] + qinfo.turns[a2]);
          }
        }
        out.values()[code] = trace.real() * norm;
      }
      return out;
    }
  }
  throw std::logic_error("unknown policy");
}

}  // namespace phaserand
