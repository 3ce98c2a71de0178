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

#include "phaserand/circuits.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace phaserand {

namespace {
constexpr double kPiThird = 1.0471975511965977461542145;

int bit_of(std::uint64_t b, int site) { return (b >> (site - 1)) & 1; }

void check_sites(int i, int j, int n) {
  if (n < 2) throw std::invalid_argument("need at least two qubits");
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw std::invalid_argument("gate sites must be distinct and in 1..n");
  }
}
}  // namespace

GateSpec::GateSpec(int i_in, int j_in, GateFamily family_in, int alpha,
                   int beta, int gamma)
    : i(i_in), j(j_in), family(family_in), alpha_thirds(alpha),
      beta_thirds(beta), gamma_pi(gamma) {
  if (i >= j) throw std::invalid_argument("gate sites must satisfy i < j");
  if (alpha < 0 || alpha > 2 || beta < 0 || beta > 2) {
    throw std::invalid_argument("alpha/beta must be in {0, 1, 2} thirds");
  }
  if (family == GateFamily::CZ) {
    gamma_pi = 1;
  } else if (gamma < 0 || gamma > 1) {
    throw std::invalid_argument("gamma must be in {0, 1} half-turns");
  }
}

std::vector<int> materialize_units(const CircuitInstance& circuit) {
  const std::uint64_t d = std::uint64_t{1} << circuit.n;
  std::vector<int> units(d, 0);
  for (const GateSpec& g : circuit.gates) {
    check_sites(g.i, g.j, circuit.n);
    for (std::uint64_t b = 0; b < d; ++b) {
      int bi = bit_of(b, g.i);
      int bj = bit_of(b, g.j);
      units[b] += 2 * g.alpha_thirds * bi + 2 * g.beta_thirds * bj +
                  3 * g.gamma_pi * bi * bj;
    }
  }
  for (int& u : units) u = ((u % 6) + 6) % 6;
  return units;
}

DiagonalPhaseVector materialize(const CircuitInstance& circuit) {
  std::vector<int> units = materialize_units(circuit);
  std::vector<double> phases(units.size());
  for (std::size_t b = 0; b < units.size(); ++b) {
    phases[b] = kPiThird * units[b];
  }
  return DiagonalPhaseVector(circuit.n, std::move(phases));
}

std::vector<std::pair<int, int>> all_pairs(int n) {
  if (n < 2) throw std::invalid_argument("need at least two qubits");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<std::pair<int, int>> modified_prefix_pairs(int n) {
  if (n < 2) throw std::invalid_argument("need at least two qubits");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i + 1 <= n; i += 2) pairs.emplace_back(i, i + 1);
  if (n % 2 == 1) pairs.emplace_back(n - 1, n);
  return pairs;
}

CircuitInstance modified_prefix(int n, Rng& rng) {
  CircuitInstance c;
  c.n = n;
  c.policy = "modified-prefix";
  for (auto [i, j] : modified_prefix_pairs(n)) {
    int alpha = static_cast<int>(rng.below(3));
    int beta = static_cast<int>(rng.below(3));
    c.gates.emplace_back(i, j, GateFamily::CZ, alpha, beta, 1);
  }
  return c;
}

CircuitInstance sample_cz_circuit(int n, int t, Rng& rng) {
  if (n < 2) throw std::invalid_argument("need at least two qubits");
  if (t < 0) throw std::invalid_argument("gate count must be >= 0");
  CircuitInstance c;
  c.n = n;
  c.policy = "cz-sampled";
  auto pairs = all_pairs(n);
  for (int k = 0; k < t; ++k) {
    auto [i, j] = pairs[rng.below(pairs.size())];
    int alpha = static_cast<int>(rng.below(3));
    int beta = static_cast<int>(rng.below(3));
    c.gates.emplace_back(i, j, GateFamily::CZ, alpha, beta, 1);
  }
  return c;
}

GateExponent gate_exponent(int i, int j, std::uint64_t n1, std::uint64_t n2,
                           std::uint64_t m1, std::uint64_t m2) {
  GateExponent e;
  const std::uint64_t idx[4] = {n1, n2, m1, m2};
  const int sign[4] = {1, 1, -1, -1};
  for (int k = 0; k < 4; ++k) {
    int u = bit_of(idx[k], i);
    int v = bit_of(idx[k], j);
    e.c_alpha += sign[k] * u;
    e.c_beta += sign[k] * v;
    e.c_gamma += sign[k] * u * v;
  }
  return e;
}

std::pair<double, double> cp_gate_entry_averages(const GateExponent& e) {
  // alpha, beta over thirds: average is 1 iff the coefficient is 0 mod 3,
  // and |c| <= 2 rules out nonzero multiples of 3.
  if (std::abs(e.c_alpha) > 2 || std::abs(e.c_beta) > 2) {
    throw std::logic_error("single-gate exponent coefficient out of range");
  }
  if (e.c_alpha != 0 || e.c_beta != 0) return {0.0, 0.0};
  // gamma over {0, pi}: average is 1 iff c_gamma is even. A surviving
  // entry never has |c_gamma| = 2, so even means zero here.
  if (std::abs(e.c_gamma) > 1) {
    throw std::logic_error("gamma coefficient aliases the two-valued set");
  }
  double discrete = e.c_gamma == 0 ? 1.0 : 0.0;
  double continuous = e.c_gamma == 0 ? 1.0 : 0.0;
  return {discrete, continuous};
}

namespace {

template <typename EntryFn>
MomentVector fill_gate_factor(int i, int j, int n, MomentMode mode,
                              EntryFn&& entry) {
  check_sites(i, j, n);
  detail::check_moment_cap(n, 2);
  MomentVector m;
  m.n = n;
  m.t = 2;
  m.mode = mode;
  const std::uint64_t d = std::uint64_t{1} << n;
  m.entries.resize(d * d * d * d);
  std::uint64_t off = 0;
  for (std::uint64_t n1 = 0; n1 < d; ++n1)
    for (std::uint64_t n2 = 0; n2 < d; ++n2)
      for (std::uint64_t m1 = 0; m1 < d; ++m1)
        for (std::uint64_t m2 = 0; m2 < d; ++m2) {
          m.entries[off++] = entry(gate_exponent(i, j, n1, n2, m1, m2));
        }
  return m;
}

MomentVector product_over_pairs(int n, GateFamily family) {
  detail::check_moment_cap(n, 2);
  MomentVector acc;
  bool first = true;
  for (auto [i, j] : all_pairs(n)) {
    MomentVector factor = family == GateFamily::CP
                              ? cp_gate_moment_factor(i, j, n)
                              : cz_gate_moment_factor(i, j, n);
    if (first) {
      acc = std::move(factor);
      first = false;
    } else {
      for (std::size_t e = 0; e < acc.entries.size(); ++e) {
        acc.entries[e] *= factor.entries[e];
      }
    }
  }
  acc.mode = MomentMode::CircuitProduct;
  return acc;
}

}  // namespace

MomentVector cp_gate_moment_factor(int i, int j, int n) {
  return fill_gate_factor(i, j, n, MomentMode::GateFactor,
                          [](const GateExponent& e) -> std::complex<double> {
                            auto [disc, cont] = cp_gate_entry_averages(e);
                            if (disc != cont) {
                              throw std::logic_error(
                                  "discrete/continuous averages disagree");
                            }
                            return disc;
                          });
}

MomentVector cz_gate_moment_factor(int i, int j, int n) {
  return fill_gate_factor(i, j, n, MomentMode::GateFactor,
                          [](const GateExponent& e) -> std::complex<double> {
                            if (e.c_alpha != 0 || e.c_beta != 0) return 0.0;
                            return (e.c_gamma & 1) ? -1.0 : 1.0;
                          });
}

MomentVector cp_circuit_moment(int n) {
  return product_over_pairs(n, GateFamily::CP);
}

MomentVector cz_all_pairs_moment(int n) {
  return product_over_pairs(n, GateFamily::CZ);
}

MomentVector cz_all_pairs_moment_enumerated(int n) {
  if (n > 3) {
    throw std::invalid_argument("full circuit enumeration limited to n <= 3");
  }
  detail::check_moment_cap(n, 2);
  auto pairs = all_pairs(n);
  const int gate_count = static_cast<int>(pairs.size());
  const std::uint64_t d = std::uint64_t{1} << n;
  const std::uint64_t dt = d * d;

  std::vector<Root6Counts> counts(dt * dt);
  std::vector<int> phase_levels(2 * gate_count, 0);  // alpha, beta per gate
  std::int64_t total = 0;
  for (;;) {
    ++total;
    CircuitInstance c;
    c.n = n;
    for (int g = 0; g < gate_count; ++g) {
      c.gates.emplace_back(pairs[g].first, pairs[g].second, GateFamily::CZ,
                           phase_levels[2 * g], phase_levels[2 * g + 1], 1);
    }
    std::vector<int> units = materialize_units(c);
    for (std::uint64_t a = 0; a < dt; ++a) {
      int ua = units[a / d] + units[a % d];
      for (std::uint64_t b = 0; b < dt; ++b) {
        int ub = units[b / d] + units[b % d];
        counts[a * dt + b].add(((ua - ub) % 6 + 6) % 6);
      }
    }
    int pos = 0;
    while (pos < 2 * gate_count && ++phase_levels[pos] == 3) {
      phase_levels[pos] = 0;
      ++pos;
    }
    if (pos == 2 * gate_count) break;
  }

  MomentVector m;
  m.n = n;
  m.t = 2;
  m.mode = MomentMode::DiscreteEnumeration;
  m.entries.resize(dt * dt);
  for (std::uint64_t e = 0; e < dt * dt; ++e) {
    m.entries[e] = counts[e].average(total);
  }
  return m;
}

MomentVector cz_sampled_expected_moment(int n, long long t) {
  detail::check_moment_cap(n, 2);
  if (t < 0) throw std::invalid_argument("gate count must be >= 0");
  auto pairs = all_pairs(n);
  MomentVector m;
  m.n = n;
  m.t = 2;
  m.mode = MomentMode::CircuitProduct;
  const std::uint64_t d = std::uint64_t{1} << n;
  m.entries.assign(d * d * d * d, 1.0);
  if (t == 0) return m;
  std::uint64_t off = 0;
  const double inv_pairs = 1.0 / static_cast<double>(pairs.size());
  for (std::uint64_t n1 = 0; n1 < d; ++n1)
    for (std::uint64_t n2 = 0; n2 < d; ++n2)
      for (std::uint64_t m1 = 0; m1 < d; ++m1)
        for (std::uint64_t m2 = 0; m2 < d; ++m2) {
          double g = 0.0;
          for (auto [i, j] : pairs) {
            GateExponent e = gate_exponent(i, j, n1, n2, m1, m2);
            if (e.c_alpha == 0 && e.c_beta == 0) {
              g += (e.c_gamma & 1) ? -1.0 : 1.0;
            }
          }
          g *= inv_pairs;
          m.entries[off++] = std::pow(g, static_cast<double>(t));
        }
  return m;
}

std::string phase_expression(const CircuitInstance& circuit, int basis_index) {
  const std::uint64_t d = std::uint64_t{1} << circuit.n;
  if (basis_index < 1 || static_cast<std::uint64_t>(basis_index) > d) {
    throw std::out_of_range("basis index");
  }
  const std::uint64_t b = static_cast<std::uint64_t>(basis_index - 1);
  int half_turns = 0;
  std::string terms;
  for (std::size_t t = 0; t < circuit.gates.size(); ++t) {
    const GateSpec& g = circuit.gates[t];
    int bi = bit_of(b, g.i);
    int bj = bit_of(b, g.j);
    if (bi) {
      if (!terms.empty()) terms += "+";
      terms += "a" + std::to_string(t + 1);
    }
    if (bj) {
      if (!terms.empty()) terms += "+";
      terms += "b" + std::to_string(t + 1);
    }
    half_turns += g.gamma_pi * bi * bj;
  }
  std::string sign = (half_turns % 2) ? "-" : "";
  if (terms.empty()) return sign.empty() ? "1" : "-1";
  return sign + "exp(i(" + terms + "))";
}

std::string CircuitInstance::to_json_string() const {
  nlohmann::json j;
  j["n"] = n;
  j["seed"] = seed;
  j["policy"] = policy;
  nlohmann::json gate_list = nlohmann::json::array();
  for (const GateSpec& g : gates) {
    nlohmann::json gj;
    gj["i"] = g.i;
    gj["j"] = g.j;
    gj["family"] = g.family == GateFamily::CP ? "CP" : "CZ";
    gj["alpha_pi3"] = 2 * g.alpha_thirds;
    gj["beta_pi3"] = 2 * g.beta_thirds;
    if (g.family == GateFamily::CP) {
      gj["gamma_pi"] = g.gamma_pi;
    } else {
      gj["gamma_pi"] = nullptr;
    }
    gate_list.push_back(gj);
  }
  j["gates"] = gate_list;
  return j.dump();
}

CircuitInstance CircuitInstance::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CircuitInstance c;
  c.n = j.at("n").get<int>();
  c.seed = j.value("seed", std::uint64_t{0});
  c.policy = j.value("policy", std::string{});
  for (const auto& gj : j.at("gates")) {
    GateFamily family =
        gj.at("family").get<std::string>() == "CP" ? GateFamily::CP
                                                   : GateFamily::CZ;
    int alpha_pi3 = gj.at("alpha_pi3").get<int>();
    int beta_pi3 = gj.at("beta_pi3").get<int>();
    if (alpha_pi3 % 2 || beta_pi3 % 2) {
      throw std::invalid_argument("alpha/beta must be even multiples of pi/3");
    }
    int gamma = 1;
    if (family == GateFamily::CP) {
      gamma = gj.at("gamma_pi").get<int>();
    }
    c.gates.emplace_back(gj.at("i").get<int>(), gj.at("j").get<int>(), family,
                         alpha_pi3 / 2, beta_pi3 / 2, gamma);
  }
  return c;
}

}  // namespace phaserand
