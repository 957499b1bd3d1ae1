// Copyright 2026 The qeraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Entropy calculus over labeled subsystems. Every combination is assembled
// from marginal von Neumann entropies (one eigendecomposition each); no
// closed-form shortcuts are used here. All values are in bits. Conditional
// and ternary entries may be negative and are never clamped.

#include "qeraser/state.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

namespace qeraser {

namespace detail {

inline void require_nonempty(const LabelSet& s, const char* what) {
  if (s.empty()) throw std::invalid_argument(std::string(what) + ": label set is empty");
}

inline void require_disjoint(const LabelSet& a, const LabelSet& b, const char* what) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x == y) {
        throw std::invalid_argument(std::string(what) + ": label '" + x +
                                    "' appears in more than one set");
      }
    }
  }
}

inline LabelSet join(std::initializer_list<const LabelSet*> sets) {
  LabelSet out;
  for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
  return out;
}

inline std::string display(const LabelSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out;
}

}  // namespace detail

/// S(subset): entropy of the marginal on `subset`.
template <typename Real>
Real joint_entropy(const DensityOperator<Real>& rho, const LabelSet& subset) {
  detail::require_nonempty(subset, "joint_entropy");
  if (subset.size() == rho.space().size()) {
    // Validates the labels; the full set needs no trace.
    (void)rho.space().positions_of(subset);
    return von_neumann_entropy(rho);
  }
  return von_neumann_entropy(partial_trace(rho, subset));
}

/// S(A:B) = S(A) + S(B) - S(AB).
template <typename Real>
Real mutual_entropy(const DensityOperator<Real>& rho, const LabelSet& a, const LabelSet& b) {
  detail::require_nonempty(a, "mutual_entropy");
  detail::require_nonempty(b, "mutual_entropy");
  detail::require_disjoint(a, b, "mutual_entropy");
  return joint_entropy(rho, a) + joint_entropy(rho, b) - joint_entropy(rho, detail::join({&a, &b}));
}

/// S(A|C) = S(AC) - S(C).
template <typename Real>
Real conditional_entropy(const DensityOperator<Real>& rho, const LabelSet& a, const LabelSet& c) {
  detail::require_nonempty(a, "conditional_entropy");
  detail::require_nonempty(c, "conditional_entropy");
  detail::require_disjoint(a, c, "conditional_entropy");
  return joint_entropy(rho, detail::join({&a, &c})) - joint_entropy(rho, c);
}

/// S(A:B|C) = S(AC) + S(BC) - S(C) - S(ABC).
template <typename Real>
Real conditional_mutual(const DensityOperator<Real>& rho, const LabelSet& a, const LabelSet& b,
                        const LabelSet& c) {
  for (const auto* s : {&a, &b, &c}) detail::require_nonempty(*s, "conditional_mutual");
  detail::require_disjoint(a, b, "conditional_mutual");
  detail::require_disjoint(a, c, "conditional_mutual");
  detail::require_disjoint(b, c, "conditional_mutual");
  return joint_entropy(rho, detail::join({&a, &c})) + joint_entropy(rho, detail::join({&b, &c})) -
         joint_entropy(rho, c) - joint_entropy(rho, detail::join({&a, &b, &c}));
}

/// S(A:B:C) by inclusion-exclusion over the three sets.
template <typename Real>
Real ternary_mutual(const DensityOperator<Real>& rho, const LabelSet& a, const LabelSet& b,
                    const LabelSet& c) {
  for (const auto* s : {&a, &b, &c}) detail::require_nonempty(*s, "ternary_mutual");
  detail::require_disjoint(a, b, "ternary_mutual");
  detail::require_disjoint(a, c, "ternary_mutual");
  detail::require_disjoint(b, c, "ternary_mutual");
  return joint_entropy(rho, a) + joint_entropy(rho, b) + joint_entropy(rho, c) -
         joint_entropy(rho, detail::join({&a, &b})) - joint_entropy(rho, detail::join({&a, &c})) -
         joint_entropy(rho, detail::join({&b, &c})) + joint_entropy(rho, detail::join({&a, &b, &c}));
}

/// The seven regions of a three-circle entropy diagram over (A, B, C).
template <typename Real = double>
struct VennDiagram3 {
  std::array<std::string, 3> labels;
  Real c_a = 0;     // S(A|BC)
  Real c_b = 0;     // S(B|AC)
  Real c_c = 0;     // S(C|AB)
  Real m_ab = 0;    // S(A:B|C)
  Real m_ac = 0;    // S(A:C|B)
  Real m_bc = 0;    // S(B:C|A)
  Real center = 0;  // S(A:B:C)

  Real circle_a() const { return c_a + m_ab + m_ac + center; }
  Real circle_b() const { return c_b + m_ab + m_bc + center; }
  Real circle_c() const { return c_c + m_ac + m_bc + center; }
  Real total() const { return c_a + c_b + c_c + m_ab + m_ac + m_bc + center; }

  std::array<Real, 7> entries() const { return {c_a, c_b, c_c, m_ab, m_ac, m_bc, center}; }
};

/// Marginal entropies that determine a three-party diagram.
template <typename Real = double>
struct TripartiteEntropies {
  Real a, b, c, ab, ac, bc, abc;
};

template <typename Real>
VennDiagram3<Real> venn_from_entropies(const TripartiteEntropies<Real>& s,
                                       std::array<std::string, 3> labels) {
  VennDiagram3<Real> v;
  v.labels = std::move(labels);
  v.c_a = s.abc - s.bc;
  v.c_b = s.abc - s.ac;
  v.c_c = s.abc - s.ab;
  v.m_ab = s.ac + s.bc - s.c - s.abc;
  v.m_ac = s.ab + s.bc - s.b - s.abc;
  v.m_bc = s.ab + s.ac - s.a - s.abc;
  v.center = s.a + s.b + s.c - s.ab - s.ac - s.bc + s.abc;
  return v;
}

/// Diagram for three disjoint label sets. If they do not cover the space the
/// remainder is traced out first.
template <typename Real>
VennDiagram3<Real> venn3(const DensityOperator<Real>& rho, const LabelSet& a, const LabelSet& b,
                         const LabelSet& c) {
  for (const auto* s : {&a, &b, &c}) detail::require_nonempty(*s, "venn3");
  detail::require_disjoint(a, b, "venn3");
  detail::require_disjoint(a, c, "venn3");
  detail::require_disjoint(b, c, "venn3");
  const LabelSet all = detail::join({&a, &b, &c});
  const DensityOperator<Real> joint =
      all.size() == rho.space().size() ? rho : partial_trace(rho, all);

  TripartiteEntropies<Real> s{};
  s.a = joint_entropy(joint, a);
  s.b = joint_entropy(joint, b);
  s.c = joint_entropy(joint, c);
  s.ab = joint_entropy(joint, detail::join({&a, &b}));
  s.ac = joint_entropy(joint, detail::join({&a, &c}));
  s.bc = joint_entropy(joint, detail::join({&b, &c}));
  s.abc = von_neumann_entropy(joint);
  return venn_from_entropies(s, {detail::display(a), detail::display(b), detail::display(c)});
}

/// Flat `key = value` text: the three labels, then the seven regions keyed
/// by their information-theoretic names (e.g. `S(Q|P,D_B)`).
template <typename Real>
std::string to_text(const VennDiagram3<Real>& v) {
  const auto& [a, b, c] = v.labels;
  const auto num = [](Real x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
    return std::string(buf);
  };
  std::ostringstream os;
  os << "A = " << a << "\n"
     << "B = " << b << "\n"
     << "C = " << c << "\n"
     << "S(" << a << "|" << b << "," << c << ") = " << num(v.c_a) << "\n"
     << "S(" << b << "|" << a << "," << c << ") = " << num(v.c_b) << "\n"
     << "S(" << c << "|" << a << "," << b << ") = " << num(v.c_c) << "\n"
     << "S(" << a << ":" << b << "|" << c << ") = " << num(v.m_ab) << "\n"
     << "S(" << a << ":" << c << "|" << b << ") = " << num(v.m_ac) << "\n"
     << "S(" << b << ":" << c << "|" << a << ") = " << num(v.m_bc) << "\n"
     << "S(" << a << ":" << b << ":" << c << ") = " << num(v.center) << "\n";
  return os.str();
}

/// Inverse of to_text.
inline VennDiagram3<double> venn_from_text(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  const auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("venn text: missing key '" + key + "'");
    return it->second;
  };
  VennDiagram3<double> v;
  v.labels = {get("A"), get("B"), get("C")};
  const auto& [a, b, c] = v.labels;
  v.c_a = std::stod(get("S(" + a + "|" + b + "," + c + ")"));
  v.c_b = std::stod(get("S(" + b + "|" + a + "," + c + ")"));
  v.c_c = std::stod(get("S(" + c + "|" + a + "," + b + ")"));
  v.m_ab = std::stod(get("S(" + a + ":" + b + "|" + c + ")"));
  v.m_ac = std::stod(get("S(" + a + ":" + c + "|" + b + ")"));
  v.m_bc = std::stod(get("S(" + b + ":" + c + "|" + a + ")"));
  v.center = std::stod(get("S(" + a + ":" + b + ":" + c + ")"));
  return v;
}

}  // namespace qeraser
