// Copyright 2026 The paulimax authors
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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paulimax/pauli_channel.hpp"
#include "paulimax/pwa.hpp"
#include "paulimax/rational.hpp"
#include "paulimax/risk_curves.hpp"

namespace paulimax {

class InternalInconsistencyError : public std::runtime_error {
 public:
  explicit InternalInconsistencyError(const std::string& what)
      : std::runtime_error(what) {}
};

class AmbiguousPlateauError : public std::runtime_error {
 public:
  explicit AmbiguousPlateauError(const std::string& what)
      : std::runtime_error(what) {}
};

// Structural configuration of the worst-case prior among the sorted
// breakpoints. The Mirror_* variants mean the pattern was found after
// exchanging the two channels (which maps p to 1-p and reverses the sorted
// order). EntanglementRequired is the fall-through when no pattern applies.
enum class CaseTag {
  Identical,
  P0StrictlyFirst,
  TripleLeft,
  MiddleEqualSlopes,
  MiddleDouble,
  MirrorP0StrictlyFirst,
  MirrorTripleLeft,
  MirrorMiddleEqualSlopes,
  MirrorMiddleDouble,
  EntanglementRequired,
};

inline const char* case_tag_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::Identical: return "Identical";
    case CaseTag::P0StrictlyFirst: return "T5_p0_strictly_first";
    case CaseTag::TripleLeft: return "T5_triple_left";
    case CaseTag::MiddleEqualSlopes: return "T5_middle_equal_slopes";
    case CaseTag::MiddleDouble: return "T5_middle_double";
    case CaseTag::MirrorP0StrictlyFirst: return "Mirror_T5_p0_strictly_first";
    case CaseTag::MirrorTripleLeft: return "Mirror_T5_triple_left";
    case CaseTag::MirrorMiddleEqualSlopes: return "Mirror_T5_middle_equal_slopes";
    case CaseTag::MirrorMiddleDouble: return "Mirror_T5_middle_double";
    case CaseTag::EntanglementRequired: return "EntanglementRequired";
  }
  return "?";
}

struct CaseLabel {
  CaseTag tag;
  bool condition_holds;
};

inline bool entanglement_needed(const CaseLabel& label) {
  return label.tag == CaseTag::EntanglementRequired || !label.condition_holds;
}

struct MinimaxPoint {
  Rational risk;
  Rational p_star;
  std::optional<std::pair<Rational, Rational>> plateau;
};

inline MinimaxPoint minimax_entangled(const ChannelPair& pair) {
  const PwaMaximum mx = bayes_risk_entangled(pair).max_point();
  return {mx.value, mx.p_star, mx.plateau};
}

inline MinimaxPoint minimax_no_ancilla(const ChannelPair& pair) {
  const PwaMaximum mx = bayes_risk_no_ancilla(pair).max_point();
  return {mx.value, mx.p_star, mx.plateau};
}

namespace detail {

// Slope-condition evaluation against the sorted breakpoint configuration.
// A degenerate entry (t = 0) contributes nothing to any risk curve, so it is
// placed AT the worst-case prior: with zero slope that assignment is the one
// consistent with its r being zero there, and the slope conditions below
// remain valid with the extra zero weight.
inline std::optional<CaseLabel> detect_case(const ChannelPair& pair) {
  const PwaMaximum mx = bayes_risk_entangled(pair).max_point();
  const Rational p_star = mx.p_star;

  struct Entry {
    Rational p;
    Rational t;
  };
  std::vector<Entry> s;
  s.reserve(4);
  for (const BreakpointEntry& e : pair.entries()) {
    s.push_back({e.degenerate() ? p_star : *e.breakpoint, e.slope});
  }
  std::stable_sort(s.begin(), s.end(),
                   [](const Entry& a, const Entry& b) { return a.p < b.p; });

  bool at_breakpoint = false;
  for (const Entry& e : s) at_breakpoint = at_breakpoint || e.p == p_star;
  if (!at_breakpoint) {
    throw AmbiguousPlateauError("worst-case prior " + p_star.to_string() +
                                " is not anchored at a breakpoint");
  }

  const Rational& q0 = s[0].p;
  const Rational& q1 = s[1].p;
  const Rational& q2 = s[2].p;
  const Rational& q3 = s[3].p;
  const Rational& t0 = s[0].t;
  const Rational& t1 = s[1].t;
  const Rational& t2 = s[2].t;
  const Rational& t3 = s[3].t;

  if (p_star == q0 && q0 == q1 && q1 == q2 && q2 < q3) {
    const bool cond = t3 + Rational(2) * min(min(t0, t1), t2) <= t0 + t1 + t2;
    return CaseLabel{CaseTag::TripleLeft, cond};
  }
  if (p_star == q0 && q0 == q1 && q1 < q2) {
    return CaseLabel{CaseTag::P0StrictlyFirst, true};
  }
  if (q0 < p_star && p_star == q1 && q1 == q2 && q2 < q3) {
    const bool cond = abs(t0 - t3) <= abs(t1 - t2);
    return CaseLabel{CaseTag::MiddleDouble, cond};
  }
  if (q0 < p_star && p_star == q1 && q1 < q2) {
    const bool cond = t0 + t1 == t2 + t3;
    return CaseLabel{CaseTag::MiddleEqualSlopes, cond};
  }
  return std::nullopt;
}

inline CaseTag mirror_tag(CaseTag tag) {
  switch (tag) {
    case CaseTag::P0StrictlyFirst: return CaseTag::MirrorP0StrictlyFirst;
    case CaseTag::TripleLeft: return CaseTag::MirrorTripleLeft;
    case CaseTag::MiddleEqualSlopes: return CaseTag::MirrorMiddleEqualSlopes;
    case CaseTag::MiddleDouble: return CaseTag::MirrorMiddleDouble;
    default: throw std::logic_error("tag has no mirror");
  }
}

}  // namespace detail

// Decides entanglement necessity from the breakpoint configuration and the
// exact slope conditions alone (no curve maximization of the no-ancilla
// risk). full_report() cross-checks this verdict against the exact risk
// comparison, so the two routes police each other.
inline CaseLabel classify(const ChannelPair& pair) {
  if (pair.identical()) return {CaseTag::Identical, true};
  if (const auto direct = detail::detect_case(pair)) return *direct;
  if (const auto mirrored = detail::detect_case(pair.swapped())) {
    return {detail::mirror_tag(mirrored->tag), mirrored->condition_holds};
  }
  return {CaseTag::EntanglementRequired, false};
}

struct OptimalInputs {
  std::vector<BlochVector> states;
  // False when more than two eigenstate curves meet at the worst prior with
  // mixed slopes: the listed states are then verified candidates, without a
  // claim that the set is complete.
  bool uniqueness_verified = true;
  std::optional<std::pair<Axis, Axis>> crossing;
  std::optional<Rational> tangent_squared;
};

namespace detail {

inline bool local_max_at(const PwaFunction& f, Rational p) {
  if (p > Rational(0) && f.slope_left(p).sign() < 0) return false;
  if (p < Rational(1) && f.slope_right(p).sign() > 0) return false;
  return true;
}

struct CrossingSolution {
  Rational tangent_squared;
  std::array<BlochVector, 4> states;
};

// Mixing construction at a transversal two-curve crossing. Solves for the
// angle that makes the composite risk stationary in the prior:
//   {x,y}: theta = pi/2,   tan^2 phi   = -d|c+d|/dp / d|c-d|/dp
//   {z,x}: phi in {0,pi},  tan^2 theta = -d|a-b|/dp / d|c+d|/dp
//   {z,y}: phi = +-pi/2,   tan^2 theta = -d|a-b|/dp / d|c-d|/dp
// All derivatives are exact rational slopes with signs taken at the crossing.
inline std::optional<CrossingSolution> solve_crossing(const ChannelPair& pair,
                                                      Axis first, Axis second,
                                                      Rational p_star) {
  const AbcdCoefficients f = AbcdCoefficients::from_pair(pair);
  const AffineForm trivial = f.a + f.b;  // slope 2, intercept -1

  AffineForm num_form{};
  AffineForm den_form{};
  const bool xy = (first == Axis::X && second == Axis::Y);
  const bool zx = (first == Axis::Z && second == Axis::X);
  const bool zy = (first == Axis::Z && second == Axis::Y);
  if (xy) {
    num_form = f.c + f.d;
    den_form = f.c - f.d;
  } else if (zx) {
    num_form = f.a - f.b;
    den_form = f.c + f.d;
  } else if (zy) {
    num_form = f.a - f.b;
    den_form = f.c - f.d;
  } else {
    throw std::logic_error("unordered axis pair");
  }

  const Rational vn = num_form.at(p_star);
  const Rational vd = den_form.at(p_star);
  // At a genuine crossing both square-root envelopes agree and dominate the
  // trivial-guess term; anything else means the crossing is not transversal.
  if (abs(vn) != abs(vd)) return std::nullopt;
  if (abs(vn) < abs(trivial.at(p_star)) || vn.is_zero()) return std::nullopt;

  const Rational dnum = Rational(vn.sign()) * num_form.slope;
  const Rational dden = Rational(vd.sign()) * den_form.slope;
  if (dden.is_zero() || dnum.is_zero()) return std::nullopt;
  const Rational tan_sq = -(dnum / dden);
  if (tan_sq.sign() < 0) return std::nullopt;

  const double angle = std::atan(std::sqrt(tan_sq.to_double()));
  const double pi = std::numbers::pi;
  CrossingSolution out{tan_sq, {}};
  if (xy) {
    out.states = {BlochVector::from_angles(pi / 2, angle),
                  BlochVector::from_angles(pi / 2, -angle),
                  BlochVector::from_angles(pi / 2, pi - angle),
                  BlochVector::from_angles(pi / 2, pi + angle)};
  } else if (zx) {
    out.states = {BlochVector::from_angles(angle, 0.0),
                  BlochVector::from_angles(angle, pi),
                  BlochVector::from_angles(pi - angle, 0.0),
                  BlochVector::from_angles(pi - angle, pi)};
  } else {
    out.states = {BlochVector::from_angles(angle, pi / 2),
                  BlochVector::from_angles(angle, -pi / 2),
                  BlochVector::from_angles(pi - angle, pi / 2),
                  BlochVector::from_angles(pi - angle, -pi / 2)};
  }
  return out;
}

// Numeric post-check: the state's risk curve peaks at the worst prior with
// the right value, scanning a grid refined by the exact breakpoints.
inline bool state_achieves_minimax(const ChannelPair& pair, const BlochVector& state,
                                   Rational p_star, Rational target,
                                   double tol = 1e-9) {
  const double want = target.to_double();
  const double at_star = bayes_risk_bloch(pair, p_star.to_double(), state);
  if (std::abs(at_star - want) > tol) return false;
  double peak = at_star;
  constexpr int kSteps = 2048;
  for (int i = 0; i <= kSteps; ++i) {
    peak = std::max(peak, bayes_risk_bloch(pair, static_cast<double>(i) / kSteps, state));
  }
  for (const BreakpointEntry& e : pair.breakpoints()) {
    peak = std::max(peak, bayes_risk_bloch(pair, e.breakpoint->to_double(), state));
  }
  return peak <= want + tol;
}

}  // namespace detail

// Optimal input states for the ancilla-free minimax strategy. Either the
// worst prior is a maximum of a single eigenstate curve (the two eigenstates
// of that Pauli matrix are optimal), or exactly two curves cross there with
// opposite slopes and the four mixed states from solve_crossing are optimal.
inline OptimalInputs optimal_input_no_ancilla(const ChannelPair& pair) {
  const PwaMaximum mx = bayes_risk_no_ancilla(pair).max_point();
  const Rational p_star = mx.p_star;
  const Rational value = mx.value;

  struct AxisCurve {
    Axis axis;
    PwaFunction curve;
  };
  const std::array<AxisCurve, 3> curves = {
      AxisCurve{Axis::Z, bayes_risk_eigenstate(pair, Axis::Z)},
      AxisCurve{Axis::X, bayes_risk_eigenstate(pair, Axis::X)},
      AxisCurve{Axis::Y, bayes_risk_eigenstate(pair, Axis::Y)},
  };

  std::vector<Axis> attaining;
  for (const AxisCurve& ac : curves) {
    if (ac.curve(p_star) == value) attaining.push_back(ac.axis);
  }
  if (attaining.empty()) {
    throw InternalInconsistencyError("no eigenstate curve attains the minimax risk");
  }

  const auto eigenstates = [](Axis axis) -> std::vector<BlochVector> {
    switch (axis) {
      case Axis::X: return {BlochVector::plus_x(), BlochVector::minus_x()};
      case Axis::Y: return {BlochVector::plus_y(), BlochVector::minus_y()};
      case Axis::Z: return {BlochVector::plus_z(), BlochVector::minus_z()};
    }
    throw std::logic_error("bad axis");
  };

  // An attaining curve with a local maximum at the worst prior already
  // realizes the minimax risk; its eigenstates are optimal inputs.
  for (const AxisCurve& ac : curves) {
    const bool attains = std::find(attaining.begin(), attaining.end(), ac.axis) !=
                         attaining.end();
    if (attains && detail::local_max_at(ac.curve, p_star)) {
      OptimalInputs out;
      out.states = eigenstates(ac.axis);
      out.uniqueness_verified = true;
      return out;
    }
  }

  const auto ordered_pair = [](Axis a, Axis b) -> std::pair<Axis, Axis> {
    // Canonical order: {x,y}, {z,x}, {z,y}.
    if (a == Axis::Z || b == Axis::Z) {
      return {Axis::Z, a == Axis::Z ? b : a};
    }
    return {Axis::X, Axis::Y};
  };

  if (attaining.size() == 2) {
    const auto [first, second] = ordered_pair(attaining[0], attaining[1]);
    const auto sol = detail::solve_crossing(pair, first, second, p_star);
    if (!sol) {
      throw InternalInconsistencyError(
          "two-curve crossing at the worst prior admits no stationary mixture");
    }
    OptimalInputs out;
    for (const BlochVector& s : sol->states) {
      if (!detail::state_achieves_minimax(pair, s, p_star, value)) {
        throw InternalInconsistencyError(
            "constructed crossing state fails the minimax check");
      }
      out.states.push_back(s);
    }
    out.uniqueness_verified = true;
    out.crossing = std::make_pair(first, second);
    out.tangent_squared = sol->tangent_squared;
    return out;
  }

  // Three curves meet with mixed slopes: enumerate candidates from every
  // pair and keep the numerically verified ones, without a uniqueness claim.
  OptimalInputs out;
  out.uniqueness_verified = false;
  const std::array<std::pair<Axis, Axis>, 3> pairs = {
      std::make_pair(Axis::X, Axis::Y),
      std::make_pair(Axis::Z, Axis::X),
      std::make_pair(Axis::Z, Axis::Y),
  };
  for (const auto& [first, second] : pairs) {
    const auto sol = detail::solve_crossing(pair, first, second, p_star);
    if (!sol) continue;
    for (const BlochVector& s : sol->states) {
      if (detail::state_achieves_minimax(pair, s, p_star, value)) {
        out.states.push_back(s);
      }
    }
    if (!out.crossing) {
      out.crossing = std::make_pair(first, second);
      out.tangent_squared = sol->tangent_squared;
    }
  }
  if (out.states.empty()) {
    throw InternalInconsistencyError(
        "three-way crossing produced no verifiable optimal state");
  }
  return out;
}

struct DiscriminationReport {
  MinimaxPoint entangled;   // achievable with any maximally entangled input
  MinimaxPoint no_ancilla;
  CaseLabel label;
  bool entanglement_strictly_helps = false;
  OptimalInputs optimal_inputs_no_ancilla;
};

// Aggregates the whole analysis and enforces the dual-route invariant: the
// case-list verdict must agree with the exact rational risk comparison.
inline DiscriminationReport full_report(const ChannelPair& pair) {
  DiscriminationReport report;
  report.entangled = minimax_entangled(pair);
  report.no_ancilla = minimax_no_ancilla(pair);
  if (report.no_ancilla.risk < report.entangled.risk) {
    throw InternalInconsistencyError("no-ancilla risk fell below the entangled risk");
  }
  report.entanglement_strictly_helps = report.entangled.risk < report.no_ancilla.risk;
  report.label = classify(pair);
  if (entanglement_needed(report.label) != report.entanglement_strictly_helps) {
    throw InternalInconsistencyError(
        std::string("case-list verdict disagrees with the exact risk comparison: "
                    "tag=") +
        case_tag_name(report.label.tag) +
        " condition_holds=" + (report.label.condition_holds ? "true" : "false") +
        " R_M=" + report.entangled.risk.to_string() +
        " R'_M=" + report.no_ancilla.risk.to_string());
  }
  report.optimal_inputs_no_ancilla = optimal_input_no_ancilla(pair);
  return report;
}

}  // namespace paulimax
