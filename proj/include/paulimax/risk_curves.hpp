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
#include <stdexcept>
#include <vector>

#include "paulimax/pauli_channel.hpp"
#include "paulimax/pwa.hpp"
#include "paulimax/rational.hpp"

namespace paulimax {

// Pure qubit state 1/2 (I + n . sigma) on the Bloch sphere, kept together
// with the spherical angles that generated it:
// n = (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).
struct BlochVector {
  double nx = 0.0;
  double ny = 0.0;
  double nz = 1.0;
  double theta = 0.0;
  double phi = 0.0;

  static BlochVector from_angles(double theta, double phi) {
    BlochVector v;
    v.theta = theta;
    v.phi = phi;
    v.nx = std::sin(theta) * std::cos(phi);
    v.ny = std::sin(theta) * std::sin(phi);
    v.nz = std::cos(theta);
    return v;
  }

  static BlochVector from_components(double nx, double ny, double nz) {
    const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (std::abs(norm - 1.0) > 1e-12) {
      throw std::invalid_argument("Bloch vector must have unit norm");
    }
    BlochVector v;
    v.nx = nx;
    v.ny = ny;
    v.nz = nz;
    v.theta = std::acos(std::clamp(nz, -1.0, 1.0));
    v.phi = (nx == 0.0 && ny == 0.0) ? 0.0 : std::atan2(ny, nx);
    return v;
  }

  static BlochVector plus_x() { return from_angles(std::numbers::pi / 2, 0.0); }
  static BlochVector minus_x() { return from_angles(std::numbers::pi / 2, std::numbers::pi); }
  static BlochVector plus_y() { return from_angles(std::numbers::pi / 2, std::numbers::pi / 2); }
  static BlochVector minus_y() { return from_angles(std::numbers::pi / 2, -std::numbers::pi / 2); }
  static BlochVector plus_z() { return from_angles(0.0, 0.0); }
  static BlochVector minus_z() { return from_angles(std::numbers::pi, 0.0); }
};

struct AffineForm {
  Rational slope;
  Rational intercept;

  Rational at(Rational p) const { return slope * p + intercept; }
  double at(double p) const { return slope.to_double() * p + intercept.to_double(); }

  friend AffineForm operator+(const AffineForm& a, const AffineForm& b) {
    return {a.slope + b.slope, a.intercept + b.intercept};
  }
  friend AffineForm operator-(const AffineForm& a, const AffineForm& b) {
    return {a.slope - b.slope, a.intercept - b.intercept};
  }
};

// The combinations a = r0+r3, b = r1+r2, c = r0-r3, d = r1-r2 as exact
// affine functions of the prior (original Pauli index order).
struct AbcdCoefficients {
  AffineForm a, b, c, d;

  static AbcdCoefficients from_pair(const ChannelPair& pair) {
    const auto form = [&](int alpha) -> AffineForm {
      return {pair.slopes()[static_cast<std::size_t>(alpha)],
              -pair.channel2().q(alpha)};
    };
    AbcdCoefficients out;
    out.a = form(0) + form(3);
    out.b = form(1) + form(2);
    out.c = form(0) - form(3);
    out.d = form(1) - form(2);
    return out;
  }
};

enum class Axis { X, Y, Z };

inline const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

// Risk with a maximally entangled input:
// p -> 1/2 (1 - sum_alpha t_alpha |p - p_alpha|).
inline PwaFunction bayes_risk_entangled(const ChannelPair& pair) {
  std::vector<PwaFunction::AbsTerm> terms;
  for (const BreakpointEntry& e : pair.breakpoints()) {
    terms.push_back({e.slope, *e.breakpoint});
  }
  return PwaFunction::from_abs_terms(terms, Rational(1, 2));
}

namespace detail {

// Index pairs, ORIGINAL order, for |r_i + r_j| + |r_k + r_l|:
// z-eigenstates pair (0,3),(1,2); x pairs (0,1),(2,3); y pairs (0,2),(1,3).
inline std::array<std::array<int, 2>, 2> axis_pairing(Axis axis) {
  switch (axis) {
    case Axis::Z: return {{{0, 3}, {1, 2}}};
    case Axis::X: return {{{0, 1}, {2, 3}}};
    case Axis::Y: return {{{0, 2}, {1, 3}}};
  }
  throw std::logic_error("bad axis");
}

}  // namespace detail

// Risk when the input is a +/- eigenstate of the given Pauli matrix. Each
// |r_i + r_j| is an increasing affine function whose zero lies in [0,1], so
// the curve drops into the same abs-term representation.
inline PwaFunction bayes_risk_eigenstate(const ChannelPair& pair, Axis axis) {
  std::vector<PwaFunction::AbsTerm> terms;
  for (const auto& idx : detail::axis_pairing(axis)) {
    const Rational w = pair.slopes()[static_cast<std::size_t>(idx[0])] +
                       pair.slopes()[static_cast<std::size_t>(idx[1])];
    if (w.is_zero()) continue;  // both columns vanish; the term is identically 0
    const Rational zero =
        (pair.channel2().q(idx[0]) + pair.channel2().q(idx[1])) / w;
    terms.push_back({w, zero});
  }
  return PwaFunction::from_abs_terms(terms, Rational(1, 2));
}

// Best no-ancilla risk: the eigenstate inputs exhaust the optimum, so this
// is the pointwise minimum of the three eigenstate curves.
inline PwaFunction bayes_risk_no_ancilla(const ChannelPair& pair) {
  const std::array<PwaFunction, 3> curves = {
      bayes_risk_eigenstate(pair, Axis::X),
      bayes_risk_eigenstate(pair, Axis::Y),
      bayes_risk_eigenstate(pair, Axis::Z),
  };
  return pwa_min(std::span<const PwaFunction>(curves));
}

// Risk for an arbitrary pure input state (float-valued; the general state
// involves a square root, so this one is not piecewise affine).
inline double bayes_risk_bloch(const ChannelPair& pair, double p,
                               const BlochVector& state) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("prior outside [0,1]");
  const AbcdCoefficients f = AbcdCoefficients::from_pair(pair);
  const double a = f.a.at(p);
  const double b = f.b.at(p);
  const double c = f.c.at(p);
  const double d = f.d.at(p);
  const double ct = std::cos(state.theta);
  const double st = std::sin(state.theta);
  const double radicand = ct * ct * (a - b) * (a - b) +
                          st * st * (c * c + d * d + 2.0 * c * d * std::cos(2.0 * state.phi));
  const double envelope = std::max(std::abs(a + b), std::sqrt(std::max(0.0, radicand)));
  return 0.5 * (1.0 - envelope);
}

// True iff the product of the r_alpha is strictly negative, i.e. ancilla-free
// inputs cannot reach the entangled optimum at this prior.
inline bool bayes_entanglement_needed(const ChannelPair& pair, Rational p) {
  const std::array<Rational, 4> r = pair.r_vector(p);
  int sign = 1;
  for (const Rational& v : r) {
    if (v.is_zero()) return false;
    sign *= v.sign();
  }
  return sign < 0;
}

}  // namespace paulimax
