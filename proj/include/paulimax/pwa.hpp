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
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "paulimax/rational.hpp"

namespace paulimax {

class NotConcaveError : public std::runtime_error {
 public:
  NotConcaveError() : std::runtime_error("function fails the exact concavity test") {}
};

struct PwaKnot {
  Rational p;
  Rational value;
  friend bool operator==(const PwaKnot&, const PwaKnot&) = default;
};

struct PwaMaximum {
  Rational p_star;
  Rational value;
  // Present when the maximum is attained on a flat segment; p_star is then
  // the left endpoint of that segment.
  std::optional<std::pair<Rational, Rational>> plateau;
};

// Piecewise-affine function on [0,1] held as an exact knot list. Interior
// collinear knots are removed on construction, so two functions are equal
// as functions exactly when their knot lists compare equal.
class PwaFunction {
 public:
  struct AbsTerm {
    Rational weight;  // must be >= 0
    Rational center;  // must lie in [0,1]
  };

  static PwaFunction from_knots(std::vector<PwaKnot> knots) {
    if (knots.size() < 2 || knots.front().p != Rational(0) ||
        knots.back().p != Rational(1)) {
      throw std::invalid_argument("knot list must span [0,1]");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i - 1].p < knots[i].p)) {
        throw std::invalid_argument("knots must be strictly increasing in p");
      }
    }
    return PwaFunction(std::move(knots));
  }

  static PwaFunction constant(Rational value) {
    return PwaFunction({{Rational(0), value}, {Rational(1), value}});
  }

  static PwaFunction affine(Rational slope, Rational intercept) {
    return PwaFunction({{Rational(0), intercept}, {Rational(1), slope + intercept}});
  }

  // p -> constant - 1/2 * sum_i weight_i * |p - center_i|.
  static PwaFunction from_abs_terms(const std::vector<AbsTerm>& terms,
                                    Rational constant) {
    std::vector<Rational> grid{Rational(0), Rational(1)};
    for (const AbsTerm& t : terms) {
      if (t.weight.sign() < 0) throw std::invalid_argument("negative weight");
      if (t.center.sign() < 0 || t.center > Rational(1)) {
        throw std::invalid_argument("center outside [0,1]");
      }
      if (t.weight.sign() > 0) grid.push_back(t.center);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const Rational half(1, 2);
    std::vector<PwaKnot> knots;
    knots.reserve(grid.size());
    for (const Rational& p : grid) {
      Rational acc(0);
      for (const AbsTerm& t : terms) acc += t.weight * abs(p - t.center);
      knots.push_back({p, constant - half * acc});
    }
    return PwaFunction(std::move(knots));
  }

  const std::vector<PwaKnot>& knots() const { return knots_; }

  Rational operator()(Rational p) const {
    const std::size_t i = segment_index(p);
    if (p == knots_[i].p) return knots_[i].value;
    const PwaKnot& a = knots_[i];
    const PwaKnot& b = knots_[i + 1];
    return a.value + (b.value - a.value) * (p - a.p) / (b.p - a.p);
  }

  // One-sided slopes; well defined away from the respective endpoint.
  Rational slope_right(Rational p) const {
    if (p >= Rational(1)) throw std::domain_error("no right slope at p = 1");
    const std::size_t i = segment_index(p);
    return segment_slope(i);
  }
  Rational slope_left(Rational p) const {
    if (p <= Rational(0)) throw std::domain_error("no left slope at p = 0");
    std::size_t i = segment_index(p);
    if (p == knots_[i].p) --i;  // p sits on a knot: step to the segment before
    return segment_slope(i);
  }

  // Exact chord test: consecutive segment slopes are non-increasing.
  bool is_concave() const {
    for (std::size_t i = 0; i + 2 < knots_.size(); ++i) {
      const Rational left = (knots_[i + 1].value - knots_[i].value) *
                            (knots_[i + 2].p - knots_[i + 1].p);
      const Rational right = (knots_[i + 2].value - knots_[i + 1].value) *
                             (knots_[i + 1].p - knots_[i].p);
      if (left < right) return false;
    }
    return true;
  }

  PwaMaximum max_point() const {
    if (!is_concave()) throw NotConcaveError();
    Rational best = knots_.front().value;
    for (const PwaKnot& k : knots_) best = max(best, k.value);
    std::size_t first = knots_.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (knots_[i].value == best) {
        first = std::min(first, i);
        last = std::max(last, i);
      }
    }
    PwaMaximum out{knots_[first].p, best, std::nullopt};
    if (last > first) out.plateau = std::make_pair(knots_[first].p, knots_[last].p);
    return out;
  }

  friend bool operator==(const PwaFunction&, const PwaFunction&) = default;

  friend PwaFunction pwa_min(const PwaFunction& f, const PwaFunction& g) {
    std::vector<Rational> grid;
    for (const PwaKnot& k : f.knots_) grid.push_back(k.p);
    for (const PwaKnot& k : g.knots_) grid.push_back(k.p);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<PwaKnot> knots;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Rational p = grid[i];
      knots.push_back({p, min(f(p), g(p))});
      if (i + 1 == grid.size()) break;
      // Insert the exact crossing when f - g changes strict sign inside the
      // cell; both functions are affine there.
      const Rational q = grid[i + 1];
      const Rational da = f(p) - g(p);
      const Rational db = f(q) - g(q);
      if (da.sign() * db.sign() < 0) {
        const Rational x = p + (q - p) * da / (da - db);
        knots.push_back({x, f(x)});
      }
    }
    return PwaFunction(std::move(knots));
  }

  friend PwaFunction pwa_min(std::span<const PwaFunction> fs) {
    if (fs.empty()) throw std::invalid_argument("pwa_min of empty set");
    PwaFunction out = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) out = pwa_min(out, fs[i]);
    return out;
  }

 private:
  explicit PwaFunction(std::vector<PwaKnot> knots) : knots_(std::move(knots)) {
    normalize();
  }

  // Index i such that p lies in [knots_[i].p, knots_[i+1].p); the last
  // segment is closed on the right.
  std::size_t segment_index(Rational p) const {
    if (p < Rational(0) || p > Rational(1)) {
      throw std::domain_error("evaluation outside [0,1]");
    }
    std::size_t lo = 0;
    std::size_t hi = knots_.size() - 2;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (knots_[mid].p <= p) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    return lo;
  }

  Rational segment_slope(std::size_t i) const {
    return (knots_[i + 1].value - knots_[i].value) / (knots_[i + 1].p - knots_[i].p);
  }

  void normalize() {
    std::vector<PwaKnot> out;
    out.reserve(knots_.size());
    for (const PwaKnot& k : knots_) {
      while (out.size() >= 2) {
        const PwaKnot& a = out[out.size() - 2];
        const PwaKnot& b = out.back();
        const Rational lhs = (b.value - a.value) * (k.p - b.p);
        const Rational rhs = (k.value - b.value) * (b.p - a.p);
        if (lhs == rhs) {
          out.pop_back();
        } else {
          break;
        }
      }
      out.push_back(k);
    }
    knots_ = std::move(out);
  }

  std::vector<PwaKnot> knots_;
};

}  // namespace paulimax
