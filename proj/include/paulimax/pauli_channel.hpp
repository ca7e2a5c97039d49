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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paulimax/rational.hpp"

namespace paulimax {

class InvalidDistributionError : public std::runtime_error {
 public:
  explicit InvalidDistributionError(const std::string& what)
      : std::runtime_error(what) {}
};

// Mixing weights (q_0, q_1, q_2, q_3) over (I, sigma_x, sigma_y, sigma_z).
class PauliChannel {
 public:
  explicit PauliChannel(std::array<Rational, 4> q, std::string_view name = "channel")
      : q_(q) {
    Rational sum(0);
    for (int alpha = 0; alpha < 4; ++alpha) {
      if (q_[alpha].sign() < 0) {
        throw InvalidDistributionError(std::string(name) + ": q[" +
                                       std::to_string(alpha) + "] = " +
                                       q_[alpha].to_string() + " is negative");
      }
      sum += q_[alpha];
    }
    if (sum != Rational(1)) {
      throw InvalidDistributionError(std::string(name) + ": entries sum to " +
                                     sum.to_string() + ", expected 1/1");
    }
  }

  static PauliChannel identity() {
    return PauliChannel({Rational(1), Rational(0), Rational(0), Rational(0)});
  }

  const std::array<Rational, 4>& q() const { return q_; }
  Rational q(int alpha) const { return q_.at(static_cast<std::size_t>(alpha)); }

  friend bool operator==(const PauliChannel&, const PauliChannel&) = default;

 private:
  std::array<Rational, 4> q_;
};

struct BreakpointEntry {
  int original_index;
  Rational slope;                      // t_alpha = q1_alpha + q2_alpha
  std::optional<Rational> breakpoint;  // q2_alpha / t_alpha; absent iff slope = 0

  bool degenerate() const { return !breakpoint.has_value(); }
};

// A channel pair plus the sorted breakpoint data the whole analysis runs on.
// r_alpha(p) = p * t_alpha - q2_alpha vanishes at the breakpoint; entries with
// t_alpha = 0 have r identically zero, carry no breakpoint, and are kept at
// the tail of the entry list.
class ChannelPair {
 public:
  ChannelPair(PauliChannel first, PauliChannel second)
      : ch1_(std::move(first)), ch2_(std::move(second)) {
    std::vector<BreakpointEntry> active;
    std::vector<BreakpointEntry> degenerate;
    for (int alpha = 0; alpha < 4; ++alpha) {
      const Rational t = ch1_.q(alpha) + ch2_.q(alpha);
      slopes_[static_cast<std::size_t>(alpha)] = t;
      if (t.is_zero()) {
        degenerate.push_back({alpha, t, std::nullopt});
      } else {
        active.push_back({alpha, t, ch2_.q(alpha) / t});
      }
    }
    std::sort(active.begin(), active.end(),
              [](const BreakpointEntry& a, const BreakpointEntry& b) {
                if (*a.breakpoint != *b.breakpoint) return *a.breakpoint < *b.breakpoint;
                return a.original_index < b.original_index;
              });
    entries_ = std::move(active);
    breakpoint_count_ = entries_.size();
    entries_.insert(entries_.end(), degenerate.begin(), degenerate.end());
  }

  const PauliChannel& channel1() const { return ch1_; }
  const PauliChannel& channel2() const { return ch2_; }

  const std::array<Rational, 4>& slopes() const { return slopes_; }

  // All four entries: non-degenerate ones first, ascending in breakpoint with
  // ties broken by original index, then the degenerate tail.
  const std::vector<BreakpointEntry>& entries() const { return entries_; }

  std::span<const BreakpointEntry> breakpoints() const {
    return {entries_.data(), breakpoint_count_};
  }

  // r in ORIGINAL index order.
  std::array<Rational, 4> r_vector(Rational p) const {
    if (p < Rational(0) || p > Rational(1)) {
      throw std::domain_error("prior outside [0,1]");
    }
    std::array<Rational, 4> r;
    for (std::size_t alpha = 0; alpha < 4; ++alpha) {
      r[alpha] = p * slopes_[alpha] - ch2_.q(static_cast<int>(alpha));
    }
    return r;
  }

  ChannelPair swapped() const { return ChannelPair(ch2_, ch1_); }

  bool identical() const { return ch1_ == ch2_; }

 private:
  PauliChannel ch1_;
  PauliChannel ch2_;
  std::array<Rational, 4> slopes_;
  std::vector<BreakpointEntry> entries_;
  std::size_t breakpoint_count_ = 0;
};

}  // namespace paulimax
