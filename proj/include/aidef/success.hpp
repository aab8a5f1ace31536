// Copyright 2026 The aidef Authors.
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

#ifndef AIDEF_SUCCESS_HPP_
#define AIDEF_SUCCESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "aidef/errors.hpp"
#include "aidef/json_io.hpp"
#include "aidef/signal.hpp"

namespace aidef {

/// Reward readings of a life, one vector per step. Coordinate 0 is the
/// highest priority.
struct RewardStream {
  std::vector<SignalSpec> specs;
  std::vector<Vector> values;

  std::size_t size() const { return values.size(); }
};

/// One priority coordinate of Success. Exact values have lo == hi.
struct SuccessCoord {
  double lo = 0.0;
  double hi = 0.0;

  static SuccessCoord exact(double v) { return {v, v}; }
  static SuccessCoord interval(double lo, double hi) { return {lo, hi}; }

  bool is_exact() const { return lo == hi; }
  double mid() const { return lo + (hi - lo) / 2; }
  double width() const { return hi - lo; }

  friend bool operator==(const SuccessCoord&, const SuccessCoord&) = default;
};

struct SuccessValue {
  std::vector<SuccessCoord> coords;

  std::size_t size() const { return coords.size(); }
  friend bool operator==(const SuccessValue&, const SuccessValue&) = default;
};

enum class Comparison { kLess, kEqual, kGreater, kIncomparable };

inline const char* comparison_name(Comparison c) {
  switch (c) {
    case Comparison::kLess: return "Less";
    case Comparison::kEqual: return "Equal";
    case Comparison::kGreater: return "Greater";
    case Comparison::kIncomparable: return "Incomparable";
  }
  return "?";
}

/// Per-priority mean of the concrete rewards in steps [0, upto_t). Nothing
/// readings are skipped; a coordinate with no concrete reading scores 0.
inline SuccessValue success_finite(const RewardStream& stream, std::size_t upto_t) {
  if (upto_t > stream.size())
    throw Error(Errc::kPrecondition, "upto_t " + std::to_string(upto_t) + " beyond stream length " +
                                         std::to_string(stream.size()));
  const std::size_t n = stream.specs.size();
  std::vector<double> sum(n, 0.0);
  std::vector<std::int64_t> count(n, 0);
  for (std::size_t t = 0; t < upto_t; ++t) {
    const auto& row = stream.values[t];
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i].is_concrete()) {
        sum[i] += row[i].numeric();
        ++count[i];
      }
    }
  }
  SuccessValue out;
  out.coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.coords.push_back(
        SuccessCoord::exact(count[i] == 0 ? 0.0 : sum[i] / static_cast<double>(count[i])));
  }
  return out;
}

/// Success of every prefix: element t is success_finite(stream, t + 1).
inline std::vector<SuccessValue> success_series(const RewardStream& stream) {
  const std::size_t n = stream.specs.size();
  std::vector<double> sum(n, 0.0);
  std::vector<std::int64_t> count(n, 0);
  std::vector<SuccessValue> series;
  series.reserve(stream.size());
  for (const auto& row : stream.values) {
    SuccessValue v;
    v.coords.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i].is_concrete()) {
        sum[i] += row[i].numeric();
        ++count[i];
      }
      v.coords.push_back(
          SuccessCoord::exact(count[i] == 0 ? 0.0 : sum[i] / static_cast<double>(count[i])));
    }
    series.push_back(std::move(v));
  }
  return series;
}

struct LimitOptions {
  double tail_fraction = 0.5;
  double epsilon = 1e-6;
};

/// Finite-horizon stand-in for the limit of the prefix Successes: min and max
/// over the last ceil(tail_fraction * n) prefixes, collapsed to their midpoint
/// when the band is no wider than epsilon.
inline SuccessValue success_limit_estimate(const std::vector<SuccessValue>& series,
                                           LimitOptions opts = {}) {
  if (series.empty()) throw Error(Errc::kPrecondition, "limit estimate of an empty series");
  if (!(opts.tail_fraction > 0.0 && opts.tail_fraction <= 1.0))
    throw Error(Errc::kPrecondition, "tail_fraction must lie in (0, 1]");
  if (!(opts.epsilon > 0.0)) throw Error(Errc::kPrecondition, "epsilon must be positive");

  const std::size_t n = series.size();
  auto window = static_cast<std::size_t>(std::ceil(opts.tail_fraction * static_cast<double>(n)));
  window = std::clamp<std::size_t>(window, 1, n);
  const std::size_t dims = series.front().size();

  SuccessValue out;
  for (std::size_t i = 0; i < dims; ++i) {
    double lo = series[n - window].coords[i].lo;
    double hi = series[n - window].coords[i].hi;
    for (std::size_t t = n - window; t < n; ++t) {
      if (series[t].size() != dims) throw Error(Errc::kPriorityMismatch, "ragged series");
      lo = std::min(lo, series[t].coords[i].lo);
      hi = std::max(hi, series[t].coords[i].hi);
    }
    out.coords.push_back(hi - lo <= opts.epsilon ? SuccessCoord::exact(lo + (hi - lo) / 2)
                                                 : SuccessCoord::interval(lo, hi));
  }
  return out;
}

/// Lexicographic comparison by priority. Identical coordinates fall through to
/// the next priority; strictly separated ones decide; any overlap is
/// Incomparable.
inline Comparison compare_success(const SuccessValue& a, const SuccessValue& b) {
  if (a.size() != b.size())
    throw Error(Errc::kPriorityMismatch, std::to_string(a.size()) + " vs " +
                                             std::to_string(b.size()) + " priorities");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.coords[i];
    const auto& y = b.coords[i];
    if (x == y) continue;
    if (x.hi < y.lo) return Comparison::kLess;
    if (y.hi < x.lo) return Comparison::kGreater;
    return Comparison::kIncomparable;
  }
  return Comparison::kEqual;
}

/// Folds a two-priority stream (high first, values in {Nothing, 0, 1}) into
/// one unbounded integer reward whose mean stays in [0, 1] until the first
/// positive high-priority reward and is at least 2 from then on.
///
/// A positive high reward is emitted as 2 * (number of concrete emitted
/// values so far, this one included). After the first of them every emitted
/// value is raised by 2. When both priorities are concrete in one step the
/// high reward wins if positive, otherwise the low value is emitted.
inline RewardStream emulate_two_priorities(const RewardStream& stream2) {
  if (stream2.specs.size() != 2)
    throw Error(Errc::kSchemaMismatch, "emulation needs exactly two reward signals");
  auto in_range = [](const SignalValue& v) {
    return v.is_nothing() || (v.is_int() && (v.as_int() == 0 || v.as_int() == 1));
  };

  RewardStream out;
  out.specs.push_back(SignalSpec::reward(stream2.specs[0].name + "+" + stream2.specs[1].name,
                                         ScalarKind::integer()));
  out.values.reserve(stream2.size());

  std::int64_t emitted = 0;
  bool raised = false;
  for (const auto& row : stream2.values) {
    if (row.size() != 2 || !in_range(row[0]) || !in_range(row[1]))
      throw Error(Errc::kSchemaMismatch, "reward row " + to_string(row) + " outside {Nothing,0,1}");
    const auto& high = row[0];
    const auto& low = row[1];
    if (high.is_nothing() && low.is_nothing()) {
      out.values.push_back({SignalValue::nothing()});
      continue;
    }
    ++emitted;
    std::int64_t v = 0;
    if (high.is_int() && high.as_int() == 1) {
      v = 2 * emitted;
    } else if (low.is_int()) {
      v = low.as_int();
    }
    if (raised) v += 2;
    if (high.is_int() && high.as_int() == 1) raised = true;
    out.values.push_back({SignalValue::of(v)});
  }
  return out;
}

inline Json success_to_json(const SuccessValue& v) {
  Json coords = Json::array();
  for (const auto& c : v.coords) {
    Json j;
    if (c.is_exact()) {
      j["exact"] = c.lo;
    } else {
      j["lo"] = c.lo;
      j["hi"] = c.hi;
    }
    coords.push_back(std::move(j));
  }
  Json out;
  out["coords"] = std::move(coords);
  return out;
}

inline SuccessValue success_from_json(const Json& j) {
  SuccessValue v;
  for (const auto& c : j.at("coords")) {
    if (c.contains("exact")) {
      v.coords.push_back(SuccessCoord::exact(c.at("exact").get<double>()));
    } else {
      v.coords.push_back(SuccessCoord::interval(c.at("lo").get<double>(), c.at("hi").get<double>()));
    }
  }
  return v;
}

inline std::string to_string(const SuccessValue& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    const auto& c = v.coords[i];
    s += c.is_exact() ? std::to_string(c.lo)
                      : "[" + std::to_string(c.lo) + ", " + std::to_string(c.hi) + "]";
  }
  return s + ")";
}

}  // namespace aidef

#endif  // AIDEF_SUCCESS_HPP_
