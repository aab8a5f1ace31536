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

#ifndef AIDEF_SIGNAL_HPP_
#define AIDEF_SIGNAL_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "aidef/errors.hpp"

namespace aidef {

// Real scalars are 64-bit machine doubles and integer scalars are 64-bit
// signed integers. Nothing else is modelled.

enum class KindTag : std::uint8_t { kBool, kFinite, kInt, kReal };

class ScalarKind {
 public:
  static constexpr ScalarKind boolean() { return ScalarKind(KindTag::kBool, 2); }
  static ScalarKind finite(std::int64_t cardinality) {
    if (cardinality < 1) {
      throw Error(Errc::kPrecondition, "finite kind needs cardinality >= 1, got " +
                                           std::to_string(cardinality));
    }
    return ScalarKind(KindTag::kFinite, cardinality);
  }
  static constexpr ScalarKind integer() { return ScalarKind(KindTag::kInt, 0); }
  static constexpr ScalarKind real() { return ScalarKind(KindTag::kReal, 0); }

  constexpr KindTag tag() const { return tag_; }
  /// Number of admissible values for bool/finite kinds, 0 for unbounded kinds.
  constexpr std::int64_t cardinality() const { return cardinality_; }
  constexpr bool is_enumerable() const {
    return tag_ == KindTag::kBool || tag_ == KindTag::kFinite;
  }

  friend constexpr bool operator==(const ScalarKind&, const ScalarKind&) = default;

 private:
  constexpr ScalarKind(KindTag tag, std::int64_t cardinality)
      : tag_(tag), cardinality_(cardinality) {}

  KindTag tag_;
  std::int64_t cardinality_;
};

/// A single signal reading: a concrete integer or real scalar, Undef, or Nothing.
///
/// Equality is exact; two reals are equal only if their bit patterns are.
class SignalValue {
 public:
  enum class Tag : std::uint8_t { kInt, kReal, kUndef, kNothing };

  constexpr SignalValue() = default;

  static constexpr SignalValue of(std::int64_t v) { return SignalValue(Tag::kInt, v, 0.0); }
  static constexpr SignalValue of_real(double v) { return SignalValue(Tag::kReal, 0, v); }
  static constexpr SignalValue undef() { return SignalValue(Tag::kUndef, 0, 0.0); }
  static constexpr SignalValue nothing() { return SignalValue(Tag::kNothing, 0, 0.0); }

  constexpr Tag tag() const { return tag_; }
  constexpr bool is_concrete() const { return tag_ == Tag::kInt || tag_ == Tag::kReal; }
  constexpr bool is_undef() const { return tag_ == Tag::kUndef; }
  constexpr bool is_nothing() const { return tag_ == Tag::kNothing; }
  constexpr bool is_int() const { return tag_ == Tag::kInt; }
  constexpr bool is_real() const { return tag_ == Tag::kReal; }

  constexpr std::int64_t as_int() const { return int_; }
  constexpr double as_real() const { return real_; }
  /// Numeric value of a concrete reading. Meaningless for Undef/Nothing.
  constexpr double numeric() const {
    return tag_ == Tag::kReal ? real_ : static_cast<double>(int_);
  }

  friend bool operator==(const SignalValue& a, const SignalValue& b) {
    return (a <=> b) == 0;
  }
  friend std::strong_ordering operator<=>(const SignalValue& a, const SignalValue& b) {
    if (auto c = a.tag_ <=> b.tag_; c != 0) return c;
    switch (a.tag_) {
      case Tag::kInt: return a.int_ <=> b.int_;
      case Tag::kReal:
        return std::bit_cast<std::uint64_t>(a.real_) <=> std::bit_cast<std::uint64_t>(b.real_);
      default: return std::strong_ordering::equal;
    }
  }

  std::size_t hash() const {
    std::uint64_t payload = tag_ == Tag::kReal ? std::bit_cast<std::uint64_t>(real_)
                                               : static_cast<std::uint64_t>(int_);
    return std::hash<std::uint64_t>{}(payload * 0x9E3779B97F4A7C15ull +
                                      static_cast<std::uint64_t>(tag_));
  }

  std::string to_string() const {
    switch (tag_) {
      case Tag::kInt: return std::to_string(int_);
      case Tag::kReal: return std::to_string(real_);
      case Tag::kUndef: return "Undef";
      case Tag::kNothing: return "Nothing";
    }
    return "?";
  }

 private:
  constexpr SignalValue(Tag tag, std::int64_t i, double r) : tag_(tag), int_(i), real_(r) {}

  Tag tag_ = Tag::kNothing;
  std::int64_t int_ = 0;
  double real_ = 0.0;
};

using Vector = std::vector<SignalValue>;

struct VectorHash {
  std::size_t operator()(const Vector& v) const {
    std::size_t h = v.size();
    for (const auto& x : v) h = h * 1000003u ^ x.hash();
    return h;
  }
};

using VectorSet = std::unordered_set<Vector, VectorHash>;

enum class SignalRole : std::uint8_t { kInput, kOutput, kReward, kInternal };

/// Declares one signal. Construct through the role-specific factories, which
/// enforce the role constraints: outputs never admit Undef, rewards always
/// admit Nothing and never Undef, internal signals always admit Undef.
struct SignalSpec {
  std::string name;
  ScalarKind kind = ScalarKind::boolean();
  SignalRole role = SignalRole::kInput;
  bool allows_undef = false;
  bool allows_nothing = true;

  static SignalSpec input(std::string name, ScalarKind kind, bool allows_undef = false,
                          bool allows_nothing = true) {
    return {std::move(name), kind, SignalRole::kInput, allows_undef, allows_nothing};
  }
  static SignalSpec output(std::string name, ScalarKind kind, bool allows_nothing = true) {
    return {std::move(name), kind, SignalRole::kOutput, false, allows_nothing};
  }
  static SignalSpec reward(std::string name, ScalarKind kind) {
    return {std::move(name), kind, SignalRole::kReward, false, true};
  }
  static SignalSpec internal(std::string name, ScalarKind kind, bool allows_nothing = true) {
    return {std::move(name), kind, SignalRole::kInternal, true, allows_nothing};
  }

  /// Throws Precondition if the flags contradict the role.
  void check() const {
    if (name.empty()) throw Error(Errc::kPrecondition, "signal name is empty");
    if (role == SignalRole::kOutput && allows_undef)
      throw Error(Errc::kPrecondition, "output signal '" + name + "' cannot admit Undef");
    if (role == SignalRole::kReward && (!allows_nothing || allows_undef))
      throw Error(Errc::kPrecondition,
                  "reward signal '" + name + "' must admit Nothing and not Undef");
    if (role == SignalRole::kInternal && !allows_undef)
      throw Error(Errc::kPrecondition, "internal signal '" + name + "' must admit Undef");
  }

  friend bool operator==(const SignalSpec&, const SignalSpec&) = default;
};

inline bool kind_admits(ScalarKind kind, const SignalValue& v) {
  switch (kind.tag()) {
    case KindTag::kBool:
    case KindTag::kFinite:
      return v.is_int() && v.as_int() >= 0 && v.as_int() < kind.cardinality();
    case KindTag::kInt: return v.is_int();
    case KindTag::kReal: return v.is_real();
  }
  return false;
}

inline SignalValue zero_of(ScalarKind kind) {
  return kind.tag() == KindTag::kReal ? SignalValue::of_real(0.0) : SignalValue::of(0);
}

/// Checks `value` against `spec`. Nothing on a non-reward signal comes back as
/// the kind's zero; on a reward signal it stays Nothing.
inline SignalValue validate_value(const SignalSpec& spec, const SignalValue& value) {
  if (value.is_undef()) {
    if (!spec.allows_undef)
      throw Error(Errc::kForbiddenUndef, "signal '" + spec.name + "' does not admit Undef");
    return value;
  }
  if (value.is_nothing()) {
    if (!spec.allows_nothing)
      throw Error(Errc::kForbiddenNothing, "signal '" + spec.name + "' does not admit Nothing");
    return spec.role == SignalRole::kReward ? value : zero_of(spec.kind);
  }
  if (!kind_admits(spec.kind, value))
    throw Error(Errc::kKindMismatch,
                "value " + value.to_string() + " outside kind of signal '" + spec.name + "'");
  return value;
}

inline Vector validate_vector(std::span<const SignalSpec> specs, const Vector& values) {
  if (specs.size() != values.size())
    throw Error(Errc::kSchemaViolation, "vector has " + std::to_string(values.size()) +
                                            " coordinates, expected " +
                                            std::to_string(specs.size()));
  Vector out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < specs.size(); ++i) out.push_back(validate_value(specs[i], values[i]));
  return out;
}

/// The all-Nothing vector for a list of signals, normalised per role.
inline Vector nothing_vector(std::span<const SignalSpec> specs) {
  Vector out;
  out.reserve(specs.size());
  for (const auto& s : specs) {
    out.push_back(s.role == SignalRole::kReward ? SignalValue::nothing() : zero_of(s.kind));
  }
  return out;
}

struct VectorSchema {
  std::vector<SignalSpec> inputs;
  std::vector<SignalSpec> outputs;
  /// Ordered by priority; index 0 is the most important.
  std::vector<SignalSpec> rewards;

  std::size_t priority_count() const { return rewards.size(); }

  /// Throws Precondition on duplicate names, misplaced roles or bad flags.
  void check() const {
    std::unordered_set<std::string> seen;
    auto visit = [&](const std::vector<SignalSpec>& part, SignalRole role) {
      for (const auto& s : part) {
        s.check();
        if (s.role != role)
          throw Error(Errc::kPrecondition, "signal '" + s.name + "' placed under wrong role");
        if (!seen.insert(s.name).second)
          throw Error(Errc::kPrecondition, "duplicate signal name '" + s.name + "'");
      }
    };
    visit(inputs, SignalRole::kInput);
    visit(outputs, SignalRole::kOutput);
    visit(rewards, SignalRole::kReward);
  }

  friend bool operator==(const VectorSchema&, const VectorSchema&) = default;
};

struct SignalSeries {
  SignalSpec spec;
  std::vector<SignalValue> values;
};

/// Memory signal: the series delayed by `k` steps. Readings from before the
/// start of the series are Undef.
inline SignalSeries shift_signal(const SignalSeries& series, std::int64_t k) {
  if (k < 1) throw Error(Errc::kPrecondition, "shift needs k >= 1");
  SignalSeries out;
  out.spec = SignalSpec::internal(series.spec.name + "@-" + std::to_string(k), series.spec.kind,
                                  series.spec.allows_nothing);
  out.values.reserve(series.values.size());
  const auto delay = static_cast<std::size_t>(k);
  for (std::size_t t = 0; t < series.values.size(); ++t) {
    out.values.push_back(t < delay ? SignalValue::undef() : series.values[t - delay]);
  }
  return out;
}

inline std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].to_string();
  }
  return s + ")";
}

inline std::optional<std::size_t> index_of(std::span<const SignalSpec> specs,
                                           std::string_view name) {
  for (std::size_t i = 0; i < specs.size(); ++i)
    if (specs[i].name == name) return i;
  return std::nullopt;
}

}  // namespace aidef

#endif  // AIDEF_SIGNAL_HPP_
