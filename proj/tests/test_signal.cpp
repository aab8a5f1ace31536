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

#include <gtest/gtest.h>

#include <random>

#include "aidef/json_io.hpp"
#include "aidef/rng.hpp"
#include "aidef/signal.hpp"
#include "aidef/tictactoe.hpp"

namespace aidef {
namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an aidef::Error";
  return Errc::kIo;
}

TEST(ValidateValue, FiniteInRangeIsIdentity) {
  const auto spec = SignalSpec::input("x", ScalarKind::finite(3));
  EXPECT_EQ(validate_value(spec, SignalValue::of(2)), SignalValue::of(2));
  EXPECT_EQ(validate_value(spec, SignalValue::of(0)), SignalValue::of(0));
}

TEST(ValidateValue, FiniteUpperBoundIsExclusive) {
  const auto spec = SignalSpec::input("x", ScalarKind::finite(3));
  EXPECT_EQ(code_of([&] { validate_value(spec, SignalValue::of(3)); }), Errc::kKindMismatch);
  EXPECT_EQ(code_of([&] { validate_value(spec, SignalValue::of(-1)); }), Errc::kKindMismatch);
  EXPECT_EQ(code_of([&] { validate_value(spec, SignalValue::of_real(1.0)); }), Errc::kKindMismatch);
}

TEST(ValidateValue, NothingOnInputIsZero) {
  const auto spec = SignalSpec::input("x", ScalarKind::finite(3));
  EXPECT_EQ(validate_value(spec, SignalValue::nothing()), SignalValue::of(0));
  const auto real = SignalSpec::input("r", ScalarKind::real());
  EXPECT_EQ(validate_value(real, SignalValue::nothing()), SignalValue::of_real(0.0));
}

TEST(ValidateValue, UndefOnOutputIsForbidden) {
  const auto spec = SignalSpec::output("do", ScalarKind::boolean());
  EXPECT_EQ(code_of([&] { validate_value(spec, SignalValue::undef()); }), Errc::kForbiddenUndef);
}

TEST(ValidateValue, UndefWhereNotAllowed) {
  const auto no_undef = SignalSpec::input("x", ScalarKind::boolean(), false);
  EXPECT_EQ(code_of([&] { validate_value(no_undef, SignalValue::undef()); }), Errc::kForbiddenUndef);
  const auto with_undef = SignalSpec::input("y", ScalarKind::boolean(), true);
  EXPECT_TRUE(validate_value(with_undef, SignalValue::undef()).is_undef());
  // Rewards never admit Undef.
  const auto reward = SignalSpec::reward("r", ScalarKind::finite(3));
  EXPECT_EQ(code_of([&] { validate_value(reward, SignalValue::undef()); }), Errc::kForbiddenUndef);
}

TEST(ValidateValue, ForbiddenNothing) {
  const auto spec = SignalSpec::input("x", ScalarKind::integer(), false, false);
  EXPECT_EQ(code_of([&] { validate_value(spec, SignalValue::nothing()); }), Errc::kForbiddenNothing);
}

TEST(ValidateValue, InternalSignalsAlwaysAdmitUndef) {
  const auto spec = SignalSpec::internal("m", ScalarKind::finite(4));
  EXPECT_TRUE(spec.allows_undef);
  EXPECT_TRUE(validate_value(spec, SignalValue::undef()).is_undef());
}

TEST(SignalSpec, RoleConstraints) {
  auto out = SignalSpec::output("o", ScalarKind::boolean());
  EXPECT_FALSE(out.allows_undef);
  out.allows_undef = true;
  EXPECT_EQ(code_of([&] { out.check(); }), Errc::kPrecondition);
  auto rew = SignalSpec::reward("r", ScalarKind::finite(3));
  EXPECT_TRUE(rew.allows_nothing);
  rew.allows_nothing = false;
  EXPECT_EQ(code_of([&] { rew.check(); }), Errc::kPrecondition);
  EXPECT_EQ(code_of([] { ScalarKind::finite(0); }), Errc::kPrecondition);
}

TEST(VectorSchema, NamesMustBeUnique) {
  VectorSchema s{{SignalSpec::input("a", ScalarKind::boolean())},
                 {SignalSpec::output("a", ScalarKind::boolean())},
                 {}};
  EXPECT_EQ(code_of([&] { s.check(); }), Errc::kPrecondition);
  s.outputs[0].name = "b";
  EXPECT_NO_THROW(s.check());
  EXPECT_EQ(s.priority_count(), 0u);
}

TEST(SignalValue, RewardNothingDiffersFromZero) {
  const auto spec = SignalSpec::reward("r", ScalarKind::finite(3));
  EXPECT_TRUE(validate_value(spec, SignalValue::nothing()).is_nothing());
  EXPECT_NE(validate_value(spec, SignalValue::nothing()), validate_value(spec, SignalValue::of(0)));
}

TEST(SignalValue, RealEqualityIsBitwise) {
  EXPECT_EQ(SignalValue::of_real(0.1), SignalValue::of_real(0.1));
  EXPECT_NE(SignalValue::of_real(0.0), SignalValue::of_real(-0.0));
  EXPECT_NE(SignalValue::of_real(1.0), SignalValue::of(1));
}

TEST(ShiftSignal, DelaysByK) {
  SignalSeries s{SignalSpec::input("x", ScalarKind::integer()),
                 {SignalValue::of(5), SignalValue::of(7), SignalValue::of(9)}};
  const auto one = shift_signal(s, 1);
  EXPECT_EQ(one.values, (Vector{SignalValue::undef(), SignalValue::of(5), SignalValue::of(7)}));
  EXPECT_EQ(one.spec.role, SignalRole::kInternal);
  EXPECT_TRUE(one.spec.allows_undef);
  const auto three = shift_signal(s, 3);
  EXPECT_EQ(three.values, Vector(3, SignalValue::undef()));
  EXPECT_EQ(code_of([&] { shift_signal(s, 0); }), Errc::kPrecondition);
}

TEST(NothingVector, PerRole) {
  EXPECT_EQ(nothing_vector(ttt::schema().outputs),
            (Vector{SignalValue::of(0), SignalValue::of(0), SignalValue::of(0), SignalValue::of(0)}));
  EXPECT_TRUE(nothing_vector(std::vector<SignalSpec>{}).empty());
  const std::vector<SignalSpec> rewards = {SignalSpec::reward("r", ScalarKind::finite(2))};
  EXPECT_EQ(nothing_vector(rewards), Vector{SignalValue::nothing()});
}

// Random value generator covering every tag, in and out of range.
SignalValue random_value(Rng& rng) {
  switch (rng.uniform(5)) {
    case 0: return SignalValue::undef();
    case 1: return SignalValue::nothing();
    case 2: return SignalValue::of_real(static_cast<double>(rng.uniform(7)) - 3.0);
    default: return SignalValue::of(static_cast<std::int64_t>(rng.uniform(7)) - 2);
  }
}

SignalSpec random_spec(Rng& rng) {
  ScalarKind kinds[] = {ScalarKind::boolean(), ScalarKind::finite(1 + static_cast<std::int64_t>(rng.uniform(4))),
                        ScalarKind::integer(), ScalarKind::real()};
  const auto kind = kinds[rng.uniform(4)];
  switch (rng.uniform(4)) {
    case 0: return SignalSpec::input("s", kind, rng.bernoulli(0.5), rng.bernoulli(0.5));
    case 1: return SignalSpec::output("s", kind, rng.bernoulli(0.5));
    case 2: return SignalSpec::reward("s", kind);
    default: return SignalSpec::internal("s", kind, rng.bernoulli(0.5));
  }
}

TEST(SignalProperties, ValidateIsIdempotent) {
  Rng rng(11);
  int validated = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto spec = random_spec(rng);
    const auto v = random_value(rng);
    try {
      const auto once = validate_value(spec, v);
      EXPECT_EQ(validate_value(spec, once), once);
      ++validated;
    } catch (const Error&) {
    }
  }
  EXPECT_GT(validated, 1000);
}

TEST(SignalProperties, NothingEqualsZeroOffRewards) {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    auto spec = random_spec(rng);
    if (spec.role == SignalRole::kReward || !spec.allows_nothing) continue;
    EXPECT_EQ(validate_value(spec, SignalValue::nothing()), validate_value(spec, zero_of(spec.kind)));
  }
}

TEST(SignalProperties, ShiftMatchesDefinition) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    SignalSeries s{SignalSpec::input("x", ScalarKind::integer()), {}};
    const auto n = rng.uniform(20);
    for (std::uint64_t t = 0; t < n; ++t) s.values.push_back(SignalValue::of(static_cast<std::int64_t>(rng.uniform(100))));
    const auto k = static_cast<std::int64_t>(1 + rng.uniform(25));
    const auto shifted = shift_signal(s, k);
    ASSERT_EQ(shifted.values.size(), s.values.size());
    for (std::size_t t = 0; t < n; ++t) {
      if (static_cast<std::int64_t>(t) < k) {
        EXPECT_TRUE(shifted.values[t].is_undef());
      } else {
        EXPECT_EQ(shifted.values[t], s.values[t - static_cast<std::size_t>(k)]);
      }
    }
  }
}

TEST(SchemaJson, RoundTrip) {
  VectorSchema s = ttt::schema();
  s.inputs.push_back(SignalSpec::input("temp", ScalarKind::real(), true));
  s.inputs.push_back(SignalSpec::input("count", ScalarKind::integer()));
  const auto j = schema_to_json(s);
  EXPECT_EQ(j["inputs"][0]["kind"], "finite");
  EXPECT_EQ(j["inputs"][0]["k"], 3);
  EXPECT_FALSE(j["inputs"][1].contains("k"));
  EXPECT_EQ(schema_from_json(Json::parse(j.dump())), s);
}

TEST(ValueJson, EncodesSymbols) {
  EXPECT_EQ(value_to_json(SignalValue::nothing()).dump(), "null");
  EXPECT_EQ(value_to_json(SignalValue::undef()).dump(), "\"undef\"");
  EXPECT_EQ(value_from_json(Json::parse("2.0")), SignalValue::of_real(2.0));
  EXPECT_EQ(value_from_json(Json::parse("2")), SignalValue::of(2));
  const auto tiny = SignalValue::of_real(0.1 + 0.2);
  EXPECT_EQ(value_from_json(Json::parse(value_to_json(tiny).dump())), tiny);
}

}  // namespace
}  // namespace aidef
