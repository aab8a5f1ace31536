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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "aidef/agents.hpp"
#include "aidef/rng.hpp"
#include "aidef/runner.hpp"
#include "aidef/tictactoe.hpp"
#include "aidef/trace.hpp"

namespace aidef {
namespace {

VectorSchema mixed_schema() {
  return {{SignalSpec::input("temp", ScalarKind::real(), true),
           SignalSpec::input("door", ScalarKind::finite(4))},
          {SignalSpec::output("go", ScalarKind::boolean()),
           SignalSpec::output("speed", ScalarKind::integer())},
          {SignalSpec::reward("score", ScalarKind::finite(3)),
           SignalSpec::reward("money", ScalarKind::real())}};
}

SignalValue random_real(Rng& rng) {
  switch (rng.uniform(6)) {
    case 0: return SignalValue::of_real(HUGE_VAL);
    case 1: return SignalValue::of_real(-0.0);
    case 2: return SignalValue::of_real(2.0);
    default: return SignalValue::of_real((rng.unit() - 0.5) * 1e6);
  }
}

Life random_life(std::uint64_t seed) {
  Rng rng(seed);
  Life life;
  life.schema = mixed_schema();
  life.meta = {"gen", "none", seed, seed * 3, Json{{"k", seed}}};
  const std::size_t n = rng.uniform(30);
  for (std::size_t t = 0; t < n; ++t) {
    LifeStep s;
    s.t = static_cast<std::int64_t>(t);
    s.input = {rng.bernoulli(0.3) ? SignalValue::undef() : random_real(rng),
               SignalValue::of(static_cast<std::int64_t>(rng.uniform(4)))};
    VectorSet seen;
    const std::size_t bad = rng.uniform(4);
    for (std::size_t i = 0; i < bad; ++i) {
      Vector v{SignalValue::of(static_cast<std::int64_t>(rng.uniform(2))),
               SignalValue::of(static_cast<std::int64_t>(rng.uniform(5)) - 2)};
      if (seen.insert(v).second) s.incorrect.push_back(v);
    }
    do {
      s.output = {SignalValue::of(static_cast<std::int64_t>(rng.uniform(2))),
                  SignalValue::of(static_cast<std::int64_t>(rng.uniform(1000)))};
    } while (seen.contains(s.output));
    s.reward = {rng.bernoulli(0.5) ? SignalValue::nothing()
                                   : SignalValue::of(static_cast<std::int64_t>(rng.uniform(3))),
                rng.bernoulli(0.5) ? SignalValue::nothing() : random_real(rng)};
    life.steps.push_back(std::move(s));
  }
  for (std::size_t t = 0; t < n; ++t)
    if (life.steps[t].input[0].is_undef() && rng.bernoulli(0.5))
      life.add_revision(static_cast<std::int64_t>(t), "temp", SignalValue::of_real(20.5));
  if (rng.bernoulli(0.2)) life.death = DeathRecord{static_cast<std::int64_t>(n), rng.uniform(5)};
  return life;
}

std::size_t error_line(const std::string& text, Errc expected) {
  try {
    trace_from_string(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), expected) << e.what();
    return e.line();
  }
  ADD_FAILURE() << "no error";
  return 0;
}

TEST(Trace, RoundTripGeneratedLives) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto life = random_life(seed);
    const auto text = trace_to_string(life);
    const auto back = trace_from_string(text);
    EXPECT_EQ(back, life) << seed;
    EXPECT_EQ(trace_to_string(back), text);
  }
}

TEST(Trace, RevisionsResolveInputs) {
  Life life;
  life.schema = mixed_schema();
  life.steps.push_back({0, {SignalValue::undef(), SignalValue::of(1)}, {},
                        {SignalValue::of(0), SignalValue::of(0)},
                        {SignalValue::nothing(), SignalValue::nothing()}});
  life.add_revision(0, "temp", SignalValue::of_real(3.5));
  EXPECT_EQ(life.resolved_input(0)[0], SignalValue::of_real(3.5));
  EXPECT_TRUE(life.steps[0].input[0].is_undef());
  EXPECT_THROW(life.add_revision(0, "door", SignalValue::of(1)), Error);
  EXPECT_THROW(life.add_revision(0, "temp", SignalValue::nothing()), Error);
  EXPECT_THROW(life.add_revision(3, "temp", SignalValue::of_real(1)), Error);
  const auto back = trace_from_string(trace_to_string(life));
  EXPECT_EQ(back.resolved_input(0)[0], SignalValue::of_real(3.5));
}

TEST(Trace, StableFieldOrder) {
  RandomAgent agent(1);
  const auto text = trace_to_string(run_episode(ttt::World{}, agent, 2, 1));
  EXPECT_EQ(text.rfind(R"({"version":1,"schema":{"inputs":[{"name":"cell")", 0), 0u);
  EXPECT_NE(text.find(R"("meta":{"world":"ttt-eye","agent":"random","world_seed":1,"agent_seed":1,"config":{"max_steps":2}}})"),
            std::string::npos);
  EXPECT_NE(text.find("\n{\"t\":0,\"in\":[0],\"bad\":[],\"out\":[0,0,0,0],\"rew\":[null]}\n"),
            std::string::npos);
  EXPECT_TRUE(text.ends_with("{\"end\":true,\"steps\":2}\n"));
}

TEST(Trace, VersionMismatch) {
  auto text = trace_to_string(random_life(3));
  text.replace(text.find("\"version\":1"), 11, "\"version\":2");
  EXPECT_EQ(error_line(text, Errc::kFormatVersionMismatch), 1u);
}

TEST(Trace, TruncatedFile) {
  RandomAgent agent(1);
  const auto text = trace_to_string(run_episode(ttt::World{}, agent, 10, 1));
  // drop the footer: the missing line is reported
  const auto cut = text.substr(0, text.rfind("{\"end\""));
  EXPECT_EQ(error_line(cut, Errc::kCorruptTrace), 12u);
  // cut mid-line: the broken line is reported
  const auto mid = text.substr(0, text.find("\"t\":4") + 3);
  EXPECT_EQ(error_line(mid, Errc::kCorruptTrace), 6u);
  EXPECT_EQ(error_line("", Errc::kCorruptTrace), 1u);
}

TEST(Trace, StructuralErrorsCarryLineNumbers) {
  RandomAgent agent(1);
  const auto text = trace_to_string(run_episode(ttt::World{}, agent, 5, 1));
  auto edit = [&](const std::string& from, const std::string& to) {
    auto t = text;
    const auto at = t.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return t.replace(at, from.size(), to);
  };
  EXPECT_EQ(error_line(edit("\"t\":2", "\"t\":7"), Errc::kCorruptTrace), 4u);
  EXPECT_EQ(error_line(edit("\"in\":[0]", "\"in\":[5]"), Errc::kCorruptTrace), 2u);
  EXPECT_EQ(error_line(edit("\"in\":[0]", "\"in\":[0,1]"), Errc::kCorruptTrace), 2u);
  EXPECT_EQ(error_line(edit("\"bad\":[]", "\"bad\":[[0,0,0,1],[0,0,0,1]]"), Errc::kCorruptTrace), 2u);
  EXPECT_EQ(error_line(text + "{\"t\":5}\n", Errc::kCorruptTrace), 8u);
  EXPECT_EQ(error_line(edit("\"steps\":5", "\"steps\":4"), Errc::kCorruptTrace), 7u);
}

TEST(Trace, Files) {
  const auto dir = std::filesystem::temp_directory_path() / "aidef_trace_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "life.jsonl").string();
  const auto life = random_life(7);
  write_trace(life, path);
  EXPECT_EQ(read_trace(path), life);
  try {
    read_trace((dir / "missing.jsonl").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIo);
  }
  EXPECT_THROW(write_trace(life, (dir / "no" / "such" / "dir.jsonl").string()), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace aidef
