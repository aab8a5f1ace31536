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

#ifndef AIDEF_LIFE_HPP_
#define AIDEF_LIFE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aidef/errors.hpp"
#include "aidef/json_io.hpp"
#include "aidef/signal.hpp"
#include "aidef/success.hpp"

namespace aidef {

/// One accepted step. `incorrect` holds the outputs the world rejected at this
/// step, in the order they were tried; they never advance time.
struct LifeStep {
  std::int64_t t = 0;
  Vector input;
  std::vector<Vector> incorrect;
  Vector output;
  Vector reward;

  friend bool operator==(const LifeStep&, const LifeStep&) = default;
};

/// Late resolution of an input reading that was Undef when recorded.
struct Revision {
  std::int64_t t = 0;
  std::string signal;
  SignalValue value;

  friend bool operator==(const Revision&, const Revision&) = default;
};

/// The life ended because no output was accepted at step `t`.
struct DeathRecord {
  std::int64_t t = 0;
  std::size_t attempts = 0;

  friend bool operator==(const DeathRecord&, const DeathRecord&) = default;
};

struct LifeMeta {
  std::string world;
  std::string agent;
  std::uint64_t world_seed = 0;
  std::uint64_t agent_seed = 0;
  Json config = Json::object();

  friend bool operator==(const LifeMeta&, const LifeMeta&) = default;
};

struct Life {
  VectorSchema schema;
  std::vector<LifeStep> steps;
  std::vector<Revision> revisions;
  std::optional<DeathRecord> death;
  LifeMeta meta;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }

  /// Records that input `signal` at step `t` should have read `value`.
  void add_revision(std::int64_t t, const std::string& signal, const SignalValue& value) {
    if (t < 0 || static_cast<std::size_t>(t) >= steps.size())
      throw Error(Errc::kPrecondition, "revision at t=" + std::to_string(t) + " outside life");
    const auto idx = index_of(schema.inputs, signal);
    if (!idx) throw Error(Errc::kUnknownSignal, "no input signal '" + signal + "'");
    if (!steps[static_cast<std::size_t>(t)].input[*idx].is_undef())
      throw Error(Errc::kPrecondition, "revision target " + signal + "(" + std::to_string(t) +
                                           ") was not Undef");
    if (!value.is_concrete()) throw Error(Errc::kPrecondition, "revision must be concrete");
    validate_value(schema.inputs[*idx], value);
    revisions.push_back({t, signal, value});
  }

  /// Input vector at `t` with all revisions applied.
  Vector resolved_input(std::int64_t t) const {
    Vector v = steps.at(static_cast<std::size_t>(t)).input;
    for (const auto& r : revisions) {
      if (r.t == t) v[*index_of(schema.inputs, r.signal)] = r.value;
    }
    return v;
  }

  RewardStream rewards() const {
    RewardStream s{schema.rewards, {}};
    s.values.reserve(steps.size());
    for (const auto& st : steps) s.values.push_back(st.reward);
    return s;
  }

  friend bool operator==(const Life&, const Life&) = default;
};

}  // namespace aidef

#endif  // AIDEF_LIFE_HPP_
