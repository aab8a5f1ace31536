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

#ifndef AIDEF_RUNNER_HPP_
#define AIDEF_RUNNER_HPP_

#include <cstdint>
#include <string>

#include "aidef/agents.hpp"
#include "aidef/errors.hpp"
#include "aidef/json_io.hpp"
#include "aidef/life.hpp"
#include "aidef/success.hpp"
#include "aidef/world.hpp"

namespace aidef {

/// Lets `agent` live in `world` until `max_steps` moves are accepted, the
/// world ends the life, or no untried move is left (death).
template <WorldModel W>
Life run_episode(const W& world, Agent& agent, std::size_t max_steps, std::uint64_t seed) {
  if (max_steps < 1) throw Error(Errc::kPrecondition, "max_steps must be >= 1");
  Session<W> session(world, seed);
  session.life().meta.agent = agent.id();
  session.life().meta.agent_seed = agent.seed();
  session.life().meta.config = Json{{"max_steps", max_steps}};

  std::size_t accepted = 0;
  while (accepted < max_steps && !session.finished()) {
    const AgentContext ctx{world.schema(), session.life(), session.observation(),
                           session.tried_incorrect_set()};
    Vector move;
    try {
      move = agent.decide(ctx);
    } catch (const Error& e) {
      if (e.code() != Errc::kNoUntriedMoves) throw;
      session.record_death();
      break;
    }
    try {
      if (session.attempt(move).accepted) ++accepted;
    } catch (const Error& e) {
      if (e.code() == Errc::kDuplicateIncorrectMove)
        throw Error(Errc::kAgentViolation, "agent " + agent.id() + " repeated " + to_string(move));
      throw;
    }
  }
  return session.take_life();
}

struct SuccessReport {
  std::size_t steps = 0;
  SuccessValue final_value;
  SuccessValue limit;
};

/// Success at the end of the life plus the tail estimate over all prefixes.
inline SuccessReport report_success(const Life& life, LimitOptions opts = {}) {
  const RewardStream stream = life.rewards();
  SuccessReport r;
  r.steps = life.size();
  r.final_value = success_finite(stream, stream.size());
  r.limit = stream.size() == 0 ? r.final_value : success_limit_estimate(success_series(stream), opts);
  return r;
}

inline Json report_to_json(const SuccessReport& r) {
  Json j;
  j["steps"] = r.steps;
  j["success"] = success_to_json(r.final_value);
  j["limit"] = success_to_json(r.limit);
  return j;
}

struct ReplayResult {
  bool ok = true;
  std::int64_t t = -1;  // first offending step
  std::string message;
};

/// Feeds a recorded life back through a fresh world with the recorded seed.
/// Every rejected attempt must be rejected again, every accepted output
/// accepted, and observations and rewards must match exactly.
template <WorldModel W>
ReplayResult replay_life(const W& world, const Life& life) {
  Session<W> session(world, life.meta.world_seed);
  auto fail = [](std::int64_t t, std::string msg) { return ReplayResult{false, t, std::move(msg)}; };
  for (const auto& step : life.steps) {
    if (session.observation().inputs != step.input)
      return fail(step.t, "observation differs: recorded " + to_string(step.input) + ", world " +
                              to_string(session.observation().inputs));
    for (const auto& bad : step.incorrect) {
      if (session.attempt(bad).accepted)
        return fail(step.t, "recorded incorrect move " + to_string(bad) + " was accepted");
    }
    const auto outcome = session.attempt(step.output);
    if (!outcome.accepted)
      return fail(step.t, "accepted move " + to_string(step.output) + " is incorrect: " +
                              outcome.reason);
    if (outcome.reward != step.reward)
      return fail(step.t, "reward differs: recorded " + to_string(step.reward) + ", world " +
                              to_string(outcome.reward));
  }
  return {};
}

}  // namespace aidef

#endif  // AIDEF_RUNNER_HPP_
