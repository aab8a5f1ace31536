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


// Tic-tac-toe from the eye's point of view: a random device lives for a
// while, its trace is mined for rules about bad moves, and a second device
// uses those rules. Prints what it learned and how the two lives compare.

#include <cstdio>
#include <cstdlib>

#include "aidef/aidef.hpp"

namespace {

struct Stats {
  std::size_t incorrect = 0;
  std::size_t games = 0;
  std::size_t wins = 0;
  std::size_t draws = 0;
};

Stats tally(const aidef::Life& life) {
  Stats s;
  for (const auto& step : life.steps) {
    s.incorrect += step.incorrect.size();
    for (const auto& r : step.reward) {
      if (r.is_nothing()) continue;
      ++s.games;
      if (r == aidef::SignalValue::of(aidef::ttt::kVictoryReward)) ++s.wins;
      if (r == aidef::SignalValue::of(aidef::ttt::kDrawReward)) ++s.draws;
    }
  }
  return s;
}

void show(const char* name, const aidef::Life& life) {
  const Stats s = tally(life);
  const auto rep = aidef::report_success(life);
  std::printf("%-8s steps %zu  incorrect attempts %zu  games %zu  won %zu  drawn %zu  success %s\n",
              name, life.size(), s.incorrect, s.games, s.wins, s.draws, aidef::to_string(rep.final_value).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t steps = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 5000;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

  const aidef::ttt::World world;

  aidef::RandomAgent explorer(seed, 0.0);
  const auto first = aidef::run_episode(world, explorer, steps, seed);
  show("random", first);

  aidef::MinerOptions opts;
  opts.max_atoms = 2;
  opts.min_support = 20;
  const auto rules = aidef::mine_implications(first, opts);
  std::printf("\n%zu rules mined:\n", rules.size());
  for (const auto& r : rules) std::printf("  %s\n", aidef::to_string(r).c_str());
  std::printf("\n");

  aidef::MinerGuidedAgent guided(rules, seed + 1);
  const auto second = aidef::run_episode(world, guided, steps, seed + 1);
  aidef::RandomAgent control(seed + 1, 0.0);
  const auto baseline = aidef::run_episode(world, control, steps, seed + 1);
  show("guided", second);
  show("control", baseline);
  return 0;
}
