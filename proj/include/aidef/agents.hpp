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

#ifndef AIDEF_AGENTS_HPP_
#define AIDEF_AGENTS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aidef/errors.hpp"
#include "aidef/life.hpp"
#include "aidef/miner.hpp"
#include "aidef/rng.hpp"
#include "aidef/world.hpp"

namespace aidef {

/// What an agent may look at when choosing its next attempt.
struct AgentContext {
  const VectorSchema& schema;
  const Life& history;
  const Observation& observation;
  const VectorSet& tried_incorrect;
};

/// A device policy. `decide` must never return a move from
/// `tried_incorrect`; it throws NoUntriedMoves when nothing is left.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string id() const = 0;
  virtual std::uint64_t seed() const = 0;
  virtual Vector decide(const AgentContext& ctx) = 0;
};

namespace detail {

inline std::vector<const Vector*> untried(const std::vector<Vector>& all, const VectorSet& tried) {
  std::vector<const Vector*> out;
  out.reserve(all.size());
  for (const auto& v : all)
    if (!tried.contains(v)) out.push_back(&v);
  return out;
}

inline std::size_t deviations(const Vector& v, const Vector& base) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i) n += v[i] != base[i];
  return n;
}

}  // namespace detail

/// Explores the way a newborn device would: the very first attempt is the
/// all-Nothing output; afterwards it draws uniformly from untried outputs,
/// preferring (with probability `single_bias`) those that differ from
/// all-Nothing in exactly one coordinate while any remain.
class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed, double single_bias = 0.5)
      : seed_(seed), single_bias_(single_bias), rng_(mix_seed(seed)) {}

  std::string id() const override { return "random"; }
  std::uint64_t seed() const override { return seed_; }

  Vector decide(const AgentContext& ctx) override {
    if (!outputs_) {
      outputs_ = enumerate_outputs(ctx.schema);
      idle_ = nothing_vector(ctx.schema.outputs);
    }
    if (!started_) {
      started_ = true;
      if (!ctx.tried_incorrect.contains(idle_)) return idle_;
    }
    const auto open = detail::untried(*outputs_, ctx.tried_incorrect);
    if (open.empty()) throw Error(Errc::kNoUntriedMoves, "every output has been rejected");
    std::vector<const Vector*> singles;
    for (const auto* v : open)
      if (detail::deviations(*v, idle_) == 1) singles.push_back(v);
    if (!singles.empty() && rng_.bernoulli(single_bias_))
      return *singles[rng_.uniform(singles.size())];
    return *open[rng_.uniform(open.size())];
  }

 private:
  std::uint64_t seed_;
  double single_bias_;
  Rng rng_;
  bool started_ = false;
  std::optional<std::vector<Vector>> outputs_;
  Vector idle_;
};

struct MinerAgentOptions {
  /// Weight of the mobility score; 0 picks uniformly among survivors.
  double mobility_weight = 1.0;
  /// Probability of deliberately trying a move the rules call incorrect.
  double epsilon = 0.0;
};

/// Skips moves that zero-violation rules predict to be incorrect. Among the
/// remaining moves it prefers those after which the rules leave the most
/// moves open (next input assumed unchanged), then picks uniformly. If every
/// untried move is predicted incorrect it tries one anyway. With no rules it
/// behaves exactly like RandomAgent.
class MinerGuidedAgent final : public Agent {
 public:
  MinerGuidedAgent(std::vector<Implication> rules, std::uint64_t seed,
                   MinerAgentOptions opts = {})
      : rules_(std::move(rules)), seed_(seed), opts_(opts), rng_(mix_seed(seed ^ 0x6d696e6572ull)),
        fallback_(seed) {}

  std::string id() const override { return "miner"; }
  std::uint64_t seed() const override { return seed_; }

  Vector decide(const AgentContext& ctx) override {
    if (!compiled_) {
      compiled_ = RuleSet(rules_, ctx.schema);
      outputs_ = enumerate_outputs(ctx.schema);
    }
    if (compiled_->empty()) return fallback_.decide(ctx);

    DecisionWindow window;
    window.input = ctx.observation.inputs;
    if (!ctx.history.empty()) {
      const auto& last = ctx.history.steps.back();
      window.prev_input = last.input;
      window.prev_output = last.output;
      window.prev_reward = last.reward;
    }

    const auto open = detail::untried(outputs_, ctx.tried_incorrect);
    if (open.empty()) throw Error(Errc::kNoUntriedMoves, "every output has been rejected");
    std::vector<const Vector*> survivors, doomed;
    for (const auto* v : open) (compiled_->predicts_incorrect(window, *v) ? doomed : survivors).push_back(v);

    if (!doomed.empty() && (survivors.empty() || rng_.bernoulli(opts_.epsilon)))
      return *doomed[rng_.uniform(doomed.size())];

    if (opts_.mobility_weight > 0.0) {
      std::vector<double> score(survivors.size());
      double best = -1.0;
      for (std::size_t i = 0; i < survivors.size(); ++i) {
        score[i] = opts_.mobility_weight * static_cast<double>(mobility(window, *survivors[i]));
        best = std::max(best, score[i]);
      }
      std::vector<const Vector*> top;
      for (std::size_t i = 0; i < survivors.size(); ++i)
        if (score[i] == best) top.push_back(survivors[i]);
      survivors.swap(top);
    }
    return *survivors[rng_.uniform(survivors.size())];
  }

  /// Moves the rules leave open at the next step if `move` is accepted now.
  std::size_t mobility(const DecisionWindow& now, const Vector& move) const {
    DecisionWindow next;
    next.prev_input = now.input;
    next.prev_output = move;
    next.input = now.input;
    std::size_t open = 0;
    for (const auto& m : outputs_) open += !compiled_->predicts_incorrect(next, m);
    return open;
  }

 private:
  std::vector<Implication> rules_;
  std::uint64_t seed_;
  MinerAgentOptions opts_;
  Rng rng_;
  RandomAgent fallback_;
  std::optional<RuleSet> compiled_;
  std::vector<Vector> outputs_;
};

}  // namespace aidef

#endif  // AIDEF_AGENTS_HPP_
