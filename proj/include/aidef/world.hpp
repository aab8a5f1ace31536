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

#ifndef AIDEF_WORLD_HPP_
#define AIDEF_WORLD_HPP_

#include <any>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aidef/errors.hpp"
#include "aidef/life.hpp"
#include "aidef/signal.hpp"

namespace aidef {

/// What the device sees in a state: information inputs plus reward readings.
struct Observation {
  Vector inputs;
  Vector rewards;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct Verdict {
  bool ok = true;
  std::string reason;

  static Verdict accept() { return {true, {}}; }
  static Verdict reject(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

template <typename State>
struct Transition {
  State state;
  Vector reward;
};

struct Capabilities {
  bool guarantees_nonempty_correct = true;
  bool guarantees_monotone_incorrect = true;
  /// The world may reach states where every output is incorrect.
  bool death_possible = false;
};

// A world is a value type exposing pure functions of an explicit state.
// `correct` must not mutate anything reachable from the state, `transition`
// is only ever called with outputs `correct` accepted, and `serialize` must be
// injective on reachable states.
//
// Two optional members refine the contract:
//   std::optional<Vector> respond(State&, const Vector&) const
//     the world's native in-place reaction to a move: advance and return the
//     reward, or return nullopt and leave the state untouched.
//   bool finished(const State&) const
//     the life is over (no further moves are taken).
template <typename W>
concept WorldModel = requires(const W& w, const typename W::State& s, const Vector& out,
                              std::uint64_t seed) {
  { w.id() } -> std::convertible_to<std::string>;
  { w.schema() } -> std::convertible_to<const VectorSchema&>;
  { w.capabilities() } -> std::same_as<Capabilities>;
  { w.initial_state(seed) } -> std::same_as<typename W::State>;
  { w.view(s) } -> std::same_as<Observation>;
  { w.correct(s, out) } -> std::same_as<Verdict>;
  { w.transition(s, out) } -> std::same_as<Transition<typename W::State>>;
  { w.serialize(s) } -> std::same_as<std::string>;
};

template <WorldModel W>
std::optional<Vector> raw_respond(const W& world, typename W::State& state, const Vector& out) {
  if constexpr (requires { world.respond(state, out); }) {
    return world.respond(state, out);
  } else {
    if (!world.correct(state, out)) return std::nullopt;
    auto next = world.transition(state, out);
    state = std::move(next.state);
    return std::move(next.reward);
  }
}

template <WorldModel W>
bool world_finished(const W& world, const typename W::State& state) {
  if constexpr (requires { { world.finished(state) } -> std::convertible_to<bool>; }) {
    return world.finished(state);
  } else {
    return false;
  }
}

/// Type-erased world with `std::any` state, for worlds chosen at run time.
class AnyWorld {
 public:
  using State = std::any;

  template <WorldModel W>
  explicit AnyWorld(W world) : impl_(std::make_shared<Model<W>>(std::move(world))) {}

  std::string id() const { return impl_->id(); }
  const VectorSchema& schema() const { return impl_->schema(); }
  Capabilities capabilities() const { return impl_->capabilities(); }
  State initial_state(std::uint64_t seed) const { return impl_->initial_state(seed); }
  Observation view(const State& s) const { return impl_->view(s); }
  Verdict correct(const State& s, const Vector& out) const { return impl_->correct(s, out); }
  Transition<State> transition(const State& s, const Vector& out) const {
    return impl_->transition(s, out);
  }
  std::string serialize(const State& s) const { return impl_->serialize(s); }
  std::optional<Vector> respond(State& s, const Vector& out) const { return impl_->respond(s, out); }
  bool finished(const State& s) const { return impl_->finished(s); }

  /// The wrapped world, or nullptr if it is not a W.
  template <WorldModel W>
  const W* get() const {
    auto* m = dynamic_cast<const Model<W>*>(impl_.get());
    return m ? &m->world : nullptr;
  }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual std::string id() const = 0;
    virtual const VectorSchema& schema() const = 0;
    virtual Capabilities capabilities() const = 0;
    virtual State initial_state(std::uint64_t seed) const = 0;
    virtual Observation view(const State& s) const = 0;
    virtual Verdict correct(const State& s, const Vector& out) const = 0;
    virtual Transition<State> transition(const State& s, const Vector& out) const = 0;
    virtual std::string serialize(const State& s) const = 0;
    virtual std::optional<Vector> respond(State& s, const Vector& out) const = 0;
    virtual bool finished(const State& s) const = 0;
  };

  template <WorldModel W>
  struct Model final : Concept {
    using S = typename W::State;
    explicit Model(W w) : world(std::move(w)) {}

    std::string id() const override { return world.id(); }
    const VectorSchema& schema() const override { return world.schema(); }
    Capabilities capabilities() const override { return world.capabilities(); }
    State initial_state(std::uint64_t seed) const override { return world.initial_state(seed); }
    Observation view(const State& s) const override { return world.view(cast(s)); }
    Verdict correct(const State& s, const Vector& out) const override {
      return world.correct(cast(s), out);
    }
    Transition<State> transition(const State& s, const Vector& out) const override {
      auto next = world.transition(cast(s), out);
      return {State(std::move(next.state)), std::move(next.reward)};
    }
    std::string serialize(const State& s) const override { return world.serialize(cast(s)); }
    std::optional<Vector> respond(State& s, const Vector& out) const override {
      return raw_respond(world, *std::any_cast<S>(&s), out);
    }
    bool finished(const State& s) const override { return world_finished(world, cast(s)); }

    static const S& cast(const State& s) { return *std::any_cast<S>(&s); }

    W world;
  };

  std::shared_ptr<const Concept> impl_;
};

/// Every output vector of a schema whose output signals are all enumerable,
/// in lexicographic order (last coordinate fastest).
inline std::vector<Vector> enumerate_outputs(const VectorSchema& schema,
                                             std::size_t limit = std::size_t{1} << 22) {
  std::size_t total = 1;
  for (const auto& s : schema.outputs) {
    if (!s.kind.is_enumerable())
      throw Error(Errc::kInfiniteOutputSpace, "output signal '" + s.name + "' is unbounded");
    total *= static_cast<std::size_t>(s.kind.cardinality());
    if (total > limit) throw Error(Errc::kPrecondition, "output space too large to enumerate");
  }
  std::vector<Vector> all;
  all.reserve(total);
  Vector cur = nothing_vector(schema.outputs);
  for (auto& v : cur) v = SignalValue::of(0);
  for (std::size_t n = 0; n < total; ++n) {
    all.push_back(cur);
    for (std::size_t i = cur.size(); i-- > 0;) {
      const auto next = cur[i].as_int() + 1;
      if (next < schema.outputs[i].kind.cardinality()) {
        cur[i] = SignalValue::of(next);
        break;
      }
      cur[i] = SignalValue::of(0);
    }
  }
  return all;
}

/// {o : correct(state, o)} by enumeration of the output space.
template <WorldModel W>
std::vector<Vector> legal_moves(const W& world, const typename W::State& state) {
  std::vector<Vector> legal;
  for (auto& o : enumerate_outputs(world.schema())) {
    if (world.correct(state, o)) legal.push_back(std::move(o));
  }
  return legal;
}

/// Outcome of one attempted move. Rejected moves carry no observation and
/// no reward; they only report bad_move = 1.
struct StepOutcome {
  bool accepted = false;
  Observation observation;
  Vector reward;
  std::string reason;

  int bad_move() const { return accepted ? 0 : 1; }
};

/// Drives one world through the move protocol and records the life.
///
/// Rejected moves leave the state and the clock untouched and are remembered
/// until the next accepted move; resubmitting one before then is a protocol
/// error.
template <WorldModel W>
class Session {
 public:
  using State = typename W::State;

  Session(W world, std::uint64_t seed)
      : world_(std::move(world)), state_(world_.initial_state(seed)) {
    world_.schema().check();
    life_.schema = world_.schema();
    life_.meta.world = world_.id();
    life_.meta.world_seed = seed;
    observation_ = world_.view(state_);
  }

  StepOutcome attempt(const Vector& output) {
    if (finished()) throw Error(Errc::kLifeComplete, "the world has ended this life");
    Vector move;
    try {
      move = validate_vector(world_.schema().outputs, output);
    } catch (const Error& e) {
      throw Error(Errc::kSchemaViolation, e.what());
    }
    if (tried_set_.contains(move))
      throw Error(Errc::kDuplicateIncorrectMove, to_string(move) + " already rejected at t=" +
                                                     std::to_string(t_));
    Verdict verdict = world_.correct(state_, move);
    if (!verdict) {
      tried_set_.insert(move);
      tried_.push_back(std::move(move));
      return {false, {}, {}, std::move(verdict.reason)};
    }
    Vector reward;
    if constexpr (requires { world_.respond(state_, move); }) {
      // worlds with a native in-place reaction advance without copying
      auto r = world_.respond(state_, move);
      if (!r) throw Error(Errc::kPrecondition, "world refused a move correct() accepted");
      reward = std::move(*r);
    } else {
      auto next = world_.transition(state_, move);
      state_ = std::move(next.state);
      reward = std::move(next.reward);
    }
    try {
      reward = validate_vector(world_.schema().rewards, reward);
    } catch (const Error& e) {
      throw Error(Errc::kSchemaViolation, std::string("world produced bad reward: ") + e.what());
    }
    life_.steps.push_back({t_, observation_.inputs, std::move(tried_), move, reward});
    tried_.clear();
    tried_set_.clear();
    ++t_;
    observation_ = world_.view(state_);
    return {true, observation_, std::move(reward), {}};
  }

  /// Ends the life early: nothing is acceptable at the current step.
  void record_death() { life_.death = DeathRecord{t_, tried_.size()}; }

  bool finished() const { return life_.death.has_value() || world_finished(world_, state_); }

  const W& world() const { return world_; }
  const State& state() const { return state_; }
  std::int64_t time() const { return t_; }
  const Observation& observation() const { return observation_; }
  const std::vector<Vector>& tried_incorrect() const { return tried_; }
  const VectorSet& tried_incorrect_set() const { return tried_set_; }
  const Life& life() const { return life_; }
  Life& life() { return life_; }
  Life take_life() { return std::move(life_); }

 private:
  W world_;
  State state_;
  std::int64_t t_ = 0;
  Observation observation_;
  std::vector<Vector> tried_;
  VectorSet tried_set_;
  Life life_;
};

}  // namespace aidef

#endif  // AIDEF_WORLD_HPP_
