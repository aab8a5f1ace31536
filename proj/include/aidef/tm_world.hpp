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

#ifndef AIDEF_TM_WORLD_HPP_
#define AIDEF_TM_WORLD_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aidef/errors.hpp"
#include "aidef/json_io.hpp"
#include "aidef/rng.hpp"
#include "aidef/signal.hpp"
#include "aidef/world.hpp"

namespace aidef::tm {

// Worlds generated by a Turing machine.
//
// Encoding: a device move of `move_width` bits is written onto the tape at
// head, head+1, ... and the machine runs until it takes a halting
// transition. The observation is then read from the `obs_width` cells
// starting at the head (symbol 1 reads as 1, anything else as 0), followed by
// two reward cells: victory and loss. Victory alone is 2, loss alone 0, both
// a draw (1), neither no reward. A move the machine does not answer within
// the budget is incorrect and the tape, head and control state are restored.

inline constexpr int kDefaultBudget = 800;
inline constexpr int kGameStepCap = 1000;
inline constexpr int kGamesPerLife = 100;
inline constexpr std::int64_t kDrawReward = 1;

enum Symbol : std::uint8_t { kZero = 0, kOne = 1, kBlank = 2 };
inline constexpr int kSymbols = 3;

struct Rule {
  bool halt = false;
  int next = 0;
  std::uint8_t write = kBlank;
  int move = 0;  // -1 left, 0 stay, +1 right

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct TmSpec {
  int states = 1;
  int move_width = 2;
  int obs_width = 2;
  /// Indexed by control_state * kSymbols + symbol.
  std::vector<Rule> table;

  const Rule& rule(int control, std::uint8_t symbol) const {
    return table[static_cast<std::size_t>(control * kSymbols + symbol)];
  }
  Rule& rule(int control, std::uint8_t symbol) {
    return table[static_cast<std::size_t>(control * kSymbols + symbol)];
  }

  void check() const {
    if (states < 1) throw Error(Errc::kPrecondition, "machine needs at least one state");
    if (move_width < 1 || obs_width < 0)
      throw Error(Errc::kPrecondition, "bad encoding widths");
    if (table.size() != static_cast<std::size_t>(states * kSymbols))
      throw Error(Errc::kPrecondition, "transition table is not total");
    for (const auto& r : table) {
      if (r.next < 0 || r.next >= states || r.write >= kSymbols || r.move < -1 || r.move > 1)
        throw Error(Errc::kPrecondition, "transition table entry out of range");
    }
  }

  friend bool operator==(const TmSpec&, const TmSpec&) = default;
};

/// Tape, head and control state. Blank cells are not stored, so equal
/// configurations serialize identically.
struct Machine {
  std::map<std::int64_t, std::uint8_t> tape;
  std::int64_t head = 0;
  int control = 0;

  std::uint8_t read(std::int64_t pos) const {
    auto it = tape.find(pos);
    return it == tape.end() ? std::uint8_t{kBlank} : it->second;
  }
  void write(std::int64_t pos, std::uint8_t symbol) {
    if (symbol == kBlank) {
      tape.erase(pos);
    } else {
      tape[pos] = symbol;
    }
  }

  friend bool operator==(const Machine&, const Machine&) = default;
};

namespace detail {

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace detail

inline std::string serialize_config(const Machine& m) {
  std::string out;
  detail::put_u64(out, static_cast<std::uint64_t>(m.control));
  detail::put_u64(out, static_cast<std::uint64_t>(m.head));
  detail::put_u64(out, m.tape.size());
  for (const auto& [pos, sym] : m.tape) {
    detail::put_u64(out, static_cast<std::uint64_t>(pos));
    out.push_back(static_cast<char>(sym));
  }
  return out;
}

struct TmWorldState {
  Machine machine;
  int game_step = 0;   // accepted moves in the current game
  int game_count = 0;  // finished games
  Vector last_observation;
  SignalValue last_reward = SignalValue::nothing();

  friend bool operator==(const TmWorldState&, const TmWorldState&) = default;
};

inline TmWorldState tm_initial(const TmSpec& spec) {
  TmWorldState s;
  s.last_observation.assign(static_cast<std::size_t>(spec.obs_width), SignalValue::of(0));
  return s;
}

inline std::string serialize(const TmWorldState& s) {
  std::string out = serialize_config(s.machine);
  detail::put_u64(out, static_cast<std::uint64_t>(s.game_step));
  detail::put_u64(out, static_cast<std::uint64_t>(s.game_count));
  for (const auto& v : s.last_observation) out.push_back(static_cast<char>(v.as_int()));
  out.push_back(static_cast<char>(s.last_reward.is_nothing() ? 0xff : s.last_reward.as_int()));
  return out;
}

struct TmResponse {
  bool accepted = false;
  Vector observation;
  SignalValue reward = SignalValue::nothing();
  int micro_steps = 0;
};

namespace detail {

/// One attempt's tape writes, staged over the machine they read through.
/// Nothing reaches the machine until commit().
struct Overlay {
  const Machine& base;
  std::map<std::int64_t, std::uint8_t> writes;
  std::int64_t head;
  int control;

  explicit Overlay(const Machine& m) : base(m), head(m.head), control(m.control) {}

  std::uint8_t read(std::int64_t pos) const {
    auto it = writes.find(pos);
    return it == writes.end() ? base.read(pos) : it->second;
  }
  void write(std::int64_t pos, std::uint8_t symbol) { writes[pos] = symbol; }
};

inline void commit(Machine& m, const Overlay& o) {
  for (const auto& [pos, sym] : o.writes) m.write(pos, sym);
  m.head = o.head;
  m.control = o.control;
}

inline void write_move(Overlay& m, const Vector& move) {
  for (std::size_t i = 0; i < move.size(); ++i)
    m.write(m.head + static_cast<std::int64_t>(i), static_cast<std::uint8_t>(move[i].as_int()));
}

/// Runs until a halting rule fires. Returns the number of micro-steps taken,
/// or nothing if the budget ran out first.
inline std::optional<int> run(Overlay& m, const TmSpec& spec, int budget) {
  for (int step = 1; step <= budget; ++step) {
    const Rule& r = spec.rule(m.control, m.read(m.head));
    m.write(m.head, r.write);
    m.head += r.move;
    m.control = r.next;
    if (r.halt) return step;
  }
  return std::nullopt;
}

template <typename Tape>
void decode(const Tape& m, const TmSpec& spec, TmResponse& out) {
  out.observation.clear();
  for (int i = 0; i < spec.obs_width; ++i)
    out.observation.push_back(SignalValue::of(m.read(m.head + i) == kOne ? 1 : 0));
  const bool victory = m.read(m.head + spec.obs_width) == kOne;
  const bool loss = m.read(m.head + spec.obs_width + 1) == kOne;
  if (victory && loss) {
    out.reward = SignalValue::of(1);
  } else if (victory) {
    out.reward = SignalValue::of(2);
  } else if (loss) {
    out.reward = SignalValue::of(0);
  } else {
    out.reward = SignalValue::nothing();
  }
}

inline TmResponse stage(Overlay& o, const TmSpec& spec, const Vector& move, int budget) {
  write_move(o, move);
  TmResponse out;
  const auto steps = run(o, spec, budget);
  if (!steps) {
    out.micro_steps = budget;
    return out;
  }
  out.accepted = true;
  out.micro_steps = *steps;
  decode(o, spec, out);
  return out;
}

}  // namespace detail

/// What the machine would answer to `move`, without touching the state.
inline TmResponse tm_peek(const TmWorldState& state, const TmSpec& spec, const Vector& move,
                          int budget = kDefaultBudget) {
  detail::Overlay o(state.machine);
  return detail::stage(o, spec, move, budget);
}

/// Feeds one move to the machine. The move and every micro-step write go to
/// an overlay; on deadlock (no halt within `budget` micro-steps) the overlay
/// is dropped, so the configuration is exactly the one before the move. On
/// success the overlay is committed, the observation decoded and the game
/// step counter advanced.
inline TmResponse tm_attempt(TmWorldState& state, const TmSpec& spec, const Vector& move,
                             int budget = kDefaultBudget) {
  detail::Overlay o(state.machine);
  TmResponse out = detail::stage(o, spec, move, budget);
  if (!out.accepted) return out;
  detail::commit(state.machine, o);
  state.last_observation = out.observation;
  state.last_reward = out.reward;
  ++state.game_step;
  return out;
}

/// Would the machine answer `move` within `budget`?
inline bool tm_halts(const TmWorldState& state, const TmSpec& spec, const Vector& move,
                     int budget = kDefaultBudget) {
  return tm_peek(state, spec, move, budget).accepted;
}

/// Ends an over-long game: once the current game has lasted kGameStepCap
/// accepted moves, returns a draw reward and starts the next game. The
/// machine configuration is never touched.
inline std::optional<SignalValue> tm_game_cap(TmWorldState& state) {
  if (state.game_count >= kGamesPerLife)
    throw Error(Errc::kLifeComplete, "life already consists of " +
                                         std::to_string(kGamesPerLife) + " games");
  if (state.game_step < kGameStepCap) return std::nullopt;
  state.game_step = 0;
  ++state.game_count;
  return SignalValue::of(kDrawReward);
}

/// Seeded random machine with 1..max_states control states.
inline TmSpec random_tm_spec(std::uint64_t seed, int max_states, int move_width = 2,
                             int obs_width = 2) {
  if (max_states < 1) throw Error(Errc::kPrecondition, "max_states must be >= 1");
  Rng rng(mix_seed(seed ^ 0x746d2d73706563ull));
  TmSpec spec;
  spec.states = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(max_states)));
  spec.move_width = move_width;
  spec.obs_width = obs_width;
  spec.table.resize(static_cast<std::size_t>(spec.states * kSymbols));
  for (auto& r : spec.table) {
    r.halt = rng.bernoulli(0.35);
    r.next = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(spec.states)));
    r.write = static_cast<std::uint8_t>(rng.uniform(kSymbols));
    r.move = static_cast<int>(rng.uniform(3)) - 1;
  }
  return spec;
}

inline Json spec_to_json(const TmSpec& spec) {
  Json j;
  j["states"] = spec.states;
  j["move_width"] = spec.move_width;
  j["obs_width"] = spec.obs_width;
  Json table = Json::array();
  for (const auto& r : spec.table) table.push_back(Json::array({r.halt, r.next, r.write, r.move}));
  j["table"] = std::move(table);
  return j;
}

inline TmSpec spec_from_json(const Json& j) {
  TmSpec spec;
  spec.states = j.at("states").get<int>();
  spec.move_width = j.at("move_width").get<int>();
  spec.obs_width = j.at("obs_width").get<int>();
  for (const auto& e : j.at("table")) {
    spec.table.push_back({e.at(0).get<bool>(), e.at(1).get<int>(),
                          e.at(2).get<std::uint8_t>(), e.at(3).get<int>()});
  }
  spec.check();
  return spec;
}

inline VectorSchema make_schema(const TmSpec& spec) {
  VectorSchema s;
  for (int i = 0; i < spec.obs_width; ++i)
    s.inputs.push_back(SignalSpec::input("o" + std::to_string(i), ScalarKind::boolean()));
  for (int i = 0; i < spec.move_width; ++i)
    s.outputs.push_back(SignalSpec::output("m" + std::to_string(i), ScalarKind::boolean()));
  s.rewards.push_back(SignalSpec::reward("game", ScalarKind::finite(3)));
  return s;
}

/// World adapter. A concrete reward ends the current game; a game that
/// reaches the step cap is ended with an injected draw. The life is over
/// after kGamesPerLife games.
class World {
 public:
  using State = TmWorldState;

  World(TmSpec spec, std::string id, int budget = kDefaultBudget)
      : spec_(std::move(spec)), schema_(make_schema(spec_)), id_(std::move(id)), budget_(budget) {
    spec_.check();
  }

  std::string id() const { return id_; }
  const VectorSchema& schema() const { return schema_; }
  Capabilities capabilities() const { return {false, true, true}; }
  const TmSpec& spec() const { return spec_; }
  int budget() const { return budget_; }

  State initial_state(std::uint64_t /*seed*/) const { return tm_initial(spec_); }
  Observation view(const State& s) const { return {s.last_observation, {s.last_reward}}; }

  Verdict correct(const State& s, const Vector& out) const {
    if (tm_halts(s, spec_, out, budget_)) return Verdict::accept();
    return Verdict::reject("deadlock: no answer within " + std::to_string(budget_) + " steps");
  }

  Transition<State> transition(const State& s, const Vector& out) const {
    State next = s;
    auto reward = respond(next, out);
    if (!reward) throw Error(Errc::kPrecondition, "transition called with an incorrect move");
    return {std::move(next), std::move(*reward)};
  }

  std::optional<Vector> respond(State& s, const Vector& out) const {
    if (finished(s)) return std::nullopt;
    const TmResponse r = tm_attempt(s, spec_, out, budget_);
    if (!r.accepted) return std::nullopt;
    SignalValue reward = r.reward;
    if (reward.is_concrete()) {
      s.game_step = 0;
      ++s.game_count;
    } else if (auto draw = tm_game_cap(s)) {
      reward = *draw;
    }
    s.last_reward = reward;
    return Vector{reward};
  }

  bool finished(const State& s) const { return s.game_count >= kGamesPerLife; }

  std::string serialize(const State& s) const { return tm::serialize(s); }

 private:
  TmSpec spec_;
  VectorSchema schema_;
  std::string id_;
  int budget_;
};

}  // namespace aidef::tm

#endif  // AIDEF_TM_WORLD_HPP_
