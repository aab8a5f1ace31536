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

#ifndef AIDEF_TICTACTOE_HPP_
#define AIDEF_TICTACTOE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "aidef/rng.hpp"
#include "aidef/signal.hpp"
#include "aidef/world.hpp"

namespace aidef::ttt {

// Tic-Tac-Toe seen through a one-cell eye. The device plays X and moves
// first; the world plays O uniformly at random right after each X.
//
// Input:   cell in {0 empty, 1 X, 2 O} under the eye.
// Reward:  game in {Nothing, 0 loss, 1 draw, 2 victory}.
// Output:  vertical {0 stay, 1 up, 2 down}, horizontal {0 stay, 1 left,
//          2 right}, put_cross {0,1}, new_game {0,1}; all four at once.

enum Cell : std::uint8_t { kEmpty = 0, kX = 1, kO = 2 };
enum class Phase : std::uint8_t { kInPlay = 0, kLoss = 1, kDraw = 2, kVictory = 3 };

enum OutputIndex : std::size_t { kVertical = 0, kHorizontal = 1, kPutCross = 2, kNewGame = 3 };

inline constexpr std::int64_t kLossReward = 0;
inline constexpr std::int64_t kDrawReward = 1;
inline constexpr std::int64_t kVictoryReward = 2;

struct TttState {
  std::array<std::uint8_t, 9> board{};
  std::uint8_t eye_row = 1;
  std::uint8_t eye_col = 1;
  Phase phase = Phase::kInPlay;
  std::optional<std::uint8_t> pending_reward;
  std::uint64_t opponent_rng = 0;

  std::uint8_t& at(int r, int c) { return board[static_cast<std::size_t>(r * 3 + c)]; }
  std::uint8_t at(int r, int c) const { return board[static_cast<std::size_t>(r * 3 + c)]; }
  std::uint8_t under_eye() const { return at(eye_row, eye_col); }

  friend bool operator==(const TttState&, const TttState&) = default;
};

struct TttOutput {
  std::int64_t vertical = 0;
  std::int64_t horizontal = 0;
  bool put_cross = false;
  bool new_game = false;

  static TttOutput from(const Vector& v) {
    return {v[kVertical].as_int(), v[kHorizontal].as_int(), v[kPutCross].as_int() == 1,
            v[kNewGame].as_int() == 1};
  }
  Vector to_vector() const {
    return {SignalValue::of(vertical), SignalValue::of(horizontal),
            SignalValue::of(put_cross ? 1 : 0), SignalValue::of(new_game ? 1 : 0)};
  }
};

inline const VectorSchema& schema() {
  static const VectorSchema kSchema{
      {SignalSpec::input("cell", ScalarKind::finite(3))},
      {SignalSpec::output("vertical", ScalarKind::finite(3)),
       SignalSpec::output("horizontal", ScalarKind::finite(3)),
       SignalSpec::output("put_cross", ScalarKind::boolean()),
       SignalSpec::output("new_game", ScalarKind::boolean())},
      {SignalSpec::reward("game", ScalarKind::finite(3))}};
  return kSchema;
}

inline TttState ttt_initial(std::uint64_t seed) {
  TttState s;
  s.opponent_rng = seed;
  return s;
}

inline bool has_line(const TttState& s, std::uint8_t mark) {
  static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                       {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
  for (const auto& line : kLines) {
    if (s.board[line[0]] == mark && s.board[line[1]] == mark && s.board[line[2]] == mark)
      return true;
  }
  return false;
}

inline bool board_full(const TttState& s) {
  for (auto c : s.board)
    if (c == kEmpty) return false;
  return true;
}

inline Observation ttt_view(const TttState& s) {
  return {{SignalValue::of(s.under_eye())},
          {s.pending_reward ? SignalValue::of(*s.pending_reward) : SignalValue::nothing()}};
}

/// A move is correct only if every sub-action is: put_cross needs an empty
/// cell in a running game, and the eye may not leave the board.
inline Verdict ttt_correct(const TttState& s, const TttOutput& out) {
  if (out.put_cross) {
    if (s.phase != Phase::kInPlay) return Verdict::reject("put_cross: game is over");
    if (s.under_eye() != kEmpty) return Verdict::reject("put_cross: cell is not empty");
  }
  if (out.vertical == 1 && s.eye_row == 0) return Verdict::reject("vertical: top wall");
  if (out.vertical == 2 && s.eye_row == 2) return Verdict::reject("vertical: bottom wall");
  if (out.horizontal == 1 && s.eye_col == 0) return Verdict::reject("horizontal: left wall");
  if (out.horizontal == 2 && s.eye_col == 2) return Verdict::reject("horizontal: right wall");
  return Verdict::accept();
}

namespace detail {

inline void end_game(TttState& s, Phase phase, std::int64_t reward) {
  s.phase = phase;
  s.pending_reward = static_cast<std::uint8_t>(reward);
}

inline void opponent_move(TttState& s) {
  std::array<std::uint8_t, 9> empties{};
  std::size_t n = 0;
  for (std::uint8_t i = 0; i < 9; ++i)
    if (s.board[i] == kEmpty) empties[n++] = i;
  s.opponent_rng = mix_seed(s.opponent_rng);
  s.board[empties[s.opponent_rng % n]] = kO;
}

}  // namespace detail

/// Applies a correct move: X first, then the opponent's reply, then the eye
/// motion, then new_game. A finished game's reward is pending until the next
/// transition.
inline Transition<TttState> ttt_transition(const TttState& state, const TttOutput& out) {
  TttState s = state;
  s.pending_reward.reset();
  if (out.put_cross) {
    s.board[static_cast<std::size_t>(s.eye_row * 3 + s.eye_col)] = kX;
    if (has_line(s, kX)) {
      detail::end_game(s, Phase::kVictory, kVictoryReward);
    } else if (board_full(s)) {
      detail::end_game(s, Phase::kDraw, kDrawReward);
    } else {
      detail::opponent_move(s);
      if (has_line(s, kO)) {
        detail::end_game(s, Phase::kLoss, kLossReward);
      } else if (board_full(s)) {
        detail::end_game(s, Phase::kDraw, kDrawReward);
      }
    }
  }
  if (out.vertical == 1) --s.eye_row;
  if (out.vertical == 2) ++s.eye_row;
  if (out.horizontal == 1) --s.eye_col;
  if (out.horizontal == 2) ++s.eye_col;
  if (out.new_game) {
    s.board.fill(kEmpty);
    s.phase = Phase::kInPlay;
  }
  Vector reward = ttt_view(s).rewards;
  return {std::move(s), std::move(reward)};
}

/// 9 board bytes row-major, eye row, eye col, phase, pending reward (0xff for
/// Nothing), then the opponent generator state as 8 little-endian bytes.
inline std::string serialize(const TttState& s) {
  std::string out;
  out.reserve(21);
  for (auto c : s.board) out.push_back(static_cast<char>(c));
  out.push_back(static_cast<char>(s.eye_row));
  out.push_back(static_cast<char>(s.eye_col));
  out.push_back(static_cast<char>(s.phase));
  out.push_back(static_cast<char>(s.pending_reward ? *s.pending_reward : 0xff));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((s.opponent_rng >> (8 * i)) & 0xff));
  return out;
}

class World {
 public:
  using State = TttState;

  std::string id() const { return "ttt-eye"; }
  const VectorSchema& schema() const { return ttt::schema(); }
  Capabilities capabilities() const { return {true, true, false}; }
  State initial_state(std::uint64_t seed) const { return ttt_initial(seed); }
  Observation view(const State& s) const { return ttt_view(s); }
  Verdict correct(const State& s, const Vector& out) const {
    return ttt_correct(s, TttOutput::from(out));
  }
  Transition<State> transition(const State& s, const Vector& out) const {
    return ttt_transition(s, TttOutput::from(out));
  }
  std::string serialize(const State& s) const { return ttt::serialize(s); }
};

}  // namespace aidef::ttt

#endif  // AIDEF_TICTACTOE_HPP_
