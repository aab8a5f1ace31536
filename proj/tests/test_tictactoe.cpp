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

#include <algorithm>
#include <set>

#include "aidef/agents.hpp"
#include "aidef/assumptions.hpp"
#include "aidef/rng.hpp"
#include "aidef/runner.hpp"
#include "aidef/tictactoe.hpp"

namespace aidef::ttt {
namespace {

// Legality oracle written straight from the rules, independent of
// ttt_correct: simulate the eye's destination and check it stays on the
// 3x3 board; putting an X needs an empty cell in a running game.
bool oracle_legal(const TttState& s, int vertical, int horizontal, int put, int /*new_game*/) {
  const int dr[] = {0, -1, 1};
  const int dc[] = {0, -1, 1};
  const int row = s.eye_row + dr[vertical];
  const int col = s.eye_col + dc[horizontal];
  if (row < 0 || row > 2 || col < 0 || col > 2) return false;
  if (put == 1) {
    if (s.phase != Phase::kInPlay) return false;
    if (s.board[static_cast<std::size_t>(s.eye_row * 3 + s.eye_col)] != kEmpty) return false;
  }
  return true;
}

std::set<Vector> oracle_moves(const TttState& s) {
  std::set<Vector> out;
  for (int v = 0; v < 3; ++v)
    for (int h = 0; h < 3; ++h)
      for (int p = 0; p < 2; ++p)
        for (int n = 0; n < 2; ++n)
          if (oracle_legal(s, v, h, p, n))
            out.insert({SignalValue::of(v), SignalValue::of(h), SignalValue::of(p), SignalValue::of(n)});
  return out;
}

TttState random_state(Rng& rng) {
  TttState s = ttt_initial(rng.next());
  for (auto& c : s.board) c = static_cast<std::uint8_t>(rng.uniform(3));
  s.eye_row = static_cast<std::uint8_t>(rng.uniform(3));
  s.eye_col = static_cast<std::uint8_t>(rng.uniform(3));
  s.phase = static_cast<Phase>(rng.uniform(4));
  return s;
}

TEST(TttInitial, CenterEyeEmptyBoard) {
  const auto s = ttt_initial(1);
  EXPECT_EQ(s.eye_row, 1);
  EXPECT_EQ(s.eye_col, 1);
  EXPECT_EQ(s.phase, Phase::kInPlay);
  for (auto c : s.board) EXPECT_EQ(c, kEmpty);
  EXPECT_EQ(serialize(ttt_initial(9)), serialize(ttt_initial(9)));
  const auto a = serialize(ttt_initial(1));
  const auto b = serialize(ttt_initial(2));
  EXPECT_EQ(a.size(), 21u);
  EXPECT_EQ(a.substr(0, 13), b.substr(0, 13));
  EXPECT_NE(a.substr(13), b.substr(13));
}

TEST(TttView, CellAndReward) {
  auto s = ttt_initial(1);
  EXPECT_EQ(ttt_view(s).inputs, Vector{SignalValue::of(0)});
  EXPECT_TRUE(ttt_view(s).rewards[0].is_nothing());
  s.at(1, 1) = kX;
  EXPECT_EQ(ttt_view(s).inputs, Vector{SignalValue::of(1)});
  s.at(1, 1) = kO;
  EXPECT_EQ(ttt_view(s).inputs, Vector{SignalValue::of(2)});
}

TEST(TttCorrect, Examples) {
  auto s = ttt_initial(1);
  s.at(1, 1) = kX;
  EXPECT_FALSE(ttt_correct(s, {0, 0, true, false}));
  EXPECT_EQ(ttt_correct(s, {0, 0, true, false}).reason, "put_cross: cell is not empty");
  s.eye_row = 0;
  s.eye_col = 1;
  EXPECT_FALSE(ttt_correct(s, {1, 0, false, false}));
  EXPECT_TRUE(ttt_correct(s, {0, 0, false, false}));
  // an empty cell does not rescue a move that walks into the wall
  EXPECT_FALSE(ttt_correct(s, {1, 0, true, false}));
  EXPECT_EQ(ttt_correct(s, {1, 0, true, false}).reason, "vertical: top wall");
  s.phase = Phase::kLoss;
  EXPECT_FALSE(ttt_correct(s, {0, 0, true, false}));
  EXPECT_TRUE(ttt_correct(s, {0, 0, false, true}));
}

TEST(TttCorrect, IdleAndNewGameAlwaysLegal) {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const auto s = random_state(rng);
    EXPECT_TRUE(ttt_correct(s, {0, 0, false, false}));
    EXPECT_TRUE(ttt_correct(s, {0, 0, false, true}));
  }
}

TEST(TttLegalMoves, InitialStateCount) {
  // Oracle: at the centre of an empty board nothing is blocked, so all
  // 3 * 3 * 2 * 2 combinations are legal.
  const auto s = ttt_initial(1);
  EXPECT_EQ(oracle_moves(s).size(), 36u);
  EXPECT_EQ(legal_moves(World{}, s).size(), 36u);
}

TEST(TttLegalMoves, MatchesOracle) {
  Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_state(rng);
    const auto legal = legal_moves(World{}, s);
    EXPECT_EQ(std::set<Vector>(legal.begin(), legal.end()), oracle_moves(s));
  }
}

TEST(TttTransition, Victory) {
  auto s = ttt_initial(1);
  s.at(0, 0) = kX;
  s.at(0, 1) = kX;
  s.at(1, 0) = kO;
  s.at(1, 1) = kO;
  s.eye_row = 0;
  s.eye_col = 2;
  const auto next = ttt_transition(s, {0, 0, true, false});
  EXPECT_EQ(next.state.phase, Phase::kVictory);
  EXPECT_EQ(next.reward, Vector{SignalValue::of(2)});
  EXPECT_EQ(ttt_view(next.state).rewards, Vector{SignalValue::of(2)});
  const auto after = ttt_transition(next.state, {0, 0, false, true});
  EXPECT_TRUE(after.reward[0].is_nothing());
  EXPECT_EQ(after.state.phase, Phase::kInPlay);
}

TEST(TttTransition, LossByOpponent) {
  auto s = ttt_initial(5);
  // O O _ / X X O / X O _ ; X goes to (2,2), O is forced into (0,2).
  const std::uint8_t board[9] = {kO, kO, kEmpty, kX, kX, kO, kX, kO, kEmpty};
  std::copy(board, board + 9, s.board.begin());
  s.eye_row = 2;
  s.eye_col = 2;
  const auto next = ttt_transition(s, {0, 0, true, false});
  EXPECT_EQ(next.state.at(0, 2), kO);
  EXPECT_EQ(next.state.phase, Phase::kLoss);
  EXPECT_EQ(next.reward, Vector{SignalValue::of(0)});
}

TEST(TttTransition, DrawOnFullBoard) {
  auto s = ttt_initial(5);
  const std::uint8_t board[9] = {kX, kO, kX, kX, kO, kO, kO, kX, kEmpty};
  std::copy(board, board + 9, s.board.begin());
  s.eye_row = 2;
  s.eye_col = 2;
  const auto next = ttt_transition(s, {0, 0, true, false});
  EXPECT_EQ(next.state.phase, Phase::kDraw);
  EXPECT_EQ(next.reward, Vector{SignalValue::of(1)});
}

TEST(TttTransition, NewGameKeepsEye) {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_state(rng);
    const auto next = ttt_transition(s, {0, 0, false, true});
    EXPECT_EQ(next.state.eye_row, s.eye_row);
    EXPECT_EQ(next.state.eye_col, s.eye_col);
    EXPECT_EQ(next.state.phase, Phase::kInPlay);
    for (auto c : next.state.board) EXPECT_EQ(c, kEmpty);
  }
}

TEST(TttTransition, DiagonalMotion) {
  const auto s = ttt_initial(1);
  const auto next = ttt_transition(s, {1, 1, false, false});
  EXPECT_EQ(next.state.eye_row, 0);
  EXPECT_EQ(next.state.eye_col, 0);
  EXPECT_EQ(next.state.board, s.board);
}

TEST(TttTransition, CrossIsPlacedBeforeMoving) {
  const auto s = ttt_initial(1);
  const auto next = ttt_transition(s, {2, 2, true, false});
  EXPECT_EQ(next.state.at(1, 1), kX);
  EXPECT_EQ(next.state.eye_row, 2);
  EXPECT_EQ(next.state.eye_col, 2);
}

TEST(TttInvariants, MarkBalanceAndTermination) {
  Rng rng(24);
  World world;
  for (int game = 0; game < 200; ++game) {
    auto s = ttt_initial(rng.next());
    int crosses = 0;
    int steps = 0;
    while (s.phase == Phase::kInPlay) {
      auto legal = legal_moves(world, s);
      std::erase_if(legal, [](const Vector& v) { return v[kNewGame].as_int() == 1; });
      const auto& m = legal[rng.uniform(legal.size())];
      crosses += m[kPutCross].as_int() == 1;
      s = ttt_transition(s, TttOutput::from(m)).state;
      ++steps;
      int x = 0, o = 0;
      for (auto c : s.board) {
        x += c == kX;
        o += c == kO;
      }
      if (s.phase == Phase::kInPlay) {
        EXPECT_TRUE(x - o == 0 || x - o == 1);
        EXPECT_FALSE(has_line(s, kX) || has_line(s, kO) || board_full(s));
      } else {
        EXPECT_TRUE(has_line(s, kX) || has_line(s, kO) || board_full(s));
      }
    }
    EXPECT_LE(crosses, 9);
    EXPECT_LE(steps, 200);
  }
}

TEST(TttWorld, PassesAssumptionFuzz) {
  FuzzOptions opts;
  opts.seeds = {1, 2, 3, 4};
  opts.trials = 1000;
  const auto report = check_world_assumptions(World{}, opts);
  EXPECT_TRUE(report.ok());
  for (int a : {1, 2, 4}) EXPECT_EQ(report.at(a).status, AssumptionStatus::kPass) << a;
  EXPECT_GT(report.incorrect_attempts, 500u);
}

TEST(TttWorld, PutCrossOnOccupiedCellNeverAccepted) {
  RandomAgent agent(31);
  const auto life = run_episode(World{}, agent, 1500, 31);
  std::size_t rejected = 0;
  for (const auto& step : life.steps) {
    const bool occupied = step.input[0].as_int() != 0;
    if (occupied) {
      EXPECT_EQ(step.output[kPutCross].as_int(), 0) << "t=" << step.t;
    }
    for (const auto& bad : step.incorrect) rejected += occupied && bad[kPutCross].as_int() == 1;
  }
  EXPECT_GT(rejected, 20u);
}

}  // namespace
}  // namespace aidef::ttt
