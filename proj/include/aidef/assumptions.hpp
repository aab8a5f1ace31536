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

#ifndef AIDEF_ASSUMPTIONS_HPP_
#define AIDEF_ASSUMPTIONS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aidef/json_io.hpp"
#include "aidef/rng.hpp"
#include "aidef/world.hpp"

namespace aidef {

enum class AssumptionStatus { kPass, kFail, kNotGuaranteed };

inline const char* status_name(AssumptionStatus s) {
  switch (s) {
    case AssumptionStatus::kPass: return "pass";
    case AssumptionStatus::kFail: return "fail";
    case AssumptionStatus::kNotGuaranteed: return "not_guaranteed";
  }
  return "?";
}

struct Counterexample {
  std::string state;  // hex of the canonical serialization
  Vector output;
  std::string detail;
};

struct AssumptionResult {
  int assumption = 0;
  AssumptionStatus status = AssumptionStatus::kPass;
  std::optional<Counterexample> counterexample;
  std::size_t checks = 0;
};

struct AssumptionReport {
  std::vector<AssumptionResult> results;
  std::vector<std::string> warnings;
  std::size_t states_visited = 0;
  std::size_t incorrect_attempts = 0;

  const AssumptionResult& at(int assumption) const {
    for (const auto& r : results)
      if (r.assumption == assumption) return r;
    throw Error(Errc::kPrecondition, "no result for assumption " + std::to_string(assumption));
  }
  bool ok() const {
    for (const auto& r : results)
      if (r.status == AssumptionStatus::kFail) return false;
    return true;
  }
};

inline std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 15]);
  }
  return out;
}

inline Json report_to_json(const AssumptionReport& report) {
  Json a = Json::array();
  for (const auto& r : report.results) {
    Json j;
    j["assumption"] = r.assumption;
    j["status"] = status_name(r.status);
    if (r.counterexample) {
      Json c;
      c["state"] = r.counterexample->state;
      c["output"] = vector_to_json(r.counterexample->output);
      c["detail"] = r.counterexample->detail;
      j["counterexample"] = std::move(c);
    } else {
      j["counterexample"] = nullptr;
    }
    j["checks"] = r.checks;
    a.push_back(std::move(j));
  }
  return a;
}

struct FuzzOptions {
  std::vector<std::uint64_t> seeds = {1};
  /// Number of states visited in total, spread over random walks.
  std::size_t trials = 1000;
  /// Accepted moves per walk before restarting from the next seed.
  std::size_t horizon = 200;
  /// Incorrect moves probed in every visited state.
  std::size_t incorrect_per_state = 1;
  std::uint64_t walk_seed = 0;
};

/// Fuzzes a world against the incorrect-move assumptions:
///   1. an incorrect move leaves the state unchanged,
///   2. a rejected move stays incorrect when repeated in the same state,
///   4. some move is correct in every reachable state.
/// Assumption 1 is probed through the world's raw in-place interface, so a
/// world that mutates on rejection is caught. Worlds that declare death
/// possible get "not_guaranteed" for assumption 4.
template <WorldModel W>
AssumptionReport check_world_assumptions(const W& world, const FuzzOptions& opts) {
  AssumptionResult a1, a2, a4;
  a1.assumption = 1;
  a2.assumption = 2;
  a4.assumption = 4;
  AssumptionReport report;
  const Capabilities caps = world.capabilities();
  if (!caps.guarantees_nonempty_correct || caps.death_possible) {
    a4.status = AssumptionStatus::kNotGuaranteed;
    report.warnings.push_back("world " + world.id() +
                              " does not guarantee a correct move in every state; assumption 4 "
                              "is not checked as a requirement");
  }
  const std::vector<Vector> outputs = enumerate_outputs(world.schema());
  Rng rng(mix_seed(opts.walk_seed));

  auto fail = [](AssumptionResult& r, const std::string& state, const Vector& out,
                 std::string detail) {
    if (r.status == AssumptionStatus::kFail) return;
    r.status = AssumptionStatus::kFail;
    r.counterexample = Counterexample{to_hex(state), out, std::move(detail)};
  };

  std::size_t seed_index = 0;
  while (report.states_visited < opts.trials && !opts.seeds.empty()) {
    auto state = world.initial_state(opts.seeds[seed_index++ % opts.seeds.size()]);
    for (std::size_t step = 0; step < opts.horizon && report.states_visited < opts.trials;
         ++step) {
      if (world_finished(world, state)) break;
      ++report.states_visited;
      const std::string before = world.serialize(state);

      std::vector<const Vector*> legal, illegal;
      for (const auto& o : outputs) {
        (world.correct(state, o) ? legal : illegal).push_back(&o);
      }
      if (world.serialize(state) != before) {
        fail(a1, before, {}, "correct() mutated the state");
      }

      ++a4.checks;
      if (legal.empty()) {
        if (a4.status == AssumptionStatus::kNotGuaranteed) {
          if (!a4.counterexample)
            a4.counterexample = Counterexample{to_hex(before), {}, "death state reached"};
        } else {
          fail(a4, before, {}, "no correct move");
        }
        break;
      }

      for (std::size_t k = 0; k < opts.incorrect_per_state && !illegal.empty(); ++k) {
        const std::size_t pick = rng.uniform(illegal.size());
        const Vector& bad = *illegal[pick];
        illegal.erase(illegal.begin() + static_cast<std::ptrdiff_t>(pick));
        ++report.incorrect_attempts;

        auto probe = state;
        ++a1.checks;
        const auto response = raw_respond(world, probe, bad);
        if (response.has_value()) {
          fail(a1, before, bad, "raw interface accepted a move correct() rejects");
        } else if (world.serialize(probe) != before) {
          fail(a1, before, bad, "state changed after an incorrect move");
        }

        ++a2.checks;
        if (world.correct(probe, bad)) {
          fail(a2, before, bad, "move became correct when repeated");
        } else if (raw_respond(world, probe, bad).has_value()) {
          fail(a2, before, bad, "repeated move accepted by the raw interface");
        }
      }

      const Vector& move = *legal[rng.uniform(legal.size())];
      state = world.transition(state, move).state;
    }
  }
  report.results = {a1, a2, a4};
  return report;
}

}  // namespace aidef

#endif  // AIDEF_ASSUMPTIONS_HPP_
