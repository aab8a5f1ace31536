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

// Command-line front end: run episodes, mine traces, check worlds, replay,
// score, and play by hand.

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aidef/aidef.hpp"

namespace {

using aidef::Errc;
using aidef::Error;
using aidef::Json;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitProtocol = 3;
constexpr int kExitFormat = 4;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kDuplicateIncorrectMove:
    case Errc::kAgentViolation:
    case Errc::kSchemaViolation:
    case Errc::kLifeComplete:
      return kExitProtocol;
    case Errc::kIo:
    case Errc::kCorruptTrace:
    case Errc::kFormatVersionMismatch:
      return kExitFormat;
    default:
      return kExitOther;
  }
}

void setup_logging() {
  auto logger = spdlog::stderr_logger_mt("aidef");
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("AIDEF_LOG"); env && *env) {
    const std::string name(env);
    const auto level = spdlog::level::from_str(name);
    if (level == spdlog::level::off && name != "off") {
      logger->warn("AIDEF_LOG={} is not a log level; using warn", name);
    } else {
      logger->set_level(level);
    }
  }
  spdlog::set_default_logger(logger);
}

std::vector<aidef::Implication> read_rules(const std::string& path) {
  std::istringstream in(aidef::read_file(path));
  std::vector<aidef::Implication> rules;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      rules.push_back(aidef::implication_from_json(Json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kCorruptTrace, path + ": bad rule: " + e.what(), n);
    }
  }
  return rules;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(Errc::kIo, "write to '" + path + "' failed");
}

// trace.jsonl -> trace-3.jsonl when several episodes share one --out.
std::string episode_path(const std::string& out, std::size_t k, std::size_t episodes) {
  if (out.empty() || episodes == 1) return out;
  std::filesystem::path p(out);
  auto name = p.stem().string() + "-" + std::to_string(k) + p.extension().string();
  return (p.parent_path() / name).string();
}

std::size_t incorrect_count(const aidef::Life& life) {
  std::size_t n = 0;
  for (const auto& s : life.steps) n += s.incorrect.size();
  return n;
}

// ---- run ------------------------------------------------------------------

struct RunArgs {
  std::string world = "ttt-eye";
  std::string agent = "random";
  std::string rules;
  std::size_t steps = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t episodes = 1;
  std::size_t jobs = 1;
  double epsilon = 0.0;
  double single_bias = 0.5;
};

Json run_one(const RunArgs& a, const std::vector<aidef::Implication>& rules, std::size_t k) {
  const auto world = aidef::make_world(a.world);
  const std::uint64_t seed = a.seed + k;
  std::unique_ptr<aidef::Agent> agent;
  if (a.agent == "random") {
    agent = std::make_unique<aidef::RandomAgent>(seed, a.single_bias);
  } else {
    agent = std::make_unique<aidef::MinerGuidedAgent>(rules, seed,
                                                      aidef::MinerAgentOptions{1.0, a.epsilon});
  }
  spdlog::debug("episode {}: world {} agent {} seed {}", k, a.world, a.agent, seed);
  const auto life = aidef::run_episode(world, *agent, a.steps, seed);
  const auto path = episode_path(a.out, k, a.episodes);
  if (!path.empty()) aidef::write_trace(life, path);

  const auto report = aidef::report_success(life);
  Json j;
  j["episode"] = k;
  j["world"] = a.world;
  j["agent"] = a.agent;
  j["seed"] = seed;
  j["steps"] = life.size();
  j["incorrect"] = incorrect_count(life);
  j["death"] = life.death.has_value();
  j["success"] = aidef::success_to_json(report.final_value);
  j["limit"] = aidef::success_to_json(report.limit);
  if (!path.empty()) j["trace"] = path;
  return j;
}

int cmd_run(const RunArgs& a) {
  if (a.agent != "random" && a.agent != "miner")
    throw Error(Errc::kPrecondition, "unknown agent '" + a.agent + "'");
  std::vector<aidef::Implication> rules;
  if (!a.rules.empty()) rules = read_rules(a.rules);
  if (a.agent == "miner" && rules.empty())
    spdlog::warn("miner agent without rules behaves like the random agent");

  std::vector<Json> results(a.episodes);
  std::vector<std::exception_ptr> errors(a.episodes);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < a.episodes;) {
      try {
        results[k] = run_one(a, rules, k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(a.jobs, 1, a.episodes);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t k = 0; k < a.episodes; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    std::cout << results[k].dump() << "\n";
  }
  return kExitOk;
}

// ---- mine -----------------------------------------------------------------

int cmd_mine(const std::string& trace, const aidef::MinerOptions& opts, const std::string& out) {
  const auto life = aidef::read_trace(trace);
  const auto rules = aidef::mine_implications(life, opts);
  spdlog::info("{} rules from {} steps", rules.size(), life.size());
  std::string text;
  for (const auto& r : rules) text += aidef::implication_to_json(r).dump() + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
    for (const auto& r : rules) std::cout << aidef::to_string(r) << "\n";
  }
  return kExitOk;
}

// ---- check-world ----------------------------------------------------------

int cmd_check(const std::string& id, std::size_t trials, std::size_t seeds, std::size_t probes) {
  const auto world = aidef::make_world(id);
  aidef::FuzzOptions opts;
  opts.seeds.clear();
  for (std::size_t i = 0; i < seeds; ++i) opts.seeds.push_back(i + 1);
  opts.trials = trials;
  opts.incorrect_per_state = probes;
  const auto report = aidef::check_world_assumptions(world, opts);
  for (const auto& w : report.warnings) spdlog::warn("{}", w);
  Json j;
  j["world"] = id;
  j["states"] = report.states_visited;
  j["incorrect_attempts"] = report.incorrect_attempts;
  j["results"] = aidef::report_to_json(report);
  std::cout << j.dump(2) << "\n";
  return report.ok() ? kExitOk : kExitAssumption;
}

// ---- replay / score -------------------------------------------------------

int cmd_replay(const std::string& trace) {
  const auto life = aidef::read_trace(trace);
  const auto world = aidef::make_world(life.meta.world);
  const auto result = aidef::replay_life(world, life);
  if (!result.ok) {
    std::cout << "replay failed at t=" << result.t << ": " << result.message << "\n";
    return kExitProtocol;
  }
  std::cout << "replay ok: " << life.size() << " steps, " << incorrect_count(life)
            << " incorrect attempts\n";
  return kExitOk;
}

int cmd_score(const std::string& trace, double tail_fraction) {
  const auto life = aidef::read_trace(trace);
  Json j = aidef::report_to_json(aidef::report_success(life, {tail_fraction, 1e-6}));
  j["incorrect"] = incorrect_count(life);
  j["death"] = life.death.has_value();
  std::cout << j.dump() << "\n";
  return kExitOk;
}

// ---- play -----------------------------------------------------------------

std::optional<aidef::Vector> parse_move(const std::string& line, std::size_t arity) {
  std::string s = line;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  aidef::Vector v;
  for (std::string tok; in >> tok;) {
    if (tok == "N" || tok == "-") {
      v.push_back(aidef::SignalValue::nothing());
      continue;
    }
    std::int64_t x = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
    v.push_back(aidef::SignalValue::of(x));
  }
  if (v.size() != arity) return std::nullopt;
  return v;
}

int cmd_play(const std::string& id, std::uint64_t seed, const std::string& out) {
  const auto world = aidef::make_world(id);
  aidef::Session<aidef::AnyWorld> session(world, seed);
  session.life().meta.agent = "human";
  const auto& schema = world.schema();

  std::cout << "world " << id << ". outputs:";
  for (const auto& s : schema.outputs) std::cout << " " << s.name << "(" << aidef::kind_name(s.kind.tag())
                                                 << (s.kind.is_enumerable() ? std::to_string(s.kind.cardinality()) : "") << ")";
  std::cout << "\nenter one value per output (N for Nothing), 'q' to stop\n";

  std::string line;
  while (!session.finished()) {
    std::cout << "t=" << session.time() << " input " << aidef::to_string(session.observation().inputs)
              << " reward " << aidef::to_string(session.observation().rewards);
    if (!session.tried_incorrect().empty()) {
      std::cout << " rejected";
      for (const auto& v : session.tried_incorrect()) std::cout << " " << aidef::to_string(v);
    }
    std::cout << "\n> " << std::flush;
    if (!std::getline(std::cin, line) || line == "q" || line == "quit") break;
    const auto move = parse_move(line, schema.outputs.size());
    if (!move) {
      std::cout << "expected " << schema.outputs.size() << " values\n";
      continue;
    }
    try {
      const auto r = session.attempt(*move);
      std::cout << (r.accepted ? "ok" : "incorrect: " + r.reason) << "\n";
    } catch (const Error& e) {
      if (e.code() != Errc::kSchemaViolation && e.code() != Errc::kDuplicateIncorrectMove) throw;
      std::cout << "refused: " << e.what() << "\n";
    }
  }
  const auto life = session.take_life();
  if (!out.empty()) aidef::write_trace(life, out);
  const auto report = aidef::report_success(life);
  std::cout << "steps " << life.size() << ", success " << aidef::to_string(report.final_value)
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"aidef: devices that learn from incorrect moves"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "run episodes and write life traces");
  run_cmd->add_option("--world", run.world, "world id: ttt-eye or tm:<seed>:<max_states>");
  run_cmd->add_option("--agent", run.agent, "random or miner")->check(CLI::IsMember({"random", "miner"}));
  run_cmd->add_option("--rules", run.rules, "rules file for the miner agent");
  run_cmd->add_option("--steps", run.steps, "accepted moves per episode")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed, "seed of the first episode");
  run_cmd->add_option("--out", run.out, "trace file");
  run_cmd->add_option("--episodes", run.episodes)->check(CLI::PositiveNumber);
  run_cmd->add_option("--jobs", run.jobs)->check(CLI::PositiveNumber);
  run_cmd->add_option("--epsilon", run.epsilon, "miner agent exploration rate")->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--single-bias", run.single_bias)->check(CLI::Range(0.0, 1.0));

  std::string trace, out;
  aidef::MinerOptions mine_opts;
  auto* mine_cmd = app.add_subcommand("mine", "mine implications from a trace");
  mine_cmd->add_option("--trace", trace)->required();
  mine_cmd->add_option("--max-atoms", mine_opts.max_atoms)->check(CLI::Range(1, 4));
  mine_cmd->add_option("--min-support", mine_opts.min_support);
  mine_cmd->add_option("--max-violation-rate", mine_opts.max_violation_rate)->check(CLI::Range(0.0, 1.0));
  mine_cmd->add_flag("--reward-atoms", mine_opts.reward_atoms);
  mine_cmd->add_flag("--next-input", mine_opts.next_input_consequents, "also mine next-input consequents");
  mine_cmd->add_option("--out", out, "rules file (JSON lines); stdout if omitted");

  std::string world_id = "ttt-eye";
  std::size_t trials = 1000, seeds = 4, probes = 1;
  auto* check_cmd = app.add_subcommand("check-world", "fuzz a world against the incorrect-move assumptions");
  check_cmd->add_option("--world", world_id)->required();
  check_cmd->add_option("--trials", trials, "states to visit")->check(CLI::PositiveNumber);
  check_cmd->add_option("--seeds", seeds, "walk restarts")->check(CLI::PositiveNumber);
  check_cmd->add_option("--probes", probes, "incorrect moves per state")->check(CLI::PositiveNumber);

  auto* replay_cmd = app.add_subcommand("replay", "re-run a trace through a fresh world");
  replay_cmd->add_option("--trace", trace)->required();

  double tail = 0.5;
  auto* score_cmd = app.add_subcommand("score", "success of a recorded life");
  score_cmd->add_option("--trace", trace)->required();
  score_cmd->add_option("--tail-fraction", tail)->check(CLI::Range(0.0, 1.0));

  std::uint64_t play_seed = 0;
  auto* play_cmd = app.add_subcommand("play", "be the device yourself");
  play_cmd->add_option("--world", world_id)->required();
  play_cmd->add_option("--seed", play_seed);
  play_cmd->add_option("--out", out, "save the life here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*mine_cmd) return cmd_mine(trace, mine_opts, out);
    if (*check_cmd) return cmd_check(world_id, trials, seeds, probes);
    if (*replay_cmd) return cmd_replay(trace);
    if (*score_cmd) return cmd_score(trace, tail);
    if (*play_cmd) return cmd_play(world_id, play_seed, out);
  } catch (const Error& e) {
    if (e.line() > 0) {
      spdlog::error("{} (line {})", e.what(), e.line());
    } else {
      spdlog::error("{}", e.what());
    }
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitOther;
  }
  return kExitOther;
}
