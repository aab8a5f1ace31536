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

#ifndef AIDEF_TRACE_HPP_
#define AIDEF_TRACE_HPP_

#include <fstream>
#include <sstream>
#include <string>

#include "aidef/errors.hpp"
#include "aidef/json_io.hpp"
#include "aidef/life.hpp"

namespace aidef {

// JSON-lines life trace:
//   {"version":1,"schema":{...},"meta":{...}}          header
//   {"t":0,"in":[..],"bad":[[..],..],"out":[..],"rew":[..]}   one per step
//   {"rev":{"t":..,"sig":"..","new":..}}              revisions
//   {"death":true,"t":..,"attempts":..}               optional
//   {"end":true,"steps":N}                            footer

inline constexpr int kTraceVersion = 1;

inline std::string trace_to_string(const Life& life) {
  std::string out;
  Json header;
  header["version"] = kTraceVersion;
  header["schema"] = schema_to_json(life.schema);
  header["meta"] = Json{{"world", life.meta.world},
                        {"agent", life.meta.agent},
                        {"world_seed", life.meta.world_seed},
                        {"agent_seed", life.meta.agent_seed},
                        {"config", life.meta.config}};
  out += header.dump() + "\n";
  for (const auto& s : life.steps) {
    Json bad = Json::array();
    for (const auto& b : s.incorrect) bad.push_back(vector_to_json(b));
    Json j;
    j["t"] = s.t;
    j["in"] = vector_to_json(s.input);
    j["bad"] = std::move(bad);
    j["out"] = vector_to_json(s.output);
    j["rew"] = vector_to_json(s.reward);
    out += j.dump() + "\n";
  }
  for (const auto& r : life.revisions) {
    out += Json{{"rev", Json{{"t", r.t}, {"sig", r.signal}, {"new", value_to_json(r.value)}}}}.dump() +
           "\n";
  }
  if (life.death) {
    out += Json{{"death", true}, {"t", life.death->t}, {"attempts", life.death->attempts}}.dump() +
           "\n";
  }
  out += Json{{"end", true}, {"steps", life.steps.size()}}.dump() + "\n";
  return out;
}

namespace detail {

inline Vector read_vector(const Json& j, const char* key, const std::vector<SignalSpec>& specs,
                          std::size_t line) {
  if (!j.contains(key)) throw Error(Errc::kCorruptTrace, std::string("missing '") + key + "'", line);
  Vector v = vector_from_json(j[key]);
  if (v.size() != specs.size())
    throw Error(Errc::kCorruptTrace, std::string("'") + key + "' has wrong arity", line);
  for (std::size_t i = 0; i < v.size(); ++i) {
    // Undef is legal in recorded inputs only if the schema allows it.
    if (validate_value(specs[i], v[i]) != v[i])
      throw Error(Errc::kCorruptTrace, std::string("'") + key + "' is not normalised", line);
  }
  return v;
}

}  // namespace detail

inline Life trace_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  Life life;
  bool ended = false;

  auto parse = [&](const std::string& s) {
    try {
      return Json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kCorruptTrace, std::string("unparsable line: ") + e.what(), line);
    }
  };

  if (!std::getline(in, raw)) throw Error(Errc::kCorruptTrace, "empty trace", 1);
  ++line;
  {
    const Json header = parse(raw);
    if (!header.is_object() || !header.contains("version") || !header["version"].is_number_integer())
      throw Error(Errc::kCorruptTrace, "header lacks a version", line);
    if (header["version"].get<int>() != kTraceVersion)
      throw Error(Errc::kFormatVersionMismatch,
                  "trace version " + header["version"].dump() + ", expected " +
                      std::to_string(kTraceVersion),
                  line);
    try {
      life.schema = schema_from_json(header.at("schema"));
      const auto& meta = header.at("meta");
      life.meta.world = meta.at("world").get<std::string>();
      life.meta.agent = meta.at("agent").get<std::string>();
      life.meta.world_seed = meta.at("world_seed").get<std::uint64_t>();
      life.meta.agent_seed = meta.at("agent_seed").get<std::uint64_t>();
      life.meta.config = meta.at("config");
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kCorruptTrace, std::string("bad header: ") + e.what(), line);
    } catch (const Error& e) {
      throw Error(Errc::kCorruptTrace, e.what(), line);
    }
  }

  while (std::getline(in, raw)) {
    ++line;
    if (ended) throw Error(Errc::kCorruptTrace, "content after end marker", line);
    const Json j = parse(raw);
    if (!j.is_object()) throw Error(Errc::kCorruptTrace, "line is not an object", line);
    try {
      if (j.contains("end")) {
        if (j.at("steps").get<std::size_t>() != life.steps.size())
          throw Error(Errc::kCorruptTrace, "step count mismatch", line);
        ended = true;
      } else if (j.contains("death")) {
        life.death = DeathRecord{j.at("t").get<std::int64_t>(), j.at("attempts").get<std::size_t>()};
      } else if (j.contains("rev")) {
        const auto& r = j["rev"];
        life.add_revision(r.at("t").get<std::int64_t>(), r.at("sig").get<std::string>(),
                          value_from_json(r.at("new")));
      } else {
        if (life.death || !life.revisions.empty())
          throw Error(Errc::kCorruptTrace, "step after trailer lines", line);
        LifeStep s;
        s.t = j.at("t").get<std::int64_t>();
        if (s.t != static_cast<std::int64_t>(life.steps.size()))
          throw Error(Errc::kCorruptTrace, "t out of sequence", line);
        s.input = detail::read_vector(j, "in", life.schema.inputs, line);
        s.output = detail::read_vector(j, "out", life.schema.outputs, line);
        s.reward = detail::read_vector(j, "rew", life.schema.rewards, line);
        VectorSet seen;
        for (const auto& b : j.at("bad")) {
          Json wrapper{{"b", b}};
          Vector v = detail::read_vector(wrapper, "b", life.schema.outputs, line);
          if (!seen.insert(v).second)
            throw Error(Errc::kCorruptTrace, "incorrect move listed twice", line);
          s.incorrect.push_back(std::move(v));
        }
        life.steps.push_back(std::move(s));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kCorruptTrace, e.what(), line);
    } catch (const Error& e) {
      if (e.code() == Errc::kCorruptTrace && e.line() != 0) throw;
      throw Error(Errc::kCorruptTrace, e.what(), line);
    }
  }
  if (!ended) throw Error(Errc::kCorruptTrace, "truncated: no end marker", line + 1);
  return life;
}

inline void write_trace(const Life& life, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIo, "cannot open '" + path + "' for writing");
  out << trace_to_string(life);
  if (!out) throw Error(Errc::kIo, "write to '" + path + "' failed");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Life read_trace(const std::string& path) { return trace_from_string(read_file(path)); }

}  // namespace aidef

#endif  // AIDEF_TRACE_HPP_
