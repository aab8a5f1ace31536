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

#ifndef AIDEF_JSON_IO_HPP_
#define AIDEF_JSON_IO_HPP_

#include <cmath>
#include <string>

#include "aidef/errors.hpp"
#include "aidef/signal.hpp"
#include "json.hpp"

namespace aidef {

using Json = nlohmann::ordered_json;

// Wire encoding of a reading: integers and reals as JSON numbers, Nothing as
// null, Undef as the string "undef". Non-finite reals travel as strings.

inline Json value_to_json(const SignalValue& v) {
  switch (v.tag()) {
    case SignalValue::Tag::kInt: return v.as_int();
    case SignalValue::Tag::kReal: {
      const double x = v.as_real();
      if (std::isnan(x)) return "nan";
      if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
      return x;
    }
    case SignalValue::Tag::kUndef: return "undef";
    case SignalValue::Tag::kNothing: return nullptr;
  }
  return nullptr;
}

inline SignalValue value_from_json(const Json& j) {
  if (j.is_null()) return SignalValue::nothing();
  if (j.is_number_integer()) return SignalValue::of(j.get<std::int64_t>());
  if (j.is_number_float()) return SignalValue::of_real(j.get<double>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "undef") return SignalValue::undef();
    if (s == "nan") return SignalValue::of_real(std::nan(""));
    if (s == "inf") return SignalValue::of_real(HUGE_VAL);
    if (s == "-inf") return SignalValue::of_real(-HUGE_VAL);
  }
  throw Error(Errc::kCorruptTrace, "not a signal value: " + j.dump());
}

inline Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(value_to_json(x));
  return a;
}

inline Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::kCorruptTrace, "expected an array, got " + j.dump());
  Vector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(value_from_json(x));
  return v;
}

inline std::string kind_name(KindTag tag) {
  switch (tag) {
    case KindTag::kBool: return "bool";
    case KindTag::kFinite: return "finite";
    case KindTag::kInt: return "int";
    case KindTag::kReal: return "real";
  }
  return "?";
}

inline Json spec_to_json(const SignalSpec& s) {
  Json j;
  j["name"] = s.name;
  j["kind"] = kind_name(s.kind.tag());
  if (s.kind.tag() == KindTag::kFinite) j["k"] = s.kind.cardinality();
  j["allows_undef"] = s.allows_undef;
  j["allows_nothing"] = s.allows_nothing;
  return j;
}

inline SignalSpec spec_from_json(const Json& j, SignalRole role) {
  try {
    SignalSpec s;
    s.name = j.at("name").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "bool") {
      s.kind = ScalarKind::boolean();
    } else if (kind == "finite") {
      s.kind = ScalarKind::finite(j.at("k").get<std::int64_t>());
    } else if (kind == "int") {
      s.kind = ScalarKind::integer();
    } else if (kind == "real") {
      s.kind = ScalarKind::real();
    } else {
      throw Error(Errc::kCorruptTrace, "unknown kind '" + kind + "'");
    }
    s.role = role;
    s.allows_undef = j.at("allows_undef").get<bool>();
    s.allows_nothing = j.at("allows_nothing").get<bool>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kCorruptTrace, std::string("bad signal spec: ") + e.what());
  }
}

inline Json schema_to_json(const VectorSchema& schema) {
  Json j;
  auto part = [](const std::vector<SignalSpec>& specs) {
    Json a = Json::array();
    for (const auto& s : specs) a.push_back(spec_to_json(s));
    return a;
  };
  j["inputs"] = part(schema.inputs);
  j["outputs"] = part(schema.outputs);
  j["rewards"] = part(schema.rewards);
  return j;
}

inline VectorSchema schema_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::kCorruptTrace, "schema must be an object");
  auto part = [&](const char* key, SignalRole role) {
    std::vector<SignalSpec> specs;
    if (!j.contains(key) || !j[key].is_array())
      throw Error(Errc::kCorruptTrace, std::string("schema lacks '") + key + "'");
    for (const auto& s : j[key]) specs.push_back(spec_from_json(s, role));
    return specs;
  };
  VectorSchema schema{part("inputs", SignalRole::kInput), part("outputs", SignalRole::kOutput),
                      part("rewards", SignalRole::kReward)};
  try {
    schema.check();
  } catch (const Error& e) {
    throw Error(Errc::kCorruptTrace, e.what());
  }
  return schema;
}

}  // namespace aidef

#endif  // AIDEF_JSON_IO_HPP_
