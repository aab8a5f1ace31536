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

#ifndef AIDEF_REGISTRY_HPP_
#define AIDEF_REGISTRY_HPP_

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "aidef/errors.hpp"
#include "aidef/tictactoe.hpp"
#include "aidef/tm_world.hpp"
#include "aidef/world.hpp"

namespace aidef {

namespace detail {

template <typename T>
T parse_number(std::string_view s, const std::string& id) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(Errc::kUnknownWorld, "bad number '" + std::string(s) + "' in world id '" + id + "'");
  return value;
}

}  // namespace detail

/// Builds a world from its id: "ttt-eye" or "tm:<seed>:<max_states>".
inline AnyWorld make_world(const std::string& id) {
  if (id == "ttt-eye") return AnyWorld(ttt::World{});
  if (id.starts_with("tm:")) {
    const std::string_view rest = std::string_view(id).substr(3);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw Error(Errc::kUnknownWorld, "expected tm:<seed>:<max_states>, got '" + id + "'");
    const auto seed = detail::parse_number<std::uint64_t>(rest.substr(0, colon), id);
    const auto states = detail::parse_number<int>(rest.substr(colon + 1), id);
    if (states < 1) throw Error(Errc::kUnknownWorld, "max_states must be >= 1 in '" + id + "'");
    return AnyWorld(tm::World(tm::random_tm_spec(seed, states), id));
  }
  throw Error(Errc::kUnknownWorld, "unknown world '" + id + "'");
}

}  // namespace aidef

#endif  // AIDEF_REGISTRY_HPP_
