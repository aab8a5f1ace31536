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

#ifndef AIDEF_AIDEF_HPP_
#define AIDEF_AIDEF_HPP_

#include "aidef/agents.hpp"
#include "aidef/assumptions.hpp"
#include "aidef/errors.hpp"
#include "aidef/json_io.hpp"
#include "aidef/life.hpp"
#include "aidef/miner.hpp"
#include "aidef/registry.hpp"
#include "aidef/rng.hpp"
#include "aidef/runner.hpp"
#include "aidef/signal.hpp"
#include "aidef/success.hpp"
#include "aidef/tictactoe.hpp"
#include "aidef/tm_world.hpp"
#include "aidef/trace.hpp"
#include "aidef/world.hpp"

#endif  // AIDEF_AIDEF_HPP_
