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

#ifndef AIDEF_MINER_HPP_
#define AIDEF_MINER_HPP_

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "aidef/errors.hpp"
#include "aidef/json_io.hpp"
#include "aidef/life.hpp"
#include "aidef/signal.hpp"

namespace aidef {

// Dependencies without memory: implications whose antecedent is a
// conjunction of atoms over signals at this step (offset 0) or the previous
// one (offset -1), and whose consequent is bad_move(t+1) = 1.
//
// Every accepted output and every rejected attempt of a step is one example.
// For an output atom at offset 0 the example's own candidate output is
// tested; rejected attempts are positive examples, the accepted output is a
// negative one. Offset -1 output atoms read the previously accepted output.

inline const std::string kBadMove = "bad_move";

enum class Relation : std::uint8_t { kEq, kNe };

struct Atom {
  std::string signal;
  int offset = 0;  // 0 or -1
  Relation rel = Relation::kEq;
  std::int64_t value = 0;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Consequent literal signal(t + offset) = value. The default is
/// bad_move(t+1) = 1; an input signal name with offset 1 predicts the next
/// observation (experimental).
struct Consequent {
  std::string signal = kBadMove;
  int offset = 1;
  std::int64_t value = 1;

  bool is_bad_move() const { return signal == kBadMove; }
  friend auto operator<=>(const Consequent&, const Consequent&) = default;
  friend bool operator==(const Consequent&, const Consequent&) = default;
};

struct Implication {
  std::vector<Atom> antecedent;  // sorted
  Consequent consequent;
  std::size_t support = 0;
  std::size_t violations = 0;

  double violation_rate() const {
    return support == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(support);
  }
  friend bool operator==(const Implication&, const Implication&) = default;
};

struct RuleCounts {
  std::size_t support = 0;
  std::size_t violations = 0;
  friend bool operator==(const RuleCounts&, const RuleCounts&) = default;
};

struct MinerOptions {
  std::size_t max_atoms = 2;
  std::size_t min_support = 20;
  double max_violation_rate = 0.0;
  /// Admit previous-step reward readings as antecedent atoms.
  bool reward_atoms = false;
  /// Also mine input(t+1) = v consequents. Experimental.
  bool next_input_consequents = false;
};

std::string to_string(const Atom& a);
std::string to_string(const Implication& imp);

namespace detail {

enum class Source : std::uint8_t { kInput, kOutput, kReward };

struct SignalRef {
  Source source;
  std::size_t index;
};

inline std::optional<SignalRef> resolve(const VectorSchema& schema, const std::string& name) {
  if (auto i = index_of(schema.inputs, name)) return SignalRef{Source::kInput, *i};
  if (auto i = index_of(schema.outputs, name)) return SignalRef{Source::kOutput, *i};
  if (auto i = index_of(schema.rewards, name)) return SignalRef{Source::kReward, *i};
  return std::nullopt;
}

inline bool atom_holds(Relation rel, std::int64_t value, const SignalValue* v) {
  if (v == nullptr || !v->is_int()) return false;
  return rel == Relation::kEq ? v->as_int() == value : v->as_int() != value;
}

/// Readings an atom can see for one example.
struct Context {
  const Vector* input = nullptr;
  const Vector* prev_input = nullptr;
  const Vector* candidate = nullptr;
  const Vector* prev_output = nullptr;
  const Vector* prev_reward = nullptr;
};

inline const SignalValue* lookup(const Context& c, const SignalRef& ref, int offset) {
  const Vector* v = nullptr;
  switch (ref.source) {
    case Source::kInput: v = offset == 0 ? c.input : c.prev_input; break;
    case Source::kOutput: v = offset == 0 ? c.candidate : c.prev_output; break;
    case Source::kReward: v = offset == 0 ? nullptr : c.prev_reward; break;
  }
  return v ? &(*v)[ref.index] : nullptr;
}

using Bits = std::vector<std::uint64_t>;

inline std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

inline Bits bit_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

inline void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

}  // namespace detail

/// Candidate atoms for a schema: offsets {0, -1} over inputs and outputs.
/// Binary signals only get "=" atoms; wider finite signals get "=" and "!=".
inline std::vector<Atom> candidate_atoms(const VectorSchema& schema, bool reward_atoms = false) {
  std::vector<Atom> atoms;
  auto add = [&](const SignalSpec& s, std::initializer_list<int> offsets) {
    if (!s.kind.is_enumerable()) return;
    for (int off : offsets) {
      for (std::int64_t v = 0; v < s.kind.cardinality(); ++v) {
        atoms.push_back({s.name, off, Relation::kEq, v});
        if (s.kind.cardinality() > 2) atoms.push_back({s.name, off, Relation::kNe, v});
      }
    }
  };
  for (const auto& s : schema.inputs) add(s, {0, -1});
  for (const auto& s : schema.outputs) add(s, {0, -1});
  if (reward_atoms)
    for (const auto& s : schema.rewards) add(s, {-1});
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

/// Recounts support and violations of `imp` on `life` by a direct scan.
inline RuleCounts evaluate_implication(const Implication& imp, const Life& life) {
  if (imp.antecedent.empty())
    throw Error(Errc::kPrecondition, "implication needs a non-empty antecedent");
  std::vector<std::pair<detail::SignalRef, const Atom*>> refs;
  for (const auto& a : imp.antecedent) {
    auto ref = detail::resolve(life.schema, a.signal);
    if (!ref) throw Error(Errc::kUnknownSignal, "no signal '" + a.signal + "' in schema");
    refs.emplace_back(*ref, &a);
  }
  std::optional<std::size_t> target;
  if (!imp.consequent.is_bad_move()) {
    target = index_of(life.schema.inputs, imp.consequent.signal);
    if (!target)
      throw Error(Errc::kUnknownSignal, "no input signal '" + imp.consequent.signal + "'");
  }

  RuleCounts counts;
  std::vector<Vector> inputs;
  inputs.reserve(life.size());
  for (std::size_t t = 0; t < life.size(); ++t)
    inputs.push_back(life.resolved_input(static_cast<std::int64_t>(t)));

  for (std::size_t t = 0; t < life.size(); ++t) {
    const auto& step = life.steps[t];
    detail::Context c;
    c.input = &inputs[t];
    if (t > 0) {
      c.prev_input = &inputs[t - 1];
      c.prev_output = &life.steps[t - 1].output;
      c.prev_reward = &life.steps[t - 1].reward;
    }
    auto matches = [&](const Vector& candidate) {
      c.candidate = &candidate;
      for (const auto& [ref, atom] : refs) {
        if (!detail::atom_holds(atom->rel, atom->value, detail::lookup(c, ref, atom->offset)))
          return false;
      }
      return true;
    };
    if (imp.consequent.is_bad_move()) {
      for (const auto& bad : step.incorrect) {
        if (matches(bad)) ++counts.support;
      }
      if (matches(step.output)) {
        ++counts.support;
        if (imp.consequent.value == 1) ++counts.violations;
      }
      if (imp.consequent.value != 1) {
        for (const auto& bad : step.incorrect)
          if (matches(bad)) ++counts.violations;
      }
    } else if (t + 1 < life.size() && matches(step.output)) {
      ++counts.support;
      const auto& next = inputs[t + 1][*target];
      if (!(next.is_int() && next.as_int() == imp.consequent.value)) ++counts.violations;
    }
  }
  return counts;
}

namespace detail {

/// Per-atom bitsets over the examples of one consequent.
struct ExampleTable {
  std::size_t size = 0;
  std::vector<Bits> atom_bits;
  Bits positive;
};

inline ExampleTable build_table(const Life& life, const std::vector<Atom>& atoms,
                                const Consequent& consequent,
                                const std::vector<Vector>& inputs) {
  std::vector<SignalRef> refs;
  for (const auto& a : atoms) refs.push_back(*resolve(life.schema, a.signal));
  std::optional<std::size_t> target;
  if (!consequent.is_bad_move()) target = index_of(life.schema.inputs, consequent.signal);

  std::vector<Context> examples;
  std::vector<bool> labels;
  for (std::size_t t = 0; t < life.size(); ++t) {
    const auto& step = life.steps[t];
    Context c;
    c.input = &inputs[t];
    if (t > 0) {
      c.prev_input = &inputs[t - 1];
      c.prev_output = &life.steps[t - 1].output;
      c.prev_reward = &life.steps[t - 1].reward;
    }
    if (consequent.is_bad_move()) {
      for (const auto& bad : step.incorrect) {
        c.candidate = &bad;
        examples.push_back(c);
        labels.push_back(consequent.value == 1);
      }
      c.candidate = &step.output;
      examples.push_back(c);
      labels.push_back(consequent.value != 1);
    } else if (t + 1 < life.size()) {
      c.candidate = &step.output;
      examples.push_back(c);
      const auto& next = inputs[t + 1][*target];
      labels.push_back(next.is_int() && next.as_int() == consequent.value);
    }
  }

  ExampleTable table;
  table.size = examples.size();
  const std::size_t words = (examples.size() + 63) / 64;
  table.positive.assign(words, 0);
  table.atom_bits.assign(atoms.size(), Bits(words, 0));
  for (std::size_t e = 0; e < examples.size(); ++e) {
    if (labels[e]) set_bit(table.positive, e);
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (atom_holds(atoms[a].rel, atoms[a].value, lookup(examples[e], refs[a], atoms[a].offset)))
        set_bit(table.atom_bits[a], e);
    }
  }
  return table;
}

inline bool is_subset(const std::vector<Atom>& small, const std::vector<Atom>& big) {
  return small.size() < big.size() &&
         std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace detail

/// Shortest implications meeting the support and violation thresholds.
/// Antecedents that strictly contain another surviving antecedent for the
/// same consequent are dropped. Ranked by atom count, then violation rate,
/// then support (descending).
inline std::vector<Implication> mine_implications(const Life& life, const MinerOptions& opts = {}) {
  if (life.empty()) throw Error(Errc::kEmptyLife, "cannot mine an empty life");
  if (opts.max_atoms < 1) throw Error(Errc::kPrecondition, "max_atoms must be >= 1");

  const auto atoms = candidate_atoms(life.schema, opts.reward_atoms);
  std::vector<Vector> inputs;
  inputs.reserve(life.size());
  for (std::size_t t = 0; t < life.size(); ++t)
    inputs.push_back(life.resolved_input(static_cast<std::int64_t>(t)));

  std::vector<Consequent> consequents = {Consequent{}};
  if (opts.next_input_consequents) {
    for (const auto& s : life.schema.inputs) {
      if (!s.kind.is_enumerable()) continue;
      for (std::int64_t v = 0; v < s.kind.cardinality(); ++v) consequents.push_back({s.name, 1, v});
    }
  }

  std::vector<Implication> found;
  for (const auto& consequent : consequents) {
    const auto table = detail::build_table(life, atoms, consequent, inputs);
    std::vector<Implication> local;
    std::vector<std::size_t> chosen;

    // Depth-first over atom index combinations; support is anti-monotone, so
    // a conjunction below min_support is never extended.
    auto dfs = [&](auto&& self, std::size_t start, const detail::Bits& mask) -> void {
      for (std::size_t a = start; a < atoms.size(); ++a) {
        detail::Bits next = chosen.empty() ? table.atom_bits[a] : detail::bit_and(mask, table.atom_bits[a]);
        const std::size_t support = detail::popcount(next);
        if (support < opts.min_support || support == 0) continue;
        chosen.push_back(a);
        const std::size_t positives = detail::popcount(detail::bit_and(next, table.positive));
        const std::size_t violations = support - positives;
        const double rate = static_cast<double>(violations) / static_cast<double>(support);
        if (rate <= opts.max_violation_rate) {
          Implication imp;
          for (auto i : chosen) imp.antecedent.push_back(atoms[i]);
          imp.consequent = consequent;
          imp.support = support;
          imp.violations = violations;
          local.push_back(std::move(imp));
        } else if (chosen.size() < opts.max_atoms) {
          self(self, a + 1, next);
        }
        chosen.pop_back();
      }
    };
    dfs(dfs, 0, {});

    std::stable_sort(local.begin(), local.end(), [](const auto& x, const auto& y) {
      return x.antecedent.size() < y.antecedent.size();
    });
    std::vector<Implication> minimal;
    for (auto& imp : local) {
      const bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const auto& m) {
        return detail::is_subset(m.antecedent, imp.antecedent);
      });
      if (!redundant) minimal.push_back(std::move(imp));
    }
    for (auto& imp : minimal) found.push_back(std::move(imp));
  }

  std::sort(found.begin(), found.end(), [](const Implication& x, const Implication& y) {
    // violation rates compared as cross products to stay exact
    const auto lhs = static_cast<std::uint64_t>(x.violations) * y.support;
    const auto rhs = static_cast<std::uint64_t>(y.violations) * x.support;
    if (x.antecedent.size() != y.antecedent.size()) return x.antecedent.size() < y.antecedent.size();
    if (lhs != rhs) return lhs < rhs;
    if (x.support != y.support) return x.support > y.support;
    return std::tie(x.antecedent, x.consequent) < std::tie(y.antecedent, y.consequent);
  });
  return found;
}

/// Readings around a decision: the previous step (absent at t = 0) and the
/// current input.
struct DecisionWindow {
  std::optional<Vector> prev_input;
  std::optional<Vector> prev_output;
  std::optional<Vector> prev_reward;
  Vector input;
};

/// Zero-violation bad_move rules compiled against one schema.
class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(const std::vector<Implication>& rules, const VectorSchema& schema) {
    for (const auto& r : rules) {
      if (!r.consequent.is_bad_move() || r.consequent.value != 1 || r.violations != 0) continue;
      Compiled c;
      for (const auto& a : r.antecedent) {
        auto ref = detail::resolve(schema, a.signal);
        if (!ref) throw Error(Errc::kUnknownSignal, "no signal '" + a.signal + "' in schema");
        c.atoms.push_back({*ref, a});
      }
      if (!c.atoms.empty()) compiled_.push_back(std::move(c));
    }
  }

  bool empty() const { return compiled_.empty(); }
  std::size_t size() const { return compiled_.size(); }

  bool predicts_incorrect(const DecisionWindow& w, const Vector& candidate) const {
    detail::Context c;
    c.input = &w.input;
    c.prev_input = w.prev_input ? &*w.prev_input : nullptr;
    c.prev_output = w.prev_output ? &*w.prev_output : nullptr;
    c.prev_reward = w.prev_reward ? &*w.prev_reward : nullptr;
    c.candidate = &candidate;
    for (const auto& rule : compiled_) {
      bool all = true;
      for (const auto& [ref, atom] : rule.atoms) {
        if (!detail::atom_holds(atom.rel, atom.value, detail::lookup(c, ref, atom.offset))) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  }

 private:
  struct Compiled {
    std::vector<std::pair<detail::SignalRef, Atom>> atoms;
  };
  std::vector<Compiled> compiled_;
};

/// True iff some zero-violation bad_move rule fires for `candidate`.
inline bool predict_incorrect(const std::vector<Implication>& rules, const VectorSchema& schema,
                              const DecisionWindow& window, const Vector& candidate) {
  return RuleSet(rules, schema).predicts_incorrect(window, candidate);
}

inline Json implication_to_json(const Implication& imp) {
  Json j;
  Json ifs = Json::array();
  for (const auto& a : imp.antecedent) {
    Json x;
    x["sig"] = a.signal;
    x["off"] = a.offset;
    x["rel"] = a.rel == Relation::kEq ? "=" : "!=";
    x["val"] = a.value;
    ifs.push_back(std::move(x));
  }
  j["if"] = std::move(ifs);
  j["then"] = Json{{"sig", imp.consequent.signal},
                   {"off", imp.consequent.offset},
                   {"val", imp.consequent.value}};
  j["support"] = imp.support;
  j["violations"] = imp.violations;
  return j;
}

inline Implication implication_from_json(const Json& j) {
  try {
    Implication imp;
    for (const auto& x : j.at("if")) {
      const auto rel = x.at("rel").get<std::string>();
      if (rel != "=" && rel != "!=") throw Error(Errc::kCorruptTrace, "bad relation '" + rel + "'");
      imp.antecedent.push_back({x.at("sig").get<std::string>(), x.at("off").get<int>(),
                                rel == "=" ? Relation::kEq : Relation::kNe,
                                x.at("val").get<std::int64_t>()});
    }
    std::sort(imp.antecedent.begin(), imp.antecedent.end());
    const auto& then = j.at("then");
    imp.consequent = {then.at("sig").get<std::string>(), then.at("off").get<int>(),
                      then.at("val").get<std::int64_t>()};
    imp.support = j.at("support").get<std::size_t>();
    imp.violations = j.at("violations").get<std::size_t>();
    return imp;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kCorruptTrace, std::string("bad rule: ") + e.what());
  }
}

inline std::string to_string(const Atom& a) {
  std::string s = a.signal + (a.offset == 0 ? "(t)" : "(t-1)");
  s += a.rel == Relation::kEq ? "=" : "!=";
  return s + std::to_string(a.value);
}

inline std::string to_string(const Implication& imp) {
  std::string s;
  for (std::size_t i = 0; i < imp.antecedent.size(); ++i) {
    if (i) s += ", ";
    s += to_string(imp.antecedent[i]);
  }
  s += " => " + imp.consequent.signal + "(t+" + std::to_string(imp.consequent.offset) + ")=" +
       std::to_string(imp.consequent.value);
  return s + "  [support " + std::to_string(imp.support) + ", violations " +
         std::to_string(imp.violations) + "]";
}

}  // namespace aidef

#endif  // AIDEF_MINER_HPP_
