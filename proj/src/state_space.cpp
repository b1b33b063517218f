#include "ebref/state_space.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ebref {

ValuationSpace::ValuationSpace(const Machine& m) : m_(&m), size_(1) {
  for (const auto& v : m.variables) {
    const SortDecl& s = m.sorts[static_cast<std::size_t>(v.sort)];
    radix_.push_back(s.size());
    lo_.push_back(s.is_range ? s.lo : 0);
    size_ *= s.size();
  }
}

Valuation ValuationSpace::at(std::int64_t idx) const {
  Valuation v(radix_.size());
  for (std::size_t i = radix_.size(); i-- > 0;) {
    v[i] = lo_[i] + idx % radix_[i];
    idx /= radix_[i];
  }
  return v;
}

std::int64_t ValuationSpace::index_of(const Valuation& v) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i)
    idx = idx * radix_[i] + (v[i] - lo_[i]);
  return idx;
}

bool eval_guard(const Machine& m, const EventDecl& e, const Valuation& s) {
  MachineEnv env(m, &s, nullptr);
  return eval_bool(e.guard, env);
}

bool eval_body(const Machine& m, const EventDecl& e, const Valuation& before,
               const Valuation& after) {
  MachineEnv env(m, &before, &after);
  return eval_bool(e.body, env);
}

bool eval_init(const Machine& m, const Valuation& after) {
  MachineEnv env(m, nullptr, &after);
  return eval_bool(m.init.body, env);
}

BuiltLts build_lts(const Machine& m, const BuildLimits& limits) {
  BuiltLts out;
  Lts& lts = out.lts;
  for (const auto& e : m.events) lts.alphabet.push_back(e.name);
  std::sort(lts.alphabet.begin(), lts.alphabet.end());

  ValuationSpace space(m);
  std::map<std::int64_t, int> index;  // space index -> state id
  std::deque<int> frontier;
  std::vector<std::int64_t> space_of_state;

  auto intern = [&](const Valuation& v) {
    std::int64_t si = space.index_of(v);
    auto it = index.find(si);
    if (it != index.end()) return std::pair<int, bool>{it->second, false};
    if (lts.num_states >= static_cast<int>(limits.max_states))
      throw LimitExceeded("state limit exceeded",
                          static_cast<long>(frontier.size()));
    int id = lts.num_states++;
    index.emplace(si, id);
    out.states.push_back(v);
    space_of_state.push_back(si);
    return std::pair<int, bool>{id, true};
  };

  const bool check_inv = m.invariant_local;
  out.consistency.invariant_checked = check_inv;
  auto check_state = [&](int id, const Valuation& v,
                         std::optional<Transition> edge) {
    if (!check_inv) return;
    MachineEnv env(m, &v, nullptr);
    if (!eval_bool(m.invariant, env))
      out.consistency.violations.push_back({id, edge});
  };

  // initial states: solutions of the init body, in lexicographic order
  for (std::int64_t si = 0; si < space.size(); ++si) {
    Valuation v = space.at(si);
    if (!eval_init(m, v)) continue;
    auto [id, fresh] = intern(v);
    lts.initials.push_back(id);
    if (fresh) {
      frontier.push_back(id);
      check_state(id, v, std::nullopt);
    }
  }
  out.consistency.no_initial_state = lts.initials.empty();

  while (!frontier.empty()) {
    int src = frontier.front();
    frontier.pop_front();
    const Valuation before = out.states[static_cast<std::size_t>(src)];
    for (int li = 0; li < static_cast<int>(lts.alphabet.size()); ++li) {
      const EventDecl* e = m.find_event(lts.alphabet[static_cast<std::size_t>(li)]);
      if (!eval_guard(m, *e, before)) continue;
      for (std::int64_t si = 0; si < space.size(); ++si) {
        Valuation after = space.at(si);
        if (!eval_body(m, *e, before, after)) continue;
        if (static_cast<long>(lts.transitions.size()) >= limits.max_transitions)
          throw LimitExceeded("transition limit exceeded",
                              static_cast<long>(frontier.size()));
        auto [dst, fresh] = intern(after);
        Transition t{src, li, dst};
        lts.transitions.push_back(t);
        if (fresh) {
          frontier.push_back(dst);
          check_state(dst, after, t);
        }
      }
    }
  }

  lts.state_names.reserve(out.states.size());
  for (const auto& v : out.states)
    lts.state_names.push_back(render_valuation(m, v));
  lts.normalize();
  return out;
}

}  // namespace ebref
