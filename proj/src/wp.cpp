#include "ebref/wp.hpp"

#include <algorithm>
#include <stdexcept>

namespace ebref {

WpContext::WpContext(const Machine& m) : m_(&m), space_(m) {
  const std::int64_t n = space_.size();
  for (const auto& e : m.events) {
    StateSet g(static_cast<std::size_t>(n), false);
    std::vector<std::vector<std::int64_t>> succ(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      Valuation before = space_.at(i);
      if (!eval_guard(m, e, before)) continue;
      g[static_cast<std::size_t>(i)] = true;
      for (std::int64_t j = 0; j < n; ++j) {
        if (eval_body(m, e, before, space_.at(j)))
          succ[static_cast<std::size_t>(i)].push_back(j);
      }
    }
    guard_.push_back(std::move(g));
    succ_.push_back(std::move(succ));
  }
  for (std::int64_t j = 0; j < n; ++j)
    if (eval_init(m, space_.at(j))) init_states_.push_back(j);
}

const EventDecl& WpContext::event_by_name(const std::string& name) const {
  for (const auto& e : m_->events)
    if (e.name == name) return e;
  throw std::invalid_argument("unknown event '" + name + "'");
}

StateSet WpContext::wp_event(const EventDecl& e, const StateSet& post) const {
  std::size_t ei = 0;
  for (; ei < m_->events.size(); ++ei)
    if (&m_->events[ei] == &e || m_->events[ei].name == e.name) break;
  if (ei == m_->events.size())
    throw std::invalid_argument("event not of this machine");
  const std::int64_t n = space_.size();
  StateSet out(static_cast<std::size_t>(n), true);
  for (std::int64_t i = 0; i < n; ++i) {
    if (!guard_[ei][static_cast<std::size_t>(i)]) continue;  // vacuous
    for (std::int64_t j : succ_[ei][static_cast<std::size_t>(i)]) {
      if (!post[static_cast<std::size_t>(j)]) {
        out[static_cast<std::size_t>(i)] = false;
        break;
      }
    }
  }
  return out;
}

StateSet WpContext::wp_event(const std::string& event_name,
                             const StateSet& post) const {
  return wp_event(event_by_name(event_name), post);
}

StateSet WpContext::wp_trace(std::span<const std::string> tr,
                             StateSet post) const {
  for (std::size_t i = tr.size(); i-- > 0;) post = wp_event(tr[i], post);
  return post;
}

bool WpContext::init_can_reach(const StateSet& s) const {
  for (std::int64_t j : init_states_)
    if (s[static_cast<std::size_t>(j)]) return true;
  return false;
}

std::set<Trace> WpContext::traces_wp(int max_len) const {
  std::set<Trace> out;
  // tr is a trace iff not [init; tr] false, i.e. some state satisfying
  // the negation of wp_trace(tr, {}) is reachable by init
  std::vector<std::string> names;
  for (const auto& e : m_->events) names.push_back(e.name);
  std::sort(names.begin(), names.end());

  std::vector<Trace> frontier{{}};
  for (int len = 0; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Trace> next;
    for (const auto& tr : frontier) {
      StateSet w = wp_trace(tr, none());
      w.flip();  // states from which some execution of tr exists
      if (!init_can_reach(w)) continue;
      out.insert(tr);
      if (len < max_len) {
        for (const auto& name : names) {
          Trace ext = tr;
          ext.push_back(name);
          next.push_back(std::move(ext));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool WpContext::divergences_wp(std::span<const std::string> tr) const {
  StateSet w = wp_trace(tr, all());
  // divergence iff not [init; tr] true; [init]Q quantifies over all init
  // solutions
  for (std::int64_t j : init_states_)
    if (!w[static_cast<std::size_t>(j)]) return true;
  return false;
}

}  // namespace ebref
