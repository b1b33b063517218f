#ifndef EBREF_WP_HPP
#define EBREF_WP_HPP

#include <set>
#include <span>
#include <string>
#include <vector>

#include "ebref/ast.hpp"
#include "ebref/state_space.hpp"

namespace ebref {

/// Extensional predicate over a machine's full valuation space.
using StateSet = std::vector<bool>;

using Trace = std::vector<std::string>;

/// Weakest-precondition transformer over extensional state sets, treating
/// events as guarded commands. Serves as an independent oracle for the
/// operational (LTS) semantics: trace sets computed here must coincide with
/// label sequences of LTS paths.
class WpContext {
 public:
  explicit WpContext(const Machine& m);

  const Machine& machine() const { return *m_; }
  std::int64_t space_size() const { return space_.size(); }
  const ValuationSpace& space() const { return space_; }

  StateSet all() const { return StateSet(static_cast<std::size_t>(space_.size()), true); }
  StateSet none() const { return StateSet(static_cast<std::size_t>(space_.size()), false); }

  /// wp of one event: { s | G(s) => forall s'. BA(s,s') => s' in post }.
  StateSet wp_event(const EventDecl& e, const StateSet& post) const;
  StateSet wp_event(const std::string& event_name, const StateSet& post) const;

  /// Right fold of wp_event over the trace.
  StateSet wp_trace(std::span<const std::string> tr, StateSet post) const;

  /// All traces of length <= max_len that do not establish false.
  std::set<Trace> traces_wp(int max_len) const;

  /// Literal divergence test: not [init; tr] true. Always false for machines
  /// in this language.
  bool divergences_wp(std::span<const std::string> tr) const;

  /// Some execution of init lands in `s`.
  bool init_can_reach(const StateSet& s) const;

 private:
  const EventDecl& event_by_name(const std::string& name) const;

  const Machine* m_;
  ValuationSpace space_;
  // per event (machine order): guard set and successor lists over the space
  std::vector<StateSet> guard_;
  std::vector<std::vector<std::vector<std::int64_t>>> succ_;
  std::vector<std::int64_t> init_states_;
};

}  // namespace ebref

#endif
