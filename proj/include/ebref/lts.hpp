#ifndef EBREF_LTS_HPP
#define EBREF_LTS_HPP

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace ebref {

/// Reserved internal label, distinct from every event label.
inline constexpr int kHiddenLabel = -1;

struct Transition {
  int src;
  int label;  // index into Lts::alphabet, or kHiddenLabel
  int dst;
  auto operator<=>(const Transition&) const = default;
};

/// Finite labelled transition system. The alphabet is kept sorted so that
/// label ids are ordered lexicographically by name; transitions are sorted,
/// which makes construction deterministic and tie-breaking trivial.
struct Lts {
  int num_states = 0;
  std::vector<int> initials;             // sorted state indices
  std::vector<std::string> alphabet;     // sorted, unique
  std::vector<Transition> transitions;   // sorted
  std::vector<std::string> state_names;  // optional; empty or size num_states

  int label_id(const std::string& name) const;
  std::string label_name(int id) const;  // kHiddenLabel renders as "tau"
  bool has_hidden() const;
  std::set<std::string> alphabet_set() const {
    return {alphabet.begin(), alphabet.end()};
  }

  void normalize();  // sort initials and transitions, drop duplicates

  /// Outgoing adjacency: per state, sorted (label, dst) pairs.
  std::vector<std::vector<std::pair<int, int>>> out_edges() const;

  /// States reachable from the initial states over all edges.
  std::vector<bool> reachable() const;
};

/// Tarjan strongly connected components; returns a component id per node.
std::vector<int> scc_ids(int n, const std::vector<std::vector<int>>& adj);

/// Labels of outgoing transitions of one state.
std::set<std::string> enabled(const Lts& lts, int state);

/// Dump format: "initials:" line, state table, then one transition per line.
std::string dump_lts(const Lts& lts);

}  // namespace ebref

#endif
