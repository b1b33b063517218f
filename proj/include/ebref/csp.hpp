#ifndef EBREF_CSP_HPP
#define EBREF_CSP_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebref/lts.hpp"
#include "ebref/wp.hpp"

namespace ebref {

/// Total map between alphabets; possibly non-injective (event splitting).
using EventMap = std::map<std::string, std::string>;

std::set<std::string> image(const EventMap& f, const std::set<std::string>& a);
std::set<std::string> preimage(const EventMap& f, const std::set<std::string>& a);
/// Restriction of f to the labels mapping into `targets`.
EventMap restrict_into(const EventMap& f, const std::set<std::string>& targets);

/// Finite representation of an infinite path: stem then cycle forever.
struct Lasso {
  Trace stem;
  Trace cycle;  // nonempty
  std::vector<int> stem_states;   // states along the stem, incl. start
  std::vector<int> cycle_states;  // states along the cycle, cycle start first
  std::string render() const;     // "stem / (cycle)ω"
};

/// Finite or ultimately periodic word; empty cycle means finite.
struct Word {
  Trace stem;
  Trace cycle;
  bool finite() const { return cycle.empty(); }
};

/// P \ n: transitions labelled in n become internal.
Lts hide(const Lts& p, const std::set<std::string>& n);

/// f(P): each label a replaced by f(a). f must be total on p's alphabet.
Lts rename_forward(const Lts& p, const EventMap& f);

/// f^-1(P): one transition per preimage label. f must map every domain label
/// into p's alphabet and cover all of it.
Lts rename_inverse(const Lts& p, const EventMap& f);

/// P ||| RUN_n for fresh n: a self-loop on every state for each label in n.
Lts interleave_run(const Lts& p, const std::set<std::string>& n);

Trace project(const Trace& tr, const std::set<std::string>& a);
Trace hide_trace(const Trace& tr, const std::set<std::string>& a);
Word project(const Lasso& l, const std::set<std::string>& a);
Word hide_trace(const Lasso& l, const std::set<std::string>& a);
/// Length; nullopt means infinite.
std::optional<std::size_t> length(const Word& w);

struct CycleVerdict {
  bool pass = true;
  std::optional<Lasso> witness;
};

/// Livelock check for p \ n: no reachable cycle over labels in n only. The witness
/// lasso has a minimal stem and a shortest offending cycle.
CycleVerdict divergence_free_after_hide(const Lts& p,
                                        const std::set<std::string>& n);

}  // namespace ebref

#endif
