#ifndef EBREF_TDI_HPP
#define EBREF_TDI_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "ebref/csp.hpp"
#include "ebref/lts.hpp"

namespace ebref {

struct TdiVerdict {
  bool traces_ok = true;
  bool divergences_ok = true;
  bool infinites_ok = true;
  std::optional<Trace> trace_cex;
  std::optional<Lasso> lasso_cex;
  bool pass() const { return traces_ok && divergences_ok && infinites_ok; }
};

struct TdiOptions {
  int lasso_samples = 100;
  std::uint64_t seed = 1;
};

/// traces(impl) subseteq traces(spec) by subset-construction determinization
/// of spec (with tau closure) and a BFS product search; the counterexample is
/// the shortest offending trace, lexicographically least among shortest.
TdiVerdict traces_refines(const Lts& spec, const Lts& impl);

/// divergences(impl) subseteq divergences(spec): every reachable point of
/// impl from which an infinite internal path exists must map to a diverging
/// spec subset. Divergences are extension-closed, so a diverged spec subset
/// admits everything.
TdiVerdict divergences_refines(const Lts& spec, const Lts& impl);

/// infinites(impl) subseteq infinites(spec). For a divergence-free spec this
/// follows from finite-trace containment (finite branching); independently
/// cross-validated by pumping sampled impl lassos through the determinized
/// spec.
TdiVerdict infinites_refines(const Lts& spec, const Lts& impl,
                             const TdiOptions& opts = {});

/// Full TDI refinement check (all three components).
TdiVerdict tdi_refines(const Lts& spec, const Lts& impl,
                       const TdiOptions& opts = {});

struct CaVerdict {
  bool pass = true;
  std::optional<Lasso> witness;
};

/// CA(C,R): every infinite trace with infinitely many C events has infinitely
/// many R events. Fails iff some reachable cycle contains a C event and no R
/// event; the witness lasso is such a cycle with a minimal stem.
CaVerdict check_ca(const Lts& p, const std::set<std::string>& c,
                   const std::set<std::string>& r);

/// Ultimately periodic membership: stem . cycle^omega in infinites(p)?
/// Decided by pumping the cycle through the determinized process.
bool accepts_lasso(const Lts& p, const Trace& stem, const Trace& cycle);

/// All bounded-depth traces by path enumeration (hidden edges are skipped as
/// internal moves).
std::set<Trace> bounded_traces(const Lts& p, int max_len);

}  // namespace ebref

#endif
