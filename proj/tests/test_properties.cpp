#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ebref/report.hpp"
#include "ebref/tdi.hpp"
#include "ebref/verify.hpp"
#include "helpers.hpp"

using namespace ebref;
using testutil::load_chain;
using testutil::random_lts;

namespace {

// three pairwise disjoint label subsets drawn from p's alphabet
struct Split {
  std::set<std::string> c, r, c2;
};

Split random_split(const Lts& p, std::mt19937_64& rng) {
  Split s;
  for (const auto& a : p.alphabet) {
    switch (rng() % 4) {
      case 0: s.c.insert(a); break;
      case 1: s.r.insert(a); break;
      case 2: s.c2.insert(a); break;
      default: break;
    }
  }
  return s;
}

// random sub-process: drop transitions with probability 0.4, keep the rest
Lts prune(const Lts& p, std::mt19937_64& rng) {
  Lts q = p;
  std::vector<Transition> kept;
  for (const auto& t : q.transitions)
    if (rng() % 5 >= 2) kept.push_back(t);
  q.transitions = std::move(kept);
  q.normalize();
  return q;
}

}  // namespace

TEST_CASE("acceptance survives inverse renaming") {
  std::mt19937_64 rng(41);
  int applicable = 0;
  for (int round = 0; round < 1000; ++round) {
    Lts p = random_lts(rng);
    Split s = random_split(p, rng);
    if (!check_ca(p, s.c, s.r).pass) continue;
    ++applicable;
    EventMap f;
    for (const auto& a : p.alphabet) {
      f[a + "1"] = a;
      if (rng() % 2) f[a + "2"] = a;
    }
    Lts q = rename_inverse(p, f);
    CHECK(check_ca(q, preimage(f, s.c), preimage(f, s.r)).pass);
  }
  CHECK(applicable >= 200);
}

TEST_CASE("acceptance survives interleaving fresh events") {
  std::mt19937_64 rng(42);
  int applicable = 0;
  for (int round = 0; round < 1000; ++round) {
    Lts p = random_lts(rng);
    Split s = random_split(p, rng);
    if (!check_ca(p, s.c, s.r).pass) continue;
    ++applicable;
    std::set<std::string> fresh{"n1"};
    if (rng() % 2) fresh.insert("n2");
    CHECK(check_ca(interleave_run(p, fresh), s.c, s.r).pass);
  }
  CHECK(applicable >= 200);
}

TEST_CASE("acceptance sets can be merged through an intermediate recovery") {
  // if c-events recover via r, and c2-events recover via c or r, then the
  // union of c and c2 recovers via r alone
  std::mt19937_64 rng(43);
  int applicable = 0;
  for (int round = 0; round < 1000; ++round) {
    Lts p = random_lts(rng);
    Split s = random_split(p, rng);
    if (!check_ca(p, s.c, s.r).pass) continue;
    std::set<std::string> cr = s.c;
    cr.insert(s.r.begin(), s.r.end());
    if (!check_ca(p, s.c2, cr).pass) continue;
    ++applicable;
    std::set<std::string> merged = s.c;
    merged.insert(s.c2.begin(), s.c2.end());
    CHECK(check_ca(p, merged, s.r).pass);
  }
  CHECK(applicable >= 200);
}

TEST_CASE("acceptance forbids livelock when the accepted events are hidden") {
  std::mt19937_64 rng(44);
  int applicable = 0;
  for (int round = 0; round < 1000; ++round) {
    Lts p = random_lts(rng);
    Split s = random_split(p, rng);
    if (!check_ca(p, s.c, s.r).pass) continue;
    ++applicable;
    CHECK(divergence_free_after_hide(p, s.c).pass);
  }
  CHECK(applicable >= 200);
}

TEST_CASE("hiding fresh events preserves refinement of the base process") {
  // if p0 ||| RUN_n is refined by p1 and p1 \ n cannot livelock, then p0 is
  // refined by p1 \ n
  std::mt19937_64 rng(45);
  int applicable = 0;
  for (int round = 0; round < 1000; ++round) {
    Lts p0 = random_lts(rng);
    std::set<std::string> n{"n1"};
    if (rng() % 2) n.insert("n2");
    Lts q = interleave_run(p0, n);
    Lts p1 = q;
    std::vector<Transition> kept;
    for (const auto& t : p1.transitions) {
      bool fresh = t.label >= 0 &&
                   n.count(p1.alphabet[static_cast<std::size_t>(t.label)]);
      // retain few fresh self-loops so the no-livelock hypothesis often holds
      if (rng() % 6 < (fresh ? 1u : 4u)) kept.push_back(t);
    }
    p1.transitions = std::move(kept);
    p1.normalize();
    if (!tdi_refines(q, p1).pass()) continue;
    if (!divergence_free_after_hide(p1, n).pass) continue;
    ++applicable;
    CHECK(tdi_refines(p0, hide(p1, n)).pass());
  }
  CHECK(applicable >= 150);
}

TEST_CASE("refinement is reflexive and transitive") {
  std::mt19937_64 rng(46);
  for (int round = 0; round < 200; ++round) {
    Lts a = random_lts(rng);
    CHECK(tdi_refines(a, a).pass());
    Lts b = prune(a, rng);
    Lts c = prune(b, rng);
    REQUIRE(tdi_refines(a, b).pass());
    REQUIRE(tdi_refines(b, c).pass());
    CHECK(tdi_refines(a, c).pass());
  }
}

TEST_CASE("refinement respects forward renaming") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 200; ++round) {
    Lts a = random_lts(rng);
    Lts b = prune(a, rng);
    EventMap f;
    for (const auto& x : a.alphabet) f[x] = rng() % 2 ? "u" : "v";
    REQUIRE(tdi_refines(a, b).pass());
    CHECK(tdi_refines(rename_forward(a, f), rename_forward(b, f)).pass());
  }
}

TEST_CASE("repeated chain checks produce identical reports") {
  RefinementChain chain =
      load_chain({"m0.ebm", "m1.ebm", "m2.ebm", "m3.ebm"});
  Json a = to_json(check_chain(chain));
  Json b = to_json(check_chain(chain));
  CHECK(a.dump() == b.dump());
}

TEST_CASE("counterexamples vary with neither seed nor sample count") {
  // verdict stability under tdi option changes on a failing pair
  RefinementChain chain = load_chain(
      {"m0.ebm", "m1.ebm", "m2.ebm", "mutations/m3_bad_wfd.ebm"});
  CheckOptions o1, o2;
  o2.tdi.seed = 999;
  o2.tdi.lasso_samples = 17;
  ChainReport r1 = check_chain(chain, o1);
  ChainReport r2 = check_chain(chain, o2);
  CHECK(r1.pass() == r2.pass());
  REQUIRE(r1.collected.has_value());
  REQUIRE(r2.collected.has_value());
  CHECK(r1.collected->pass() == r2.collected->pass());
  CHECK(r1.collected->trace_cex == r2.collected->trace_cex);
}
