#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ebref/tdi.hpp"
#include "ebref/wp.hpp"
#include "helpers.hpp"

using namespace ebref;
using testutil::load_machine;

namespace {

StateSet set_of(const WpContext& ctx, std::initializer_list<std::int64_t> idx) {
  StateSet s = ctx.none();
  for (auto i : idx) s[static_cast<std::size_t>(i)] = true;
  return s;
}

bool subset(const StateSet& a, const StateSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("wp of a guarded event") {
  Machine m = load_machine("m0.ebm");
  WpContext ctx(m);
  // space is x=0,1,2; inc: when x<2 then x:=x+1
  SUBCASE("wp(inc, {x=1}) = {x=0, x=2}") {
    // guard false (x=2) satisfies wp trivially
    StateSet w = ctx.wp_event("inc", set_of(ctx, {1}));
    CHECK(w == set_of(ctx, {0, 2}));
  }
  SUBCASE("wp(reset, {x=0}) = everything") {
    StateSet w = ctx.wp_event("reset", set_of(ctx, {0}));
    CHECK(w == ctx.all());
  }
  SUBCASE("wp preserves top") {
    CHECK(ctx.wp_event("inc", ctx.all()) == ctx.all());
    CHECK(ctx.wp_event("reset", ctx.all()) == ctx.all());
  }
}

TEST_CASE("wp is monotone") {
  Machine m = load_machine("evens.ebm");
  WpContext ctx(m);
  std::mt19937_64 rng(7);
  std::bernoulli_distribution bit(0.5);
  for (int round = 0; round < 50; ++round) {
    StateSet small = ctx.none(), big = ctx.none();
    for (std::size_t i = 0; i < small.size(); ++i) {
      if (bit(rng)) big[i] = true;
      if (big[i] && bit(rng)) small[i] = true;
    }
    for (const auto& e : m.events) {
      StateSet ws = ctx.wp_event(e, small);
      StateSet wb = ctx.wp_event(e, big);
      CHECK(subset(ws, wb));
    }
  }
}

TEST_CASE("trace via wp: empty and simple traces") {
  Machine m = load_machine("m0.ebm");
  WpContext ctx(m);
  auto has = [&](std::vector<std::string> tr) {
    return ctx.init_can_reach([&] {
      StateSet bad = ctx.wp_trace(tr, ctx.none());
      StateSet ok(bad.size());
      for (std::size_t i = 0; i < bad.size(); ++i) ok[i] = !bad[i];
      return ok;
    }());
  };
  CHECK(has({}));
  CHECK(has({"inc"}));
  CHECK(has({"inc", "inc", "reset"}));
  CHECK_FALSE(has({"reset"}));
  CHECK_FALSE(has({"inc", "reset"}));
}

TEST_CASE("wp traces equal LTS traces on the corpus to depth 6") {
  Machine m0 = load_machine("m0.ebm");
  Machine m1 = load_machine("m1.ebm", &m0);
  Machine m2 = load_machine("m2.ebm", &m1);
  Machine m3 = load_machine("m3.ebm", &m2);
  Machine l0 = load_machine("light0.ebm");
  Machine l1 = load_machine("light1.ebm", &l0);
  Machine ev = load_machine("evens.ebm");
  for (const Machine* m : {&m0, &m1, &m2, &m3, &l0, &l1, &ev}) {
    WpContext ctx(*m);
    Lts lts = build_lts(*m).lts;
    for (int depth : {0, 1, 3, 6}) {
      CAPTURE(m->name);
      CAPTURE(depth);
      CHECK(ctx.traces_wp(depth) == bounded_traces(lts, depth));
    }
  }
}

TEST_CASE("machines in this language never diverge") {
  Machine m = load_machine("m0.ebm");
  WpContext ctx(m);
  for (const auto& tr : ctx.traces_wp(4)) CHECK_FALSE(ctx.divergences_wp(tr));
  CHECK_FALSE(ctx.divergences_wp(Trace{"reset", "reset"}));
}
