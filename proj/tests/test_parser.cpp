#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ebref/parser.hpp"
#include "helpers.hpp"

using namespace ebref;
using testutil::load_chain;
using testutil::load_machine;

namespace {

const char* kMini = R"(
machine counter
variables
  x : 0..2
invariant
  x >= 0
events
  event init then x := 0 end
  event inc when x < 2 then x' = x + 1 end
end
)";

}  // namespace

TEST_CASE("minimal machine parses") {
  Machine m = parse_machine(kMini);
  CHECK(m.name == "counter");
  REQUIRE(m.variables.size() == 1);
  CHECK(m.variables[0].name == "x");
  REQUIRE(m.events.size() == 1);
  CHECK(m.events[0].name == "inc");
  CHECK(m.events[0].status == EventStatus::Ordinary);
  CHECK_FALSE(m.events[0].refines.has_value());
  CHECK(m.init.name == "init");
}

TEST_CASE("primed variable in guard is rejected") {
  const char* text = R"(
machine bad
variables
  x : 0..2
invariant true
events
  event init then x := 0 end
  event e when x' = 1 then x := 0 end
end
)";
  CHECK_THROWS_WITH_AS(parse_machine(text),
                       doctest::Contains("primed variable in guard"),
                       ParseError);
}

TEST_CASE("unbound variable in body is rejected") {
  const char* text = R"(
machine bad
variables
  x : 0..2
invariant true
events
  event init then x := 0 end
  event e then x' = x + 1 & y' = y end
end
)";
  CHECK_THROWS_WITH_AS(parse_machine(text), doctest::Contains("unbound"),
                       ParseError);
}

TEST_CASE("duplicate event names are rejected") {
  const char* text = R"(
machine bad
variables
  x : 0..1
invariant true
events
  event init then x := 0 end
  event e then x := 0 end
  event e then x := 1 end
end
)";
  CHECK_THROWS_AS(parse_machine(text), ParseError);
}

TEST_CASE("missing init is rejected") {
  const char* text = R"(
machine bad
variables
  x : 0..1
invariant true
events
  event e then x := 0 end
end
)";
  CHECK_THROWS_WITH_AS(parse_machine(text), doctest::Contains("init"),
                       ParseError);
}

TEST_CASE("variant required with status-bearing events") {
  const char* text = R"(
machine bad
variables
  x : 0..1
invariant true
events
  event init then x := 0 end
  event e status convergent when x > 0 then x := x - 1 end
end
)";
  CHECK_THROWS_WITH_AS(parse_machine(text), doctest::Contains("variant"),
                       ParseError);
}

TEST_CASE("init must assign every variable") {
  const char* text = R"(
machine bad
variables
  x : 0..1
  y : 0..1
invariant true
events
  event init then x := 0 end
end
)";
  CHECK_THROWS_WITH_AS(parse_machine(text), doctest::Contains("missing 'y'"),
                       ParseError);
}

TEST_CASE("status and refines accepted in either order") {
  const char* a = R"(
machine c refines a
variables
  y : 0..1
invariant y >= 0
variant y
events
  event init then y := 0 end
  event e status convergent refines e0 when y > 0 then y := y - 1 end
end
)";
  const char* b = R"(
machine c refines a
variables
  y : 0..1
invariant y >= 0
variant y
events
  event init then y := 0 end
  event e refines e0 status convergent when y > 0 then y := y - 1 end
end
)";
  Machine ma = parse_machine(a);
  Machine mb = parse_machine(b);
  CHECK(structurally_equal(ma, mb));
  CHECK(ma.events[0].status == EventStatus::Convergent);
  CHECK(ma.events[0].refines == "e0");
}

TEST_CASE("enum sorts and literals") {
  Machine m = load_machine("light0.ebm");
  REQUIRE(m.sorts.size() == 1);
  CHECK(m.sorts[0].name == "Color");
  CHECK_FALSE(m.sorts[0].is_range);
  CHECK(m.sorts[0].literals == std::vector<std::string>{"red", "green"});
  CHECK(m.events.size() == 2);
}

TEST_CASE("quantifiers and mod parse and typecheck") {
  Machine m = load_machine("evens.ebm");
  CHECK(m.invariant.kind == ExprKind::And);
}

TEST_CASE("assignment desugars to a framed before-after predicate") {
  const char* text = R"(
machine two
variables
  x : 0..1
  y : 0..1
invariant true
events
  event init then x := 0, y := 0 end
  event e then x := 1 end
end
)";
  Machine m = parse_machine(text);
  // x' = 1 & y' = y
  std::string printed = pretty_print(m.events[0].body);
  CHECK(printed.find("x'") != std::string::npos);
  CHECK(printed.find("y'") != std::string::npos);
}

TEST_CASE("parse-print round trip is structurally equal on the corpus") {
  Machine m0 = load_machine("m0.ebm");
  Machine m1 = load_machine("m1.ebm", &m0);
  Machine m2 = load_machine("m2.ebm", &m1);
  Machine m3 = load_machine("m3.ebm", &m2);
  Machine l0 = load_machine("light0.ebm");
  Machine l1 = load_machine("light1.ebm", &l0);
  Machine ev = load_machine("evens.ebm");

  auto roundtrip = [](const Machine& m, const Machine* ctx) {
    Machine again = parse_machine(pretty_print(m), ctx);
    CHECK(structurally_equal(m, again));
  };
  roundtrip(m0, nullptr);
  roundtrip(m1, &m0);
  roundtrip(m2, &m1);
  roundtrip(m3, &m2);
  roundtrip(l0, nullptr);
  roundtrip(l1, &l0);
  roundtrip(ev, nullptr);
}

TEST_CASE("chain parsing") {
  SUBCASE("corpus chain of four") {
    RefinementChain chain =
        load_chain({"m0.ebm", "m1.ebm", "m2.ebm", "m3.ebm"});
    REQUIRE(chain.machines.size() == 4);
    CHECK(chain.machines[3].refines_machine == "m2");
  }
  SUBCASE("single machine chain") {
    RefinementChain chain = load_chain({"m0.ebm"});
    CHECK(chain.machines.size() == 1);
  }
  SUBCASE("broken link") {
    CHECK_THROWS_WITH_AS(load_chain({"m0.ebm", "m2.ebm"}),
                         doctest::Contains("refines"), ParseError);
  }
  SUBCASE("first machine must not refine") {
    CHECK_THROWS_AS(load_chain({"m1.ebm"}), ParseError);
  }
}

TEST_CASE("refines target checked against abstract context") {
  Machine m0 = load_machine("m0.ebm");
  const char* text = R"(
machine c refines m0
variables
  y : 0..2
invariant y = x
events
  event init then y := 0 end
  event e refines nosuch then y := y end
end
)";
  CHECK_THROWS_WITH_AS(parse_machine(text, &m0), doctest::Contains("nosuch"),
                       ParseError);
}

TEST_CASE("non-local invariant needs an abstract context") {
  CHECK_THROWS_AS(load_machine("m1.ebm"), ParseError);
}
