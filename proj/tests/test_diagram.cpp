#include "doctest.h"
#include "opwire/diagram.hpp"

using namespace opwire;

namespace {
const TypeLabel A{"A", 2}, B{"B", 3}, C{"C", 2}, D{"D", 4}, E{"E", 2};
}

TEST_CASE("identity-shaped wiring validates") {
  Signature box = Signature::box({A}, {A});
  auto w = make_diagram(box, {box},
                        {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                         Wire(PortRef::out(0, 0), PortRef::outer_out(0))});
  CHECK(w.slots.size() == 1);
  CHECK(diagrams_equal(w, identity_wiring(box)));
}

TEST_CASE("missing wire is a dangling port") {
  Signature box = Signature::box({A}, {A});
  CHECK_THROWS_WITH_AS(
      make_diagram(box, {box}, {Wire(PortRef::outer_in(0), PortRef::in(0, 0))}),
      doctest::Contains("DanglingPort"), Error);
}

TEST_CASE("doubly used port rejected") {
  Signature box = Signature::box({A}, {A, A});
  CHECK_THROWS_AS(
      make_diagram(Signature::box({A}, {A}), {box},
                   {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                    Wire(PortRef::out(0, 0), PortRef::outer_out(0)),
                    Wire(PortRef::out(0, 1), PortRef::outer_out(0))}),
      Error);
}

TEST_CASE("type mismatch across a wire rejected") {
  Signature box = Signature::box({A}, {B});
  CHECK_THROWS_AS(make_diagram(Signature::box({A}, {A}), {box},
                               {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                                Wire(PortRef::out(0, 0), PortRef::outer_out(0))}),
                  Error);
}

TEST_CASE("bad port ref rejected") {
  Signature box = Signature::box({A}, {A});
  CHECK_THROWS_AS(make_diagram(box, {box},
                               {Wire(PortRef::outer_in(0), PortRef::in(0, 5)),
                                Wire(PortRef::out(0, 0), PortRef::outer_out(0))}),
                  Error);
}

TEST_CASE("multi-box composite diagram validates") {
  Signature f = Signature::box({A, B}, {A, C, C});
  Signature g = Signature::box({D}, {B});
  Signature h = Signature::box({C}, {E});
  auto w = make_diagram(
      Signature::box({D, A}, {A, E, C}), {g, f, h},
      {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
       Wire(PortRef::out(0, 0), PortRef::in(1, 1)),
       Wire(PortRef::outer_in(1), PortRef::in(1, 0)),
       Wire(PortRef::out(1, 0), PortRef::outer_out(0)),
       Wire(PortRef::out(1, 1), PortRef::in(2, 0)),
       Wire(PortRef::out(1, 2), PortRef::outer_out(2)),
       Wire(PortRef::out(2, 0), PortRef::outer_out(1))});
  CHECK(w.slots.size() == 3);
}

TEST_CASE("substitute unit laws") {
  Signature f = Signature::box({A}, {B});
  Signature g = Signature::box({B}, {C});
  auto w = make_diagram(Signature::box({A}, {C}), {f, g},
                        {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                         Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                         Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  CHECK(diagrams_equal(substitute(w, 0, identity_wiring(f)), w));
  CHECK(diagrams_equal(substitute(w, 1, identity_wiring(g)), w));
  CHECK(diagrams_equal(substitute(identity_wiring(w.outer), 0, w), w));
}

TEST_CASE("substitute flattens a chain into three slots") {
  Signature f = Signature::box({A}, {B});
  Signature g = Signature::box({B}, {C});
  Signature h = Signature::box({C}, {D});
  auto inner = make_diagram(Signature::box({A}, {C}), {f, g},
                            {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                             Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                             Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  auto outer = make_diagram(Signature::box({A}, {D}), {Signature::box({A}, {C}), h},
                            {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                             Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                             Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  auto flat = substitute(outer, 0, inner);
  CHECK(flat.slots.size() == 3);
  CHECK(flat.slots[0] == f);
  CHECK(flat.slots[1] == g);
  CHECK(flat.slots[2] == h);
  CHECK(flat.wires.count(Wire(PortRef::out(1, 0), PortRef::in(2, 0))) == 1);
}

TEST_CASE("substitution closing a dot cycle produces a loop") {
  // 2-port state whose ports are paired with each other, substituted into a
  // wiring that pairs the slot's two ports.
  Signature dot2 = Signature::dot({A, A});
  auto state = make_diagram(dot2, {}, {Wire(PortRef::outer_port(0), PortRef::outer_port(1))});
  auto closer = make_diagram(Signature::dot({}), {dot2},
                             {Wire(PortRef::port(0, 0), PortRef::port(0, 1))});
  auto closed = substitute(closer, 0, state);
  CHECK(closed.slots.empty());
  CHECK(closed.wires.empty());
  REQUIRE(closed.loops.size() == 1);
  CHECK(closed.loops.at(A) == 1);
}

TEST_CASE("substitution into a discarded slot drops guest content") {
  Signature f = Signature::box({A}, {B});
  auto host = make_diagram(Signature::empty(), {f}, {}, {}, {}, {0});
  // guest with inner structure
  Signature g = Signature::box({A}, {C});
  Signature h = Signature::box({C}, {B});
  auto guest = make_diagram(f, {g, h},
                            {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                             Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                             Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  auto result = substitute(host, 0, guest);
  CHECK(result.slots.size() == 2);
  CHECK(result.discarded == std::set<int>{0, 1});
  CHECK(result.wires.empty());
  CHECK(result.grounds.empty());
}

TEST_CASE("host ground absorbs a guest chain and grounds the ultimate source") {
  Signature f = Signature::box({A}, {B});
  // host: one slot f, outer in A wired in, output B grounded
  auto host = make_diagram(Signature::box({A}, {}), {f},
                           {Wire(PortRef::outer_in(0), PortRef::in(0, 0))},
                           {Ground{PortRef::out(0, 0)}});
  // guest for f: inner box g : A -> B
  Signature g = Signature::box({A}, {B});
  auto guest = identity_wiring(f);
  (void)g;
  auto fused = substitute(host, 0, guest);
  CHECK(fused.grounds.count(Ground{PortRef::out(0, 0)}) == 1);

  // guest wiring its outer output from an internal source
  auto fused2 = substitute(host, 0, guest);
  CHECK(diagrams_equal(fused, fused2));
}

TEST_CASE("canonical form is order-insensitive for wires, sensitive for slots") {
  Signature f = Signature::box({A}, {B});
  Signature g = Signature::box({B}, {C});
  auto w1 = make_diagram(Signature::box({A}, {C}), {f, g},
                         {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                          Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                          Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  auto w2 = make_diagram(Signature::box({A}, {C}), {g, f},
                         {Wire(PortRef::outer_in(0), PortRef::in(1, 0)),
                          Wire(PortRef::out(1, 0), PortRef::in(0, 0)),
                          Wire(PortRef::out(0, 0), PortRef::outer_out(0))});
  CHECK(canonical_form(w1) == canonical_form(w1));
  CHECK(canonical_form(w1) != canonical_form(w2));
}

TEST_CASE("associativity of substitution on a concrete triple") {
  Signature f = Signature::box({A}, {B});
  Signature g = Signature::box({B}, {C});
  auto chain = [&](Signature x, Signature y, Signature o) {
    return make_diagram(o, {x, y},
                        {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                         Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                         Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  };
  auto h = chain(Signature::box({A}, {C}), Signature::box({C}, {D}), Signature::box({A}, {D}));
  auto guest1 = chain(f, g, Signature::box({A}, {C}));
  auto inner = identity_wiring(f);
  // (h o guest1) then substitute inner into the spliced slot 0
  auto left = substitute(substitute(h, 0, guest1), 0, inner);
  auto right = substitute(h, 0, substitute(guest1, 0, inner));
  CHECK(diagrams_equal(left, right));
}
