#include "opwire/dsl.hpp"

#include "doctest.h"
#include "opwire/corpus.hpp"

using namespace opwire;

namespace {
const TypeLabel A{"A", 2}, B{"B", 3};
}

TEST_CASE("parses the identity-shaped example") {
  auto ws = parse_dsl(
      "type A(2)\nbox f: A -> A\n"
      "diagram d(WA){ slots: f as s0\n"
      " wire outer.in[0] -- s0.in[0]\n wire s0.out[0] -- outer.out[0] }");
  REQUIRE(ws.diagrams.size() == 1);
  const DiagramDef& d = ws.diagram("d");
  CHECK(d.variant == OperadVariant::WA);
  CHECK(diagrams_equal(d.wiring, identity_wiring(Signature::box({A}, {A}))));
  CHECK(d.slot_names == std::vector<std::string>{"s0"});
}

TEST_CASE("comments and odd whitespace are ignored") {
  auto ws = parse_dsl("# header\ntype A(2) # trailing\n\n\tbox f:A->A\n");
  CHECK(ws.types.size() == 1);
  CHECK(*ws.find_shape("f") == Signature::box({A}, {A}));
}

TEST_CASE("grounds inside a WA diagram are a variant violation") {
  const std::string text =
      "type A(2)\nbox f: -> A\n"
      "diagram d(WA){ slots: f as s0\n ground s0.out[0] }";
  CHECK_THROWS_WITH_AS(parse_dsl(text), doctest::Contains("not a legal WA"), Error);
  try {
    parse_dsl(text);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::VariantViolation);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_dsl("type A(2)\nbox f A -> A\n");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("':'") != std::string::npos);
  }
}

TEST_CASE("unknown names are reported as such") {
  CHECK_THROWS_AS(parse_dsl("box f: A -> A\n"), Error);
  try {
    parse_dsl("type A(2)\ndiagram d(WA){ slots: f as s0 }");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownName);
  }
}

TEST_CASE("outer-outer wires need the boundary annotation") {
  const std::string bare =
      "type A(2)\ndiagram d(WA){ slots:\n wire outer.in[0] -- outer.out[0] }";
  CHECK_THROWS_WITH_AS(parse_dsl(bare), doctest::Contains("boundary annotation"), Error);
  auto ws = parse_dsl(
      "type A(2)\ndiagram d(WA): A -> A { slots:\n wire outer.in[0] -- outer.out[0] }");
  CHECK(diagrams_equal(ws.diagram("d").wiring, id_wiring(A)));
}

TEST_CASE("empty boundary, loops and discards parse") {
  auto ws = parse_dsl(
      "type A(2)\nbox f: A -> A\n"
      "diagram d(WGround): empty { slots: f as s0\n discard s0 }");
  const auto& w = ws.diagram("d").wiring;
  CHECK(w.outer.is_empty());
  CHECK(w.discarded == std::set<int>{0});

  auto wc = parse_dsl("type A(2)\ndiagram l(WC): -> { slots:\n loop A 2 }");
  CHECK(wc.diagram("l").wiring.loops.at(A) == 2);
}

TEST_CASE("print then parse is the identity on the corpus") {
  Corpus c(424242);
  for (auto v : {OperadVariant::WA, OperadVariant::WC, OperadVariant::WD, OperadVariant::WUA,
                 OperadVariant::WUAC, OperadVariant::WGround}) {
    for (int i = 0; i < 25; ++i) {
      auto w = c.diagram(v);
      auto ws = workspace_for("d", v, w);
      const std::string text = print_dsl(ws);
      CAPTURE(text);
      Workspace back = parse_dsl(text);
      REQUIRE(back.diagrams.size() == 1);
      CHECK(back.diagram("d").variant == v);
      CHECK(diagrams_equal(back.diagram("d").wiring, w));
      CHECK(print_dsl(back) == text);  // printing is a fixpoint
    }
  }
}

TEST_CASE("printing is deterministic") {
  Corpus c(7);
  auto ws = workspace_for("d", OperadVariant::WC, c.diagram(OperadVariant::WC));
  CHECK(print_dsl(ws) == print_dsl(ws));
}

TEST_CASE("DOT export shows slots, boundary edges and grounds") {
  auto id = identity_wiring(Signature::box({A}, {A}));
  const std::string dot = export_dot(id);
  CHECK(dot == export_dot(id));  // byte-stable
  CHECK(dot.find("slot0 [shape=box") != std::string::npos);
  CHECK(dot.find("in0 -> slot0") != std::string::npos);
  CHECK(dot.find("out0 -> slot0") != std::string::npos);
  CHECK(dot.find("ground") == std::string::npos);

  // one grounded output: the shared ground node has in-degree one
  auto grounded = make_diagram(Signature::box({A}, {}), {Signature::box({A}, {A})},
                               {Wire(PortRef::outer_in(0), PortRef::in(0, 0))},
                               {Ground{PortRef::out(0, 0)}});
  const std::string g = export_dot(grounded);
  std::size_t count = 0;
  for (std::size_t p = g.find("-> ground"); p != std::string::npos; p = g.find("-> ground", p + 1))
    ++count;
  CHECK(count == 1);

  auto discarded = make_diagram(Signature::empty(), {Signature::box({A}, {A})}, {}, {}, {}, {0});
  CHECK(export_dot(discarded).find("style=dashed") != std::string::npos);
}

TEST_CASE("JSON payloads load and bind") {
  auto bundle = parse_data(
      R"({"elements": {"s0": {"kind":"kernel","shape":[2,2],"data":[0.5,1,0.5,0]},
                       "s1": {"kind":"label","label":"k"}}})");
  CHECK(bundle.entries.at("s0").kind == "kernel");
  CHECK(bundle.entries.at("s1").label == "k");

  DiagramDef def;
  def.variant = OperadVariant::WA;
  def.wiring = identity_wiring(Signature::box({A}, {A}));
  def.slot_names = {"s1"};
  auto elems = bind_data(Algebra::free_algebra(), def, bundle);
  REQUIRE(elems.size() == 1);
  CHECK(elems[0].labels == std::vector<std::string>{"k"});
}

TEST_CASE("bad payloads are rejected with the right codes") {
  auto code_of = [](const std::string& text) {
    try {
      parse_data(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Internal;
  };
  CHECK(code_of(R"({"elements": {"x": {"kind":"kernel","shape":[2,2],
      "data":[1.5,1,-0.5,0]}}})") == Errc::NotCausal);
  CHECK(code_of(R"({"elements": {"x": {"kind":"tensor","shape":[2,2],
      "data":[1,2,3]}}})") == Errc::ShapeMismatch);
  CHECK(code_of(R"({"elements": {"x": {"kind":"spinor","shape":[2],"data":[1,2]}}})") ==
        Errc::SchemaError);
  CHECK(code_of(R"({"items": {}})") == Errc::SchemaError);
  CHECK(code_of("{nope") == Errc::SchemaError);

  DiagramDef def;
  def.variant = OperadVariant::WA;
  def.wiring = identity_wiring(Signature::box({A}, {A}));
  def.slot_names = {"s0"};
  auto bundle = parse_data(R"({"elements": {"s0": {"kind":"matrix","shape":[3,2],
      "data":[1,2,3,4,5,6]}}})");
  CHECK_THROWS_AS(bind_data(Algebra::matrix_algebra(), def, bundle), Error);  // 2x2 wanted
  CHECK_THROWS_AS(bind_data(Algebra::matrix_algebra(), def, DataBundle{}), Error);
}

TEST_CASE("workspace lookups") {
  auto ws = parse_dsl("type A(2)\nbox f: A -> A\n");
  CHECK(ws.find_type("A") != nullptr);
  CHECK(ws.find_type("Z") == nullptr);
  CHECK_THROWS_AS(ws.diagram("nope"), Error);
}

TEST_CASE("duplicate declarations are rejected") {
  CHECK_THROWS_WITH_AS(parse_dsl("type A(2)\ntype A(3)\n"),
                       doctest::Contains("already declared"), Error);
}
