#include "opwire/laws.hpp"

#include "doctest.h"
#include "opwire/corpus.hpp"

using namespace opwire;

TEST_CASE("corpus diagrams validate under their variant") {
  Corpus c(20240817);
  for (auto v : {OperadVariant::WA, OperadVariant::WC, OperadVariant::WD, OperadVariant::WGround,
                 OperadVariant::WUA, OperadVariant::WUAC}) {
    for (int i = 0; i < 50; ++i) {
      auto w = c.diagram(v);
      auto rep = validate(v, w);
      INFO(rep.summary());
      CHECK(rep.ok);
      CHECK(w.slots.size() <= 8);
      CHECK(w.outer.inputs.size() <= 3);
      CHECK(w.outer.outputs.size() <= 3);
      CHECK(w.outer.ports.size() <= 3);
    }
  }
}

TEST_CASE("corpus guests honor a requested boundary") {
  Corpus c(77);
  for (auto v : {OperadVariant::WA, OperadVariant::WC, OperadVariant::WD, OperadVariant::WGround}) {
    for (int i = 0; i < 30; ++i) {
      const Signature outer =
          v == OperadVariant::WD ? c.dot_signature() : c.box_signature();
      auto w = c.diagram_with_outer(v, outer);
      CHECK(w.outer == outer);
      CHECK(validate(v, w).ok);
    }
  }
}

TEST_CASE("corpus is deterministic for a fixed seed") {
  Corpus a(5), b(5);
  for (int i = 0; i < 20; ++i)
    CHECK(diagrams_equal(a.diagram(OperadVariant::WC), b.diagram(OperadVariant::WC)));
}

TEST_CASE("every law suite passes on a seeded sample") {
  for (const auto& suite : law_suite_names()) {
    auto rep = run_law_suite(suite, 20240817, 60);
    for (const auto& r : rep.results) {
      INFO(rep.suite << "/" << r.name << " failing seed " << r.first_failure_seed
                     << " max residual " << r.max_residual);
      CHECK(r.ok());
      CHECK(r.cases > 0);
      CHECK(r.max_residual <= r.tolerance);
    }
  }
}

TEST_CASE("unknown suite name is rejected") {
  CHECK_THROWS_WITH_AS(run_law_suite("nope", 1, 1), doctest::Contains("nope"), Error);
}
