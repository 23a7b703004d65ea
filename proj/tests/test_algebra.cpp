#include <cmath>
#include <map>

#include "doctest.h"
#include "opwire/algebra.hpp"

using namespace opwire;

namespace {

const TypeLabel A{"A", 2}, B{"B", 3}, C{"C", 2};

// Independent summation oracle: enumerates every joint assignment of the
// wire/ground index variables and accumulates products of slot entries.
struct BruteSlot {
  std::vector<PortRef> ports;  // axis order of `data`, leftmost slowest
  std::vector<double> data;
};

std::vector<double> brute_contract(const WiringDiagram& w, const std::vector<BruteSlot>& slots,
                                   const std::vector<PortRef>& outer_ports) {
  std::map<PortRef, int> net;
  std::vector<int> dim;
  auto add = [&](const PortRef& p) {
    net[p] = static_cast<int>(dim.size());
    dim.push_back(type_at(w, p).dimension);
  };
  for (const auto& wire : w.wires) {
    add(wire.a);
    net[wire.b] = net[wire.a];
  }
  for (const auto& g : w.grounds) add(g.source);

  double loop_factor = 1.0;
  for (const auto& [label, count] : w.loops) loop_factor *= std::pow(label.dimension, count);

  std::vector<int> out_dims;
  for (const auto& p : outer_ports) out_dims.push_back(type_at(w, p).dimension);
  long long total = 1;
  for (int d : out_dims) total *= d;
  std::vector<double> result(total, 0.0);

  for (long long r = 0; r < total; ++r) {
    std::vector<int> idx(outer_ports.size());
    long long rest = r;
    for (int p = static_cast<int>(outer_ports.size()) - 1; p >= 0; --p) {
      idx[p] = static_cast<int>(rest % out_dims[p]);
      rest /= out_dims[p];
    }
    std::vector<int> val(dim.size(), -1);
    bool ok = true;
    for (std::size_t p = 0; p < outer_ports.size(); ++p) {
      int n = net.at(outer_ports[p]);
      if (val[n] >= 0 && val[n] != idx[p]) ok = false;
      val[n] = idx[p];
    }
    if (!ok) continue;
    std::vector<int> free_nets;
    for (std::size_t n = 0; n < dim.size(); ++n)
      if (val[n] < 0) free_nets.push_back(static_cast<int>(n));
    long long inner_total = 1;
    for (int n : free_nets) inner_total *= dim[n];
    double sum = 0.0;
    for (long long q = 0; q < inner_total; ++q) {
      long long qq = q;
      for (int k = static_cast<int>(free_nets.size()) - 1; k >= 0; --k) {
        val[free_nets[k]] = static_cast<int>(qq % dim[free_nets[k]]);
        qq /= dim[free_nets[k]];
      }
      double term = 1.0;
      for (const auto& slot : slots) {
        long long lin = 0;
        for (const auto& p : slot.ports) lin = lin * type_at(w, p).dimension + val[net.at(p)];
        term *= slot.data[lin];
      }
      sum += term;
    }
    result[r] = sum * loop_factor;
  }
  return result;
}

std::vector<PortRef> matrix_axes(int slot, const Signature& sig) {
  std::vector<PortRef> axes;
  for (int j = 0; j < static_cast<int>(sig.outputs.size()); ++j) axes.push_back(PortRef::out(slot, j));
  for (int i = 0; i < static_cast<int>(sig.inputs.size()); ++i) axes.push_back(PortRef::in(slot, i));
  return axes;
}

double max_diff(const std::vector<double>& x, const std::vector<double>& y) {
  REQUIRE(x.size() == y.size());
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace

TEST_CASE("tensor contraction of a 2x3 state with a 3-vector") {
  Signature tAB = Signature::dot({A, B});
  Signature tB = Signature::dot({B});
  auto w = make_diagram(Signature::dot({A}), {tAB, tB},
                        {Wire(PortRef::outer_port(0), PortRef::port(0, 0)),
                         Wire(PortRef::port(0, 1), PortRef::port(1, 0))});
  auto T = Element::tensor({2, 3}, {1, 2, 3, 4, 5, 6});
  auto S = Element::tensor({3}, {1, 0, 2});
  auto out = tensor_eval(w, {T, S});
  REQUIRE(out.shape == std::vector<int>{2});
  CHECK(out.data[0] == doctest::Approx(7).epsilon(1e-12));
  CHECK(out.data[1] == doctest::Approx(16).epsilon(1e-12));

  auto oracle = brute_contract(
      w, {{{PortRef::port(0, 0), PortRef::port(0, 1)}, T.data}, {{PortRef::port(1, 0)}, S.data}},
      {PortRef::outer_port(0)});
  CHECK(max_diff(out.data, oracle) <= 1e-12);
}

TEST_CASE("self-paired identity tensor traces to the dimension") {
  Signature tAA = Signature::dot({A, A});
  auto w = make_diagram(Signature::dot({}), {tAA},
                        {Wire(PortRef::port(0, 0), PortRef::port(0, 1))});
  auto eye = Element::tensor({2, 2}, {1, 0, 0, 1});
  CHECK(tensor_eval(w, {eye}).data[0] == doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("floating loops multiply by the dimension") {
  Signature dot2 = Signature::dot({A, A});
  auto state = make_diagram(dot2, {}, {Wire(PortRef::outer_port(0), PortRef::outer_port(1))});
  auto closer = make_diagram(Signature::dot({}), {dot2},
                             {Wire(PortRef::port(0, 0), PortRef::port(0, 1))});
  auto closed = substitute(closer, 0, state);
  REQUIRE(closed.loops.at(A) == 1);
  CHECK(tensor_eval(closed, {}).data[0] == doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("tensor unit law is exact") {
  Signature sig = Signature::dot({A, B, C});
  auto t = Element::tensor({2, 3, 2}, std::vector<double>(12, 0.0));
  for (int i = 0; i < 12; ++i) t.data[i] = 0.1 * i - 0.4;
  auto out = tensor_eval(identity_wiring(sig), {t});
  CHECK(max_diff(out.data, t.data) == 0.0);
}

TEST_CASE("sequential wiring multiplies matrices in diagram order") {
  auto w = seq_wiring({A}, {B}, {C});
  auto M = Element::matrix(3, 2, {1, 2, 0, 1, -1, 3});   // A -> B
  auto N = Element::matrix(2, 3, {2, 0, 1, 1, -1, 0});   // B -> C
  auto out = matrix_eval(w, {M, N});
  REQUIRE(out.rows == 2);
  REQUIRE(out.cols == 2);
  // hand oracle: (N*M)[i][j] = sum_k N[i][k] M[k][j]
  std::vector<double> prod(4, 0.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k) prod[i * 2 + j] += N.data[i * 3 + k] * M.data[k * 2 + j];
  CHECK(max_diff(out.data, prod) <= 1e-12);
}

TEST_CASE("swap wiring evaluates to the factor-exchange permutation") {
  auto out = matrix_eval(swap_wiring(A, B), {});
  REQUIRE(out.rows == 6);
  REQUIRE(out.cols == 6);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 3; ++y)
      for (int col = 0; col < 6; ++col) {
        double expect = (col == x * 3 + y) ? 1.0 : 0.0;
        CHECK(out.data[(y * 2 + x) * 6 + col] == expect);
      }
}

TEST_CASE("parallel wiring is the Kronecker product, against the oracle") {
  Signature f = Signature::box({A}, {B});
  Signature g = Signature::box({B}, {C});
  auto w = par_wiring(f, g);
  auto M = Element::matrix(3, 2, {1, 0, 2, -1, 0, 1});
  auto N = Element::matrix(2, 3, {0, 1, 2, 1, 0, -1});
  auto out = matrix_eval(w, {M, N});
  std::vector<PortRef> outer_axes = {PortRef::outer_out(0), PortRef::outer_out(1),
                                     PortRef::outer_in(0), PortRef::outer_in(1)};
  auto oracle = brute_contract(w, {{matrix_axes(0, f), M.data}, {matrix_axes(1, g), N.data}},
                               outer_axes);
  CHECK(max_diff(out.data, oracle) <= 1e-12);
}

TEST_CASE("matrix unit law is exact and foliation styles agree") {
  Signature f = Signature::box({A, B}, {C});
  auto M = Element::matrix(2, 6, std::vector<double>(12, 0.0));
  for (int i = 0; i < 12; ++i) M.data[i] = 0.25 * i - 1.0;
  auto early = matrix_eval(identity_wiring(f), {M}, FoliationStyle::Early);
  auto late = matrix_eval(identity_wiring(f), {M}, FoliationStyle::Late);
  CHECK(max_diff(early.data, M.data) == 0.0);
  CHECK(max_diff(late.data, M.data) == 0.0);
}

TEST_CASE("two-layer matrix wiring agrees with the brute-force oracle") {
  Signature f = Signature::box({A}, {B, B});
  Signature g = Signature::box({B}, {C});
  Signature h = Signature::box({B, A}, {C});
  auto w = make_diagram(Signature::box({A, A}, {C, C}), {f, g, h},
                        {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                         Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                         Wire(PortRef::out(0, 1), PortRef::in(2, 0)),
                         Wire(PortRef::outer_in(1), PortRef::in(2, 1)),
                         Wire(PortRef::out(1, 0), PortRef::outer_out(0)),
                         Wire(PortRef::out(2, 0), PortRef::outer_out(1))});
  std::vector<Element> mats = {Element::matrix(9, 2, std::vector<double>(18)),
                               Element::matrix(2, 3, std::vector<double>(6)),
                               Element::matrix(2, 6, std::vector<double>(12))};
  double v = 0.3;
  for (auto& m : mats)
    for (auto& x : m.data) {
      x = std::sin(v);
      v += 0.7;
    }
  auto out = matrix_eval(w, {mats[0], mats[1], mats[2]});
  std::vector<PortRef> outer_axes = {PortRef::outer_out(0), PortRef::outer_out(1),
                                     PortRef::outer_in(0), PortRef::outer_in(1)};
  auto oracle = brute_contract(w,
                               {{matrix_axes(0, f), mats[0].data},
                                {matrix_axes(1, g), mats[1].data},
                                {matrix_axes(2, h), mats[2].data}},
                               outer_axes);
  CHECK(max_diff(out.data, oracle) <= 1e-9);
}

TEST_CASE("grounding an input wire gives the all-ones covector") {
  auto out = stochastic_eval(ground_wire(A), {});
  REQUIRE(out.rows == 1);
  REQUIRE(out.cols == 2);
  CHECK(out.data == std::vector<double>{1, 1});
}

TEST_CASE("grounding one kernel output marginalizes it") {
  Signature k = Signature::box({A}, {B, C});
  // column-stochastic over the joint output
  std::vector<double> kd(12, 0.0);
  std::vector<double> col0 = {0.1, 0.2, 0.05, 0.15, 0.3, 0.2};
  std::vector<double> col1 = {0.25, 0.05, 0.1, 0.3, 0.1, 0.2};
  for (int i = 0; i < 6; ++i) {
    kd[i * 2] = col0[i];
    kd[i * 2 + 1] = col1[i];
  }
  auto K = Element::kernel(6, 2, kd);
  auto w = make_diagram(Signature::box({A}, {B}), {k},
                        {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                         Wire(PortRef::out(0, 0), PortRef::outer_out(0))},
                        {Ground{PortRef::out(0, 1)}});
  auto out = stochastic_eval(w, {K});
  REQUIRE(out.rows == 3);
  REQUIRE(out.cols == 2);
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 2; ++a) {
      double marg = 0.0;
      for (int c = 0; c < 2; ++c) marg += kd[(b * 2 + c) * 2 + a];
      CHECK(out.data[b * 2 + a] == doctest::Approx(marg).epsilon(1e-12));
    }
  // columns of the result still sum to one
  for (int a = 0; a < 2; ++a) {
    double s = 0.0;
    for (int b = 0; b < 3; ++b) s += out.data[b * 2 + a];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("discarding a slot evaluates to the trivial scalar") {
  Signature k = Signature::box({A}, {B});
  auto K = Element::kernel(3, 2, {0.5, 0.1, 0.25, 0.4, 0.25, 0.5});
  auto out = stochastic_eval(operadic_discard(k), {K});
  CHECK(out.kind == Element::Kind::Scalar);
  CHECK(out.scalar_value() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel constructor rejects non-causal data") {
  CHECK_THROWS_AS(Element::kernel(2, 1, {0.6, 0.6}), Error);
  CHECK_THROWS_AS(Element::kernel(2, 1, {1.5, -0.5}), Error);
  CHECK_NOTHROW(Element::kernel(2, 1, {0.3, 0.7}));
}

TEST_CASE("stochastic mixing commutes with evaluation") {
  Signature k1 = Signature::box({A}, {B});
  Signature k2 = Signature::box({B}, {C});
  auto w = make_diagram(Signature::box({A}, {C}), {k1, k2},
                        {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                         Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                         Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  auto K = Element::kernel(3, 2, {0.2, 0.5, 0.3, 0.1, 0.5, 0.4});
  auto L = Element::kernel(2, 3, {0.7, 0.4, 0.9, 0.3, 0.6, 0.1});
  auto Alt = Element::kernel(3, 2, {0.1, 0.8, 0.6, 0.1, 0.3, 0.1});
  auto alg = Algebra::stochastic_algebra();
  CHECK(check_convex_enrichment(alg, w, {K, L}, 0, Alt, 0.35) <= 1e-12);
  CHECK(check_convex_enrichment(alg, w, {K, L}, 1, Element::kernel(2, 3, {0.2, 0.5, 0.1, 0.8, 0.5, 0.9}), 0.8) <= 1e-12);
}

TEST_CASE("free algebra: identity application and labelled substitution") {
  Signature f = Signature::box({A}, {B});
  Signature g = Signature::box({B}, {C});
  auto alg = Algebra::free_algebra();
  auto x = Element::free_atom(f, "x");
  auto y = Element::free_atom(g, "y");
  auto idr = alg.apply(identity_wiring(f), {x});
  CHECK(element_distance(idr, x) == 0.0);

  auto w = make_diagram(Signature::box({A}, {C}), {f, g},
                        {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                         Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                         Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  auto z = alg.apply(w, {x, y});
  CHECK(z.labels == std::vector<std::string>{"x", "y"});
  CHECK(diagrams_equal(z.diagram, w));
}

TEST_CASE("functoriality residual vanishes for matrix and free algebras") {
  Signature f = Signature::box({A}, {B});
  Signature g = Signature::box({B}, {C});
  Signature h = Signature::box({C}, {A});
  auto host = make_diagram(Signature::box({A}, {A}), {Signature::box({A}, {C}), h},
                           {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                            Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                            Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  auto guest = make_diagram(Signature::box({A}, {C}), {f, g},
                            {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                             Wire(PortRef::out(0, 0), PortRef::in(1, 0)),
                             Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
  auto M = Element::matrix(3, 2, {0.4, -1, 2, 0.5, 1, 1});
  auto N = Element::matrix(2, 3, {1, 0, -2, 0.3, 1, 4});
  auto P = Element::matrix(2, 2, {2, 1, -1, 0.7});
  CHECK(check_functoriality(Algebra::matrix_algebra(), host, 0, guest, {M, N, P}) <= 1e-9);

  auto alg = Algebra::free_algebra();
  auto ex = Element::free_atom(f, "x");
  auto ey = Element::free_atom(g, "y");
  auto ez = Element::free_atom(h, "z");
  CHECK(check_functoriality(alg, host, 0, guest, {ex, ey, ez}) == 0.0);
}
