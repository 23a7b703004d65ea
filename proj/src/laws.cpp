#include "opwire/laws.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <set>

#include "opwire/algebra.hpp"
#include "opwire/causal.hpp"
#include "opwire/corpus.hpp"
#include "opwire/functors.hpp"
#include "opwire/polycat.hpp"

namespace opwire {

namespace {

using CaseFn = std::function<double(Corpus&)>;

LawResult run_law(std::string name, double tol, std::uint64_t seed, int cases, const CaseFn& fn) {
  LawResult r;
  r.name = std::move(name);
  r.tolerance = tol;
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t sub = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1));
    Corpus c(sub);
    ++r.cases;
    bool failed = false;
    try {
      const double res = fn(c);
      r.max_residual = std::max(r.max_residual, res);
      failed = res > tol;
    } catch (const std::exception&) {
      failed = true;
      r.max_residual = std::max(r.max_residual, 1.0);
    }
    if (failed && r.failures++ == 0) r.first_failure_seed = sub;
  }
  return r;
}

int scaled(int cases, double f) {
  return std::max(1, static_cast<int>(std::llround(cases * f)));
}

WiringDiagram nonempty(Corpus& c, OperadVariant v, int max_slots = 5) {
  for (;;) {
    auto w = c.diagram(v, max_slots);
    if (!w.slots.empty()) return w;
  }
}

// ---- size guards for numeric evaluation ----

long long matrix_weight(const WiringDiagram& w) {
  long long p = 1;
  for (const auto& t : w.outer.inputs) p *= t.dimension;
  for (const auto& s : w.slots)
    for (const auto& t : s.outputs) p *= t.dimension;
  return p;
}

long long net_weight(const WiringDiagram& w) {
  long long p = 1;
  for (const auto& wire : w.wires) p *= type_at(w, wire.a).dimension;
  for (const auto& g : w.grounds) p *= type_at(w, g.source).dimension;
  for (const auto& t : w.outer.ports) p *= t.dimension;
  return p;
}

WiringDiagram small_diagram(Corpus& c, OperadVariant v, bool need_slots, int max_slots = 4) {
  for (;;) {
    auto w = c.diagram(v, max_slots);
    if (need_slots && w.slots.empty()) continue;
    if (v == OperadVariant::WA && matrix_weight(w) > 4096) continue;
    if (net_weight(w) > (1LL << 18)) continue;
    return w;
  }
}

// Host/guest pair (and the joined composite) small enough to evaluate.
struct SubstitutionCase {
  WiringDiagram host, guest, composite;
  int slot = 0;
};

SubstitutionCase small_pair(Corpus& c, OperadVariant v) {
  for (;;) {
    auto host = small_diagram(c, v, true);
    const int i = c.pick(0, static_cast<int>(host.slots.size()) - 1);
    auto guest = c.diagram_with_outer(v, host.slots[i]);
    auto composite = substitute(host, i, guest);
    if (v == OperadVariant::WA &&
        (matrix_weight(guest) > 4096 || matrix_weight(composite) > 4096))
      continue;
    if (net_weight(guest) > (1LL << 18) || net_weight(composite) > (1LL << 18)) continue;
    return {std::move(host), std::move(guest), std::move(composite), i};
  }
}

// ---- small construction helpers ----

std::vector<TypeLabel> cat(std::vector<TypeLabel> a, const std::vector<TypeLabel>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

WiringDiagram chain(const std::vector<Signature>& sigs) {
  std::set<Wire> wires;
  const int n = static_cast<int>(sigs.size());
  for (int i = 0; i < static_cast<int>(sigs.front().inputs.size()); ++i)
    wires.insert(Wire(PortRef::outer_in(i), PortRef::in(0, i)));
  for (int k = 0; k + 1 < n; ++k)
    for (int j = 0; j < static_cast<int>(sigs[k].outputs.size()); ++j)
      wires.insert(Wire(PortRef::out(k, j), PortRef::in(k + 1, j)));
  for (int j = 0; j < static_cast<int>(sigs.back().outputs.size()); ++j)
    wires.insert(Wire(PortRef::out(n - 1, j), PortRef::outer_out(j)));
  return make_diagram(Signature::box(sigs.front().inputs, sigs.back().outputs), sigs,
                      std::move(wires));
}

Element identity_matrix(const std::vector<TypeLabel>& types) {
  long long n = 1;
  for (const auto& t : types) n *= t.dimension;
  std::vector<double> d(n * n, 0.0);
  for (long long i = 0; i < n; ++i) d[i * n + i] = 1.0;
  return Element::matrix(static_cast<int>(n), static_cast<int>(n), std::move(d));
}

std::vector<TypeLabel> few_types(Corpus& c, int max_count = 2) {
  std::vector<TypeLabel> v;
  const int n = c.pick(1, max_count);
  for (int i = 0; i < n; ++i) v.push_back(c.type());
  return v;
}

std::optional<std::pair<PortRef, PortRef>> find_join(const WiringDiagram& p,
                                                     const WiringDiagram& q) {
  for (int i = 0; i < static_cast<int>(p.outer.outputs.size()); ++i)
    for (int j = 0; j < static_cast<int>(q.outer.inputs.size()); ++j)
      if (p.outer.outputs[i] == q.outer.inputs[j])
        return std::make_pair(PortRef::outer_out(i), PortRef::outer_in(j));
  for (int i = 0; i < static_cast<int>(p.outer.inputs.size()); ++i)
    for (int j = 0; j < static_cast<int>(q.outer.outputs.size()); ++j)
      if (p.outer.inputs[i] == q.outer.outputs[j])
        return std::make_pair(PortRef::outer_in(i), PortRef::outer_out(j));
  return std::nullopt;
}

PolyComposeSpec join1(PortRef a, PortRef b) {
  PolyComposeSpec s;
  s.connections = {{a, b}};
  return s;
}

// Forest operands anchored so a type-t identity box exposes boundary ports
// at known positions (in[0]/out[0] of type t).
struct PolyTriple {
  TypeLabel t;
  WiringDiagram p, q, r;
};

PolyTriple poly_triple(Corpus& c) {
  const TypeLabel t = c.type();
  auto anchor = identity_wiring(Signature::box({t}, {t}));
  PolyTriple out{t, par_poly(anchor, c.diagram(OperadVariant::WUA, 3)),
                 par_poly(anchor, c.diagram(OperadVariant::WUA, 3)),
                 par_poly(anchor, c.diagram(OperadVariant::WUA, 3))};
  return out;
}

// ---- the suites ----

LawReport core_suite(std::uint64_t seed, int cases) {
  LawReport rep;
  rep.suite = "core";
  static const OperadVariant kVariants[] = {OperadVariant::WA, OperadVariant::WC,
                                            OperadVariant::WD, OperadVariant::WGround};

  rep.results.push_back(run_law("substitution-associativity", 0.0, seed, cases, [](Corpus& c) {
    const OperadVariant v = kVariants[c.pick(0, 3)];
    auto host = nonempty(c, v);
    const int i = c.pick(0, static_cast<int>(host.slots.size()) - 1);
    auto guest = c.diagram_with_outer(v, host.slots[i]);
    for (int tries = 0; guest.slots.empty() && tries < 8; ++tries)
      guest = c.diagram_with_outer(v, host.slots[i]);
    if (guest.slots.empty()) guest = identity_wiring(host.slots[i]);
    const int j = c.pick(0, static_cast<int>(guest.slots.size()) - 1);
    auto inner = c.diagram_with_outer(v, guest.slots[j]);
    auto left = substitute(substitute(host, i, guest), i + j, inner);
    auto right = substitute(host, i, substitute(guest, j, inner));
    return diagrams_equal(left, right) ? 0.0 : 1.0;
  }));

  rep.results.push_back(run_law("substitution-unit", 0.0, seed + 1, cases, [](Corpus& c) {
    const OperadVariant v = kVariants[c.pick(0, 3)];
    auto host = nonempty(c, v);
    const int i = c.pick(0, static_cast<int>(host.slots.size()) - 1);
    bool ok = diagrams_equal(substitute(host, i, identity_wiring(host.slots[i])), host);
    if (!host.outer.is_empty())  // no identity on the empty object
      ok = ok && diagrams_equal(substitute(identity_wiring(host.outer), 0, host), host);
    return ok ? 0.0 : 1.0;
  }));

  rep.results.push_back(
      run_law("seq-unitality-matrix", 1e-9, seed + 2, scaled(cases, 0.5), [](Corpus& c) {
        auto alg = Algebra::matrix_algebra();
        const Signature f = c.box_signature(2);
        const Element M = c.element(alg, f);
        const double r1 = element_distance(
            matrix_eval(chain({f, Signature::box(f.outputs, f.outputs)}),
                        {M, identity_matrix(f.outputs)}),
            M);
        const double r2 = element_distance(
            matrix_eval(chain({Signature::box(f.inputs, f.inputs), f}),
                        {identity_matrix(f.inputs), M}),
            M);
        return std::max(r1, r2);
      }));

  rep.results.push_back(
      run_law("seq-associativity-matrix", 1e-9, seed + 3, scaled(cases, 0.5), [](Corpus& c) {
        auto alg = Algebra::matrix_algebra();
        const auto a = few_types(c), b = few_types(c), d = few_types(c), e = few_types(c);
        const Signature f = Signature::box(a, b), g = Signature::box(b, d),
                        h = Signature::box(d, e);
        const Element Mf = c.element(alg, f), Mg = c.element(alg, g), Mh = c.element(alg, h);
        auto lhs = matrix_eval(chain({f, g, h}), {Mf, Mg, Mh});
        auto fg = matrix_eval(chain({f, g}), {Mf, Mg});
        auto rhs1 = matrix_eval(chain({Signature::box(a, d), h}), {fg, Mh});
        auto gh = matrix_eval(chain({g, h}), {Mg, Mh});
        auto rhs2 = matrix_eval(chain({f, Signature::box(b, e)}), {Mf, gh});
        return std::max(element_distance(lhs, rhs1), element_distance(lhs, rhs2));
      }));

  rep.results.push_back(
      run_law("interchange-matrix", 1e-9, seed + 4, scaled(cases, 0.5), [](Corpus& c) {
        auto alg = Algebra::matrix_algebra();
        const auto a = few_types(c, 1), b = few_types(c, 1), cc = few_types(c, 1),
                   d = few_types(c, 1), e = few_types(c, 1), l = few_types(c, 1);
        const Signature f = Signature::box(a, b), g = Signature::box(cc, d),
                        h = Signature::box(b, e), k = Signature::box(d, l);
        const Element Mf = c.element(alg, f), Mg = c.element(alg, g), Mh = c.element(alg, h),
                      Mk = c.element(alg, k);
        auto host = chain({Signature::box(cat(a, cc), cat(b, d)),
                           Signature::box(cat(b, d), cat(e, l))});
        auto full = substitute(substitute(host, 1, par_wiring(h, k)), 0, par_wiring(f, g));
        auto lhs = matrix_eval(full, {Mf, Mg, Mh, Mk});
        auto rhs = matrix_eval(host, {matrix_eval(par_wiring(f, g), {Mf, Mg}),
                                      matrix_eval(par_wiring(h, k), {Mh, Mk})});
        return element_distance(lhs, rhs);
      }));

  rep.results.push_back(
      run_law("swap-naturality-matrix", 1e-9, seed + 5, scaled(cases, 0.5), [](Corpus& c) {
        auto alg = Algebra::matrix_algebra();
        const TypeLabel a = c.type(), b = c.type(), x = c.type(), y = c.type();
        const Signature f = Signature::box({a}, {b}), g = Signature::box({x}, {y});
        const Element Mf = c.element(alg, f), Mg = c.element(alg, g);
        auto w1 = make_diagram(Signature::box({a, x}, {y, b}), {f, g},
                               {Wire(PortRef::outer_in(0), PortRef::in(0, 0)),
                                Wire(PortRef::outer_in(1), PortRef::in(1, 0)),
                                Wire(PortRef::out(0, 0), PortRef::outer_out(1)),
                                Wire(PortRef::out(1, 0), PortRef::outer_out(0))});
        auto w2 = make_diagram(Signature::box({a, x}, {y, b}), {g, f},
                               {Wire(PortRef::outer_in(0), PortRef::in(1, 0)),
                                Wire(PortRef::outer_in(1), PortRef::in(0, 0)),
                                Wire(PortRef::out(0, 0), PortRef::outer_out(0)),
                                Wire(PortRef::out(1, 0), PortRef::outer_out(1))});
        return element_distance(matrix_eval(w1, {Mf, Mg}), matrix_eval(w2, {Mg, Mf}));
      }));

  rep.results.push_back(
      run_law("free-unitality", 0.0, seed + 6, scaled(cases, 0.5), [](Corpus& c) {
        auto alg = Algebra::free_algebra(OperadVariant::WA);
        auto w = nonempty(c, OperadVariant::WA);
        auto atoms = c.elements(alg, w);
        auto applied = alg.apply(w, atoms);
        if (!diagrams_equal(applied.diagram, w)) return 1.0;
        auto again = alg.apply(identity_wiring(w.outer), {applied});
        return element_distance(applied, again);
      }));

  rep.results.push_back(
      run_law("foliation-independence", 1e-9, seed + 7, scaled(cases, 0.3), [](Corpus& c) {
        auto alg = Algebra::matrix_algebra();
        auto w = small_diagram(c, OperadVariant::WA, false);
        const bool portless = w.slots.empty() && w.outer.inputs.empty() && w.outer.outputs.empty();
        double r = 0.0;
        if (!portless) {
          for (auto style : {FoliationStyle::Early, FoliationStyle::Late})
            if (!diagrams_equal(recompose(decompose_acyclic(w, style), w.slots), w)) r = 1.0;
        }
        auto mats = c.elements(alg, w);
        r = std::max(r, element_distance(matrix_eval(w, mats, FoliationStyle::Early),
                                         matrix_eval(w, mats, FoliationStyle::Late)));
        return r;
      }));

  rep.results.push_back(run_law("snake", 0.0, seed + 8, scaled(cases, 0.1), [](Corpus& c) {
    const TypeLabel t = c.type();
    const Signature cupS = Signature::box({}, {t, t}), capS = Signature::box({t, t}, {});
    auto host1 = make_diagram(Signature::box({t}, {t}), {cupS, capS},
                              {Wire(PortRef::outer_in(0), PortRef::in(1, 0)),
                               Wire(PortRef::out(0, 0), PortRef::in(1, 1)),
                               Wire(PortRef::out(0, 1), PortRef::outer_out(0))});
    auto host2 = make_diagram(Signature::box({t}, {t}), {cupS, capS},
                              {Wire(PortRef::outer_in(0), PortRef::in(1, 1)),
                               Wire(PortRef::out(0, 1), PortRef::in(1, 0)),
                               Wire(PortRef::out(0, 0), PortRef::outer_out(0))});
    for (const auto& host : {host1, host2}) {
      auto fused = substitute(substitute(host, 0, cup_wiring(t)), 0, cap_wiring(t));
      if (!diagrams_equal(fused, id_wiring(t))) return 1.0;
    }
    return 0.0;
  }));

  rep.results.push_back(run_law("functoriality-tensor", 1e-9, seed + 9, cases, [](Corpus& c) {
    auto alg = Algebra::tensor_algebra();
    auto sc = small_pair(c, OperadVariant::WD);
    return check_functoriality(alg, sc.host, sc.slot, sc.guest, c.elements(alg, sc.composite));
  }));

  rep.results.push_back(run_law("functoriality-matrix", 1e-9, seed + 10, cases, [](Corpus& c) {
    auto alg = Algebra::matrix_algebra();
    auto sc = small_pair(c, OperadVariant::WA);
    return check_functoriality(alg, sc.host, sc.slot, sc.guest, c.elements(alg, sc.composite));
  }));

  rep.results.push_back(
      run_law("convexity-matrix", 1e-12, seed + 11, scaled(cases, 0.5), [](Corpus& c) {
        auto alg = Algebra::matrix_algebra();
        auto w = small_diagram(c, OperadVariant::WA, true);
        auto elems = c.elements(alg, w);
        const int i = c.pick(0, static_cast<int>(w.slots.size()) - 1);
        return check_convex_enrichment(alg, w, elems, i, c.element(alg, w.slots[i]),
                                       c.real(0.0, 1.0));
      }));
  return rep;
}

LawReport causal_suite(std::uint64_t seed, int cases) {
  LawReport rep;
  rep.suite = "causal";

  rep.results.push_back(
      run_law("ground-equals-input-discard", 1e-12, seed + 20, scaled(cases, 0.5), [](Corpus& c) {
        const Signature f = c.box_signature(2);
        std::set<Wire> wires;
        std::set<Ground> lg, rg;
        for (int i = 0; i < static_cast<int>(f.inputs.size()); ++i) {
          wires.insert(Wire(PortRef::outer_in(i), PortRef::in(0, i)));
          rg.insert(Ground{PortRef::outer_in(i)});
        }
        for (int j = 0; j < static_cast<int>(f.outputs.size()); ++j)
          lg.insert(Ground{PortRef::out(0, j)});
        const Signature outer = Signature::box(f.inputs, {});
        auto lhs = make_diagram(outer, {f}, wires, lg);
        auto rhs = make_diagram(outer, {f}, {}, rg, {}, {0});
        if (!causal_equal(lhs, rhs)) return 1.0;
        auto alg = Algebra::stochastic_algebra();
        const Element K = c.element(alg, f);
        return element_distance(stochastic_eval(lhs, {K}), stochastic_eval(rhs, {K}));
      }));

  rep.results.push_back(run_law("confluence", 0.0, seed + 21, scaled(cases, 0.2), [](Corpus& c) {
    WiringDiagram w = c.diagram(OperadVariant::WGround, 3);
    while (w.slots.size() > 5) w = c.diagram(OperadVariant::WGround, 3);
    std::set<std::string> keys;
    std::function<void(const WiringDiagram&)> go = [&](const WiringDiagram& d) {
      auto ready = eligible_slots(d);
      if (ready.empty()) {
        keys.insert(canonical_form(d).key);
        return;
      }
      for (int s : ready) go(apply_causal_step(d, s).first);
    };
    go(w);
    const auto expected = canonical_form(normalize_causal(w).first).key;
    return (keys.size() == 1 && *keys.begin() == expected) ? 0.0 : 1.0;
  }));

  rep.results.push_back(
      run_law("soundness-stochastic", 1e-12, seed + 22, scaled(cases, 0.5), [](Corpus& c) {
        auto alg = Algebra::stochastic_algebra();
        auto w = small_diagram(c, OperadVariant::WGround, false);
        auto nw = normalize_causal(w).first;
        auto ks = c.elements(alg, w);
        return element_distance(stochastic_eval(w, ks), stochastic_eval(nw, ks));
      }));

  rep.results.push_back(run_law("congruence", 0.0, seed + 23, scaled(cases, 0.3), [](Corpus& c) {
    auto host = nonempty(c, OperadVariant::WGround);
    const int i = c.pick(0, static_cast<int>(host.slots.size()) - 1);
    auto guest = c.diagram_with_outer(OperadVariant::WGround, host.slots[i]);
    auto nh = normalize_causal(host).first;
    auto ng = normalize_causal(guest).first;
    return causal_equal(substitute(host, i, guest), substitute(nh, i, ng)) ? 0.0 : 1.0;
  }));

  rep.results.push_back(
      run_law("functoriality-stochastic", 1e-12, seed + 24, cases, [](Corpus& c) {
        auto alg = Algebra::stochastic_algebra();
        auto sc = small_pair(c, OperadVariant::WGround);
        return check_functoriality(alg, sc.host, sc.slot, sc.guest,
                                   c.elements(alg, sc.composite));
      }));

  rep.results.push_back(
      run_law("convexity-stochastic", 1e-12, seed + 25, scaled(cases, 0.5), [](Corpus& c) {
        auto alg = Algebra::stochastic_algebra();
        auto w = small_diagram(c, OperadVariant::WGround, true);
        auto elems = c.elements(alg, w);
        const int i = c.pick(0, static_cast<int>(w.slots.size()) - 1);
        return check_convex_enrichment(alg, w, elems, i, c.element(alg, w.slots[i]),
                                       c.real(0.0, 1.0));
      }));

  rep.results.push_back(
      run_law("unit-modulo-causality", 0.0, seed + 26, scaled(cases, 0.3), [](Corpus& c) {
        auto w = nonempty(c, OperadVariant::WGround);
        const int i = c.pick(0, static_cast<int>(w.slots.size()) - 1);
        return causal_equal(w, substitute(w, i, identity_wiring(w.slots[i]))) ? 0.0 : 1.0;
      }));
  return rep;
}

LawReport functor_suite(std::uint64_t seed, int cases) {
  LawReport rep;
  rep.suite = "functor";

  rep.results.push_back(run_law("alpha-beta-identity", 0.0, seed + 40, cases, [](Corpus& c) {
    const Signature d = c.dot_signature();
    if (!(alpha_object(beta_object(d)) == d)) return 1.0;
    auto w = c.diagram(OperadVariant::WD);
    return diagrams_equal(alpha_wiring(beta_wiring(w)), w) ? 0.0 : 1.0;
  }));

  rep.results.push_back(run_law("naturality", 0.0, seed + 41, cases, [](Corpus& c) {
    return check_naturality(c.diagram(OperadVariant::WC)) ? 0.0 : 1.0;
  }));

  rep.results.push_back(
      run_law("functorial-translation", 0.0, seed + 42, scaled(cases, 0.5), [](Corpus& c) {
        auto host = nonempty(c, OperadVariant::WC);
        int i = c.pick(0, static_cast<int>(host.slots.size()) - 1);
        auto guest = c.diagram_with_outer(OperadVariant::WC, host.slots[i]);
        if (!diagrams_equal(alpha_wiring(substitute(host, i, guest)),
                            substitute(alpha_wiring(host), i, alpha_wiring(guest))))
          return 1.0;
        auto dhost = nonempty(c, OperadVariant::WD);
        i = c.pick(0, static_cast<int>(dhost.slots.size()) - 1);
        auto dguest = c.diagram_with_outer(OperadVariant::WD, dhost.slots[i]);
        return diagrams_equal(beta_wiring(substitute(dhost, i, dguest)),
                              substitute(beta_wiring(dhost), i, beta_wiring(dguest)))
                   ? 0.0
                   : 1.0;
      }));

  rep.results.push_back(
      run_law("object-collapse", 0.0, seed + 43, scaled(cases, 0.1), [](Corpus& c) {
        const TypeLabel a = c.type(), b = c.type();
        const Signature d = Signature::dot({b, a});
        const bool ok = alpha_object(Signature::box({a}, {b})) == d &&
                        alpha_object(Signature::box({}, {b, a})) == d &&
                        alpha_object(Signature::box({a, b}, {})) == d;
        return ok ? 0.0 : 1.0;
      }));

  rep.results.push_back(
      run_law("eta-invertible", 0.0, seed + 44, scaled(cases, 0.5), [](Corpus& c) {
        const Signature sig = c.box_signature();
        auto eta = eta_component(sig);
        auto inv = eta_inverse_component(sig);
        const bool ok =
            diagrams_equal(substitute(inv, 0, eta), identity_wiring(sig)) &&
            diagrams_equal(substitute(eta, 0, inv),
                           identity_wiring(beta_object(alpha_object(sig))));
        return ok ? 0.0 : 1.0;
      }));

  rep.results.push_back(
      run_law("transport-roundtrip", 0.0, seed + 45, scaled(cases, 0.3), [](Corpus& c) {
        auto tensor = Algebra::tensor_algebra();
        auto alg = transport_algebra(transport_algebra(tensor, TransportDirection::AlongAlpha),
                                     TransportDirection::AlongBeta);
        auto w = small_diagram(c, OperadVariant::WD, false);
        auto ts = c.elements(tensor, w);
        return element_distance(alg.apply(w, ts), tensor.apply(w, ts));
      }));
  return rep;
}

LawReport polycat_suite(std::uint64_t seed, int cases) {
  LawReport rep;
  rep.suite = "polycat";

  rep.results.push_back(
      run_law("forest-preservation", 0.0, seed + 60, scaled(cases, 0.5), [](Corpus& c) {
        auto tr = poly_triple(c);
        auto joined = compose_single_wire(tr.p, tr.q,
                                          join1(PortRef::outer_out(0), PortRef::outer_in(0)));
        if (!validate(OperadVariant::WUA, joined).ok) return 1.0;
        return validate(OperadVariant::WUA, par_poly(tr.p, tr.q)).ok ? 0.0 : 1.0;
      }));

  rep.results.push_back(
      run_law("par-associativity", 0.0, seed + 61, scaled(cases, 0.5), [](Corpus& c) {
        auto p = c.diagram(OperadVariant::WUA, 3);
        auto q = c.diagram(OperadVariant::WUA, 3);
        auto r = c.diagram(OperadVariant::WUA, 3);
        return diagrams_equal(par_poly(par_poly(p, q), r), par_poly(p, par_poly(q, r))) ? 0.0
                                                                                        : 1.0;
      }));

  rep.results.push_back(
      run_law("interchange-orientations", 0.0, seed + 62, scaled(cases, 0.5), [](Corpus& c) {
        auto tr = poly_triple(c);
        const auto& [t, p, q, r] = tr;
        const int q_ins = static_cast<int>(q.outer.inputs.size());
        const int q_outs = static_cast<int>(q.outer.outputs.size());
        // p joined from the left into the first factor, both wire directions
        for (auto spec : {join1(PortRef::outer_out(0), PortRef::outer_in(0)),
                          join1(PortRef::outer_in(0), PortRef::outer_out(0))}) {
          if (!check_interchange(p, q, r, spec)) return 1.0;
        }
        // p joined from the right into the second factor, both directions
        {
          auto lhs = compose_single_wire(par_poly(q, r), p,
                                         join1(PortRef::outer_out(q_outs), PortRef::outer_in(0)));
          auto rhs = par_poly(
              q, compose_single_wire(r, p, join1(PortRef::outer_out(0), PortRef::outer_in(0))));
          if (!diagrams_equal(lhs, rhs)) return 1.0;
        }
        {
          auto lhs = compose_single_wire(par_poly(q, r), p,
                                         join1(PortRef::outer_in(q_ins), PortRef::outer_out(0)));
          auto rhs = par_poly(
              q, compose_single_wire(r, p, join1(PortRef::outer_in(0), PortRef::outer_out(0))));
          if (!diagrams_equal(lhs, rhs)) return 1.0;
        }
        return 0.0;
      }));

  rep.results.push_back(
      run_law("multiple-wires-rejected", 0.0, seed + 63, scaled(cases, 0.1), [](Corpus& c) {
        auto tr = poly_triple(c);
        PolyComposeSpec two;
        two.connections = {{PortRef::outer_out(0), PortRef::outer_in(0)},
                           {PortRef::outer_in(0), PortRef::outer_out(0)}};
        for (const auto& bad : {PolyComposeSpec{}, two}) {
          try {
            compose_single_wire(tr.p, tr.q, bad);
            return 1.0;
          } catch (const Error& e) {
            if (e.code() != Errc::MultipleWires) return 1.0;
          }
        }
        // a single wire still goes through
        compose_single_wire(tr.p, tr.q, join1(PortRef::outer_out(0), PortRef::outer_in(0)));
        return 0.0;
      }));

  rep.results.push_back(
      run_law("reachability", 0.0, seed + 64, scaled(cases, 0.3), [](Corpus& c) {
        return poly_reachable(c.diagram(OperadVariant::WUA)) ? 0.0 : 1.0;
      }));

  rep.results.push_back(
      run_law("connected-compose", 0.0, seed + 65, scaled(cases, 0.3), [](Corpus& c) {
        auto p = c.diagram(OperadVariant::WUAC, 3);
        auto q = c.diagram(OperadVariant::WUAC, 3);
        auto j = find_join(p, q);
        if (!j) {
          const TypeLabel t = c.type();
          p = identity_wiring(Signature::box({t}, {t}));
          q = identity_wiring(Signature::box({t}, {t}));
          j = find_join(p, q);
        }
        auto out = compose_single_wire(p, q, join1(j->first, j->second));
        return validate(OperadVariant::WUAC, out).ok ? 0.0 : 1.0;
      }));
  return rep;
}

}  // namespace

std::vector<std::string> law_suite_names() { return {"core", "causal", "functor", "polycat"}; }

LawReport run_law_suite(const std::string& suite, std::uint64_t seed, int cases) {
  if (suite == "core") return core_suite(seed, cases);
  if (suite == "causal") return causal_suite(seed, cases);
  if (suite == "functor") return functor_suite(seed, cases);
  if (suite == "polycat") return polycat_suite(seed, cases);
  throw Error(Errc::UnknownName, "no law suite named '" + suite + "'");
}

}  // namespace opwire
