#include "opwire/polycat.hpp"

#include <algorithm>
#include <map>

namespace opwire {

namespace {

void require_forest(const WiringDiagram& w, const char* which) {
  auto r = validate(OperadVariant::WUA, w);
  if (!r.ok)
    throw Error(Errc::VariantMismatch, std::string(which) + " operand: " + r.summary());
}

const TypeLabel& outer_port_type(const WiringDiagram& w, const PortRef& p, const char* which) {
  if (!p.outer()) throw Error(Errc::BadPortRef, std::string(which) + ": outer port expected");
  const auto& list = p.face == Face::In ? w.outer.inputs : w.outer.outputs;
  if (p.face == Face::Port || p.index < 0 || p.index >= static_cast<int>(list.size()))
    throw Error(Errc::BadPortRef, std::string(which) + ": no port " + to_string(p));
  return list[p.index];
}

WiringDiagram bridge_compose(const WiringDiagram& p, const WiringDiagram& q,
                             const std::vector<std::pair<PortRef, PortRef>>& connections) {
  require_forest(p, "first");
  require_forest(q, "second");

  std::set<Wire> wires;
  std::set<std::pair<Face, int>> used_p, used_q;
  for (const auto& [pp, qq] : connections) {
    const TypeLabel& tp = outer_port_type(p, pp, "first");
    const TypeLabel& tq = outer_port_type(q, qq, "second");
    if (tp != tq)
      throw Error(Errc::TypeMismatch, to_string(tp) + " joined to " + to_string(tq));
    if (pp.face == qq.face)
      throw Error(Errc::TypeMismatch, "joined ports must point opposite ways");
    if (!used_p.insert({pp.face, pp.index}).second || !used_q.insert({qq.face, qq.index}).second)
      throw Error(Errc::DoublyUsedPort, "connection reuses a boundary port");
    wires.insert(Wire(PortRef{0, pp.face, pp.index}, PortRef{1, qq.face, qq.index}));
  }

  std::vector<TypeLabel> ins, outs;
  auto pass_through = [&](int slot, const std::vector<TypeLabel>& types, Face face,
                          const std::set<std::pair<Face, int>>& used,
                          std::vector<TypeLabel>& acc) {
    for (int i = 0; i < static_cast<int>(types.size()); ++i) {
      if (used.count({face, i})) continue;
      const int oi = static_cast<int>(acc.size());
      acc.push_back(types[i]);
      wires.insert(Wire(PortRef{slot, face, i}, PortRef{PortRef::kOuter, face, oi}));
    }
  };
  pass_through(0, p.outer.inputs, Face::In, used_p, ins);
  pass_through(1, q.outer.inputs, Face::In, used_q, ins);
  pass_through(0, p.outer.outputs, Face::Out, used_p, outs);
  pass_through(1, q.outer.outputs, Face::Out, used_q, outs);

  auto bridge = make_diagram(Signature::box(std::move(ins), std::move(outs)),
                             {p.outer, q.outer}, std::move(wires));
  return substitute(substitute(bridge, 1, q), 0, p);
}

}  // namespace

WiringDiagram compose_single_wire(const WiringDiagram& p, const WiringDiagram& q,
                                  const PolyComposeSpec& spec) {
  if (spec.connections.size() != 1)
    throw Error(Errc::MultipleWires,
                std::to_string(spec.connections.size()) + " connections named, need exactly 1");
  return bridge_compose(p, q, spec.connections);
}

WiringDiagram par_poly(const WiringDiagram& p, const WiringDiagram& q) {
  return bridge_compose(p, q, {});
}

bool check_interchange(const WiringDiagram& p, const WiringDiagram& q, const WiringDiagram& r,
                       const PolyComposeSpec& spec) {
  auto lhs = compose_single_wire(p, par_poly(q, r), spec);
  auto rhs = par_poly(compose_single_wire(p, q, spec), r);
  return diagrams_equal(lhs, rhs);
}

bool poly_reachable(const WiringDiagram& w) {
  auto report = validate(OperadVariant::WUA, w);
  if (!report.ok) throw Error(Errc::VariantMismatch, report.summary());
  const int n = static_cast<int>(w.slots.size());
  if (n == 0) return false;

  // The operations only ever expose slot ports on the boundary, so an
  // outer-to-outer wire puts the input outside the reachable fragment.
  for (const auto& wire : w.wires)
    if (wire.a.outer() && wire.b.outer()) return false;

  std::vector<std::vector<std::pair<int, Wire>>> adj(n);  // neighbor, joining wire
  for (const auto& wire : w.wires) {
    if (wire.a.outer() || wire.b.outer()) continue;
    adj[wire.a.slot].push_back({wire.b.slot, wire});
    adj[wire.b.slot].push_back({wire.a.slot, wire});
  }

  WiringDiagram built;
  std::vector<int> order;  // built slot index -> input slot index
  std::vector<int> pos(n, -1);
  std::vector<bool> seen(n, false);
  bool have_built = false;
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    WiringDiagram comp = identity_wiring(w.slots[root]);
    std::vector<int> comp_order = {root};
    seen[root] = true;
    std::vector<int> stack = {root};
    std::map<int, int> comp_pos = {{root, 0}};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (const auto& [s, wire] : adj[t]) {
        if (seen[s]) continue;
        seen[s] = true;
        const PortRef on_t = wire.a.slot == t ? wire.a : wire.b;
        const PortRef on_s = wire.a.slot == s ? wire.a : wire.b;
        // Boundary port of the partial build currently exposing (t, on_t).
        const PortRef target{comp_pos.at(t), on_t.face, on_t.index};
        PortRef exposed;
        bool found = false;
        for (const auto& cw : comp.wires) {
          if (cw.a == target && cw.b.outer()) exposed = cw.b, found = true;
          if (cw.b == target && cw.a.outer()) exposed = cw.a, found = true;
        }
        if (!found) throw Error(Errc::Internal, "slot port not exposed during rebuild");
        PolyComposeSpec spec;
        spec.connections = {{exposed, PortRef{PortRef::kOuter, on_s.face, on_s.index}}};
        comp = compose_single_wire(comp, identity_wiring(w.slots[s]), spec);
        comp_pos[s] = static_cast<int>(comp_order.size());
        comp_order.push_back(s);
        stack.push_back(s);
      }
    }
    if (!have_built) {
      built = std::move(comp);
      have_built = true;
    } else {
      built = par_poly(built, comp);
    }
    order.insert(order.end(), comp_order.begin(), comp_order.end());
  }
  for (int k = 0; k < n; ++k) pos[order[k]] = k;

  // The rebuilt wiring lists slots in discovery order and its boundary in
  // exposure order; compare against the input modulo both relabelings.
  auto shape = [](const WiringDiagram& d, const std::vector<int>* relabel) {
    auto map_ref = [&](const PortRef& p) {
      if (p.outer()) return p;
      return PortRef{relabel ? (*relabel)[p.slot] : p.slot, p.face, p.index};
    };
    std::set<Wire> internal;
    std::multiset<std::string> boundary;
    for (const auto& wire : d.wires) {
      if (wire.a.outer() || wire.b.outer()) {
        const PortRef inner = wire.a.outer() ? wire.b : wire.a;
        boundary.insert(to_string(map_ref(inner)));
      } else {
        internal.insert(Wire(map_ref(wire.a), map_ref(wire.b)));
      }
    }
    return std::make_pair(std::move(internal), std::move(boundary));
  };
  std::vector<Signature> expected_slots(n);
  for (int k = 0; k < n; ++k) expected_slots[k] = w.slots[order[k]];
  if (built.slots != expected_slots) return false;
  return shape(built, nullptr) == shape(w, &pos);
}

}  // namespace opwire
