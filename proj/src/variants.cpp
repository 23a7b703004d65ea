#include "opwire/variants.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace opwire {

const char* variant_name(OperadVariant v) {
  switch (v) {
    case OperadVariant::WA: return "WA";
    case OperadVariant::WC: return "WC";
    case OperadVariant::WD: return "WD";
    case OperadVariant::WUA: return "WUA";
    case OperadVariant::WUAC: return "WUAC";
    case OperadVariant::WGround: return "WGround";
  }
  return "?";
}

std::string ValidationReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) os << v.rule << " (" << v.detail << "); ";
  return os.str();
}

namespace {

bool is_source(const PortRef& p) {
  // Box polarity: wires flow out of outer inputs and inner outputs.
  return p.outer() ? p.face == Face::In : p.face == Face::Out;
}

void check_box_signatures(const WiringDiagram& w, ValidationReport& r, bool allow_empty_outer) {
  if (!w.outer.is_box() && !(allow_empty_outer && w.outer.is_empty()))
    r.add("box-signatures", "outer is " + to_string(w.outer));
  for (std::size_t s = 0; s < w.slots.size(); ++s)
    if (!w.slots[s].is_box()) r.add("box-signatures", "slot " + std::to_string(s));
}

void check_polarity(const WiringDiagram& w, ValidationReport& r) {
  for (const Wire& wire : w.wires) {
    int sources = (is_source(wire.a) ? 1 : 0) + (is_source(wire.b) ? 1 : 0);
    if (sources != 1) r.add("polarity", to_string(wire));
  }
}

void check_acyclic(const WiringDiagram& w, ValidationReport& r) {
  const int n = static_cast<int>(w.slots.size());
  std::vector<std::vector<int>> succ(n);
  for (const Wire& wire : w.wires) {
    if (wire.a.outer() || wire.b.outer()) continue;
    const PortRef& src = is_source(wire.a) ? wire.a : wire.b;
    const PortRef& dst = is_source(wire.a) ? wire.b : wire.a;
    succ[src.slot].push_back(dst.slot);
  }
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (state[start]) continue;
    // iterative DFS
    std::vector<std::pair<int, std::size_t>> frames{{start, 0}};
    state[start] = 1;
    while (!frames.empty()) {
      auto& [node, it] = frames.back();
      if (it < succ[node].size()) {
        int next = succ[node][it++];
        if (state[next] == 1) {
          r.add("acyclic", "cycle through slot " + std::to_string(next));
          state[next] = 2;
        } else if (state[next] == 0) {
          state[next] = 1;
          frames.emplace_back(next, 0);
        }
      } else {
        state[node] = 2;
        frames.pop_back();
      }
    }
  }
}

void check_no_grounds(const WiringDiagram& w, ValidationReport& r) {
  if (!w.grounds.empty()) r.add("no-grounds", std::to_string(w.grounds.size()) + " present");
}
void check_no_loops(const WiringDiagram& w, ValidationReport& r) {
  if (!w.loops.empty()) r.add("no-loops", "floating loops present");
}
void check_no_discards(const WiringDiagram& w, ValidationReport& r) {
  if (!w.discarded.empty()) r.add("no-discards", "discarded slots present");
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Forest rule of WUA: the undirected multigraph on slots (edges = slot-to-slot
// wires) has no cycles. A double wire between two slots already fails.
void check_forest(const WiringDiagram& w, ValidationReport& r, bool require_connected) {
  const int n = static_cast<int>(w.slots.size());
  Dsu dsu(n);
  int edges = 0;
  for (const Wire& wire : w.wires) {
    if (wire.a.outer() || wire.b.outer()) continue;
    ++edges;
    if (wire.a.slot == wire.b.slot || !dsu.unite(wire.a.slot, wire.b.slot))
      r.add("forest", to_string(wire) + " closes an undirected cycle");
  }
  if (require_connected) {
    int components = 0;
    for (int i = 0; i < n; ++i)
      if (dsu.find(i) == i) ++components;
    if (components > 1) r.add("connected", std::to_string(components) + " slot components");
  }
}

}  // namespace

ValidationReport validate(OperadVariant v, const WiringDiagram& w) {
  ValidationReport r;
  switch (v) {
    case OperadVariant::WA:
      check_box_signatures(w, r, false);
      if (!r.ok) break;
      check_polarity(w, r);
      check_acyclic(w, r);
      check_no_grounds(w, r);
      check_no_loops(w, r);
      check_no_discards(w, r);
      break;
    case OperadVariant::WC:
      check_box_signatures(w, r, false);
      check_no_grounds(w, r);
      check_no_discards(w, r);
      break;
    case OperadVariant::WD:
      if (!w.outer.is_dot()) r.add("dot-signatures", "outer is " + to_string(w.outer));
      for (std::size_t s = 0; s < w.slots.size(); ++s)
        if (!w.slots[s].is_dot()) r.add("dot-signatures", "slot " + std::to_string(s));
      check_no_grounds(w, r);
      check_no_discards(w, r);
      break;
    case OperadVariant::WUA:
    case OperadVariant::WUAC:
      check_box_signatures(w, r, false);
      if (!r.ok) break;
      check_polarity(w, r);
      check_acyclic(w, r);
      check_no_grounds(w, r);
      check_no_loops(w, r);
      check_no_discards(w, r);
      check_forest(w, r, v == OperadVariant::WUAC);
      break;
    case OperadVariant::WGround:
      check_box_signatures(w, r, true);
      if (!r.ok) break;
      check_polarity(w, r);
      check_acyclic(w, r);
      check_no_loops(w, r);
      // make_diagram already restricts grounds to source-polarity ports and
      // keeps discarded slots bare; nothing further to reject here.
      break;
  }
  return r;
}

WiringDiagram seq_wiring(const std::vector<TypeLabel>& a, const std::vector<TypeLabel>& b,
                         const std::vector<TypeLabel>& c) {
  Signature f = Signature::box(a, b), g = Signature::box(b, c);
  std::set<Wire> wires;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    wires.insert(Wire(PortRef::outer_in(i), PortRef::in(0, i)));
  for (int i = 0; i < static_cast<int>(b.size()); ++i)
    wires.insert(Wire(PortRef::out(0, i), PortRef::in(1, i)));
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    wires.insert(Wire(PortRef::out(1, i), PortRef::outer_out(i)));
  return make_diagram(Signature::box(a, c), {f, g}, std::move(wires));
}

WiringDiagram par_wiring(const Signature& f, const Signature& g) {
  if (!f.is_box() || !g.is_box()) throw Error(Errc::NotABox, "par_wiring needs box signatures");
  std::vector<TypeLabel> ins = f.inputs, outs = f.outputs;
  ins.insert(ins.end(), g.inputs.begin(), g.inputs.end());
  outs.insert(outs.end(), g.outputs.begin(), g.outputs.end());
  std::set<Wire> wires;
  for (int i = 0; i < static_cast<int>(f.inputs.size()); ++i)
    wires.insert(Wire(PortRef::outer_in(i), PortRef::in(0, i)));
  for (int i = 0; i < static_cast<int>(g.inputs.size()); ++i)
    wires.insert(Wire(PortRef::outer_in(static_cast<int>(f.inputs.size()) + i), PortRef::in(1, i)));
  for (int i = 0; i < static_cast<int>(f.outputs.size()); ++i)
    wires.insert(Wire(PortRef::out(0, i), PortRef::outer_out(i)));
  for (int i = 0; i < static_cast<int>(g.outputs.size()); ++i)
    wires.insert(Wire(PortRef::out(1, i), PortRef::outer_out(static_cast<int>(f.outputs.size()) + i)));
  return make_diagram(Signature::box(std::move(ins), std::move(outs)), {f, g}, std::move(wires));
}

WiringDiagram id_wiring(const TypeLabel& a) {
  return make_diagram(Signature::box({a}, {a}), {},
                      {Wire(PortRef::outer_in(0), PortRef::outer_out(0))});
}

WiringDiagram swap_wiring(const TypeLabel& a, const TypeLabel& b) {
  return make_diagram(Signature::box({a, b}, {b, a}), {},
                      {Wire(PortRef::outer_in(0), PortRef::outer_out(1)),
                       Wire(PortRef::outer_in(1), PortRef::outer_out(0))});
}

WiringDiagram cup_wiring(const TypeLabel& a) {
  return make_diagram(Signature::box({}, {a, a}), {},
                      {Wire(PortRef::outer_out(0), PortRef::outer_out(1))});
}

WiringDiagram cap_wiring(const TypeLabel& a) {
  return make_diagram(Signature::box({a, a}, {}), {},
                      {Wire(PortRef::outer_in(0), PortRef::outer_in(1))});
}

WiringDiagram ground_wire(const TypeLabel& a) {
  return make_diagram(Signature::box({a}, {}), {}, {}, {Ground{PortRef::outer_in(0)}});
}

WiringDiagram operadic_discard(const Signature& sig) {
  return make_diagram(Signature::empty(), {sig}, {}, {}, {}, {0});
}

// ---- expressions ----

Expression expr_slot(int slot) {
  Expression e;
  e.kind = Expression::Kind::Slot;
  e.slot = slot;
  return e;
}
Expression expr_id(TypeLabel t) {
  Expression e;
  e.kind = Expression::Kind::Id;
  e.t1 = std::move(t);
  return e;
}
Expression expr_swap(TypeLabel a, TypeLabel b) {
  Expression e;
  e.kind = Expression::Kind::Swap;
  e.t1 = std::move(a);
  e.t2 = std::move(b);
  return e;
}
Expression expr_seq(Expression first, Expression then) {
  Expression e;
  e.kind = Expression::Kind::Seq;
  e.lhs = std::make_shared<Expression>(std::move(first));
  e.rhs = std::make_shared<Expression>(std::move(then));
  return e;
}
Expression expr_par(Expression left, Expression right) {
  Expression e;
  e.kind = Expression::Kind::Par;
  e.lhs = std::make_shared<Expression>(std::move(left));
  e.rhs = std::make_shared<Expression>(std::move(right));
  return e;
}

std::pair<std::vector<TypeLabel>, std::vector<TypeLabel>> expr_boundary(
    const Expression& e, const std::vector<Signature>& sigs) {
  switch (e.kind) {
    case Expression::Kind::Slot: {
      if (e.slot < 0 || e.slot >= static_cast<int>(sigs.size()))
        throw Error(Errc::BadSlotIndex, "expression slot " + std::to_string(e.slot));
      const Signature& s = sigs[e.slot];
      if (!s.is_box()) throw Error(Errc::NotABox, "expression slot signature");
      return {s.inputs, s.outputs};
    }
    case Expression::Kind::Id:
      return {{e.t1}, {e.t1}};
    case Expression::Kind::Swap:
      return {{e.t1, e.t2}, {e.t2, e.t1}};
    case Expression::Kind::Seq: {
      auto [li, lo] = expr_boundary(*e.lhs, sigs);
      auto [ri, ro] = expr_boundary(*e.rhs, sigs);
      if (lo != ri) throw Error(Errc::TypeMismatch, "Seq boundary mismatch");
      return {li, ro};
    }
    case Expression::Kind::Par: {
      auto [li, lo] = expr_boundary(*e.lhs, sigs);
      auto [ri, ro] = expr_boundary(*e.rhs, sigs);
      li.insert(li.end(), ri.begin(), ri.end());
      lo.insert(lo.end(), ro.begin(), ro.end());
      return {li, lo};
    }
  }
  throw Error(Errc::Internal, "unreachable");
}

std::string to_string(const Expression& e) {
  switch (e.kind) {
    case Expression::Kind::Slot: return "s" + std::to_string(e.slot);
    case Expression::Kind::Id: return "id(" + e.t1.name + ")";
    case Expression::Kind::Swap: return "swap(" + e.t1.name + "," + e.t2.name + ")";
    case Expression::Kind::Seq: return "(" + to_string(*e.lhs) + " ; " + to_string(*e.rhs) + ")";
    case Expression::Kind::Par: return "(" + to_string(*e.lhs) + " | " + to_string(*e.rhs) + ")";
  }
  return "?";
}

// ---- decomposition ----

namespace {

struct WireTable {
  std::vector<Wire> wires;
  std::map<PortRef, int> at;

  explicit WireTable(const WiringDiagram& w) {
    for (const Wire& wire : w.wires) {
      int id = static_cast<int>(wires.size());
      wires.push_back(wire);
      at[wire.a] = id;
      at[wire.b] = id;
    }
  }
  int covering(const PortRef& p) const {
    auto it = at.find(p);
    if (it == at.end()) throw Error(Errc::DanglingPort, to_string(p));
    return it->second;
  }
};

Expression fold_par(std::vector<Expression> parts) {
  if (parts.empty()) throw Error(Errc::Internal, "empty Par layer");
  Expression acc = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) acc = expr_par(std::move(acc), std::move(parts[i]));
  return acc;
}

// Emits adjacent-transposition layers (bubble sort) rewriting `bus` into the
// order given by `desired`, appending each layer to `layers`.
void route_bus(std::vector<int>& bus, const std::vector<TypeLabel>& types_of,
               const std::vector<int>& desired, std::vector<Expression>& layers) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < desired.size(); ++i) pos[desired[i]] = static_cast<int>(i);
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < bus.size(); ++i) {
      if (pos.at(bus[i]) > pos.at(bus[i + 1])) {
        std::vector<Expression> atoms;
        for (std::size_t k = 0; k < bus.size(); ++k) {
          if (k == i) {
            atoms.push_back(expr_swap(types_of[bus[i]], types_of[bus[i + 1]]));
            ++k;
          } else {
            atoms.push_back(expr_id(types_of[bus[k]]));
          }
        }
        layers.push_back(fold_par(std::move(atoms)));
        std::swap(bus[i], bus[i + 1]);
        moved = true;
      }
    }
  }
}

}  // namespace

Expression decompose_acyclic(const WiringDiagram& w, FoliationStyle style) {
  ValidationReport r = validate(OperadVariant::WA, w);
  if (!r.ok) throw Error(Errc::NotAcyclic, "decompose_acyclic: " + r.summary());

  const int n = static_cast<int>(w.slots.size());
  WireTable table(w);
  std::vector<TypeLabel> wire_type(table.wires.size());
  for (std::size_t i = 0; i < table.wires.size(); ++i)
    wire_type[i] = type_at(w, table.wires[i].a);

  // Internal predecessor/successor slot relations.
  std::vector<std::vector<int>> preds(n), succs(n);
  for (const Wire& wire : w.wires) {
    if (wire.a.outer() || wire.b.outer()) continue;
    const PortRef& src = wire.a.face == Face::Out ? wire.a : wire.b;
    const PortRef& dst = wire.a.face == Face::Out ? wire.b : wire.a;
    preds[dst.slot].push_back(src.slot);
    succs[src.slot].push_back(dst.slot);
  }
  // Early levels by iteration to fixpoint (graph is acyclic and tiny).
  std::vector<int> level(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s)
      for (int p : preds[s])
        if (level[p] + 1 > level[s]) {
          level[s] = level[p] + 1;
          changed = true;
        }
  }
  int max_level = 0;
  for (int s = 0; s < n; ++s) max_level = std::max(max_level, level[s]);
  if (style == FoliationStyle::Late && n > 0) {
    std::vector<int> late(n, max_level);
    changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n; ++s)
        for (int q : succs[s])
          if (late[q] - 1 < late[s]) {
            late[s] = late[q] - 1;
            changed = true;
          }
    }
    level = late;
  }

  if (n == 0 && w.outer.inputs.empty() && w.outer.outputs.empty())
    throw Error(Errc::EmptyObject, "cannot decompose the port-free empty wiring");

  // Bus of open wires, seeded by the outer inputs.
  std::vector<int> bus;
  for (int i = 0; i < static_cast<int>(w.outer.inputs.size()); ++i)
    bus.push_back(table.covering(PortRef::outer_in(i)));

  std::vector<Expression> layers;
  for (int lv = 1; lv <= max_level; ++lv) {
    std::vector<int> here;
    for (int s = 0; s < n; ++s)
      if (level[s] == lv) here.push_back(s);
    if (here.empty()) continue;

    std::vector<int> desired;
    for (int s : here)
      for (int i = 0; i < static_cast<int>(w.slots[s].inputs.size()); ++i)
        desired.push_back(table.covering(PortRef::in(s, i)));
    std::set<int> consumed(desired.begin(), desired.end());
    for (int wid : bus)
      if (!consumed.count(wid)) desired.push_back(wid);
    route_bus(bus, wire_type, desired, layers);

    std::vector<Expression> atoms;
    std::vector<int> new_bus;
    std::size_t cursor = 0;
    for (int s : here) {
      atoms.push_back(expr_slot(s));
      cursor += w.slots[s].inputs.size();
      for (int i = 0; i < static_cast<int>(w.slots[s].outputs.size()); ++i)
        new_bus.push_back(table.covering(PortRef::out(s, i)));
    }
    for (; cursor < bus.size(); ++cursor) {
      atoms.push_back(expr_id(wire_type[bus[cursor]]));
      new_bus.push_back(bus[cursor]);
    }
    layers.push_back(fold_par(std::move(atoms)));
    bus = std::move(new_bus);
  }

  std::vector<int> final_order;
  for (int i = 0; i < static_cast<int>(w.outer.outputs.size()); ++i)
    final_order.push_back(table.covering(PortRef::outer_out(i)));
  route_bus(bus, wire_type, final_order, layers);

  if (layers.empty()) {
    // Pure routing diagram already in order: a Par of identities.
    std::vector<Expression> atoms;
    for (int wid : bus) atoms.push_back(expr_id(wire_type[wid]));
    return fold_par(std::move(atoms));
  }
  Expression acc = std::move(layers.front());
  for (std::size_t i = 1; i < layers.size(); ++i) acc = expr_seq(std::move(acc), std::move(layers[i]));
  return acc;
}

// ---- recomposition ----

namespace {

struct Node {
  TypeLabel type;
  bool tagged = false;
  PortRef port;
};

struct GraphBuilder {
  std::vector<Node> nodes;
  std::vector<int> parent;
  std::vector<bool> slot_used;

  int fresh(TypeLabel t) {
    nodes.push_back({std::move(t), false, {}});
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(nodes.size()) - 1;
  }
  int tagged(TypeLabel t, PortRef p) {
    int id = fresh(std::move(t));
    nodes[id].tagged = true;
    nodes[id].port = p;
    return id;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    if (!(nodes[a].type == nodes[b].type))
      throw Error(Errc::TypeMismatch, "recompose: joining unequal types");
    parent[find(a)] = find(b);
  }

  struct Frame {
    std::vector<int> ins, outs;
  };

  Frame eval(const Expression& e, const std::vector<Signature>& sigs) {
    switch (e.kind) {
      case Expression::Kind::Slot: {
        if (e.slot < 0 || e.slot >= static_cast<int>(sigs.size()))
          throw Error(Errc::BadSlotIndex, "recompose slot " + std::to_string(e.slot));
        if (slot_used[e.slot])
          throw Error(Errc::ArityMismatch, "slot used twice: " + std::to_string(e.slot));
        slot_used[e.slot] = true;
        const Signature& s = sigs[e.slot];
        Frame f;
        for (int i = 0; i < static_cast<int>(s.inputs.size()); ++i)
          f.ins.push_back(tagged(s.inputs[i], PortRef::in(e.slot, i)));
        for (int i = 0; i < static_cast<int>(s.outputs.size()); ++i)
          f.outs.push_back(tagged(s.outputs[i], PortRef::out(e.slot, i)));
        return f;
      }
      case Expression::Kind::Id: {
        int node = fresh(e.t1);
        return {{node}, {node}};
      }
      case Expression::Kind::Swap: {
        int n1 = fresh(e.t1), n2 = fresh(e.t2);
        return {{n1, n2}, {n2, n1}};
      }
      case Expression::Kind::Seq: {
        Frame l = eval(*e.lhs, sigs), r = eval(*e.rhs, sigs);
        if (l.outs.size() != r.ins.size())
          throw Error(Errc::TypeMismatch, "Seq arity mismatch in recompose");
        for (std::size_t i = 0; i < l.outs.size(); ++i) unite(l.outs[i], r.ins[i]);
        return {std::move(l.ins), std::move(r.outs)};
      }
      case Expression::Kind::Par: {
        Frame l = eval(*e.lhs, sigs), r = eval(*e.rhs, sigs);
        l.ins.insert(l.ins.end(), r.ins.begin(), r.ins.end());
        l.outs.insert(l.outs.end(), r.outs.begin(), r.outs.end());
        return {std::move(l.ins), std::move(l.outs)};
      }
    }
    throw Error(Errc::Internal, "unreachable");
  }
};

}  // namespace

WiringDiagram recompose(const Expression& e, const std::vector<Signature>& sigs) {
  GraphBuilder g;
  g.slot_used.assign(sigs.size(), false);
  GraphBuilder::Frame top = g.eval(e, sigs);
  for (std::size_t s = 0; s < sigs.size(); ++s)
    if (!g.slot_used[s]) throw Error(Errc::ArityMismatch, "slot unused: " + std::to_string(s));

  std::vector<TypeLabel> ins, outs;
  for (int node : top.ins) ins.push_back(g.nodes[node].type);
  for (int node : top.outs) outs.push_back(g.nodes[node].type);
  Signature outer = Signature::box(ins, outs);
  for (std::size_t i = 0; i < top.ins.size(); ++i)
    g.unite(top.ins[i], g.tagged(ins[i], PortRef::outer_in(static_cast<int>(i))));
  for (std::size_t i = 0; i < top.outs.size(); ++i)
    g.unite(top.outs[i], g.tagged(outs[i], PortRef::outer_out(static_cast<int>(i))));

  std::map<int, std::vector<PortRef>> classes;
  for (std::size_t id = 0; id < g.nodes.size(); ++id)
    if (g.nodes[id].tagged) classes[g.find(static_cast<int>(id))].push_back(g.nodes[id].port);
  std::set<Wire> wires;
  for (auto& [root, ports] : classes) {
    if (ports.size() != 2)
      throw Error(Errc::Internal, "recompose chain with " + std::to_string(ports.size()) + " endpoints");
    wires.insert(Wire(ports[0], ports[1]));
  }
  return make_diagram(std::move(outer), std::vector<Signature>(sigs), std::move(wires));
}

}  // namespace opwire
