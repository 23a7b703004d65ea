#include "opwire/corpus.hpp"

#include <algorithm>

namespace opwire {

namespace {
const std::vector<TypeLabel> kPalette = {{"A", 2}, {"B", 3}, {"C", 4}, {"D", 1}};
}

int Corpus::pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double Corpus::real(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

bool Corpus::chance(double p) { return real(0.0, 1.0) < p; }

TypeLabel Corpus::type() { return kPalette[pick(0, static_cast<int>(kPalette.size()) - 1)]; }

Signature Corpus::box_signature(int max_per_face) {
  int ins = pick(0, max_per_face), outs = pick(0, max_per_face);
  if (ins == 0 && outs == 0) outs = 1;
  std::vector<TypeLabel> i, o;
  for (int k = 0; k < ins; ++k) i.push_back(type());
  for (int k = 0; k < outs; ++k) o.push_back(type());
  return Signature::box(std::move(i), std::move(o));
}

Signature Corpus::dot_signature(int max_ports) {
  int n = pick(0, max_ports);
  if (n == 0 && chance(0.8)) n = 1;
  std::vector<TypeLabel> p;
  for (int k = 0; k < n; ++k) p.push_back(type());
  return Signature::dot(std::move(p));
}

// Builds acyclic wirings front to back: each slot consumes open sources and
// publishes its outputs as new sources. Covers both the plain acyclic case
// and the grounded one.
WiringDiagram Corpus::forward_wired(const Signature* outer, bool allow_grounds, int max_slots) {
  struct Src {
    PortRef ref;
    TypeLabel t;
  };
  std::vector<Src> pool;
  std::set<Wire> wires;
  std::set<Ground> grounds;
  std::vector<Signature> slots;
  std::set<int> discarded;
  std::vector<TypeLabel> outer_ins, outer_outs;

  if (outer) outer_ins = outer->inputs;
  else {
    const int ni = pick(0, 3);
    for (int i = 0; i < ni; ++i) outer_ins.push_back(type());
  }
  for (int i = 0; i < static_cast<int>(outer_ins.size()); ++i) {
    if (allow_grounds && chance(0.15))
      grounds.insert(Ground{PortRef::outer_in(i)});
    else
      pool.push_back({PortRef::outer_in(i), outer_ins[i]});
  }

  auto take = [&](int count) {
    std::vector<Src> out;
    for (int j = 0; j < count; ++j) {
      const int idx = pick(0, static_cast<int>(pool.size()) - 1);
      out.push_back(pool[idx]);
      pool[idx] = pool.back();
      pool.pop_back();
    }
    return out;
  };

  int k = pick(outer ? 0 : 1, max_slots);
  for (int s = 0; s < k; ++s) {
    int a = pool.empty() ? 0 : pick(0, std::min<int>(3, static_cast<int>(pool.size())));
    if (a == 0 && !pool.empty() && chance(0.6)) a = 1;
    auto ins = take(a);
    int b = pick(0, 3);
    if (a == 0 && b == 0) b = 1;
    std::vector<TypeLabel> in_types, out_types;
    for (const auto& src : ins) in_types.push_back(src.t);
    for (int j = 0; j < b; ++j) out_types.push_back(type());
    const int slot = static_cast<int>(slots.size());
    slots.push_back(Signature::box(in_types, out_types));
    for (int j = 0; j < a; ++j) wires.insert(Wire(ins[j].ref, PortRef::in(slot, j)));
    for (int j = 0; j < b; ++j) {
      if (allow_grounds && chance(0.2))
        grounds.insert(Ground{PortRef::out(slot, j)});
      else
        pool.push_back({PortRef::out(slot, j), out_types[j]});
    }
  }

  // Keep the eventual boundary small.
  while (static_cast<int>(pool.size()) > 3) {
    auto ins = take(3);
    const TypeLabel t = type();
    const int slot = static_cast<int>(slots.size());
    slots.push_back(Signature::box({ins[0].t, ins[1].t, ins[2].t}, {t}));
    for (int j = 0; j < 3; ++j) wires.insert(Wire(ins[j].ref, PortRef::in(slot, j)));
    pool.push_back({PortRef::out(slot, 0), t});
  }

  Signature outer_sig;
  if (outer) {
    outer_sig = *outer;
    const auto& wanted = outer->is_box() ? outer->outputs : std::vector<TypeLabel>{};
    if (wanted.empty()) {
      if (!pool.empty()) {
        if (allow_grounds && chance(0.5)) {
          for (const auto& src : pool) grounds.insert(Ground{src.ref});
        } else {
          const int slot = static_cast<int>(slots.size());
          std::vector<TypeLabel> in_types;
          for (const auto& src : pool) in_types.push_back(src.t);
          slots.push_back(Signature::box(in_types, {}));
          for (int j = 0; j < static_cast<int>(pool.size()); ++j)
            wires.insert(Wire(pool[j].ref, PortRef::in(slot, j)));
        }
        pool.clear();
      }
    } else {
      // Adapter slot delivering exactly the demanded outputs.
      const int slot = static_cast<int>(slots.size());
      std::vector<TypeLabel> in_types;
      for (const auto& src : pool) in_types.push_back(src.t);
      slots.push_back(Signature::box(in_types, wanted));
      for (int j = 0; j < static_cast<int>(pool.size()); ++j)
        wires.insert(Wire(pool[j].ref, PortRef::in(slot, j)));
      for (int j = 0; j < static_cast<int>(wanted.size()); ++j)
        wires.insert(Wire(PortRef::out(slot, j), PortRef::outer_out(j)));
      pool.clear();
    }
  } else {
    for (const auto& src : pool) {
      const int j = static_cast<int>(outer_outs.size());
      outer_outs.push_back(src.t);
      wires.insert(Wire(src.ref, PortRef::outer_out(j)));
    }
    pool.clear();
    if (allow_grounds && outer_ins.empty() && outer_outs.empty() && chance(0.5))
      outer_sig = Signature::empty();
    else
      outer_sig = Signature::box(outer_ins, outer_outs);
  }

  if (allow_grounds && chance(0.3)) {
    discarded.insert(static_cast<int>(slots.size()));
    slots.push_back(box_signature());
  }
  return make_diagram(std::move(outer_sig), std::move(slots), std::move(wires),
                      std::move(grounds), {}, std::move(discarded));
}

// Builds polarity-free wirings (cyclic boxes or dots) by randomly matching
// same-typed ports, routing a few leftovers to the boundary.
WiringDiagram Corpus::matched(OperadVariant v, const Signature* outer, int max_slots) {
  const bool dots = v == OperadVariant::WD;
  std::vector<Signature> slots;
  const int k = pick(1, max_slots);
  for (int s = 0; s < k; ++s) slots.push_back(dots ? dot_signature() : box_signature());

  std::map<TypeLabel, std::vector<PortRef>> classes;
  for (int s = 0; s < k; ++s)
    for (auto [face, idx] : signature_ports(slots[s])) {
      const auto& t = face == Face::In    ? slots[s].inputs[idx]
                      : face == Face::Out ? slots[s].outputs[idx]
                                          : slots[s].ports[idx];
      classes[t].push_back(PortRef{s, face, idx});
    }
  if (outer)
    for (auto [face, idx] : signature_ports(*outer)) {
      const auto& t = face == Face::In    ? outer->inputs[idx]
                      : face == Face::Out ? outer->outputs[idx]
                                          : outer->ports[idx];
      classes[t].push_back(PortRef{PortRef::kOuter, face, idx});
    }

  // Fix odd parities with one adapter slot.
  std::vector<TypeLabel> odd;
  for (const auto& [t, ports] : classes)
    if (ports.size() % 2) odd.push_back(t);
  if (outer && !odd.empty()) {
    const int s = static_cast<int>(slots.size());
    slots.push_back(dots ? Signature::dot(odd) : Signature::box({}, odd));
    for (int j = 0; j < static_cast<int>(odd.size()); ++j)
      classes[odd[j]].push_back(dots ? PortRef::port(s, j) : PortRef::out(s, j));
  }

  std::set<Wire> wires;
  std::vector<TypeLabel> outer_ins, outer_outs;
  std::vector<std::pair<TypeLabel, PortRef>> dot_boundary;
  // Keep each boundary face at three ports or fewer; extras that cannot pair
  // get absorbed by a fresh one-port slot. Optional extra boundary pairs draw
  // on the budget left over after reserving one port per odd class.
  int spare = (dots ? 3 : 6) - static_cast<int>(classes.size());
  for (auto& [t, ports] : classes) {
    std::shuffle(ports.begin(), ports.end(), rng_);
    std::size_t leave = 0;
    if (!outer) {
      leave = ports.size() % 2;
      if (ports.size() >= 2 && leave + 2 <= ports.size() && spare >= 2 && chance(0.4)) {
        leave += 2;
        spare -= 2;
      }
    }
    std::size_t i = 0;
    for (; i + 2 <= ports.size() - leave; i += 2) wires.insert(Wire(ports[i], ports[i + 1]));
    for (; i < ports.size(); ++i) {
      // leftover: route to a fresh boundary port while a face has room
      if (dots && dot_boundary.size() < 3) {
        dot_boundary.push_back({t, ports[i]});
      } else if (!dots && outer_ins.size() < 3 && (outer_outs.size() >= 3 || chance(0.5))) {
        const int j = static_cast<int>(outer_ins.size());
        outer_ins.push_back(t);
        wires.insert(Wire(PortRef::outer_in(j), ports[i]));
      } else if (!dots && outer_outs.size() < 3) {
        const int j = static_cast<int>(outer_outs.size());
        outer_outs.push_back(t);
        wires.insert(Wire(PortRef::outer_out(j), ports[i]));
      } else {
        const int s = static_cast<int>(slots.size());
        slots.push_back(dots ? Signature::dot({t}) : Signature::box({t}, {}));
        wires.insert(Wire(dots ? PortRef::port(s, 0) : PortRef::in(s, 0), ports[i]));
      }
    }
  }

  std::map<TypeLabel, int> loops;
  if (chance(0.3)) loops[type()] += 1;

  Signature outer_sig;
  if (outer) {
    outer_sig = *outer;
  } else if (dots) {
    std::shuffle(dot_boundary.begin(), dot_boundary.end(), rng_);
    std::vector<TypeLabel> ports;
    for (int j = 0; j < static_cast<int>(dot_boundary.size()); ++j) {
      ports.push_back(dot_boundary[j].first);
      wires.insert(Wire(PortRef::outer_port(j), dot_boundary[j].second));
    }
    outer_sig = Signature::dot(std::move(ports));
  } else {
    outer_sig = Signature::box(std::move(outer_ins), std::move(outer_outs));
  }
  return make_diagram(std::move(outer_sig), std::move(slots), std::move(wires), {},
                      std::move(loops));
}

// Random forest wirings: a tree/forest of slot-to-slot wires plus free ports
// routed straight to the boundary.
WiringDiagram Corpus::forest(bool connected, int max_slots) {
  const int k = pick(1, max_slots);
  struct Edge {
    int parent, child;
    bool down;  // parent output feeds child input
    TypeLabel t;
  };
  std::vector<Edge> edges;
  std::vector<bool> touched(k, false);
  for (int s = 1; s < k; ++s)
    if (connected || chance(0.75)) {
      edges.push_back({pick(0, s - 1), s, chance(0.5), type()});
      touched[edges.back().parent] = touched[s] = true;
    }
  // Chain leftover isolated slots so at most one slot needs a boundary port
  // just to be non-empty (the boundary has room for three ports per face).
  int prev_iso = -1;
  for (int s = 0; s < k; ++s) {
    if (touched[s]) continue;
    if (prev_iso >= 0) {
      edges.push_back({prev_iso, s, chance(0.5), type()});
      touched[prev_iso] = touched[s] = true;
    }
    prev_iso = s;
  }

  std::vector<std::vector<TypeLabel>> ins(k), outs(k);
  std::vector<std::pair<int, int>> ein(edges.size()), eout(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    const int src = ed.down ? ed.parent : ed.child;
    const int dst = ed.down ? ed.child : ed.parent;
    eout[e] = {src, static_cast<int>(outs[src].size())};
    outs[src].push_back(ed.t);
    ein[e] = {dst, static_cast<int>(ins[dst].size())};
    ins[dst].push_back(ed.t);
  }
  std::set<Wire> wires;
  std::vector<TypeLabel> outer_ins, outer_outs;
  for (int s = 0; s < k; ++s) {
    if (ins[s].empty() && outs[s].empty()) {
      const TypeLabel t = type();
      wires.insert(
          Wire(PortRef::out(s, 0), PortRef::outer_out(static_cast<int>(outer_outs.size()))));
      outer_outs.push_back(t);
      outs[s].push_back(t);
    }
  }
  for (int s = 0; s < k; ++s) {
    while (static_cast<int>(ins[s].size()) < 3 && outer_ins.size() < 3 && chance(0.35)) {
      const TypeLabel t = type();
      wires.insert(Wire(PortRef::outer_in(static_cast<int>(outer_ins.size())),
                        PortRef::in(s, static_cast<int>(ins[s].size()))));
      outer_ins.push_back(t);
      ins[s].push_back(t);
    }
    while (static_cast<int>(outs[s].size()) < 3 && outer_outs.size() < 3 && chance(0.35)) {
      const TypeLabel t = type();
      wires.insert(Wire(PortRef::out(s, static_cast<int>(outs[s].size())),
                        PortRef::outer_out(static_cast<int>(outer_outs.size()))));
      outer_outs.push_back(t);
      outs[s].push_back(t);
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e)
    wires.insert(Wire(PortRef::out(eout[e].first, eout[e].second),
                      PortRef::in(ein[e].first, ein[e].second)));
  std::vector<Signature> slots;
  for (int s = 0; s < k; ++s) slots.push_back(Signature::box(ins[s], outs[s]));
  return make_diagram(Signature::box(std::move(outer_ins), std::move(outer_outs)),
                      std::move(slots), std::move(wires));
}

WiringDiagram Corpus::diagram(OperadVariant v, int max_slots) {
  switch (v) {
    case OperadVariant::WA:
      return forward_wired(nullptr, false, max_slots);
    case OperadVariant::WGround:
      return forward_wired(nullptr, true, max_slots);
    case OperadVariant::WC:
    case OperadVariant::WD:
      return matched(v, nullptr, max_slots);
    case OperadVariant::WUA:
      return forest(false, max_slots);
    case OperadVariant::WUAC:
      return forest(true, max_slots);
  }
  throw Error(Errc::Internal, "unhandled variant");
}

WiringDiagram Corpus::diagram_with_outer(OperadVariant v, const Signature& outer, int max_slots) {
  switch (v) {
    case OperadVariant::WA:
      return forward_wired(&outer, false, max_slots);
    case OperadVariant::WGround:
      return forward_wired(&outer, true, max_slots);
    case OperadVariant::WC:
    case OperadVariant::WD:
      return matched(v, &outer, max_slots);
    case OperadVariant::WUA:
    case OperadVariant::WUAC: {
      if (!outer.is_box()) throw Error(Errc::NotABox, "forest boundaries are boxes");
      if (chance(0.5)) return identity_wiring(outer);
      // two-slot refinement through a fresh middle wire
      const TypeLabel m = type();
      std::set<Wire> wires;
      for (int i = 0; i < static_cast<int>(outer.inputs.size()); ++i)
        wires.insert(Wire(PortRef::outer_in(i), PortRef::in(0, i)));
      wires.insert(Wire(PortRef::out(0, 0), PortRef::in(1, 0)));
      for (int j = 0; j < static_cast<int>(outer.outputs.size()); ++j)
        wires.insert(Wire(PortRef::out(1, j), PortRef::outer_out(j)));
      return make_diagram(outer,
                          {Signature::box(outer.inputs, {m}), Signature::box({m}, outer.outputs)},
                          std::move(wires));
    }
  }
  throw Error(Errc::Internal, "unhandled variant");
}

Element Corpus::element(const Algebra& alg, const Signature& sig) {
  const CarrierSpec c = alg.carrier(sig);
  switch (c.kind) {
    case Element::Kind::Free:
      return Element::free_atom(sig, "x" + std::to_string(label_counter_++));
    case Element::Kind::Tensor: {
      long long n = 1;
      for (int d : c.shape) n *= d;
      std::vector<double> data(n);
      for (auto& x : data) x = real(-1.0, 1.0);
      return Element::tensor(c.shape, std::move(data));
    }
    case Element::Kind::Matrix: {
      std::vector<double> data(static_cast<long long>(c.rows) * c.cols);
      for (auto& x : data) x = real(-1.0, 1.0);
      return Element::matrix(c.rows, c.cols, std::move(data));
    }
    case Element::Kind::Kernel: {
      std::vector<double> data(static_cast<long long>(c.rows) * c.cols);
      for (int j = 0; j < c.cols; ++j) {
        double sum = 0.0;
        for (int i = 0; i < c.rows; ++i) {
          data[static_cast<long long>(i) * c.cols + j] = real(0.01, 1.0);
          sum += data[static_cast<long long>(i) * c.cols + j];
        }
        for (int i = 0; i < c.rows; ++i) data[static_cast<long long>(i) * c.cols + j] /= sum;
      }
      return Element::kernel(c.rows, c.cols, std::move(data));
    }
    case Element::Kind::Scalar:
      return Element::scalar(real(-1.0, 1.0));
  }
  throw Error(Errc::Internal, "unhandled carrier kind");
}

std::vector<Element> Corpus::elements(const Algebra& alg, const WiringDiagram& w) {
  std::vector<Element> out;
  out.reserve(w.slots.size());
  for (const auto& sig : w.slots) out.push_back(element(alg, sig));
  return out;
}

}  // namespace opwire
