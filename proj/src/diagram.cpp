#include "opwire/diagram.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace opwire {

int face_arity(const Signature& sig, Face face) {
  switch (sig.kind) {
    case SigKind::Box:
      if (face == Face::In) return static_cast<int>(sig.inputs.size());
      if (face == Face::Out) return static_cast<int>(sig.outputs.size());
      throw Error(Errc::BadPortRef, "box signature has no port face");
    case SigKind::Dot:
      if (face == Face::Port) return static_cast<int>(sig.ports.size());
      throw Error(Errc::BadPortRef, "dot signature has in/out faces? no");
    case SigKind::Empty:
      throw Error(Errc::BadPortRef, "empty signature has no ports");
  }
  throw Error(Errc::Internal, "unreachable");
}

std::vector<std::pair<Face, int>> signature_ports(const Signature& sig) {
  std::vector<std::pair<Face, int>> out;
  switch (sig.kind) {
    case SigKind::Box:
      for (int i = 0; i < static_cast<int>(sig.inputs.size()); ++i) out.emplace_back(Face::In, i);
      for (int i = 0; i < static_cast<int>(sig.outputs.size()); ++i) out.emplace_back(Face::Out, i);
      break;
    case SigKind::Dot:
      for (int i = 0; i < static_cast<int>(sig.ports.size()); ++i) out.emplace_back(Face::Port, i);
      break;
    case SigKind::Empty:
      break;
  }
  return out;
}

static const Signature& sig_at(const WiringDiagram& w, const PortRef& p) {
  if (p.outer()) return w.outer;
  if (p.slot < 0 || p.slot >= static_cast<int>(w.slots.size()))
    throw Error(Errc::BadPortRef, "slot index out of range in " + to_string(p));
  return w.slots[p.slot];
}

const TypeLabel& type_at(const WiringDiagram& w, const PortRef& p) {
  const Signature& sig = sig_at(w, p);
  const std::vector<TypeLabel>* labels = nullptr;
  switch (sig.kind) {
    case SigKind::Box:
      if (p.face == Face::In) labels = &sig.inputs;
      else if (p.face == Face::Out) labels = &sig.outputs;
      else throw Error(Errc::BadPortRef, "port face on box signature: " + to_string(p));
      break;
    case SigKind::Dot:
      if (p.face == Face::Port) labels = &sig.ports;
      else throw Error(Errc::BadPortRef, "in/out face on dot signature: " + to_string(p));
      break;
    case SigKind::Empty:
      throw Error(Errc::BadPortRef, "port reference into empty signature: " + to_string(p));
  }
  if (p.index < 0 || p.index >= static_cast<int>(labels->size()))
    throw Error(Errc::BadPortRef, "port index out of range in " + to_string(p));
  return (*labels)[p.index];
}

WiringDiagram make_diagram(Signature outer, std::vector<Signature> slots, std::set<Wire> wires,
                           std::set<Ground> grounds, std::map<TypeLabel, int> loops,
                           std::set<int> discarded) {
  WiringDiagram w;
  w.outer = std::move(outer);
  w.slots = std::move(slots);
  w.wires = std::move(wires);
  w.grounds = std::move(grounds);
  w.loops = std::move(loops);
  w.discarded = std::move(discarded);

  for (int d : w.discarded)
    if (d < 0 || d >= static_cast<int>(w.slots.size()))
      throw Error(Errc::BadSlotIndex, "discarded slot " + std::to_string(d) + " out of range");
  for (auto& [label, count] : w.loops)
    if (count <= 0) throw Error(Errc::BadPortRef, "non-positive loop multiplicity");

  // Port coverage: count uses of every endpoint.
  std::map<PortRef, int> uses;
  auto touch = [&](const PortRef& p) {
    type_at(w, p);  // resolves and range-checks
    if (!p.outer() && w.discarded.count(p.slot))
      throw Error(Errc::DoublyUsedPort, "discarded slot has incident wiring at " + to_string(p));
    if (++uses[p] > 1) throw Error(Errc::DoublyUsedPort, to_string(p) + " used twice");
  };
  for (const Wire& wire : w.wires) {
    if (wire.a == wire.b) throw Error(Errc::DoublyUsedPort, "self-wire at " + to_string(wire.a));
    touch(wire.a);
    touch(wire.b);
    if (type_at(w, wire.a) != type_at(w, wire.b))
      throw Error(Errc::TypeMismatch, "wire " + to_string(wire) + " joins unequal types");
  }
  for (const Ground& g : w.grounds) {
    touch(g.source);
    // A ground terminates a source-polarity port in box-kind diagrams.
    bool source_polarity = g.source.outer() ? g.source.face == Face::In : g.source.face == Face::Out;
    if (sig_at(w, g.source).is_box() && !source_polarity)
      throw Error(Errc::BadPortRef, "ground on sink-polarity port " + to_string(g.source));
  }

  auto require_covered = [&](const PortRef& p) {
    if (!uses.count(p)) throw Error(Errc::DanglingPort, to_string(p) + " is not covered");
  };
  for (auto [face, idx] : signature_ports(w.outer)) require_covered(PortRef{PortRef::kOuter, face, idx});
  for (int s = 0; s < static_cast<int>(w.slots.size()); ++s) {
    if (w.discarded.count(s)) continue;
    for (auto [face, idx] : signature_ports(w.slots[s])) require_covered(PortRef{s, face, idx});
  }
  return w;
}

WiringDiagram identity_wiring(const Signature& sig) {
  if (sig.is_empty()) throw Error(Errc::EmptyObject, "no identity wiring on the empty object");
  std::set<Wire> wires;
  for (auto [face, idx] : signature_ports(sig))
    wires.insert(Wire(PortRef{PortRef::kOuter, face, idx}, PortRef{0, face, idx}));
  return make_diagram(sig, {sig}, std::move(wires));
}

namespace {

// Junction-side attachment during substitution: either a resolved endpoint
// (a port of the fused diagram), a ground, or a hop to another junction.
struct Attachment {
  enum class Kind { None, Port, Ground, Junction } kind = Kind::None;
  PortRef port;   // Kind::Port
  int junction = -1;  // Kind::Junction
};

}  // namespace

WiringDiagram substitute(const WiringDiagram& host, int slot, const WiringDiagram& guest) {
  if (slot < 0 || slot >= static_cast<int>(host.slots.size()))
    throw Error(Errc::BadSlotIndex, "substitute into slot " + std::to_string(slot));
  if (!(guest.outer == host.slots[slot]))
    throw Error(Errc::SignatureMismatch, "guest outer does not match host slot signature");

  const int m = static_cast<int>(guest.slots.size());
  auto map_host_slot = [&](int s) { return s < slot ? s : s + m - 1; };
  auto map_host_port = [&](const PortRef& p) {
    return p.outer() ? p : PortRef{map_host_slot(p.slot), p.face, p.index};
  };
  auto map_guest_port = [&](const PortRef& p) {
    return PortRef{slot + p.slot, p.face, p.index};  // inner ports only
  };

  WiringDiagram out;
  out.outer = host.outer;
  out.slots.reserve(host.slots.size() + m - 1);
  for (int s = 0; s < static_cast<int>(host.slots.size()); ++s) {
    if (s == slot) {
      for (const Signature& g : guest.slots) out.slots.push_back(g);
    } else {
      out.slots.push_back(host.slots[s]);
    }
  }
  for (int d : host.discarded)
    if (d != slot) out.discarded.insert(map_host_slot(d));

  if (host.discarded.count(slot)) {
    // Operadic discarding propagates: every guest slot is discarded and the
    // guest wiring content is dropped.
    for (int s = 0; s < m; ++s) out.discarded.insert(slot + s);
    for (const Wire& w : host.wires) out.wires.insert(Wire(map_host_port(w.a), map_host_port(w.b)));
    for (const Ground& g : host.grounds) out.grounds.insert(Ground{map_host_port(g.source)});
    out.loops = host.loops;
    return make_diagram(out.outer, out.slots, out.wires, out.grounds, out.loops, out.discarded);
  }

  for (int d : guest.discarded) out.discarded.insert(slot + d);
  out.loops = host.loops;
  for (auto& [label, count] : guest.loops) out.loops[label] += count;

  // Junctions: ports of the substituted slot, identified with the guest's
  // outer ports. Each carries one host-side and one guest-side attachment.
  auto junction_ports = signature_ports(host.slots[slot]);
  std::map<std::pair<Face, int>, int> junction_id;
  for (int j = 0; j < static_cast<int>(junction_ports.size()); ++j)
    junction_id[junction_ports[j]] = j;
  const int nj = static_cast<int>(junction_ports.size());
  std::vector<Attachment> host_att(nj), guest_att(nj);

  auto set_att = [](Attachment& a, Attachment v) {
    if (a.kind != Attachment::Kind::None)
      throw Error(Errc::Internal, "junction attached twice on one side");
    a = v;
  };

  for (const Wire& w : host.wires) {
    bool ja = !w.a.outer() && w.a.slot == slot;
    bool jb = !w.b.outer() && w.b.slot == slot;
    if (!ja && !jb) {
      out.wires.insert(Wire(map_host_port(w.a), map_host_port(w.b)));
      continue;
    }
    if (ja && jb) {
      int j1 = junction_id.at({w.a.face, w.a.index});
      int j2 = junction_id.at({w.b.face, w.b.index});
      set_att(host_att[j1], {Attachment::Kind::Junction, {}, j2});
      set_att(host_att[j2], {Attachment::Kind::Junction, {}, j1});
    } else {
      const PortRef& jp = ja ? w.a : w.b;
      const PortRef& other = ja ? w.b : w.a;
      int j = junction_id.at({jp.face, jp.index});
      set_att(host_att[j], {Attachment::Kind::Port, map_host_port(other), -1});
    }
  }
  for (const Ground& g : host.grounds) {
    if (!g.source.outer() && g.source.slot == slot) {
      int j = junction_id.at({g.source.face, g.source.index});
      set_att(host_att[j], {Attachment::Kind::Ground, {}, -1});
    } else {
      out.grounds.insert(Ground{map_host_port(g.source)});
    }
  }
  for (const Wire& w : guest.wires) {
    bool ja = w.a.outer();
    bool jb = w.b.outer();
    if (!ja && !jb) {
      out.wires.insert(Wire(map_guest_port(w.a), map_guest_port(w.b)));
      continue;
    }
    if (ja && jb) {
      int j1 = junction_id.at({w.a.face, w.a.index});
      int j2 = junction_id.at({w.b.face, w.b.index});
      set_att(guest_att[j1], {Attachment::Kind::Junction, {}, j2});
      set_att(guest_att[j2], {Attachment::Kind::Junction, {}, j1});
    } else {
      const PortRef& jp = ja ? w.a : w.b;
      const PortRef& other = ja ? w.b : w.a;
      int j = junction_id.at({jp.face, jp.index});
      set_att(guest_att[j], {Attachment::Kind::Port, map_guest_port(other), -1});
    }
  }
  for (const Ground& g : guest.grounds) {
    if (g.source.outer()) {
      int j = junction_id.at({g.source.face, g.source.index});
      set_att(guest_att[j], {Attachment::Kind::Ground, {}, -1});
    } else {
      out.grounds.insert(Ground{map_guest_port(g.source)});
    }
  }

  // Contract junction-internal paths. Walking out of junction j on one side
  // either terminates (port/ground) or hops to another junction, where the
  // walk continues on the opposite side.
  std::vector<bool> visited(nj, false);
  // side: 0 = host, 1 = guest
  auto walk = [&](int j, int side) -> Attachment {
    int cur = j, cur_side = side;
    while (true) {
      const Attachment& a = cur_side == 0 ? host_att[cur] : guest_att[cur];
      if (a.kind == Attachment::Kind::None)
        throw Error(Errc::Internal, "uncovered junction during substitution");
      if (a.kind != Attachment::Kind::Junction) {
        visited[cur] = true;
        return a;
      }
      visited[cur] = true;
      cur = a.junction;
      visited[cur] = true;
      // arrived over a cur_side wire; continue on the other side
      cur_side = 1 - cur_side;
    }
  };

  for (int j = 0; j < nj; ++j) {
    if (visited[j]) continue;
    Attachment h = host_att[j], g = guest_att[j];
    if (h.kind == Attachment::Kind::Junction && g.kind == Attachment::Kind::Junction) continue;
    visited[j] = true;
    Attachment e1 = h.kind == Attachment::Kind::Junction ? walk(h.junction, 1) : h;
    Attachment e2 = g.kind == Attachment::Kind::Junction ? walk(g.junction, 0) : g;
    if (e1.kind == Attachment::Kind::Port && e2.kind == Attachment::Kind::Port) {
      out.wires.insert(Wire(e1.port, e2.port));
    } else if (e1.kind == Attachment::Kind::Port && e2.kind == Attachment::Kind::Ground) {
      out.grounds.insert(Ground{e1.port});
    } else if (e1.kind == Attachment::Kind::Ground && e2.kind == Attachment::Kind::Port) {
      out.grounds.insert(Ground{e2.port});
    } else {
      throw Error(Errc::Internal, "ground-to-ground fusion");
    }
  }
  // Remaining unvisited junctions sit on closed junction-only cycles.
  for (int j = 0; j < nj; ++j) {
    if (visited[j]) continue;
    // Trace the cycle, marking every junction on it; it contributes one loop.
    TypeLabel label = type_at(guest, PortRef{PortRef::kOuter, junction_ports[j].first, junction_ports[j].second});
    int cur = j, cur_side = 0;
    while (!visited[cur]) {
      visited[cur] = true;
      const Attachment& a = cur_side == 0 ? host_att[cur] : guest_att[cur];
      cur = a.junction;
      cur_side = 1 - cur_side;
      if (cur == j && cur_side == 0) break;
    }
    out.loops[label] += 1;
  }

  return make_diagram(out.outer, out.slots, out.wires, out.grounds, out.loops, out.discarded);
}

CanonicalWiring canonical_form(const WiringDiagram& w) {
  std::ostringstream os;
  os << "outer=" << to_string(w.outer) << ";slots=";
  for (std::size_t i = 0; i < w.slots.size(); ++i) {
    if (i) os << ",";
    os << to_string(w.slots[i]);
  }
  os << ";wires=";
  for (const Wire& wire : w.wires) os << to_string(wire) << ";";
  os << "grounds=";
  for (const Ground& g : w.grounds) os << to_string(g.source) << ";";
  os << "loops=";
  for (auto& [label, count] : w.loops) os << to_string(label) << "*" << count << ";";
  os << "discarded=";
  for (int d : w.discarded) os << d << ",";
  CanonicalWiring c;
  c.key = os.str();
  c.hash = std::hash<std::string>{}(c.key);
  return c;
}

bool diagrams_equal(const WiringDiagram& w1, const WiringDiagram& w2) {
  return canonical_form(w1) == canonical_form(w2);
}

}  // namespace opwire
