#include "opwire/functors.hpp"

#include <algorithm>

namespace opwire {

namespace {

void require_ok(OperadVariant v, const WiringDiagram& w, Errc code) {
  auto r = validate(v, w);
  if (!r.ok) throw Error(code, r.summary());
}

PortRef alpha_endpoint(const WiringDiagram& w, const PortRef& p) {
  const Signature& sig = p.outer() ? w.outer : w.slots.at(p.slot);
  return PortRef{p.slot, Face::Port, alpha_port(sig, p.face, p.index)};
}

PortRef beta_endpoint(const PortRef& p) {
  if (p.face != Face::Port) throw Error(Errc::BadPortRef, "dot wiring expected");
  return PortRef{p.slot, Face::Out, p.index};
}

}  // namespace

Signature alpha_object(const Signature& sig) {
  if (!sig.is_box()) throw Error(Errc::NotABox, "alpha acts on box signatures");
  std::vector<TypeLabel> ports = sig.outputs;
  for (auto it = sig.inputs.rbegin(); it != sig.inputs.rend(); ++it) ports.push_back(*it);
  return Signature::dot(std::move(ports));
}

int alpha_port(const Signature& box_sig, Face face, int index) {
  if (!box_sig.is_box()) throw Error(Errc::NotABox, "alpha acts on box signatures");
  const int m = static_cast<int>(box_sig.outputs.size());
  const int n = static_cast<int>(box_sig.inputs.size());
  if (face == Face::Out) {
    if (index < 0 || index >= m) throw Error(Errc::BadPortRef, "output index out of range");
    return index;
  }
  if (face == Face::In) {
    if (index < 0 || index >= n) throw Error(Errc::BadPortRef, "input index out of range");
    return m + (n - 1 - index);
  }
  throw Error(Errc::BadPortRef, "box signatures have no plain ports");
}

WiringDiagram alpha_wiring(const WiringDiagram& w) {
  require_ok(OperadVariant::WC, w, Errc::NotValidWC);
  std::vector<Signature> slots;
  slots.reserve(w.slots.size());
  for (const auto& s : w.slots) slots.push_back(alpha_object(s));
  std::set<Wire> wires;
  for (const auto& wire : w.wires)
    wires.insert(Wire(alpha_endpoint(w, wire.a), alpha_endpoint(w, wire.b)));
  return make_diagram(alpha_object(w.outer), std::move(slots), std::move(wires), {}, w.loops);
}

Signature beta_object(const Signature& sig) {
  if (!sig.is_dot()) throw Error(Errc::NotADot, "beta acts on dot signatures");
  return Signature::box({}, sig.ports);
}

WiringDiagram beta_wiring(const WiringDiagram& w) {
  require_ok(OperadVariant::WD, w, Errc::NotValidWD);
  std::vector<Signature> slots;
  slots.reserve(w.slots.size());
  for (const auto& s : w.slots) slots.push_back(beta_object(s));
  std::set<Wire> wires;
  for (const auto& wire : w.wires)
    wires.insert(Wire(beta_endpoint(wire.a), beta_endpoint(wire.b)));
  return make_diagram(beta_object(w.outer), std::move(slots), std::move(wires), {}, w.loops);
}

WiringDiagram eta_component(const Signature& sig) {
  if (!sig.is_box()) throw Error(Errc::NotABox, "eta is indexed by box signatures");
  const int m = static_cast<int>(sig.outputs.size());
  const int n = static_cast<int>(sig.inputs.size());
  std::set<Wire> wires;
  for (int j = 0; j < m; ++j) wires.insert(Wire(PortRef::out(0, j), PortRef::outer_out(j)));
  for (int i = 0; i < n; ++i)
    wires.insert(Wire(PortRef::in(0, i), PortRef::outer_out(m + (n - 1 - i))));
  return make_diagram(beta_object(alpha_object(sig)), {sig}, std::move(wires));
}

WiringDiagram eta_inverse_component(const Signature& sig) {
  if (!sig.is_box()) throw Error(Errc::NotABox, "eta is indexed by box signatures");
  const int m = static_cast<int>(sig.outputs.size());
  const int n = static_cast<int>(sig.inputs.size());
  std::set<Wire> wires;
  for (int j = 0; j < m; ++j) wires.insert(Wire(PortRef::out(0, j), PortRef::outer_out(j)));
  for (int i = 0; i < n; ++i)
    wires.insert(Wire(PortRef::out(0, m + (n - 1 - i)), PortRef::outer_in(i)));
  return make_diagram(sig, {beta_object(alpha_object(sig))}, std::move(wires));
}

bool check_naturality(const WiringDiagram& w) {
  require_ok(OperadVariant::WC, w, Errc::NotValidWC);
  auto lhs = substitute(eta_component(w.outer), 0, w);
  auto rhs = beta_wiring(alpha_wiring(w));
  for (int s = static_cast<int>(w.slots.size()) - 1; s >= 0; --s)
    rhs = substitute(rhs, s, eta_component(w.slots[s]));
  return diagrams_equal(lhs, rhs);
}

Algebra transport_algebra(const Algebra& alg, TransportDirection direction) {
  if (direction == TransportDirection::AlongAlpha) {
    if (alg.variant() != OperadVariant::WD)
      throw Error(Errc::VariantMismatch, "pulling back along alpha needs a dot-wiring algebra");
    return Algebra::transported(
        OperadVariant::WC, alg, [](const Signature& s) { return alpha_object(s); },
        [](const WiringDiagram& w) { return alpha_wiring(w); });
  }
  if (alg.variant() != OperadVariant::WC)
    throw Error(Errc::VariantMismatch, "pulling back along beta needs a cyclic-wiring algebra");
  return Algebra::transported(
      OperadVariant::WD, alg, [](const Signature& s) { return beta_object(s); },
      [](const WiringDiagram& w) { return beta_wiring(w); });
}

}  // namespace opwire
