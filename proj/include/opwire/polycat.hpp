#pragma once

#include "opwire/variants.hpp"

namespace opwire {

/// Names the boundary ports to join: each entry pairs an outer port of the
/// first operand with an outer port of the second. Single-wire composition
/// demands exactly one entry; the zero-entry case is spatial composition.
struct PolyComposeSpec {
  std::vector<std::pair<PortRef, PortRef>> connections;
};

/// Joins two forest wirings along exactly one boundary wire. Implemented by
/// substituting both operands into a two-slot bridge wiring, so the fusion
/// path is shared with ordinary composition. Throws MultipleWires when the
/// spec names any number of connections other than one, TypeMismatch when
/// the joined ports disagree in type or point the same way.
WiringDiagram compose_single_wire(const WiringDiagram& p, const WiringDiagram& q,
                                  const PolyComposeSpec& spec);

/// Disjoint side-by-side placement; first operand's slots and boundary come
/// first.
WiringDiagram par_poly(const WiringDiagram& p, const WiringDiagram& q);

/// The interchange square: joining p to q inside q ⊗ r equals joining p to
/// q and then placing r beside the result. `spec` connects p to q; the same
/// port indices address q inside the product.
bool check_interchange(const WiringDiagram& p, const WiringDiagram& q, const WiringDiagram& r,
                       const PolyComposeSpec& spec);

/// Constructively rebuilds a forest wiring from bare slots using only the
/// two operations above and checks the result matches the input up to a
/// permutation of the outer boundary. Requires every outer port to be wired
/// to a slot port; returns false for wirings outside that fragment (they
/// are genuinely not reachable).
bool poly_reachable(const WiringDiagram& w);

}  // namespace opwire
