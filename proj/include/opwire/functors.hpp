#pragma once

#include "opwire/algebra.hpp"

namespace opwire {

/// Cyclic-to-dot translation on boundary shapes: a box with inputs
/// [A1..An] and outputs [B1..Bm] becomes the dot [B1..Bm, An..A1].
Signature alpha_object(const Signature& sig);

/// Port index of the translated dot for a port of the box: output j goes to
/// dot port j, input i to dot port m + (n - 1 - i) (0-based).
int alpha_port(const Signature& box_sig, Face face, int index);

/// Same-connectivity translation of a cyclic wiring into a dot wiring;
/// loops carry over unchanged.
WiringDiagram alpha_wiring(const WiringDiagram& w);

/// Dot-to-cyclic translation: every port becomes an output, in order.
Signature beta_object(const Signature& sig);

WiringDiagram beta_wiring(const WiringDiagram& w);

/// Component of the natural isomorphism at a box signature: a one-slot
/// wiring over outer beta_object(alpha_object(sig)) that passes the slot
/// outputs straight through and bends each input up to an outer output.
WiringDiagram eta_component(const Signature& sig);

/// Explicit inverse bend; substituting eta_component into its slot yields
/// the identity wiring on sig (and symmetrically).
WiringDiagram eta_inverse_component(const Signature& sig);

/// Naturality square for a cyclic wiring: bending the outer boundary after
/// composing equals composing the translated wiring with the slotwise bends.
bool check_naturality(const WiringDiagram& w);

enum class TransportDirection { AlongAlpha, AlongBeta };

/// Pulls an algebra back along alpha (dot algebra -> cyclic algebra) or
/// beta (cyclic algebra -> dot algebra).
Algebra transport_algebra(const Algebra& alg, TransportDirection direction);

}  // namespace opwire
