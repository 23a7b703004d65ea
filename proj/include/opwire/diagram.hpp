#pragma once

#include <cstddef>
#include <optional>

#include "opwire/types.hpp"

namespace opwire {

/// An operad operation: inner slots wired inside an outer boundary.
/// Invariants (enforced by make_diagram):
///   - every port of the outer boundary and of every non-discarded slot is
///     covered by exactly one wire end or ground;
///   - discarded slots have no incident wires or grounds;
///   - type labels agree across each wire.
struct WiringDiagram {
  Signature outer;
  std::vector<Signature> slots;
  std::set<Wire> wires;
  std::set<Ground> grounds;
  std::map<TypeLabel, int> loops;  // multiset: label -> multiplicity
  std::set<int> discarded;
};

/// Sorted deterministic rendering of a diagram plus a stable hash.
/// Equal iff the diagrams are connectivity-equal (slot order matters,
/// wire/ground listing order does not).
struct CanonicalWiring {
  std::string key;
  std::size_t hash = 0;

  bool operator==(const CanonicalWiring& o) const { return key == o.key; }
  bool operator!=(const CanonicalWiring& o) const { return key != o.key; }
};

/// Number of ports on a face of a signature; throws BadPortRef for a face
/// the signature does not have.
int face_arity(const Signature& sig, Face face);

/// Lists every port of a signature, input face first (box) or in basepoint
/// order (dot).
std::vector<std::pair<Face, int>> signature_ports(const Signature& sig);

/// Type label at an endpoint of the diagram; throws BadPortRef when the
/// reference does not resolve.
const TypeLabel& type_at(const WiringDiagram& w, const PortRef& p);

/// Validating constructor for operad operations.
WiringDiagram make_diagram(Signature outer, std::vector<Signature> slots,
                           std::set<Wire> wires, std::set<Ground> grounds = {},
                           std::map<TypeLabel, int> loops = {},
                           std::set<int> discarded = {});

/// Trivial wiring: one slot of the given signature, every outer port wired
/// straight through. The operadic unit.
WiringDiagram identity_wiring(const Signature& sig);

/// Operad composition by diagram substitution: the guest replaces the
/// host slot in place, guest outer ports act as junctions and all
/// junction-internal paths are contracted into single wires. Junction-only
/// cycles become floating loops. Substituting into a discarded slot discards
/// every guest slot and drops the guest wiring content.
WiringDiagram substitute(const WiringDiagram& host, int slot, const WiringDiagram& guest);

CanonicalWiring canonical_form(const WiringDiagram& w);

bool diagrams_equal(const WiringDiagram& w1, const WiringDiagram& w2);

}  // namespace opwire
