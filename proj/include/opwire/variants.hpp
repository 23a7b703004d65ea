#pragma once

#include <memory>

#include "opwire/diagram.hpp"

namespace opwire {

/// The composition regimes. Each value fixes a signature kind (dots for WD,
/// boxes otherwise) and a wiring legality predicate.
enum class OperadVariant { WA, WC, WD, WUA, WUAC, WGround };

const char* variant_name(OperadVariant v);

struct Violation {
  std::string rule;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string rule, std::string detail) {
    ok = false;
    violations.push_back({std::move(rule), std::move(detail)});
  }
  std::string summary() const;
};

/// Checks whether a well-formed diagram is a legal operation of the given
/// variant. Failures are reported, never thrown.
ValidationReport validate(OperadVariant v, const WiringDiagram& w);

// ---- named generator wirings ----

/// Two chained slots (a->b), (b->c).
WiringDiagram seq_wiring(const std::vector<TypeLabel>& a, const std::vector<TypeLabel>& b,
                         const std::vector<TypeLabel>& c);
/// Two box slots side by side.
WiringDiagram par_wiring(const Signature& f, const Signature& g);
/// 0-slot straight wire.
WiringDiagram id_wiring(const TypeLabel& a);
/// 0-slot crossing.
WiringDiagram swap_wiring(const TypeLabel& a, const TypeLabel& b);
/// 0-slot wiring pairing the two outer outputs (legal in WC and in the image
/// of WD).
WiringDiagram cup_wiring(const TypeLabel& a);
/// 0-slot wiring pairing the two outer inputs.
WiringDiagram cap_wiring(const TypeLabel& a);
/// 0-slot wiring grounding its single outer input.
WiringDiagram ground_wire(const TypeLabel& a);
/// EmptySig-outer wiring with one discarded slot.
WiringDiagram operadic_discard(const Signature& sig);

// ---- generator decomposition ----

/// Tree over {Slot, Id, Swap, Seq, Par} produced by foliating an acyclic
/// wiring. Seq is diagram order: Seq(x, y) runs x first.
struct Expression {
  enum class Kind { Slot, Id, Swap, Seq, Par };
  Kind kind = Kind::Slot;
  int slot = -1;
  TypeLabel t1, t2;
  std::shared_ptr<Expression> lhs, rhs;
};

Expression expr_slot(int slot);
Expression expr_id(TypeLabel t);
Expression expr_swap(TypeLabel a, TypeLabel b);
Expression expr_seq(Expression first, Expression then);
Expression expr_par(Expression left, Expression right);

/// Input/output type lists of an expression; checks boundary agreement at
/// every Seq node against the given slot signatures.
std::pair<std::vector<TypeLabel>, std::vector<TypeLabel>> expr_boundary(
    const Expression& e, const std::vector<Signature>& slot_signatures);

std::string to_string(const Expression& e);

enum class FoliationStyle { Early, Late };

/// Level-assignment foliation of a WA-valid wiring: each level is a Par of
/// slot/id atoms, levels are joined by Seq with adjacent-swap routing layers
/// in between. Early assigns each slot the lowest admissible level, Late the
/// highest; both recompose to the same canonical form.
Expression decompose_acyclic(const WiringDiagram& w,
                             FoliationStyle style = FoliationStyle::Early);

/// Oracle inverse of decompose_acyclic: folds the expression back into a
/// WA-valid wiring. Every slot index in [0, slot_signatures.size()) must be
/// used exactly once.
WiringDiagram recompose(const Expression& e, const std::vector<Signature>& slot_signatures);

}  // namespace opwire
