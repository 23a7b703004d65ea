#pragma once

#include "opwire/variants.hpp"

namespace opwire {

/// Audit record of one discard rewrite: the slot eliminated and the grounds
/// introduced on the sources that used to feed it.
struct NormalizationStep {
  int slot = -1;
  std::vector<Ground> introduced;
};

struct NormalizationTrace {
  std::vector<NormalizationStep> steps;
};

/// Slots on which the discard rewrite may fire right now: live slots whose
/// outputs are all grounded (vacuously, slots with no outputs).
std::vector<int> eligible_slots(const WiringDiagram& w);

/// Fires the rewrite on one eligible slot and reports the grounds introduced.
std::pair<WiringDiagram, NormalizationStep> apply_causal_step(const WiringDiagram& w, int slot);

/// Rewrites to discard-normal form: while some non-discarded slot has every
/// output grounded (vacuously so for output-free slots), discard it, drop
/// those grounds and ground the source of each wire feeding its inputs.
/// Deterministic (lowest eligible slot first) and terminating, since each
/// step removes one live slot. Throws NotValidWGround on illegal input.
std::pair<WiringDiagram, NormalizationTrace> normalize_causal(const WiringDiagram& w);

/// Equality modulo the causality equation, decided by comparing normal
/// forms. Sound and complete for the rewrite-confluent fragment covered
/// here (confluence is exercised empirically by the test corpus).
bool causal_equal(const WiringDiagram& w1, const WiringDiagram& w2);

}  // namespace opwire
