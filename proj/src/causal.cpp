#include "opwire/causal.hpp"

namespace opwire {

namespace {

bool all_outputs_grounded(const WiringDiagram& w, int slot) {
  for (int j = 0; j < static_cast<int>(w.slots[slot].outputs.size()); ++j)
    if (!w.grounds.count(Ground{PortRef::out(slot, j)})) return false;
  return true;
}

}  // namespace

std::vector<int> eligible_slots(const WiringDiagram& w) {
  std::vector<int> out;
  for (int s = 0; s < static_cast<int>(w.slots.size()); ++s)
    if (!w.discarded.count(s) && all_outputs_grounded(w, s)) out.push_back(s);
  return out;
}

std::pair<WiringDiagram, NormalizationStep> apply_causal_step(const WiringDiagram& w, int slot) {
  if (slot < 0 || slot >= static_cast<int>(w.slots.size()) || w.discarded.count(slot) ||
      !all_outputs_grounded(w, slot))
    throw Error(Errc::BadSlotIndex, "slot " + std::to_string(slot) + " is not eligible");
  WiringDiagram cur = w;
  NormalizationStep step;
  step.slot = slot;
  for (int j = 0; j < static_cast<int>(cur.slots[slot].outputs.size()); ++j)
    cur.grounds.erase(Ground{PortRef::out(slot, j)});
  for (int i = 0; i < static_cast<int>(cur.slots[slot].inputs.size()); ++i) {
    const PortRef sink = PortRef::in(slot, i);
    Wire feeding;
    bool found = false;
    for (const auto& wire : cur.wires) {
      if (wire.a == sink || wire.b == sink) {
        feeding = wire;
        found = true;
        break;
      }
    }
    if (!found) throw Error(Errc::Internal, "uncovered input on a live slot");
    cur.wires.erase(feeding);
    const PortRef source = feeding.a == sink ? feeding.b : feeding.a;
    Ground g{source};
    cur.grounds.insert(g);
    step.introduced.push_back(g);
  }
  cur.discarded.insert(slot);
  return {std::move(cur), std::move(step)};
}

std::pair<WiringDiagram, NormalizationTrace> normalize_causal(const WiringDiagram& w) {
  auto report = validate(OperadVariant::WGround, w);
  if (!report.ok) throw Error(Errc::NotValidWGround, report.summary());

  WiringDiagram cur = w;
  NormalizationTrace trace;
  for (auto ready = eligible_slots(cur); !ready.empty(); ready = eligible_slots(cur)) {
    auto [next, step] = apply_causal_step(cur, ready.front());
    cur = std::move(next);
    trace.steps.push_back(std::move(step));
  }
  // Re-run the well-formedness checks; the rewrite must preserve them.
  cur = make_diagram(cur.outer, cur.slots, cur.wires, cur.grounds, cur.loops, cur.discarded);
  return {std::move(cur), std::move(trace)};
}

bool causal_equal(const WiringDiagram& w1, const WiringDiagram& w2) {
  return diagrams_equal(normalize_causal(w1).first, normalize_causal(w2).first);
}

}  // namespace opwire
