#pragma once

#include <cstdint>
#include <random>

#include "opwire/algebra.hpp"

namespace opwire {

/// Seeded generator of small random wirings and carrier data for the law
/// suites: up to 8 slots, up to 3 ports per signature face, type dimensions
/// at most 4. Deterministic for a fixed seed.
class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  int pick(int lo, int hi);  // inclusive
  double real(double lo, double hi);
  bool chance(double p);

  TypeLabel type();
  Signature box_signature(int max_per_face = 3);
  Signature dot_signature(int max_ports = 3);

  /// A random legal operation of the variant.
  WiringDiagram diagram(OperadVariant v, int max_slots = 5);

  /// A random legal operation with the given outer boundary, suitable as a
  /// substitution guest.
  WiringDiagram diagram_with_outer(OperadVariant v, const Signature& outer, int max_slots = 3);

  /// A random inhabitant of the algebra's carrier at this signature.
  Element element(const Algebra& alg, const Signature& sig);

  /// One element per slot of the wiring (discarded slots included).
  std::vector<Element> elements(const Algebra& alg, const WiringDiagram& w);

 private:
  WiringDiagram forward_wired(const Signature* outer, bool allow_grounds, int max_slots);
  WiringDiagram matched(OperadVariant v, const Signature* outer, int max_slots);
  WiringDiagram forest(bool connected, int max_slots);

  std::mt19937_64 rng_;
  int label_counter_ = 0;
};

}  // namespace opwire
