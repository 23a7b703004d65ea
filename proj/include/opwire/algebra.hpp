#pragma once

#include <functional>
#include <memory>

#include "opwire/variants.hpp"

namespace opwire {

/// An inhabitant of an algebra carrier. Tensors/matrices are row-major with
/// the leftmost port the slowest-varying index; matrix rows run over output
/// ports, columns over input ports. Kernels are column-stochastic.
struct Element {
  enum class Kind { Free, Tensor, Matrix, Kernel, Scalar };
  Kind kind = Kind::Scalar;

  // Free: a label-decorated diagram whose outer boundary is the carrier
  // signature, one label per slot.
  WiringDiagram diagram;
  std::vector<std::string> labels;

  std::vector<int> shape;  // Tensor
  int rows = 0, cols = 0;  // Matrix / Kernel
  std::vector<double> data;  // Tensor / Matrix / Kernel / Scalar (data[0])

  static Element free_atom(const Signature& sig, std::string label);
  static Element tensor(std::vector<int> shape, std::vector<double> data);
  static Element matrix(int rows, int cols, std::vector<double> data);
  /// Checks column sums within 1e-12 and entries >= -1e-15; throws NotCausal.
  static Element kernel(int rows, int cols, std::vector<double> data);
  static Element scalar(double v);

  double scalar_value() const;
};

/// Max-norm distance between two elements of the same carrier. Free elements
/// compare by canonical diagram equality and labels (0 or 1).
double element_distance(const Element& a, const Element& b);

/// p*a + (1-p)*b, elementwise; numeric kinds only.
Element element_mix(double p, const Element& a, const Element& b);

struct CarrierSpec {
  Signature signature;
  Element::Kind kind = Element::Kind::Free;
  std::vector<int> shape;  // Tensor
  int rows = 0, cols = 0;  // Matrix / Kernel
};

enum class AlgebraKind { Free, Tensor, Matrix, Stochastic };

/// An operad algebra: a carrier per signature and a composition function per
/// legal wiring of the algebra's home variant. Stateless and pure.
class Algebra {
 public:
  Algebra(AlgebraKind kind, OperadVariant variant) : kind_(kind), variant_(variant) {}

  static Algebra free_algebra(OperadVariant variant = OperadVariant::WA);
  static Algebra tensor_algebra();      // WD
  static Algebra matrix_algebra();      // WA
  static Algebra stochastic_algebra();  // WGround

  /// Pullback of `base` along a translation of signatures and wirings; the
  /// result lives on `variant` and evaluates through the translation.
  static Algebra transported(OperadVariant variant, Algebra base,
                             std::function<Signature(const Signature&)> obj_map,
                             std::function<WiringDiagram(const WiringDiagram&)> wiring_map);

  AlgebraKind kind() const { return kind_; }
  OperadVariant variant() const { return variant_; }

  CarrierSpec carrier(const Signature& sig) const;
  Element apply(const WiringDiagram& w, const std::vector<Element>& elements) const;

 private:
  AlgebraKind kind_;
  OperadVariant variant_;
  std::shared_ptr<const Algebra> base_;
  std::function<Signature(const Signature&)> obj_map_;
  std::function<WiringDiagram(const WiringDiagram&)> wiring_map_;
};

/// Sum over internal wire indices of the product of slot tensor entries;
/// floating loops contribute a factor of dimension(label) each.
Element tensor_eval(const WiringDiagram& w, const std::vector<Element>& tensors);

/// Evaluates a WA wiring on matrices by two independent routes (generator
/// fold of a foliation vs direct contraction) and checks they agree within
/// 1e-9 before returning.
Element matrix_eval(const WiringDiagram& w, const std::vector<Element>& mats,
                    FoliationStyle style = FoliationStyle::Early);

/// matrix_eval semantics extended to grounds (all-ones covector insertion)
/// and discarded slots (skipped); an EmptySig-outer wiring yields a scalar.
Element stochastic_eval(const WiringDiagram& w, const std::vector<Element>& kernels);

/// Label-decorated copy of the wiring in the free algebra.
Element free_eval(const WiringDiagram& w, const std::vector<std::string>& labels);

/// Residual of the algebra functoriality law on a host/guest pair.
/// `elements` are the inputs of substitute(host, slot, guest), in order.
double check_functoriality(const Algebra& alg, const WiringDiagram& host, int slot,
                           const WiringDiagram& guest, const std::vector<Element>& elements);

/// Residual of the convexity law: mixing in one slot commutes with apply.
double check_convex_enrichment(const Algebra& alg, const WiringDiagram& w,
                               const std::vector<Element>& elements, int slot,
                               const Element& alt, double p);

}  // namespace opwire
