#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace opwire {

enum class Errc {
  DanglingPort,
  DoublyUsedPort,
  TypeMismatch,
  BadPortRef,
  EmptyObject,
  SignatureMismatch,
  BadSlotIndex,
  NotAcyclic,
  VariantMismatch,
  CarrierMismatch,
  ArityMismatch,
  ShapeMismatch,
  NotCausal,
  NotABox,
  NotADot,
  NotValidWA,
  NotValidWC,
  NotValidWD,
  NotValidWGround,
  MultipleWires,
  SyntaxError,
  UnknownName,
  VariantViolation,
  SchemaError,
  IoError,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// A declared system type. Dimension is only consumed by the numerical
/// algebras; label identity includes it so canonical forms stay stable.
struct TypeLabel {
  std::string name;
  int dimension = 1;

  auto operator<=>(const TypeLabel&) const = default;
};

enum class SigKind { Box, Dot, Empty };

/// Boundary shape of a box (inputs/outputs), a dot (cyclically based port
/// list, basepoint first), or the empty object.
struct Signature {
  SigKind kind = SigKind::Empty;
  std::vector<TypeLabel> inputs;
  std::vector<TypeLabel> outputs;
  std::vector<TypeLabel> ports;

  static Signature box(std::vector<TypeLabel> ins, std::vector<TypeLabel> outs) {
    Signature s;
    s.kind = SigKind::Box;
    s.inputs = std::move(ins);
    s.outputs = std::move(outs);
    return s;
  }
  static Signature dot(std::vector<TypeLabel> ps) {
    Signature s;
    s.kind = SigKind::Dot;
    s.ports = std::move(ps);
    return s;
  }
  static Signature empty() { return Signature{}; }

  bool is_box() const { return kind == SigKind::Box; }
  bool is_dot() const { return kind == SigKind::Dot; }
  bool is_empty() const { return kind == SigKind::Empty; }

  auto operator<=>(const Signature&) const = default;
};

enum class Face { In, Out, Port };

/// Addresses one wire endpoint: a port on the outer boundary or on an inner
/// slot. Face::Port is used exactly when the referenced signature is a dot.
struct PortRef {
  static constexpr int kOuter = -1;

  int slot = kOuter;
  Face face = Face::In;
  int index = 0;

  bool outer() const { return slot == kOuter; }

  static PortRef outer_in(int i) { return {kOuter, Face::In, i}; }
  static PortRef outer_out(int i) { return {kOuter, Face::Out, i}; }
  static PortRef outer_port(int i) { return {kOuter, Face::Port, i}; }
  static PortRef in(int slot, int i) { return {slot, Face::In, i}; }
  static PortRef out(int slot, int i) { return {slot, Face::Out, i}; }
  static PortRef port(int slot, int i) { return {slot, Face::Port, i}; }

  auto operator<=>(const PortRef&) const = default;
};

/// Polarity-free unordered pair of endpoints; normalized on construction.
struct Wire {
  PortRef a, b;

  Wire() = default;
  Wire(PortRef x, PortRef y) {
    if (y < x) std::swap(x, y);
    a = x;
    b = y;
  }

  auto operator<=>(const Wire&) const = default;
};

struct Ground {
  PortRef source;

  auto operator<=>(const Ground&) const = default;
};

std::string to_string(const TypeLabel& t);
std::string to_string(const Signature& s);
std::string to_string(const PortRef& p);
std::string to_string(const Wire& w);

}  // namespace opwire
