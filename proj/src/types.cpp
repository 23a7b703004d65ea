#include "opwire/types.hpp"

#include <sstream>

namespace opwire {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DanglingPort: return "DanglingPort";
    case Errc::DoublyUsedPort: return "DoublyUsedPort";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::BadPortRef: return "BadPortRef";
    case Errc::EmptyObject: return "EmptyObject";
    case Errc::SignatureMismatch: return "SignatureMismatch";
    case Errc::BadSlotIndex: return "BadSlotIndex";
    case Errc::NotAcyclic: return "NotAcyclic";
    case Errc::VariantMismatch: return "VariantMismatch";
    case Errc::CarrierMismatch: return "CarrierMismatch";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotCausal: return "NotCausal";
    case Errc::NotABox: return "NotABox";
    case Errc::NotADot: return "NotADot";
    case Errc::NotValidWA: return "NotValidWA";
    case Errc::NotValidWC: return "NotValidWC";
    case Errc::NotValidWD: return "NotValidWD";
    case Errc::NotValidWGround: return "NotValidWGround";
    case Errc::MultipleWires: return "MultipleWires";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownName: return "UnknownName";
    case Errc::VariantViolation: return "VariantViolation";
    case Errc::SchemaError: return "SchemaError";
    case Errc::IoError: return "IoError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

std::string to_string(const TypeLabel& t) {
  return t.name + "(" + std::to_string(t.dimension) + ")";
}

static void append_types(std::ostringstream& os, const std::vector<TypeLabel>& ts) {
  os << "[";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) os << ",";
    os << to_string(ts[i]);
  }
  os << "]";
}

std::string to_string(const Signature& s) {
  std::ostringstream os;
  switch (s.kind) {
    case SigKind::Box:
      os << "box";
      append_types(os, s.inputs);
      os << "->";
      append_types(os, s.outputs);
      break;
    case SigKind::Dot:
      os << "dot";
      append_types(os, s.ports);
      break;
    case SigKind::Empty:
      os << "empty";
      break;
  }
  return os.str();
}

std::string to_string(const PortRef& p) {
  std::string loc = p.outer() ? std::string("outer") : "s" + std::to_string(p.slot);
  const char* face = p.face == Face::In ? "in" : (p.face == Face::Out ? "out" : "port");
  return loc + "." + face + "[" + std::to_string(p.index) + "]";
}

std::string to_string(const Wire& w) {
  return to_string(w.a) + "--" + to_string(w.b);
}

}  // namespace opwire
