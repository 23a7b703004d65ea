#pragma once

#include "opwire/algebra.hpp"
#include "opwire/variants.hpp"

namespace opwire {

/// One named diagram definition: the wiring plus the names its slots carry
/// in the source text (used for printing and for binding data payloads).
struct DiagramDef {
  OperadVariant variant = OperadVariant::WA;
  WiringDiagram wiring;
  std::vector<std::string> slot_names;  // aligned with wiring.slots
  std::vector<std::string> slot_decls;  // declared box/dot name per slot
};

/// Parsed document: declarations in source order. Every diagram is validated
/// under its declared variant at load time.
struct Workspace {
  std::vector<std::pair<std::string, TypeLabel>> types;
  std::vector<std::pair<std::string, Signature>> shapes;  // box and dot decls
  std::vector<std::pair<std::string, DiagramDef>> diagrams;

  const TypeLabel* find_type(const std::string& name) const;
  const Signature* find_shape(const std::string& name) const;
  const DiagramDef* find_diagram(const std::string& name) const;
  /// Throws UnknownName.
  const DiagramDef& diagram(const std::string& name) const;
};

/// Parses the diagram language. Grammar (line breaks are plain whitespace,
/// `#` comments to end of line):
///   file     := (typedecl | boxdecl | dotdecl | diagram)*
///   typedecl := "type" IDENT "(" INT ")"
///   boxdecl  := "box" IDENT ":" types "->" types
///   dotdecl  := "dot" IDENT ":" types
///   diagram  := "diagram" IDENT "(" VARIANT ")" [":" boundary]
///               "{" "slots" ":" slotlist stmt* "}"
///   boundary := "empty" | types | types "->" types
///   slotlist := (IDENT "as" IDENT)*
///   stmt     := "wire" pref "--" pref | "ground" pref
///             | "loop" IDENT INT | "discard" IDENT
///   pref     := ("outer" | IDENT) "." ("in" | "out" | "port") "[" INT "]"
/// When the boundary annotation is omitted the outer port types are inferred
/// from the slot ports they connect to; wires between two outer ports and
/// grounds on outer ports then need the annotation.
/// Throws SyntaxError (with line:column), UnknownName, VariantViolation
/// (carrying the validation summary).
Workspace parse_dsl(const std::string& text);

/// Deterministic rendering; parse_dsl(print_dsl(ws)) is canonically equal to
/// ws. Always prints explicit boundary annotations.
std::string print_dsl(const Workspace& ws);

/// Synthesizes a workspace holding one diagram (declarations generated from
/// its signatures), e.g. to print the result of a composition.
Workspace workspace_for(const std::string& name, OperadVariant v, const WiringDiagram& w);

/// Graphviz rendering: slots as labeled nodes (dashed when discarded), outer
/// ports as boundary nodes, wires as undirected edges, grounds as edges into
/// one shared `ground` node. Byte-stable across runs.
std::string export_dot(const WiringDiagram& w);

/// One JSON element payload, not yet bound to a carrier.
struct DataPayload {
  std::string kind;  // "tensor" | "matrix" | "kernel" | "label"
  std::vector<int> shape;
  std::vector<double> data;
  std::string label;
};

struct DataBundle {
  std::map<std::string, DataPayload> entries;  // slot name -> payload
};

/// Parses `{"elements": {"<slot>": {"kind":..., "shape":[...], "data":[...]}}}`.
/// Throws SchemaError, ShapeMismatch, NotCausal (kernels are checked on load).
DataBundle parse_data(const std::string& json_text);

/// parse_data over a file; throws IoError when unreadable.
DataBundle load_data(const std::string& path);

/// Resolves one payload per slot of the definition against the algebra's
/// carriers. Throws SchemaError for a missing or mis-kinded entry and
/// ShapeMismatch for wrong extents.
std::vector<Element> bind_data(const Algebra& alg, const DiagramDef& def, const DataBundle& data);

/// Command-line driver (argv without the program name). Subcommands:
/// validate, compose, normalize, eval, decompose, laws, export-dot.
/// Exit codes: 0 success, 1 parse/validation failure, 2 property failure,
/// 3 I/O failure. `--json` switches stderr diagnostics to JSON objects.
int run_command(const std::vector<std::string>& args);

}  // namespace opwire
