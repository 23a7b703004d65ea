#include "opwire/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "opwire/causal.hpp"
#include "opwire/laws.hpp"

namespace opwire {

namespace {

// ---------------------------------------------------------------- lexing

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
    tok_ = Token{Token::Kind::End, "", line_, col_};
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 0;
      while (pos_ + n < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_ + n])) || text_[pos_ + n] == '_'))
        ++n;
      tok_ = Token{Token::Kind::Ident, text_.substr(pos_, n), line_, col_};
      consume(n);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (pos_ + n < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + n])))
        ++n;
      tok_ = Token{Token::Kind::Int, text_.substr(pos_, n), line_, col_};
      consume(n);
    } else if ((c == '-' && pos_ + 1 < text_.size() &&
                (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-'))) {
      tok_ = Token{Token::Kind::Punct, text_.substr(pos_, 2), line_, col_};
      consume(2);
    } else if (std::string("(){}:.[],").find(c) != std::string::npos) {
      tok_ = Token{Token::Kind::Punct, std::string(1, c), line_, col_};
      consume(1);
    } else {
      throw Error(Errc::SyntaxError, where() + ": stray character '" + std::string(1, c) + "'");
    }
  }

  void consume(std::size_t n) {
    pos_ += n;
    col_ += static_cast<int>(n);
  }
  std::string where() const {
    return "line " + std::to_string(line_) + ", column " + std::to_string(col_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

const std::set<std::string> kKeywords = {"type",   "box",  "dot",  "diagram", "slots",
                                         "wire",   "ground", "loop", "discard", "as",
                                         "outer",  "in",   "out",  "port",    "empty"};

[[noreturn]] void syntax_error(const Token& t, const std::string& expected) {
  const std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw Error(Errc::SyntaxError, "line " + std::to_string(t.line) + ", column " +
                                     std::to_string(t.col) + ": expected " + expected + ", got " +
                                     got);
}

// ---------------------------------------------------------------- parsing

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Workspace parse() {
    Workspace ws;
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::End) break;
      if (t.kind != Token::Kind::Ident) syntax_error(t, "a declaration");
      if (t.text == "type")
        parse_type(ws);
      else if (t.text == "box")
        parse_box(ws);
      else if (t.text == "dot")
        parse_dot(ws);
      else if (t.text == "diagram")
        parse_diagram(ws);
      else
        syntax_error(t, "'type', 'box', 'dot' or 'diagram'");
    }
    return ws;
  }

 private:
  Token expect_punct(const std::string& p) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Punct || t.text != p) syntax_error(t, "'" + p + "'");
    return t;
  }
  Token expect_keyword(const std::string& k) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Ident || t.text != k) syntax_error(t, "'" + k + "'");
    return t;
  }
  Token expect_name(const std::string& what) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Ident) syntax_error(t, what);
    if (kKeywords.count(t.text)) syntax_error(t, what + " (got a reserved word)");
    return t;
  }
  int expect_int() {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::Int) syntax_error(t, "an integer");
    return std::stoi(t.text);
  }
  bool peek_punct(const std::string& p) const {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
  }
  bool peek_keyword(const std::string& k) const {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == k;
  }

  void declare(Workspace& ws, const Token& name) {
    if (ws.find_type(name.text) || ws.find_shape(name.text) || ws.find_diagram(name.text))
      throw Error(Errc::SyntaxError, "line " + std::to_string(name.line) + ", column " +
                                         std::to_string(name.col) + ": '" + name.text +
                                         "' is already declared");
  }

  void parse_type(Workspace& ws) {
    lex_.take();  // "type"
    const Token name = expect_name("a type name");
    declare(ws, name);
    expect_punct("(");
    const int dim = expect_int();
    expect_punct(")");
    if (dim < 1) syntax_error(name, "a positive dimension");
    ws.types.emplace_back(name.text, TypeLabel{name.text, dim});
  }

  TypeLabel lookup_type(const Workspace& ws, const Token& t) {
    const TypeLabel* label = ws.find_type(t.text);
    if (!label)
      throw Error(Errc::UnknownName, "line " + std::to_string(t.line) + ", column " +
                                         std::to_string(t.col) + ": unknown type '" + t.text + "'");
    return *label;
  }

  // Types are juxtaposed idents; the list ends at the next non-name token or
  // reserved word.
  std::vector<TypeLabel> parse_types(const Workspace& ws) {
    std::vector<TypeLabel> out;
    while (lex_.peek().kind == Token::Kind::Ident && !kKeywords.count(lex_.peek().text))
      out.push_back(lookup_type(ws, lex_.take()));
    return out;
  }

  void parse_box(Workspace& ws) {
    lex_.take();
    const Token name = expect_name("a box name");
    declare(ws, name);
    expect_punct(":");
    auto ins = parse_types(ws);
    expect_punct("->");
    auto outs = parse_types(ws);
    ws.shapes.emplace_back(name.text, Signature::box(std::move(ins), std::move(outs)));
  }

  void parse_dot(Workspace& ws) {
    lex_.take();
    const Token name = expect_name("a dot name");
    declare(ws, name);
    expect_punct(":");
    ws.shapes.emplace_back(name.text, Signature::dot(parse_types(ws)));
  }

  OperadVariant parse_variant() {
    const Token t = lex_.take();
    for (auto v : {OperadVariant::WA, OperadVariant::WC, OperadVariant::WD, OperadVariant::WUA,
                   OperadVariant::WUAC, OperadVariant::WGround})
      if (t.kind == Token::Kind::Ident && t.text == variant_name(v)) return v;
    syntax_error(t, "an operad variant name");
  }

  struct PrefTok {
    PortRef ref;
    Token at;
  };

  PrefTok parse_pref(const DiagramDef& def, const std::map<std::string, int>& aliases) {
    const Token owner = lex_.take();
    if (owner.kind != Token::Kind::Ident) syntax_error(owner, "'outer' or a slot name");
    int slot = PortRef::kOuter;
    if (owner.text != "outer") {
      auto it = aliases.find(owner.text);
      if (it == aliases.end())
        throw Error(Errc::UnknownName, "line " + std::to_string(owner.line) + ", column " +
                                           std::to_string(owner.col) + ": unknown slot '" +
                                           owner.text + "'");
      slot = it->second;
    }
    expect_punct(".");
    const Token face = lex_.take();
    Face f;
    if (face.kind == Token::Kind::Ident && face.text == "in")
      f = Face::In;
    else if (face.kind == Token::Kind::Ident && face.text == "out")
      f = Face::Out;
    else if (face.kind == Token::Kind::Ident && face.text == "port")
      f = Face::Port;
    else
      syntax_error(face, "'in', 'out' or 'port'");
    expect_punct("[");
    const int idx = expect_int();
    expect_punct("]");
    (void)def;
    return {PortRef{slot, f, idx}, owner};
  }

  void parse_diagram(Workspace& ws) {
    const Token kw = lex_.take();
    const Token name = expect_name("a diagram name");
    declare(ws, name);
    expect_punct("(");
    DiagramDef def;
    def.variant = parse_variant();
    expect_punct(")");

    bool annotated = false;
    Signature outer;
    if (peek_punct(":")) {
      lex_.take();
      annotated = true;
      if (peek_keyword("empty")) {
        lex_.take();
        outer = Signature::empty();
      } else if (def.variant == OperadVariant::WD) {
        outer = Signature::dot(parse_types(ws));
      } else {
        auto ins = parse_types(ws);
        expect_punct("->");
        outer = Signature::box(std::move(ins), parse_types(ws));
      }
    }

    expect_punct("{");
    expect_keyword("slots");
    expect_punct(":");
    std::map<std::string, int> aliases;
    while (lex_.peek().kind == Token::Kind::Ident && !kKeywords.count(lex_.peek().text)) {
      const Token decl = expect_name("a box or dot name");
      const Signature* sig = ws.find_shape(decl.text);
      if (!sig)
        throw Error(Errc::UnknownName, "line " + std::to_string(decl.line) + ", column " +
                                           std::to_string(decl.col) + ": unknown box or dot '" +
                                           decl.text + "'");
      expect_keyword("as");
      const Token alias = expect_name("a slot name");
      if (aliases.count(alias.text))
        throw Error(Errc::SyntaxError, "line " + std::to_string(alias.line) + ", column " +
                                           std::to_string(alias.col) + ": duplicate slot name '" +
                                           alias.text + "'");
      aliases[alias.text] = static_cast<int>(def.wiring.slots.size());
      def.wiring.slots.push_back(*sig);
      def.slot_names.push_back(alias.text);
      def.slot_decls.push_back(decl.text);
    }

    std::set<Wire> wires;
    std::set<Ground> grounds;
    std::map<TypeLabel, int> loops;
    std::set<int> discarded;
    for (;;) {
      if (peek_punct("}")) {
        lex_.take();
        break;
      }
      const Token t = lex_.peek();
      if (t.kind != Token::Kind::Ident) syntax_error(t, "a statement or '}'");
      if (t.text == "wire") {
        lex_.take();
        auto a = parse_pref(def, aliases);
        expect_punct("--");
        auto b = parse_pref(def, aliases);
        wires.insert(Wire(a.ref, b.ref));
      } else if (t.text == "ground") {
        lex_.take();
        grounds.insert(Ground{parse_pref(def, aliases).ref});
      } else if (t.text == "loop") {
        lex_.take();
        const TypeLabel label = lookup_type(ws, lex_.take());
        const int count = expect_int();
        if (count < 1) syntax_error(t, "a positive loop count");
        loops[label] += count;
      } else if (t.text == "discard") {
        lex_.take();
        const Token alias = expect_name("a slot name");
        auto it = aliases.find(alias.text);
        if (it == aliases.end())
          throw Error(Errc::UnknownName, "line " + std::to_string(alias.line) + ", column " +
                                             std::to_string(alias.col) + ": unknown slot '" +
                                             alias.text + "'");
        discarded.insert(it->second);
      } else {
        syntax_error(t, "'wire', 'ground', 'loop', 'discard' or '}'");
      }
    }

    if (!annotated) outer = infer_outer(kw, def, wires, grounds);
    try {
      def.wiring = make_diagram(std::move(outer), std::move(def.wiring.slots), std::move(wires),
                                std::move(grounds), std::move(loops), std::move(discarded));
    } catch (const Error& e) {
      throw Error(Errc::VariantViolation,
                  "diagram '" + name.text + "' is not well formed: " + e.what());
    }
    auto report = validate(def.variant, def.wiring);
    if (!report.ok)
      throw Error(Errc::VariantViolation, "diagram '" + name.text + "' is not a legal " +
                                              variant_name(def.variant) + " operation: " +
                                              report.summary());
    ws.diagrams.emplace_back(name.text, std::move(def));
  }

  // Reads outer port types off the slot ports they connect to.
  Signature infer_outer(const Token& at, const DiagramDef& def, const std::set<Wire>& wires,
                        const std::set<Ground>& grounds) {
    std::map<std::pair<Face, int>, TypeLabel> found;
    std::map<Face, int> extent;
    auto note = [&](const PortRef& p) {
      extent[p.face] = std::max(extent[p.face], p.index + 1);
    };
    auto slot_type = [&](const PortRef& p) -> const TypeLabel* {
      if (p.outer()) return nullptr;
      if (p.slot < 0 || p.slot >= static_cast<int>(def.wiring.slots.size())) return nullptr;
      const Signature& s = def.wiring.slots[p.slot];
      const auto& list = p.face == Face::In ? s.inputs : p.face == Face::Out ? s.outputs : s.ports;
      if (p.index < 0 || p.index >= static_cast<int>(list.size())) return nullptr;
      return &list[p.index];
    };
    for (const auto& w : wires) {
      for (const auto& [self, other] : {std::pair(w.a, w.b), std::pair(w.b, w.a)}) {
        if (!self.outer()) continue;
        note(self);
        if (const TypeLabel* t = slot_type(other)) found.insert({{self.face, self.index}, *t});
      }
    }
    for (const auto& g : grounds)
      if (g.source.outer()) note(g.source);

    auto face_list = [&](Face f) {
      std::vector<TypeLabel> out;
      for (int i = 0; i < extent[f]; ++i) {
        auto it = found.find({f, i});
        if (it == found.end())
          throw Error(Errc::SyntaxError,
                      "line " + std::to_string(at.line) + ": cannot infer the type of outer port " +
                          std::to_string(i) + "; add a boundary annotation");
        out.push_back(it->second);
      }
      return out;
    };
    if (def.variant == OperadVariant::WD) return Signature::dot(face_list(Face::Port));
    return Signature::box(face_list(Face::In), face_list(Face::Out));
  }

  Lexer lex_;
};

// ---------------------------------------------------------------- printing

std::string pref_text(const DiagramDef& def, const PortRef& p) {
  const std::string owner = p.outer() ? "outer" : def.slot_names[p.slot];
  const char* face = p.face == Face::In ? "in" : p.face == Face::Out ? "out" : "port";
  return owner + "." + face + "[" + std::to_string(p.index) + "]";
}

void print_types(std::ostream& os, const std::vector<TypeLabel>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) os << (i ? " " : "") << ts[i].name;
}

void print_diagram(std::ostream& os, const std::string& name, const DiagramDef& def) {
  os << "diagram " << name << "(" << variant_name(def.variant) << ")";
  const Signature& outer = def.wiring.outer;
  if (outer.is_empty()) {
    os << ": empty";
  } else if (outer.is_dot()) {
    if (!outer.ports.empty()) {
      os << ": ";
      print_types(os, outer.ports);
    }
  } else {
    os << ": ";
    print_types(os, outer.inputs);
    os << (outer.inputs.empty() ? "->" : " ->");
    if (!outer.outputs.empty()) {
      os << " ";
      print_types(os, outer.outputs);
    }
  }
  os << " {\n  slots:";
  for (std::size_t s = 0; s < def.wiring.slots.size(); ++s)
    os << " " << def.slot_decls[s] << " as " << def.slot_names[s];
  os << "\n";
  for (const auto& w : def.wiring.wires)
    os << "  wire " << pref_text(def, w.a) << " -- " << pref_text(def, w.b) << "\n";
  for (const auto& g : def.wiring.grounds) os << "  ground " << pref_text(def, g.source) << "\n";
  for (const auto& [t, n] : def.wiring.loops) os << "  loop " << t.name << " " << n << "\n";
  for (int s : def.wiring.discarded) os << "  discard " << def.slot_names[s] << "\n";
  os << "}\n";
}

std::string fmt_num(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(v);
    return os.str();
  }
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// ------------------------------------------------------------ diagnostics

void emit_error(bool json_mode, const Error& e) {
  if (json_mode) {
    nlohmann::json j{{"error", errc_name(e.code())}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
  } else {
    std::cerr << "error: " << e.what() << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(Errc::IoError, "cannot write '" + path + "'");
}

}  // namespace

// ------------------------------------------------------------- workspace

const TypeLabel* Workspace::find_type(const std::string& name) const {
  for (const auto& [n, t] : types)
    if (n == name) return &t;
  return nullptr;
}

const Signature* Workspace::find_shape(const std::string& name) const {
  for (const auto& [n, s] : shapes)
    if (n == name) return &s;
  return nullptr;
}

const DiagramDef* Workspace::find_diagram(const std::string& name) const {
  for (const auto& [n, d] : diagrams)
    if (n == name) return &d;
  return nullptr;
}

const DiagramDef& Workspace::diagram(const std::string& name) const {
  if (const DiagramDef* d = find_diagram(name)) return *d;
  throw Error(Errc::UnknownName, "no diagram named '" + name + "'");
}

Workspace parse_dsl(const std::string& text) { return Parser(text).parse(); }

std::string print_dsl(const Workspace& ws) {
  std::ostringstream os;
  for (const auto& [name, t] : ws.types) os << "type " << name << "(" << t.dimension << ")\n";
  for (const auto& [name, s] : ws.shapes) {
    if (s.is_dot()) {
      os << "dot " << name << ":" << (s.ports.empty() ? "" : " ");
      print_types(os, s.ports);
      os << "\n";
    } else {
      os << "box " << name << ": ";
      print_types(os, s.inputs);
      os << (s.inputs.empty() ? "->" : " ->");
      if (!s.outputs.empty()) {
        os << " ";
        print_types(os, s.outputs);
      }
      os << "\n";
    }
  }
  for (const auto& [name, d] : ws.diagrams) print_diagram(os, name, d);
  return os.str();
}

Workspace workspace_for(const std::string& name, OperadVariant v, const WiringDiagram& w) {
  Workspace ws;
  auto add_type = [&](const TypeLabel& t) {
    if (const TypeLabel* have = ws.find_type(t.name)) {
      if (!(*have == t))
        throw Error(Errc::Internal, "conflicting dimensions for type '" + t.name + "'");
      return;
    }
    ws.types.emplace_back(t.name, t);
  };
  auto add_sig_types = [&](const Signature& s) {
    for (const auto& t : s.inputs) add_type(t);
    for (const auto& t : s.outputs) add_type(t);
    for (const auto& t : s.ports) add_type(t);
  };
  add_sig_types(w.outer);
  for (const auto& s : w.slots) add_sig_types(s);
  for (const auto& [t, n] : w.loops) add_type(t);

  DiagramDef def;
  def.variant = v;
  def.wiring = w;
  for (std::size_t s = 0; s < w.slots.size(); ++s) {
    std::string decl;
    for (const auto& [n, sig] : ws.shapes)
      if (sig == w.slots[s]) {
        decl = n;
        break;
      }
    if (decl.empty()) {
      decl = "g" + std::to_string(ws.shapes.size());
      ws.shapes.emplace_back(decl, w.slots[s]);
    }
    def.slot_decls.push_back(decl);
    def.slot_names.push_back("s" + std::to_string(s));
  }
  ws.diagrams.emplace_back(name, std::move(def));
  return ws;
}

// ------------------------------------------------------------- DOT export

std::string export_dot(const WiringDiagram& w) {
  auto node_id = [](const PortRef& p) -> std::string {
    if (!p.outer()) return "slot" + std::to_string(p.slot);
    const char* face = p.face == Face::In ? "in" : p.face == Face::Out ? "out" : "port";
    return face + std::to_string(p.index);
  };
  std::ostringstream os;
  os << "digraph wiring {\n  rankdir=LR;\n";
  auto boundary = [&](Face f, const std::vector<TypeLabel>& ts, const char* face) {
    for (std::size_t i = 0; i < ts.size(); ++i)
      os << "  " << node_id(PortRef{PortRef::kOuter, f, static_cast<int>(i)})
         << " [shape=plaintext label=\"" << face << "[" << i << "]: " << ts[i].name << "\"];\n";
  };
  boundary(Face::In, w.outer.inputs, "in");
  boundary(Face::Out, w.outer.outputs, "out");
  boundary(Face::Port, w.outer.ports, "port");
  for (std::size_t s = 0; s < w.slots.size(); ++s) {
    os << "  slot" << s << " [shape=box label=\"s" << s << ": " << to_string(w.slots[s]) << "\"";
    if (w.discarded.count(static_cast<int>(s))) os << " style=dashed";
    os << "];\n";
  }
  if (!w.grounds.empty()) os << "  ground [shape=point label=\"\"];\n";
  int loop_id = 0;
  for (const auto& [t, n] : w.loops)
    os << "  loop" << loop_id++ << " [shape=ellipse label=\"loop " << t.name << " x" << n
       << "\"];\n";
  for (const auto& wire : w.wires)
    os << "  " << node_id(wire.a) << " -> " << node_id(wire.b) << " [dir=none];\n";
  for (const auto& g : w.grounds) os << "  " << node_id(g.source) << " -> ground;\n";
  os << "}\n";
  return os.str();
}

// -------------------------------------------------------------- JSON data

DataBundle parse_data(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_object())
    throw Error(Errc::SchemaError, "expected an object with an \"elements\" object");

  DataBundle bundle;
  for (const auto& [name, entry] : j["elements"].items()) {
    if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string())
      throw Error(Errc::SchemaError, "element '" + name + "': missing \"kind\"");
    DataPayload p;
    p.kind = entry["kind"].get<std::string>();
    if (p.kind == "label") {
      p.label = entry.value("label", name);
    } else if (p.kind == "tensor" || p.kind == "matrix" || p.kind == "kernel") {
      if (!entry.contains("shape") || !entry["shape"].is_array() || !entry.contains("data") ||
          !entry["data"].is_array())
        throw Error(Errc::SchemaError, "element '" + name + "': needs \"shape\" and \"data\"");
      long long count = 1;
      for (const auto& d : entry["shape"]) {
        if (!d.is_number_integer() || d.get<long long>() < 0)
          throw Error(Errc::SchemaError, "element '" + name + "': bad shape entry");
        p.shape.push_back(d.get<int>());
        count *= p.shape.back();
      }
      for (const auto& x : entry["data"]) {
        if (!x.is_number())
          throw Error(Errc::SchemaError, "element '" + name + "': non-numeric data");
        p.data.push_back(x.get<double>());
      }
      if (static_cast<long long>(p.data.size()) != count)
        throw Error(Errc::ShapeMismatch, "element '" + name + "': shape wants " +
                                             std::to_string(count) + " numbers, got " +
                                             std::to_string(p.data.size()));
      if (p.kind != "tensor" && p.shape.size() != 2)
        throw Error(Errc::SchemaError, "element '" + name + "': matrices take a [rows, cols] shape");
      if (p.kind == "kernel") Element::kernel(p.shape[0], p.shape[1], p.data);  // causality check
    } else {
      throw Error(Errc::SchemaError, "element '" + name + "': unknown kind '" + p.kind + "'");
    }
    bundle.entries.emplace(name, std::move(p));
  }
  return bundle;
}

DataBundle load_data(const std::string& path) { return parse_data(read_file(path)); }

std::vector<Element> bind_data(const Algebra& alg, const DiagramDef& def, const DataBundle& data) {
  std::vector<Element> out;
  for (std::size_t s = 0; s < def.wiring.slots.size(); ++s) {
    const std::string& name = def.slot_names[s];
    auto it = data.entries.find(name);
    if (it == data.entries.end())
      throw Error(Errc::SchemaError, "no element for slot '" + name + "'");
    const DataPayload& p = it->second;
    const CarrierSpec spec = alg.carrier(def.wiring.slots[s]);
    switch (spec.kind) {
      case Element::Kind::Free:
        if (p.kind != "label")
          throw Error(Errc::SchemaError, "slot '" + name + "': the free algebra takes labels");
        out.push_back(Element::free_atom(spec.signature, p.label));
        break;
      case Element::Kind::Tensor:
        if (p.kind != "tensor")
          throw Error(Errc::SchemaError, "slot '" + name + "': expected a tensor");
        if (p.shape != spec.shape)
          throw Error(Errc::ShapeMismatch, "slot '" + name + "': wrong tensor shape");
        out.push_back(Element::tensor(p.shape, p.data));
        break;
      case Element::Kind::Matrix:
      case Element::Kind::Kernel: {
        const char* want = spec.kind == Element::Kind::Matrix ? "matrix" : "kernel";
        if (p.kind != want)
          throw Error(Errc::SchemaError, "slot '" + name + "': expected a " + std::string(want));
        if (p.shape != std::vector<int>{spec.rows, spec.cols})
          throw Error(Errc::ShapeMismatch, "slot '" + name + "': expected " +
                                               std::to_string(spec.rows) + "x" +
                                               std::to_string(spec.cols));
        out.push_back(spec.kind == Element::Kind::Matrix
                          ? Element::matrix(spec.rows, spec.cols, p.data)
                          : Element::kernel(spec.rows, spec.cols, p.data));
        break;
      }
      case Element::Kind::Scalar:
        if (p.kind != "tensor" || !p.shape.empty())
          throw Error(Errc::SchemaError,
                      "slot '" + name + "': expected a rank-0 tensor for a scalar carrier");
        out.push_back(Element::scalar(p.data.at(0)));
        break;
    }
  }
  return out;
}

// ----------------------------------------------------------------- driver

namespace {

std::string element_text(const Element& e) {
  std::ostringstream os;
  switch (e.kind) {
    case Element::Kind::Scalar:
      os << fmt_num(e.scalar_value());
      break;
    case Element::Kind::Tensor: {
      if (e.shape.empty()) {  // rank-0: print the bare number
        os << fmt_num(e.data.at(0));
        break;
      }
      os << "[";
      for (std::size_t i = 0; i < e.data.size(); ++i) os << (i ? "," : "") << fmt_num(e.data[i]);
      os << "]";
      break;
    }
    case Element::Kind::Matrix:
    case Element::Kind::Kernel: {
      os << "[";
      for (int r = 0; r < e.rows; ++r) {
        os << (r ? ",[" : "[");
        for (int c = 0; c < e.cols; ++c)
          os << (c ? "," : "") << fmt_num(e.data[static_cast<std::size_t>(r) * e.cols + c]);
        os << "]";
      }
      os << "]";
      break;
    }
    case Element::Kind::Free: {
      os << "labels:";
      for (const auto& l : e.labels) os << " " << l;
      os << "\n" << canonical_form(e.diagram).key;
      break;
    }
  }
  return os.str();
}

nlohmann::json element_json(const Element& e) {
  switch (e.kind) {
    case Element::Kind::Scalar:
      return {{"kind", "scalar"}, {"data", e.scalar_value()}};
    case Element::Kind::Tensor:
      return {{"kind", "tensor"}, {"shape", e.shape}, {"data", e.data}};
    case Element::Kind::Matrix:
    case Element::Kind::Kernel:
      return {{"kind", e.kind == Element::Kind::Matrix ? "matrix" : "kernel"},
              {"shape", {e.rows, e.cols}},
              {"data", e.data}};
    case Element::Kind::Free:
      return {{"kind", "free"},
              {"labels", e.labels},
              {"diagram", canonical_form(e.diagram).key}};
  }
  return {};
}

Algebra algebra_by_name(const std::string& name, OperadVariant variant) {
  if (name == "free") return Algebra::free_algebra(variant);
  if (name == "tensor") return Algebra::tensor_algebra();
  if (name == "matrix") return Algebra::matrix_algebra();
  if (name == "stochastic") return Algebra::stochastic_algebra();
  throw Error(Errc::UnknownName, "no algebra named '" + name + "'");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("OPWIRE_SEED")) return std::strtoull(env, nullptr, 10);
  return 20240817;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"wiring-operad toolkit"};
  app.name("opwire");
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine-readable diagnostics on stderr");

  std::string file, diagram, host, guest, out_path, algebra, data_path, suite;
  int slot = 0;
  std::uint64_t seed = default_seed();
  int cases = 200;

  auto add_file = [&](CLI::App* cmd) { cmd->add_option("file", file, "DSL file")->required(); };

  auto* c_validate = app.add_subcommand("validate", "check a file against declared variants");
  add_file(c_validate);
  c_validate->add_option("--diagram", diagram, "only this diagram");

  auto* c_compose = app.add_subcommand("compose", "substitute one diagram into another");
  add_file(c_compose);
  c_compose->add_option("--host", host)->required();
  c_compose->add_option("--slot", slot)->required();
  c_compose->add_option("--guest", guest)->required();
  c_compose->add_option("-o,--output", out_path, "write the result here instead of stdout");

  auto* c_normalize = app.add_subcommand("normalize", "causal discard-normal form");
  add_file(c_normalize);
  c_normalize->add_option("--diagram", diagram)->required();
  c_normalize->add_option("-o,--output", out_path);

  auto* c_eval = app.add_subcommand("eval", "evaluate a diagram in an algebra");
  add_file(c_eval);
  c_eval->add_option("--diagram", diagram)->required();
  c_eval->add_option("--algebra", algebra)->required()->check(
      CLI::IsMember({"free", "tensor", "matrix", "stochastic"}));
  c_eval->add_option("--data", data_path, "JSON element payloads")->required();

  auto* c_decompose = app.add_subcommand("decompose", "foliate into seq/par/id/swap generators");
  add_file(c_decompose);
  c_decompose->add_option("--diagram", diagram)->required();

  auto* c_laws = app.add_subcommand("laws", "run a property suite over random diagrams");
  add_file(c_laws);
  c_laws->add_option("--suite", suite)->required()->check(CLI::IsMember(law_suite_names()));
  c_laws->add_option("--seed", seed);
  c_laws->add_option("--cases", cases);

  auto* c_dot = app.add_subcommand("export-dot", "Graphviz rendering");
  add_file(c_dot);
  c_dot->add_option("--diagram", diagram)->required();

  std::vector<const char*> argv{"opwire"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Workspace ws = parse_dsl(read_file(file));
    if (*c_validate) {
      if (!diagram.empty()) {
        ws.diagram(diagram);
        std::cout << diagram << ": ok\n";
      } else {
        for (const auto& [name, def] : ws.diagrams)
          std::cout << name << ": ok (" << variant_name(def.variant) << ")\n";
      }
    } else if (*c_compose) {
      const DiagramDef& h = ws.diagram(host);
      const DiagramDef& g = ws.diagram(guest);
      if (h.variant != g.variant)
        throw Error(Errc::VariantMismatch, "host and guest live in different variants");
      auto result = substitute(h.wiring, slot, g.wiring);
      auto report = validate(h.variant, result);
      if (!report.ok) throw Error(Errc::VariantViolation, report.summary());
      write_output(out_path, print_dsl(workspace_for("composite", h.variant, result)));
    } else if (*c_normalize) {
      const DiagramDef& d = ws.diagram(diagram);
      auto [normal, trace] = normalize_causal(d.wiring);
      std::ostringstream os;
      os << "# steps: " << trace.steps.size() << "\n";
      for (const auto& step : trace.steps) os << "# discard slot " << step.slot << "\n";
      os << print_dsl(workspace_for(diagram + "_normal", d.variant, normal));
      write_output(out_path, os.str());
    } else if (*c_eval) {
      const DiagramDef& d = ws.diagram(diagram);
      const Algebra alg = algebra_by_name(algebra, d.variant);
      if (alg.variant() != d.variant)
        throw Error(Errc::VariantMismatch, std::string("the ") + algebra + " algebra lives on " +
                                               variant_name(alg.variant()) + ", diagram '" +
                                               diagram + "' on " + variant_name(d.variant));
      const Element result = alg.apply(d.wiring, bind_data(alg, d, load_data(data_path)));
      if (json_mode)
        std::cout << element_json(result).dump() << "\n";
      else
        std::cout << element_text(result) << "\n";
    } else if (*c_decompose) {
      const DiagramDef& d = ws.diagram(diagram);
      std::cout << to_string(decompose_acyclic(d.wiring)) << "\n";
    } else if (*c_laws) {
      const LawReport rep = run_law_suite(suite, seed, cases);
      for (const auto& r : rep.results) {
        std::cout << suite << "/" << r.name << ": " << (r.ok() ? "pass" : "FAIL") << " cases=" <<
            r.cases << " max_residual=" << r.max_residual << " tolerance=" << r.tolerance;
        if (!r.ok()) std::cout << " failures=" << r.failures << " seed=" << r.first_failure_seed;
        std::cout << "\n";
      }
      if (!rep.ok()) return 2;
    } else if (*c_dot) {
      std::cout << export_dot(ws.diagram(diagram).wiring);
    }
  } catch (const Error& e) {
    emit_error(json_mode, e);
    return e.code() == Errc::IoError ? 3 : 1;
  }
  return 0;
}

}  // namespace opwire
