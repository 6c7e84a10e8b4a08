#include "zstates/qasm.h"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace zstates {

QasmError::QasmError(const std::string& message, int line, int column)
    : std::runtime_error("qasm:" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

std::string emit_qasm(const QuantumCircuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "// qubit i -> q[i-1], classical bit j -> c[j-1]\n";
  out << "qreg q[" << circuit.n_qubits() << "];\n";
  if (circuit.n_clbits() > 0) out << "creg c[" << circuit.n_clbits() << "];\n";
  for (const auto& g : circuit.gates()) {
    out << gate_name(g.kind) << ' ';
    if (g.kind == GateKind::Measure) {
      out << "q[" << g.targets[0] - 1 << "] -> c[" << *g.classical_target - 1 << "];\n";
      continue;
    }
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
      if (i > 0) out << ',';
      out << "q[" << g.targets[i] - 1 << ']';
    }
    out << ";\n";
  }
  return out.str();
}

namespace {

enum class Tok { Ident, Int, Real, String, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      const int line = line_, col = col_;
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string s;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          s += advance();
        }
        out.push_back({Tok::Ident, s, line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string s;
        bool real = false;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
          real |= src_[pos_] == '.';
          s += advance();
        }
        out.push_back({real ? Tok::Real : Tok::Int, s, line, col});
      } else if (c == '"') {
        advance();
        std::string s;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') s += advance();
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          throw QasmError("unterminated string literal", line, col);
        }
        advance();
        out.push_back({Tok::String, s, line, col});
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Tok::Symbol, "->", line, col});
      } else if (c == ';' || c == ',' || c == '[' || c == ']') {
        out.push_back({Tok::Symbol, std::string(1, advance()), line, col});
      } else {
        throw QasmError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Register {
  std::string name;
  int size = 0;
};

// name or name[index]; index is 0-based as written.
struct Argument {
  std::string reg;
  std::optional<int> index;
  int line;
  int column;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  QuantumCircuit run() {
    expect_ident("OPENQASM");
    const Token& version = next();
    if (version.kind != Tok::Real || version.text != "2.0") {
      throw QasmError("only OpenQASM 2.0 is supported", version.line, version.column);
    }
    expect_symbol(";");
    while (peek().kind != Tok::End) statement();
    if (!qreg_) throw QasmError("missing qreg declaration", peek().line, peek().column);
    if (!circuit_) circuit_.emplace(qreg_->size, creg_ ? creg_->size : 0);
    return std::move(*circuit_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw QasmError(msg, t.line, t.column);
  }

  void expect_symbol(const char* s) {
    const Token& t = next();
    if (t.kind != Tok::Symbol || t.text != s) {
      fail(std::string("expected '") + s + "'" + (t.kind == Tok::End ? " before end of input" : ""),
           t);
    }
  }

  void expect_ident(const char* s) {
    const Token& t = next();
    if (t.kind != Tok::Ident || t.text != s) fail(std::string("expected '") + s + "'", t);
  }

  int expect_int() {
    const Token& t = next();
    if (t.kind != Tok::Int) fail("expected an integer", t);
    try {
      return std::stoi(t.text);
    } catch (const std::exception&) {
      fail("integer out of range", t);
    }
  }

  Argument argument() {
    const Token& t = next();
    if (t.kind != Tok::Ident) fail("expected a register reference", t);
    Argument a{t.text, std::nullopt, t.line, t.column};
    if (peek().kind == Tok::Symbol && peek().text == "[") {
      next();
      a.index = expect_int();
      expect_symbol("]");
    }
    return a;
  }

  void ensure_circuit(const Token& where) {
    if (circuit_) return;
    if (!qreg_) fail("gate before qreg declaration", where);
    circuit_.emplace(qreg_->size, creg_ ? creg_->size : 0);
  }

  // Resolves to 1-based indices; whole-register references expand.
  std::vector<int> resolve(const Argument& a, const std::optional<Register>& reg,
                           const char* kind) {
    if (!reg || reg->name != a.reg) {
      throw QasmError(std::string("unknown ") + kind + " register '" + a.reg + "'", a.line,
                      a.column);
    }
    if (a.index) {
      if (*a.index < 0 || *a.index >= reg->size) {
        throw QasmError("index " + std::to_string(*a.index) + " out of range for '" + a.reg + "'",
                        a.line, a.column);
      }
      return {*a.index + 1};
    }
    std::vector<int> all(reg->size);
    for (int i = 0; i < reg->size; ++i) all[i] = i + 1;
    return all;
  }

  void declaration(const Token& kw) {
    const Token& name = next();
    if (name.kind != Tok::Ident) fail("expected a register name", name);
    expect_symbol("[");
    int size = expect_int();
    expect_symbol("]");
    expect_symbol(";");
    if (size < 1) fail("register size must be positive", name);
    if (circuit_) fail("declarations must precede gates", kw);
    auto& slot = kw.text == "qreg" ? qreg_ : creg_;
    if (slot) fail("only one " + kw.text + " is supported", kw);
    if ((kw.text == "qreg" && creg_ && creg_->name == name.text) ||
        (kw.text == "creg" && qreg_ && qreg_->name == name.text)) {
      fail("register name '" + name.text + "' already used", name);
    }
    slot = Register{name.text, size};
  }

  void add(GateInstance g, const Token& where) {
    try {
      circuit_->add(std::move(g));
    } catch (const std::exception& e) {
      fail(e.what(), where);
    }
  }

  void statement() {
    const Token& kw = next();
    if (kw.kind != Tok::Ident) fail("expected a statement", kw);
    if (kw.text == "include") {
      const Token& file = next();
      if (file.kind != Tok::String) fail("expected a file name", file);
      if (file.text != "qelib1.inc") fail("only qelib1.inc may be included", file);
      expect_symbol(";");
      return;
    }
    if (kw.text == "qreg" || kw.text == "creg") {
      declaration(kw);
      return;
    }

    static const std::pair<const char*, GateKind> kOneQubit[] = {
        {"h", GateKind::H}, {"x", GateKind::X}, {"z", GateKind::Z}, {"s", GateKind::S},
        {"sdg", GateKind::Sdg}};
    for (const auto& [name, kind] : kOneQubit) {
      if (kw.text != name) continue;
      ensure_circuit(kw);
      auto qs = resolve(argument(), qreg_, "quantum");
      expect_symbol(";");
      for (int q : qs) add({kind, {q}, std::nullopt}, kw);
      return;
    }
    if (kw.text == "cx" || kw.text == "CX" || kw.text == "cz") {
      ensure_circuit(kw);
      Argument a = argument();
      expect_symbol(",");
      Argument b = argument();
      expect_symbol(";");
      if (!a.index || !b.index) fail("two-qubit gates need indexed qubits", kw);
      int qa = resolve(a, qreg_, "quantum")[0];
      int qb = resolve(b, qreg_, "quantum")[0];
      add({kw.text == "cz" ? GateKind::CZ : GateKind::CNOT, {qa, qb}, std::nullopt}, kw);
      return;
    }
    if (kw.text == "measure") {
      ensure_circuit(kw);
      Argument a = argument();
      expect_symbol("->");
      Argument c = argument();
      expect_symbol(";");
      auto qs = resolve(a, qreg_, "quantum");
      auto cs = resolve(c, creg_, "classical");
      if (qs.size() != cs.size()) fail("measure: register sizes differ", kw);
      for (std::size_t i = 0; i < qs.size(); ++i) add(GateInstance::measure(qs[i], cs[i]), kw);
      return;
    }
    if (kw.text == "barrier") {
      ensure_circuit(kw);
      std::vector<int> qs;
      while (true) {
        auto more = resolve(argument(), qreg_, "quantum");
        qs.insert(qs.end(), more.begin(), more.end());
        if (peek().kind == Tok::Symbol && peek().text == ",") {
          next();
          continue;
        }
        break;
      }
      expect_symbol(";");
      add(GateInstance::barrier(std::move(qs)), kw);
      return;
    }
    fail("unsupported statement '" + kw.text + "'", kw);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::optional<Register> qreg_, creg_;
  std::optional<QuantumCircuit> circuit_;
};

}  // namespace

QuantumCircuit parse_qasm(std::string_view text) {
  Parser parser(Lexer(text).run());
  return parser.run();
}

}  // namespace zstates
