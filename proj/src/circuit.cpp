#include "qpilot/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qpilot/error.hpp"

namespace qpilot {

namespace {

constexpr std::array<std::string_view, 11> kGateNames = {"rx",  "ry", "rz", "h",    "s",   "sdg",
                                                         "cz",  "cx", "rzz", "swap", "u3"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

void check_gate(const Gate& g, std::size_t n_qubits) {
  if (g.kind == GateKind::U3) {
    throw UnsupportedGateError("u3 is not a circuit gate");
  }
  const std::size_t arity = is_two_qubit(g.kind) ? 2 : 1;
  if (g.qubits.size() != arity) {
    throw InvalidArgument(std::string(to_string(g.kind)) + " expects " + std::to_string(arity) +
                          " qubit(s)");
  }
  for (const Qubit q : g.qubits) {
    if (q >= n_qubits) {
      throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
    }
  }
  if (arity == 2 && g.qubits[0] == g.qubits[1]) {
    throw InvalidArgument("two-qubit gate on repeated qubit " + std::to_string(g.qubits[0]));
  }
}

// Evaluates the tiny angle grammar used by QASM benchmarks: numbers, pi, + - * /, parens.
class AngleParser {
public:
  AngleParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  double parse() {
    const double v = expr();
    skip_ws();
    if (pos_ != s_.size()) {
      fail("trailing characters in angle");
    }
    return v;
  }

private:
  double expr() {
    double v = term();
    for (;;) {
      skip_ws();
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  double term() {
    double v = factor();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        v /= factor();
      } else {
        return v;
      }
    }
  }
  double factor() {
    skip_ws();
    if (eat('-')) {
      return -factor();
    }
    if (eat('+')) {
      return factor();
    }
    if (eat('(')) {
      const double v = expr();
      skip_ws();
      if (!eat(')')) {
        fail("missing ')' in angle");
      }
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E' ||
                                ((s_[pos_] == '-' || s_[pos_] == '+') && pos_ > start &&
                                 (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    if (start == pos_) {
      fail("expected number in angle");
    }
    return std::stod(std::string(s_.substr(start, pos_ - start)));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

} // namespace

bool is_two_qubit(GateKind k) {
  return k == GateKind::CZ || k == GateKind::CNOT || k == GateKind::ZZ || k == GateKind::SWAP;
}

bool has_angle(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::ZZ;
}

std::string_view to_string(GateKind k) { return kGateNames[static_cast<std::size_t>(k)]; }

GateKind gate_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kGateNames.size(); ++i) {
    if (kGateNames[i] == name) {
      return static_cast<GateKind>(i);
    }
  }
  if (name == "cnot") {
    return GateKind::CNOT;
  }
  if (name == "zz") {
    return GateKind::ZZ;
  }
  throw UnsupportedGateError(std::string(name));
}

Circuit::Circuit(std::size_t n_qubits, std::vector<Gate> gates) : n_qubits_(n_qubits) {
  gates_.reserve(gates.size());
  for (auto& g : gates) {
    add(std::move(g));
  }
}

void Circuit::add(Gate g) {
  check_gate(g, n_qubits_);
  gates_.push_back(std::move(g));
}

std::vector<std::vector<GateId>> Circuit::dependencies() const {
  constexpr GateId kNone = static_cast<GateId>(-1);
  std::vector<GateId> last(n_qubits_, kNone);
  std::vector<std::vector<GateId>> deps(gates_.size());
  for (GateId id = 0; id < gates_.size(); ++id) {
    for (const Qubit q : gates_[id].qubits) {
      if (last[q] != kNone &&
          std::find(deps[id].begin(), deps[id].end(), last[q]) == deps[id].end()) {
        deps[id].push_back(last[q]);
      }
      last[q] = id;
    }
  }
  return deps;
}

std::vector<Qubit> PauliString::support() const {
  std::vector<Qubit> out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] != Pauli::I) {
      out.push_back(static_cast<Qubit>(i));
    }
  }
  return out;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(ops.size());
  for (const Pauli p : ops) {
    s.push_back("IXYZ"[static_cast<int>(p)]);
  }
  return s;
}

PauliString parse_pauli(std::string_view text, double angle, std::size_t line) {
  PauliString p;
  p.angle = angle;
  p.ops.reserve(text.size());
  for (const char c : text) {
    switch (c) {
    case 'I': p.ops.push_back(Pauli::I); break;
    case 'X': p.ops.push_back(Pauli::X); break;
    case 'Y': p.ops.push_back(Pauli::Y); break;
    case 'Z': p.ops.push_back(Pauli::Z); break;
    default: throw ParseError(line, std::string("invalid Pauli character '") + c + "'");
    }
  }
  return p;
}

std::vector<PauliString> parse_pauli_file(std::string_view text, double default_angle) {
  std::vector<PauliString> out;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    double angle = default_angle;
    std::string_view ops = line;
    if (const auto sp = line.find_first_of(" \t"); sp != std::string_view::npos) {
      ops = line.substr(0, sp);
      angle = AngleParser(trim(line.substr(sp)), line_no).parse();
    }
    PauliString p = parse_pauli(ops, angle, line_no);
    if (!out.empty() && p.n_qubits() != out.front().n_qubits()) {
      throw ParseError(line_no, "Pauli string length differs from first string");
    }
    out.push_back(std::move(p));
  }
  return out;
}

Circuit parse_qasm(std::string_view text) {
  std::optional<Circuit> circuit;
  std::string reg_name;
  std::size_t line_no = 1;
  std::size_t pos = 0;

  auto parse_operand = [&](std::string_view tok) -> Qubit {
    tok = trim(tok);
    const auto lb = tok.find('[');
    const auto rb = tok.find(']');
    if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb) {
      throw ParseError(line_no, "expected qubit operand, got '" + std::string(tok) + "'");
    }
    if (trim(tok.substr(0, lb)) != reg_name) {
      throw ParseError(line_no, "unknown register '" + std::string(tok.substr(0, lb)) + "'");
    }
    const auto digits = trim(tok.substr(lb + 1, rb - lb - 1));
    Qubit q = 0;
    const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec != std::errc() || p != digits.data() + digits.size()) {
      throw ParseError(line_no, "bad qubit index '" + std::string(digits) + "'");
    }
    return q;
  };

  while (pos < text.size()) {
    // Statements end at ';'. Track line numbers across the consumed span.
    const auto semi = text.find(';', pos);
    std::string_view stmt = text.substr(pos, semi == std::string_view::npos ? text.npos : semi - pos);
    const std::size_t stmt_line_start = line_no;
    // Strip // comments line by line while counting newlines.
    std::string cleaned;
    std::size_t first_code_line = 0;
    {
      std::size_t ln = stmt_line_start;
      std::size_t i = 0;
      while (i < stmt.size()) {
        if (stmt[i] == '\n') {
          ++ln;
          cleaned.push_back(' ');
          ++i;
        } else if (stmt.substr(i, 2) == "//") {
          while (i < stmt.size() && stmt[i] != '\n') {
            ++i;
          }
        } else {
          if (first_code_line == 0 && !std::isspace(static_cast<unsigned char>(stmt[i]))) {
            first_code_line = ln;
          }
          cleaned.push_back(stmt[i]);
          ++i;
        }
      }
      line_no = ln;
    }
    pos = semi == std::string_view::npos ? text.size() : semi + 1;
    const std::string_view s = trim(cleaned);
    if (s.empty()) {
      continue;
    }
    const std::size_t here = first_code_line ? first_code_line : stmt_line_start;
    if (semi == std::string_view::npos) {
      throw ParseError(here, "missing ';'");
    }
    const std::size_t saved = line_no;
    line_no = here;

    if (s.starts_with("OPENQASM") || s.starts_with("include")) {
      line_no = saved;
      continue;
    }
    if (s.starts_with("qreg")) {
      if (circuit) {
        throw ParseError(line_no, "only one qreg is supported");
      }
      const auto decl = trim(s.substr(4));
      const auto lb = decl.find('[');
      const auto rb = decl.find(']');
      if (lb == std::string_view::npos || rb == std::string_view::npos) {
        throw ParseError(line_no, "malformed qreg");
      }
      reg_name = std::string(trim(decl.substr(0, lb)));
      const auto digits = trim(decl.substr(lb + 1, rb - lb - 1));
      std::size_t n = 0;
      const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc() || p != digits.data() + digits.size()) {
        throw ParseError(line_no, "bad register size");
      }
      circuit.emplace(n);
      line_no = saved;
      continue;
    }
    if (s.starts_with("creg") || s.starts_with("barrier") || s.starts_with("measure")) {
      line_no = saved;
      continue;
    }

    // gate statement: name[(angle)] operands
    std::size_t name_end = 0;
    while (name_end < s.size() && (std::isalnum(static_cast<unsigned char>(s[name_end])) ||
                                   s[name_end] == '_')) {
      ++name_end;
    }
    const std::string name(s.substr(0, name_end));
    std::string_view rest = s.substr(name_end);
    const GateKind kind = gate_kind_from_string(name);
    if (!circuit) {
      throw ParseError(line_no, "gate before qreg declaration");
    }
    double angle = 0.0;
    rest = trim(rest);
    if (has_angle(kind)) {
      if (rest.empty() || rest.front() != '(') {
        throw ParseError(line_no, name + " requires an angle");
      }
      int depth = 0;
      std::size_t close = 0;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '(') {
          ++depth;
        } else if (rest[i] == ')' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == 0) {
        throw ParseError(line_no, "unbalanced parentheses");
      }
      angle = AngleParser(rest.substr(1, close - 1), line_no).parse();
      rest = trim(rest.substr(close + 1));
    }
    Gate g{kind, {}, angle};
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      g.qubits.push_back(parse_operand(rest.substr(start, comma == rest.npos ? rest.npos : comma - start)));
      if (comma == rest.npos) {
        break;
      }
      start = comma + 1;
    }
    try {
      circuit->add(std::move(g));
    } catch (const InvalidArgument& e) {
      throw ParseError(line_no, e.what());
    }
    line_no = saved;
  }
  if (!circuit) {
    throw ParseError(line_no, "no qreg declaration");
  }
  return std::move(*circuit);
}

std::string to_qasm(const Circuit& c) {
  std::ostringstream out;
  out.precision(17);
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.n_qubits() << "];\n";
  for (const Gate& g : c.gates()) {
    out << to_string(g.kind);
    if (has_angle(g.kind)) {
      out << '(' << g.angle << ')';
    }
    out << ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      out << (i ? "," : "") << "q[" << g.qubits[i] << ']';
    }
    out << ";\n";
  }
  return out.str();
}

Circuit decompose_to_cz_basis(const Circuit& c, bool keep_zz) {
  Circuit out(c.n_qubits());
  auto cnot = [&out](Qubit ctl, Qubit tgt) {
    out.add(Gate::h(tgt));
    out.add(Gate::cz(ctl, tgt));
    out.add(Gate::h(tgt));
  };
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
    case GateKind::CNOT: cnot(g.qubits[0], g.qubits[1]); break;
    case GateKind::SWAP:
      cnot(g.qubits[0], g.qubits[1]);
      cnot(g.qubits[1], g.qubits[0]);
      cnot(g.qubits[0], g.qubits[1]);
      break;
    case GateKind::ZZ:
      if (keep_zz) {
        out.add(g);
      } else {
        cnot(g.qubits[0], g.qubits[1]);
        out.add(Gate::rz(g.qubits[1], g.angle));
        cnot(g.qubits[0], g.qubits[1]);
      }
      break;
    default: out.add(g); break;
    }
  }
  return out;
}

std::vector<GateId> front_layer(const Circuit& c, const std::vector<bool>& done) {
  if (done.size() != c.size()) {
    throw InvalidArgument("done mask size does not match circuit");
  }
  // A gate is ready iff, on each of its qubits, it is the first not-done gate.
  std::vector<bool> blocked(c.n_qubits(), false);
  std::vector<GateId> out;
  for (GateId id = 0; id < c.size(); ++id) {
    if (done[id]) {
      continue;
    }
    const auto& qs = c[id].qubits;
    const bool ready = std::none_of(qs.begin(), qs.end(), [&](Qubit q) { return blocked[q]; });
    if (ready) {
      out.push_back(id);
    }
    for (const Qubit q : qs) {
      blocked[q] = true;
    }
  }
  return out;
}

Circuit pauli_evolution_circuit(std::span<const PauliString> strings) {
  const std::size_t n = strings.empty() ? 0 : strings.front().n_qubits();
  Circuit out(n);
  for (const PauliString& p : strings) {
    const auto sup = p.support();
    if (sup.empty()) {
      continue;
    }
    for (const Qubit q : sup) {
      if (p.ops[q] == Pauli::X) {
        out.add(Gate::h(q));
      } else if (p.ops[q] == Pauli::Y) {
        out.add(Gate::sdg(q));
        out.add(Gate::h(q));
      }
    }
    const Qubit last = sup.back();
    for (std::size_t i = 0; i + 1 < sup.size(); ++i) {
      out.add(Gate::cnot(sup[i], last));
    }
    out.add(Gate::rz(last, p.angle));
    for (std::size_t i = sup.size() - 1; i-- > 0;) {
      out.add(Gate::cnot(sup[i], last));
    }
    for (const Qubit q : sup) {
      if (p.ops[q] == Pauli::X) {
        out.add(Gate::h(q));
      } else if (p.ops[q] == Pauli::Y) {
        out.add(Gate::h(q));
        out.add(Gate::s(q));
      }
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const Gate& g) {
  j = nlohmann::json{{"kind", to_string(g.kind)}, {"qubits", g.qubits}};
  if (has_angle(g.kind)) {
    j["angle"] = g.angle;
  }
}

void from_json(const nlohmann::json& j, Gate& g) {
  g.kind = gate_kind_from_string(j.at("kind").get<std::string>());
  g.qubits = j.at("qubits").get<std::vector<Qubit>>();
  g.angle = j.value("angle", 0.0);
}

void to_json(nlohmann::json& j, const Circuit& c) {
  j = nlohmann::json{{"n_qubits", c.n_qubits()}, {"gates", c.gates()}};
}

void from_json(const nlohmann::json& j, Circuit& c) {
  c = Circuit(j.at("n_qubits").get<std::size_t>(), j.at("gates").get<std::vector<Gate>>());
}

} // namespace qpilot
