#include "hemopap/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "hemopap/errors.hpp"
#include "hemopap/numfmt.hpp"

namespace hemopap {

namespace {

// ---------------------------------------------------------------- tokenizer

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  double number = 0.0;
  char punct = 0;
  int line = 0;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string origin)
      : text_(text), origin_(std::move(origin)) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      t.kind = Token::Kind::Ident;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    const bool dot_number =
        c == '.' && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
        dot_number) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' ||
            d == 'e' || d == 'E') {
          ++pos_;
        } else if ((d == '-' || d == '+') && pos_ > start &&
                   (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')) {
          ++pos_;
        } else {
          break;
        }
      }
      std::string s(text_.substr(start, pos_ - start));
      try {
        std::size_t used = 0;
        t.number = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        fail(t.line, "malformed number \"" + s + "\"");
      }
      t.kind = Token::Kind::Number;
      t.text = s;
      return t;
    }
    if (std::string("{}()[]=,.").find(c) != std::string::npos) {
      t.kind = Token::Kind::Punct;
      t.punct = c;
      ++pos_;
      return t;
    }
    fail(line_, std::string("unexpected character '") + c + "'");
    return t;
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    std::ostringstream os;
    os << origin_ << ":" << line << ": " << msg;
    throw ParseError(os.str());
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string origin_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::string origin)
      : lex_(text, origin), origin_(std::move(origin)) {
    advance();
  }

  Scenario parse() {
    Scenario sc;
    sc.name = origin_;
    bool have_model = false, have_range = false;
    while (cur_.kind != Token::Kind::End) {
      Token head = expect_ident("block name");
      expect_punct('{');
      if (head.text == "model") {
        parse_model(sc, head.line);
        have_model = true;
      } else if (head.text == "range") {
        parse_range(sc);
        have_range = true;
      } else if (head.text == "overrides") {
        parse_overrides(sc);
      } else if (head.text == "numerics") {
        parse_numerics(sc);
      } else {
        lex_.fail(head.line, "unknown block \"" + head.text + "\"");
      }
    }
    if (!have_model) lex_.fail(1, "missing model block");
    if (!have_range) lex_.fail(1, "missing range block");
    return sc;
  }

 private:
  // ------------------------------------------------------------- expression
  struct Expr {
    std::string tag;
    int line = 0;
    std::vector<double> nums;
    std::vector<Expr> kids;
  };

  Expr parse_expr() {
    Token head = expect_ident("function expression");
    Expr e;
    e.tag = head.text;
    e.line = head.line;
    expect_punct('(');
    if (cur_.kind == Token::Kind::Punct && cur_.punct == ')') {
      advance();
      return e;
    }
    for (;;) {
      if (cur_.kind == Token::Kind::Number) {
        e.nums.push_back(cur_.number);
        advance();
      } else {
        e.kids.push_back(parse_expr());
      }
      if (cur_.kind == Token::Kind::Punct && cur_.punct == ',') {
        advance();
        continue;
      }
      expect_punct(')');
      break;
    }
    return e;
  }

  void need_args(const Expr& e, std::size_t nums, std::size_t kids) const {
    if (e.nums.size() != nums || e.kids.size() != kids)
      lex_.fail(e.line, "wrong arguments for \"" + e.tag + "\"");
  }

  ApExpr to_ap(const Expr& e) const {
    if (e.tag == "const") {
      need_args(e, 1, 0);
      return ApExpr::constant(e.nums[0]);
    }
    if (e.tag == "cos") {
      need_args(e, 2, 0);
      return ApExpr::cosine(e.nums[0], e.nums[1]);
    }
    if (e.tag == "sin") {
      need_args(e, 2, 0);
      return ApExpr::sine(e.nums[0], e.nums[1]);
    }
    if (e.tag == "sum") {
      if (e.nums.size() > 0 || e.kids.empty())
        lex_.fail(e.line, "sum takes function arguments");
      std::vector<ApExpr> kids;
      for (const Expr& k : e.kids) kids.push_back(to_ap(k));
      return ApExpr::sum(std::move(kids));
    }
    if (e.tag == "scale") {
      if (e.nums.size() != 1 || e.kids.size() != 1)
        lex_.fail(e.line, "scale takes a factor and one function");
      return ApExpr::scale(e.nums[0], to_ap(e.kids[0]));
    }
    if (e.tag == "abs") {
      need_args(e, 0, 1);
      return ApExpr::abs(to_ap(e.kids[0]));
    }
    if (e.tag == "square") {
      need_args(e, 0, 1);
      return ApExpr::square(to_ap(e.kids[0]));
    }
    if (is_ergodic_tag(e.tag))
      lex_.fail(e.line,
                "\"" + e.tag + "\" is only allowed at the top level of a sum");
    lex_.fail(e.line, "unknown function \"" + e.tag + "\"");
  }

  static bool is_ergodic_tag(const std::string& tag) {
    return tag == "rational_decay" || tag == "gaussian_decay" ||
           tag == "bump_train" || tag == "zero";
  }

  ErgodicTerm to_ergodic(const Expr& e) const {
    ErgodicTerm t;
    if (e.tag == "zero") {
      need_args(e, 0, 0);
      t.kind = ErgodicTerm::Kind::Zero;
      return t;
    }
    need_args(e, 1, 0);
    t.c = e.nums[0];
    if (e.tag == "rational_decay")
      t.kind = ErgodicTerm::Kind::RationalDecay;
    else if (e.tag == "gaussian_decay")
      t.kind = ErgodicTerm::Kind::GaussianDecay;
    else
      t.kind = ErgodicTerm::Kind::BumpTrain;
    return t;
  }

  PapFunction to_pap(const Expr& e) const {
    if (is_ergodic_tag(e.tag))
      return PapFunction(ApExpr::constant(0.0), {to_ergodic(e)});
    if (e.tag == "sum") {
      std::vector<ApExpr> ap;
      std::vector<ErgodicTerm> erg;
      for (const Expr& k : e.kids) {
        if (is_ergodic_tag(k.tag))
          erg.push_back(to_ergodic(k));
        else
          ap.push_back(to_ap(k));
      }
      if (e.nums.size() > 0 || e.kids.empty())
        lex_.fail(e.line, "sum takes function arguments");
      return PapFunction(ApExpr::sum(std::move(ap)), std::move(erg));
    }
    return PapFunction(to_ap(e));
  }

  // ----------------------------------------------------------------- blocks
  struct Key {
    std::string canonical;
    std::string base;
    int index = 0;  // 1-based for base[i]
    std::string member;
    int line = 0;
  };

  Key parse_key() {
    Token head = expect_ident("key");
    Key k;
    k.base = head.text;
    k.canonical = head.text;
    k.line = head.line;
    if (cur_.kind == Token::Kind::Punct && cur_.punct == '[') {
      advance();
      Token idx = expect_number("index");
      k.index = static_cast<int>(idx.number);
      if (k.index < 1 || static_cast<double>(k.index) != idx.number)
        lex_.fail(idx.line, "index must be a positive integer");
      expect_punct(']');
      k.canonical += "[" + std::to_string(k.index) + "]";
    }
    if (cur_.kind == Token::Kind::Punct && cur_.punct == '.') {
      advance();
      Token mem = expect_ident("member");
      k.member = mem.text;
      k.canonical += "." + mem.text;
    }
    expect_punct('=');
    return k;
  }

  double number_value(const Key& k) {
    if (cur_.kind != Token::Kind::Number)
      lex_.fail(k.line, "\"" + k.canonical + "\" expects a number");
    double v = cur_.number;
    advance();
    return v;
  }

  PapFunction function_value() {
    return to_pap(parse_expr());
  }

  void parse_model(Scenario& sc, int block_line) {
    ModelSpec& m = sc.model;
    std::map<int, PapFunction> b_entries, tau_entries;
    std::map<int, int> b_lines, tau_lines;
    bool have_m = false, have_n = false, have_a = false, have_shape = false,
         have_c = false;
    int line_m = 0, line_n = 0, line_a = 0, line_sigma = 0, line_c = 0;
    while (!at_block_end()) {
      Key k = parse_key();
      if (k.base == "m" && k.member.empty() && k.index == 0) {
        m.m = number_value(k);
        have_m = true;
        line_m = k.line;
      } else if (k.base == "n" && k.member.empty() && k.index == 0) {
        m.n = number_value(k);
        have_n = true;
        line_n = k.line;
      } else if (k.base == "L" && k.member.empty() && k.index == 0) {
        m.lipschitz = number_value(k);
        if (m.lipschitz < 0.0)
          lex_.fail(k.line, "model.L: must be >= 0");
      } else if (k.base == "a" && k.member.empty() && k.index == 0) {
        m.a = function_value();
        have_a = true;
        line_a = k.line;
      } else if (k.base == "b" && k.member.empty() && k.index >= 1) {
        b_entries[k.index] = function_value();
        b_lines[k.index] = k.line;
      } else if (k.base == "tau" && k.member.empty() && k.index >= 1) {
        tau_entries[k.index] = function_value();
        tau_lines[k.index] = k.line;
      } else if (k.base == "sigma" && k.member.empty() && k.index == 0) {
        m.sigma = function_value();
        line_sigma = k.line;
      } else if (k.base == "harvest" && k.member == "shape") {
        Token shape = expect_ident("harvest shape");
        if (shape.text == "none")
          m.harvest.shape = HarvestShape::None;
        else if (shape.text == "rational")
          m.harvest.shape = HarvestShape::Rational;
        else if (shape.text == "saturating")
          m.harvest.shape = HarvestShape::Saturating;
        else
          lex_.fail(shape.line, "harvest.shape: unknown shape \"" +
                                    shape.text + "\"");
        have_shape = true;
      } else if (k.base == "harvest" && k.member == "c") {
        m.harvest.c = function_value();
        have_c = true;
        line_c = k.line;
      } else {
        lex_.fail(k.line, "unknown key \"" + k.canonical + "\" in model block");
      }
    }
    expect_punct('}');
    if (!have_m || !have_n)
      lex_.fail(block_line, "model: m and n are required");
    if (!have_a) lex_.fail(block_line, "model: a is required");
    if (!(m.m > 1.0)) lex_.fail(line_m, "model.m: must be > 1");
    if (!(m.m <= m.n)) lex_.fail(line_n, "model.n: must be >= m");
    if (!(m.a.bounds().lo > 0.0))
      lex_.fail(line_a, "model.a: must be bounded away from 0");
    // contiguous production indices, with matching delays
    int nterms = static_cast<int>(b_entries.size());
    for (int i = 1; i <= nterms; ++i) {
      auto it = b_entries.find(i);
      if (it == b_entries.end())
        lex_.fail(block_line, "model: b[" + std::to_string(i) + "] missing");
      auto jt = tau_entries.find(i);
      if (jt == tau_entries.end())
        lex_.fail(b_lines[i], "model: tau[" + std::to_string(i) + "] missing");
      if (!(it->second.bounds().lo >= 0.0))
        lex_.fail(b_lines[i],
                  "model.b[" + std::to_string(i) + "]: must be >= 0");
      if (!(jt->second.bounds().lo >= 0.0))
        lex_.fail(tau_lines[i],
                  "model.tau[" + std::to_string(i) + "]: must be >= 0");
      m.b.push_back(it->second);
      m.tau.push_back(jt->second);
    }
    if (tau_entries.size() != b_entries.size())
      lex_.fail(block_line, "model: b and tau counts differ");
    if (!(m.sigma.bounds().lo >= 0.0))
      lex_.fail(line_sigma, "model.sigma: must be >= 0");
    if (have_shape && m.harvest.shape != HarvestShape::None && !have_c)
      lex_.fail(block_line, "model: harvest.c required for that shape");
    if (have_c && !(m.harvest.c.bounds().lo >= 0.0))
      lex_.fail(line_c, "model.harvest.c: must be >= 0");
  }

  void parse_range(Scenario& sc) {
    bool have_k = false, have_M = false;
    int line_k = 0;
    while (!at_block_end()) {
      Key k = parse_key();
      if (k.base == "k" && k.member.empty() && k.index == 0) {
        sc.range.k = number_value(k);
        have_k = true;
        line_k = k.line;
      } else if (k.base == "M" && k.member.empty() && k.index == 0) {
        sc.range.M = number_value(k);
        have_M = true;
      } else {
        lex_.fail(k.line, "unknown key \"" + k.canonical + "\" in range block");
      }
    }
    expect_punct('}');
    if (!have_k || !have_M) lex_.fail(line_k ? line_k : 1, "range: k and M required");
    if (!(sc.range.k > 0.0)) lex_.fail(line_k, "range.k: must be > 0");
    if (!(sc.range.k < sc.range.M))
      lex_.fail(line_k, "range.k: must be < range.M");
  }

  void parse_overrides(Scenario& sc) {
    while (!at_block_end()) {
      Key k = parse_key();
      if (k.base == "H_plus" && k.member.empty())
        sc.overrides.H_plus = number_value(k);
      else if (k.base == "H_minus" && k.member.empty())
        sc.overrides.H_minus = number_value(k);
      else if (k.base == "L" && k.member.empty())
        sc.overrides.L = number_value(k);
      else
        lex_.fail(k.line,
                  "unknown key \"" + k.canonical + "\" in overrides block");
    }
    expect_punct('}');
  }

  void parse_numerics(Scenario& sc) {
    while (!at_block_end()) {
      Key k = parse_key();
      double v = number_value(k);
      if (k.base == "h")
        sc.numerics.h = v;
      else if (k.base == "horizon")
        sc.numerics.horizon = v;
      else if (k.base == "grid_step")
        sc.numerics.grid_step = v;
      else if (k.base == "T_trunc")
        sc.numerics.T_trunc = v;
      else if (k.base == "tol")
        sc.numerics.tol = v;
      else if (k.base == "window")
        sc.numerics.window = v;
      else
        lex_.fail(k.line,
                  "unknown key \"" + k.canonical + "\" in numerics block");
      if (!(v > 0.0))
        lex_.fail(k.line, "numerics." + k.base + ": must be > 0");
    }
    expect_punct('}');
  }

  // ---------------------------------------------------------------- helpers
  bool at_block_end() {
    if (cur_.kind == Token::Kind::Punct && cur_.punct == '}') return true;
    if (cur_.kind == Token::Kind::End)
      lex_.fail(cur_.line, "unexpected end of file inside a block");
    return false;
  }

  Token expect_ident(const char* what) {
    if (cur_.kind != Token::Kind::Ident)
      lex_.fail(cur_.line, std::string("expected ") + what);
    Token t = cur_;
    advance();
    return t;
  }

  Token expect_number(const char* what) {
    if (cur_.kind != Token::Kind::Number)
      lex_.fail(cur_.line, std::string("expected ") + what);
    Token t = cur_;
    advance();
    return t;
  }

  void expect_punct(char c) {
    if (cur_.kind != Token::Kind::Punct || cur_.punct != c)
      lex_.fail(cur_.line, std::string("expected '") + c + "'");
    advance();
  }

  void advance() { cur_ = lex_.next(); }

  Lexer lex_;
  std::string origin_;
  Token cur_;
};

// -------------------------------------------------------------- serializer

void emit_ap(std::ostream& os, const ApExpr& e) {
  switch (e.kind()) {
    case ApExpr::Kind::Const:
      os << "const(" << fmt_shortest(e.param0()) << ")";
      break;
    case ApExpr::Kind::Cos:
      os << "cos(" << fmt_shortest(e.param0()) << ", "
         << fmt_shortest(e.param1()) << ")";
      break;
    case ApExpr::Kind::Sin:
      os << "sin(" << fmt_shortest(e.param0()) << ", "
         << fmt_shortest(e.param1()) << ")";
      break;
    case ApExpr::Kind::Sum: {
      os << "sum(";
      bool first = true;
      for (const ApExpr& k : e.children()) {
        if (!first) os << ", ";
        first = false;
        emit_ap(os, k);
      }
      os << ")";
      break;
    }
    case ApExpr::Kind::Scale:
      os << "scale(" << fmt_shortest(e.param0()) << ", ";
      emit_ap(os, e.children()[0]);
      os << ")";
      break;
    case ApExpr::Kind::Abs:
      os << "abs(";
      emit_ap(os, e.children()[0]);
      os << ")";
      break;
    case ApExpr::Kind::Square:
      os << "square(";
      emit_ap(os, e.children()[0]);
      os << ")";
      break;
  }
}

void emit_ergodic(std::ostream& os, const ErgodicTerm& t) {
  switch (t.kind) {
    case ErgodicTerm::Kind::Zero:
      os << "zero()";
      break;
    case ErgodicTerm::Kind::RationalDecay:
      os << "rational_decay(" << fmt_shortest(t.c) << ")";
      break;
    case ErgodicTerm::Kind::GaussianDecay:
      os << "gaussian_decay(" << fmt_shortest(t.c) << ")";
      break;
    case ErgodicTerm::Kind::BumpTrain:
      os << "bump_train(" << fmt_shortest(t.c) << ")";
      break;
  }
}

void emit_pap(std::ostream& os, const PapFunction& f) {
  const bool ap_is_zero = f.ap().kind() == ApExpr::Kind::Const &&
                          f.ap().param0() == 0.0;
  if (f.ergodic().empty()) {
    emit_ap(os, f.ap());
    return;
  }
  if (ap_is_zero && f.ergodic().size() == 1) {
    emit_ergodic(os, f.ergodic()[0]);
    return;
  }
  os << "sum(";
  bool first = true;
  auto sep = [&] {
    if (!first) os << ", ";
    first = false;
  };
  if (!ap_is_zero) {
    if (f.ap().kind() == ApExpr::Kind::Sum) {
      for (const ApExpr& k : f.ap().children()) {
        sep();
        emit_ap(os, k);
      }
    } else {
      sep();
      emit_ap(os, f.ap());
    }
  }
  for (const ErgodicTerm& t : f.ergodic()) {
    sep();
    emit_ergodic(os, t);
  }
  os << ")";
}

}  // namespace

Scenario parse_scenario_text(std::string_view text, const std::string& origin) {
  Parser p(text, origin);
  Scenario sc = p.parse();
  sc.model.validate();
  return sc;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.empty()) throw ParseError(path + ": empty scenario file");
  return parse_scenario_text(text, path);
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream os;
  os << "model {\n";
  os << "  m = " << fmt_shortest(sc.model.m) << "\n";
  os << "  n = " << fmt_shortest(sc.model.n) << "\n";
  os << "  L = " << fmt_shortest(sc.model.lipschitz) << "\n";
  os << "  a = ";
  emit_pap(os, sc.model.a);
  os << "\n";
  for (std::size_t i = 0; i < sc.model.b.size(); ++i) {
    os << "  b[" << i + 1 << "] = ";
    emit_pap(os, sc.model.b[i]);
    os << "\n";
    os << "  tau[" << i + 1 << "] = ";
    emit_pap(os, sc.model.tau[i]);
    os << "\n";
  }
  os << "  sigma = ";
  emit_pap(os, sc.model.sigma);
  os << "\n";
  switch (sc.model.harvest.shape) {
    case HarvestShape::None:
      os << "  harvest.shape = none\n";
      break;
    case HarvestShape::Rational:
      os << "  harvest.shape = rational\n";
      break;
    case HarvestShape::Saturating:
      os << "  harvest.shape = saturating\n";
      break;
  }
  if (sc.model.harvest.shape != HarvestShape::None) {
    os << "  harvest.c = ";
    emit_pap(os, sc.model.harvest.c);
    os << "\n";
  }
  os << "}\n";
  os << "range {\n";
  os << "  k = " << fmt_shortest(sc.range.k) << "\n";
  os << "  M = " << fmt_shortest(sc.range.M) << "\n";
  os << "}\n";
  if (sc.overrides.H_plus || sc.overrides.H_minus || sc.overrides.L) {
    os << "overrides {\n";
    if (sc.overrides.H_plus)
      os << "  H_plus = " << fmt_shortest(*sc.overrides.H_plus) << "\n";
    if (sc.overrides.H_minus)
      os << "  H_minus = " << fmt_shortest(*sc.overrides.H_minus) << "\n";
    if (sc.overrides.L) os << "  L = " << fmt_shortest(*sc.overrides.L) << "\n";
    os << "}\n";
  }
  os << "numerics {\n";
  os << "  h = " << fmt_shortest(sc.numerics.h) << "\n";
  os << "  horizon = " << fmt_shortest(sc.numerics.horizon) << "\n";
  os << "  grid_step = " << fmt_shortest(sc.numerics.grid_step) << "\n";
  if (sc.numerics.T_trunc > 0.0)
    os << "  T_trunc = " << fmt_shortest(sc.numerics.T_trunc) << "\n";
  os << "  tol = " << fmt_shortest(sc.numerics.tol) << "\n";
  os << "  window = " << fmt_shortest(sc.numerics.window) << "\n";
  os << "}\n";
  return os.str();
}

Scenario builtin_example6() {
  constexpr double kPi = 3.14159265358979323846;
  const double sqrt2 = std::sqrt(2.0);
  const double sqrt3 = std::sqrt(3.0);
  Scenario sc;
  sc.name = "example6";
  ModelSpec& m = sc.model;
  m.m = 2.0;
  m.n = 2.0;
  m.lipschitz = 0.01;
  // loss 0.38 + |sin t + sin(pi t)|/400 + (pi/800) omega(t)
  m.a = PapFunction(
      ApExpr::sum({ApExpr::constant(0.38),
                   ApExpr::scale(0.0025,
                                 ApExpr::abs(ApExpr::sum(
                                     {ApExpr::sine(1.0, 0.0),
                                      ApExpr::sine(kPi, 0.0)})))}),
      {ErgodicTerm{ErgodicTerm::Kind::BumpTrain, kPi / 800.0}});
  // production 1 + (sin^2 t + sin^2(sqrt2 t))/10 + 1/(100 (1 + t^2))
  m.b.push_back(PapFunction(
      ApExpr::sum({ApExpr::constant(1.0),
                   ApExpr::scale(0.1, ApExpr::sum({ApExpr::square(
                                                       ApExpr::sine(1.0, 0.0)),
                                                   ApExpr::square(ApExpr::sine(
                                                       sqrt2, 0.0))}))}),
      {ErgodicTerm{ErgodicTerm::Kind::RationalDecay, 0.01}}));
  // delay cos^2 t + cos^2(sqrt2 t) + 1 + exp(-t^2)
  m.tau.push_back(PapFunction(
      ApExpr::sum({ApExpr::square(ApExpr::cosine(1.0, 0.0)),
                   ApExpr::square(ApExpr::cosine(sqrt2, 0.0)),
                   ApExpr::constant(1.0)}),
      {ErgodicTerm{ErgodicTerm::Kind::GaussianDecay, 1.0}}));
  // harvesting delay |sin t - sin(pi t)|
  m.sigma = PapFunction(ApExpr::abs(
      ApExpr::sum({ApExpr::sine(1.0, 0.0),
                   ApExpr::scale(-1.0, ApExpr::sine(kPi, 0.0))})));
  // harvesting (1/100) |sin t + cos(sqrt3 t)| x/(1+x^2)
  m.harvest.shape = HarvestShape::Rational;
  m.harvest.c = PapFunction(ApExpr::scale(
      0.01, ApExpr::abs(ApExpr::sum(
                {ApExpr::sine(1.0, 0.0), ApExpr::cosine(sqrt3, 0.0)}))));
  sc.range.k = 2.0;
  sc.range.M = 3.29;
  sc.overrides.H_plus = 0.005;
  sc.overrides.H_minus = 0.0;
  sc.overrides.L = 0.01;
  sc.numerics.T_trunc = 60.0;
  return sc;
}

Scenario load_scenario(const std::string& path_or_name) {
  if (std::ifstream probe(path_or_name, std::ios::binary); probe)
    return parse_scenario(path_or_name);
  if (path_or_name == "example6" || path_or_name == "example6.scn")
    return builtin_example6();
  throw ParseError(path_or_name + ": cannot open scenario file");
}

}  // namespace hemopap
