#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "strelgen/formula.hpp"

namespace strelgen {

namespace {

enum class Tok {
  End,
  Ident,    // signal names, color names, keywords except the ones below
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  At,
  Star,
  Bang,
  Amp,
  Pipe,
  Gt,
  Lt,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, size_t pos) const {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < pos && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg + " at line " + std::to_string(line) + ", column " +
                         std::to_string(col),
                     pos);
  }

  [[noreturn]] void fail_here(const std::string& msg) const {
    fail(msg, tok_.pos);
  }

 private:
  void advance() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = src_[i_];
    switch (c) {
      case '(': tok_.kind = Tok::LParen; ++i_; return;
      case ')': tok_.kind = Tok::RParen; ++i_; return;
      case '{': tok_.kind = Tok::LBrace; ++i_; return;
      case '}': tok_.kind = Tok::RBrace; ++i_; return;
      case '[': tok_.kind = Tok::LBracket; ++i_; return;
      case ']': tok_.kind = Tok::RBracket; ++i_; return;
      case ',': tok_.kind = Tok::Comma; ++i_; return;
      case '@': tok_.kind = Tok::At; ++i_; return;
      case '*': tok_.kind = Tok::Star; ++i_; return;
      case '!': tok_.kind = Tok::Bang; ++i_; return;
      case '&': tok_.kind = Tok::Amp; ++i_; return;
      case '|': tok_.kind = Tok::Pipe; ++i_; return;
      case '>': tok_.kind = Tok::Gt; ++i_; return;
      case '<': tok_.kind = Tok::Lt; ++i_; return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i_;
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
              src_[i_] == '_'))
        ++i_;
      tok_.kind = Tok::Ident;
      tok_.text = src_.substr(start, i_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      const char* begin = src_.c_str() + i_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("unexpected character '" + std::string(1, c) + "'", i_);
      tok_.kind = Tok::Number;
      tok_.number = v;
      i_ += static_cast<size_t>(end - begin);
      return;
    }
    fail("unexpected character '" + std::string(1, c) + "'", i_);
  }

  const std::string& src_;
  size_t i_ = 0;
  Token tok_;
};

// Binding powers; higher binds tighter.
constexpr int kTemporal = 10;
constexpr int kOr = 20;
constexpr int kAnd = 30;
constexpr int kSpatial = 40;
constexpr int kNot = 50;

class Parser {
 public:
  explicit Parser(const std::string& src) : lx_(src) {}

  FormulaPtr run() {
    FormulaPtr f = parse_expr(0);
    if (lx_.peek().kind != Tok::End) lx_.fail_here("unexpected trailing input");
    return f;
  }

 private:
  Lexer lx_;

  void expect(Tok k, const char* what) {
    if (lx_.peek().kind != k) lx_.fail_here(std::string("expected ") + what);
    lx_.take();
  }

  double parse_bound(bool allow_inf) {
    const Token& t = lx_.peek();
    if (t.kind == Tok::Ident && t.text == "inf") {
      if (!allow_inf) lx_.fail_here("lower bound cannot be inf");
      lx_.take();
      return kInf;
    }
    if (t.kind != Tok::Number) lx_.fail_here("expected number");
    return lx_.take().number;
  }

  Interval parse_interval() {
    size_t pos = lx_.peek().pos;
    expect(Tok::LBracket, "'['");
    Interval i;
    i.lo = parse_bound(false);
    expect(Tok::Comma, "','");
    i.hi = parse_bound(true);
    expect(Tok::RBracket, "']'");
    if (i.lo < 0) lx_.fail("interval bounds must be nonnegative", pos);
    if (i.lo > i.hi) lx_.fail("interval lower bound exceeds upper bound", pos);
    return i;
  }

  // Optional `{metric}` tag directly after a spatial operator's interval.
  std::optional<Metric> parse_metric_tag() {
    if (lx_.peek().kind != Tok::LBrace) return std::nullopt;
    lx_.take();
    const Token& t = lx_.peek();
    if (t.kind != Tok::Ident) lx_.fail_here("expected metric name after '{'");
    Token name = lx_.take();
    expect(Tok::RBrace, "'}'");
    try {
      return metric_from_string(name.text);
    } catch (const Error& e) {
      lx_.fail(e.what(), name.pos);
    }
    return std::nullopt;  // unreachable
  }

  ColorSet parse_colorset() {
    expect(Tok::LBrace, "'{'");
    ColorSet c;
    if (lx_.peek().kind == Tok::Star) {
      lx_.take();
      c.all = true;
      expect(Tok::RBrace, "'}'");
      return c;
    }
    while (true) {
      const Token& t = lx_.peek();
      if (t.kind != Tok::Ident) lx_.fail_here("expected color name");
      c.names.insert(lx_.take().text);
      if (lx_.peek().kind == Tok::Comma) {
        lx_.take();
        continue;
      }
      break;
    }
    expect(Tok::RBrace, "'}'");
    return c;
  }

  // '(' just consumed; decide between an atom and a parenthesized formula.
  FormulaPtr parse_paren(size_t open_pos) {
    const Token& t = lx_.peek();
    if (t.kind == Tok::Ident) {
      bool known_signal = true;
      try {
        signal_from_string(t.text);
      } catch (const Error&) {
        known_signal = false;
      }
      if (known_signal && t.text != "true") {
        Token sig = lx_.take();
        Tok cmp_tok = lx_.peek().kind;
        if (cmp_tok != Tok::Gt && cmp_tok != Tok::Lt)
          lx_.fail_here("expected '>' or '<' in atom");
        lx_.take();
        if (lx_.peek().kind != Tok::Number) lx_.fail_here("expected number");
        double thr = lx_.take().number;
        expect(Tok::RParen, "')'");
        if (lx_.peek().kind != Tok::At)
          lx_.fail_here("expected '@' color annotation after atom");
        lx_.take();
        ColorSet c = parse_colorset();
        return f_atom(signal_from_string(sig.text),
                      cmp_tok == Tok::Gt ? Cmp::Gt : Cmp::Lt, thr, std::move(c));
      }
    }
    FormulaPtr inner = parse_expr(0);
    expect(Tok::RParen, "')'");
    if (lx_.peek().kind == Tok::At) {
      size_t at_pos = lx_.peek().pos;
      lx_.take();
      ColorSet c = parse_colorset();
      if (inner->annot) lx_.fail("duplicate color annotation", at_pos);
      inner = annotate(std::move(inner), std::move(c));
    }
    (void)open_pos;
    return inner;
  }

  FormulaPtr parse_prefix() {
    const Token& t = lx_.peek();
    switch (t.kind) {
      case Tok::Bang: {
        lx_.take();
        return f_not(parse_expr(kNot));
      }
      case Tok::LParen: {
        Token open = lx_.take();
        return parse_paren(open.pos);
      }
      case Tok::Ident: {
        if (t.text == "true") {
          lx_.take();
          return f_true();
        }
        if (t.text == "F" || t.text == "G") {
          Token op = lx_.take();
          Interval i = parse_interval();
          FormulaPtr arg = parse_expr(kTemporal + 1);
          return op.text == "F" ? f_eventually(i, std::move(arg))
                                : f_globally(i, std::move(arg));
        }
        if (t.text == "E" || t.text == "SW" || t.text == "EW") {
          Token op = lx_.take();
          Interval i = parse_interval();
          std::optional<Metric> m = parse_metric_tag();
          FormulaPtr arg = parse_expr(kSpatial + 1);
          if (op.text == "E") return f_escape(i, m, std::move(arg));
          if (op.text == "SW") return f_somewhere(i, m, std::move(arg));
          return f_everywhere(i, m, std::move(arg));
        }
        lx_.fail_here("unexpected identifier '" + t.text + "'");
      }
      default:
        lx_.fail_here("expected formula");
    }
  }

  FormulaPtr parse_expr(int min_bp) {
    FormulaPtr lhs = parse_prefix();
    while (true) {
      const Token& t = lx_.peek();
      int bp = 0;
      enum class Op { And, Or, Until, Reach, Surround } op;
      if (t.kind == Tok::Amp) {
        bp = kAnd;
        op = Op::And;
      } else if (t.kind == Tok::Pipe) {
        bp = kOr;
        op = Op::Or;
      } else if (t.kind == Tok::Ident && t.text == "U") {
        bp = kTemporal;
        op = Op::Until;
      } else if (t.kind == Tok::Ident && t.text == "R") {
        bp = kSpatial;
        op = Op::Reach;
      } else if (t.kind == Tok::Ident && t.text == "Surr") {
        bp = kSpatial;
        op = Op::Surround;
      } else {
        break;
      }
      if (bp < min_bp) break;
      lx_.take();
      switch (op) {
        case Op::And:
          lhs = f_and(std::move(lhs), parse_expr(bp + 1));
          break;
        case Op::Or:
          lhs = f_or(std::move(lhs), parse_expr(bp + 1));
          break;
        case Op::Until: {
          Interval i = parse_interval();
          lhs = f_until(i, std::move(lhs), parse_expr(bp + 1));
          break;
        }
        case Op::Reach:
        case Op::Surround: {
          Interval i = parse_interval();
          std::optional<Metric> m = parse_metric_tag();
          FormulaPtr rhs = parse_expr(bp + 1);
          lhs = op == Op::Reach ? f_reach(i, m, std::move(lhs), std::move(rhs))
                                : f_surround(i, m, std::move(lhs), std::move(rhs));
          break;
        }
      }
    }
    return lhs;
  }
};

}  // namespace

FormulaPtr parse(const std::string& text) { return Parser(text).run(); }

FormulaPtr load_formula(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace strelgen
