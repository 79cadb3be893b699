#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "mvml/error.hpp"
#include "mvml/syntax.hpp"

namespace mvml {

namespace {

constexpr unsigned long long kMaxExponent = 1ULL << 20;

enum class Tok { End, Zero, One, Ident, Nat, Not, Box, Dia, Times, And, Or, Imp, Iff, Caret, LParen, RParen };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view t) { return s.substr(i, t.size()) == t; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Nat, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (starts("<->")) {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
    } else if (starts("->")) {
      out.push_back({Tok::Imp, "->", start});
      i += 2;
    } else if (starts("[]")) {
      out.push_back({Tok::Box, "[]", start});
      i += 2;
    } else if (starts("<>")) {
      out.push_back({Tok::Dia, "<>", start});
      i += 2;
    } else if (starts("/\\")) {
      out.push_back({Tok::And, "/\\", start});
      i += 2;
    } else if (starts("\\/")) {
      out.push_back({Tok::Or, "\\/", start});
      i += 2;
    } else if (c == '~') {
      out.push_back({Tok::Not, "~", start});
      ++i;
    } else if (c == '*') {
      out.push_back({Tok::Times, "*", start});
      ++i;
    } else if (c == '^') {
      out.push_back({Tok::Caret, "^", start});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", start});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", start});
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula parse_all() {
    Formula f = iff();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  Formula iff() {
    Formula lhs = imp();
    while (accept(Tok::Iff)) lhs = Formula::equiv(lhs, imp());
    return lhs;
  }

  Formula imp() {
    Formula lhs = disj();
    if (accept(Tok::Imp)) return Formula::implies(lhs, imp());
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (accept(Tok::Or)) lhs = Formula::disj(lhs, conj());
    return lhs;
  }

  Formula conj() {
    Formula lhs = prod();
    while (accept(Tok::And)) lhs = Formula::conj(lhs, prod());
    return lhs;
  }

  Formula prod() {
    Formula lhs = unary();
    while (accept(Tok::Times)) lhs = Formula::times(lhs, unary());
    return lhs;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::neg(unary());
    if (accept(Tok::Box)) return Formula::box(unary());
    if (accept(Tok::Dia)) return Formula::diamond(unary());
    return postfix();
  }

  Formula postfix() {
    Formula f = atom();
    while (peek().kind == Tok::Caret) {
      ++pos_;
      const Token& t = peek();
      if (t.kind != Tok::Nat) throw SyntaxError("expected exponent after '^'", t.pos);
      unsigned long long n = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
      if (ec != std::errc() || n > kMaxExponent)
        throw SyntaxError("exponent too large", t.pos);
      if (n == 0) throw SyntaxError("exponent must be at least 1", t.pos);
      ++pos_;
      f = Formula::power(f, n);
    }
    return f;
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Nat:
        if (t.text == "0") {
          ++pos_;
          return Formula::zero();
        }
        if (t.text == "1") {
          ++pos_;
          return Formula::one();
        }
        throw SyntaxError("only the constants 0 and 1 are allowed", t.pos);
      case Tok::Ident:
        ++pos_;
        return Formula::var(t.text);
      case Tok::LParen: {
        ++pos_;
        Formula f = iff();
        if (!accept(Tok::RParen)) throw SyntaxError("expected ')'", peek().pos);
        return f;
      }
      case Tok::End:
        throw SyntaxError("unexpected end of input", t.pos);
      default:
        throw SyntaxError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void render_into(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Zero:
      out += '0';
      return;
    case Op::One:
      out += '1';
      return;
    case Op::Var:
      out += f.name();
      return;
    case Op::Box:
    case Op::Diamond:
      out += f.op() == Op::Box ? "([] " : "(<> ";
      render_into(f.body(), out);
      out += ')';
      return;
    default:
      break;
  }
  out += '(';
  render_into(f.lhs(), out);
  switch (f.op()) {
    case Op::And:
      out += " /\\ ";
      break;
    case Op::Or:
      out += " \\/ ";
      break;
    case Op::Times:
      out += " * ";
      break;
    default:
      out += " -> ";
      break;
  }
  render_into(f.rhs(), out);
  out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

FormulaSet parse_list(std::string_view text) {
  FormulaSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    bool blank = true;
    for (char c : item) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) {
      try {
        out.insert(parse(item));
      } catch (const SyntaxError& e) {
        throw SyntaxError(e.detail(), start + e.position());
      }
    }
    start = end + 1;
  }
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace mvml
