#include "newtosc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>

namespace newtosc {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen,
                 RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      out.push_back({Tok::Number, src.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), i});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) +
                         "' at position " + std::to_string(i));
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<std::string>& vars)
      : toks_(std::move(toks)) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!index_.emplace(vars[i], i).second)
        throw ParseError("duplicate variable name '" + vars[i] + "'");
    }
    nvars_ = vars.size();
  }

  Poly run() {
    Poly p = expr();
    expect(Tok::End, "end of input");
    return p;
  }

 private:
  const Token& peek() const { return toks_[cur_]; }
  Token next() { return toks_[cur_++]; }

  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what + " at position " +
                       std::to_string(peek().pos));
    ++cur_;
  }

  bool starts_factor(Tok k) const {
    return k == Tok::Number || k == Tok::Ident || k == Tok::LParen;
  }

  Poly expr() {
    int sign = 1;
    if (peek().kind == Tok::Plus) {
      next();
    } else if (peek().kind == Tok::Minus) {
      next();
      sign = -1;
    }
    Poly acc = term();
    if (sign < 0) acc = -acc;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      Poly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      Tok k = peek().kind;
      if (k == Tok::Star) {
        next();
        acc = acc * factor();
      } else if (k == Tok::Slash) {
        std::size_t pos = next().pos;
        Poly d = factor();
        if (d.total_degree() > 0)
          throw ParseError("division by a non-constant at position " +
                           std::to_string(pos));
        Rat c = d.coeff(Expo(d.nvars(), 0));
        if (c == 0)
          throw ParseError("division by zero at position " +
                           std::to_string(pos));
        acc = acc * Poly::constant(acc.nvars(), Rat(1) / c);
      } else if (starts_factor(k)) {
        // Juxtaposition multiplies: "2x", "x y".
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly b = base();
    if (peek().kind != Tok::Caret) return b;
    std::size_t pos = next().pos;
    if (peek().kind != Tok::Number)
      throw ParseError("exponent must be a nonnegative integer at position " +
                       std::to_string(pos));
    Token t = next();
    unsigned long e;
    try {
      e = std::stoul(t.text);
    } catch (const std::exception&) {
      throw ParseError("exponent out of range at position " +
                       std::to_string(t.pos));
    }
    if (e > 1000000)
      throw ParseError("exponent out of range at position " +
                       std::to_string(t.pos));
    if (b.term_count() > 1 && e > 64)
      throw ParseError("expansion too large at position " +
                       std::to_string(t.pos));
    return pow(b, static_cast<unsigned>(e));
  }

  Poly base() {
    Token t = next();
    switch (t.kind) {
      case Tok::Number:
        return Poly::constant(nvars_, Rat(t.text));
      case Tok::Ident: {
        auto it = index_.find(t.text);
        if (it == index_.end())
          throw ParseError("unknown variable '" + t.text + "' at position " +
                           std::to_string(t.pos));
        return Poly::variable(nvars_, it->second);
      }
      case Tok::LParen: {
        Poly p = expr();
        expect(Tok::RParen, "')'");
        return p;
      }
      case Tok::Minus:
        return -base();
      default:
        throw ParseError("unexpected token '" + t.text + "' at position " +
                         std::to_string(t.pos));
    }
  }

  std::vector<Token> toks_;
  std::map<std::string, std::size_t> index_;
  std::size_t nvars_ = 0;
  std::size_t cur_ = 0;
};

}  // namespace

Poly parse_polynomial(const std::string& src,
                      const std::vector<std::string>& vars) {
  return Parser(tokenize(src), vars).run();
}

ParsedPoly parse_polynomial_auto(const std::string& src) {
  std::vector<Token> toks = tokenize(src);
  std::vector<std::string> seen;
  std::set<std::string> dedup;
  for (const Token& t : toks)
    if (t.kind == Tok::Ident && dedup.insert(t.text).second)
      seen.push_back(t.text);

  static const std::vector<std::string> conventional = {"x", "y", "z", "w"};
  bool all_conventional =
      std::all_of(seen.begin(), seen.end(), [](const std::string& s) {
        return std::find(conventional.begin(), conventional.end(), s) !=
               conventional.end();
      });
  static const std::regex indexed("x([0-9]+)");
  bool all_indexed =
      !seen.empty() &&
      std::all_of(seen.begin(), seen.end(), [](const std::string& s) {
        return std::regex_match(s, indexed);
      });

  std::vector<std::string> vars = seen;
  if (all_conventional) {
    vars.clear();
    for (const std::string& v : conventional)
      if (dedup.count(v)) vars.push_back(v);
  } else if (all_indexed) {
    std::sort(vars.begin(), vars.end(),
              [](const std::string& a, const std::string& b) {
                return std::stol(a.substr(1)) < std::stol(b.substr(1));
              });
  }
  return {Parser(std::move(toks), vars).run(), vars};
}

}  // namespace newtosc
