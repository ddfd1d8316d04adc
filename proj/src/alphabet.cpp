#include "rdf/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace rdf {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxSymbols) throw std::invalid_argument("alphabet exceeds the symbol limit");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) {
      throw std::invalid_argument("invalid symbol name '" + n + "'");
    }
    if (std::find(names_.begin(), names_.begin() + static_cast<long>(i), n) != names_.begin() + static_cast<long>(i)) {
      throw std::invalid_argument("duplicate symbol '" + n + "'");
    }
  }
}

bool Alphabet::contains(std::string_view name) const noexcept {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Symbol Alphabet::symbol(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown symbol '" + std::string(name) + "'");
  return Symbol{static_cast<int>(it - names_.begin())};
}

std::string Alphabet::format(const Poly& p) const {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    mpz_class mag = abs(t.coeff);
    bool wrote = false;
    const bool constant = t.exps == Exponents{};
    if (mag != 1 || constant) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      if (t.exps[i] == 0) continue;
      if (wrote) out << '*';
      out << (i < names_.size() ? names_[i] : "x" + std::to_string(i));
      if (t.exps[i] > 1) out << '^' << t.exps[i];
      wrote = true;
    }
  }
  return out.str();
}

std::string Alphabet::format(const RatFunc& f) const {
  if (f.den().is_one()) return format(f.num());
  auto wrap = [this](const Poly& p) {
    std::string s = format(p);
    return p.size() > 1 ? "(" + s + ")" : s;
  };
  std::string num = wrap(f.num());
  if (f.num().size() == 1 && f.num().leading().coeff < 0 && !f.num().is_constant()) num = "(" + format(f.num()) + ")";
  // A single-term denominator stays bare only if it is one factor.
  const auto& d = f.den();
  int factors = d.leading().coeff != 1 ? 1 : 0;
  for (auto e : d.leading().exps) factors += e != 0 ? 1 : 0;
  std::string den = d.size() > 1 || factors > 1 ? "(" + format(d) + ")" : format(d);
  return num + "/" + den;
}

namespace {

class Parser {
 public:
  Parser(const Alphabet& alphabet, std::string_view text) : alphabet_(alphabet), text_(text) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (accept('^')) {
      bool negative = accept('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (negative && base.is_zero()) fail("division by zero");
      return base.pow(negative ? -e : e);
    }
    return base;
  }

  RatFunc atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RatFunc(Poly(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view name = text_.substr(start, pos_ - start);
      if (!alphabet_.contains(name)) fail("unknown symbol '" + std::string(name) + "'");
      return alphabet_.var(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const Alphabet& alphabet_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc Alphabet::parse(std::string_view text) const { return Parser(*this, text).parse(); }

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << Alphabet({}).format(p); }
std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << Alphabet({}).format(f); }

}  // namespace rdf
