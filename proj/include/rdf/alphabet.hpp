#ifndef RDF_ALPHABET_HPP_
#define RDF_ALPHABET_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rdf/ratfunc.hpp"

namespace rdf {

/// Interned symbol: equal iff the indices (and hence names) are equal.
struct Symbol {
  int index = 0;
  friend bool operator==(Symbol a, Symbol b) { return a.index == b.index; }
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed list of symbol names for one computation session. Symbol i of the
/// alphabet is exponent slot i of every polynomial built in that session.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s.index)); }
  bool contains(std::string_view name) const noexcept;
  Symbol symbol(std::string_view name) const;
  RatFunc var(std::string_view name) const { return RatFunc::variable(symbol(name).index); }

  /// Canonical text: terms in decreasing graded-lex order, e.g.
  /// "(M^2 - k)/(2*k + 4)".
  std::string format(const Poly& p) const;
  std::string format(const RatFunc& f) const;

  /// Parses the expression language of format(): integers, symbols, + - * /,
  /// integer powers and parentheses.
  RatFunc parse(std::string_view text) const;

 private:
  std::vector<std::string> names_;
};

/// Stream output with generic names x0, x1, ...
std::ostream& operator<<(std::ostream& os, const Poly& p);
std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace rdf

#endif  // RDF_ALPHABET_HPP_
