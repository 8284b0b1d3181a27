#include "charplab/parse.hpp"

#include <cctype>

#include "charplab/errors.hpp"
#include "charplab/limits.hpp"

namespace charplab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring)
      : text_(text), ring_(ring), field_(*ring->field()) {}

  Polynomial run() {
    skip();
    if (at_end()) fail("empty polynomial");
    std::vector<Term> terms;
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    for (;;) {
      Term t = term();
      if (negate) t.coeff = field_.neg(t.coeff);
      terms.push_back(t);
      skip();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected '") + c + "'");
      negate = c == '-';
      ++pos_;
    }
    return Polynomial::from_terms(ring_, std::move(terms));
  }

 private:
  Term term() {
    Term t{Monomial(ring_->num_variables()), field_.one()};
    for (;;) {
      atom(t);
      skip();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  void atom(Term& t) {
    skip();
    if (at_end()) fail("expected a factor");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // Reduce digit by digit so arbitrarily long integers are fine.
      const std::uint64_t p = field_.characteristic();
      std::uint64_t value = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        value = (value * 10 + static_cast<std::uint64_t>(peek() - '0')) % p;
        ++pos_;
      }
      t.coeff = field_.mul(t.coeff, static_cast<GaloisField::Element>(value));
      return;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) {
      fail(std::string("unexpected '") + c + "'");
    }
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    const std::uint64_t exponent = optional_exponent();
    if (name == "g") {
      if (field_.degree() == 1) {
        fail_at("'g' used over a prime field", start);
      }
      t.coeff = field_.mul(t.coeff, field_.pow(field_.generator(), exponent));
      return;
    }
    auto idx = ring_->index_of(name);
    if (!idx) fail_at("unknown identifier '" + std::string(name) + "'", start);
    t.monomial.set(*idx, std::uint64_t{t.monomial[*idx]} + exponent);
  }

  std::uint64_t optional_exponent() {
    skip();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("malformed exponent");
    }
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > kDegreeCeiling) fail("exponent too large");
      ++pos_;
    }
    return value;
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  std::string_view text_;
  const RingPtr& ring_;
  const GaloisField& field_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).run();
}

}  // namespace charplab
