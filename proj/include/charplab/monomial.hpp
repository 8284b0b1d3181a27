#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace charplab {

inline constexpr std::size_t kMaxVariables = 16;

/// Exponent vector of a monomial in at most kMaxVariables variables.
///
/// Exponents are stored in 32 bits; every constructor and product checks
/// the result against the active degree limit (itself capped below 2^31),
/// so nothing wraps silently. The total degree is cached.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::span<const std::uint64_t> exponents);

  std::size_t num_variables() const noexcept { return nvars_; }
  Exponent operator[](std::size_t i) const noexcept { return exp_[i]; }
  std::uint64_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t i, std::uint64_t value);

  Monomial operator*(const Monomial& o) const;
  /// Requires divides(o, *this).
  Monomial operator/(const Monomial& o) const;
  /// Raises every exponent by `k`; throws LimitError on overflow.
  Monomial scaled(std::uint64_t k) const;

  bool divides(const Monomial& o) const noexcept {
    if (degree_ > o.degree_) return false;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (exp_[i] > o.exp_[i]) return false;
    }
    return true;
  }
  bool coprime(const Monomial& o) const noexcept {
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (exp_[i] != 0 && o.exp_[i] != 0) return false;
    }
    return true;
  }
  Monomial lcm(const Monomial& o) const;

  /// Bitmask of variables with a positive exponent.
  std::uint32_t support() const noexcept;

  bool operator==(const Monomial& o) const noexcept {
    return degree_ == o.degree_ && exp_ == o.exp_;
  }

  std::size_t hash() const noexcept;

 private:
  std::array<Exponent, kMaxVariables> exp_{};
  std::uint64_t degree_ = 0;
  std::uint32_t nvars_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Monomial orders: graded reverse lexicographic, lexicographic, the
/// elimination order block(k) (first k variables against the rest,
/// compared lexicographically between the blocks, grevlex inside each),
/// and the local order (lower total degree first, grevlex among equal
/// degrees). The local order is not a well-order; bases under it are only
/// computed for ideals containing a power of every variable.
class MonomialOrder {
 public:
  enum class Kind { grevlex, lex, block, local };

  constexpr MonomialOrder() = default;
  static constexpr MonomialOrder grevlex() { return {Kind::grevlex, 0}; }
  static constexpr MonomialOrder lex() { return {Kind::lex, 0}; }
  static constexpr MonomialOrder local() { return {Kind::local, 0}; }
  bool is_global() const noexcept { return kind_ != Kind::local; }
  static constexpr MonomialOrder block(std::size_t k) {
    return {Kind::block, k};
  }
  /// Accepts "grevlex", "lex", "local" and "block:<k>".
  static MonomialOrder parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  std::size_t block_size() const noexcept { return block_; }
  std::string name() const;

  /// Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const noexcept;
  bool less(const Monomial& a, const Monomial& b) const noexcept {
    return compare(a, b) < 0;
  }

  bool operator==(const MonomialOrder&) const = default;

 private:
  constexpr MonomialOrder(Kind kind, std::size_t block)
      : kind_(kind), block_(block) {}

  Kind kind_ = Kind::grevlex;
  std::size_t block_ = 0;
};

}  // namespace charplab
