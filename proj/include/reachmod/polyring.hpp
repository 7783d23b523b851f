#ifndef REACHMOD_POLYRING_HPP
#define REACHMOD_POLYRING_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace reachmod {

/// Exact rational number. gmpxx keeps every result canonical:
/// gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Rational = mpq_class;

enum class MonomialOrder { GRevLex, Lex };

std::string_view to_string(MonomialOrder order);
std::optional<MonomialOrder> parse_monomial_order(std::string_view name);

/// Name reserved for the pencil variable.
inline constexpr std::string_view kPencilVariable = "y";

/// Maximum number of variables including y.
inline constexpr std::size_t kMaxSlots = 16;

/// Exponent vector. Slots are stored in precedence order: slot 0 holds the
/// pencil variable y, slot i (i >= 1) holds ring variable t_i. Unused slots
/// stay zero, so comparisons never need the ring.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t slot, std::uint16_t exponent = 1);

  std::uint16_t operator[](std::size_t slot) const { return exp_[slot]; }
  std::uint32_t degree() const { return degree_; }
  std::uint16_t y_degree() const { return exp_[0]; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  Monomial with_y_degree(std::uint16_t e) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exp_ == b.exp_;
  }

 private:
  std::array<std::uint16_t, kMaxSlots> exp_{};
  std::uint32_t degree_ = 0;
};

/// Three-way comparison: > 0 when a is greater than b.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

/// Coefficient domain and variables of Q[t_1..t_l, y] (or F_p[...]).
/// Immutable once built; shared between all values of the ring.
class Ring {
 public:
  Ring(std::vector<std::string> variables, std::uint32_t characteristic = 0,
       MonomialOrder order = MonomialOrder::GRevLex);

  static std::shared_ptr<const Ring> create(
      std::vector<std::string> variables, std::uint32_t characteristic = 0,
      MonomialOrder order = MonomialOrder::GRevLex);

  /// l, the number of ring variables besides y.
  std::size_t num_variables() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  /// Name of a monomial slot; slot 0 is y.
  const std::string& slot_name(std::size_t slot) const;
  std::optional<std::size_t> slot_of(std::string_view name) const;

  std::uint32_t characteristic() const { return characteristic_; }
  bool is_prime_field() const { return characteristic_ != 0; }
  /// l = 0: the base ring R is the coefficient field itself.
  bool is_field_case() const { return variables_.empty(); }
  /// Order used to store and render polynomial terms.
  MonomialOrder order() const { return order_; }

  bool same_as(const Ring& other) const;
  std::string describe() const;

  /// Reduces into the coefficient field. Throws std::domain_error when a
  /// denominator vanishes mod p.
  Rational normalize(const Rational& c) const;
  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  Rational inv(const Rational& a) const;

 private:
  std::vector<std::string> variables_;
  std::vector<std::string> slot_names_;
  std::uint32_t characteristic_;
  MonomialOrder order_;
  mpz_class modulus_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Throws RingMismatch unless both rings agree.
void require_same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial monomial;
  Rational coefficient;
};

/// Sparse polynomial with terms kept strictly descending under the ring's
/// order and no zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);
  /// Accepts unsorted terms with repeats; combines and drops zeros.
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t slot);

  const RingPtr& ring() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_y_free() const;
  /// Largest power of y present; 0 for the zero polynomial.
  unsigned y_degree() const;
  unsigned total_degree() const;
  const Term& leading_term() const { return terms_.front(); }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial combine(const Polynomial& other, bool subtract) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const Rational& c);

/// Grammar: sums and differences of products of powers of numbers,
/// declared variables, y and parenthesised subexpressions. Rational literals
/// are written a/b. Throws ParseError.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

/// Canonical text: terms descending in the ring order, coefficients as
/// reduced fractions, variables t_1..t_l then y inside each term.
std::string to_string(const Polynomial& p);
std::string to_string(const Rational& c);

/// f = sum_k coefficient_k * y^k, listed by descending k, zeros omitted.
std::vector<std::pair<unsigned, Polynomial>> coefficients_in_y(const Polynomial& f);

}  // namespace reachmod

#endif  // REACHMOD_POLYRING_HPP
