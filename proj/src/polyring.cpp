#include "reachmod/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reachmod/errors.hpp"

namespace reachmod {

std::string_view to_string(MonomialOrder order) {
  return order == MonomialOrder::GRevLex ? "grevlex" : "lex";
}

std::optional<MonomialOrder> parse_monomial_order(std::string_view name) {
  if (name == "grevlex") return MonomialOrder::GRevLex;
  if (name == "lex") return MonomialOrder::Lex;
  return std::nullopt;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t slot, std::uint16_t exponent) {
  Monomial m;
  m.exp_[slot] = exponent;
  m.degree_ = exponent;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxSlots; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxSlots; ++i)
    if (exp_[i] != 0 && other.exp_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSlots; ++i) {
    std::uint32_t e = std::uint32_t{exp_[i]} + other.exp_[i];
    if (e > std::numeric_limits<std::uint16_t>::max())
      throw std::overflow_error("monomial exponent overflow");
    r.exp_[i] = static_cast<std::uint16_t>(e);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSlots; ++i)
    r.exp_[i] = static_cast<std::uint16_t>(exp_[i] - divisor.exp_[i]);
  r.degree_ = degree_ - divisor.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSlots; ++i) {
    r.exp_[i] = std::max(exp_[i], other.exp_[i]);
    r.degree_ += r.exp_[i];
  }
  return r;
}

Monomial Monomial::with_y_degree(std::uint16_t e) const {
  Monomial r = *this;
  r.degree_ = r.degree_ - r.exp_[0] + e;
  r.exp_[0] = e;
  return r;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (order == MonomialOrder::GRevLex) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    for (std::size_t i = kMaxSlots; i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
  for (std::size_t i = 0; i < kMaxSlots; ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

// -------------------------------------------------------------------- Ring

Ring::Ring(std::vector<std::string> variables, std::uint32_t characteristic,
           MonomialOrder order)
    : variables_(std::move(variables)),
      characteristic_(characteristic),
      order_(order),
      modulus_(characteristic) {
  if (variables_.size() + 1 > kMaxSlots)
    throw DimensionError("at most " + std::to_string(kMaxSlots - 1) +
                         " ring variables are supported");
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw ParseError("invalid variable name '" + v + "'");
    for (char c : v)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw ParseError("invalid variable name '" + v + "'");
    if (v == kPencilVariable)
      throw ParseError("ring variable may not be named '" +
                       std::string(kPencilVariable) + "' (pencil variable)");
    if (!seen.insert(v).second) throw ParseError("duplicate variable '" + v + "'");
  }
  if (characteristic_ == 1 || characteristic_ >= (1u << 31))
    throw std::invalid_argument("characteristic must be 0 or a prime below 2^31");
  if (characteristic_ != 0 && mpz_probab_prime_p(modulus_.get_mpz_t(), 30) == 0)
    throw std::invalid_argument("characteristic " + std::to_string(characteristic_) +
                                " is not prime");
  slot_names_.emplace_back(kPencilVariable);
  slot_names_.insert(slot_names_.end(), variables_.begin(), variables_.end());
}

std::shared_ptr<const Ring> Ring::create(std::vector<std::string> variables,
                                         std::uint32_t characteristic,
                                         MonomialOrder order) {
  return std::make_shared<const Ring>(std::move(variables), characteristic, order);
}

const std::string& Ring::slot_name(std::size_t slot) const { return slot_names_.at(slot); }

std::optional<std::size_t> Ring::slot_of(std::string_view name) const {
  for (std::size_t i = 0; i < slot_names_.size(); ++i)
    if (slot_names_[i] == name) return i;
  return std::nullopt;
}

bool Ring::same_as(const Ring& other) const {
  return this == &other ||
         (variables_ == other.variables_ && characteristic_ == other.characteristic_ &&
          order_ == other.order_);
}

std::string Ring::describe() const {
  std::string s = characteristic_ == 0 ? "QQ" : "GF(" + std::to_string(characteristic_) + ")";
  s += "[";
  for (const auto& v : variables_) s += v + ",";
  s += std::string(kPencilVariable) + "]";
  return s;
}

Rational Ring::normalize(const Rational& c) const {
  // mpq_class(a, b) skips canonicalization, so do it here
  Rational q = c;
  q.canonicalize();
  if (characteristic_ == 0) return q;
  mpz_class num = q.get_num() % modulus_;
  mpz_class den = q.get_den() % modulus_;
  if (den == 0)
    throw std::domain_error("denominator vanishes modulo " + std::to_string(characteristic_));
  mpz_class den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t());
  mpz_class r = (num * den_inv) % modulus_;
  if (r < 0) r += modulus_;
  return Rational(r);
}

Rational Ring::add(const Rational& a, const Rational& b) const {
  if (characteristic_ == 0) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= modulus_) r -= modulus_;
  return Rational(r);
}

Rational Ring::sub(const Rational& a, const Rational& b) const {
  if (characteristic_ == 0) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += modulus_;
  return Rational(r);
}

Rational Ring::mul(const Rational& a, const Rational& b) const {
  if (characteristic_ == 0) return a * b;
  return Rational(mpz_class(a.get_num() * b.get_num()) % modulus_);
}

Rational Ring::neg(const Rational& a) const {
  if (characteristic_ == 0) return -a;
  if (a == 0) return a;
  return Rational(modulus_ - a.get_num());
}

Rational Ring::inv(const Rational& a) const {
  if (a == 0) throw std::domain_error("division by zero");
  if (characteristic_ == 0) return 1 / a;
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), modulus_.get_mpz_t());
  return Rational(r);
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same_as(*b))
    throw RingMismatch("operands belong to different rings" +
                       (a && b ? " (" + a->describe() + " vs " + b->describe() + ")"
                               : std::string()));
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const MonomialOrder order = ring_->order();
  for (auto& t : terms) t.coefficient = ring_->normalize(t.coefficient);
  std::sort(terms.begin(), terms.end(), [order](const Term& a, const Term& b) {
    return compare(a.monomial, b.monomial, order) > 0;
  });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coefficient = ring_->add(terms_.back().coefficient, t.coefficient);
      if (terms_.back().coefficient == 0) terms_.pop_back();
    } else if (t.coefficient != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  return monomial(std::move(ring), Monomial{}, c);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ring));
  Rational n = p.ring_->normalize(c);
  if (n != 0) p.terms_.push_back({m, std::move(n)});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t slot) {
  if (slot > ring->num_variables()) throw DimensionError("variable slot out of range");
  return monomial(std::move(ring), Monomial::variable(slot), 1);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

bool Polynomial::is_y_free() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.monomial.y_degree() == 0; });
}

unsigned Polynomial::y_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.monomial.y_degree());
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.monomial.degree());
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.monomial, ring_->neg(t.coefficient)});
  return r;
}

Polynomial Polynomial::combine(const Polynomial& other, bool subtract) const {
  require_same_ring(ring_, other.ring_);
  const MonomialOrder order = ring_->order();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == other.terms_.size()) c = 1;
    else c = compare(terms_[i].monomial, other.terms_[j].monomial, order);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      const Term& t = other.terms_[j++];
      r.terms_.push_back({t.monomial, subtract ? ring_->neg(t.coefficient) : t.coefficient});
    } else {
      Rational s = subtract ? ring_->sub(terms_[i].coefficient, other.terms_[j].coefficient)
                            : ring_->add(terms_[i].coefficient, other.terms_[j].coefficient);
      if (s != 0) r.terms_.push_back({terms_[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& other) const { return combine(other, false); }
Polynomial Polynomial::operator-(const Polynomial& other) const { return combine(other, true); }

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  *this = combine(other, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  *this = combine(other, true);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  require_same_ring(ring_, other.ring_);
  if (is_zero() || other.is_zero()) return Polynomial(ring_);
  std::vector<Term> products;
  products.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_)
      products.push_back({a.monomial * b.monomial, ring_->mul(a.coefficient, b.coefficient)});
  return Polynomial(ring_, std::move(products));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Rational n = ring_->normalize(c);
  if (n == 0) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.monomial, ring_->mul(t.coefficient, n)});
  return r;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  Rational n = ring_->normalize(c);
  if (n == 0) return Polynomial(ring_);
  // Multiplication by a monomial preserves the order of terms.
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, ring_->mul(t.coefficient, n)});
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!a.ring_->same_as(*b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) ||
        a.terms_[i].coefficient != b.terms_[i].coefficient)
      return false;
  return true;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }
Polynomial poly_scale(const Polynomial& a, const Rational& c) { return a.scaled(c); }

std::vector<std::pair<unsigned, Polynomial>> coefficients_in_y(const Polynomial& f) {
  std::vector<std::vector<Term>> buckets(f.is_zero() ? 0 : f.y_degree() + 1);
  for (const auto& t : f.terms())
    buckets[t.monomial.y_degree()].push_back({t.monomial.with_y_degree(0), t.coefficient});
  std::vector<std::pair<unsigned, Polynomial>> out;
  for (std::size_t k = buckets.size(); k-- > 0;)
    if (!buckets[k].empty())
      out.emplace_back(static_cast<unsigned>(k), Polynomial(f.ring(), std::move(buckets[k])));
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Polynomial p = expression();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in \"" + std::string(text_) + "\"",
                     "column " + std::to_string(pos_ + 1));
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial acc = product();
    for (;;) {
      if (accept('+')) acc += product();
      else if (accept('-')) acc -= product();
      else return acc;
    }
  }

  Polynomial product() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!accept('^')) return base;
    skip_space();
    if (!at_end() && text_[pos_] == '-') fail("negative exponent");
    mpz_class e = integer_literal();
    if (e > 65535) fail("exponent too large");
    Polynomial r = Polynomial::constant(ring_, 1);
    for (unsigned long k = e.get_ui(); k > 0; --k) r = r * base;
    return r;
  }

  mpz_class integer_literal() {
    skip_space();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(integer_literal());
      if (accept('/')) {
        mpz_class den = integer_literal();
        if (den == 0) fail("zero denominator");
        value /= Rational(den);
      }
      try {
        return Polynomial::constant(ring_, value);
      } catch (const std::domain_error& e) {
        fail(e.what());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                           text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto slot = ring_->slot_of(name);
      if (!slot) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(ring_, *slot);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

std::string render_monomial(const Monomial& m, const Ring& ring) {
  std::string s;
  auto append = [&](std::size_t slot) {
    if (m[slot] == 0) return;
    if (!s.empty()) s += '*';
    s += ring.slot_name(slot);
    if (m[slot] > 1) s += "^" + std::to_string(m[slot]);
  };
  for (std::size_t slot = 1; slot <= ring.num_variables(); ++slot) append(slot);
  append(0);
  return s;
}

// Prime-field coefficients print in the symmetric range (-p/2, p/2].
Rational display_value(const Rational& c, const Ring& ring) {
  if (!ring.is_prime_field()) return c;
  mpz_class p(ring.characteristic());
  if (2 * c.get_num() > p) return Rational(c.get_num() - p);
  return c;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

std::string to_string(const Rational& c) { return c.get_str(); }

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = display_value(t.coefficient, *p.ring());
    bool negative = c < 0;
    if (negative) c = -c;
    std::string body;
    if (t.monomial.is_one()) body = to_string(c);
    else if (c == 1) body = render_monomial(t.monomial, *p.ring());
    else body = to_string(c) + "*" + render_monomial(t.monomial, *p.ring());
    if (first) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace reachmod
