#ifndef REACHMOD_TESTS_SUPPORT_HPP
#define REACHMOD_TESTS_SUPPORT_HPP

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "reachmod/field_oracle.hpp"
#include "reachmod/geocontrol.hpp"
#include "reachmod/system_file.hpp"

namespace support {

using namespace reachmod;

inline Polynomial P(const RingPtr& ring, const std::string& text) {
  return parse_polynomial(text, ring);
}

inline ModuleElement vec(const RingPtr& ring, std::initializer_list<const char*> entries) {
  std::vector<Polynomial> out;
  for (const char* e : entries) out.push_back(parse_polynomial(e, ring));
  return ModuleElement(ring, std::move(out));
}

/// Row-major entries.
inline PolyMatrix mat(const RingPtr& ring, std::size_t rows, std::size_t cols,
                      std::initializer_list<const char*> entries) {
  std::vector<Polynomial> out;
  for (const char* e : entries) out.push_back(parse_polynomial(e, ring));
  return PolyMatrix(ring, rows, cols, std::move(out));
}

inline SubmodulePresentation span(const RingPtr& ring, std::size_t rank,
                                  std::vector<ModuleElement> gens) {
  return SubmodulePresentation(ring, rank, std::move(gens));
}

inline std::string fixture(const std::string& name) {
  return std::string(REACHMOD_FIXTURE_DIR) + "/" + name;
}

/// Seeded generator of small random instances.
class Random {
 public:
  explicit Random(std::uint32_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  /// Entry of total degree <= degree in the ring variables (y excluded),
  /// coefficients in [-bound, bound], zero with probability `sparsity`.
  Polynomial entry(const RingPtr& ring, unsigned degree, int bound, double sparsity) {
    std::vector<Term> terms;
    if (chance(sparsity)) return Polynomial(ring);
    const std::size_t l = ring->num_variables();
    std::vector<Monomial> monos{Monomial()};
    if (degree >= 1)
      for (std::size_t s = 1; s <= l; ++s) monos.push_back(Monomial::variable(s));
    if (degree >= 2)
      for (std::size_t s = 1; s <= l; ++s)
        for (std::size_t r = s; r <= l; ++r)
          monos.push_back(Monomial::variable(s) * Monomial::variable(r));
    for (const auto& mono : monos) {
      if (!chance(0.5)) continue;
      const int c = integer(-bound, bound);
      if (c != 0) terms.push_back({mono, Rational(c)});
    }
    return Polynomial(ring, std::move(terms));
  }

  PolyMatrix matrix(const RingPtr& ring, std::size_t rows, std::size_t cols, unsigned degree,
                    int bound, double sparsity) {
    std::vector<Polynomial> entries;
    for (std::size_t i = 0; i < rows * cols; ++i)
      entries.push_back(entry(ring, degree, bound, sparsity));
    return PolyMatrix(ring, rows, cols, std::move(entries));
  }

  /// Field-case entries: integers in [-bound, bound], mostly nonzero.
  PolyMatrix constant_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols, int bound,
                             double sparsity) {
    std::vector<Polynomial> entries;
    for (std::size_t i = 0; i < rows * cols; ++i)
      entries.push_back(chance(sparsity) ? Polynomial(ring)
                                         : Polynomial::constant(ring, Rational(integer(-bound, bound))));
    return PolyMatrix(ring, rows, cols, std::move(entries));
  }

  /// Polynomial in all slots including y, total degree <= degree.
  Polynomial poly(const RingPtr& ring, unsigned degree, std::size_t max_terms, int bound) {
    std::vector<Term> terms;
    const int count = integer(1, static_cast<int>(max_terms));
    for (int i = 0; i < count; ++i) {
      Monomial m;
      unsigned budget = static_cast<unsigned>(integer(0, static_cast<int>(degree)));
      for (std::size_t s = 0; s <= ring->num_variables() && budget > 0; ++s) {
        const auto e = static_cast<std::uint16_t>(integer(0, static_cast<int>(budget)));
        if (e == 0) continue;
        m = m * Monomial::variable(s, e);
        budget -= e;
      }
      const int c = integer(-bound, bound);
      if (c != 0) terms.push_back({m, Rational(c)});
    }
    return Polynomial(ring, std::move(terms));
  }

  ModuleElement element(const RingPtr& ring, std::size_t rank, unsigned degree,
                        std::size_t max_terms = 3, int bound = 3) {
    std::vector<Polynomial> entries;
    for (std::size_t i = 0; i < rank; ++i)
      entries.push_back(chance(0.25) ? Polynomial(ring) : poly(ring, degree, max_terms, bound));
    return ModuleElement(ring, std::move(entries));
  }

  /// Same submodule, new generators: a random unimodular transform
  /// (lower times upper unitriangular, entries of degree <= 1), then a
  /// shuffle and nonzero rescaling.
  std::vector<ModuleElement> re_present(const RingPtr& ring, std::vector<ModuleElement> gens) {
    const std::size_t k = gens.size();
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j || (pass == 0 ? j > i : j < i)) continue;
          if (chance(0.4)) continue;
          gens[i] = gens[i] + gens[j].scaled(poly(ring, 1, 2, 2));
        }
    std::shuffle(gens.begin(), gens.end(), rng_);
    for (auto& g : gens) {
      int c = 0;
      while (c == 0) c = integer(-3, 3);
      g = g.scaled(Rational(c));
    }
    return gens;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace support

#endif  // REACHMOD_TESTS_SUPPORT_HPP
