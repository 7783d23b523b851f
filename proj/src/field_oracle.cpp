#include "reachmod/field_oracle.hpp"

#include <stdexcept>

#include "reachmod/errors.hpp"

namespace reachmod::oracle {

namespace {

struct Field {
  std::uint32_t p;

  Rational reduce(const Rational& x) const {
    if (p == 0) return x;
    mpz_class mod(p);
    mpz_class num = x.get_num() % mod, den = x.get_den() % mod;
    if (den == 0) throw std::domain_error("denominator vanishes modulo p");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class r = (num * inv) % mod;
    if (r < 0) r += mod;
    return Rational(r);
  }
  Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
  Rational inv(const Rational& a) const { return reduce(1 / a); }
};

// Gauss-Jordan in place; returns pivot columns. Rows end up in RREF with
// zero rows removed.
std::vector<std::size_t> rref(std::vector<Vector>& rows, std::size_t cols, const Field& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pick = r;
    while (pick < rows.size() && rows[pick][c] == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[r], rows[pick]);
    Rational inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational factor = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(factor, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Basis of {c : row . c = 0 for every row}.
std::vector<Vector> nullspace(std::vector<Vector> rows, std::size_t cols, const Field& f) {
  std::vector<std::size_t> pivots = rref(rows, cols, f);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Vector> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.reduce(-rows[i][free]);
    out.push_back(std::move(v));
  }
  return out;
}

Vector apply(const DenseMatrix& a, const Vector& v, const Field& f) {
  Vector out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = f.add(out[i], f.mul(a[i][j], v[j]));
  return out;
}

std::vector<Vector> annihilator(const Subspace& v) {
  return nullspace(v.basis(), v.ambient(), Field{v.characteristic()});
}

void require_compatible(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || a.characteristic() != b.characteristic())
    throw DimensionError("subspaces of different spaces");
}

Subspace column_space(const DenseMatrix& b, std::size_t n, std::uint32_t p) {
  std::vector<Vector> cols;
  const std::size_t m = b.empty() ? 0 : b.front().size();
  for (std::size_t j = 0; j < m; ++j) {
    Vector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = b[i][j];
    cols.push_back(std::move(c));
  }
  return Subspace(n, p, cols);
}

}  // namespace

Subspace::Subspace(std::size_t ambient, std::uint32_t characteristic,
                   const std::vector<Vector>& vectors)
    : ambient_(ambient), characteristic_(characteristic) {
  Field f{characteristic};
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw DimensionError("vector length does not match ambient space");
    Vector r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(f.reduce(x));
    basis_.push_back(std::move(r));
  }
  rref(basis_, ambient_, f);
}

Subspace Subspace::zero(std::size_t ambient, std::uint32_t characteristic) {
  return Subspace(ambient, characteristic, {});
}

Subspace Subspace::full(std::size_t ambient, std::uint32_t characteristic) {
  std::vector<Vector> units;
  for (std::size_t i = 0; i < ambient; ++i) {
    Vector e(ambient, Rational(0));
    e[i] = 1;
    units.push_back(std::move(e));
  }
  return Subspace(ambient, characteristic, units);
}

bool Subspace::contains(const Vector& v) const {
  std::vector<Vector> rows = basis_;
  rows.push_back(v);
  return Subspace(ambient_, characteristic_, rows).dim() == dim();
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  std::vector<Vector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace(a.ambient(), a.characteristic(), rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_compatible(a, b);
  std::vector<Vector> constraints = annihilator(a);
  auto more = annihilator(b);
  constraints.insert(constraints.end(), more.begin(), more.end());
  return Subspace(a.ambient(), a.characteristic(),
                  nullspace(constraints, a.ambient(), Field{a.characteristic()}));
}

Subspace image(const DenseMatrix& a, const Subspace& u) {
  Field f{u.characteristic()};
  std::vector<Vector> rows;
  for (const auto& v : u.basis()) rows.push_back(apply(a, v, f));
  return Subspace(a.size(), u.characteristic(), rows);
}

Subspace preimage(const DenseMatrix& a, const Subspace& v) {
  Field f{v.characteristic()};
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  std::vector<Vector> constraints;
  for (const auto& c : annihilator(v)) {
    Vector row(cols, Rational(0));
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < a.size(); ++i) row[j] = f.add(row[j], f.mul(c[i], a[i][j]));
    constraints.push_back(std::move(row));
  }
  return Subspace(cols, v.characteristic(), nullspace(constraints, cols, f));
}

FieldSystem to_field_system(const SystemPair& sys) {
  const Ring& ring = *sys.ring();
  if (!ring.is_field_case())
    throw std::invalid_argument("field oracle requires a ring without variables, got " +
                                ring.describe());
  auto convert = [](const PolyMatrix& mat) {
    DenseMatrix out(mat.rows(), Vector(mat.cols(), Rational(0)));
    for (std::size_t i = 0; i < mat.rows(); ++i)
      for (std::size_t j = 0; j < mat.cols(); ++j) {
        const Polynomial& p = mat.at(i, j);
        if (!p.is_constant()) throw std::invalid_argument("non-constant matrix entry");
        if (!p.is_zero()) out[i][j] = p.leading_term().coefficient;
      }
    return out;
  };
  return {sys.n(), sys.m(), ring.characteristic(), convert(sys.a()), convert(sys.b())};
}

Subspace to_subspace(const StateSubmodule& u) {
  const Ring& ring = *u.ring();
  if (!ring.is_field_case())
    throw std::invalid_argument("field oracle requires a ring without variables");
  std::vector<Vector> rows;
  for (const auto& g : u.generators()) {
    Vector v(u.ambient(), Rational(0));
    for (std::size_t i = 0; i < u.ambient(); ++i) {
      if (!g[i].is_constant()) throw std::invalid_argument("non-constant vector entry");
      if (!g[i].is_zero()) v[i] = g[i].leading_term().coefficient;
    }
    rows.push_back(std::move(v));
  }
  return Subspace(u.ambient(), ring.characteristic(), rows);
}

ChainOutcome vstar_isa(const FieldSystem& sys, const Subspace& m) {
  const Subspace im_b = column_space(sys.b, sys.n, sys.characteristic);
  Subspace current = m;
  for (std::size_t k = 0;; ++k) {
    Subspace next = intersect(m, preimage(sys.a, sum(current, im_b)));
    if (next == current) return {std::move(current), k};
    if (k > sys.n) throw VerificationError("V* chain exceeded n steps");
    current = std::move(next);
  }
}

ChainOutcome rstar_classical(const FieldSystem& sys, const Subspace& m) {
  const Subspace im_b = column_space(sys.b, sys.n, sys.characteristic);
  const Subspace vstar = vstar_isa(sys, m).space;
  Subspace current = Subspace::zero(sys.n, sys.characteristic);
  for (std::size_t k = 0;; ++k) {
    Subspace next = intersect(vstar, sum(image(sys.a, current), im_b));
    if (next == current) return {std::move(current), k};
    if (k > sys.n) throw VerificationError("R* chain exceeded n steps");
    current = std::move(next);
  }
}

ChainOutcome vstar_isa(const SystemPair& sys, const StateSubmodule& m) {
  return vstar_isa(to_field_system(sys), to_subspace(m));
}

ChainOutcome rstar_classical(const SystemPair& sys, const StateSubmodule& m) {
  return rstar_classical(to_field_system(sys), to_subspace(m));
}

}  // namespace reachmod::oracle
