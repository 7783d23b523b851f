#include "reachmod/freemod.hpp"

#include <algorithm>

#include "reachmod/errors.hpp"

namespace reachmod {

namespace {

void require_rank(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": rank " + std::to_string(a) + " vs " +
                         std::to_string(b));
}

}  // namespace

// ----------------------------------------------------------- ModuleElement

ModuleElement::ModuleElement(RingPtr ring, std::size_t rank)
    : ring_(std::move(ring)), entries_(rank, Polynomial(ring_)) {}

ModuleElement::ModuleElement(RingPtr ring, std::vector<Polynomial> entries)
    : ring_(std::move(ring)), entries_(std::move(entries)) {
  for (const auto& e : entries_) require_same_ring(ring_, e.ring());
}

ModuleElement ModuleElement::unit(RingPtr ring, std::size_t rank, std::size_t index) {
  ModuleElement v(ring, rank);
  v.entries_.at(index) = Polynomial::constant(ring, 1);
  return v;
}

bool ModuleElement::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

bool ModuleElement::is_y_free() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Polynomial& p) { return p.is_y_free(); });
}

unsigned ModuleElement::y_degree() const {
  unsigned d = 0;
  for (const auto& e : entries_) d = std::max(d, e.y_degree());
  return d;
}

ModuleElement ModuleElement::slice(std::size_t from, std::size_t count) const {
  if (from + count > rank()) throw DimensionError("slice out of range");
  return ModuleElement(ring_, std::vector<Polynomial>(entries_.begin() + from,
                                                      entries_.begin() + from + count));
}

ModuleElement ModuleElement::concat(const ModuleElement& tail) const {
  require_same_ring(ring_, tail.ring_);
  std::vector<Polynomial> e = entries_;
  e.insert(e.end(), tail.entries_.begin(), tail.entries_.end());
  return ModuleElement(ring_, std::move(e));
}

ModuleElement ModuleElement::operator+(const ModuleElement& other) const {
  require_rank(rank(), other.rank(), "vector sum");
  std::vector<Polynomial> e;
  e.reserve(rank());
  for (std::size_t i = 0; i < rank(); ++i) e.push_back(entries_[i] + other.entries_[i]);
  return ModuleElement(ring_, std::move(e));
}

ModuleElement ModuleElement::operator-(const ModuleElement& other) const {
  require_rank(rank(), other.rank(), "vector difference");
  std::vector<Polynomial> e;
  e.reserve(rank());
  for (std::size_t i = 0; i < rank(); ++i) e.push_back(entries_[i] - other.entries_[i]);
  return ModuleElement(ring_, std::move(e));
}

ModuleElement ModuleElement::operator-() const {
  std::vector<Polynomial> e;
  e.reserve(rank());
  for (const auto& p : entries_) e.push_back(-p);
  return ModuleElement(ring_, std::move(e));
}

ModuleElement ModuleElement::scaled(const Polynomial& c) const {
  std::vector<Polynomial> e;
  e.reserve(rank());
  for (const auto& p : entries_) e.push_back(p * c);
  return ModuleElement(ring_, std::move(e));
}

ModuleElement ModuleElement::scaled(const Rational& c) const {
  std::vector<Polynomial> e;
  e.reserve(rank());
  for (const auto& p : entries_) e.push_back(p.scaled(c));
  return ModuleElement(ring_, std::move(e));
}

bool operator==(const ModuleElement& a, const ModuleElement& b) {
  return a.rank() == b.rank() && a.entries_ == b.entries_;
}

std::string to_string(const ModuleElement& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

// -------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(ring_)) {}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols,
                       std::vector<Polynomial> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw DimensionError("matrix entry count mismatch");
  for (const auto& e : entries_) require_same_ring(ring_, e.ring());
}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::from_columns(RingPtr ring, std::size_t rows,
                                    const std::vector<ModuleElement>& columns) {
  PolyMatrix m(ring, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require_rank(columns[j].rank(), rows, "matrix column");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = columns[j][i];
  }
  return m;
}

ModuleElement PolyMatrix::column(std::size_t j) const {
  std::vector<Polynomial> e;
  e.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) e.push_back(at(i, j));
  return ModuleElement(ring_, std::move(e));
}

std::vector<ModuleElement> PolyMatrix::columns() const {
  std::vector<ModuleElement> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

bool PolyMatrix::is_y_free() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Polynomial& p) { return p.is_y_free(); });
}

ModuleElement PolyMatrix::operator*(const ModuleElement& v) const {
  require_same_ring(ring_, v.ring());
  require_rank(cols_, v.rank(), "matrix-vector product");
  std::vector<Polynomial> out(rows_, Polynomial(ring_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
  return ModuleElement(ring_, std::move(out));
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  require_same_ring(ring_, other.ring_);
  require_rank(cols_, other.rows_, "matrix product");
  PolyMatrix out(ring_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (!other.at(k, j).is_zero()) out.at(i, j) += at(i, k) * other.at(k, j);
    }
  return out;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out(ring_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = -entries_[k];
  return out;
}

PolyMatrix PolyMatrix::hconcat(const PolyMatrix& right) const {
  require_same_ring(ring_, right.ring_);
  if (rows_ != right.rows_) throw DimensionError("hconcat: row counts differ");
  PolyMatrix out(ring_, rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) out.at(i, cols_ + j) = right.at(i, j);
  }
  return out;
}

// --------------------------------------------------- SubmodulePresentation

SubmodulePresentation::SubmodulePresentation(RingPtr ring, std::size_t rank,
                                             std::vector<ModuleElement> generators)
    : ring_(std::move(ring)), rank_(rank), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    require_same_ring(ring_, g.ring());
    require_rank(g.rank(), rank_, "generator");
    if (g.is_zero()) continue;
    if (std::find(generators_.begin(), generators_.end(), g) != generators_.end()) continue;
    generators_.push_back(std::move(g));
  }
}

SubmodulePresentation SubmodulePresentation::zero(RingPtr ring, std::size_t rank) {
  return SubmodulePresentation(std::move(ring), rank);
}

SubmodulePresentation SubmodulePresentation::full(RingPtr ring, std::size_t rank) {
  std::vector<ModuleElement> gens;
  for (std::size_t i = 0; i < rank; ++i) gens.push_back(ModuleElement::unit(ring, rank, i));
  return SubmodulePresentation(ring, rank, std::move(gens));
}

const GroebnerBasis& SubmodulePresentation::working_basis() const {
  std::call_once(cache_->working_once, [this] {
    ModuleOrder top{MonomialOrder::GRevLex, PositionRule::TermOverPosition, 0};
    cache_->working = reduced_gb(buchberger(ring_, generators_, rank_, top));
  });
  return *cache_->working;
}

SubmodulePresentation SubmodulePresentation::reduced() const {
  SubmodulePresentation out(ring_, rank_, working_basis().elements());
  std::call_once(out.cache_->working_once, [&] { out.cache_->working = working_basis(); });
  return out;
}

const GroebnerBasis& SubmodulePresentation::canonical_basis() const {
  std::call_once(cache_->once, [this] {
    // POT completion straight from raw generators swells badly; the reduced
    // TOP basis is a much better starting point.
    cache_->basis = reduced_gb(
        buchberger(ring_, working_basis().elements(), rank_, ModuleOrder::canonical()));
  });
  return *cache_->basis;
}

SubmodulePresentation SubmodulePresentation::canonical() const {
  SubmodulePresentation out(ring_, rank_, canonical_basis().elements());
  std::call_once(out.cache_->once, [&] { out.cache_->basis = canonical_basis(); });
  return out;
}

bool SubmodulePresentation::is_zero() const {
  return generators_.empty() || working_basis().empty();
}

// -------------------------------------------------------------- operations

bool is_member(const ModuleElement& v, const SubmodulePresentation& u) {
  require_same_ring(v.ring(), u.ring());
  require_rank(v.rank(), u.rank(), "membership test");
  if (v.is_zero()) return true;
  if (u.has_no_generators()) return false;
  return normal_form(v, u.working_basis()).is_zero();
}

bool is_submodule(const SubmodulePresentation& u, const SubmodulePresentation& v) {
  require_rank(u.rank(), v.rank(), "submodule test");
  return std::all_of(u.generators().begin(), u.generators().end(),
                     [&v](const ModuleElement& g) { return is_member(g, v); });
}

bool module_equal(const SubmodulePresentation& u, const SubmodulePresentation& v) {
  require_same_ring(u.ring(), v.ring());
  require_rank(u.rank(), v.rank(), "module comparison");
  return u.working_basis() == v.working_basis();
}

SubmodulePresentation kernel_of_matrix(const PolyMatrix& p, const EngineOptions& options) {
  const RingPtr& ring = p.ring();
  const std::size_t rows = p.rows(), cols = p.cols();
  std::vector<ModuleElement> gens;
  gens.reserve(cols);
  for (std::size_t j = 0; j < cols; ++j)
    gens.push_back(p.column(j).concat(ModuleElement::unit(ring, cols, j)));

  ModuleOrder order{options.order, options.rule, rows};
  GroebnerBasis gb = buchberger(ring, gens, rows + cols, order, {options.pair_cap, false});

  std::vector<ModuleElement> kernel;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (gb.leading_position(i) < rows) continue;
    ModuleElement v = gb.element(i).slice(rows, cols);
    if (!(p * v).is_zero())
      throw VerificationError("kernel generator " + to_string(v) + " does not annihilate matrix");
    kernel.push_back(std::move(v));
  }
  return SubmodulePresentation(ring, cols, std::move(kernel));
}

namespace {

// Elements of <gens> whose first `block` coordinates vanish, read off an
// elimination basis and truncated to the remaining coordinates.
std::vector<ModuleElement> eliminate(const RingPtr& ring, const std::vector<ModuleElement>& gens,
                                     std::size_t block, std::size_t rest,
                                     const EngineOptions& options) {
  ModuleOrder order{options.order, options.rule, block};
  GroebnerBasis gb = buchberger(ring, gens, block + rest, order, {options.pair_cap, false});
  std::vector<ModuleElement> out;
  for (std::size_t i = 0; i < gb.size(); ++i)
    if (gb.leading_position(i) >= block) out.push_back(gb.element(i).slice(block, rest));
  return out;
}

}  // namespace

SubmodulePresentation intersect(const SubmodulePresentation& u, const SubmodulePresentation& v,
                                const EngineOptions& options) {
  require_same_ring(u.ring(), v.ring());
  require_rank(u.rank(), v.rank(), "intersection");
  const RingPtr& ring = u.ring();
  const std::size_t n = u.rank();
  if (u.has_no_generators() || v.has_no_generators()) return SubmodulePresentation::zero(ring, n);

  // (u, u) and (v, 0): an element with zero first half has second half
  // sum a_i u_i = -sum b_j v_j, so it lies in both modules.
  std::vector<ModuleElement> gens;
  for (const auto& g : u.generators()) gens.push_back(g.concat(g));
  for (const auto& g : v.generators()) gens.push_back(g.concat(ModuleElement(ring, n)));
  return SubmodulePresentation(ring, n, eliminate(ring, gens, n, n, options));
}

SubmodulePresentation preimage(const PolyMatrix& p, const SubmodulePresentation& v,
                               const EngineOptions& options) {
  require_same_ring(p.ring(), v.ring());
  if (p.rows() != v.rank())
    throw DimensionError("preimage: matrix has " + std::to_string(p.rows()) +
                         " rows but target module has rank " + std::to_string(v.rank()));
  const RingPtr& ring = p.ring();
  const std::size_t n = p.rows(), q = p.cols();
  std::vector<ModuleElement> gens;
  for (std::size_t j = 0; j < q; ++j)
    gens.push_back(p.column(j).concat(ModuleElement::unit(ring, q, j)));
  for (const auto& g : v.generators()) gens.push_back(g.concat(ModuleElement(ring, q)));
  return SubmodulePresentation(ring, q, eliminate(ring, gens, n, q, options));
}

SubmodulePresentation sum(const SubmodulePresentation& u, const SubmodulePresentation& v) {
  require_same_ring(u.ring(), v.ring());
  require_rank(u.rank(), v.rank(), "sum");
  std::vector<ModuleElement> gens = u.generators();
  gens.insert(gens.end(), v.generators().begin(), v.generators().end());
  return SubmodulePresentation(u.ring(), u.rank(), std::move(gens));
}

SubmodulePresentation image(const PolyMatrix& p, const SubmodulePresentation& u) {
  require_same_ring(p.ring(), u.ring());
  require_rank(p.cols(), u.rank(), "image");
  std::vector<ModuleElement> gens;
  gens.reserve(u.generators().size());
  for (const auto& g : u.generators()) gens.push_back(p * g);
  return SubmodulePresentation(p.ring(), p.rows(), std::move(gens));
}

}  // namespace reachmod
