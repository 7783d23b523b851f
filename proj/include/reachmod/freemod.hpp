#ifndef REACHMOD_FREEMOD_HPP
#define REACHMOD_FREEMOD_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "reachmod/polyring.hpp"

namespace reachmod {

/// Vector in the free module R[y]^k.
class ModuleElement {
 public:
  ModuleElement(RingPtr ring, std::size_t rank);
  ModuleElement(RingPtr ring, std::vector<Polynomial> entries);

  static ModuleElement unit(RingPtr ring, std::size_t rank, std::size_t index);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return entries_.size(); }
  const Polynomial& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Polynomial>& entries() const { return entries_; }
  bool is_zero() const;
  bool is_y_free() const;
  unsigned y_degree() const;

  /// Entries [from, from + count).
  ModuleElement slice(std::size_t from, std::size_t count) const;
  ModuleElement concat(const ModuleElement& tail) const;

  ModuleElement operator+(const ModuleElement& other) const;
  ModuleElement operator-(const ModuleElement& other) const;
  ModuleElement operator-() const;
  ModuleElement scaled(const Polynomial& c) const;
  ModuleElement scaled(const Rational& c) const;

  friend bool operator==(const ModuleElement& a, const ModuleElement& b);

 private:
  RingPtr ring_;
  std::vector<Polynomial> entries_;
};

/// "(e_1, e_2, ...)" with canonically rendered entries.
std::string to_string(const ModuleElement& v);

enum class PositionRule { PositionOverTerm, TermOverPosition };

/// Order on terms m * e_i. Positions below `elimination_block` form an upper
/// block whose terms dominate every term of the lower block; inside each
/// block `rule` decides, with lower position indices dominating.
struct ModuleOrder {
  MonomialOrder base = MonomialOrder::GRevLex;
  PositionRule rule = PositionRule::TermOverPosition;
  std::size_t elimination_block = 0;

  int compare(std::size_t pos_a, const Monomial& a, std::size_t pos_b,
              const Monomial& b) const;

  /// Fixed order for module fingerprints: grevlex, position over term.
  static ModuleOrder canonical() {
    return {MonomialOrder::GRevLex, PositionRule::PositionOverTerm, 0};
  }

  friend bool operator==(const ModuleOrder&, const ModuleOrder&) = default;
};

/// Dense p x q matrix of polynomials, row-major.
class PolyMatrix {
 public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);

  static PolyMatrix identity(RingPtr ring, std::size_t n);
  /// Columns must all have rank `rows`.
  static PolyMatrix from_columns(RingPtr ring, std::size_t rows,
                                 const std::vector<ModuleElement>& columns);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  ModuleElement column(std::size_t j) const;
  std::vector<ModuleElement> columns() const;
  bool is_y_free() const;

  ModuleElement operator*(const ModuleElement& v) const;
  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix operator-() const;
  /// [*this | right]
  PolyMatrix hconcat(const PolyMatrix& right) const;

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
};

namespace detail {

struct ModTerm {
  std::uint32_t position;
  Monomial monomial;
  Rational coefficient;
};

/// Module element as one term list, sorted descending under a ModuleOrder.
using SparseVec = std::vector<ModTerm>;

}  // namespace detail

struct BuchbergerOptions {
  /// Processed S-pairs allowed before ResourceExhausted is thrown.
  std::size_t pair_cap = 1'000'000;
  /// Record each basis element as a combination of the inputs.
  bool track_cofactors = false;
};

struct BuchbergerStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_discarded = 0;
  std::size_t zero_reductions = 0;
};

class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::size_t rank, ModuleOrder order);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const ModuleOrder& order() const { return order_; }
  std::size_t size() const { return vecs_.size(); }
  bool empty() const { return vecs_.empty(); }

  std::vector<ModuleElement> elements() const;
  ModuleElement element(std::size_t i) const;
  /// Position of the leading term of element i.
  std::size_t leading_position(std::size_t i) const { return vecs_[i].front().position; }

  bool tracks_cofactors() const { return tracked_; }
  /// Number of input generators the cofactors refer to.
  std::size_t input_count() const { return input_count_; }
  /// cofactors(i)[j] is the coefficient of input j in element i.
  const std::vector<Polynomial>& cofactors(std::size_t i) const { return cofactors_[i]; }

  const BuchbergerStats& stats() const { return stats_; }

  /// Element-wise identity; meaningful for reduced bases under one order.
  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b);

  const std::vector<detail::SparseVec>& sparse() const { return vecs_; }

 private:
  friend GroebnerBasis buchberger(const RingPtr&, const std::vector<ModuleElement>&,
                                  std::size_t, const ModuleOrder&, const BuchbergerOptions&);
  friend GroebnerBasis reduced_gb(const GroebnerBasis&);

  RingPtr ring_;
  std::size_t rank_;
  ModuleOrder order_;
  std::vector<detail::SparseVec> vecs_;
  bool tracked_ = false;
  std::size_t input_count_ = 0;
  std::vector<std::vector<Polynomial>> cofactors_;
  BuchbergerStats stats_;
};

/// Completes `generators` (zeros skipped) to a Groebner basis with
/// Buchberger's algorithm and the Gebauer-Moeller pair criteria.
/// Throws ResourceExhausted past the pair cap.
GroebnerBasis buchberger(const RingPtr& ring, const std::vector<ModuleElement>& generators,
                         std::size_t rank, const ModuleOrder& order,
                         const BuchbergerOptions& options = {});

/// Monic, minimal, tail-reduced and sorted by descending leading term.
/// Unique for a given submodule and order. Cofactors are carried along.
GroebnerBasis reduced_gb(const GroebnerBasis& basis);

/// Remainder of full division by `basis`. No term of the result is
/// divisible by a leading term of the basis.
ModuleElement normal_form(const ModuleElement& v, const GroebnerBasis& basis);

/// Finitely generated submodule of R[y]^k given by generators. Zero and
/// duplicate generators are dropped on construction. The reduced Groebner
/// basis under ModuleOrder::canonical() is computed lazily, at most once,
/// and shared between copies.
class SubmodulePresentation {
 public:
  SubmodulePresentation(RingPtr ring, std::size_t rank,
                        std::vector<ModuleElement> generators = {});

  static SubmodulePresentation zero(RingPtr ring, std::size_t rank);
  /// All of R[y]^k, generated by unit vectors.
  static SubmodulePresentation full(RingPtr ring, std::size_t rank);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<ModuleElement>& generators() const { return generators_; }
  bool has_no_generators() const { return generators_.empty(); }

  const GroebnerBasis& canonical_basis() const;
  /// Same submodule presented by its canonical basis.
  SubmodulePresentation canonical() const;
  /// Reduced basis under grevlex term-over-position. Much cheaper than the
  /// canonical one; used for membership and identity tests.
  const GroebnerBasis& working_basis() const;
  SubmodulePresentation reduced() const;
  /// True when the canonical basis is empty.
  bool is_zero() const;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<GroebnerBasis> basis;
    std::once_flag working_once;
    std::optional<GroebnerBasis> working;
  };

  RingPtr ring_;
  std::size_t rank_;
  std::vector<ModuleElement> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Tuning shared by the syzygy-based operations.
struct EngineOptions {
  MonomialOrder order = MonomialOrder::GRevLex;
  PositionRule rule = PositionRule::TermOverPosition;
  std::size_t pair_cap = 1'000'000;
};

bool is_member(const ModuleElement& v, const SubmodulePresentation& u);
/// Every generator of `u` lies in `v`.
bool is_submodule(const SubmodulePresentation& u, const SubmodulePresentation& v);
/// Identity of reduced bases under a fixed order.
bool module_equal(const SubmodulePresentation& u, const SubmodulePresentation& v);

/// {v in R[y]^q : P v = 0}, via elimination on the module generated by
/// (column_i(P), e_i). Every returned generator is checked against P.
SubmodulePresentation kernel_of_matrix(const PolyMatrix& p, const EngineOptions& options = {});

/// U cap V, eliminating the first block of <(u, u), (v, 0)>.
SubmodulePresentation intersect(const SubmodulePresentation& u, const SubmodulePresentation& v,
                                const EngineOptions& options = {});

/// {x in R[y]^q : P x in V}.
SubmodulePresentation preimage(const PolyMatrix& p, const SubmodulePresentation& v,
                               const EngineOptions& options = {});

SubmodulePresentation sum(const SubmodulePresentation& u, const SubmodulePresentation& v);

/// Submodule generated by P applied to the generators of U.
SubmodulePresentation image(const PolyMatrix& p, const SubmodulePresentation& u);

}  // namespace reachmod

#endif  // REACHMOD_FREEMOD_HPP
