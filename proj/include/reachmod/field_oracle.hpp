#ifndef REACHMOD_FIELD_ORACLE_HPP
#define REACHMOD_FIELD_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "reachmod/geocontrol.hpp"

// Classical subspace algorithms for systems over a field (Q or F_p). Uses its
// own exact Gaussian elimination and shares no code with the Groebner engine,
// so it can serve as an independent check of both module procedures.
namespace reachmod::oracle {

using Vector = std::vector<Rational>;
using DenseMatrix = std::vector<Vector>;

/// Subspace of F^n stored as the nonzero rows of its reduced row echelon form.
class Subspace {
 public:
  Subspace(std::size_t ambient, std::uint32_t characteristic, const std::vector<Vector>& vectors);

  static Subspace zero(std::size_t ambient, std::uint32_t characteristic);
  static Subspace full(std::size_t ambient, std::uint32_t characteristic);

  std::size_t ambient() const { return ambient_; }
  std::uint32_t characteristic() const { return characteristic_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  bool contains(const Vector& v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_;
  std::uint32_t characteristic_;
  std::vector<Vector> basis_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// {A u : u in U}
Subspace image(const DenseMatrix& a, const Subspace& u);
/// {x : A x in V}
Subspace preimage(const DenseMatrix& a, const Subspace& v);

struct FieldSystem {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t characteristic = 0;
  DenseMatrix a;
  DenseMatrix b;
};

/// Throws std::invalid_argument unless the ring has no variables besides y
/// and every entry is a constant.
FieldSystem to_field_system(const SystemPair& sys);
Subspace to_subspace(const StateSubmodule& u);

struct ChainOutcome {
  Subspace space;
  /// Smallest k with X_k = X_{k+1}.
  std::size_t steps;
};

/// Maximal (A,B)-invariant subspace in M: V_0 = M, V_{k+1} = M cap A^{-1}(V_k + im B).
ChainOutcome vstar_isa(const FieldSystem& sys, const Subspace& m);
/// Maximal reachability subspace in M: R_0 = 0, R_{k+1} = V* cap (A R_k + im B).
ChainOutcome rstar_classical(const FieldSystem& sys, const Subspace& m);

ChainOutcome vstar_isa(const SystemPair& sys, const StateSubmodule& m);
ChainOutcome rstar_classical(const SystemPair& sys, const StateSubmodule& m);

}  // namespace reachmod::oracle

#endif  // REACHMOD_FIELD_ORACLE_HPP
