#ifndef REACHMOD_GEOCONTROL_HPP
#define REACHMOD_GEOCONTROL_HPP

#include <optional>
#include <string>
#include <vector>

#include "reachmod/freemod.hpp"

namespace reachmod {

/// Discrete-time system x_{k+1} = A x_k + B u_k over the y-free ring R.
class SystemPair {
 public:
  /// Throws DimensionError on shape mismatch and std::invalid_argument when
  /// an entry contains y.
  SystemPair(PolyMatrix a, PolyMatrix b);

  const RingPtr& ring() const { return a_.ring(); }
  std::size_t n() const { return a_.rows(); }
  std::size_t m() const { return b_.cols(); }
  const PolyMatrix& a() const { return a_; }
  const PolyMatrix& b() const { return b_; }

  /// [yE - A, -B], an n x (n+m) matrix over R[y].
  PolyMatrix pencil() const;

 private:
  PolyMatrix a_;
  PolyMatrix b_;
};

/// Finitely generated R-submodule of R^n. Generators are y-free; the
/// canonical basis computed in R[y]^n is y-free as well and spans the same
/// R-module.
class StateSubmodule {
 public:
  StateSubmodule(RingPtr ring, std::size_t ambient, std::vector<ModuleElement> generators = {});
  explicit StateSubmodule(SubmodulePresentation presentation);

  static StateSubmodule zero(RingPtr ring, std::size_t ambient);
  static StateSubmodule full(RingPtr ring, std::size_t ambient);
  /// Column span of an n x k matrix.
  static StateSubmodule from_image(const PolyMatrix& columns);
  /// {x in R^n : C x = 0} for a p x n matrix C.
  static StateSubmodule from_kernel(const PolyMatrix& c, const EngineOptions& options = {});

  const RingPtr& ring() const { return pres_.ring(); }
  std::size_t ambient() const { return pres_.rank(); }
  const std::vector<ModuleElement>& generators() const { return pres_.generators(); }
  const SubmodulePresentation& presentation() const { return pres_; }
  /// Reduced Groebner basis generators, sorted by descending leading term.
  std::vector<ModuleElement> canonical_generators() const;
  StateSubmodule canonical() const;
  bool is_zero() const { return pres_.is_zero(); }

 private:
  SubmodulePresentation pres_;
};

bool is_member(const ModuleElement& v, const StateSubmodule& u);
bool is_submodule(const StateSubmodule& u, const StateSubmodule& v);
bool module_equal(const StateSubmodule& u, const StateSubmodule& v);

/// Element h = (f, g) of ker [yE - A, -B]; the pencil relation
/// (yE - A) f = B g is checked on construction.
class KernelElement {
 public:
  KernelElement(const SystemPair& sys, ModuleElement h);

  const ModuleElement& h() const { return h_; }
  ModuleElement f() const { return h_.slice(0, n_); }
  ModuleElement g() const { return h_.slice(n_, h_.rank() - n_); }
  const SystemPair& system() const { return sys_; }

 private:
  SystemPair sys_;
  ModuleElement h_;
  std::size_t n_;
};

/// States x_0 .. x_{d+1} and inputs u_0 .. u_d of a finite trajectory.
struct ControlTrajectory {
  std::size_t horizon = 0;
  std::vector<ModuleElement> states;
  std::vector<ModuleElement> inputs;
};

/// Empty when x_0 = 0, x_{k+1} = A x_k + B u_k for k <= d and x_{d+1} = 0.
std::vector<std::string> trajectory_violations(const SystemPair& sys,
                                               const ControlTrajectory& traj);

/// Vector of y^k coefficients of every entry of v.
ModuleElement coefficient_vector(const ModuleElement& v, unsigned k);

struct ReachOptions {
  EngineOptions engine;
  /// Iterations allowed for the S_k and W_k chains.
  std::size_t chain_cap = 64;
};

/// ker [yE - A, -B] in R[y]^{n+m}, presented by its canonical basis.
/// Depends on the system only, so it can be computed once and reused.
SubmodulePresentation pencil_kernel(const SystemPair& sys, const EngineOptions& options = {});

/// ker [yE - A, -B] cap (M[y] x R[y]^m), presented by its canonical basis.
SubmodulePresentation curly_M(const SystemPair& sys, const StateSubmodule& m,
                              const EngineOptions& options = {});
SubmodulePresentation curly_M(const SystemPair& sys, const StateSubmodule& m,
                              const SubmodulePresentation& kernel,
                              const EngineOptions& options = {});

/// U_f: the R-span of the y-coefficient vectors of f.
StateSubmodule cyclic_submodule(const ModuleElement& f);

/// Reads x_k off y^{d-k} in f and u_k off y^{d-k} in g, with d = deg_y g.
ControlTrajectory trajectory_from_kernel_element(const KernelElement& h);

struct CyclicPiece {
  /// Generator h of curly M this piece comes from.
  ModuleElement generator;
  /// U_{pi(h)}.
  StateSubmodule span;
};

struct ReachabilityResult {
  StateSubmodule module;
  std::vector<CyclicPiece> pieces;
  SubmodulePresentation curly_m;
};

/// Maximal reachability submodule of M from the generators of curly M.
ReachabilityResult max_reachability_kernel(const SystemPair& sys, const StateSubmodule& m,
                                           const ReachOptions& options = {});
ReachabilityResult max_reachability_kernel(const SystemPair& sys, const StateSubmodule& m,
                                           const SubmodulePresentation& kernel,
                                           const ReachOptions& options = {});

struct ChainResult {
  StateSubmodule limit;
  /// Smallest k with X_k = X_{k+1}.
  std::size_t steps = 0;
  std::vector<double> step_seconds;
};

/// M_*: limit of S_0 = im B, S_k = im B + A (S_{k-1} cap M).
ChainResult minimal_conditioned(const SystemPair& sys, const StateSubmodule& m,
                                const ReachOptions& options = {});

struct IterativeResult {
  StateSubmodule module;
  ChainResult conditioned;
  ChainResult chain;
};

/// Limit of W_k = M_* cap M cap A^{-1}(W_{k-1} + im B), W_{-1} = 0.
IterativeResult max_reachability_iterative(const SystemPair& sys, const StateSubmodule& m,
                                           const ReachOptions& options = {});

/// A U contained in U + im B.
bool is_AB_invariant(const SystemPair& sys, const StateSubmodule& u);

/// Column span of [B, AB, ..., A^{n-1} B].
StateSubmodule reachable_module(const SystemPair& sys);

StateSubmodule image_of_b(const SystemPair& sys);

enum class CertificateClause {
  PencilEquation,
  Trajectory,
  StatesInM,
  Invariance,
  ContainedInM,
  Decomposition,
};

std::string_view to_string(CertificateClause clause);

struct CertificateEntry {
  /// Index of the cyclic piece; empty for global clauses.
  std::optional<std::size_t> piece;
  CertificateClause clause;
  bool passed;
  std::string detail;
};

struct VerificationReport {
  std::vector<CertificateEntry> entries;

  bool passed() const;
  bool clause_failed(CertificateClause clause) const;
  std::vector<CertificateEntry> failures() const;
};

VerificationReport verify_reachability_certificate(const SystemPair& sys, const StateSubmodule& m,
                                                   const ReachabilityResult& result);

}  // namespace reachmod

#endif  // REACHMOD_GEOCONTROL_HPP
