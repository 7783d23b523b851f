#include "reachmod/geocontrol.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "reachmod/errors.hpp"

namespace reachmod {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void require_ambient(const SystemPair& sys, const StateSubmodule& u) {
  require_same_ring(sys.ring(), u.ring());
  if (u.ambient() != sys.n())
    throw DimensionError("submodule of R^" + std::to_string(u.ambient()) +
                         " used with a system of state dimension " + std::to_string(sys.n()));
}

// No pencil check: the verifier needs trajectories of unverified elements.
ControlTrajectory extract_trajectory(const ModuleElement& h, std::size_t n) {
  ModuleElement f = h.slice(0, n);
  ModuleElement g = h.slice(n, h.rank() - n);
  ControlTrajectory traj;
  if (h.is_zero()) {
    traj.states.push_back(ModuleElement(h.ring(), n));
    traj.states.push_back(ModuleElement(h.ring(), n));
    traj.inputs.push_back(ModuleElement(h.ring(), g.rank()));
    return traj;
  }
  std::size_t d = g.is_zero() ? 0 : g.y_degree();
  if (!f.is_zero()) d = std::max<std::size_t>(d, f.y_degree() + 1);
  traj.horizon = d;
  traj.states.push_back(ModuleElement(h.ring(), n));
  for (std::size_t k = 1; k <= d; ++k)
    traj.states.push_back(coefficient_vector(f, static_cast<unsigned>(d - k)));
  traj.states.push_back(ModuleElement(h.ring(), n));
  for (std::size_t k = 0; k <= d; ++k)
    traj.inputs.push_back(coefficient_vector(g, static_cast<unsigned>(d - k)));
  return traj;
}

SubmodulePresentation pencil_target(const SystemPair& sys, const StateSubmodule& m) {
  const RingPtr& ring = sys.ring();
  const std::size_t n = sys.n(), inputs = sys.m();
  std::vector<ModuleElement> gens;
  for (const auto& v : m.generators()) gens.push_back(v.concat(ModuleElement(ring, inputs)));
  for (std::size_t j = 0; j < inputs; ++j)
    gens.push_back(ModuleElement(ring, n).concat(ModuleElement::unit(ring, inputs, j)));
  return SubmodulePresentation(ring, n + inputs, std::move(gens));
}

}  // namespace

// -------------------------------------------------------------- SystemPair

SystemPair::SystemPair(PolyMatrix a, PolyMatrix b) : a_(std::move(a)), b_(std::move(b)) {
  require_same_ring(a_.ring(), b_.ring());
  if (a_.rows() != a_.cols())
    throw DimensionError("A must be square, got " + std::to_string(a_.rows()) + "x" +
                         std::to_string(a_.cols()));
  if (b_.rows() != a_.rows())
    throw DimensionError("B has " + std::to_string(b_.rows()) + " rows, A has " +
                         std::to_string(a_.rows()));
  if (!a_.is_y_free() || !b_.is_y_free())
    throw std::invalid_argument("pencil variable not allowed in system matrices");
}

PolyMatrix SystemPair::pencil() const {
  const RingPtr& r = ring();
  const std::size_t n = this->n(), inputs = m();
  PolyMatrix p(r, n, n + inputs);
  Polynomial y = Polynomial::variable(r, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.at(i, j) = (i == j ? y : Polynomial(r)) - a_.at(i, j);
    for (std::size_t j = 0; j < inputs; ++j) p.at(i, n + j) = -b_.at(i, j);
  }
  return p;
}

// ---------------------------------------------------------- StateSubmodule

StateSubmodule::StateSubmodule(RingPtr ring, std::size_t ambient,
                               std::vector<ModuleElement> generators)
    : StateSubmodule(SubmodulePresentation(std::move(ring), ambient, std::move(generators))) {}

StateSubmodule::StateSubmodule(SubmodulePresentation presentation)
    : pres_(std::move(presentation)) {
  for (const auto& g : pres_.generators())
    if (!g.is_y_free())
      throw std::invalid_argument("state submodule generator " + to_string(g) +
                                  " contains the pencil variable");
}

StateSubmodule StateSubmodule::zero(RingPtr ring, std::size_t ambient) {
  return StateSubmodule(std::move(ring), ambient);
}

StateSubmodule StateSubmodule::full(RingPtr ring, std::size_t ambient) {
  return StateSubmodule(SubmodulePresentation::full(std::move(ring), ambient));
}

StateSubmodule StateSubmodule::from_image(const PolyMatrix& columns) {
  return StateSubmodule(columns.ring(), columns.rows(), columns.columns());
}

StateSubmodule StateSubmodule::from_kernel(const PolyMatrix& c, const EngineOptions& options) {
  if (!c.is_y_free())
    throw std::invalid_argument("pencil variable not allowed in kernel-form submodule");
  return StateSubmodule(kernel_of_matrix(c, options));
}

std::vector<ModuleElement> StateSubmodule::canonical_generators() const {
  return pres_.canonical_basis().elements();
}

StateSubmodule StateSubmodule::canonical() const { return StateSubmodule(pres_.canonical()); }

bool is_member(const ModuleElement& v, const StateSubmodule& u) {
  return is_member(v, u.presentation());
}

bool is_submodule(const StateSubmodule& u, const StateSubmodule& v) {
  return is_submodule(u.presentation(), v.presentation());
}

bool module_equal(const StateSubmodule& u, const StateSubmodule& v) {
  return module_equal(u.presentation(), v.presentation());
}

// ----------------------------------------------------------- KernelElement

KernelElement::KernelElement(const SystemPair& sys, ModuleElement h)
    : sys_(sys), h_(std::move(h)), n_(sys.n()) {
  require_same_ring(sys.ring(), h_.ring());
  if (h_.rank() != sys.n() + sys.m())
    throw DimensionError("kernel element of rank " + std::to_string(h_.rank()) +
                         ", expected " + std::to_string(sys.n() + sys.m()));
  if (!(sys.pencil() * h_).is_zero())
    throw VerificationError("(yE - A) f != B g for h = " + to_string(h_));
}

ModuleElement coefficient_vector(const ModuleElement& v, unsigned k) {
  std::vector<Polynomial> entries;
  entries.reserve(v.rank());
  for (const auto& p : v.entries()) {
    std::vector<Term> terms;
    for (const auto& t : p.terms())
      if (t.monomial.y_degree() == k) terms.push_back({t.monomial.with_y_degree(0), t.coefficient});
    entries.emplace_back(v.ring(), std::move(terms));
  }
  return ModuleElement(v.ring(), std::move(entries));
}

std::vector<std::string> trajectory_violations(const SystemPair& sys,
                                               const ControlTrajectory& traj) {
  std::vector<std::string> out;
  const std::size_t d = traj.horizon;
  if (traj.states.size() != d + 2 || traj.inputs.size() != d + 1) {
    out.push_back("trajectory has inconsistent length");
    return out;
  }
  if (!traj.states.front().is_zero()) out.push_back("x_0 != 0");
  if (!traj.states.back().is_zero()) out.push_back("x_" + std::to_string(d + 1) + " != 0");
  for (std::size_t k = 0; k <= d; ++k) {
    ModuleElement next = sys.a() * traj.states[k] + sys.b() * traj.inputs[k];
    if (!(next == traj.states[k + 1]))
      out.push_back("x_" + std::to_string(k + 1) + " != A x_" + std::to_string(k) + " + B u_" +
                    std::to_string(k));
  }
  return out;
}

ControlTrajectory trajectory_from_kernel_element(const KernelElement& h) {
  ControlTrajectory traj = extract_trajectory(h.h(), h.system().n());
  auto problems = trajectory_violations(h.system(), traj);
  if (!problems.empty())
    throw VerificationError("trajectory of " + to_string(h.h()) + ": " + problems.front());
  return traj;
}

// -------------------------------------------------------------- procedures

SubmodulePresentation pencil_kernel(const SystemPair& sys, const EngineOptions& options) {
  return kernel_of_matrix(sys.pencil(), options).canonical();
}

SubmodulePresentation curly_M(const SystemPair& sys, const StateSubmodule& m,
                              const EngineOptions& options) {
  return curly_M(sys, m, pencil_kernel(sys, options), options);
}

SubmodulePresentation curly_M(const SystemPair& sys, const StateSubmodule& m,
                              const SubmodulePresentation& kernel, const EngineOptions& options) {
  require_ambient(sys, m);
  if (kernel.rank() != sys.n() + sys.m())
    throw DimensionError("pencil kernel has the wrong rank");
  SubmodulePresentation result = intersect(kernel, pencil_target(sys, m), options).canonical();
  const PolyMatrix pencil = sys.pencil();
  for (const auto& h : result.generators())
    if (!(pencil * h).is_zero())
      throw VerificationError("generator of curly M does not annihilate the pencil");
  return result;
}

StateSubmodule cyclic_submodule(const ModuleElement& f) {
  std::vector<ModuleElement> vectors;
  if (!f.is_zero())
    for (unsigned k = f.y_degree() + 1; k-- > 0;) {
      ModuleElement x = coefficient_vector(f, k);
      if (!x.is_zero()) vectors.push_back(std::move(x));
    }
  return StateSubmodule(f.ring(), f.rank(), std::move(vectors));
}

ReachabilityResult max_reachability_kernel(const SystemPair& sys, const StateSubmodule& m,
                                           const ReachOptions& options) {
  return max_reachability_kernel(sys, m, pencil_kernel(sys, options.engine), options);
}

ReachabilityResult max_reachability_kernel(const SystemPair& sys, const StateSubmodule& m,
                                           const SubmodulePresentation& kernel,
                                           const ReachOptions& options) {
  SubmodulePresentation cm = curly_M(sys, m, kernel, options.engine);
  std::vector<CyclicPiece> pieces;
  std::vector<ModuleElement> vectors;
  for (const auto& h : cm.generators()) {
    ModuleElement f = h.slice(0, sys.n());
    if (f.is_zero()) continue;
    StateSubmodule span = cyclic_submodule(f);
    vectors.insert(vectors.end(), span.generators().begin(), span.generators().end());
    pieces.push_back({h, std::move(span)});
  }
  StateSubmodule module = StateSubmodule(sys.ring(), sys.n(), std::move(vectors)).canonical();
  return {std::move(module), std::move(pieces), std::move(cm)};
}

StateSubmodule image_of_b(const SystemPair& sys) { return StateSubmodule::from_image(sys.b()); }

ChainResult minimal_conditioned(const SystemPair& sys, const StateSubmodule& m,
                                const ReachOptions& options) {
  require_ambient(sys, m);
  const SubmodulePresentation im_b = image_of_b(sys).presentation();
  SubmodulePresentation current = im_b.reduced();
  ChainResult result{StateSubmodule::zero(sys.ring(), sys.n()), 0, {}};
  for (std::size_t k = 0; k < options.chain_cap; ++k) {
    auto start = std::chrono::steady_clock::now();
    SubmodulePresentation next =
        sum(im_b, image(sys.a(), intersect(current, m.presentation(), options.engine)))
            .reduced();
    result.step_seconds.push_back(seconds_since(start));
    if (!is_submodule(current, next))
      throw VerificationError("S_k chain is not ascending at step " + std::to_string(k + 1));
    if (module_equal(current, next)) {
      result.limit = StateSubmodule(std::move(current));
      result.steps = k;
      return result;
    }
    current = std::move(next);
  }
  throw ResourceExhausted("S_k chain did not stabilize within " +
                          std::to_string(options.chain_cap) + " steps");
}

IterativeResult max_reachability_iterative(const SystemPair& sys, const StateSubmodule& m,
                                           const ReachOptions& options) {
  require_ambient(sys, m);
  ChainResult conditioned = minimal_conditioned(sys, m, options);
  const SubmodulePresentation im_b = image_of_b(sys).presentation();
  const SubmodulePresentation base =
      intersect(conditioned.limit.presentation(), m.presentation(), options.engine).reduced();

  auto step = [&](const SubmodulePresentation& previous) {
    return intersect(base, preimage(sys.a(), sum(previous, im_b), options.engine),
                     options.engine)
        .reduced();
  };

  ChainResult chain{StateSubmodule::zero(sys.ring(), sys.n()), 0, {}};
  auto start = std::chrono::steady_clock::now();
  SubmodulePresentation current = step(SubmodulePresentation::zero(sys.ring(), sys.n()));
  chain.step_seconds.push_back(seconds_since(start));
  for (std::size_t k = 0; k < options.chain_cap; ++k) {
    start = std::chrono::steady_clock::now();
    SubmodulePresentation next = step(current);
    chain.step_seconds.push_back(seconds_since(start));
    if (!is_submodule(current, next))
      throw VerificationError("W_k chain is not ascending at step " + std::to_string(k + 1));
    if (module_equal(current, next)) {
      chain.limit = StateSubmodule(std::move(current));
      chain.steps = k;
      StateSubmodule module = chain.limit;
      return {std::move(module), std::move(conditioned), std::move(chain)};
    }
    current = std::move(next);
  }
  throw ResourceExhausted("W_k chain did not stabilize within " +
                          std::to_string(options.chain_cap) + " steps");
}

bool is_AB_invariant(const SystemPair& sys, const StateSubmodule& u) {
  require_ambient(sys, u);
  SubmodulePresentation target = sum(u.presentation(), image_of_b(sys).presentation());
  return std::all_of(u.generators().begin(), u.generators().end(),
                     [&](const ModuleElement& g) { return is_member(sys.a() * g, target); });
}

StateSubmodule reachable_module(const SystemPair& sys) {
  std::vector<ModuleElement> vectors;
  std::vector<ModuleElement> block = sys.b().columns();
  for (std::size_t k = 0; k < sys.n(); ++k) {
    vectors.insert(vectors.end(), block.begin(), block.end());
    for (auto& v : block) v = sys.a() * v;
  }
  return StateSubmodule(sys.ring(), sys.n(), std::move(vectors)).canonical();
}

// ------------------------------------------------------------ certificate

std::string_view to_string(CertificateClause clause) {
  switch (clause) {
    case CertificateClause::PencilEquation: return "pencil-equation";
    case CertificateClause::Trajectory: return "trajectory";
    case CertificateClause::StatesInM: return "states-in-M";
    case CertificateClause::Invariance: return "AB-invariance";
    case CertificateClause::ContainedInM: return "contained-in-M";
    case CertificateClause::Decomposition: return "cyclic-decomposition";
  }
  return "unknown";
}

bool VerificationReport::passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const CertificateEntry& e) { return e.passed; });
}

bool VerificationReport::clause_failed(CertificateClause clause) const {
  return std::any_of(entries.begin(), entries.end(), [clause](const CertificateEntry& e) {
    return e.clause == clause && !e.passed;
  });
}

std::vector<CertificateEntry> VerificationReport::failures() const {
  std::vector<CertificateEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out),
               [](const CertificateEntry& e) { return !e.passed; });
  return out;
}

VerificationReport verify_reachability_certificate(const SystemPair& sys, const StateSubmodule& m,
                                                   const ReachabilityResult& result) {
  require_ambient(sys, m);
  require_ambient(sys, result.module);
  VerificationReport report;
  const PolyMatrix pencil = sys.pencil();
  std::vector<ModuleElement> piece_vectors;

  for (std::size_t i = 0; i < result.pieces.size(); ++i) {
    const ModuleElement& h = result.pieces[i].generator;
    if (h.rank() != sys.n() + sys.m()) {
      report.entries.push_back({i, CertificateClause::PencilEquation, false, "wrong rank"});
      continue;
    }
    bool annihilates = (pencil * h).is_zero();
    report.entries.push_back({i, CertificateClause::PencilEquation, annihilates,
                              annihilates ? "" : "(yE - A) f != B g"});

    ControlTrajectory traj = extract_trajectory(h, sys.n());
    auto problems = trajectory_violations(sys, traj);
    report.entries.push_back({i, CertificateClause::Trajectory, problems.empty(),
                              problems.empty() ? "d = " + std::to_string(traj.horizon)
                                               : problems.front()});

    std::string outside;
    for (std::size_t k = 1; k <= traj.horizon && outside.empty(); ++k)
      if (!is_member(traj.states[k], m))
        outside = "x_" + std::to_string(k) + " = " + to_string(traj.states[k]) + " not in M";
    report.entries.push_back({i, CertificateClause::StatesInM, outside.empty(), outside});

    for (std::size_t k = 1; k <= traj.horizon; ++k)
      if (!traj.states[k].is_zero()) piece_vectors.push_back(traj.states[k]);
  }

  bool invariant = is_AB_invariant(sys, result.module);
  report.entries.push_back({std::nullopt, CertificateClause::Invariance, invariant,
                            invariant ? "" : "A U not contained in U + im B"});
  bool contained = is_submodule(result.module, m);
  report.entries.push_back({std::nullopt, CertificateClause::ContainedInM, contained,
                            contained ? "" : "result not contained in M"});
  bool decomposed =
      module_equal(StateSubmodule(sys.ring(), sys.n(), std::move(piece_vectors)), result.module);
  report.entries.push_back({std::nullopt, CertificateClause::Decomposition, decomposed,
                            decomposed ? "" : "cyclic pieces do not generate the result"});
  return report;
}

}  // namespace reachmod
