#include <doctest.h>

#include "reachmod/errors.hpp"
#include "support.hpp"

using namespace reachmod;
using support::mat;
using support::P;
using support::span;
using support::vec;

namespace {

struct ExampleA {
  RingPtr R = Ring::create({"t"});
  SystemPair sys{mat(R, 3, 3, {"0", "1", "0", "0", "0", "t", "0", "0", "0"}),
                 mat(R, 3, 2, {"1", "-t", "t", "t", "0", "t"})};
  StateSubmodule M = StateSubmodule::from_image(mat(R, 3, 2, {"-1", "0", "1", "0", "0", "1"}));
};

SystemFile example_b() { return parse_system_file(support::fixture("example_b.yaml")); }

StateSubmodule state(const RingPtr& R, std::size_t n, std::vector<ModuleElement> gens) {
  return StateSubmodule(R, n, std::move(gens));
}

ModuleElement reference_h_b(const RingPtr& R) {
  return vec(R, {"t^2 - t*y", "-w^4*t", "-w^3*t", "-w^3 + t*y - y^2",
                 "(w^4*t^2 - t^5) + (-w^3*t + t^4)*y"});
}

}  // namespace

TEST_CASE("system validation") {
  auto R = Ring::create({"t"});
  CHECK_THROWS_AS(SystemPair(mat(R, 2, 1, {"1", "0"}), mat(R, 2, 1, {"1", "0"})), DimensionError);
  CHECK_THROWS_AS(SystemPair(mat(R, 1, 1, {"1"}), mat(R, 2, 1, {"1", "0"})), DimensionError);
  CHECK_THROWS_AS(SystemPair(mat(R, 1, 1, {"y"}), mat(R, 1, 1, {"1"})), std::invalid_argument);
}

TEST_CASE("pencil_kernel examples") {
  ExampleA ex;
  auto expected = span(ex.R, 5, {vec(ex.R, {"t", "-t", "-t", "t", "-y"}),
                                vec(ex.R, {"-t-y", "-t*y", "0", "-y^2", "0"})});
  CHECK(module_equal(pencil_kernel(ex.sys), expected));

  auto R = Ring::create({"t"});
  SystemPair integrator(mat(R, 1, 1, {"0"}), mat(R, 1, 1, {"1"}));
  CHECK(module_equal(pencil_kernel(integrator), span(R, 2, {vec(R, {"1", "y"})})));

  SystemPair unforced(mat(R, 2, 2, {"t", "1", "0", "t+1"}), PolyMatrix(R, 2, 1));
  const auto unforced_kernel = pencil_kernel(unforced);
  CHECK_FALSE(unforced_kernel.is_zero());
  for (const auto& h : unforced_kernel.generators()) CHECK(h.slice(0, 2).is_zero());
}

TEST_CASE("curly_M examples") {
  ExampleA ex;
  CHECK(module_equal(curly_M(ex.sys, ex.M), span(ex.R, 5, {vec(ex.R, {"t", "-t", "-t", "t", "-y"})})));

  SystemFile b = example_b();
  CHECK(module_equal(curly_M(b.system, b.m), span(b.ring, 5, {reference_h_b(b.ring)})));

  const auto curly_zero = curly_M(ex.sys, StateSubmodule::zero(ex.R, 3));
  for (const auto& h : curly_zero.generators())
    CHECK(h.slice(0, 3).is_zero());
  CHECK_THROWS_AS(curly_M(ex.sys, StateSubmodule::full(ex.R, 2)), DimensionError);
}

TEST_CASE("cyclic_submodule examples") {
  ExampleA ex;
  auto u = cyclic_submodule(vec(ex.R, {"t", "-t", "-t"}));
  CHECK(module_equal(u, state(ex.R, 3, {vec(ex.R, {"t", "-t", "-t"})})));

  auto R = Ring::create({"t", "w"});
  auto f = reference_h_b(R).slice(0, 3);
  CHECK(module_equal(cyclic_submodule(f), state(R, 3, {vec(R, {"-t", "0", "0"}),
                                                       vec(R, {"t^2", "-w^4*t", "-w^3*t"})})));
  CHECK(cyclic_submodule(ModuleElement(R, 3)).is_zero());
}

TEST_CASE("Example (A) procedures") {
  ExampleA ex;
  auto expected = state(ex.R, 3, {vec(ex.R, {"t", "-t", "-t"})});
  auto kernel = max_reachability_kernel(ex.sys, ex.M);
  CHECK(module_equal(kernel.module, expected));
  CHECK(module_equal(max_reachability_iterative(ex.sys, ex.M).module, expected));
  CHECK(is_AB_invariant(ex.sys, kernel.module));

  // fixed point of the S_k chain
  auto conditioned = minimal_conditioned(ex.sys, ex.M).limit;
  auto next = sum(image_of_b(ex.sys).presentation(),
                  image(ex.sys.a(), intersect(conditioned.presentation(), ex.M.presentation())));
  CHECK(module_equal(conditioned, StateSubmodule(next)));
  CHECK(is_submodule(image_of_b(ex.sys), conditioned));
}

TEST_CASE("Example (B) procedures") {
  SystemFile b = example_b();
  const auto& R = b.ring;
  auto expected = state(R, 3, {vec(R, {"-t", "0", "0"}), vec(R, {"t^2", "-w^4*t", "-w^3*t"})});
  auto kernel = max_reachability_kernel(b.system, b.m);
  CHECK(module_equal(kernel.module, expected));
  CHECK(module_equal(max_reachability_iterative(b.system, b.m).module, expected));
  CHECK(verify_reachability_certificate(b.system, b.m, kernel).passed());

  // the reference h annihilates this A
  CHECK_NOTHROW(KernelElement(b.system, reference_h_b(R)));
}

TEST_CASE("Example (B) with an alternative A") {
  // A(3,1) = w^3, A(1,3) = 1, A(3,3) = 1: M*_0 agrees,
  // but the reference h is not a kernel element.
  auto R = Ring::create({"t", "w"});
  SystemPair sys(mat(R, 3, 3, {"0", "0", "1", "w^4", "t", "0", "w^3", "t", "1"}),
                 mat(R, 3, 2, {"t", "0", "0", "0", "0", "1"}));
  auto m = StateSubmodule::from_image(mat(R, 3, 2, {"1", "0", "0", "w", "0", "1"}));
  auto expected = state(R, 3, {vec(R, {"-t", "0", "0"}), vec(R, {"t^2", "-w^4*t", "-w^3*t"})});
  CHECK(module_equal(max_reachability_kernel(sys, m).module, expected));
  CHECK_THROWS_AS(KernelElement(sys, reference_h_b(R)), VerificationError);
}

TEST_CASE("minimal_conditioned and iterative edge cases") {
  ExampleA ex;
  auto zero = StateSubmodule::zero(ex.R, 3);
  CHECK(module_equal(minimal_conditioned(ex.sys, zero).limit, image_of_b(ex.sys)));
  CHECK(max_reachability_iterative(ex.sys, zero).module.is_zero());
  CHECK(max_reachability_kernel(ex.sys, zero).module.is_zero());

  ReachOptions capped;
  capped.chain_cap = 0;
  CHECK_THROWS_AS(minimal_conditioned(ex.sys, ex.M, capped), ResourceExhausted);
}

TEST_CASE("is_AB_invariant examples") {
  auto R = Ring::create({"t"});
  SystemPair identity(PolyMatrix::identity(R, 2), PolyMatrix(R, 2, 1));
  CHECK(is_AB_invariant(identity, StateSubmodule::zero(R, 2)));
  CHECK(is_AB_invariant(identity, state(R, 2, {vec(R, {"t", "0"})})));
  SystemPair shift(mat(R, 2, 2, {"0", "1", "0", "0"}), PolyMatrix(R, 2, 1));
  CHECK_FALSE(is_AB_invariant(shift, state(R, 2, {vec(R, {"0", "1"})})));
  CHECK(is_AB_invariant(shift, state(R, 2, {vec(R, {"1", "0"})})));
}

TEST_CASE("trajectory examples") {
  ExampleA ex;
  KernelElement h(ex.sys, vec(ex.R, {"t", "-t", "-t", "t", "-y"}));
  ControlTrajectory traj = trajectory_from_kernel_element(h);
  CHECK(traj.horizon == 1);
  REQUIRE(traj.states.size() == 3);
  CHECK(traj.states[0].is_zero());
  CHECK(traj.states[1] == vec(ex.R, {"t", "-t", "-t"}));
  CHECK(traj.states[2].is_zero());
  REQUIRE(traj.inputs.size() == 2);
  CHECK(traj.inputs[0] == vec(ex.R, {"0", "-1"}));
  CHECK(traj.inputs[1] == vec(ex.R, {"t", "0"}));
  CHECK(trajectory_violations(ex.sys, traj).empty());

  ControlTrajectory empty = trajectory_from_kernel_element(KernelElement(ex.sys, ModuleElement(ex.R, 5)));
  CHECK(empty.horizon == 0);
  for (const auto& x : empty.states) CHECK(x.is_zero());

  CHECK_THROWS_AS(KernelElement(ex.sys, vec(ex.R, {"1", "0", "0", "0", "0"})), VerificationError);

  SystemFile b = example_b();
  ControlTrajectory tb = trajectory_from_kernel_element(KernelElement(b.system, reference_h_b(b.ring)));
  CHECK(tb.horizon == 2);
  CHECK(tb.states[1] == vec(b.ring, {"-t", "0", "0"}));
  CHECK(tb.states[2] == vec(b.ring, {"t^2", "-w^4*t", "-w^3*t"}));
  CHECK(trajectory_violations(b.system, tb).empty());
  for (std::size_t k = 1; k <= tb.horizon; ++k) CHECK(is_member(tb.states[k], b.m));
}

TEST_CASE("horizon when ker B is nonzero") {
  // g may exceed deg f + 1 by terms in ker B
  auto R = Ring::create({"t"});
  SystemPair sys(mat(R, 1, 1, {"0"}), mat(R, 1, 2, {"1", "1"}));
  KernelElement h(sys, vec(R, {"1", "y + y^3", "-y^3"}));
  ControlTrajectory traj = trajectory_from_kernel_element(h);
  CHECK(traj.horizon == 3);
  CHECK(trajectory_violations(sys, traj).empty());
}

TEST_CASE("reachable_module examples") {
  auto R = Ring::create({"t"});
  SystemPair unforced(mat(R, 2, 2, {"t", "1", "0", "1"}), PolyMatrix(R, 2, 1));
  CHECK(reachable_module(unforced).is_zero());
  auto b = mat(R, 2, 1, {"t", "1"});
  SystemPair static_sys(PolyMatrix(R, 2, 2), b);
  CHECK(module_equal(reachable_module(static_sys), StateSubmodule::from_image(b)));
  auto Q = Ring::create({});
  SystemPair chain(mat(Q, 2, 2, {"0", "1", "0", "0"}), mat(Q, 2, 1, {"0", "1"}));
  CHECK(module_equal(reachable_module(chain), StateSubmodule::full(Q, 2)));
}

TEST_CASE("certificate") {
  ExampleA ex;
  auto result = max_reachability_kernel(ex.sys, ex.M);
  auto report = verify_reachability_certificate(ex.sys, ex.M, result);
  CHECK(report.passed());
  CHECK(report.failures().empty());

  // Negative control: swap the piece for a genuine kernel element whose
  // states leave M. Only membership in M can notice.
  auto corrupted = result;
  REQUIRE(!corrupted.pieces.empty());
  auto outside = vec(ex.R, {"-t-y", "-t*y", "0", "-y^2", "0"});
  corrupted.pieces[0].generator = outside;
  corrupted.pieces[0].span = cyclic_submodule(outside.slice(0, 3));
  auto bad = verify_reachability_certificate(ex.sys, ex.M, corrupted);
  CHECK_FALSE(bad.passed());
  CHECK(bad.clause_failed(CertificateClause::StatesInM));
  CHECK_FALSE(bad.clause_failed(CertificateClause::PencilEquation));
  CHECK_FALSE(bad.clause_failed(CertificateClause::Trajectory));
}

TEST_CASE("randomized properties") {
  support::Random rnd(2024);
  auto R = Ring::create({"t"});
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = static_cast<std::size_t>(rnd.integer(1, 3));
    const auto m = static_cast<std::size_t>(rnd.integer(1, 2));
    SystemPair sys(rnd.matrix(R, n, n, 1, 2, 0.4), rnd.matrix(R, n, m, 1, 2, 0.4));
    PolyMatrix columns = rnd.matrix(R, n, 2, 1, 2, 0.2);
    auto small = StateSubmodule(R, n, {columns.column(0)});
    auto big = StateSubmodule::from_image(columns);

    auto kernel = pencil_kernel(sys);
    auto r_small = max_reachability_kernel(sys, small, kernel);
    auto r_big = max_reachability_kernel(sys, big, kernel);
    CHECK(is_submodule(r_small.module, r_big.module));
    CHECK(module_equal(max_reachability_kernel(sys, r_big.module, kernel).module, r_big.module));
    CHECK(module_equal(max_reachability_iterative(sys, r_big.module).module, r_big.module));
    CHECK(module_equal(max_reachability_kernel(sys, StateSubmodule::full(R, n), kernel).module,
                       reachable_module(sys)));
    CHECK(is_AB_invariant(sys, r_big.module));
    CHECK(is_submodule(r_big.module, big));

    // U_{pi(h)} inside the result for random h in curly M
    const auto& gens_m = r_big.curly_m.generators();
    for (int rep = 0; rep < 3 && !gens_m.empty(); ++rep) {
      ModuleElement h(R, n + sys.m());
      for (const auto& g : gens_m) h = h + g.scaled(rnd.poly(R, 1, 2, 2));
      CHECK(is_submodule(cyclic_submodule(h.slice(0, n)), r_big.module));
    }

    SystemPair unforced(sys.a(), PolyMatrix(R, n, m));
    CHECK(max_reachability_kernel(unforced, big).module.is_zero());
  }
}
