#include <doctest.h>

#include "reachmod/errors.hpp"
#include "support.hpp"

using namespace reachmod;
using support::mat;
using support::P;
using support::span;
using support::vec;

namespace {

const ModuleOrder kTop{MonomialOrder::GRevLex, PositionRule::TermOverPosition, 0};

GroebnerBasis reduced(const RingPtr& R, std::vector<ModuleElement> gens, std::size_t rank) {
  return reduced_gb(buchberger(R, gens, rank, kTop));
}

// Example (A) data.
struct ExampleA {
  RingPtr R = Ring::create({"t"});
  PolyMatrix A = mat(R, 3, 3, {"0", "1", "0", "0", "0", "t", "0", "0", "0"});
  PolyMatrix B = mat(R, 3, 2, {"1", "-t", "t", "t", "0", "t"});
  SystemPair sys{A, B};
};

}  // namespace

TEST_CASE("normal_form") {
  auto R = Ring::create({"t"});
  GroebnerBasis g = buchberger(R, {vec(R, {"t*y - 1"})}, 1, kTop);
  CHECK(normal_form(vec(R, {"t^2*y"}), g) == vec(R, {"t"}));
  CHECK(normal_form(vec(R, {"0"}), g).is_zero());
  CHECK(normal_form(vec(R, {"(t*y-1)*(t+y^2)"}), g).is_zero());
  CHECK_THROWS(normal_form(vec(R, {"t", "1"}), g));
}

TEST_CASE("buchberger and reduced_gb examples") {
  auto R = Ring::create({"t"});
  auto e1 = ModuleElement::unit(R, 2, 0);
  auto e2 = ModuleElement::unit(R, 2, 1);

  GroebnerBasis g = reduced(R, {e1}, 2);
  REQUIRE(g.size() == 1);
  CHECK(g.element(0) == e1);

  g = reduced(R, {vec(R, {"t"}), vec(R, {"t"})}, 1);
  REQUIRE(g.size() == 1);
  CHECK(g.element(0) == vec(R, {"t"}));

  // t = y*t^2 - t*(t*y - 1), then 1 = t*y - (t*y - 1): the ideal is everything.
  g = reduced(R, {vec(R, {"t*y - 1"}), vec(R, {"t^2"})}, 1);
  REQUIRE(g.size() == 1);
  CHECK(g.element(0) == vec(R, {"1"}));

  g = reduced(R, {e1.scaled(Rational(2))}, 2);
  REQUIRE(g.size() == 1);
  CHECK(g.element(0) == e1);

  g = reduced(R, {e1, e1 + e2}, 2);
  REQUIRE(g.size() == 2);
  CHECK(g.element(0) == e1);
  CHECK(g.element(1) == e2);

  // zeros are skipped
  g = reduced(R, {ModuleElement(R, 2), e2}, 2);
  CHECK(g.size() == 1);
}

TEST_CASE("pair cap") {
  auto R = Ring::create({"t", "w"});
  BuchbergerOptions opts;
  opts.pair_cap = 1;
  CHECK_THROWS_AS(buchberger(R,
                             {vec(R, {"t^2*y - w"}), vec(R, {"w^2*t - y"}), vec(R, {"y^2 - t*w"})},
                             1, kTop, opts),
                  ResourceExhausted);
}

TEST_CASE("membership and equality") {
  auto R = Ring::create({"t"});
  auto e1 = ModuleElement::unit(R, 1, 0);
  CHECK(is_member(ModuleElement(R, 3), span(R, 3, {vec(R, {"t", "1", "y"})})));
  CHECK_FALSE(is_member(e1, span(R, 1, {vec(R, {"t"})})));
  CHECK(is_member(vec(R, {"t", "-t", "-t"}), span(R, 3, {vec(R, {"1", "-1", "-1"})})));
  CHECK_THROWS(is_member(e1, span(R, 2, {})));

  auto u = span(R, 2, {vec(R, {"t", "y"}), vec(R, {"1", "t"})});
  auto u_perm = span(R, 2, {vec(R, {"1", "t"}), vec(R, {"t", "y"})});
  CHECK(module_equal(u, u_perm));
  CHECK_FALSE(module_equal(span(R, 1, {e1}), span(R, 1, {vec(R, {"t"})})));
  CHECK_THROWS(module_equal(span(R, 1, {e1}), span(R, 2, {})));
}

TEST_CASE("kernel_of_matrix examples") {
  auto R = Ring::create({"t"});
  CHECK(kernel_of_matrix(mat(R, 1, 1, {"t"})).is_zero());
  CHECK(module_equal(kernel_of_matrix(mat(R, 1, 2, {"t", "-t"})),
                     span(R, 2, {vec(R, {"1", "1"})})));

  ExampleA ex;
  auto expected = span(ex.R, 5, {vec(ex.R, {"t", "-t", "-t", "t", "-y"}),
                                vec(ex.R, {"-t-y", "-t*y", "0", "-y^2", "0"})});
  auto kernel = kernel_of_matrix(ex.sys.pencil());
  CHECK(module_equal(kernel, expected));
  CHECK(reduced_gb(buchberger(ex.R, kernel.generators(), 5, ModuleOrder::canonical())) ==
        expected.canonical_basis());
  for (const auto& v : kernel.generators()) CHECK((ex.sys.pencil() * v).is_zero());
}

TEST_CASE("intersect examples") {
  auto R = Ring::create({"t"});
  auto u = span(R, 2, {vec(R, {"t", "y"}), vec(R, {"1", "t^2"})});
  CHECK(module_equal(intersect(u, u), u));
  CHECK(module_equal(intersect(span(R, 1, {vec(R, {"t"})}), span(R, 1, {vec(R, {"y"})})),
                     span(R, 1, {vec(R, {"t*y"})})));

  ExampleA ex;
  std::vector<ModuleElement> target{vec(ex.R, {"-1", "1", "0", "0", "0"}),
                                    vec(ex.R, {"0", "0", "1", "0", "0"}),
                                    ModuleElement::unit(ex.R, 5, 3), ModuleElement::unit(ex.R, 5, 4)};
  auto curly = intersect(kernel_of_matrix(ex.sys.pencil()), span(ex.R, 5, target));
  CHECK(module_equal(curly, span(ex.R, 5, {vec(ex.R, {"t", "-t", "-t", "t", "-y"})})));
}

TEST_CASE("preimage and sum examples") {
  auto R = Ring::create({"t"});
  auto v = span(R, 2, {vec(R, {"t", "y"})});
  CHECK(module_equal(preimage(PolyMatrix::identity(R, 2), v), v));
  CHECK(module_equal(preimage(PolyMatrix(R, 2, 3), v), SubmodulePresentation::full(R, 3)));
  CHECK(module_equal(preimage(mat(R, 1, 1, {"t"}), span(R, 1, {vec(R, {"t^2"})})),
                     span(R, 1, {vec(R, {"t"})})));
  CHECK_THROWS(preimage(PolyMatrix::identity(R, 3), v));

  auto zero = SubmodulePresentation::zero(R, 2);
  CHECK(module_equal(sum(v, zero), v));
  CHECK(module_equal(sum(v, v), v));
  CHECK(module_equal(sum(span(R, 2, {ModuleElement::unit(R, 2, 0)}),
                         span(R, 2, {ModuleElement::unit(R, 2, 1)})),
                     SubmodulePresentation::full(R, 2)));
}

TEST_CASE("presentation normalization") {
  auto R = Ring::create({"t"});
  auto p = span(R, 2, {vec(R, {"t", "0"}), ModuleElement(R, 2), vec(R, {"t", "0"})});
  CHECK(p.generators().size() == 1);
  CHECK(SubmodulePresentation::zero(R, 3).is_zero());
  CHECK_FALSE(SubmodulePresentation::full(R, 3).is_zero());
}

TEST_CASE("cofactors reproduce every basis element") {
  support::Random rnd(77);
  auto R = Ring::create({"t"});
  BuchbergerOptions opts;
  opts.track_cofactors = true;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ModuleElement> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(rnd.element(R, 2, 2));
    for (const auto& order : {kTop, ModuleOrder::canonical()}) {
      GroebnerBasis g = buchberger(R, gens, 2, order, opts);
      for (const auto& basis : {g, reduced_gb(g)}) {
        REQUIRE(basis.input_count() == gens.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
          ModuleElement acc(R, 2);
          for (std::size_t j = 0; j < gens.size(); ++j)
            acc = acc + gens[j].scaled(basis.cofactors(i)[j]);
          CHECK(acc == basis.element(i));
        }
        for (const auto& v : gens) CHECK(normal_form(v, basis).is_zero());
      }
    }
  }
}

TEST_CASE("reduced GB is idempotent and presentation independent") {
  support::Random rnd(4242);
  auto R = Ring::create({"t"});
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<ModuleElement> gens;
    const int k = rnd.integer(1, 3);
    for (int i = 0; i < k; ++i) gens.push_back(rnd.element(R, 2, 1));
    auto base = span(R, 2, gens);
    CHECK(reduced_gb(base.canonical_basis()) == base.canonical_basis());
    for (int rep = 0; rep < 3; ++rep) {
      auto other = span(R, 2, rnd.re_present(R, gens));
      CHECK(other.canonical_basis() == base.canonical_basis());
    }
  }
}

TEST_CASE("kernel over a field matches Gaussian elimination") {
  support::Random rnd(99);
  auto Q = Ring::create({});
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = static_cast<std::size_t>(rnd.integer(1, 3));
    const auto q = static_cast<std::size_t>(rnd.integer(1, 4));
    PolyMatrix m = rnd.constant_matrix(Q, p, q, 3, 0.4);
    std::vector<oracle::Vector> rows(p, oracle::Vector(q));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j)
        rows[i][j] = m.at(i, j).is_zero() ? Rational(0) : m.at(i, j).leading_term().coefficient;
    const std::size_t rank = oracle::Subspace(q, 0, rows).dim();
    auto kernel = kernel_of_matrix(m);
    CHECK(kernel.canonical_basis().size() == q - rank);
    for (const auto& v : kernel.generators()) CHECK((m * v).is_zero());
  }
}

TEST_CASE("intersect, preimage and sum properties") {
  support::Random rnd(31337);
  auto R = Ring::create({"t"});
  for (int trial = 0; trial < 12; ++trial) {
    ModuleElement common = rnd.element(R, 2, 1);
    auto u = span(R, 2, {rnd.element(R, 2, 1), common});
    auto v = span(R, 2, {rnd.element(R, 2, 1), common.scaled(P(R, "t + 1"))});
    auto w = intersect(u, v);
    for (const auto& g : w.generators()) {
      CHECK(is_member(g, u));
      CHECK(is_member(g, v));
    }
    CHECK(is_member(common.scaled(P(R, "t + 1")), w));
    CHECK(module_equal(sum(u, w), u));

    PolyMatrix pm = rnd.matrix(R, 2, 2, 1, 2, 0.3);
    auto pre = preimage(pm, v);
    for (const auto& x : pre.generators()) CHECK(is_member(pm * x, v));
    CHECK(module_equal(preimage(pm, SubmodulePresentation::full(R, 2)),
                       SubmodulePresentation::full(R, 2)));
  }
}

TEST_CASE("module_equal agrees with canonical identity and mutual membership") {
  support::Random rnd(5150);
  auto R = Ring::create({"t", "w"});
  int equal = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ModuleElement> gens;
    for (int i = 0; i < rnd.integer(1, 3); ++i) gens.push_back(rnd.element(R, 3, 1));
    auto u = span(R, 3, gens);
    // half the time a re-presentation, otherwise with one generator dropped
    std::vector<ModuleElement> other = rnd.re_present(R, gens);
    if (rnd.chance(0.5) && other.size() > 1) other.pop_back();
    auto v = span(R, 3, other);
    const bool canonical = u.canonical_basis() == v.canonical_basis();
    const bool mutual = is_submodule(u, v) && is_submodule(v, u);
    CHECK(module_equal(u, v) == canonical);
    CHECK(mutual == canonical);
    equal += canonical;
  }
  CHECK(equal > 0);
  CHECK(equal < 30);
}
