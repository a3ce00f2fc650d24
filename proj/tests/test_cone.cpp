// Copyright 2026 The pstar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <limits>

#include "pstar/cone.hpp"
#include "pstar/fixtures.hpp"
#include "support.hpp"

using namespace pstar;
namespace fx = pstar::fixtures;
namespace ts = pstar::testing;

namespace {

const TolerancePolicy pol{};

RVector point(std::initializer_list<double> xs) {
  RVector p(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("polymatrix_eval at points") {
  const PolyMatrix g = fx::gram_square_example();
  const CMatrix at2 = polymatrix_eval(g, point({2.0}));
  CHECK(std::abs(at2(0, 0) - 1.0) == 0.0);
  CHECK(std::abs(at2(0, 1) - 2.0) == 0.0);
  CHECK(std::abs(at2(1, 1) - 4.0) == 0.0);

  const CMatrix at0 = polymatrix_eval(fx::planted_non_psd(), point({0.0}));
  CHECK(std::abs(at0(1, 1) + 1.0) == 0.0);

  PolyMatrix two(1, 1, 2);
  two.add_term(0, 0, {1, 2}, Complex(0, 1));  // i x y^2
  CHECK(std::abs(polymatrix_eval(two, point({3.0, -2.0}))(0, 0) - Complex(0, 12)) <= 1e-14);
  CHECK_THROWS_AS(polymatrix_eval(two, point({1.0})), Error);
}

TEST_CASE("polymatrix_eval on commuting matrices") {
  const PolyMatrix g = fx::gram_square_example();
  const CMatrix b = diag2(1.0, 2.0);
  const CMatrix blocks = polymatrix_eval(g, std::vector<CMatrix>{b});
  REQUIRE(blocks.rows() == 4);
  // block (0, 1) is b, block (1, 1) is b^2
  CHECK(max_abs(blocks.block(0, 2, 2, 2) - b) == 0.0);
  CHECK(max_abs(blocks.block(2, 2, 2, 2) - b * b) == 0.0);
}

TEST_CASE("polynomial arithmetic") {
  PolyMatrix x(1, 1, 1);
  x.add_term(0, 0, {1}, 1.0);
  const PolyMatrix x2 = x * x;
  CHECK(x2.degree() == 2);
  CHECK(std::abs(polymatrix_eval(x2 + 3.0 * x, point({2.0}))(0, 0) - 10.0) <= 1e-14);
  PolyMatrix c(1, 2, 1);
  c.add_term(0, 1, {0}, Complex(1, 1));
  const PolyMatrix ca = adjoint(c);
  CHECK(ca.rows() == 2);
  CHECK(std::abs(polymatrix_eval(ca, point({0.0}))(1, 0) - Complex(1, -1)) == 0.0);
  CHECK(fx::gram_square_example().hermitian_defect() == 0.0);
  CHECK(c.hermitian_defect() == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(c.add_term(0, 0, {1, 1}, 1.0), Error);
}

TEST_CASE("pd_falsify") {
  const FalsifyResult good = pd_falsify(fx::gram_square_example(), pol, 2000);
  CHECK_FALSE(good.counterexample);
  CHECK(good.points_checked == 2000);

  const FalsifyResult bad = pd_falsify(fx::planted_non_psd(), pol, 2000);
  REQUIRE(bad.counterexample);
  CHECK(bad.point.size() == 1);
  CHECK(std::abs(bad.point(0)) < 1.0);
  CHECK(bad.min_eig < 0.0);

  CHECK(pd_falsify(PolyMatrix::identity(3, 2), pol, 100).min_eig == doctest::Approx(1.0));
}

TEST_CASE("sum of squares members survive the falsifier") {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const Index m = rng.integer(1, 3);
    const PolyMatrix q = ts::random_polymatrix(rng.integer(1, 3), 2, m, 2, rng);
    const PolyMatrix p = sos_member(q);
    CHECK(p.hermitian_defect() <= 1e-12);
    CHECK(p.degree() <= 4);
    CHECK_FALSE(pd_falsify(p, pol, 500).counterexample);
  }
  // the gram square example is (1, x)^H (1, x)
  PolyMatrix row(1, 2, 1);
  row.add_term(0, 0, {0}, 1.0);
  row.add_term(0, 1, {1}, 1.0);
  const PolyMatrix s = sos_member(row);
  const PolyMatrix g = fx::gram_square_example();
  for (double x : {-1.5, 0.0, 0.7, 3.0})
    CHECK(max_abs(polymatrix_eval(s, point({x})) - polymatrix_eval(g, point({x}))) <= 1e-14);
}

TEST_CASE("cone_cp_check on a diagonal generator") {
  GeneratorTuple gens;
  gens.generators = {diag2(1.0, 2.0)};
  const ConeReport r = cone_cp_check(gens, {fx::gram_square_example(), PolyMatrix::identity(2, 1)},
                                     200, 2000, pol);
  CHECK(r.passed());
  REQUIRE(r.items.size() == 2);
  CHECK(r.joint_spectrum.rows() == 2);
  for (const auto& item : r.items) {
    CHECK(item.exact_pass);
    CHECK(item.sampled_pass);
    CHECK(item.block_residual <= 1e-12);
  }
  // P = gram square: eigenvalues of [[1, t], [t, t^2]] are 0 and 1 + t^2
  CHECK(std::abs(r.items[0].exact_min_eig) <= 1e-12);
  CHECK(r.items[1].exact_min_eig == doctest::Approx(1.0));
}

TEST_CASE("cone_cp_check on random commuting tuples") {
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    const Index m = rng.integer(1, 2);
    GeneratorTuple gens;
    gens.generators = ts::random_commuting_tuple(3, m, rng);
    const PolyMatrix p = sos_member(ts::random_polymatrix(2, 2, m, 2, rng));
    const ConeReport r = cone_cp_check(gens, {p}, 100, 500, pol);
    CHECK(r.passed());
    CHECK(r.joint_residual <= 1e-8);
  }
}

TEST_CASE("cone_cp_check errors") {
  GeneratorTuple gens;
  gens.generators = {diag2(1.0, 2.0)};
  try {
    cone_cp_check(gens, {fx::planted_non_psd()}, 10, 1000, pol);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }

  try {
    cone_cp_check(gens, {PolyMatrix::identity(2, 2)}, 10, 100, pol);
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityMismatch);
  }

  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  gens.generators = {diag2(1.0, 2.0), x};
  try {
    cone_cp_check(gens, {PolyMatrix::identity(1, 2)}, 10, 100, pol);
    FAIL("expected NotCommuting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCommuting);
  }
}
