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

#include "pstar/dilation.hpp"
#include "pstar/fixtures.hpp"
#include "support.hpp"

using namespace pstar;
namespace fx = pstar::fixtures;
namespace ts = pstar::testing;

namespace {

constexpr Index E11 = 0, E12 = 1, E21 = 2, E22 = 3;
const TolerancePolicy pol{};

CMatrix unit_vectors(Index n, std::initializer_list<Index> idx) {
  CMatrix m = CMatrix::Zero(n, static_cast<Index>(idx.size()));
  Index c = 0;
  for (Index i : idx) m(i, c++) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("dilation of Phi_id") {
  const CBMap phi = fx::phi_id_q2();
  const DilationResult dil = dilate(phi, pol, Mode::Quasi);
  CHECK(dil.h_dim == 2);
  REQUIRE(dil.v.has_value());
  CHECK(max_abs(dil.v->adjoint() * *dil.v - CMatrix::Identity(2, 2)) <= 1e-12);
  CHECK(dil.welldef_residual <= 1e-12);
  CHECK(verify_dilation_identity(phi, dil, pol) <= 1e-12);
  const RepReport rep = verify_representation(dil, *phi.algebra, pol, Mode::Quasi);
  CHECK(rep.passed);
  CHECK(rep.unit_residual <= 1e-12);

  const IsometryReport iso = isometry_bound_check(phi, dil, pol);
  CHECK(iso.is_isometry);
  CHECK(iso.norm_v == doctest::Approx(1.0));
  CHECK(iso.factorization_residual <= 1e-12);
}

TEST_CASE("identity lift reproduces F through V") {
  const CBMap phi = fx::identity_lift(2);
  const DilationResult dil = dilate(phi, pol, Mode::Full);
  REQUIRE(dil.v.has_value());
  // V^H pi(a) V = F(a) on the basis
  const auto f = fx::identity_map(2);
  for (Index a = 0; a < 4; ++a) {
    const CMatrix got = dil.v->adjoint() * dil.pi[static_cast<std::size_t>(a)] * *dil.v;
    CHECK(max_abs(got - f[static_cast<std::size_t>(a)]) <= 1e-12);
  }
  CHECK(dil.h_dim == 2);
}

TEST_CASE("zero map dilates to the zero space") {
  CBMap phi = fx::phi_id_q2();
  std::fill(phi.tensor.begin(), phi.tensor.end(), Complex(0.0));
  const DilationResult dil = dilate(phi, pol, Mode::Quasi);
  CHECK(dil.h_dim == 0);
  CHECK(verify_dilation_identity(phi, dil, pol) == 0.0);
}

TEST_CASE("perturbed pi is detected") {
  const CBMap phi = fx::phi_id_q2();
  DilationResult dil = dilate(phi, pol, Mode::Quasi);
  dil.pi[E11](0, 0) += 1e-3;
  const double r = verify_dilation_identity(phi, dil, pol);
  CHECK(r >= 5e-4);
  CHECK(r <= 5e-3);
}

TEST_CASE("transpose lift is refused") {
  try {
    dilate(fx::transpose_lift(2), pol, Mode::Full);
    FAIL("expected NotCompletelyPositive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCompletelyPositive);
  }
}

TEST_CASE("a core failing exact I4 is refused") {
  const CBMap phi = with_core(fx::phi_id_q2(), unit_vectors(4, {E11}));
  try {
    dilate(phi, pol, Mode::Quasi);
    FAIL("expected CoreViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoreViolation);
  }
}

TEST_CASE("random invariant maps") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ts::RandomMap rm = ts::random_invariant_map(seed);
    const DilationResult dil = dilate(rm.phi, pol, Mode::Full);
    CHECK(verify_dilation_identity(rm.phi, dil, pol) <= 1e-9);
    CHECK(verify_representation(dil, *rm.phi.algebra, pol, Mode::Full).passed);
    // h_dim equals the rank of the Gram form, by an independent SVD
    CHECK(dil.h_dim == ts::svd_rank(gram_matrix(rm.phi)));
  }
}

TEST_CASE("unitary equivalence") {
  const CBMap phi = fx::phi_id_q2();
  const DilationResult d1 = dilate(phi, pol, Mode::Quasi);
  const EquivalenceResult same = unitary_equivalence(d1, d1, phi, phi, pol);
  CHECK(same.residual <= 1e-12);
  CHECK(max_abs(same.u - CMatrix::Identity(2, 2)) <= 1e-12);

  // two independent runs on the same map
  for (std::uint64_t seed = 2; seed <= 12; seed += 2) {
    const ts::RandomMap rm = ts::random_invariant_map(seed);
    const DilationResult a = dilate(rm.phi, pol, Mode::Full);
    const DilationResult b = dilate(rm.phi, pol, Mode::Full);
    const EquivalenceResult eq = unitary_equivalence(a, b, rm.phi, rm.phi, pol);
    CHECK(eq.residual <= 1e-9);
    CHECK(max_abs(eq.u.adjoint() * eq.u - CMatrix::Identity(a.h_dim, a.h_dim)) <= 1e-9);
  }

  const CBMap id = fx::identity_lift(2), dep = fx::depolarizing_lift(2);
  try {
    unitary_equivalence(dilate(id, pol, Mode::Full), dilate(dep, pol, Mode::Full), id, dep, pol);
    FAIL("expected NotEquivalent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEquivalent);
  }
}

TEST_CASE("isometry bound on a scaled map") {
  const CBMap phi = scaled(fx::phi_id_q2(), 4.0);
  const DilationResult dil = dilate(phi, pol, Mode::Quasi);
  const IsometryReport iso = isometry_bound_check(phi, dil, pol);
  CHECK(iso.norm_v == doctest::Approx(2.0));
  CHECK_FALSE(iso.is_isometry);
  CHECK(iso.factorization_residual <= 1e-12);
}

TEST_CASE("commutant") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  CHECK(commutant({d}, 2, pol).size() == 2);

  const auto rep = fx::defining_representation(2);
  const auto c = commutant({rep[E12], rep[E21]}, 2, pol);
  REQUIRE(c.size() == 1);
  const CMatrix& x = c.front();
  CHECK(max_abs(x - x(0, 0) * CMatrix::Identity(2, 2)) <= 1e-12);

  CHECK(commutant({}, 2, pol).size() == 4);
}

TEST_CASE("commutant generation check") {
  const CBMap phi = fx::phi_id_q2();
  const DilationResult dil = dilate(phi, pol, Mode::Quasi);
  const CommutantComparison diag = commutant_generation_check(*phi.algebra, dil, fx::diagonal_span_m2(), pol);
  CHECK_FALSE(diag.equal);
  CHECK(diag.generators_dim == 2);
  CHECK(diag.algebra_dim == 1);

  const CommutantComparison off =
      commutant_generation_check(*phi.algebra, dil, unit_vectors(4, {E12, E21}), pol);
  CHECK(off.equal);
  CHECK(off.generators_dim == 1);
}

TEST_CASE("core inclusion and the largest core") {
  const CBMap small = with_core(fx::identity_lift(2), CMatrix(fx::fix_m2()->unit()));
  const CBMap large = fx::identity_lift(2);
  const DilationResult ds = dilate(small, pol, Mode::Full);
  const DilationResult dl = dilate(large, pol, Mode::Full);
  CHECK(ds.h_dim == dl.h_dim);
  CHECK(core_inclusion_residual(large, ds, dl, pol) <= 1e-12);

  const CMatrix lc = largest_core(small, ds, pol);
  CHECK(lc.cols() == 4);
  CHECK(span_contains(lc, small.core, 1e-10));

  const CBMap q = fx::phi_id_q2();
  const CMatrix lq = largest_core(q, dilate(q, pol, Mode::Quasi), pol);
  CHECK(span_equal(lq, fx::diagonal_span_m2(), 1e-10));
}

TEST_CASE("non-invariant map fails well-definedness") {
  const CBMap phi = fx::noninvariant_q2();
  CHECK(check_completely_positive(phi, pol).is_cp);
  const CoreReport r = check_core(phi, phi.core, pol, Mode::Quasi);
  CHECK(r.find("I1")->passed);
  CHECK(r.find("I2")->passed);
  CHECK_FALSE(r.find("I3")->passed);
  try {
    dilate(phi, pol, Mode::Quasi);
    FAIL("expected WellDefinednessViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WellDefinednessViolation);
  }
}
