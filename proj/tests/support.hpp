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

#pragma once

// Seeded generators and independent oracles shared by the unit tests and
// the acceptance runner.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/SVD>

#include "pstar/cbmap.hpp"
#include "pstar/cone.hpp"
#include "pstar/fixtures.hpp"
#include "pstar/numerics.hpp"

namespace pstar::testing {

inline CMatrix kron_identity(const CMatrix& a, Index k) {
  CMatrix out = CMatrix::Zero(a.rows() * k, a.cols() * k);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * k, j * k, k, k) = a(i, j) * CMatrix::Identity(k, k);
  return out;
}

/// pi(E_ij) = U (E_ij (x) I_k) U^H on C^{2k}: a representation of M_2.
inline std::vector<CMatrix> random_m2_rep(Index k, Rng& rng) {
  const CMatrix u = random_unitary(2 * k, rng);
  std::vector<CMatrix> rep;
  for (const CMatrix& e : fixtures::defining_representation(2))
    rep.push_back(u * kron_identity(e, k) * u.adjoint());
  return rep;
}

/// A representation of the quasi *-algebra FIX-Q2 on C^n that does not
/// extend to M_2: pi(E11) = P, pi(E22) = I - P, pi(E12) = P X (I - P).
inline std::vector<CMatrix> random_q2_rep(Index n, Rng& rng) {
  const Index r = rng.integer(1, static_cast<int>(n) - 1);
  const CMatrix u = random_unitary(n, rng);
  CMatrix diag = CMatrix::Zero(n, n);
  for (Index i = 0; i < r; ++i) diag(i, i) = 1.0;
  const CMatrix p1 = u * diag * u.adjoint();
  const CMatrix p2 = CMatrix::Identity(n, n) - p1;
  const CMatrix x = p1 * rng.complex_matrix(n, n) * p2;
  return {p1, x, CMatrix(x.adjoint()), p2};
}

struct RandomMap {
  CBMap phi;
  std::vector<CMatrix> rep;
  CMatrix v;
  bool quasi = false;  // built on FIX-Q2
};

/// Seeded CP invariant map on FIX-Q2 (even seeds) or FIX-M2 (odd seeds).
/// On FIX-Q2, V has full row rank so that A_0 is a core.
inline RandomMap random_invariant_map(std::uint64_t seed) {
  Rng rng(seed);
  RandomMap out;
  out.quasi = seed % 2 == 0;
  if (out.quasi) {
    const Index n = rng.integer(2, 3);
    const Index d = rng.integer(static_cast<int>(n), 3);
    out.rep = random_q2_rep(n, rng);
    out.v = rng.complex_matrix(n, d);
    out.phi = from_rep_and_V(out.rep, out.v, fixtures::fix_q2(), TolerancePolicy{});
  } else {
    const Index k = rng.integer(1, 2);
    const Index d = rng.integer(1, 3);
    out.rep = random_m2_rep(k, rng);
    out.v = rng.complex_matrix(2 * k, d);
    out.phi = from_rep_and_V(out.rep, out.v, fixtures::fix_m2(), TolerancePolicy{});
  }
  out.phi.name = "random-" + std::to_string(seed);
  return out;
}

/// Rank by singular values of the stacked vec(K_r), independent of the
/// eigen-based pipeline.
inline Index svd_rank(const CMatrix& m, double rel = 1e-9) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * std::max(1.0, s(0))) ++r;
  return r;
}

inline Index kraus_rank(const std::vector<CMatrix>& kraus) {
  const Index n = kraus.front().rows();
  CMatrix stacked(n * n, static_cast<Index>(kraus.size()));
  for (std::size_t r = 0; r < kraus.size(); ++r)
    stacked.col(static_cast<Index>(r)) = Eigen::Map<const CVector>(kraus[r].data(), n * n);
  return svd_rank(stacked);
}

/// F(a) = sum_r K_r^H a K_r evaluated directly.
inline CMatrix kraus_apply(const std::vector<CMatrix>& kraus, const CMatrix& a) {
  CMatrix out = CMatrix::Zero(a.rows(), a.cols());
  for (const CMatrix& k : kraus) out += k.adjoint() * a * k;
  return out;
}

/// sum_r K_r^H K_r = I after normalization.
inline std::vector<CMatrix> unital(std::vector<CMatrix> kraus) {
  const Index n = kraus.front().rows();
  CMatrix s = CMatrix::Zero(n, n);
  for (const CMatrix& k : kraus) s += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  const CMatrix inv_sqrt = es.eigenvectors() *
                           es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                           es.eigenvectors().adjoint();
  for (CMatrix& k : kraus) k = k * inv_sqrt;
  return kraus;
}

inline std::vector<CMatrix> random_kraus(Index n, Index count, Rng& rng) {
  std::vector<CMatrix> kraus;
  for (Index r = 0; r < count; ++r) kraus.push_back(rng.complex_matrix(n, n));
  return kraus;
}

/// Commuting hermitian b_1..b_m = U diag(lambda_j) U^H, eigenvalues drawn
/// from a small integer set so joint degeneracies occur.
inline std::vector<CMatrix> random_commuting_tuple(Index n, Index m, Rng& rng) {
  const CMatrix u = random_unitary(n, rng);
  std::vector<CMatrix> out;
  for (Index j = 0; j < m; ++j) {
    CMatrix d = CMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) d(i, i) = static_cast<double>(rng.integer(-2, 2));
    out.push_back(u * d * u.adjoint());
  }
  return out;
}

/// Random s x n polynomial matrix in m variables, total degree <= degree.
inline PolyMatrix random_polymatrix(Index s, Index n, Index m, int degree, Rng& rng) {
  PolyMatrix q(s, n, m);
  std::vector<Monomial> monos;
  Monomial e(static_cast<std::size_t>(m), 0);
  // enumerate exponents with sum <= degree
  std::function<void(Index, int)> rec = [&](Index var, int left) {
    if (var == m) {
      monos.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(var)] = k;
      rec(var + 1, left - k);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, degree);
  for (Index k = 0; k < s; ++k)
    for (Index l = 0; l < n; ++l)
      for (const Monomial& mono : monos)
        if (rng.uniform() < 0.6) q.add_term(k, l, mono, rng.complex_normal());
  return q;
}

}  // namespace pstar::testing
