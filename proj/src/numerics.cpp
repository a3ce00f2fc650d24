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

#include "pstar/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pstar {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotInGamma: return "NotInGamma";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::NotHermitianSymmetric: return "NotHermitianSymmetric";
    case ErrorCode::NotARepresentation: return "NotARepresentation";
    case ErrorCode::PartialProductUndefined: return "PartialProductUndefined";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::CoreViolation: return "CoreViolation";
    case ErrorCode::WellDefinednessViolation: return "WellDefinednessViolation";
    case ErrorCode::UnitNotInCore: return "UnitNotInCore";
    case ErrorCode::NotEquivalent: return "NotEquivalent";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

double TolerancePolicy::rank_factor(Index dim) const {
  if (rank_tol_factor) return *rank_tol_factor;
  return static_cast<double>(std::max<Index>(dim, 1)) *
         std::numeric_limits<double>::epsilon();
}

void TolerancePolicy::validate() const {
  auto bad = [](double v) { return !(v >= 0.0) || !std::isfinite(v); };
  if ((rank_tol_factor && bad(*rank_tol_factor)) || bad(psd_tol) ||
      bad(verify_tol))
    throw Error(ErrorCode::MalformedInput, "tolerances must be finite and >= 0");
  if (samples < 0)
    throw Error(ErrorCode::MalformedInput, "sample count must be >= 0");
}

CVector Rng::complex_vector(Index n) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

CMatrix Rng::complex_matrix(Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

CMatrix random_unitary(Index n, Rng& rng) {
  CMatrix z = rng.complex_matrix(n, n);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& r = qr.matrixQR();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

CMatrix random_hermitian(Index n, Rng& rng) {
  CMatrix z = rng.complex_matrix(n, n);
  return 0.5 * (z + z.adjoint());
}

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermitian_defect(const CMatrix& a) {
  return max_abs(a - a.adjoint());
}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite())
    throw Error(ErrorCode::MalformedInput,
                std::string(what) + ": non-finite entry");
}

namespace {

void require_hermitian(const CMatrix& a, const TolerancePolicy& pol) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  require_finite(a, "hermitian input");
  const double defect = hermitian_defect(a);
  if (defect > pol.psd_tol * (1.0 + max_abs(a))) {
    std::ostringstream os;
    os << "matrix is not hermitian: max |A - A^H| = " << defect;
    throw Error(ErrorCode::NotHermitian, os.str());
  }
}

}  // namespace

EigResult hermitian_eig(const CMatrix& a, const TolerancePolicy& pol) {
  require_hermitian(a, pol);
  const Index n = a.rows();
  EigResult out;
  if (n == 0) {
    out.eigenvalues.resize(0);
    out.eigenvectors.resize(0, 0);
    return out;
  }
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NumericalFailure, "eigensolver did not converge");
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

PsdResult psd_min_eig(const CMatrix& a, const TolerancePolicy& pol) {
  const EigResult eig = hermitian_eig(a, pol);
  PsdResult out;
  if (eig.eigenvalues.size() == 0) return out;
  out.max_eig = eig.eigenvalues(0);
  out.min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
  out.is_psd = out.min_eig >= -pol.psd_tol * std::max(1.0, out.max_eig);
  return out;
}

RankResult rank_range_null(const CMatrix& a, const TolerancePolicy& pol) {
  const EigResult eig = hermitian_eig(a, pol);
  const Index n = a.rows();
  RankResult out;
  out.spectrum = eig.eigenvalues;
  if (n > 0) {
    const double lmax = eig.eigenvalues(0);
    const double lmin = eig.eigenvalues(n - 1);
    if (lmin < -pol.psd_tol * std::max(1.0, lmax)) {
      std::ostringstream os;
      os << "matrix is not positive semidefinite: min eigenvalue " << lmin;
      throw Error(ErrorCode::NotPSD, os.str());
    }
    if (lmax > 0.0) {
      const double cutoff = pol.rank_factor(n) * lmax;
      while (out.rank < n && eig.eigenvalues(out.rank) > cutoff) ++out.rank;
    }
  }
  out.range_basis = eig.eigenvectors.leftCols(out.rank);
  out.quotient_map.resize(out.rank, n);
  for (Index k = 0; k < out.rank; ++k)
    out.quotient_map.row(k) =
        std::sqrt(eig.eigenvalues(k)) * eig.eigenvectors.col(k).adjoint();
  return out;
}

// --- subspaces -------------------------------------------------------------

CMatrix orthonormalize(const CMatrix& vectors, double tol) {
  const Index n = vectors.rows();
  if (vectors.cols() == 0 || n == 0) return CMatrix(n, 0);
  Eigen::JacobiSVD<CMatrix> svd(vectors, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Index r = 0;
  while (r < s.size() && s(r) > tol * std::max(1.0, smax) && s(r) > 0.0) ++r;
  CMatrix u = svd.matrixU().leftCols(r);
  // Fix column phases so the first sizeable entry is real positive; keeps
  // emitted bases reproducible across equivalent inputs.
  for (Index k = 0; k < r; ++k) {
    Index piv = 0;
    double best = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (std::abs(u(i, k)) > best + 1e-12) {
        best = std::abs(u(i, k));
        piv = i;
      }
    }
    if (best > 0.0) u.col(k) *= std::conj(u(piv, k)) / best;
  }
  return u;
}

CMatrix null_space(const CMatrix& m, double tol) {
  const Index n = m.cols();
  if (m.rows() == 0 || n == 0) return CMatrix::Identity(n, n);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Index r = 0;
  while (r < s.size() && s(r) > tol * std::max(1.0, smax)) ++r;
  return svd.matrixV().rightCols(n - r);
}

double distance_to_span(const CMatrix& span, const CVector& x, double tol) {
  if (span.rows() != x.size())
    throw Error(ErrorCode::DimensionMismatch, "vector / subspace size mismatch");
  const CMatrix q = orthonormalize(span, tol);
  return (x - q * (q.adjoint() * x)).norm();
}

bool in_span(const CMatrix& span, const CVector& x, double tol) {
  return distance_to_span(span, x, tol) <= tol * std::max(1.0, x.norm());
}

bool span_contains(const CMatrix& outer, const CMatrix& inner, double tol) {
  if (outer.rows() != inner.rows())
    throw Error(ErrorCode::DimensionMismatch, "subspace ambient sizes differ");
  const CMatrix q = orthonormalize(outer, tol);
  for (Index k = 0; k < inner.cols(); ++k) {
    const CVector x = inner.col(k);
    if ((x - q * (q.adjoint() * x)).norm() > tol * std::max(1.0, x.norm()))
      return false;
  }
  return true;
}

bool span_equal(const CMatrix& a, const CMatrix& b, double tol) {
  return span_contains(a, b, tol) && span_contains(b, a, tol);
}

CMatrix span_intersection(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "subspace ambient sizes differ");
  const Index n = a.rows();
  const CMatrix qa = orthonormalize(a, tol);
  const CMatrix qb = orthonormalize(b, tol);
  CMatrix stacked(2 * n, n);
  stacked.topRows(n) = CMatrix::Identity(n, n) - qa * qa.adjoint();
  stacked.bottomRows(n) = CMatrix::Identity(n, n) - qb * qb.adjoint();
  return orthonormalize(null_space(stacked, tol), tol);
}

Index span_dim(const CMatrix& vectors, double tol) {
  return orthonormalize(vectors, tol).cols();
}

CMatrix lstsq(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "least-squares shape mismatch");
  if (a.cols() == 0) return CMatrix(0, b.cols());
  if (a.rows() == 0) return CMatrix::Zero(a.cols(), b.cols());
  return a.completeOrthogonalDecomposition().solve(b);
}

// --- joint diagonalization ---------------------------------------------------

double max_commutator(const std::vector<CMatrix>& family) {
  double worst = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      worst = std::max(worst, max_abs(family[i] * family[j] -
                                      family[j] * family[i]));
  return worst;
}

namespace {

constexpr int kMaxRefineDepth = 12;

bool restricted_scalar(const std::vector<CMatrix>& family, const CMatrix& w,
                       double tol) {
  const Index k = w.cols();
  for (const CMatrix& b : family) {
    const CMatrix r = w.adjoint() * b * w;
    const Complex mean = r.trace() / static_cast<double>(k);
    if (max_abs(r - mean * CMatrix::Identity(k, k)) > tol) return false;
  }
  return true;
}

void refine(const std::vector<CMatrix>& family, const CMatrix& w, double scale,
            const TolerancePolicy& pol, Rng& rng, int depth,
            std::vector<CMatrix>& blocks) {
  const Index k = w.cols();
  if (k <= 1 || restricted_scalar(family, w, pol.psd_tol * scale)) {
    blocks.push_back(w);
    return;
  }
  if (depth > kMaxRefineDepth)
    throw Error(ErrorCode::NumericalFailure,
                "joint diagonalization failed to split a degenerate block");
  CMatrix combo = CMatrix::Zero(k, k);
  for (const CMatrix& b : family) combo += rng.normal() * (w.adjoint() * b * w);
  combo = 0.5 * (combo + combo.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(combo);
  const RVector vals = es.eigenvalues().reverse();
  const CMatrix vecs = es.eigenvectors().rowwise().reverse();
  const double cluster_tol =
      std::sqrt(pol.psd_tol) * std::max(1.0, vals.cwiseAbs().maxCoeff());
  Index start = 0;
  for (Index i = 1; i <= k; ++i) {
    if (i == k || vals(i - 1) - vals(i) > cluster_tol) {
      refine(family, w * vecs.middleCols(start, i - start), scale, pol, rng,
             depth + 1, blocks);
      start = i;
    }
  }
}

}  // namespace

JointSpectrum joint_diagonalize(const std::vector<CMatrix>& family,
                                const TolerancePolicy& pol) {
  JointSpectrum out;
  if (family.empty()) {
    out.basis.resize(0, 0);
    out.tuples.resize(0, 0);
    return out;
  }
  const Index n = family.front().rows();
  double scale = 1.0;
  for (const CMatrix& b : family) {
    if (b.rows() != n || b.cols() != n)
      throw Error(ErrorCode::DimensionMismatch,
                  "joint diagonalization needs square matrices of equal size");
    require_finite(b, "generator");
    if (hermitian_defect(b) > pol.psd_tol * (1.0 + max_abs(b)))
      throw Error(ErrorCode::NotHermitian, "generator is not hermitian");
    scale = std::max(scale, max_abs(b));
  }
  const double comm = max_commutator(family);
  if (comm > pol.psd_tol * scale * scale) {
    std::ostringstream os;
    os << "family does not commute: max |[B_i, B_j]| = " << comm;
    throw Error(ErrorCode::NotCommuting, os.str());
  }

  Rng rng(pol.seed);
  std::vector<CMatrix> blocks;
  refine(family, CMatrix::Identity(n, n), scale, pol, rng, 0, blocks);
  out.basis.resize(n, n);
  Index col = 0;
  for (const CMatrix& b : blocks) {
    out.basis.middleCols(col, b.cols()) = b;
    col += b.cols();
  }

  const Index m = static_cast<Index>(family.size());
  out.tuples.resize(n, m);
  for (Index j = 0; j < m; ++j) {
    const CMatrix d = out.basis.adjoint() * family[j] * out.basis;
    out.tuples.col(j) = d.diagonal().real();
    CMatrix off = d;
    off.diagonal() = out.tuples.col(j).cast<Complex>();
    out.residual = std::max(out.residual, max_abs(d - off));
    out.residual = std::max(
        out.residual, d.diagonal().imag().cwiseAbs().maxCoeff());
  }
  if (out.residual > pol.verify_tol * scale) {
    std::ostringstream os;
    os << "joint diagonalization residual " << out.residual
       << " exceeds tolerance";
    throw Error(ErrorCode::NumericalFailure, os.str());
  }
  return out;
}

}  // namespace pstar
