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

#include "pstar/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pstar {

namespace {

CVector tensor_vector(const CVector& alpha, const CVector& xi) {
  const Index d = xi.size();
  CVector out(alpha.size() * d);
  for (Index i = 0; i < alpha.size(); ++i) out.segment(i * d, d) = alpha(i) * xi;
  return out;
}

/// Columns lambda(x_c (x) f_p), ordered (c, p), for domain coordinates xs.
CMatrix images_of(const CMatrix& q, const CMatrix& coords, Index d) {
  CMatrix out(q.rows(), coords.cols() * d);
  for (Index c = 0; c < coords.cols(); ++c)
    for (Index p = 0; p < d; ++p) {
      CVector f = CVector::Zero(d);
      f(p) = 1.0;
      out.col(c * d + p) = q * tensor_vector(coords.col(c), f);
    }
  return out;
}

/// a * x for every column x of xs; CoreViolation when a product is undefined.
CMatrix left_multiply(const Algebra& alg, Index a, const CMatrix& xs) {
  CMatrix out(alg.dim(), xs.cols());
  const CVector ea = alg.basis_vector(a);
  for (Index c = 0; c < xs.cols(); ++c) {
    if (!compatible(alg, ea, xs.col(c))) {
      std::ostringstream os;
      os << "product " << alg.labels()[a] << " * (core vector " << c << ") is undefined";
      throw Error(ErrorCode::CoreViolation, os.str());
    }
    out.col(c) = multiply(alg, ea, xs.col(c));
  }
  return out;
}

CMatrix solve_right(const CMatrix& lhs, const CMatrix& rhs) {
  // X lhs = rhs  <=>  lhs^T X^T = rhs^T
  return lstsq(lhs.transpose(), rhs.transpose()).transpose();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

DilationResult dilate(const CBMap& phi, const TolerancePolicy& pol, Mode mode) {
  check_shape(phi);
  const Algebra& alg = *phi.algebra;
  const Index n = alg.dim();
  const Index d = phi.x_dim;

  const CpResult cp = check_completely_positive(phi, pol);
  if (!cp.is_cp) {
    std::ostringstream os;
    os << "map is not completely positive: min eigenvalue " << cp.min_eig;
    throw Error(ErrorCode::NotCompletelyPositive, os.str());
  }
  const CoreReport core_report = check_core(phi, phi.core, pol, mode);
  for (const char* name : {"I1", "I2", "I4_exact"}) {
    const CoreCondition* c = core_report.find(name);
    if (!c->passed)
      throw Error(ErrorCode::CoreViolation,
                  std::string("core condition ") + name + " fails: " + c->witness);
  }

  const RankResult quotient = rank_range_null(gram_matrix(phi), pol);
  DilationResult out;
  out.mode = mode;
  out.core = phi.core;
  out.h_dim = quotient.rank;
  out.lambda_map = quotient.quotient_map;
  out.gram_spectrum = quotient.spectrum;

  const CMatrix core_coords = domain_coords(phi, phi.core, pol);
  const CMatrix spanning = images_of(out.lambda_map, core_coords, d);
  const double scale = std::max(1.0, max_abs(spanning));
  out.pi.reserve(static_cast<std::size_t>(n));
  for (Index a = 0; a < n; ++a) {
    const CMatrix targets = images_of(
        out.lambda_map, domain_coords(phi, left_multiply(alg, a, phi.core), pol), d);
    CMatrix p = out.h_dim == 0 ? CMatrix(0, 0) : solve_right(spanning, targets);
    out.welldef_residual =
        std::max(out.welldef_residual, max_abs(p * spanning - targets) / scale);
    out.pi.push_back(std::move(p));
  }
  if (out.welldef_residual > pol.verify_tol) {
    std::ostringstream os;
    os << "pi is not well defined on cosets: residual " << out.welldef_residual;
    throw Error(ErrorCode::WellDefinednessViolation, os.str());
  }

  if (phi.core.cols() > 0 && in_span(phi.core, alg.unit(), pol.verify_tol))
    out.v = images_of(out.lambda_map, domain_coords(phi, CMatrix(alg.unit()), pol), d);
  return out;
}

CVector lambda_of(const CBMap& phi, const DilationResult& dil, const CVector& x,
                  const CVector& xi, const TolerancePolicy& pol) {
  return dil.lambda_map * tensor_vector(domain_coords(phi, x, pol), xi);
}

CMatrix pi_of(const DilationResult& dil, const CVector& x) {
  CMatrix out = CMatrix::Zero(dil.h_dim, dil.h_dim);
  for (Index k = 0; k < x.size(); ++k)
    if (x(k) != 0.0) out += x(k) * dil.pi[static_cast<std::size_t>(k)];
  return out;
}

double verify_dilation_identity(const CBMap& phi, const DilationResult& dil,
                                const TolerancePolicy& pol) {
  check_shape(phi);
  const Algebra& alg = *phi.algebra;
  const Index n = alg.dim();
  const Index d = phi.x_dim;
  const Index md = phi.domain_dim() * d;
  if (dil.lambda_map.cols() != md || static_cast<Index>(dil.pi.size()) != n ||
      dil.lambda_map.rows() != dil.h_dim)
    throw Error(ErrorCode::DimensionMismatch, "dilation does not match the map");
  for (const CMatrix& p : dil.pi)
    if (p.rows() != dil.h_dim || p.cols() != dil.h_dim)
      throw Error(ErrorCode::DimensionMismatch, "pi matrices must be h_dim x h_dim");

  const CMatrix core_coords = domain_coords(phi, dil.core, pol);
  const CMatrix spanning = images_of(dil.lambda_map, core_coords, d);
  const Index k = dil.core.cols();
  const Index cols = n * k * d;
  CMatrix flat(md, cols);   // coordinates of a x (x) f_p in D (x) X
  CMatrix lifted(dil.h_dim, cols);  // pi(a) lambda(x (x) f_p)
  for (Index a = 0; a < n; ++a) {
    const CMatrix ax = domain_coords(phi, left_multiply(alg, a, dil.core), pol);
    for (Index c = 0; c < k; ++c)
      for (Index p = 0; p < d; ++p) {
        CVector f = CVector::Zero(d);
        f(p) = 1.0;
        const Index col = (a * k + c) * d + p;
        flat.col(col) = tensor_vector(ax.col(c), f);
        lifted.col(col) = dil.pi[static_cast<std::size_t>(a)] * spanning.col(c * d + p);
      }
  }
  const CMatrix gram = gram_matrix(phi);
  return max_abs(flat.adjoint() * gram * flat - lifted.adjoint() * lifted);
}

RepReport verify_representation(const DilationResult& dil, const Algebra& a,
                                const TolerancePolicy& pol, Mode mode) {
  RepReport out;
  const Index n = a.dim();
  const Index h = dil.h_dim;
  if (static_cast<Index>(dil.pi.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "dilation has the wrong number of pi matrices");
  double scale = 1.0;
  for (const CMatrix& p : dil.pi) scale = std::max(scale, max_abs(p));
  const double tol = pol.verify_tol * scale * scale;
  auto note = [&](double& slot, double r, const std::string& w) {
    slot = std::max(slot, r);
    if (r > tol && out.passed) {
      out.passed = false;
      out.witness = w;
    }
  };
  for (Index i = 0; i < n; ++i)
    note(out.star_residual,
         max_abs(pi_of(dil, a.involution().col(i)) - dil.pi[static_cast<std::size_t>(i)].adjoint()),
         "pi(" + a.labels()[i] + "*) != pi(" + a.labels()[i] + ")^H");
  const auto ra = universal_right_indices(a);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (!a.gamma(i, j)) continue;
      if (mode == Mode::Quasi && std::find(ra.begin(), ra.end(), j) == ra.end()) continue;
      note(out.product_residual,
           max_abs(pi_of(dil, a.basis_product(i, j)) -
                   dil.pi[static_cast<std::size_t>(i)] * dil.pi[static_cast<std::size_t>(j)]),
           "pi(" + a.labels()[i] + " " + a.labels()[j] + ") != pi(" + a.labels()[i] + ") pi(" +
               a.labels()[j] + ")");
    }
  note(out.unit_residual, max_abs(pi_of(dil, a.unit()) - CMatrix::Identity(h, h)),
       "pi(1) != I");
  return out;
}

CMatrix largest_core(const CBMap& phi, const DilationResult& dil,
                     const TolerancePolicy& pol) {
  check_shape(phi);
  const Algebra& alg = *phi.algebra;
  const Index n = alg.dim();
  const Index d = phi.x_dim;
  const Index h = dil.h_dim;
  const double tol = pol.verify_tol;
  if (dil.lambda_map.cols() != phi.domain_dim() * d || static_cast<Index>(dil.pi.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "dilation does not match the map");

  const CMatrix ra = universal_multipliers(alg, pol).right;
  const CMatrix candidates = span_intersection(phi.domain, ra, tol);  // D ∩ RA
  const Index r = candidates.cols();
  if (r == 0) return CMatrix(n, 0);
  const CMatrix alpha = domain_coords(phi, candidates, pol);

  const CMatrix spanning =
      orthonormalize(images_of(dil.lambda_map, domain_coords(phi, dil.core, pol), d), tol);
  const CMatrix off_span = CMatrix::Identity(h, h) - spanning * spanning.adjoint();
  const CMatrix dom = orthonormalize(phi.domain, tol);
  const CMatrix off_domain = CMatrix::Identity(n, n) - dom * dom.adjoint();

  std::vector<CMatrix> blocks;
  // lambda(x (x) f_p) in the domain of pi, i.e. in lambda(B (x) X).
  const CMatrix lam_x = images_of(dil.lambda_map, alpha, d);  // columns (t, p)
  for (Index p = 0; p < d; ++p) {
    CMatrix blk(h, r);
    for (Index t = 0; t < r; ++t) blk.col(t) = lam_x.col(t * d + p);
    blocks.push_back(off_span * blk);
  }
  for (Index a = 0; a < n; ++a) {
    const CMatrix ax = left_multiply(alg, a, candidates);
    blocks.push_back(off_domain * ax);  // a x in D
    const CMatrix ax_coords = lstsq(phi.domain, ax);
    const CMatrix lam_ax = images_of(dil.lambda_map, ax_coords, d);
    for (Index p = 0; p < d; ++p) {
      CMatrix blk(h, r);
      for (Index t = 0; t < r; ++t)
        blk.col(t) = lam_ax.col(t * d + p) -
                     dil.pi[static_cast<std::size_t>(a)] * lam_x.col(t * d + p);
      blocks.push_back(blk);
    }
  }
  Index rows = 0;
  for (const CMatrix& b : blocks) rows += b.rows();
  CMatrix stacked(rows, r);
  Index at = 0;
  for (const CMatrix& b : blocks) {
    stacked.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return orthonormalize(candidates * null_space(stacked, tol), tol);
}

EquivalenceResult unitary_equivalence(const DilationResult& d1, const DilationResult& d2,
                                      const CBMap& phi1, const CBMap& phi2,
                                      const TolerancePolicy& pol) {
  check_shape(phi1);
  check_shape(phi2);
  if (!d1.v || !d2.v)
    throw Error(ErrorCode::UnitNotInCore, "unitary equivalence needs V on both dilations");
  const Index n = phi1.algebra->dim();
  const Index d = phi1.x_dim;
  if (phi2.algebra->dim() != n || phi2.x_dim != d ||
      static_cast<Index>(d1.pi.size()) != n || static_cast<Index>(d2.pi.size()) != n ||
      d1.v->cols() != d || d2.v->cols() != d)
    throw Error(ErrorCode::DimensionMismatch, "dilations act on different algebras or spaces");

  auto family = [&](const DilationResult& dil) {
    CMatrix s(dil.h_dim, n * d);
    for (Index a = 0; a < n; ++a)
      s.middleCols(a * d, d) = dil.pi[static_cast<std::size_t>(a)] * *dil.v;
    return s;
  };
  const CMatrix s1 = family(d1);
  const CMatrix s2 = family(d2);
  const CMatrix g1 = s1.adjoint() * s1;
  const CMatrix g2 = s2.adjoint() * s2;
  EquivalenceResult out;
  out.overlap_residual = max_abs(g1 - g2);
  const double scale = std::max({1.0, max_abs(g1), max_abs(g2)});
  if (out.overlap_residual > pol.verify_tol * scale || d1.h_dim != d2.h_dim) {
    std::ostringstream os;
    os << "Gram overlaps of the spanning families differ by " << out.overlap_residual
       << " (h_dim " << d1.h_dim << " vs " << d2.h_dim << ")";
    throw Error(ErrorCode::NotEquivalent, os.str());
  }
  const Index h = d1.h_dim;
  out.u = h == 0 ? CMatrix(0, 0) : solve_right(s1, s2);
  out.unitarity_residual = max_abs(out.u.adjoint() * out.u - CMatrix::Identity(h, h));
  for (Index a = 0; a < n; ++a)
    out.intertwining_residual = std::max(
        out.intertwining_residual,
        max_abs(d2.pi[static_cast<std::size_t>(a)] * out.u - out.u * d1.pi[static_cast<std::size_t>(a)]));
  out.v_residual = max_abs(out.u * *d1.v - *d2.v);
  out.residual = std::max({out.overlap_residual, out.unitarity_residual,
                           out.intertwining_residual, out.v_residual});
  return out;
}

IsometryReport isometry_bound_check(const CBMap& phi, const DilationResult& dil,
                                    const TolerancePolicy& pol) {
  check_shape(phi);
  if (!dil.v) throw Error(ErrorCode::UnitNotInCore, "V is undefined: the unit is not in the core");
  const Algebra& alg = *phi.algebra;
  const CMatrix& v = *dil.v;
  const Index d = phi.x_dim;
  IsometryReport out;
  if (v.rows() > 0) {
    Eigen::JacobiSVD<CMatrix> svd(v);
    out.norm_v = svd.singularValues()(0);
  }
  out.isometry_residual = max_abs(v.adjoint() * v - CMatrix::Identity(d, d));
  out.is_isometry = out.isometry_residual <= pol.verify_tol;
  const CMatrix unit_form = evaluate(phi, alg.unit(), alg.unit(), pol).matrix;
  out.unit_form_residual = max_abs(unit_form - CMatrix::Identity(d, d));
  for (Index a = 0; a < alg.dim(); ++a) {
    const CVector ea = alg.basis_vector(a);
    if (!in_span(phi.domain, ea, pol.verify_tol)) continue;
    const CMatrix form = evaluate(phi, ea, alg.unit(), pol).matrix;
    const CMatrix compressed = v.adjoint() * dil.pi[static_cast<std::size_t>(a)] * v;
    out.factorization_residual =
        std::max(out.factorization_residual, max_abs(form - compressed.transpose()));
  }
  return out;
}

std::vector<CMatrix> commutant(const std::vector<CMatrix>& ms, Index h,
                               const TolerancePolicy& pol) {
  for (const CMatrix& m : ms)
    if (m.rows() != h || m.cols() != h)
      throw Error(ErrorCode::DimensionMismatch, "commutant needs h x h matrices");
  const CMatrix id = CMatrix::Identity(h, h);
  CMatrix stacked(static_cast<Index>(ms.size()) * h * h, h * h);
  for (std::size_t i = 0; i < ms.size(); ++i)
    // vec(M X - X M) = (I (x) M - M^T (x) I) vec(X), column-major vec
    stacked.middleRows(static_cast<Index>(i) * h * h, h * h) =
        kron(id, ms[i]) - kron(ms[i].transpose(), id);
  const CMatrix null = orthonormalize(null_space(stacked, pol.verify_tol), pol.verify_tol);
  std::vector<CMatrix> out;
  for (Index c = 0; c < null.cols(); ++c)
    out.push_back(Eigen::Map<const CMatrix>(null.col(c).data(), h, h));
  return out;
}

namespace {

CMatrix vectorized(const std::vector<CMatrix>& ms, Index h) {
  CMatrix out(h * h, static_cast<Index>(ms.size()));
  for (std::size_t i = 0; i < ms.size(); ++i)
    out.col(static_cast<Index>(i)) = Eigen::Map<const CVector>(ms[i].data(), h * h);
  return out;
}

}  // namespace

CommutantComparison commutant_generation_check(const Algebra& a, const DilationResult& dil,
                                               const CMatrix& generators,
                                               const TolerancePolicy& pol) {
  if (generators.rows() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "generator vectors must have algebra dim coefficients");
  const Index h = dil.h_dim;
  std::vector<CMatrix> gens;
  for (Index c = 0; c < generators.cols(); ++c) gens.push_back(pi_of(dil, generators.col(c)));
  const auto cg = commutant(gens, h, pol);
  const auto ca = commutant(dil.pi, h, pol);
  CommutantComparison out;
  out.generators_dim = static_cast<Index>(cg.size());
  out.algebra_dim = static_cast<Index>(ca.size());
  out.equal = span_equal(vectorized(cg, h), vectorized(ca, h), pol.verify_tol);
  return out;
}

double core_inclusion_residual(const CBMap& phi, const DilationResult& small,
                               const DilationResult& large, const TolerancePolicy& pol) {
  const Index d = phi.x_dim;
  const CMatrix coords = domain_coords(phi, small.core, pol);
  const CMatrix from = images_of(small.lambda_map, coords, d);
  const CMatrix to = images_of(large.lambda_map, coords, d);
  if (small.h_dim == 0) return max_abs(to);
  const CMatrix j = solve_right(from, to);
  double worst = max_abs(j * from - to);
  worst = std::max(worst, max_abs(j.adjoint() * j - CMatrix::Identity(small.h_dim, small.h_dim)));
  for (std::size_t a = 0; a < small.pi.size(); ++a)
    worst = std::max(worst, max_abs(j * small.pi[a] * from - large.pi[a] * j * from));
  return worst;
}

}  // namespace pstar
