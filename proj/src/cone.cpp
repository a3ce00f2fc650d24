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

#include "pstar/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pstar {

PolyMatrix::PolyMatrix(Index rows, Index cols, Index vars)
    : rows_(rows), cols_(cols), vars_(vars),
      entries_(static_cast<std::size_t>(rows * cols)) {
  if (rows < 0 || cols < 0 || vars < 0)
    throw Error(ErrorCode::MalformedInput, "polynomial matrix sizes must be >= 0");
}

void PolyMatrix::add_term(Index k, Index l, const Monomial& exps, Complex c) {
  if (k < 0 || l < 0 || k >= rows_ || l >= cols_)
    throw Error(ErrorCode::MalformedInput, "polynomial entry index out of range");
  if (static_cast<Index>(exps.size()) != vars_)
    throw Error(ErrorCode::ArityMismatch, "monomial arity differs from variable count");
  for (int e : exps)
    if (e < 0) throw Error(ErrorCode::MalformedInput, "negative exponent");
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw Error(ErrorCode::MalformedInput, "non-finite polynomial coefficient");
  (*this)(k, l)[exps] += c;
}

PolyMatrix PolyMatrix::identity(Index n, Index vars) {
  PolyMatrix out(n, n, vars);
  for (Index k = 0; k < n; ++k) out.add_term(k, k, Monomial(static_cast<std::size_t>(vars), 0), 1.0);
  return out;
}

double PolyMatrix::hermitian_defect() const {
  if (rows_ != cols_) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Index k = 0; k < rows_; ++k)
    for (Index l = 0; l < cols_; ++l) {
      const Polynomial& a = (*this)(k, l);
      const Polynomial& b = (*this)(l, k);
      for (const auto& [mono, c] : a) {
        const auto it = b.find(mono);
        const Complex other = it == b.end() ? Complex(0.0) : it->second;
        worst = std::max(worst, std::abs(c - std::conj(other)));
      }
      for (const auto& [mono, c] : b)
        if (!a.count(mono)) worst = std::max(worst, std::abs(c));
    }
  return worst;
}

int PolyMatrix::degree() const {
  int deg = 0;
  for (const Polynomial& p : entries_)
    for (const auto& [mono, c] : p) {
      if (c == 0.0) continue;
      int total = 0;
      for (int e : mono) total += e;
      deg = std::max(deg, total);
    }
  return deg;
}

void PolyMatrix::prune(double tol) {
  for (Polynomial& p : entries_)
    for (auto it = p.begin(); it != p.end();)
      it = std::abs(it->second) <= tol ? p.erase(it) : std::next(it);
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.vars() != b.vars())
    throw Error(ErrorCode::DimensionMismatch, "polynomial matrix shapes differ");
  PolyMatrix out = a;
  for (Index k = 0; k < a.rows(); ++k)
    for (Index l = 0; l < a.cols(); ++l)
      for (const auto& [mono, c] : b(k, l)) out(k, l)[mono] += c;
  return out;
}

PolyMatrix operator*(double s, const PolyMatrix& a) {
  PolyMatrix out = a;
  for (Index k = 0; k < a.rows(); ++k)
    for (Index l = 0; l < a.cols(); ++l)
      for (auto& term : out(k, l)) term.second *= s;
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows() || a.vars() != b.vars())
    throw Error(ErrorCode::DimensionMismatch, "polynomial matrix product shape mismatch");
  PolyMatrix out(a.rows(), b.cols(), a.vars());
  for (Index k = 0; k < a.rows(); ++k)
    for (Index l = 0; l < b.cols(); ++l)
      for (Index s = 0; s < a.cols(); ++s)
        for (const auto& [ma, ca] : a(k, s))
          for (const auto& [mb, cb] : b(s, l)) {
            Monomial mono = ma;
            for (std::size_t v = 0; v < mono.size(); ++v) mono[v] += mb[v];
            out(k, l)[mono] += ca * cb;
          }
  return out;
}

PolyMatrix adjoint(const PolyMatrix& a) {
  PolyMatrix out(a.cols(), a.rows(), a.vars());
  for (Index k = 0; k < a.rows(); ++k)
    for (Index l = 0; l < a.cols(); ++l)
      for (const auto& [mono, c] : a(k, l)) out(l, k)[mono] = std::conj(c);
  return out;
}

CMatrix polymatrix_eval(const PolyMatrix& p, const RVector& point) {
  if (point.size() != p.vars())
    throw Error(ErrorCode::ArityMismatch, "evaluation point arity differs from variable count");
  CMatrix out = CMatrix::Zero(p.rows(), p.cols());
  for (Index k = 0; k < p.rows(); ++k)
    for (Index l = 0; l < p.cols(); ++l)
      for (const auto& [mono, c] : p(k, l)) {
        double term = 1.0;
        for (std::size_t v = 0; v < mono.size(); ++v)
          term *= std::pow(point(static_cast<Index>(v)), mono[v]);
        out(k, l) += c * term;
      }
  return out;
}

CMatrix polymatrix_eval(const PolyMatrix& p, const std::vector<CMatrix>& tuple) {
  if (static_cast<Index>(tuple.size()) != p.vars())
    throw Error(ErrorCode::ArityMismatch, "generator count differs from variable count");
  const Index n = tuple.empty() ? 1 : tuple.front().rows();
  for (const CMatrix& b : tuple)
    if (b.rows() != n || b.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "generators must be square of equal size");
  std::vector<std::vector<CMatrix>> powers(tuple.size());
  auto power = [&](std::size_t v, int e) -> const CMatrix& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(CMatrix::Identity(n, n));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * tuple[v]);
    return cache[static_cast<std::size_t>(e)];
  };
  CMatrix out = CMatrix::Zero(p.rows() * n, p.cols() * n);
  for (Index k = 0; k < p.rows(); ++k)
    for (Index l = 0; l < p.cols(); ++l) {
      auto blk = out.block(k * n, l * n, n, n);
      for (const auto& [mono, c] : p(k, l)) {
        CMatrix term = CMatrix::Identity(n, n);
        for (std::size_t v = 0; v < mono.size(); ++v)
          if (mono[v] > 0) term = term * power(v, mono[v]);
        blk += c * term;
      }
    }
  return out;
}

namespace {

void require_hermitian(const PolyMatrix& p, const TolerancePolicy& pol) {
  if (p.rows() != p.cols())
    throw Error(ErrorCode::DimensionMismatch, "polynomial matrix is not square");
  double scale = 1.0;
  for (Index k = 0; k < p.rows(); ++k)
    for (Index l = 0; l < p.cols(); ++l)
      for (const auto& term : p(k, l)) scale = std::max(scale, std::abs(term.second));
  if (p.hermitian_defect() > pol.psd_tol * scale)
    throw Error(ErrorCode::NotHermitian, "polynomial matrix is not hermitian");
}

constexpr double kGrid[] = {0.0, 1.0, -1.0, 0.5, -0.5, 2.0, -2.0};
constexpr Index kGridSize = 7;

}  // namespace

FalsifyResult pd_falsify(const PolyMatrix& p, const TolerancePolicy& pol, Index samples) {
  require_hermitian(p, pol);
  const Index m = p.vars();
  FalsifyResult out;
  out.min_eig = std::numeric_limits<double>::infinity();
  auto probe = [&](const RVector& point) {
    const PsdResult r = psd_min_eig(polymatrix_eval(p, point), pol);
    ++out.points_checked;
    out.min_eig = std::min(out.min_eig, r.min_eig);
    if (!r.is_psd) {
      out.counterexample = true;
      out.point = point;
      out.min_eig = r.min_eig;
    }
    return out.counterexample;
  };

  Index grid_points = 1;
  for (Index v = 0; v < m && grid_points <= samples; ++v) grid_points *= kGridSize;
  std::vector<Index> digit(static_cast<std::size_t>(m), 0);
  for (Index g = 0; g < std::min(grid_points, samples); ++g) {
    RVector point(m);
    for (Index v = 0; v < m; ++v) point(v) = kGrid[digit[static_cast<std::size_t>(v)]];
    if (probe(point)) return out;
    for (Index v = 0; v < m; ++v) {
      if (++digit[static_cast<std::size_t>(v)] < kGridSize) break;
      digit[static_cast<std::size_t>(v)] = 0;
    }
  }
  Rng rng(pol.seed);
  while (out.points_checked < samples) {
    RVector point(m);
    for (Index v = 0; v < m; ++v) point(v) = rng.cauchy();
    if (probe(point)) return out;
  }
  if (out.points_checked == 0) out.min_eig = 0.0;
  return out;
}

PolyMatrix sos_member(const PolyMatrix& q) {
  PolyMatrix out = adjoint(q) * q;
  out.prune();
  return out;
}

bool ConeReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const ConeItemReport& r) {
    return r.sampled_pass && r.exact_pass;
  });
}

ConeReport cone_cp_check(const GeneratorTuple& gens, const std::vector<PolyMatrix>& ps,
                         Index trials, Index falsify_samples, const TolerancePolicy& pol) {
  const std::vector<CMatrix>& images = gens.represented();
  const Index m = static_cast<Index>(gens.generators.size());
  if (static_cast<Index>(images.size()) != m)
    throw Error(ErrorCode::ArityMismatch, "representation images must match the generators");
  double gscale = 1.0;
  for (const CMatrix& b : gens.generators) gscale = std::max(gscale, max_abs(b));
  if (max_commutator(gens.generators) > pol.psd_tol * gscale * gscale)
    throw Error(ErrorCode::NotCommuting, "generators do not commute");
  for (const PolyMatrix& p : ps) {
    if (p.vars() != m)
      throw Error(ErrorCode::ArityMismatch, "polynomial variable count differs from generator count");
    const FalsifyResult f = pd_falsify(p, pol, falsify_samples);
    if (f.counterexample) {
      std::ostringstream os;
      os << "polynomial matrix is not positive semi-definite at (";
      for (Index v = 0; v < f.point.size(); ++v) os << (v ? ", " : "") << f.point(v);
      os << "): min eigenvalue " << f.min_eig;
      throw Error(ErrorCode::NotPositiveDefinite, os.str());
    }
  }

  ConeReport report;
  const JointSpectrum js = joint_diagonalize(images, pol);
  report.joint_residual = js.residual;
  report.joint_spectrum = js.tuples;
  const Index dim = images.empty() ? 1 : images.front().rows();
  const CMatrix w = images.empty() ? CMatrix::Identity(1, 1) : js.basis;
  Rng rng(pol.seed);

  for (const PolyMatrix& p : ps) {
    ConeItemReport item;
    const Index n = p.rows();
    const CMatrix big = polymatrix_eval(p, images);
    const double mscale = std::max(1.0, max_abs(big));

    item.sampled_min = std::numeric_limits<double>::infinity();
    for (Index t = 0; t < trials; ++t) {
      std::vector<CVector> xi;
      double norm2 = 0.0;
      for (Index k = 0; k < n; ++k) {
        xi.push_back(rng.complex_vector(dim));
        norm2 += xi.back().squaredNorm();
      }
      Complex s = 0.0;
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
          s += xi[static_cast<std::size_t>(l)].dot(big.block(k * dim, l * dim, dim, dim) *
                                                   xi[static_cast<std::size_t>(k)]);
      const double normalized = s.real() / (mscale * std::max(norm2, 1e-300));
      item.sampled_min = std::min(item.sampled_min, normalized);
      if (normalized < -pol.psd_tol) item.sampled_pass = false;
    }
    if (trials == 0) item.sampled_min = 0.0;

    item.exact_min_eig = std::numeric_limits<double>::infinity();
    const Index points = images.empty() ? 1 : js.tuples.rows();
    CMatrix expected = CMatrix::Zero(n * dim, n * dim);
    for (Index r = 0; r < points; ++r) {
      const RVector lambda = images.empty() ? RVector(0) : RVector(js.tuples.row(r).transpose());
      const CMatrix at = polymatrix_eval(p, lambda);
      const PsdResult psd = psd_min_eig(at, pol);
      item.exact_min_eig = std::min(item.exact_min_eig, psd.min_eig);
      if (!psd.is_psd) item.exact_pass = false;
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) expected(k * dim + r, l * dim + r) = at(k, l);
    }
    CMatrix lift = CMatrix::Zero(n * dim, n * dim);
    for (Index k = 0; k < n; ++k) lift.block(k * dim, k * dim, dim, dim) = w;
    item.block_residual = max_abs(lift.adjoint() * big * lift - expected);
    report.items.push_back(item);
  }
  return report;
}

}  // namespace pstar
