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

#include "pstar/palgebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace pstar {

namespace {

constexpr double kSupportTol = 1e-12;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedInput, "algebra: " + what);
}

}  // namespace

Algebra::Algebra(AlgebraData data) : data_(std::move(data)) {
  dim_ = static_cast<Index>(data_.labels.size());
  if (dim_ == 0) malformed("dimension must be positive");
  if (data_.involution.rows() != dim_ || data_.involution.cols() != dim_)
    malformed("involution must be dim x dim");
  require_finite(data_.involution, "involution");
  if (static_cast<Index>(data_.gamma.size()) != dim_) malformed("gamma must be dim x dim");
  for (const auto& row : data_.gamma)
    if (static_cast<Index>(row.size()) != dim_) malformed("gamma must be dim x dim");
  if (data_.unit.size() != dim_) malformed("unit must have dim coefficients");
  require_finite(data_.unit, "unit");
  if (data_.designated_subalgebra &&
      data_.designated_subalgebra->rows() != dim_)
    malformed("designated subalgebra vectors must have dim coefficients");

  products_.assign(static_cast<std::size_t>(dim_ * dim_), CVector::Zero(dim_));
  std::set<std::tuple<Index, Index, Index>> seen;
  for (const StructureConstant& c : data_.structure_constants) {
    if (c.i < 0 || c.j < 0 || c.k < 0 || c.i >= dim_ || c.j >= dim_ ||
        c.k >= dim_)
      malformed("structure constant index out of range");
    if (!std::isfinite(c.value.real()) || !std::isfinite(c.value.imag()))
      malformed("non-finite structure constant");
    if (!data_.gamma[c.i][c.j]) {
      std::ostringstream os;
      os << "structure constant given for undefined product (" << c.i << ", "
         << c.j << ")";
      malformed(os.str());
    }
    if (!seen.insert({c.i, c.j, c.k}).second)
      malformed("duplicate structure constant");
    products_[static_cast<std::size_t>(c.i * dim_ + c.j)](c.k) += c.value;
  }
  std::sort(data_.structure_constants.begin(), data_.structure_constants.end(),
            [](const StructureConstant& a, const StructureConstant& b) {
              return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
            });
}

bool Algebra::is_total() const {
  for (const auto& row : data_.gamma)
    for (bool g : row)
      if (!g) return false;
  return true;
}

CVector Algebra::basis_vector(Index i) const {
  CVector e = CVector::Zero(dim_);
  e(i) = 1.0;
  return e;
}

std::vector<Index> support(const CVector& x) {
  std::vector<Index> out;
  if (x.size() == 0) return out;
  const double cut = kSupportTol * std::max(1.0, x.cwiseAbs().maxCoeff());
  for (Index i = 0; i < x.size(); ++i)
    if (std::abs(x(i)) > cut) out.push_back(i);
  return out;
}

bool compatible(const Algebra& a, const CVector& x, const CVector& y) {
  for (Index i : support(x))
    for (Index j : support(y))
      if (!a.gamma(i, j)) return false;
  return true;
}

CVector multiply(const Algebra& a, const CVector& x, const CVector& y) {
  if (x.size() != a.dim() || y.size() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "element size differs from algebra dim");
  const auto sx = support(x);
  const auto sy = support(y);
  CVector out = CVector::Zero(a.dim());
  for (Index i : sx) {
    for (Index j : sy) {
      if (!a.gamma(i, j)) {
        std::ostringstream os;
        os << "product undefined: (" << a.labels()[i] << ", " << a.labels()[j]
           << ") not in Gamma";
        throw Error(ErrorCode::NotInGamma, os.str());
      }
      out += x(i) * y(j) * a.basis_product(i, j);
    }
  }
  return out;
}

CVector involute(const Algebra& a, const CVector& x) {
  if (x.size() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "element size differs from algebra dim");
  return a.involution() * x.conjugate();
}

namespace {

std::vector<Index> right_indices(const Algebra& a, const std::vector<Index>& sx) {
  std::vector<Index> out;
  for (Index j = 0; j < a.dim(); ++j) {
    bool ok = true;
    for (Index i : sx) ok = ok && a.gamma(i, j);
    if (ok) out.push_back(j);
  }
  return out;
}

CMatrix coordinate_span(Index dim, const std::vector<Index>& idx) {
  CMatrix out = CMatrix::Zero(dim, static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out(idx[c], static_cast<Index>(c)) = 1.0;
  return out;
}

CMatrix involution_image(const Algebra& a, const std::vector<Index>& idx) {
  CMatrix out(a.dim(), static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c)
    out.col(static_cast<Index>(c)) = a.involution().col(idx[c]);
  return out;
}

std::string label_list(const Algebra& a, std::initializer_list<Index> idx) {
  std::string s = "(";
  bool first = true;
  for (Index i : idx) {
    if (!first) s += ", ";
    s += a.labels()[i];
    first = false;
  }
  return s + ")";
}

}  // namespace

CMatrix multiplier_space(const Algebra& a, const CVector& x, Side side) {
  if (x.size() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "element size differs from algebra dim");
  if (support(x).empty())
    throw Error(ErrorCode::ZeroElement, "multiplier space of the zero element");
  if (side == Side::Right) return coordinate_span(a.dim(), right_indices(a, support(x)));
  // y in L(x)  <=>  (y, x) in Gamma  <=>  (x^*, y^*) in Gamma  <=>  y^* in R(x^*)
  return involution_image(a, right_indices(a, support(involute(a, x))));
}

std::vector<Index> universal_right_indices(const Algebra& a) {
  std::vector<Index> all(static_cast<std::size_t>(a.dim()));
  for (Index i = 0; i < a.dim(); ++i) all[static_cast<std::size_t>(i)] = i;
  return right_indices(a, all);
}

UniversalMultipliers universal_multipliers(const Algebra& a,
                                           const TolerancePolicy& pol) {
  UniversalMultipliers out;
  const auto ra = universal_right_indices(a);
  out.right = coordinate_span(a.dim(), ra);
  out.left = involution_image(a, ra);
  out.both = span_intersection(out.left, out.right, pol.verify_tol);
  return out;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate_axioms(const Algebra& a, const TolerancePolicy& pol) {
  const Index n = a.dim();
  const double tol = pol.verify_tol;
  ValidationReport report;

  {
    AxiomCheck c;
    c.name = "involution_squared";
    const CMatrix& s = a.involution();
    const CMatrix defect = s * s.conjugate() - CMatrix::Identity(n, n);
    c.residual = max_abs(defect);
    c.passed = c.residual <= tol;
    if (!c.passed) {
      Index r = 0, col = 0;
      defect.cwiseAbs().maxCoeff(&r, &col);
      c.witness = "x = " + a.labels()[col] + ": x** != x";
    }
    report.checks.push_back(c);
  }

  {
    AxiomCheck c;
    c.name = "gamma_involution_symmetry";
    for (Index i = 0; i < n && c.passed; ++i) {
      for (Index j = 0; j < n && c.passed; ++j) {
        if (!a.gamma(i, j)) continue;
        const auto sj = support(a.involution().col(j));
        const auto si = support(a.involution().col(i));
        for (Index k : sj)
          for (Index l : si)
            if (c.passed && !a.gamma(k, l)) {
              c.passed = false;
              c.residual = 1.0;
              c.witness = label_list(a, {i, j}) + " in Gamma but " +
                          label_list(a, {k, l}) + " is not";
            }
      }
    }
    report.checks.push_back(c);
  }

  {
    AxiomCheck c;
    c.name = "unit";
    const CVector& u = a.unit();
    auto fail = [&](double r, const std::string& w) {
      c.residual = std::max(c.residual, r);
      if (c.passed) c.witness = w;
      c.passed = false;
    };
    const double star = (involute(a, u) - u).cwiseAbs().maxCoeff();
    c.residual = star;
    if (star > tol) fail(star, "1* != 1");
    for (Index j = 0; j < n; ++j) {
      const CVector e = a.basis_vector(j);
      if (!compatible(a, u, e) || !compatible(a, e, u)) {
        fail(1.0, "1 not compatible with " + a.labels()[j]);
        continue;
      }
      const double left = (multiply(a, u, e) - e).cwiseAbs().maxCoeff();
      const double right = (multiply(a, e, u) - e).cwiseAbs().maxCoeff();
      c.residual = std::max({c.residual, left, right});
      if (left > tol) fail(left, "1 * " + a.labels()[j] + " != " + a.labels()[j]);
      if (right > tol) fail(right, a.labels()[j] + " * 1 != " + a.labels()[j]);
    }
    report.checks.push_back(c);
  }

  {
    AxiomCheck c;
    c.name = "product_involution";
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (!a.gamma(i, j)) continue;
        const CVector xs = a.involution().col(i);
        const CVector ys = a.involution().col(j);
        const CVector lhs = involute(a, a.basis_product(i, j));
        if (!compatible(a, ys, xs)) {
          if (c.passed) c.witness = label_list(a, {i, j}) + ": y* x* undefined";
          c.passed = false;
          c.residual = std::max(c.residual, 1.0);
          continue;
        }
        const double r = (lhs - multiply(a, ys, xs)).cwiseAbs().maxCoeff();
        c.residual = std::max(c.residual, r);
        if (r > tol && c.passed) {
          c.passed = false;
          c.witness = label_list(a, {i, j}) + ": (x y)* != y* x*";
        }
      }
    }
    report.checks.push_back(c);
  }
  return report;
}

SemiAssociativity check_semi_associative(const Algebra& a,
                                         const TolerancePolicy& pol) {
  SemiAssociativity out;
  const Index n = a.dim();
  const auto ra = universal_right_indices(a);
  for (Index i = 0; i < n; ++i) {
    const CVector x = a.basis_vector(i);
    for (Index j = 0; j < n; ++j) {
      if (!a.gamma(i, j)) continue;
      const CVector y = a.basis_vector(j);
      const CVector xy = a.basis_product(i, j);
      for (Index k : ra) {
        const CVector z = a.basis_vector(k);
        const CVector yz = a.basis_product(j, k);
        if (!compatible(a, x, yz)) {
          if (out.holds)
            out.witness = label_list(a, {i, j, k}) + ": y z not in R(x)";
          out.holds = false;
          out.residual = std::max(out.residual, 1.0);
          continue;
        }
        const double r =
            (multiply(a, xy, z) - multiply(a, x, yz)).cwiseAbs().maxCoeff();
        out.residual = std::max(out.residual, r);
        if (r > pol.verify_tol && out.holds) {
          out.holds = false;
          out.witness = label_list(a, {i, j, k}) + ": (x y) z != x (y z)";
        }
      }
    }
  }
  return out;
}

}  // namespace pstar
