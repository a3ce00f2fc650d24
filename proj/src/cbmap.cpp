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

#include "pstar/cbmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pstar {

namespace {

std::string index_witness(const char* what, std::initializer_list<Index> idx) {
  std::ostringstream os;
  os << what << " (";
  bool first = true;
  for (Index i : idx) {
    if (!first) os << ", ";
    os << i;
    first = false;
  }
  os << ")";
  return os.str();
}

/// alpha (x) I_d: column p is alpha (x) f_p in the flattened D (x) X space.
CMatrix tensor_with_identity(const CVector& alpha, Index d) {
  const Index m = alpha.size();
  CMatrix out = CMatrix::Zero(m * d, d);
  for (Index i = 0; i < m; ++i)
    for (Index p = 0; p < d; ++p) out(i * d + p, p) = alpha(i);
  return out;
}

CVector tensor_vector(const CVector& alpha, const CVector& xi) {
  const Index d = xi.size();
  CVector out(alpha.size() * d);
  for (Index i = 0; i < alpha.size(); ++i) out.segment(i * d, d) = alpha(i) * xi;
  return out;
}

/// Evaluates Phi on domain coordinates through the flattened Gram matrix.
class FormEvaluator {
 public:
  explicit FormEvaluator(const CBMap& phi)
      : d_(phi.x_dim), gram_(gram_matrix(phi)) {}

  CMatrix form(const CVector& alpha, const CVector& beta) const {
    return (tensor_with_identity(beta, d_).adjoint() * gram_ *
            tensor_with_identity(alpha, d_))
        .transpose();
  }

 private:
  Index d_;
  CMatrix gram_;
};

}  // namespace

void check_shape(const CBMap& phi) {
  if (!phi.algebra) throw Error(ErrorCode::MalformedInput, "map has no algebra");
  const Index n = phi.algebra->dim();
  if (phi.domain.rows() != n)
    throw Error(ErrorCode::DimensionMismatch, "domain vectors must have algebra dim coefficients");
  if (phi.core.rows() != n && phi.core.cols() > 0)
    throw Error(ErrorCode::DimensionMismatch, "core vectors must have algebra dim coefficients");
  if (phi.x_dim <= 0) throw Error(ErrorCode::MalformedInput, "x_dim must be positive");
  const Index m = phi.domain_dim();
  if (static_cast<Index>(phi.tensor.size()) != m * m * phi.x_dim * phi.x_dim)
    throw Error(ErrorCode::DimensionMismatch, "tensor size must be m*m*d*d");
  require_finite(phi.domain, "domain");
  for (const Complex& c : phi.tensor)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::MalformedInput, "tensor: non-finite entry");
}

Complex SesquiForm::value(const CVector& xi, const CVector& eta) const {
  return (xi.transpose() * matrix * eta.conjugate())(0, 0);
}

double hermitian_symmetry_defect(const CBMap& phi) {
  const Index m = phi.domain_dim();
  const Index d = phi.x_dim;
  double worst = 0.0;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index p = 0; p < d; ++p)
        for (Index q = 0; q < d; ++q)
          worst = std::max(worst, std::abs(phi.at(i, j, p, q) -
                                           std::conj(phi.at(j, i, q, p))));
  return worst;
}

CMatrix gram_matrix(const CBMap& phi) {
  check_shape(phi);
  const Index m = phi.domain_dim();
  const Index d = phi.x_dim;
  CMatrix k(m * d, m * d);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index p = 0; p < d; ++p)
        for (Index q = 0; q < d; ++q) k(j * d + q, i * d + p) = phi.at(i, j, p, q);
  return k;
}

CMatrix domain_coords(const CBMap& phi, const CMatrix& xs, const TolerancePolicy& pol) {
  if (xs.rows() != phi.domain.rows())
    throw Error(ErrorCode::DimensionMismatch, "element size differs from algebra dim");
  const CMatrix alpha = lstsq(phi.domain, xs);
  for (Index c = 0; c < xs.cols(); ++c) {
    const double miss = (phi.domain * alpha.col(c) - xs.col(c)).norm();
    if (miss > pol.verify_tol * std::max(1.0, xs.col(c).norm())) {
      std::ostringstream os;
      os << "element is not in the domain (distance " << miss << ")";
      throw Error(ErrorCode::NotInDomain, os.str());
    }
  }
  return alpha;
}

CVector domain_coords(const CBMap& phi, const CVector& x, const TolerancePolicy& pol) {
  return domain_coords(phi, CMatrix(x), pol).col(0);
}

SesquiForm evaluate_coords(const CBMap& phi, const CVector& alpha,
                           const CVector& beta) {
  const Index m = phi.domain_dim();
  const Index d = phi.x_dim;
  if (alpha.size() != m || beta.size() != m)
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector size differs from domain dim");
  SesquiForm out{CMatrix::Zero(d, d)};
  for (Index i = 0; i < m; ++i) {
    if (alpha(i) == 0.0) continue;
    for (Index j = 0; j < m; ++j) {
      const Complex w = alpha(i) * std::conj(beta(j));
      if (w == 0.0) continue;
      for (Index p = 0; p < d; ++p)
        for (Index q = 0; q < d; ++q) out.matrix(p, q) += w * phi.at(i, j, p, q);
    }
  }
  return out;
}

SesquiForm evaluate(const CBMap& phi, const CVector& x, const CVector& y,
                    const TolerancePolicy& pol) {
  check_shape(phi);
  return evaluate_coords(phi, domain_coords(phi, x, pol), domain_coords(phi, y, pol));
}

namespace {

void require_symmetric(const CBMap& phi, const TolerancePolicy& pol) {
  check_shape(phi);
  double scale = 0.0;
  for (const Complex& c : phi.tensor) scale = std::max(scale, std::abs(c));
  const double defect = hermitian_symmetry_defect(phi);
  if (defect > pol.psd_tol * (1.0 + scale)) {
    std::ostringstream os;
    os << "tensor is not hermitian-symmetric: defect " << defect;
    throw Error(ErrorCode::NotHermitianSymmetric, os.str());
  }
}

}  // namespace

CpResult check_completely_positive(const CBMap& phi, const TolerancePolicy& pol) {
  require_symmetric(phi, pol);
  const PsdResult r = psd_min_eig(gram_matrix(phi), pol);
  return {r.is_psd, r.min_eig, r.max_eig};
}

PositivityResult check_positive(const CBMap& phi, const TolerancePolicy& pol) {
  require_symmetric(phi, pol);
  const Index m = phi.domain_dim();
  PositivityResult out;
  bool first = true;
  auto probe = [&](const CVector& alpha, const std::string& label) {
    const CMatrix form = evaluate_coords(phi, alpha, alpha).matrix;
    const PsdResult r = psd_min_eig(form, pol);
    if (first || r.min_eig < out.min_eig) out.min_eig = r.min_eig;
    first = false;
    if (!r.is_psd && out.positive) {
      out.positive = false;
      out.witness = label;
    }
  };
  for (Index i = 0; i < m; ++i) {
    CVector e = CVector::Zero(m);
    e(i) = 1.0;
    probe(e, index_witness("domain basis", {i}));
  }
  Rng rng(pol.seed);
  for (int s = 0; s < pol.samples; ++s)
    probe(rng.complex_vector(m), index_witness("random sample", {s}));
  return out;
}

const char* to_string(Mode mode) { return mode == Mode::Full ? "full" : "quasi"; }

Mode mode_from_string(const std::string& s) {
  if (s == "quasi") return Mode::Quasi;
  if (s == "full") return Mode::Full;
  throw Error(ErrorCode::MalformedInput, "mode must be 'quasi' or 'full', got '" + s + "'");
}

const CoreCondition* CoreReport::find(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

bool CoreReport::passed() const {
  for (const auto& c : conditions) {
    if (c.name == "I4_sampled") continue;
    if (!c.passed) return false;
  }
  return true;
}

CoreReport check_core(const CBMap& phi, const CMatrix& core,
                      const TolerancePolicy& pol, Mode mode) {
  check_shape(phi);
  const Algebra& alg = *phi.algebra;
  const Index n = alg.dim();
  const Index d = phi.x_dim;
  const Index k = core.cols();
  const double tol = pol.verify_tol;
  if (k > 0 && core.rows() != n)
    throw Error(ErrorCode::DimensionMismatch, "core vectors must have algebra dim coefficients");

  CoreReport report;
  report.mode = mode;
  const UniversalMultipliers um = universal_multipliers(alg, pol);
  report.totally_invariant = span_equal(core, um.right, tol);

  CoreCondition c1;
  c1.name = "I1";
  for (Index c = 0; c < k && c1.passed; ++c) {
    if (!in_span(um.right, core.col(c), tol)) {
      c1.passed = false;
      c1.residual = distance_to_span(um.right, core.col(c), tol);
      c1.witness = index_witness("core vector not in RA", {c});
    }
  }
  if (k > 0 && !span_contains(phi.domain, core, tol) && c1.passed) {
    c1.passed = false;
    c1.witness = "core is not contained in the domain";
  }
  report.conditions.push_back(c1);

  // Products a * x for every basis a and core vector x, kept for (I)3 / (I)3'.
  CoreCondition c2;
  c2.name = "I2";
  std::vector<CVector> products(static_cast<std::size_t>(n * k));
  for (Index a = 0; a < n; ++a) {
    for (Index c = 0; c < k; ++c) {
      const CVector ea = alg.basis_vector(a);
      if (!compatible(alg, ea, core.col(c))) {
        if (c2.passed) c2.witness = index_witness("product undefined (a, core vector)", {a, c});
        c2.passed = false;
        c2.residual = 1.0;
        continue;
      }
      CVector prod = multiply(alg, ea, core.col(c));
      const double miss = distance_to_span(phi.domain, prod, tol);
      if (miss > tol * std::max(1.0, prod.norm())) {
        if (c2.passed) c2.witness = index_witness("a * x not in D (a, core vector)", {a, c});
        c2.passed = false;
        c2.residual = std::max(c2.residual, miss);
      }
      products[static_cast<std::size_t>(a * k + c)] = std::move(prod);
    }
  }
  report.conditions.push_back(c2);

  const FormEvaluator forms(phi);
  const bool structural = c1.passed && c2.passed;
  CMatrix core_coords;
  if (structural) core_coords = domain_coords(phi, core, pol);
  double scale = 0.0;
  for (const Complex& t : phi.tensor) scale = std::max(scale, std::abs(t));
  const double form_tol = tol * std::max(1.0, scale);

  CoreCondition c3;
  c3.name = "I3";
  if (!structural) {
    c3.passed = false;
    c3.witness = "skipped: (I)1 or (I)2 failed";
  } else {
    for (Index a = 0; a < n; ++a) {
      const CVector astar = involute(alg, alg.basis_vector(a));
      for (Index x = 0; x < k; ++x) {
        const CVector ax = domain_coords(phi, products[static_cast<std::size_t>(a * k + x)], pol);
        for (Index y = 0; y < k; ++y) {
          const CVector asy = domain_coords(phi, multiply(alg, astar, core.col(y)), pol);
          const double r = max_abs(forms.form(ax, core_coords.col(y)) -
                                   forms.form(core_coords.col(x), asy));
          c3.residual = std::max(c3.residual, r);
          if (r > form_tol && c3.passed) {
            c3.passed = false;
            c3.witness = index_witness("Phi(a x, y) != Phi(x, a* y) at (a, x, y)", {a, x, y});
          }
        }
      }
    }
  }
  report.conditions.push_back(c3);

  // (I)4: compare quotient images of B (x) X and D (x) X.
  const RankResult quotient = rank_range_null(gram_matrix(phi), pol);
  const CMatrix& q = quotient.quotient_map;
  const Index h = quotient.rank;
  CoreCondition c4;
  c4.name = "I4_exact";
  CoreCondition c4s;
  c4s.name = "I4_sampled";
  if (!structural) {
    c4.passed = c4s.passed = false;
    c4.witness = c4s.witness = "skipped: (I)1 or (I)2 failed";
  } else if (h > 0) {
    const double qscale = std::max(1.0, max_abs(q));
    CMatrix core_images(h, k * d);
    for (Index c = 0; c < k; ++c)
      core_images.middleCols(c * d, d) = q * tensor_with_identity(core_coords.col(c), d);
    const CMatrix basis = orthonormalize(core_images, tol);
    for (Index u = 0; u < q.cols(); ++u) {
      const CVector v = q.col(u);
      const double miss = (v - basis * (basis.adjoint() * v)).norm();
      c4.residual = std::max(c4.residual, miss);
      if (miss > tol * qscale && c4.passed) {
        c4.passed = false;
        c4.witness = index_witness("lambda(d_i (x) f_p) outside lambda(B (x) X) at (i, p)",
                                   {u / d, u % d});
      }
    }
    Rng rng(pol.seed);
    const Index m = phi.domain_dim();
    for (int s = 0; s < pol.samples && c4s.passed; ++s) {
      const CVector xi = rng.complex_vector(d);
      CMatrix span(h, k);
      for (Index c = 0; c < k; ++c) span.col(c) = q * tensor_vector(core_coords.col(c), xi);
      const CMatrix sb = orthonormalize(span, tol);
      for (Index i = 0; i < m; ++i) {
        CVector e = CVector::Zero(m);
        e(i) = 1.0;
        const CVector v = q * tensor_vector(e, xi);
        const double miss = (v - sb * (sb.adjoint() * v)).norm();
        c4s.residual = std::max(c4s.residual, miss);
        if (miss > tol * std::max(qscale, v.norm()) && c4s.passed) {
          c4s.passed = false;
          c4s.witness = index_witness("lambda(d_i (x) xi) outside lambda(B (x) xi) at (i, sample)",
                                      {i, s});
        }
      }
    }
  }
  report.conditions.push_back(c4);
  report.conditions.push_back(c4s);

  if (mode == Mode::Full) {
    CoreCondition c3p;
    c3p.name = "I3_prime";
    if (!structural) {
      c3p.passed = false;
      c3p.witness = "skipped: (I)1 or (I)2 failed";
    } else {
      for (Index a = 0; a < n; ++a) {
        const CVector astar = involute(alg, alg.basis_vector(a));
        for (Index b = 0; b < n; ++b) {
          if (!alg.gamma(a, b)) continue;
          const CVector ab = alg.basis_product(a, b);
          for (Index x = 0; x < k; ++x) {
            const CVector asx = domain_coords(phi, multiply(alg, astar, core.col(x)), pol);
            for (Index y = 0; y < k; ++y) {
              const CVector by = domain_coords(phi, products[static_cast<std::size_t>(b * k + y)], pol);
              const CVector aby = domain_coords(phi, multiply(alg, ab, core.col(y)), pol);
              const double r = max_abs(forms.form(asx, by) -
                                       forms.form(core_coords.col(x), aby));
              c3p.residual = std::max(c3p.residual, r);
              if (r > form_tol && c3p.passed) {
                c3p.passed = false;
                c3p.witness = index_witness(
                    "Phi(a* x, b y) != Phi(x, (a b) y) at (a, b, x, y)", {a, b, x, y});
              }
            }
          }
        }
      }
    }
    report.conditions.push_back(c3p);
  }
  return report;
}

double representation_defect(const Algebra& a, const std::vector<CMatrix>& rep,
                             std::string* witness) {
  const Index n = a.dim();
  double worst = 0.0;
  auto note = [&](double r, const std::string& w) {
    if (r > worst) {
      worst = r;
      if (witness) *witness = w;
    }
  };
  auto combine = [&](const CVector& x) {
    CMatrix out = CMatrix::Zero(rep[0].rows(), rep[0].cols());
    for (Index k = 0; k < n; ++k)
      if (x(k) != 0.0) out += x(k) * rep[static_cast<std::size_t>(k)];
    return out;
  };
  for (Index i = 0; i < n; ++i)
    note(max_abs(combine(a.involution().col(i)) - rep[static_cast<std::size_t>(i)].adjoint()),
         "pi(" + a.labels()[i] + "*) != pi(" + a.labels()[i] + ")^H");
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (a.gamma(i, j))
        note(max_abs(combine(a.basis_product(i, j)) -
                     rep[static_cast<std::size_t>(i)] * rep[static_cast<std::size_t>(j)]),
             "pi(" + a.labels()[i] + " " + a.labels()[j] + ") != pi(" + a.labels()[i] +
                 ") pi(" + a.labels()[j] + ")");
  return worst;
}

CBMap from_rep_and_V(const std::vector<CMatrix>& rep, const CMatrix& v,
                     std::shared_ptr<const Algebra> algebra,
                     const TolerancePolicy& pol) {
  if (!algebra) throw Error(ErrorCode::MalformedInput, "missing algebra");
  const Index n = algebra->dim();
  if (static_cast<Index>(rep.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "need one representation matrix per basis element");
  const Index carrier = v.rows();
  double scale = 1.0;
  for (const CMatrix& p : rep) {
    if (p.rows() != carrier || p.cols() != carrier)
      throw Error(ErrorCode::DimensionMismatch, "representation matrices must match V's carrier");
    require_finite(p, "representation");
    scale = std::max(scale, max_abs(p));
  }
  require_finite(v, "V");
  std::string witness;
  const double defect = representation_defect(*algebra, rep, &witness);
  if (defect > pol.verify_tol * scale * scale)
    throw Error(ErrorCode::NotARepresentation, "not a *-representation: " + witness);

  CBMap phi;
  phi.algebra = algebra;
  phi.domain = CMatrix::Identity(n, n);
  phi.x_dim = v.cols();
  phi.tensor.assign(static_cast<std::size_t>(n * n * phi.x_dim * phi.x_dim), 0.0);
  std::vector<CMatrix> images;
  images.reserve(rep.size());
  for (const CMatrix& p : rep) images.push_back(p * v);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const CMatrix g = images[static_cast<std::size_t>(j)].adjoint() *
                        images[static_cast<std::size_t>(i)];
      for (Index p = 0; p < phi.x_dim; ++p)
        for (Index q = 0; q < phi.x_dim; ++q) phi.at(i, j, p, q) = g(q, p);
    }
  phi.core = universal_multipliers(*algebra, pol).right;
  return phi;
}

CBMap lift_linear_map(const std::vector<CMatrix>& f,
                      std::shared_ptr<const Algebra> algebra,
                      const TolerancePolicy& pol) {
  (void)pol;
  if (!algebra) throw Error(ErrorCode::MalformedInput, "missing algebra");
  const Algebra& alg = *algebra;
  const Index n = alg.dim();
  if (!alg.is_total())
    throw Error(ErrorCode::PartialProductUndefined,
                "linear-map lift needs a total algebra (b* a always defined)");
  if (static_cast<Index>(f.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "need one matrix F(e_i) per basis element");
  const Index d = f.empty() ? 0 : f[0].rows();
  for (const CMatrix& m : f) {
    if (m.rows() != d || m.cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "F(e_i) must all be d x d");
    require_finite(m, "F");
  }
  CBMap phi;
  phi.algebra = algebra;
  phi.domain = CMatrix::Identity(n, n);
  phi.core = CMatrix::Identity(n, n);
  phi.x_dim = d;
  phi.tensor.assign(static_cast<std::size_t>(n * n * d * d), 0.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const CVector prod = multiply(alg, involute(alg, alg.basis_vector(j)), alg.basis_vector(i));
      CMatrix fm = CMatrix::Zero(d, d);
      for (Index k = 0; k < n; ++k)
        if (prod(k) != 0.0) fm += prod(k) * f[static_cast<std::size_t>(k)];
      for (Index p = 0; p < d; ++p)
        for (Index q = 0; q < d; ++q) phi.at(i, j, p, q) = fm(q, p);
    }
  return phi;
}

double lift_unit_residual(const CBMap& lifted, const std::vector<CMatrix>& f,
                          const TolerancePolicy& pol) {
  const Algebra& alg = *lifted.algebra;
  double worst = 0.0;
  for (Index a = 0; a < alg.dim(); ++a) {
    const CMatrix form = evaluate(lifted, alg.basis_vector(a), alg.unit(), pol).matrix;
    worst = std::max(worst, max_abs(form - f[static_cast<std::size_t>(a)].transpose()));
  }
  return worst;
}

CBMap change_domain_basis(const CBMap& phi, const CMatrix& w) {
  check_shape(phi);
  const Index m = phi.domain_dim();
  const Index d = phi.x_dim;
  if (w.rows() != m || w.cols() != m)
    throw Error(ErrorCode::DimensionMismatch, "basis change must be m x m");
  CBMap out = phi;
  out.domain = phi.domain * w;
  std::fill(out.tensor.begin(), out.tensor.end(), Complex(0.0));
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          const Complex c = w(k, i) * std::conj(w(l, j));
          if (c == 0.0) continue;
          for (Index p = 0; p < d; ++p)
            for (Index q = 0; q < d; ++q) out.at(i, j, p, q) += c * phi.at(k, l, p, q);
        }
  return out;
}

CBMap with_core(const CBMap& phi, const CMatrix& core) {
  CBMap out = phi;
  out.core = core;
  return out;
}

CBMap scaled(const CBMap& phi, double factor) {
  CBMap out = phi;
  for (Complex& c : out.tensor) c *= factor;
  return out;
}

}  // namespace pstar
