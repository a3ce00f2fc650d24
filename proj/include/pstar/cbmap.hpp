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

// Conjugate-bilinear maps Phi : D x D -> S(X) on a finite-dimensional partial
// *-algebra, stored as a 4-index tensor
//
//   T[i][j][p][q] = Phi(d_i, d_j)(f_p, f_q)
//
// over a basis {d_i} of the domain D and the standard basis {f_p} of X.
// Phi is linear in its first argument and conjugate-linear in its second;
// each value is a sesquilinear form, linear in xi and conjugate-linear in eta.

#include <memory>
#include <string>
#include <vector>

#include "pstar/numerics.hpp"
#include "pstar/palgebra.hpp"

namespace pstar {

struct CBMap {
  std::string name;
  std::shared_ptr<const Algebra> algebra;
  CMatrix domain;  // algebra dim x m, columns are the d_i
  Index x_dim = 0;
  std::vector<Complex> tensor;  // m * m * d * d entries
  CMatrix core;    // algebra dim x k

  Index domain_dim() const { return domain.cols(); }
  std::size_t offset(Index i, Index j, Index p, Index q) const {
    const Index m = domain_dim();
    return static_cast<std::size_t>(((i * m + j) * x_dim + p) * x_dim + q);
  }
  Complex& at(Index i, Index j, Index p, Index q) { return tensor[offset(i, j, p, q)]; }
  Complex at(Index i, Index j, Index p, Index q) const { return tensor[offset(i, j, p, q)]; }
};

/// Throws MalformedInput / DimensionMismatch when the parts do not fit.
void check_shape(const CBMap& phi);

/// A sesquilinear form on X: value(xi, eta) = sum_pq xi_p conj(eta_q) M[p][q].
struct SesquiForm {
  CMatrix matrix;
  Complex value(const CVector& xi, const CVector& eta) const;
};

double hermitian_symmetry_defect(const CBMap& phi);

/// Flattened Gram matrix K on D (x) X with <u, v> = v^H K u, i.e.
/// K[(j,q), (i,p)] = T[i][j][p][q] with (i,p) -> i * d + p.
CMatrix gram_matrix(const CBMap& phi);

/// Coordinates of an algebra element in the domain basis; NotInDomain when
/// it lies outside span(domain).
CVector domain_coords(const CBMap& phi, const CVector& x, const TolerancePolicy& pol);
CMatrix domain_coords(const CBMap& phi, const CMatrix& xs, const TolerancePolicy& pol);

SesquiForm evaluate(const CBMap& phi, const CVector& x, const CVector& y,
                    const TolerancePolicy& pol);
/// Same contraction on domain coordinates directly.
SesquiForm evaluate_coords(const CBMap& phi, const CVector& alpha,
                           const CVector& beta);

struct CpResult {
  bool is_cp = true;
  double min_eig = 0.0;
  double max_eig = 0.0;
};

CpResult check_completely_positive(const CBMap& phi, const TolerancePolicy& pol);

struct PositivityResult {
  bool positive = true;
  double min_eig = 0.0;
  std::string witness;
};

/// Phi(x, x) >= 0 as a form, for each domain basis vector and
/// `pol.samples` seeded random domain elements.
PositivityResult check_positive(const CBMap& phi, const TolerancePolicy& pol);

enum class Mode { Quasi, Full };
const char* to_string(Mode mode);
Mode mode_from_string(const std::string& s);

struct CoreCondition {
  std::string name;
  bool passed = true;
  double residual = 0.0;
  std::string witness;
};

struct CoreReport {
  Mode mode = Mode::Quasi;
  std::vector<CoreCondition> conditions;  // I1, I2, I3, I4_exact, I4_sampled, I3'
  bool totally_invariant = false;         // core equals RA

  const CoreCondition* find(const std::string& name) const;
  /// All conditions of the mode hold, using the exact reading of (I)4.
  bool passed() const;
};

CoreReport check_core(const CBMap& phi, const CMatrix& core,
                      const TolerancePolicy& pol, Mode mode);

/// The map Phi(a, b)(xi, eta) = <pi(a) V xi, pi(b) V eta>,
/// domain = whole algebra, core = RA. `rep` holds pi(e_i) per basis index.
CBMap from_rep_and_V(const std::vector<CMatrix>& rep, const CMatrix& v,
                     std::shared_ptr<const Algebra> algebra,
                     const TolerancePolicy& pol);

/// Largest residual of the *-representation identities for `rep`; the
/// witness names the worst identity.
double representation_defect(const Algebra& a, const std::vector<CMatrix>& rep,
                             std::string* witness = nullptr);

/// Lift of a linear map F (given by F(e_i) on C^d) to
/// F0(a, b)(xi, eta) = <F(b^* a) xi, eta> on a total algebra.
CBMap lift_linear_map(const std::vector<CMatrix>& f,
                      std::shared_ptr<const Algebra> algebra,
                      const TolerancePolicy& pol);

/// max |F0(a, 1)(xi, eta) - <F(a) xi, eta>| over basis a, xi, eta.
double lift_unit_residual(const CBMap& lifted, const std::vector<CMatrix>& f,
                          const TolerancePolicy& pol);

/// Same map expressed in the domain basis d' = d * w (w invertible m x m).
CBMap change_domain_basis(const CBMap& phi, const CMatrix& w);
CBMap with_core(const CBMap& phi, const CMatrix& core);
CBMap scaled(const CBMap& phi, double factor);

}  // namespace pstar
