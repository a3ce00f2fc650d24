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

// Matrices of polynomials in m real variables and the positivity machinery
// built on them: pointwise PSD falsification, sums of squares, and complete
// positivity of a representation of the commutative *-algebra generated by
// commuting hermitian matrices.
//
// "Positive definite" for a polynomial matrix means, as in the operator
// literature this follows, that P(lambda) is positive SEMI-definite for every
// real lambda. No routine here decides that exactly: sums of squares are
// certified by construction, everything else is only falsified by sampling.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pstar/numerics.hpp"

namespace pstar {

using Monomial = std::vector<int>;            // exponent per variable
using Polynomial = std::map<Monomial, Complex>;

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(Index rows, Index cols, Index vars);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index vars() const { return vars_; }

  Polynomial& operator()(Index k, Index l) { return entries_[static_cast<std::size_t>(k * cols_ + l)]; }
  const Polynomial& operator()(Index k, Index l) const {
    return entries_[static_cast<std::size_t>(k * cols_ + l)];
  }
  /// Adds c * x^exps to entry (k, l); checks the exponent arity.
  void add_term(Index k, Index l, const Monomial& exps, Complex c);

  static PolyMatrix identity(Index n, Index vars);

  /// Largest |P_kl - conj(P_lk)| coefficient difference; +inf if not square.
  double hermitian_defect() const;
  int degree() const;
  void prune(double tol = 0.0);

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  Index vars_ = 0;
  std::vector<Polynomial> entries_;
};

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator*(double s, const PolyMatrix& a);
/// Conjugate transpose (variables are real, so coefficients are conjugated).
PolyMatrix adjoint(const PolyMatrix& a);

/// Commuting hermitian matrices b_1..b_m; `images`, when set, are the
/// pi(b_j) of a representation (identity representation otherwise).
struct GeneratorTuple {
  std::vector<CMatrix> generators;
  std::optional<std::vector<CMatrix>> images;

  const std::vector<CMatrix>& represented() const {
    return images ? *images : generators;
  }
};

CMatrix polymatrix_eval(const PolyMatrix& p, const RVector& point);
/// Block matrix with blocks P_kl(b_1, ..., b_m); monomials are matrix
/// products, unambiguous because the b_j commute.
CMatrix polymatrix_eval(const PolyMatrix& p, const std::vector<CMatrix>& tuple);

struct FalsifyResult {
  bool counterexample = false;
  RVector point;        // the first counterexample, when found
  double min_eig = 0.0; // at the counterexample, else the smallest seen
  Index points_checked = 0;
};

/// Grid over {0, +-1/2, +-1, +-2}^m followed by heavy-tailed (Cauchy)
/// seeded points until `samples` points have been evaluated.
FalsifyResult pd_falsify(const PolyMatrix& p, const TolerancePolicy& pol, Index samples);

/// Q^H Q: a certified member of the cone for any polynomial matrix Q.
PolyMatrix sos_member(const PolyMatrix& q);

struct ConeItemReport {
  bool sampled_pass = true;
  double sampled_min = 0.0;         // min over trials of S / scale
  bool exact_pass = true;
  double exact_min_eig = 0.0;       // min over joint spectrum of min eig P(lambda)
  double block_residual = 0.0;      // |(I (x) W)^H P(b) (I (x) W) - blockdiag P(lambda)|
};

struct ConeReport {
  std::vector<ConeItemReport> items;
  double joint_residual = 0.0;
  RMatrix joint_spectrum;
  bool passed() const;
};

/// Throws NotPositiveDefinite if a P fails the falsifier, NotCommuting or
/// ArityMismatch on bad generators.
ConeReport cone_cp_check(const GeneratorTuple& gens, const std::vector<PolyMatrix>& ps,
                         Index trials, Index falsify_samples, const TolerancePolicy& pol);

}  // namespace pstar
