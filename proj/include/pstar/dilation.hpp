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

// Stinespring-type dilation of a completely positive (quasi-)invariant
// conjugate-bilinear map, and the verifiers that check it.
//
// Construction: the flattened Gram form on D (x) X is factored as K = Q^H Q
// (numerics::rank_range_null), so lambda(u) = Q u are coordinates in the
// quotient H = (D (x) X) / N. Each pi(e_a) is solved on the spanning family
// {lambda(b (x) f_p) : b in core basis} from pi(a) lambda(b (x) f_p) =
// lambda(a b (x) f_p); the least-squares misfit is the well-definedness
// residual of pi on cosets.

#include <optional>
#include <string>
#include <vector>

#include "pstar/cbmap.hpp"

namespace pstar {

struct DilationResult {
  Index h_dim = 0;
  CMatrix lambda_map;           // h_dim x (m * d)
  std::vector<CMatrix> pi;      // pi(e_i), h_dim x h_dim, per algebra basis index
  std::optional<CMatrix> v;     // h_dim x d; present iff the unit lies in the core
  RVector gram_spectrum;        // descending
  double welldef_residual = 0.0;
  CMatrix core;                 // algebra coordinates of the core used
  Mode mode = Mode::Quasi;
};

/// Builds the dilation with core `phi.core`. Throws NotCompletelyPositive,
/// CoreViolation ((I)1, (I)2 or the exact (I)4 failing) or
/// WellDefinednessViolation. A missing V (unit outside the core) is not an
/// error here.
DilationResult dilate(const CBMap& phi, const TolerancePolicy& pol, Mode mode);

/// lambda(x (x) xi) for an algebra element x in the domain.
CVector lambda_of(const CBMap& phi, const DilationResult& dil, const CVector& x,
                  const CVector& xi, const TolerancePolicy& pol);
/// pi(x) = sum_k x_k pi(e_k).
CMatrix pi_of(const DilationResult& dil, const CVector& x);

/// max |Phi(a x, b y)(xi, eta) - <pi(a) lambda(x (x) xi), pi(b) lambda(y (x) eta)>|
/// over basis a, b of the algebra, core basis x, y and basis xi, eta.
double verify_dilation_identity(const CBMap& phi, const DilationResult& dil,
                                const TolerancePolicy& pol);

struct RepReport {
  double star_residual = 0.0;
  double product_residual = 0.0;
  double unit_residual = 0.0;
  std::string witness;
  bool passed = true;
};

/// pi(e_i^*) = pi(e_i)^H, pi(a b) = pi(a) pi(b) on Gamma pairs (mode full) or
/// on Gamma pairs with b in RA (mode quasi), pi(1) = I.
RepReport verify_representation(const DilationResult& dil, const Algebra& a,
                                const TolerancePolicy& pol, Mode mode);

/// Largest core giving the same representation as `dil`; contains dil.core.
CMatrix largest_core(const CBMap& phi, const DilationResult& dil,
                     const TolerancePolicy& pol);

struct EquivalenceResult {
  CMatrix u;
  double residual = 0.0;        // max of the component residuals below
  double overlap_residual = 0.0;
  double unitarity_residual = 0.0;
  double intertwining_residual = 0.0;
  double v_residual = 0.0;
};

/// Builds U with U pi1(a) V1 xi = pi2(a) V2 xi. Throws NotEquivalent when the
/// Gram overlaps of the two spanning families disagree.
EquivalenceResult unitary_equivalence(const DilationResult& d1, const DilationResult& d2,
                                      const CBMap& phi1, const CBMap& phi2,
                                      const TolerancePolicy& pol);

struct IsometryReport {
  double norm_v = 0.0;
  bool is_isometry = false;
  double isometry_residual = 0.0;      // max |V^H V - I|
  double unit_form_residual = 0.0;     // max |Phi(1,1)(f_p,f_q) - delta_pq|
  double factorization_residual = 0.0; // max |Phi(a,1)(xi,eta) - <V^H pi(a) V xi, eta>|
};

IsometryReport isometry_bound_check(const CBMap& phi, const DilationResult& dil,
                                    const TolerancePolicy& pol);

/// Basis of {X : M X = X M for all M in ms} on C^h.
std::vector<CMatrix> commutant(const std::vector<CMatrix>& ms, Index h,
                               const TolerancePolicy& pol);

struct CommutantComparison {
  bool equal = false;
  Index generators_dim = 0;
  Index algebra_dim = 0;
};

/// Compares the commutant of {pi(g)} for the generator vectors (columns of
/// `generators`) with the commutant of the whole pi(A).
CommutantComparison commutant_generation_check(const Algebra& a, const DilationResult& dil,
                                               const CMatrix& generators,
                                               const TolerancePolicy& pol);

/// For nested cores small.core within large.core of the same map, builds the
/// natural map J: lambda_small(x (x) xi) -> lambda_large(x (x) xi) on the small
/// core and returns the worst of its isometry and intertwining residuals.
double core_inclusion_residual(const CBMap& phi, const DilationResult& small,
                               const DilationResult& large, const TolerancePolicy& pol);

}  // namespace pstar
