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

// Finite-dimensional partial *-algebras in a "basis-aligned" encoding:
// the compatibility relation Gamma is a boolean table on basis pairs, and an
// element pair (x, y) is compatible iff every supported basis pair is. This
// makes Gamma closed under linear combinations by construction and keeps all
// axiom checks decidable.

#include <optional>
#include <string>
#include <vector>

#include "pstar/numerics.hpp"

namespace pstar {

struct StructureConstant {
  Index i = 0;
  Index j = 0;
  Index k = 0;
  Complex value;
};

/// Raw description of an algebra; what the JSON reader and the fixtures
/// produce. `Algebra` checks it for shape errors on construction.
struct AlgebraData {
  std::string name;
  std::vector<std::string> labels;
  /// Column i holds the coefficients of e_i^*; extended antilinearly.
  CMatrix involution;
  std::vector<std::vector<bool>> gamma;
  std::vector<StructureConstant> structure_constants;
  CVector unit;
  /// Optional designated *-subalgebra (the A_0 of a quasi *-algebra).
  std::optional<CMatrix> designated_subalgebra;
};

class Algebra {
 public:
  explicit Algebra(AlgebraData data);

  Index dim() const { return dim_; }
  const AlgebraData& data() const { return data_; }
  const std::string& name() const { return data_.name; }
  const std::vector<std::string>& labels() const { return data_.labels; }
  const CMatrix& involution() const { return data_.involution; }
  const CVector& unit() const { return data_.unit; }
  bool gamma(Index i, Index j) const { return data_.gamma[i][j]; }
  bool is_total() const;

  /// e_i * e_j as a coefficient vector; only meaningful when gamma(i, j).
  const CVector& basis_product(Index i, Index j) const {
    return products_[static_cast<std::size_t>(i * dim_ + j)];
  }
  CVector basis_vector(Index i) const;

 private:
  AlgebraData data_;
  Index dim_ = 0;
  std::vector<CVector> products_;
};

/// Indices of coefficients that are not negligible relative to the largest.
std::vector<Index> support(const CVector& x);

CVector multiply(const Algebra& a, const CVector& x, const CVector& y);
CVector involute(const Algebra& a, const CVector& x);
/// True iff the product x * y is defined in the basis-pair encoding.
bool compatible(const Algebra& a, const CVector& x, const CVector& y);

enum class Side { Left, Right };

/// R(x) (right multipliers) or L(x) (left multipliers) of a nonzero x.
/// Left spaces are obtained from right ones by (y, x) in Gamma iff
/// (x^*, y^*) in Gamma.
CMatrix multiplier_space(const Algebra& a, const CVector& x, Side side);

struct UniversalMultipliers {
  CMatrix right;  // R A
  CMatrix left;   // L A
  CMatrix both;   // M A = L A intersect R A
};

UniversalMultipliers universal_multipliers(const Algebra& a,
                                           const TolerancePolicy& pol);
/// Basis indices j with gamma(i, j) for every i, i.e. the coordinates of RA.
std::vector<Index> universal_right_indices(const Algebra& a);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  double residual = 0.0;
  std::string witness;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;
  bool passed() const;
  const AxiomCheck* find(const std::string& name) const;
};

/// Checks x** = x, the Gamma/involution symmetry (axiom (i)), the unit
/// axioms and (x y)^* = y^* x^* on all defined basis pairs. Linearity of Gamma
/// and distributivity hold by construction and are not tested.
ValidationReport validate_axioms(const Algebra& a, const TolerancePolicy& pol);

struct SemiAssociativity {
  bool holds = true;
  double residual = 0.0;
  std::string witness;
};

SemiAssociativity check_semi_associative(const Algebra& a,
                                         const TolerancePolicy& pol);

}  // namespace pstar
