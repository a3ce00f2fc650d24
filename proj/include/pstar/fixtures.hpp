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

// The fixture corpus: the three reference algebras, the maps built on them,
// planted-failure mutants, and cone samples. Everything here is
// deterministic.

#include <memory>
#include <string>
#include <vector>

#include "pstar/cbmap.hpp"
#include "pstar/cone.hpp"
#include "pstar/palgebra.hpp"

namespace pstar::fixtures {

/// Full matrix algebra M_n; basis E_ij at index i * n + j (0-based),
/// labelled "E11", "E12", ... (1-based).
AlgebraData matrix_algebra_data(Index n);
std::shared_ptr<const Algebra> matrix_algebra(Index n);

/// FIX-M2: M_2 as a total *-algebra.
std::shared_ptr<const Algebra> fix_m2();
/// FIX-Q2: the quasi *-algebra on M_2 over A_0 = span{E11, E22}; a product
/// is defined iff one factor is diagonal.
AlgebraData fix_q2_data();
std::shared_ptr<const Algebra> fix_q2();
/// FIX-D2: the commutative algebra of diagonal 2x2 matrices.
std::shared_ptr<const Algebra> fix_d2();

/// span{E11, E22} in M_2 coordinates.
CMatrix diagonal_span_m2();

/// pi(E_ij) = E_ij as n x n matrices.
std::vector<CMatrix> defining_representation(Index n);
/// F(e_i) for the linear maps F(A) = A, A^T and tr(A) I / n on M_n.
std::vector<CMatrix> identity_map(Index n);
std::vector<CMatrix> transpose_map(Index n);
std::vector<CMatrix> depolarizing_map(Index n);
/// F(A) = sum_r K_r^H A K_r.
std::vector<CMatrix> kraus_map(Index n, const std::vector<CMatrix>& kraus);

/// Phi_id(a, b)(xi, eta) = <a xi, b eta> on FIX-Q2 with core A_0.
CBMap phi_id_q2();
CBMap identity_lift(Index n);
CBMap transpose_lift(Index n);
CBMap depolarizing_lift(Index n);
/// Random CP tensor of rank 3 on FIX-Q2 (d = 2) with core A_0: satisfies the
/// structural core conditions but not the invariance identity.
CBMap noninvariant_q2();

struct AlgebraMutant {
  std::string name;
  AlgebraData data;
  std::string broken_check;  // validate_axioms check name or "semi_associativity"
  std::string witness;       // expected witness text
};

std::vector<AlgebraMutant> algebra_mutants();

/// [[1, x], [x, x^2]] = (1, x)^H (1, x).
PolyMatrix gram_square_example();
/// [[1, 0], [0, x^2 - 1]], negative at x = 0.
PolyMatrix planted_non_psd();

struct FixtureFile {
  std::string name;
  std::string content;
};

/// JSON files for `demo <name>`; name is FIX-M2, FIX-Q2 or FIX-D2.
std::vector<FixtureFile> demo_files(const std::string& name);

}  // namespace pstar::fixtures
