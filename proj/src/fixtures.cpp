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

#include "pstar/fixtures.hpp"

#include <stdexcept>

#include "pstar/io.hpp"

namespace pstar::fixtures {

namespace {

std::string matrix_label(Index i, Index j) {
  return "E" + std::to_string(i + 1) + std::to_string(j + 1);
}

CMatrix unit_matrix(Index n, Index i, Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

std::shared_ptr<const Algebra> share(AlgebraData data) {
  return std::make_shared<const Algebra>(std::move(data));
}

void drop_constant(AlgebraData& data, Index i, Index j) {
  auto& sc = data.structure_constants;
  sc.erase(std::remove_if(sc.begin(), sc.end(),
                          [&](const StructureConstant& c) { return c.i == i && c.j == j; }),
           sc.end());
}

void set_constant(AlgebraData& data, Index i, Index j, Index k, Complex v) {
  for (auto& c : data.structure_constants)
    if (c.i == i && c.j == j && c.k == k) {
      c.value = v;
      return;
    }
  data.structure_constants.push_back({i, j, k, v});
}

}  // namespace

AlgebraData matrix_algebra_data(Index n) {
  AlgebraData data;
  data.name = "M" + std::to_string(n);
  const Index dim = n * n;
  data.involution = CMatrix::Zero(dim, dim);
  data.gamma.assign(static_cast<std::size_t>(dim), std::vector<bool>(static_cast<std::size_t>(dim), true));
  data.unit = CVector::Zero(dim);
  for (Index i = 0; i < n; ++i) {
    data.unit(i * n + i) = 1.0;
    for (Index j = 0; j < n; ++j) {
      data.labels.push_back(matrix_label(i, j));
      data.involution(j * n + i, i * n + j) = 1.0;
      for (Index l = 0; l < n; ++l)  // E_ij E_jl = E_il
        data.structure_constants.push_back({i * n + j, j * n + l, i * n + l, 1.0});
    }
  }
  return data;
}

std::shared_ptr<const Algebra> matrix_algebra(Index n) { return share(matrix_algebra_data(n)); }

std::shared_ptr<const Algebra> fix_m2() {
  AlgebraData data = matrix_algebra_data(2);
  data.name = "FIX-M2";
  return share(std::move(data));
}

CMatrix diagonal_span_m2() {
  CMatrix a0 = CMatrix::Zero(4, 2);
  a0(0, 0) = 1.0;
  a0(3, 1) = 1.0;
  return a0;
}

AlgebraData fix_q2_data() {
  AlgebraData data = matrix_algebra_data(2);
  data.name = "FIX-Q2";
  auto diagonal = [](Index k) { return k == 0 || k == 3; };
  for (Index a = 0; a < 4; ++a)
    for (Index b = 0; b < 4; ++b) {
      const bool defined = diagonal(a) || diagonal(b);
      data.gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = defined;
      if (!defined) drop_constant(data, a, b);
    }
  data.designated_subalgebra = diagonal_span_m2();
  return data;
}

std::shared_ptr<const Algebra> fix_q2() { return share(fix_q2_data()); }

std::shared_ptr<const Algebra> fix_d2() {
  AlgebraData data;
  data.name = "FIX-D2";
  data.labels = {"E11", "E22"};
  data.involution = CMatrix::Identity(2, 2);
  data.gamma.assign(2, std::vector<bool>(2, true));
  data.structure_constants = {{0, 0, 0, 1.0}, {1, 1, 1, 1.0}};
  data.unit = CVector::Ones(2);
  return share(std::move(data));
}

std::vector<CMatrix> defining_representation(Index n) {
  std::vector<CMatrix> rep;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) rep.push_back(unit_matrix(n, i, j));
  return rep;
}

std::vector<CMatrix> identity_map(Index n) { return defining_representation(n); }

std::vector<CMatrix> transpose_map(Index n) {
  std::vector<CMatrix> f;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) f.push_back(unit_matrix(n, j, i));
  return f;
}

std::vector<CMatrix> depolarizing_map(Index n) {
  std::vector<CMatrix> f;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      f.push_back(i == j ? CMatrix(CMatrix::Identity(n, n) / static_cast<double>(n))
                         : CMatrix(CMatrix::Zero(n, n)));
  return f;
}

std::vector<CMatrix> kraus_map(Index n, const std::vector<CMatrix>& kraus) {
  std::vector<CMatrix> f;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      CMatrix out = CMatrix::Zero(n, n);
      for (const CMatrix& k : kraus) out += k.adjoint() * unit_matrix(n, i, j) * k;
      f.push_back(out);
    }
  return f;
}

CBMap phi_id_q2() {
  CBMap phi = from_rep_and_V(defining_representation(2), CMatrix::Identity(2, 2), fix_q2(),
                             TolerancePolicy{});
  phi.name = "FIX-Q2-phi-id";
  phi.core = diagonal_span_m2();
  return phi;
}

namespace {

CBMap named_lift(const std::vector<CMatrix>& f, Index n, const std::string& name) {
  auto alg = n == 2 ? fix_m2() : matrix_algebra(n);
  CBMap phi = lift_linear_map(f, alg, TolerancePolicy{});
  phi.name = (n == 2 ? std::string("FIX-M2") : alg->name()) + "-" + name;
  return phi;
}

}  // namespace

CBMap identity_lift(Index n) { return named_lift(identity_map(n), n, "identity-lift"); }
CBMap transpose_lift(Index n) { return named_lift(transpose_map(n), n, "transpose-lift"); }
CBMap depolarizing_lift(Index n) { return named_lift(depolarizing_map(n), n, "depolarizing-lift"); }

std::vector<AlgebraMutant> algebra_mutants() {
  std::vector<AlgebraMutant> out;

  {
    AlgebraData d = fix_q2_data();
    d.name = "FIX-Q2-mutant-gamma";
    d.gamma[0][1] = false;
    drop_constant(d, 0, 1);
    out.push_back({d.name, d, "gamma_involution_symmetry",
                   "(E21, E11) in Gamma but (E11, E12) is not"});
  }
  {
    AlgebraData d = matrix_algebra_data(2);
    d.name = "FIX-M2-mutant-gamma";
    d.gamma[0][1] = false;
    drop_constant(d, 0, 1);
    out.push_back({d.name, d, "gamma_involution_symmetry",
                   "(E21, E11) in Gamma but (E11, E12) is not"});
  }
  {
    AlgebraData d = matrix_algebra_data(2);
    d.name = "FIX-M2-mutant-product";
    set_constant(d, 1, 2, 1, Complex(0.0, 1.0));  // E12 E21 = E11 + i E12
    out.push_back({d.name, d, "product_involution", "(E12, E21): (x y)* != y* x*"});
  }
  {
    AlgebraData d = fix_d2()->data();
    d.name = "FIX-D2-mutant-unit";
    d.unit = CVector::Zero(2);
    d.unit(0) = 1.0;
    out.push_back({d.name, d, "unit", "1 * E22 != E22"});
  }
  {
    AlgebraData d = fix_q2_data();
    d.name = "FIX-Q2-mutant-unit";
    d.unit *= 2.0;
    out.push_back({d.name, d, "unit", "1 * E11 != E11"});
  }
  {
    AlgebraData d = fix_q2_data();
    d.name = "FIX-Q2-mutant-assoc";
    // E12 E22 = 2 E12, E12 E11 = -E12 and their adjoints: the unit and
    // (x y)* = y* x* survive, associativity does not
    set_constant(d, 1, 3, 1, 2.0);
    set_constant(d, 1, 0, 1, -1.0);
    set_constant(d, 3, 2, 2, 2.0);
    set_constant(d, 0, 2, 2, -1.0);
    out.push_back({d.name, d, "semi_associativity", "(E12, E11, E11): (x y) z != x (y z)"});
  }
  return out;
}

PolyMatrix gram_square_example() {
  PolyMatrix p(2, 2, 1);
  p.add_term(0, 0, {0}, 1.0);
  p.add_term(0, 1, {1}, 1.0);
  p.add_term(1, 0, {1}, 1.0);
  p.add_term(1, 1, {2}, 1.0);
  return p;
}

PolyMatrix planted_non_psd() {
  PolyMatrix p(2, 2, 1);
  p.add_term(0, 0, {0}, 1.0);
  p.add_term(1, 1, {2}, 1.0);
  p.add_term(1, 1, {0}, -1.0);
  return p;
}

CBMap noninvariant_q2() {
  Rng rng(20260101);
  const CMatrix g = rng.complex_matrix(3, 8);
  const CMatrix k = g.adjoint() * g;
  CBMap phi;
  phi.name = "FIX-Q2-noninvariant";
  phi.algebra = fix_q2();
  phi.domain = CMatrix::Identity(4, 4);
  phi.x_dim = 2;
  phi.core = diagonal_span_m2();
  phi.tensor.assign(64, 0.0);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index p = 0; p < 2; ++p)
        for (Index q = 0; q < 2; ++q) phi.at(i, j, p, q) = k(j * 2 + q, i * 2 + p);
  return phi;
}

namespace {

FixtureFile algebra_file(const AlgebraData& d) {
  return {d.name + ".json", io::dump(io::to_json(Algebra(d)))};
}

FixtureFile map_file(const CBMap& phi) {
  return {phi.name + ".json", io::dump(io::to_json(phi))};
}

void add_mutants(std::vector<FixtureFile>& files, const std::string& prefix) {
  for (const auto& m : algebra_mutants())
    if (m.name.rfind(prefix, 0) == 0) files.push_back(algebra_file(m.data));
}

}  // namespace

std::vector<FixtureFile> demo_files(const std::string& name) {
  std::vector<FixtureFile> files;
  if (name == "FIX-M2") {
    files.push_back(algebra_file(fix_m2()->data()));
    files.push_back(map_file(identity_lift(2)));
    files.push_back(map_file(transpose_lift(2)));
    files.push_back(map_file(depolarizing_lift(2)));
    CBMap unit_core = with_core(identity_lift(2), CMatrix(fix_m2()->unit()));
    unit_core.name = "FIX-M2-identity-lift-unit-core";
    files.push_back(map_file(unit_core));
    add_mutants(files, "FIX-M2-");
  } else if (name == "FIX-Q2") {
    files.push_back(algebra_file(fix_q2_data()));
    files.push_back(map_file(phi_id_q2()));
    CBMap bad = phi_id_q2();
    bad.name = "FIX-Q2-phi-id-bad-core";
    bad.core = CMatrix::Zero(4, 1);
    bad.core(0, 0) = 1.0;
    files.push_back(map_file(bad));
    files.push_back(map_file(noninvariant_q2()));
    add_mutants(files, "FIX-Q2-");
  } else if (name == "FIX-D2") {
    auto d2 = fix_d2();
    files.push_back(algebra_file(d2->data()));
    std::vector<CMatrix> rep{unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)};
    CBMap phi = from_rep_and_V(rep, CMatrix::Identity(2, 2), d2, TolerancePolicy{});
    phi.name = "FIX-D2-phi-id";
    files.push_back(map_file(phi));
    GeneratorTuple gens;
    CMatrix b = CMatrix::Zero(2, 2);
    b(0, 0) = 1.0;
    b(1, 1) = 2.0;
    gens.generators.push_back(b);
    files.push_back({"FIX-D2-generators.json", io::dump(io::to_json(gens))});
    files.push_back({"FIX-D2-polymatrices.json",
                     io::dump(io::to_json(std::vector<PolyMatrix>{
                         gram_square_example(), PolyMatrix::identity(2, 1)}))});
    files.push_back({"FIX-D2-polymatrices-planted.json",
                     io::dump(io::to_json(std::vector<PolyMatrix>{planted_non_psd()}))});
    add_mutants(files, "FIX-D2-");
  } else {
    throw Error(ErrorCode::MalformedInput,
                "unknown fixture '" + name + "' (expected FIX-M2, FIX-Q2 or FIX-D2)");
  }
  return files;
}

}  // namespace pstar::fixtures
