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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pstar/commands.hpp"
#include "pstar/dilation.hpp"
#include "pstar/fixtures.hpp"
#include "pstar/io.hpp"
#include "support.hpp"

using namespace pstar;
namespace fx = pstar::fixtures;
namespace ts = pstar::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail << "first failure: " << what << "; ";
    }
  }
};

const TolerancePolicy kPolicy{};

// 1. axioms on the three fixtures and the six planted mutants
void axiom_suite(Outcome& o) {
  for (const auto& a : {fx::fix_m2(), fx::fix_q2(), fx::fix_d2()}) {
    o.require(validate_axioms(*a, kPolicy).passed(), a->name() + " axioms");
    o.require(check_semi_associative(*a, kPolicy).holds, a->name() + " semi-associativity");
  }
  int detected = 0;
  for (const auto& m : fx::algebra_mutants()) {
    const Algebra a(m.data);
    std::string witness;
    bool failed = false;
    if (m.broken_check == "semi_associativity") {
      const SemiAssociativity sa = check_semi_associative(a, kPolicy);
      failed = !sa.holds;
      witness = sa.witness;
    } else {
      const ValidationReport rep = validate_axioms(a, kPolicy);
      const AxiomCheck* c = rep.find(m.broken_check);
      failed = c && !c->passed;
      witness = c ? c->witness : "";
    }
    o.require(failed, m.name + " not rejected by " + m.broken_check);
    o.require(witness == m.witness, m.name + " witness '" + witness + "'");
    if (failed && witness == m.witness) ++detected;
  }
  o.detail << "3/3 fixtures valid, " << detected << "/6 mutants rejected with expected witness";
}

// 2. positive but not completely positive
void cp_separation(Outcome& o) {
  const CpResult id = check_completely_positive(fx::identity_lift(2), kPolicy);
  const CBMap t = fx::transpose_lift(2);
  const CpResult tr = check_completely_positive(t, kPolicy);
  const PositivityResult pos = check_positive(t, kPolicy);
  o.require(id.is_cp && id.min_eig >= -1e-10, "identity lift CP");
  o.require(pos.positive, "transpose lift positive");
  o.require(!tr.is_cp && tr.min_eig <= -0.5, "transpose lift not CP");
  o.detail << "identity min_eig " << id.min_eig << ", transpose positive=" << pos.positive
           << " min_eig " << tr.min_eig;
}

// 3. dilation of 50 seeded maps built from representations
void dilation_theorem(Outcome& o) {
  double worst = 0.0;
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ts::RandomMap rm = ts::random_invariant_map(seed);
    try {
      const DilationResult dil = dilate(rm.phi, kPolicy, Mode::Full);
      const double res = verify_dilation_identity(rm.phi, dil, kPolicy);
      const RepReport rep = verify_representation(dil, *rm.phi.algebra, kPolicy, Mode::Full);
      worst = std::max(worst, res);
      // h_dim against the span of the pi(e_a) V columns
      CMatrix family(rm.v.rows(), static_cast<Index>(rm.rep.size()) * rm.v.cols());
      for (std::size_t a = 0; a < rm.rep.size(); ++a)
        family.middleCols(static_cast<Index>(a) * rm.v.cols(), rm.v.cols()) = rm.rep[a] * rm.v;
      const bool rank_ok = dil.h_dim == ts::svd_rank(family);
      o.require(rank_ok, "h_dim seed " + std::to_string(seed));
      o.require(res <= 1e-8, "identity residual seed " + std::to_string(seed));
      o.require(rep.passed, "representation seed " + std::to_string(seed) + ": " + rep.witness);
      if (rank_ok && res <= 1e-8 && rep.passed) ++ok;
    } catch (const Error& e) {
      o.require(false, "seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  o.detail << ok << "/50 maps, worst identity residual " << worst;
}

// 4. lift of Kraus maps, against direct Kraus evaluation
void classical_recovery(Outcome& o) {
  double worst_f = 0.0, worst_iso = 0.0, worst_norm = 0.0;
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Rng rng(1000 + seed);
    const Index n = rng.integer(2, 3);
    const Index count = rng.integer(1, 3);
    std::vector<CMatrix> kraus = ts::random_kraus(n, count, rng);
    const int kind = static_cast<int>(seed % 3);  // 0 generic, 1 unital, 2 scaled unital
    double s = 1.0;
    if (kind > 0) kraus = ts::unital(kraus);
    if (kind == 2) {
      s = rng.uniform(0.5, 3.0);
      for (CMatrix& k : kraus) k *= s;
    }
    const std::string tag = "seed " + std::to_string(seed);
    try {
      const CBMap phi = lift_linear_map(fx::kraus_map(n, kraus), fx::matrix_algebra(n), kPolicy);
      const DilationResult dil = dilate(phi, kPolicy, Mode::Full);
      bool good = dil.v.has_value();
      o.require(good, tag + ": V missing");
      if (!good) continue;
      const CMatrix& v = *dil.v;
      double fres = 0.0;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          CMatrix e = CMatrix::Zero(n, n);
          e(i, j) = 1.0;
          const CMatrix f = ts::kraus_apply(kraus, e);
          // V^H pi(a) V acts on coordinates; F(a) acts on the same basis
          fres = std::max(fres, max_abs(v.adjoint() * dil.pi[static_cast<std::size_t>(i * n + j)] * v - f));
        }
      worst_f = std::max(worst_f, fres);
      o.require(fres <= 1e-8, tag + ": F residual");
      const Index oracle_rank = n * ts::kraus_rank(kraus);
      const Index gram_rank = ts::svd_rank(gram_matrix(phi));
      o.require(dil.h_dim == oracle_rank && dil.h_dim == gram_rank,
                tag + ": h_dim " + std::to_string(dil.h_dim) + " vs " + std::to_string(oracle_rank));
      good = good && fres <= 1e-8 && dil.h_dim == oracle_rank && dil.h_dim == gram_rank;
      if (kind == 1) {
        const double iso = max_abs(v.adjoint() * v - CMatrix::Identity(n, n));
        worst_iso = std::max(worst_iso, iso);
        o.require(iso <= 1e-10, tag + ": V not isometric");
        good = good && iso <= 1e-10;
      } else if (kind == 2) {
        const double err = std::abs(isometry_bound_check(phi, dil, kPolicy).norm_v - s);
        worst_norm = std::max(worst_norm, err);
        o.require(err <= 1e-8, tag + ": norm V");
        good = good && err <= 1e-8;
      }
      if (good) ++ok;
    } catch (const Error& e) {
      o.require(false, tag + ": " + e.what());
    }
  }
  o.detail << ok << "/25 maps, worst |F - V^H pi V| " << worst_f << ", worst |V^H V - I| "
           << worst_iso << ", worst | |V| - s | " << worst_norm;
}

// 5. uniqueness up to unitary equivalence
void equivalence(Outcome& o) {
  double worst = 0.0;
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ts::RandomMap rm = ts::random_invariant_map(100 + seed);
    Rng rng(seed);
    const CBMap scrambled =
        change_domain_basis(rm.phi, random_unitary(rm.phi.domain_dim(), rng));
    try {
      const DilationResult d1 = dilate(rm.phi, kPolicy, Mode::Full);
      const DilationResult d2 = dilate(scrambled, kPolicy, Mode::Full);
      const EquivalenceResult eq = unitary_equivalence(d1, d2, rm.phi, scrambled, kPolicy);
      worst = std::max(worst, eq.residual);
      o.require(eq.residual <= 1e-8, "seed " + std::to_string(seed) + " residual");
      if (eq.residual <= 1e-8) ++ok;
    } catch (const Error& e) {
      o.require(false, "seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  bool rejected = false;
  try {
    const CBMap a = fx::identity_lift(2);
    const CBMap b = fx::depolarizing_lift(2);
    unitary_equivalence(dilate(a, kPolicy, Mode::Full), dilate(b, kPolicy, Mode::Full), a, b, kPolicy);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NotEquivalent;
  }
  o.require(rejected, "identity vs depolarizing lift not reported NotEquivalent");
  o.detail << ok << "/20 scrambled pairs equivalent, worst residual " << worst
           << "; distinct maps NotEquivalent=" << rejected;
}

std::vector<CBMap> corpus_maps() {
  std::vector<CBMap> maps;
  for (const char* name : {"FIX-M2", "FIX-Q2", "FIX-D2"})
    for (const auto& f : fx::demo_files(name)) {
      const io::Json j = io::parse(f.content);
      if (j.value("type", "") != "cbmap") continue;
      maps.push_back(io::map_from_json(j));
    }
  return maps;
}

// 6. largest core
void largest_core_property(Outcome& o) {
  int checked = 0;
  for (const CBMap& phi : corpus_maps()) {
    DilationResult dil;
    try {
      dil = dilate(phi, kPolicy, Mode::Full);
    } catch (const Error&) {
      continue;  // planted failures have no dilation
    }
    const CMatrix lc = largest_core(phi, dil, kPolicy);
    o.require(span_contains(lc, phi.core, kPolicy.verify_tol), phi.name + " core not contained");
    const CBMap big = with_core(phi, lc);
    const CMatrix again = largest_core(big, dilate(big, kPolicy, Mode::Full), kPolicy);
    o.require(span_equal(again, lc, kPolicy.verify_tol), phi.name + " not a fixed point");
    if (phi.name == "FIX-Q2-phi-id")
      o.require(span_equal(lc, fx::diagonal_span_m2(), kPolicy.verify_tol), "Q2 largest core != A_0");
    if (phi.name == "FIX-M2-identity-lift-unit-core")
      o.require(lc.cols() == 4, "M2 unit-core largest core is not the whole algebra");
    ++checked;
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ts::RandomMap rm = ts::random_invariant_map(200 + seed);
    const DilationResult dil = dilate(rm.phi, kPolicy, Mode::Full);
    const CMatrix lc = largest_core(rm.phi, dil, kPolicy);
    o.require(span_contains(lc, rm.phi.core, kPolicy.verify_tol), rm.phi.name + " core not contained");
    const CBMap big = with_core(rm.phi, lc);
    o.require(span_equal(largest_core(big, dilate(big, kPolicy, Mode::Full), kPolicy), lc,
                         kPolicy.verify_tol),
              rm.phi.name + " not a fixed point");
    ++checked;
  }
  o.detail << checked << " maps (corpus + 10 random): containment and fixed point; "
           << "FIX-Q2 phi-id -> A_0, FIX-M2 unit core -> whole algebra";
}

// 7. positivity cone
void cone(Outcome& o) {
  int sos_ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(300 + seed);
    const Index m = rng.integer(1, 2);
    const int deg = rng.integer(1, 3);
    const PolyMatrix p = sos_member(ts::random_polymatrix(rng.integer(1, 3), rng.integer(1, 3), m, deg, rng));
    TolerancePolicy pol = kPolicy;
    pol.seed = seed;
    const FalsifyResult f = pd_falsify(p, pol, 10000);
    o.require(!f.counterexample && f.points_checked == 10000,
              "SOS seed " + std::to_string(seed) + " falsified");
    if (!f.counterexample) ++sos_ok;
  }
  const FalsifyResult planted = pd_falsify(fx::planted_non_psd(), kPolicy, 10000);
  o.require(planted.counterexample && planted.point.size() == 1, "planted matrix not falsified");

  int tuples_ok = 0;
  double worst_joint = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(400 + seed);
    const Index n = rng.integer(1, 6);
    const Index m = rng.integer(1, 3);
    GeneratorTuple gens{ts::random_commuting_tuple(n, m, rng), std::nullopt};
    std::vector<PolyMatrix> ps;
    for (int k = 0; k < 2; ++k)
      ps.push_back(sos_member(ts::random_polymatrix(rng.integer(1, 2), rng.integer(1, 2), m, rng.integer(1, 2), rng)));
    TolerancePolicy pol = kPolicy;
    pol.seed = seed;
    try {
      const ConeReport rep = cone_cp_check(gens, ps, 8, 10000, pol);
      worst_joint = std::max(worst_joint, rep.joint_residual);
      bool exact = true;
      for (const auto& it : rep.items) exact = exact && it.exact_pass;
      o.require(exact, "tuple seed " + std::to_string(seed) + " exact test");
      o.require(rep.joint_residual <= 1e-8, "tuple seed " + std::to_string(seed) + " joint residual");
      if (exact && rep.joint_residual <= 1e-8) ++tuples_ok;
    } catch (const Error& e) {
      o.require(false, "tuple seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  o.detail << sos_ok << "/20 SOS samples survive 1e4 points; planted counterexample at x="
           << (planted.point.size() ? planted.point(0) : 0.0) << " min_eig " << planted.min_eig << "; "
           << tuples_ok << "/100 tuples pass, worst joint residual " << worst_joint;
}

// 8. determinism and lossless round trip
void determinism(Outcome& o) {
  CommandOptions opt;
  opt.policy.seed = 7;
  opt.mode = Mode::Full;
  int artifacts = 0;
  auto same = [&](const io::Json& a, const io::Json& b, const std::string& what) {
    o.require(io::dump(a) == io::dump(b), what);
  };
  for (const char* name : {"FIX-M2", "FIX-Q2", "FIX-D2"}) {
    const auto files = fx::demo_files(name);
    const auto again = fx::demo_files(name);
    for (std::size_t i = 0; i < files.size(); ++i) {
      o.require(files[i].content == again[i].content, files[i].name + " regenerated differently");
      const io::Json j = io::parse(files[i].content);
      const std::string type = j.value("type", "");
      if (type == "algebra") {
        const auto a = io::algebra_from_json(j);
        same(io::to_json(*a), j, files[i].name + " round trip");
        same(run_validate(*a, opt).to_json(), run_validate(*io::algebra_from_json(io::parse(io::dump(io::to_json(*a)))), opt).to_json(),
             files[i].name + " validate report");
      } else if (type == "cbmap") {
        const CBMap phi = io::map_from_json(j);
        same(io::to_json(phi), j, files[i].name + " round trip");
        same(run_cp_check(phi, opt).to_json(), run_cp_check(io::map_from_json(io::parse(io::dump(io::to_json(phi)))), opt).to_json(),
             files[i].name + " cp-check report");
        same(run_core_check(phi, opt).to_json(), run_core_check(phi, opt).to_json(),
             files[i].name + " core-check report");
        DilationResult dil;
        dil.h_dim = -1;
        const Report r1 = run_dilate(phi, opt, &dil);
        const Report r2 = run_dilate(phi, opt, nullptr);
        same(r1.to_json(), r2.to_json(), files[i].name + " dilate report");
        if (dil.h_dim >= 0) {
          const io::Json dj = io::to_json(dil);
          const DilationResult back = io::dilation_from_json(io::parse(io::dump(dj)));
          same(io::to_json(back), dj, files[i].name + " dilation round trip");
          same(run_verify(phi, dil, opt).to_json(), run_verify(phi, back, opt).to_json(),
               files[i].name + " verify report");
          same(run_largest_core(phi, dil, opt).to_json(), run_largest_core(phi, back, opt).to_json(),
               files[i].name + " largest-core report");
          ++artifacts;
        }
      } else if (type == "generators") {
        same(io::to_json(io::generators_from_json(j)), j, files[i].name + " round trip");
      } else if (type == "polymatrices") {
        same(io::to_json(io::polymatrices_from_json(j)), j, files[i].name + " round trip");
      }
      ++artifacts;
    }
  }
  // the cone pipeline twice with the same seed
  const auto d2 = fx::demo_files("FIX-D2");
  GeneratorTuple g;
  std::vector<PolyMatrix> ps;
  for (const auto& f : d2) {
    if (f.name == "FIX-D2-generators.json") g = io::generators_from_json(io::parse(f.content));
    if (f.name == "FIX-D2-polymatrices.json") ps = io::polymatrices_from_json(io::parse(f.content));
  }
  same(run_cone_check(g, ps, opt).to_json(), run_cone_check(g, ps, opt).to_json(), "cone-check report");
  // a random map with awkward floating point values
  const ts::RandomMap rm = ts::random_invariant_map(77);
  const io::Json mj = io::to_json(rm.phi);
  same(io::to_json(io::map_from_json(io::parse(io::dump(mj)))), mj, "random map round trip");
  const CBMap back = io::map_from_json(io::parse(io::dump(mj)));
  o.require(back.tensor == rm.phi.tensor, "random map tensor not bit-exact");
  o.detail << artifacts << " artifacts round-tripped byte-identically, reports identical on rerun";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"axiom suite", axiom_suite},
      {"positive vs completely positive", cp_separation},
      {"dilation of representation maps", dilation_theorem},
      {"classical recovery from Kraus maps", classical_recovery},
      {"unitary equivalence of dilations", equivalence},
      {"largest core", largest_core_property},
      {"positivity cone", cone},
      {"determinism and round trip", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.str().c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
