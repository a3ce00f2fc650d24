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

#include "pstar/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace pstar {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Error: return "error";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ArityMismatch:
    case ErrorCode::IoError:
      return true;
    default:
      return false;
  }
}

int Report::exit_code() const {
  if (error) return is_input_error(*error) ? 2 : 1;
  for (const Check& c : checks) {
    if (c.advisory) continue;
    if (c.status == CheckStatus::Fail || c.status == CheckStatus::Error) return 1;
  }
  return 0;
}

std::string Report::status() const {
  switch (exit_code()) {
    case 0: return "pass";
    case 1: return "fail";
    default: return "error";
  }
}

namespace {

io::Json policy_json(const CommandOptions& opt) {
  io::Json p;
  const TolerancePolicy& pol = opt.policy;
  p["tol_rank"] = pol.rank_tol_factor ? io::Json(*pol.rank_tol_factor) : io::Json("dim*eps");
  p["tol_psd"] = pol.psd_tol;
  p["tol_verify"] = pol.verify_tol;
  p["seed"] = pol.seed;
  p["samples"] = pol.samples;
  p["falsify_samples"] = opt.falsify_samples;
  p["mode"] = to_string(opt.mode);
  return p;
}

std::string text_value(const io::Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(6) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

}  // namespace

io::Json Report::to_json() const {
  io::Json j;
  j["command"] = command;
  j["args"] = args;
  j["policy"] = policy_json(options);
  j["status"] = status();
  j["exit_code"] = exit_code();
  if (error) {
    j["error"] = {{"code", pstar::to_string(*error)}, {"message", error_message}};
  }
  io::Json cs = io::Json::array();
  for (const Check& c : checks) {
    io::Json cj;
    cj["name"] = c.name;
    cj["status"] = pstar::to_string(c.status);
    if (c.advisory) cj["advisory"] = true;
    cj["data"] = c.data;
    cs.push_back(std::move(cj));
  }
  j["checks"] = std::move(cs);
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << command;
  for (const auto& a : args) os << ' ' << a;
  os << "\nstatus: " << status() << " (exit " << exit_code() << ")\n";
  if (error) os << "error: " << pstar::to_string(*error) << ": " << error_message << '\n';
  for (const Check& c : checks) {
    os << "  [" << pstar::to_string(c.status) << "] " << c.name;
    if (c.advisory) os << " (advisory)";
    os << '\n';
    for (const auto& [key, value] : c.data.items()) {
      if (value.is_array() && value.size() > 8) {
        os << "      " << key << ": [" << value.size() << " entries]\n";
        continue;
      }
      os << "      " << key << ": " << text_value(value) << '\n';
    }
  }
  return os.str();
}

Report error_report(const std::string& command, std::vector<std::string> args,
                    const CommandOptions& opt, const Error& e) {
  Report r;
  r.command = command;
  r.args = std::move(args);
  r.options = opt;
  r.error = e.code();
  r.error_message = e.what();
  return r;
}

namespace {

Report start(const std::string& command, const CommandOptions& opt) {
  Report r;
  r.command = command;
  r.options = opt;
  return r;
}

Check error_check(const std::string& name, const Error& e) {
  Check c{name, CheckStatus::Error};
  c.data["code"] = to_string(e.code());
  c.data["message"] = e.what();
  return c;
}

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

/// Runs `body`; a thrown input error aborts the report, any other error
/// becomes an error check named `name`.
template <class F>
void guarded(Report& r, const std::string& name, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    if (is_input_error(e.code())) throw;
    r.checks.push_back(error_check(name, e));
  }
}

template <class F>
Report run(const std::string& command, const CommandOptions& opt, F&& body) {
  Report r = start(command, opt);
  try {
    opt.policy.validate();
    body(r);
  } catch (const Error& e) {
    Report err = error_report(command, {}, opt, e);
    err.checks = std::move(r.checks);
    return err;
  }
  return r;
}

double tensor_scale(const CBMap& phi) {
  double s = 1.0;
  for (const Complex& z : phi.tensor) s = std::max(s, std::abs(z));
  return s;
}

io::Json dims_json(const CMatrix& basis) {
  return {{"dim", basis.cols()}, {"basis", io::subspace_to_json(basis)}};
}

}  // namespace

Report run_validate(const Algebra& a, const CommandOptions& opt) {
  return run("validate", opt, [&](Report& r) {
    const ValidationReport v = validate_axioms(a, opt.policy);
    for (const AxiomCheck& ax : v.checks) {
      Check c{ax.name, pass_if(ax.passed)};
      c.data["residual"] = ax.residual;
      c.data["witness"] = ax.witness;
      r.checks.push_back(std::move(c));
    }
    const SemiAssociativity sa = check_semi_associative(a, opt.policy);
    Check c{"semi_associativity", pass_if(sa.holds)};
    c.data["residual"] = sa.residual;
    c.data["witness"] = sa.witness;
    r.checks.push_back(std::move(c));

    Check m{"multipliers", CheckStatus::Pass};
    guarded(r, "multipliers", [&] {
      const UniversalMultipliers um = universal_multipliers(a, opt.policy);
      m.data["total"] = a.is_total();
      m.data["right_dim"] = um.right.cols();
      m.data["left_dim"] = um.left.cols();
      m.data["both_dim"] = um.both.cols();
      r.checks.push_back(std::move(m));
    });
  });
}

Report run_cp_check(const CBMap& phi, const CommandOptions& opt) {
  return run("cp-check", opt, [&](Report& r) {
    const double defect = hermitian_symmetry_defect(phi);
    const double tol = opt.policy.verify_tol * tensor_scale(phi);
    Check h{"hermitian_symmetry", pass_if(defect <= tol)};
    h.data["defect"] = defect;
    h.data["tolerance"] = tol;
    r.checks.push_back(std::move(h));

    guarded(r, "completely_positive", [&] {
      const CpResult cp = check_completely_positive(phi, opt.policy);
      Check c{"completely_positive", pass_if(cp.is_cp)};
      c.data["min_eig"] = cp.min_eig;
      c.data["max_eig"] = cp.max_eig;
      r.checks.push_back(std::move(c));
    });
    guarded(r, "positive", [&] {
      const PositivityResult p = check_positive(phi, opt.policy);
      Check c{"positive", pass_if(p.positive)};
      c.data["min_eig"] = p.min_eig;
      c.data["witness"] = p.witness;
      r.checks.push_back(std::move(c));
    });
  });
}

Report run_core_check(const CBMap& phi, const CommandOptions& opt) {
  return run("core-check", opt, [&](Report& r) {
    const CoreReport rep = check_core(phi, phi.core, opt.policy, opt.mode);
    for (const CoreCondition& cond : rep.conditions) {
      Check c{cond.name, pass_if(cond.passed)};
      c.advisory = cond.name == "I4_sampled";
      c.data["residual"] = cond.residual;
      c.data["witness"] = cond.witness;
      r.checks.push_back(std::move(c));
    }
    Check t{"totally_invariant", CheckStatus::Pass};
    t.advisory = true;
    t.data["value"] = rep.totally_invariant;
    t.data["core_dim"] = phi.core.cols();
    r.checks.push_back(std::move(t));
  });
}

Report run_dilate(const CBMap& phi, const CommandOptions& opt, DilationResult* out) {
  return run("dilate", opt, [&](Report& r) {
    guarded(r, "dilation", [&] {
      DilationResult dil = dilate(phi, opt.policy, opt.mode);
      Check c{"dilation", CheckStatus::Pass};
      c.data["h_dim"] = dil.h_dim;
      c.data["welldef_residual"] = dil.welldef_residual;
      c.data["unit_in_core"] = dil.v.has_value();
      c.data["gram_spectrum"] = io::to_json(dil.gram_spectrum);
      r.checks.push_back(std::move(c));

      const double res = verify_dilation_identity(phi, dil, opt.policy);
      const double tol = opt.policy.verify_tol * tensor_scale(phi);
      Check id{"dilation_identity", pass_if(res <= tol)};
      id.data["residual"] = res;
      id.data["tolerance"] = tol;
      r.checks.push_back(std::move(id));
      if (out) *out = std::move(dil);
    });
  });
}

Report run_verify(const CBMap& phi, const DilationResult& dil, const CommandOptions& opt) {
  return run("verify", opt, [&](Report& r) {
    const double res = verify_dilation_identity(phi, dil, opt.policy);
    const double tol = opt.policy.verify_tol * tensor_scale(phi);
    Check id{"dilation_identity", pass_if(res <= tol)};
    id.data["residual"] = res;
    id.data["tolerance"] = tol;
    r.checks.push_back(std::move(id));

    const RepReport rep = verify_representation(dil, *phi.algebra, opt.policy, dil.mode);
    Check rc{"representation", pass_if(rep.passed)};
    rc.data["mode"] = to_string(dil.mode);
    rc.data["star_residual"] = rep.star_residual;
    rc.data["product_residual"] = rep.product_residual;
    rc.data["unit_residual"] = rep.unit_residual;
    rc.data["witness"] = rep.witness;
    r.checks.push_back(std::move(rc));

    if (!dil.v) {
      Check s{"isometry_bound", CheckStatus::Skipped};
      s.data["reason"] = "the unit is not in the core, V is undefined";
      r.checks.push_back(std::move(s));
      return;
    }
    const IsometryReport iso = isometry_bound_check(phi, dil, opt.policy);
    Check ic{"isometry_bound", pass_if(iso.factorization_residual <= tol)};
    ic.data["norm_v"] = iso.norm_v;
    ic.data["is_isometry"] = iso.is_isometry;
    ic.data["isometry_residual"] = iso.isometry_residual;
    ic.data["unit_form_residual"] = iso.unit_form_residual;
    ic.data["factorization_residual"] = iso.factorization_residual;
    r.checks.push_back(std::move(ic));
  });
}

Report run_equiv(const DilationResult& d1, const DilationResult& d2, const CBMap& phi1,
                 const CBMap& phi2, const CommandOptions& opt) {
  return run("equiv", opt, [&](Report& r) {
    try {
      const EquivalenceResult eq = unitary_equivalence(d1, d2, phi1, phi2, opt.policy);
      Check c{"unitary_equivalence", pass_if(eq.residual <= opt.policy.verify_tol)};
      c.data["residual"] = eq.residual;
      c.data["overlap_residual"] = eq.overlap_residual;
      c.data["unitarity_residual"] = eq.unitarity_residual;
      c.data["intertwining_residual"] = eq.intertwining_residual;
      c.data["v_residual"] = eq.v_residual;
      c.data["u"] = io::to_json(eq.u);
      r.checks.push_back(std::move(c));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotEquivalent) throw;
      Check c{"unitary_equivalence", CheckStatus::Fail};
      c.data["code"] = to_string(e.code());
      c.data["message"] = e.what();
      r.checks.push_back(std::move(c));
    }
  });
}

Report run_largest_core(const CBMap& phi, const DilationResult& dil, const CommandOptions& opt) {
  return run("largest-core", opt, [&](Report& r) {
    const double tol = opt.policy.verify_tol;
    const CMatrix lc = largest_core(phi, dil, opt.policy);
    Check c{"largest_core", CheckStatus::Pass};
    c.data = dims_json(lc);
    r.checks.push_back(std::move(c));

    Check inc{"contains_input_core", pass_if(span_contains(lc, dil.core, tol))};
    inc.data["input_core_dim"] = dil.core.cols();
    r.checks.push_back(std::move(inc));

    guarded(r, "fixed_point", [&] {
      const CBMap enlarged = with_core(phi, lc);
      const DilationResult big = dilate(enlarged, opt.policy, dil.mode);
      const CMatrix again = largest_core(enlarged, big, opt.policy);
      Check fp{"fixed_point", pass_if(span_equal(again, lc, tol))};
      fp.data["dim"] = again.cols();
      fp.data["inclusion_residual"] = core_inclusion_residual(phi, dil, big, opt.policy);
      r.checks.push_back(std::move(fp));
    });
  });
}

Report run_cone_check(const GeneratorTuple& gens, const std::vector<PolyMatrix>& ps,
                      const CommandOptions& opt) {
  return run("cone-check", opt, [&](Report& r) {
    bool all_pd = true;
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const FalsifyResult f = pd_falsify(ps[k], opt.policy, opt.falsify_samples);
      Check c{"positive_definite[" + std::to_string(k) + "]", pass_if(!f.counterexample)};
      c.data["points_checked"] = f.points_checked;
      c.data["min_eig"] = f.min_eig;
      if (f.counterexample) c.data["counterexample"] = io::to_json(f.point);
      all_pd = all_pd && !f.counterexample;
      r.checks.push_back(std::move(c));
    }
    if (!all_pd) {
      Check s{"completely_positive", CheckStatus::Skipped};
      s.data["reason"] = "an input matrix is not positive definite";
      r.checks.push_back(std::move(s));
      return;
    }
    guarded(r, "completely_positive", [&] {
      const ConeReport rep = cone_cp_check(gens, ps, opt.policy.samples, opt.falsify_samples, opt.policy);
      const bool joint_ok = rep.joint_residual <= opt.policy.verify_tol;
      Check j{"joint_diagonalization", pass_if(joint_ok)};
      j.data["residual"] = rep.joint_residual;
      j.data["points"] = rep.joint_spectrum.rows();
      r.checks.push_back(std::move(j));
      for (std::size_t k = 0; k < rep.items.size(); ++k) {
        const ConeItemReport& it = rep.items[k];
        Check c{"completely_positive[" + std::to_string(k) + "]",
                pass_if(it.sampled_pass && it.exact_pass)};
        c.data["sampled_pass"] = it.sampled_pass;
        c.data["sampled_min"] = it.sampled_min;
        c.data["exact_pass"] = it.exact_pass;
        c.data["exact_min_eig"] = it.exact_min_eig;
        c.data["block_residual"] = it.block_residual;
        r.checks.push_back(std::move(c));
      }
    });
  });
}

}  // namespace pstar
