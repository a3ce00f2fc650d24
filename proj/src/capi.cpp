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

#include "pstar/pstar.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "pstar/commands.hpp"
#include "pstar/fixtures.hpp"
#include "pstar/io.hpp"

using namespace pstar;

struct pstar_algebra {
  std::shared_ptr<const Algebra> value;
};
struct pstar_map {
  CBMap value;
};
struct pstar_dilation {
  DilationResult value;
};
struct pstar_generators {
  GeneratorTuple value;
};
struct pstar_polymatrices {
  std::vector<PolyMatrix> value;
};
struct pstar_report {
  Report value;
};
struct pstar_file_list {
  std::vector<fixtures::FixtureFile> files;
};

namespace {

thread_local std::string last_error;

pstar_status status_of(ErrorCode code) {
  return static_cast<pstar_status>(static_cast<int>(code) + 1);
}

pstar_status fail(pstar_status s, const std::string& message) {
  last_error = message;
  return s;
}

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Runs `body` with exceptions translated to status codes.
template <class F>
pstar_status call(F&& body) {
  try {
    last_error.clear();
    body();
    return PSTAR_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const NullArgument& e) {
    return fail(PSTAR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PSTAR_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(PSTAR_INTERNAL_ERROR, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw NullArgument(std::string(what) + " is NULL");
}

CommandOptions options_of(const pstar_policy* p) {
  CommandOptions opt;
  if (!p) return opt;
  if (p->tol_rank > 0) opt.policy.rank_tol_factor = p->tol_rank;
  opt.policy.psd_tol = p->tol_psd;
  opt.policy.verify_tol = p->tol_verify;
  opt.policy.seed = p->seed;
  opt.policy.samples = p->samples;
  opt.falsify_samples = static_cast<Index>(p->falsify_samples);
  opt.mode = p->mode == PSTAR_MODE_FULL ? Mode::Full : Mode::Quasi;
  return opt;
}

template <class Handle, class Parse>
pstar_status from_json(const char* json, Handle** out, Parse&& parse) {
  if (!out) return fail(PSTAR_INVALID_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  return call([&] {
    require(json, "json");
    *out = new Handle{parse(io::parse(json))};
  });
}

template <class Handle>
pstar_status to_json(const Handle* h, char** out) {
  if (!h || !out) return fail(PSTAR_INVALID_ARGUMENT, "NULL argument");
  return call([&] {
    if constexpr (std::is_same_v<Handle, pstar_algebra>)
      *out = copy_string(io::dump(io::to_json(*h->value)));
    else
      *out = copy_string(io::dump(io::to_json(h->value)));
  });
}

template <class F>
pstar_status report(pstar_report** out, F&& body) {
  if (!out) return fail(PSTAR_INVALID_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  return call([&] { *out = new pstar_report{body()}; });
}

}  // namespace

extern "C" {

const char* pstar_version(void) { return "1.0.0"; }

const char* pstar_status_name(pstar_status status) {
  switch (status) {
    case PSTAR_OK: return "Ok";
    case PSTAR_INVALID_ARGUMENT: return "InvalidArgument";
    case PSTAR_INTERNAL_ERROR: return "InternalError";
    default:
      if (status > PSTAR_OK && status <= PSTAR_IO_ERROR)
        return to_string(static_cast<ErrorCode>(status - 1));
      return "Unknown";
  }
}

const char* pstar_last_error(void) { return last_error.c_str(); }

void pstar_policy_default(pstar_policy* policy) {
  if (!policy) return;
  const TolerancePolicy d;
  policy->tol_rank = 0.0;
  policy->tol_psd = d.psd_tol;
  policy->tol_verify = d.verify_tol;
  policy->seed = d.seed;
  policy->samples = d.samples;
  policy->falsify_samples = CommandOptions{}.falsify_samples;
  policy->mode = PSTAR_MODE_QUASI;
}

void pstar_string_free(char* s) { std::free(s); }

pstar_status pstar_read_file(const char* path, char** out) {
  if (!path || !out) return fail(PSTAR_INVALID_ARGUMENT, "NULL argument");
  return call([&] { *out = copy_string(io::read_file(path)); });
}

pstar_status pstar_write_file(const char* path, const char* content) {
  if (!path || !content) return fail(PSTAR_INVALID_ARGUMENT, "NULL argument");
  return call([&] { io::write_file(path, content); });
}

pstar_status pstar_algebra_from_json(const char* json, pstar_algebra** out) {
  return from_json(json, out, [](const io::Json& j) { return io::algebra_from_json(j); });
}
pstar_status pstar_algebra_to_json(const pstar_algebra* a, char** out) { return to_json(a, out); }
pstar_status pstar_algebra_dim(const pstar_algebra* a, int64_t* out) {
  if (!a || !out) return fail(PSTAR_INVALID_ARGUMENT, "NULL argument");
  *out = a->value->dim();
  return PSTAR_OK;
}
void pstar_algebra_free(pstar_algebra* a) { delete a; }

pstar_status pstar_map_from_json(const char* json, pstar_map** out) {
  return from_json(json, out, [](const io::Json& j) { return io::map_from_json(j); });
}
pstar_status pstar_map_to_json(const pstar_map* m, char** out) { return to_json(m, out); }
void pstar_map_free(pstar_map* m) { delete m; }

pstar_status pstar_dilation_from_json(const char* json, pstar_dilation** out) {
  return from_json(json, out, [](const io::Json& j) { return io::dilation_from_json(j); });
}
pstar_status pstar_dilation_to_json(const pstar_dilation* d, char** out) { return to_json(d, out); }
pstar_status pstar_dilation_h_dim(const pstar_dilation* d, int64_t* out) {
  if (!d || !out) return fail(PSTAR_INVALID_ARGUMENT, "NULL argument");
  *out = d->value.h_dim;
  return PSTAR_OK;
}
void pstar_dilation_free(pstar_dilation* d) { delete d; }

pstar_status pstar_generators_from_json(const char* json, pstar_generators** out) {
  return from_json(json, out, [](const io::Json& j) { return io::generators_from_json(j); });
}
pstar_status pstar_generators_to_json(const pstar_generators* g, char** out) { return to_json(g, out); }
void pstar_generators_free(pstar_generators* g) { delete g; }

pstar_status pstar_polymatrices_from_json(const char* json, pstar_polymatrices** out) {
  return from_json(json, out, [](const io::Json& j) { return io::polymatrices_from_json(j); });
}
pstar_status pstar_polymatrices_to_json(const pstar_polymatrices* p, char** out) {
  return to_json(p, out);
}
void pstar_polymatrices_free(pstar_polymatrices* p) { delete p; }

pstar_status pstar_validate(const pstar_algebra* a, const pstar_policy* policy, pstar_report** out) {
  return report(out, [&] {
    require(a, "algebra");
    return run_validate(*a->value, options_of(policy));
  });
}

pstar_status pstar_cp_check(const pstar_map* m, const pstar_policy* policy, pstar_report** out) {
  return report(out, [&] {
    require(m, "map");
    return run_cp_check(m->value, options_of(policy));
  });
}

pstar_status pstar_core_check(const pstar_map* m, const pstar_policy* policy, pstar_report** out) {
  return report(out, [&] {
    require(m, "map");
    return run_core_check(m->value, options_of(policy));
  });
}

pstar_status pstar_dilate(const pstar_map* m, const pstar_policy* policy, pstar_report** out,
                          pstar_dilation** dilation) {
  if (dilation) *dilation = nullptr;
  return report(out, [&] {
    require(m, "map");
    DilationResult dil;
    dil.h_dim = -1;
    Report r = run_dilate(m->value, options_of(policy), &dil);
    if (dilation && dil.h_dim >= 0) *dilation = new pstar_dilation{std::move(dil)};
    return r;
  });
}

pstar_status pstar_verify(const pstar_map* m, const pstar_dilation* d, const pstar_policy* policy,
                          pstar_report** out) {
  return report(out, [&] {
    require(m, "map");
    require(d, "dilation");
    return run_verify(m->value, d->value, options_of(policy));
  });
}

pstar_status pstar_equiv(const pstar_dilation* d1, const pstar_dilation* d2, const pstar_map* m1,
                         const pstar_map* m2, const pstar_policy* policy, pstar_report** out) {
  return report(out, [&] {
    require(d1, "first dilation");
    require(d2, "second dilation");
    require(m1, "map");
    return run_equiv(d1->value, d2->value, m1->value, (m2 ? m2 : m1)->value, options_of(policy));
  });
}

pstar_status pstar_largest_core(const pstar_map* m, const pstar_dilation* d,
                                const pstar_policy* policy, pstar_report** out) {
  return report(out, [&] {
    require(m, "map");
    require(d, "dilation");
    return run_largest_core(m->value, d->value, options_of(policy));
  });
}

pstar_status pstar_cone_check(const pstar_generators* g, const pstar_polymatrices* p,
                              const pstar_policy* policy, pstar_report** out) {
  return report(out, [&] {
    require(g, "generators");
    require(p, "polymatrices");
    return run_cone_check(g->value, p->value, options_of(policy));
  });
}

pstar_status pstar_error_report(const char* command, pstar_status status, const char* message,
                                const pstar_policy* policy, pstar_report** out) {
  return report(out, [&] {
    require(command, "command");
    ErrorCode code = ErrorCode::MalformedInput;
    if (status > PSTAR_OK && status <= PSTAR_IO_ERROR) code = static_cast<ErrorCode>(status - 1);
    return error_report(command, {}, options_of(policy), Error(code, message ? message : ""));
  });
}

pstar_status pstar_report_set_args(pstar_report* r, const char* const* args, size_t n) {
  if (!r || (n > 0 && !args)) return fail(PSTAR_INVALID_ARGUMENT, "NULL argument");
  return call([&] { r->value.args.assign(args, args + n); });
}

pstar_status pstar_report_render(const pstar_report* r, pstar_format format, char** out) {
  if (!r || !out) return fail(PSTAR_INVALID_ARGUMENT, "NULL argument");
  return call([&] {
    *out = copy_string(format == PSTAR_FORMAT_TEXT ? r->value.to_text()
                                                   : io::dump(r->value.to_json()));
  });
}

int pstar_report_exit_code(const pstar_report* r) { return r ? r->value.exit_code() : 2; }

void pstar_report_free(pstar_report* r) { delete r; }

pstar_status pstar_demo_files(const char* name, pstar_file_list** out) {
  if (!name || !out) return fail(PSTAR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return call([&] { *out = new pstar_file_list{fixtures::demo_files(name)}; });
}

size_t pstar_file_list_size(const pstar_file_list* l) { return l ? l->files.size() : 0; }

const char* pstar_file_list_name(const pstar_file_list* l, size_t i) {
  return l && i < l->files.size() ? l->files[i].name.c_str() : nullptr;
}

const char* pstar_file_list_content(const pstar_file_list* l, size_t i) {
  return l && i < l->files.size() ? l->files[i].content.c_str() : nullptr;
}

void pstar_file_list_free(pstar_file_list* l) { delete l; }

}  // extern "C"
