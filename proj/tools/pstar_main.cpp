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

// pstar: command-line front end over the C API.
//
// Exit codes: 0 all checks pass, 1 a property failed, 2 malformed input or
// I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pstar/pstar.h"

namespace {

struct Options {
  double tol_rank = 0.0;
  double tol_psd = 1e-10;
  double tol_verify = 1e-8;
  uint64_t seed = 0;
  int samples = 64;
  int64_t falsify_samples = 10000;
  std::string mode = "quasi";
  std::string report = "json";
};

struct InputError {
  pstar_status status;
  std::string message;
};

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Owned = std::unique_ptr<T, Deleter<T, Free>>;

using AlgebraPtr = Owned<pstar_algebra, pstar_algebra_free>;
using MapPtr = Owned<pstar_map, pstar_map_free>;
using DilationPtr = Owned<pstar_dilation, pstar_dilation_free>;
using GeneratorsPtr = Owned<pstar_generators, pstar_generators_free>;
using PolysPtr = Owned<pstar_polymatrices, pstar_polymatrices_free>;
using ReportPtr = Owned<pstar_report, pstar_report_free>;

std::string take(char* s) {
  std::string out(s ? s : "");
  pstar_string_free(s);
  return out;
}

void check(pstar_status s, const std::string& context) {
  if (s != PSTAR_OK) throw InputError{s, context + ": " + pstar_last_error()};
}

std::string read(const std::string& path) {
  char* text = nullptr;
  check(pstar_read_file(path.c_str(), &text), path);
  return take(text);
}

template <class Ptr, class T>
Ptr load(const std::string& path, pstar_status (*parse)(const char*, T**)) {
  T* raw = nullptr;
  check(parse(read(path).c_str(), &raw), path);
  return Ptr(raw);
}

pstar_policy policy_of(const Options& o) {
  pstar_policy p;
  pstar_policy_default(&p);
  p.tol_rank = o.tol_rank;
  p.tol_psd = o.tol_psd;
  p.tol_verify = o.tol_verify;
  p.seed = o.seed;
  p.samples = o.samples;
  p.falsify_samples = o.falsify_samples;
  p.mode = o.mode == "full" ? PSTAR_MODE_FULL : PSTAR_MODE_QUASI;
  return p;
}

int emit(pstar_report* raw, const Options& o, const std::vector<std::string>& args) {
  ReportPtr r(raw);
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  pstar_report_set_args(r.get(), argv.data(), argv.size());
  char* text = nullptr;
  check(pstar_report_render(r.get(), o.report == "text" ? PSTAR_FORMAT_TEXT : PSTAR_FORMAT_JSON, &text),
        "render");
  std::cout << take(text);
  return pstar_report_exit_code(r.get());
}

int emit_error(const std::string& command, const InputError& e, const Options& o,
               const std::vector<std::string>& args) {
  const pstar_policy p = policy_of(o);
  pstar_report* r = nullptr;
  if (pstar_error_report(command.c_str(), e.status, e.message.c_str(), &p, &r) != PSTAR_OK) {
    std::cerr << "pstar: " << e.message << '\n';
    return 2;
  }
  return emit(r, o, args);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial *-algebras, completely positive maps and their dilations"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--tol-rank", o.tol_rank, "relative eigenvalue cutoff for rank (default dim*eps)");
  app.add_option("--tol-psd", o.tol_psd, "relative PSD tolerance")->capture_default_str();
  app.add_option("--tol-verify", o.tol_verify, "residual tolerance for identities")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for every randomized check")->capture_default_str();
  app.add_option("--samples", o.samples, "sample count for randomized checks")->capture_default_str();
  app.add_option("--falsify-samples", o.falsify_samples, "points for the positive-definiteness falsifier")
      ->capture_default_str();
  app.add_option("--report", o.report, "report format")->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string command;
  std::vector<std::string> files;
  std::string out_path;
  std::string out_dir = ".";
  std::string fixture;

  auto* validate = app.add_subcommand("validate", "check the partial *-algebra axioms");
  validate->add_option("algebra", files, "algebra JSON")->required()->expected(1);

  auto* cp = app.add_subcommand("cp-check", "hermitian symmetry, complete positivity, positivity");
  cp->add_option("map", files, "map JSON")->required()->expected(1);

  auto* core = app.add_subcommand("core-check", "core conditions of the map's core");
  core->add_option("map", files, "map JSON")->required()->expected(1);
  core->add_option("--mode", o.mode, "invariance mode")->check(CLI::IsMember({"quasi", "full"}));

  auto* dil = app.add_subcommand("dilate", "build the dilation of a map");
  dil->add_option("map", files, "map JSON")->required()->expected(1);
  dil->add_option("-o,--output", out_path, "dilation JSON to write")->required();
  dil->add_option("--mode", o.mode, "invariance mode")->check(CLI::IsMember({"quasi", "full"}));

  auto* ver = app.add_subcommand("verify", "check a dilation against its map");
  ver->add_option("files", files, "map JSON, dilation JSON")->required()->expected(2);

  auto* eq = app.add_subcommand("equiv", "unitary equivalence of two dilations");
  eq->add_option("files", files, "d1 JSON, d2 JSON, map JSON [, second map JSON]")
      ->required()
      ->expected(3, 4);

  auto* lc = app.add_subcommand("largest-core", "largest core of a map");
  lc->add_option("files", files, "map JSON, dilation JSON")->required()->expected(2);

  auto* cone = app.add_subcommand("cone-check", "complete positivity on a commutative algebra");
  cone->add_option("files", files, "generators JSON, polymatrices JSON")->required()->expected(2);

  auto* demo = app.add_subcommand("demo", "write the fixture files of a reference algebra");
  demo->add_option("fixture", fixture, "FIX-M2, FIX-Q2 or FIX-D2")->required();
  demo->add_option("--out-dir", out_dir, "directory for the files")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  command = app.get_subcommands().front()->get_name();
  std::vector<std::string> args = files;
  if (!out_path.empty()) args.insert(args.end(), {"-o", out_path});

  try {
    const pstar_policy p = policy_of(o);
    pstar_report* r = nullptr;
    if (command == "validate") {
      auto a = load<AlgebraPtr>(files[0], pstar_algebra_from_json);
      check(pstar_validate(a.get(), &p, &r), command);
    } else if (command == "cp-check") {
      auto m = load<MapPtr>(files[0], pstar_map_from_json);
      check(pstar_cp_check(m.get(), &p, &r), command);
    } else if (command == "core-check") {
      auto m = load<MapPtr>(files[0], pstar_map_from_json);
      check(pstar_core_check(m.get(), &p, &r), command);
    } else if (command == "dilate") {
      auto m = load<MapPtr>(files[0], pstar_map_from_json);
      pstar_dilation* raw = nullptr;
      check(pstar_dilate(m.get(), &p, &r, &raw), command);
      DilationPtr d(raw);
      if (d) {
        char* text = nullptr;
        check(pstar_dilation_to_json(d.get(), &text), "dilation");
        const std::string json = take(text);
        if (pstar_write_file(out_path.c_str(), json.c_str()) != PSTAR_OK) {
          pstar_report_free(r);
          throw InputError{PSTAR_IO_ERROR, pstar_last_error()};
        }
      }
    } else if (command == "verify" || command == "largest-core") {
      auto m = load<MapPtr>(files[0], pstar_map_from_json);
      auto d = load<DilationPtr>(files[1], pstar_dilation_from_json);
      if (command == "verify")
        check(pstar_verify(m.get(), d.get(), &p, &r), command);
      else
        check(pstar_largest_core(m.get(), d.get(), &p, &r), command);
    } else if (command == "equiv") {
      auto d1 = load<DilationPtr>(files[0], pstar_dilation_from_json);
      auto d2 = load<DilationPtr>(files[1], pstar_dilation_from_json);
      auto m1 = load<MapPtr>(files[2], pstar_map_from_json);
      MapPtr m2;
      if (files.size() > 3) m2 = load<MapPtr>(files[3], pstar_map_from_json);
      check(pstar_equiv(d1.get(), d2.get(), m1.get(), m2.get(), &p, &r), command);
    } else if (command == "cone-check") {
      auto g = load<GeneratorsPtr>(files[0], pstar_generators_from_json);
      auto ps = load<PolysPtr>(files[1], pstar_polymatrices_from_json);
      check(pstar_cone_check(g.get(), ps.get(), &p, &r), command);
    } else if (command == "demo") {
      pstar_file_list* raw = nullptr;
      check(pstar_demo_files(fixture.c_str(), &raw), fixture);
      Owned<pstar_file_list, pstar_file_list_free> list(raw);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw InputError{PSTAR_IO_ERROR, "cannot create '" + out_dir + "': " + ec.message()};
      for (size_t i = 0; i < pstar_file_list_size(list.get()); ++i) {
        const std::string path =
            (std::filesystem::path(out_dir) / pstar_file_list_name(list.get(), i)).string();
        check(pstar_write_file(path.c_str(), pstar_file_list_content(list.get(), i)), path);
        std::cout << path << '\n';
      }
      return 0;
    }
    return emit(r, o, args);
  } catch (const InputError& e) {
    return emit_error(command, e, o, args);
  }
}
