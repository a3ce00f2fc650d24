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

#include "pstar/io.hpp"

#include <fstream>
#include <sstream>

namespace pstar::io {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedInput, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed("expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

Index index_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    malformed(std::string("field '") + key + "' must be a non-negative integer");
  return static_cast<Index>(v.get<long long>());
}

double number(const Json& j) {
  if (!j.is_number()) malformed("expected a number");
  return j.get<double>();
}

void expect_type(const Json& j, const char* type) {
  auto it = j.find("type");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != type))
    malformed(std::string("expected an object of type '") + type + "'");
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) malformed("complex number must be [re, im]");
  return {number(j[0]), number(j[1])};
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json subspace_to_json(const CMatrix& basis) {
  Json out = Json::array();
  for (Index c = 0; c < basis.cols(); ++c) out.push_back(to_json(CVector(basis.col(c))));
  return out;
}

CMatrix matrix_from_json(const Json& j, Index rows, Index cols) {
  if (!j.is_array()) malformed("matrix must be an array of rows");
  if (j.empty()) return CMatrix::Zero(rows, cols);
  const Index r = static_cast<Index>(j.size());
  if (!j[0].is_array()) malformed("matrix row must be an array");
  const Index c = static_cast<Index>(j[0].size());
  if (c == 0 && cols != 0) malformed("matrix has empty rows");
  CMatrix m(r, c);
  for (Index a = 0; a < r; ++a) {
    const Json& row = j[static_cast<std::size_t>(a)];
    if (!row.is_array() || static_cast<Index>(row.size()) != c) malformed("ragged matrix");
    for (Index b = 0; b < c; ++b) m(a, b) = complex_from_json(row[static_cast<std::size_t>(b)]);
  }
  return m;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) malformed("vector must be an array");
  CVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

RVector real_vector_from_json(const Json& j) {
  if (!j.is_array()) malformed("vector must be an array");
  RVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number(j[i]);
  return v;
}

CMatrix subspace_from_json(const Json& j, Index ambient) {
  if (!j.is_array()) malformed("subspace must be an array of vectors");
  CMatrix basis(ambient, static_cast<Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    CVector v = vector_from_json(j[c]);
    if (v.size() != ambient)
      throw Error(ErrorCode::DimensionMismatch, "subspace vector has length " +
                                                    std::to_string(v.size()) + ", expected " +
                                                    std::to_string(ambient));
    basis.col(static_cast<Index>(c)) = v;
  }
  return basis;
}

// ---- Algebra ----

Json to_json(const Algebra& a) {
  const AlgebraData& d = a.data();
  Json j;
  j["type"] = "algebra";
  j["name"] = d.name;
  j["dim"] = a.dim();
  j["labels"] = d.labels;
  j["involution"] = to_json(d.involution);
  Json gamma = Json::array();
  for (const auto& row : d.gamma) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    gamma.push_back(std::move(r));
  }
  j["gamma"] = std::move(gamma);
  Json sc = Json::array();
  for (const auto& c : d.structure_constants)
    sc.push_back({{"i", c.i}, {"j", c.j}, {"k", c.k}, {"re", c.value.real()}, {"im", c.value.imag()}});
  j["structure_constants"] = std::move(sc);
  j["unit"] = to_json(d.unit);
  if (d.designated_subalgebra) j["designated_subalgebra"] = subspace_to_json(*d.designated_subalgebra);
  return j;
}

std::shared_ptr<const Algebra> algebra_from_json(const Json& j) {
  return guarded([&] {
    expect_type(j, "algebra");
    AlgebraData d;
    const Index dim = index_field(j, "dim");
    if (j.contains("name")) d.name = field(j, "name").get<std::string>();
    if (j.contains("labels")) {
      d.labels = field(j, "labels").get<std::vector<std::string>>();
    } else {
      for (Index i = 0; i < dim; ++i) d.labels.push_back("e" + std::to_string(i));
    }
    d.involution = matrix_from_json(field(j, "involution"), dim, dim);
    const Json& g = field(j, "gamma");
    if (!g.is_array()) malformed("gamma must be a matrix of 0/1");
    for (const Json& row : g) {
      if (!row.is_array()) malformed("gamma row must be an array");
      std::vector<bool> r;
      for (const Json& b : row) {
        if (b.is_boolean()) r.push_back(b.get<bool>());
        else if (b.is_number_integer() && (b.get<int>() == 0 || b.get<int>() == 1))
          r.push_back(b.get<int>() == 1);
        else malformed("gamma entries must be 0/1 or booleans");
      }
      d.gamma.push_back(std::move(r));
    }
    for (const Json& c : field(j, "structure_constants")) {
      d.structure_constants.push_back({index_field(c, "i"), index_field(c, "j"), index_field(c, "k"),
                                       Complex(number(field(c, "re")),
                                               c.contains("im") ? number(c["im"]) : 0.0)});
    }
    d.unit = vector_from_json(field(j, "unit"));
    if (j.contains("designated_subalgebra") && !j["designated_subalgebra"].is_null())
      d.designated_subalgebra = subspace_from_json(j["designated_subalgebra"], dim);
    return std::make_shared<const Algebra>(std::move(d));
  });
}

// ---- CBMap ----

Json to_json(const CBMap& phi) {
  Json j;
  j["type"] = "cbmap";
  j["name"] = phi.name;
  j["algebra"] = to_json(*phi.algebra);
  j["x_dim"] = phi.x_dim;
  j["domain"] = subspace_to_json(phi.domain);
  j["core"] = subspace_to_json(phi.core);
  const Index m = phi.domain_dim();
  Json t = Json::array();
  for (Index i = 0; i < m; ++i) {
    Json ti = Json::array();
    for (Index k = 0; k < m; ++k) {
      Json tk = Json::array();
      for (Index p = 0; p < phi.x_dim; ++p) {
        Json tp = Json::array();
        for (Index q = 0; q < phi.x_dim; ++q) tp.push_back(complex_to_json(phi.at(i, k, p, q)));
        tk.push_back(std::move(tp));
      }
      ti.push_back(std::move(tk));
    }
    t.push_back(std::move(ti));
  }
  j["tensor"] = std::move(t);
  return j;
}

CBMap map_from_json(const Json& j) {
  return guarded([&] {
    expect_type(j, "cbmap");
    CBMap phi;
    if (j.contains("name")) phi.name = field(j, "name").get<std::string>();
    phi.algebra = algebra_from_json(field(j, "algebra"));
    const Index n = phi.algebra->dim();
    phi.x_dim = index_field(j, "x_dim");
    phi.domain = j.contains("domain") ? subspace_from_json(j["domain"], n) : CMatrix(CMatrix::Identity(n, n));
    phi.core = subspace_from_json(field(j, "core"), n);
    const Index m = phi.domain_dim();
    const Index d = phi.x_dim;
    const Json& t = field(j, "tensor");
    auto sized = [](const Json& a, Index len) {
      if (!a.is_array() || static_cast<Index>(a.size()) != len)
        throw Error(ErrorCode::DimensionMismatch, "tensor shape does not match [m][m][d][d]");
    };
    phi.tensor.assign(static_cast<std::size_t>(m * m * d * d), 0.0);
    sized(t, m);
    for (Index i = 0; i < m; ++i) {
      const Json& ti = t[static_cast<std::size_t>(i)];
      sized(ti, m);
      for (Index k = 0; k < m; ++k) {
        const Json& tk = ti[static_cast<std::size_t>(k)];
        sized(tk, d);
        for (Index p = 0; p < d; ++p) {
          const Json& tp = tk[static_cast<std::size_t>(p)];
          sized(tp, d);
          for (Index q = 0; q < d; ++q) phi.at(i, k, p, q) = complex_from_json(tp[static_cast<std::size_t>(q)]);
        }
      }
    }
    check_shape(phi);
    return phi;
  });
}

// ---- DilationResult ----

Json to_json(const DilationResult& dil) {
  Json j;
  j["type"] = "dilation";
  j["mode"] = to_string(dil.mode);
  j["h_dim"] = dil.h_dim;
  j["algebra_dim"] = dil.core.rows();
  j["x_dim"] = dil.v ? dil.v->cols() : Index(0);
  j["lambda_cols"] = dil.lambda_map.cols();
  j["lambda_map"] = to_json(dil.lambda_map);
  Json pis = Json::array();
  for (const CMatrix& p : dil.pi) pis.push_back(to_json(p));
  j["pi"] = std::move(pis);
  j["v"] = dil.v ? to_json(*dil.v) : Json(nullptr);
  j["gram_spectrum"] = to_json(dil.gram_spectrum);
  j["welldef_residual"] = dil.welldef_residual;
  j["core"] = subspace_to_json(dil.core);
  return j;
}

DilationResult dilation_from_json(const Json& j) {
  return guarded([&] {
    expect_type(j, "dilation");
    DilationResult dil;
    dil.mode = mode_from_string(field(j, "mode").get<std::string>());
    dil.h_dim = index_field(j, "h_dim");
    const Index n = index_field(j, "algebra_dim");
    const Index h = dil.h_dim;
    dil.lambda_map = matrix_from_json(field(j, "lambda_map"), h, index_field(j, "lambda_cols"));
    if (dil.lambda_map.rows() != h) malformed("lambda_map row count differs from h_dim");
    const Json& pis = field(j, "pi");
    if (!pis.is_array() || static_cast<Index>(pis.size()) != n)
      malformed("pi must hold one matrix per algebra basis element");
    for (const Json& p : pis) {
      CMatrix m = matrix_from_json(p, h, h);
      if (m.rows() != h || m.cols() != h) malformed("pi(e_i) must be h_dim x h_dim");
      dil.pi.push_back(std::move(m));
    }
    const Json& v = field(j, "v");
    if (!v.is_null()) {
      CMatrix vm = matrix_from_json(v, h, index_field(j, "x_dim"));
      if (vm.rows() != h) malformed("V must have h_dim rows");
      dil.v = std::move(vm);
    }
    dil.gram_spectrum = real_vector_from_json(field(j, "gram_spectrum"));
    dil.welldef_residual = number(field(j, "welldef_residual"));
    dil.core = subspace_from_json(field(j, "core"), n);
    return dil;
  });
}

// ---- cone inputs ----

Json to_json(const GeneratorTuple& g) {
  Json j;
  j["type"] = "generators";
  Json gens = Json::array();
  for (const CMatrix& b : g.generators) gens.push_back(to_json(b));
  j["generators"] = std::move(gens);
  if (g.images) {
    Json imgs = Json::array();
    for (const CMatrix& b : *g.images) imgs.push_back(to_json(b));
    j["images"] = std::move(imgs);
  }
  return j;
}

GeneratorTuple generators_from_json(const Json& j) {
  return guarded([&] {
    expect_type(j, "generators");
    GeneratorTuple g;
    for (const Json& b : field(j, "generators")) g.generators.push_back(matrix_from_json(b));
    if (j.contains("images") && !j["images"].is_null()) {
      std::vector<CMatrix> imgs;
      for (const Json& b : j["images"]) imgs.push_back(matrix_from_json(b));
      g.images = std::move(imgs);
    }
    return g;
  });
}

Json to_json(const PolyMatrix& p) {
  Json j;
  j["rows"] = p.rows();
  j["cols"] = p.cols();
  j["vars"] = p.vars();
  Json entries = Json::array();
  for (Index k = 0; k < p.rows(); ++k) {
    Json row = Json::array();
    for (Index l = 0; l < p.cols(); ++l) {
      Json terms = Json::array();
      for (const auto& [exps, c] : p(k, l))
        terms.push_back({{"exp", exps}, {"re", c.real()}, {"im", c.imag()}});
      row.push_back(std::move(terms));
    }
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const std::vector<PolyMatrix>& ps) {
  Json j;
  j["type"] = "polymatrices";
  Json items = Json::array();
  for (const PolyMatrix& p : ps) items.push_back(to_json(p));
  j["items"] = std::move(items);
  return j;
}

PolyMatrix polymatrix_from_json(const Json& j) {
  return guarded([&] {
    const Index rows = index_field(j, "rows");
    const Index cols = index_field(j, "cols");
    PolyMatrix p(rows, cols, index_field(j, "vars"));
    const Json& entries = field(j, "entries");
    if (!entries.is_array() || static_cast<Index>(entries.size()) != rows)
      malformed("entries must have one row per polymatrix row");
    for (Index k = 0; k < rows; ++k) {
      const Json& row = entries[static_cast<std::size_t>(k)];
      if (!row.is_array() || static_cast<Index>(row.size()) != cols) malformed("ragged polymatrix");
      for (Index l = 0; l < cols; ++l)
        for (const Json& term : row[static_cast<std::size_t>(l)]) {
          const Json& e = field(term, "exp");
          if (!e.is_array()) malformed("exp must be an array of exponents");
          Monomial mono;
          for (const Json& x : e) {
            if (!x.is_number_integer() || x.get<int>() < 0) malformed("exponents must be non-negative integers");
            mono.push_back(x.get<int>());
          }
          p.add_term(k, l, mono,
                     Complex(number(field(term, "re")), term.contains("im") ? number(term["im"]) : 0.0));
        }
    }
    return p;
  });
}

std::vector<PolyMatrix> polymatrices_from_json(const Json& j) {
  return guarded([&] {
    const Json* items = &j;
    if (j.is_object()) {
      expect_type(j, "polymatrices");
      items = &field(j, "items");
    }
    if (!items->is_array()) malformed("polymatrices must be an array");
    std::vector<PolyMatrix> ps;
    for (const Json& p : *items) ps.push_back(polymatrix_from_json(p));
    return ps;
  });
}

}  // namespace pstar::io
