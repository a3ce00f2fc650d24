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

// JSON encoding of every artifact. Complex numbers are [re, im], matrices
// are arrays of rows, subspaces are arrays of basis vectors.
//
// Decoding errors surface as Error(MalformedInput); file errors as
// Error(IoError).

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "pstar/cbmap.hpp"
#include "pstar/cone.hpp"
#include "pstar/dilation.hpp"
#include "pstar/palgebra.hpp"

namespace pstar::io {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j);
Json parse(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(const CMatrix& m);
Json to_json(const CVector& v);
Json to_json(const RVector& v);
/// Columns of `basis` as an array of vectors.
Json subspace_to_json(const CMatrix& basis);

/// `rows`/`cols` are only consulted for empty arrays.
CMatrix matrix_from_json(const Json& j, Index rows = 0, Index cols = 0);
CVector vector_from_json(const Json& j);
RVector real_vector_from_json(const Json& j);
CMatrix subspace_from_json(const Json& j, Index ambient);

Json to_json(const Algebra& a);
Json to_json(const CBMap& phi);
Json to_json(const DilationResult& dil);
Json to_json(const GeneratorTuple& g);
Json to_json(const PolyMatrix& p);
Json to_json(const std::vector<PolyMatrix>& ps);

std::shared_ptr<const Algebra> algebra_from_json(const Json& j);
CBMap map_from_json(const Json& j);
DilationResult dilation_from_json(const Json& j);
GeneratorTuple generators_from_json(const Json& j);
PolyMatrix polymatrix_from_json(const Json& j);
std::vector<PolyMatrix> polymatrices_from_json(const Json& j);

}  // namespace pstar::io
