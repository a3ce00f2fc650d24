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

// Tolerance-governed dense linear algebra shared by every other module.
//
// Conventions used throughout pstar:
//  * inner products are linear in the first slot, conjugate-linear in the
//    second: <u, v> = v^H u;
//  * every rank / membership / PSD decision is driven by a TolerancePolicy,
//    so identical inputs and policy give identical decisions.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pstar {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class ErrorCode {
  MalformedInput,
  DimensionMismatch,
  NotHermitian,
  NotPSD,
  NotCommuting,
  NotInGamma,
  ZeroElement,
  NotInDomain,
  NotHermitianSymmetric,
  NotARepresentation,
  PartialProductUndefined,
  NotCompletelyPositive,
  CoreViolation,
  WellDefinednessViolation,
  UnitNotInCore,
  NotEquivalent,
  ArityMismatch,
  NotPositiveDefinite,
  NumericalFailure,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct TolerancePolicy {
  /// Relative eigenvalue cutoff for rank decisions; unset means
  /// (matrix dimension) * machine epsilon.
  std::optional<double> rank_tol_factor;
  double psd_tol = 1e-10;
  double verify_tol = 1e-8;
  std::uint64_t seed = 0;
  /// Sample count for randomized falsifiers.
  int samples = 64;

  double rank_factor(Index dim) const;
  void validate() const;
};

/// Seeded generator; the only source of randomness in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>()(engine_); }
  double cauchy() { return std::cauchy_distribution<double>()(engine_); }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  Complex complex_normal() { return {normal(), normal()}; }

  CVector complex_vector(Index n);
  CMatrix complex_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
CMatrix random_unitary(Index n, Rng& rng);
CMatrix random_hermitian(Index n, Rng& rng);

double max_abs(const CMatrix& a);
double hermitian_defect(const CMatrix& a);
void require_finite(const CMatrix& a, const char* what);

struct EigResult {
  RVector eigenvalues;  // descending
  CMatrix eigenvectors; // columns orthonormal, paired with eigenvalues
};

EigResult hermitian_eig(const CMatrix& a, const TolerancePolicy& pol);

struct PsdResult {
  bool is_psd = true;
  double min_eig = 0.0;
  double max_eig = 0.0;
};

PsdResult psd_min_eig(const CMatrix& a, const TolerancePolicy& pol);

struct RankResult {
  Index rank = 0;
  CMatrix range_basis;   // dim x rank
  /// rank x dim, Q = diag(sqrt(lambda_k)) V^H, so that A = Q^H Q on the
  /// kept spectrum and <u, v>_A = (Q v)^H (Q u).
  CMatrix quotient_map;
  RVector spectrum;      // all eigenvalues, descending
};

RankResult rank_range_null(const CMatrix& a, const TolerancePolicy& pol);

// --- subspaces -------------------------------------------------------------
//
// A subspace is carried as a matrix whose columns span it. Decisions use a
// relative tolerance `tol` on singular values.

CMatrix orthonormalize(const CMatrix& vectors, double tol);
/// Orthonormal basis of {x : m x = 0}; singular values <= tol * max(1, s_max)
/// count as zero.
CMatrix null_space(const CMatrix& m, double tol);
double distance_to_span(const CMatrix& span, const CVector& x, double tol);
bool in_span(const CMatrix& span, const CVector& x, double tol);
bool span_contains(const CMatrix& outer, const CMatrix& inner, double tol);
bool span_equal(const CMatrix& a, const CMatrix& b, double tol);
CMatrix span_intersection(const CMatrix& a, const CMatrix& b, double tol);
Index span_dim(const CMatrix& vectors, double tol);
/// Minimum-norm least-squares solution of a x = b.
CMatrix lstsq(const CMatrix& a, const CMatrix& b);

// --- joint diagonalization ---------------------------------------------------

struct JointSpectrum {
  CMatrix basis;   // unitary W
  RMatrix tuples;  // row r holds (lambda_1^(r), ..., lambda_m^(r))
  double residual = 0.0;
};

double max_commutator(const std::vector<CMatrix>& family);

JointSpectrum joint_diagonalize(const std::vector<CMatrix>& family,
                                const TolerancePolicy& pol);

}  // namespace pstar
