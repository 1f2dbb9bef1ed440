/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cop/prng.hpp"

namespace cop {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Raised when an input violates a data contract (bad norm, bad trace,
// non-unitary basis, malformed file, ...).
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when required structure is missing (e.g. no tensor factorization).
class structural_error : public validation_error {
 public:
  using validation_error::validation_error;
};

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double psd = 1e-10;         // eigenvalues >= -psd
inline constexpr double unit_norm = 1e-10;
inline constexpr double completeness = 1e-9;
inline constexpr double basis_unitarity = 1e-9;
inline constexpr double kraus_structure = 1e-12;
inline constexpr double rank_cutoff = 1e-12;  // eigenvalues below are rank 0
inline constexpr double outcome_prob = 1e-12;
}  // namespace tol

// Trace-one positive semidefinite operator with a cached eigendecomposition.
// The matrix is symmetrized on ingestion after the hermiticity check;
// eigenvalues in [-1e-10, 0) are clipped to zero. Immutable once built.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m, std::vector<int> factor_dims = {},
                           std::optional<std::uint64_t> sample_seed = {});

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  const std::vector<int>& factor_dims() const { return factor_dims_; }
  bool has_factors() const { return !factor_dims_.empty(); }

  // ascending, clipped to [0, inf)
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  // columns ordered to match eigenvalues()
  const Matrix& eigenvectors() const { return eigenvectors_; }
  int rank(double cutoff = tol::rank_cutoff) const;

  std::optional<std::uint64_t> sample_seed() const { return sample_seed_; }

 private:
  Matrix matrix_;
  std::vector<int> factor_dims_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
  std::optional<std::uint64_t> sample_seed_;
};

// Normalized complex vector tagged with a tensor-factor structure.
class PureState {
 public:
  explicit PureState(Vector v, std::vector<int> factor_dims = {},
                     std::optional<std::uint64_t> sample_seed = {});

  int dim() const { return static_cast<int>(vector_.size()); }
  const Vector& vector() const { return vector_; }
  const std::vector<int>& factor_dims() const { return factor_dims_; }

  DensityOperator to_density() const;

  std::optional<std::uint64_t> sample_seed() const { return sample_seed_; }

 private:
  Vector vector_;
  std::vector<int> factor_dims_;
  std::optional<std::uint64_t> sample_seed_;
};

enum class ChannelClass {
  general,
  incoherent,
  genuinely_incoherent,
  dephasing,
  randomizing,
};

std::string to_string(ChannelClass c);
ChannelClass channel_class_from_string(const std::string& s);

// CPTP map as a list of Kraus matrices. Completeness is checked on
// construction; the incoherent / genuinely-incoherent tags additionally
// enforce their structural constraints.
class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> operators,
               ChannelClass class_tag = ChannelClass::general);

  int dim_in() const { return static_cast<int>(operators_[0].cols()); }
  int dim_out() const { return static_cast<int>(operators_[0].rows()); }
  const std::vector<Matrix>& operators() const { return operators_; }
  ChannelClass class_tag() const { return class_tag_; }

 private:
  std::vector<Matrix> operators_;
  ChannelClass class_tag_;
};

// --- operator algebra ---

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
PureState tensor(const PureState& a, const PureState& b);

// Reduced operator on the kept factors (ascending factor order preserved).
DensityOperator partial_trace(const DensityOperator& state,
                              const std::vector<int>& keep);

// Deletes off-diagonal elements in the computational basis, or in the column
// basis of the given unitary.
DensityOperator dephase(const DensityOperator& state);
DensityOperator dephase(const DensityOperator& state, const Matrix& basis);

// --- entropies and distances (bits everywhere) ---

double von_neumann_entropy(const DensityOperator& state);
double shannon_entropy(const Eigen::VectorXd& p);
double binary_entropy(double x);

// squared-overlap convention: (Tr sqrt(sqrt(a) b sqrt(a)))^2
double uhlmann_fidelity(const DensityOperator& a, const DensityOperator& b);
double trace_distance(const DensityOperator& a, const DensityOperator& b);

// --- channels ---

DensityOperator apply_channel(const KrausChannel& ch,
                              const DensityOperator& state);

struct SelectiveOutcome {
  double probability;
  DensityOperator state;
};

// Outcomes with probability below tol::outcome_prob are omitted.
std::vector<SelectiveOutcome> apply_kraus_selective(const KrausChannel& ch,
                                                    const DensityOperator& state);

// --- seeded sampling (deterministic given seed) ---

// Ginibre-induced: rho = G G^dag / Tr, with G dim x rank.
DensityOperator random_state(int dim, int rank, std::uint64_t seed);
// QR of a Ginibre matrix with the R-diagonal phase fix (Haar measure).
Matrix random_unitary(int dim, std::uint64_t seed);
Matrix random_unitary(int dim, Prng& rng);
PureState random_pure(int dim, std::uint64_t seed);

}  // namespace cop
