// Copyright 2026 The locc-discrim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "locc/core.hpp"

namespace locc {

/// Unvalidated amplitude data, as read from a file or built by a generator.
struct RawState {
    std::vector<std::size_t> dims;
    std::vector<Complex> amps;
};

/// A normalized pure state over a tensor product of party spaces.
///
/// Amplitudes are row-major over parties: party 0 is the slowest-varying
/// index. Instances only come out of validate_state, so every StateVector in
/// circulation satisfies length == ∏dims and unit norm.
class StateVector {
  public:
    const std::vector<std::size_t> &dims() const noexcept { return dims_; }
    std::span<const Complex> amps() const noexcept { return amps_; }
    std::size_t num_parties() const noexcept { return dims_.size(); }
    std::size_t size() const noexcept { return amps_.size(); }
    Complex operator[](std::size_t i) const { return amps_[i]; }

    CVector as_vector() const;

  private:
    friend StateVector validate_state(RawState raw, const Tolerances &tol);
    StateVector(std::vector<std::size_t> dims, std::vector<Complex> amps)
        : dims_(std::move(dims)), amps_(std::move(amps)) {}

    std::vector<std::size_t> dims_;
    std::vector<Complex> amps_;
};

/// Checks length and normalization. Throws DimensionMismatch / NotNormalized.
StateVector validate_state(RawState raw, const Tolerances &tol = default_tolerances());

/// Scales the amplitudes to unit norm before validating. Throws NotNormalized
/// for a null vector.
StateVector normalized_state(std::vector<std::size_t> dims, std::vector<Complex> amps,
                             const Tolerances &tol = default_tolerances());

/// <phi|psi> over the full amplitude vectors.
Complex inner_product(const StateVector &phi, const StateVector &psi);

/// Split of the parties into an ordered Alice group and an ordered Bob group.
class Partition {
  public:
    /// Bob gets the complement of `alice` in ascending order.
    static Partition from_alice(std::vector<std::size_t> alice, std::size_t num_parties);
    static Partition make(std::vector<std::size_t> alice, std::vector<std::size_t> bob,
                          std::size_t num_parties);

    const std::vector<std::size_t> &alice() const noexcept { return alice_; }
    const std::vector<std::size_t> &bob() const noexcept { return bob_; }
    std::size_t num_parties() const noexcept { return alice_.size() + bob_.size(); }

    std::size_t alice_dim(std::span<const std::size_t> dims) const;
    std::size_t bob_dim(std::span<const std::size_t> dims) const;

    /// Throws InvalidPartition unless the partition covers exactly `dims.size()` parties.
    void check_against(std::span<const std::size_t> dims) const;

    bool operator==(const Partition &) const = default;

  private:
    Partition(std::vector<std::size_t> alice, std::vector<std::size_t> bob)
        : alice_(std::move(alice)), bob_(std::move(bob)) {}

    std::vector<std::size_t> alice_;
    std::vector<std::size_t> bob_;
};

/// F and G of a pair of states over a bipartite cut: row i of F lists the
/// components of Bob's conditional vector η_i, row i of G those of ν_i.
struct CoefficientMatrices {
    CMatrix f;
    CMatrix g;

    std::size_t alice_dim() const { return static_cast<std::size_t>(f.rows()); }
    std::size_t bob_dim() const { return static_cast<std::size_t>(f.cols()); }
};

/// Reshapes psi into an (Alice dim) × (Bob dim) matrix after moving the Alice
/// parties to the front in their listed order.
CMatrix extract_coefficients(const StateVector &psi, const Partition &partition);

/// Inverse of extract_coefficients: flattens back to the original party order.
std::vector<Complex> flatten_coefficients(const CMatrix &coefficients,
                                          std::span<const std::size_t> dims,
                                          const Partition &partition);

CoefficientMatrices coefficient_matrices(const StateVector &psi, const StateVector &phi,
                                         const Partition &partition);

/// The overlap matrix F·G† together with the matrices it was built from.
///
/// entries(i, j) = Σ_k F_ik conj(G_jk) = <ν_j|η_i>, so the diagonal carries
/// the per-outcome overlaps <ν_i|η_i> and the trace equals <phi|psi>.
struct OverlapMatrix {
    CoefficientMatrices source;
    CMatrix entries;

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
    Complex trace() const { return entries.trace(); }
};

OverlapMatrix overlap_from_coefficients(CoefficientMatrices source);

/// Throws ShapeMismatch when psi and phi have different dims.
OverlapMatrix build_overlap_matrix(const StateVector &psi, const StateVector &phi,
                                   const Partition &partition);

bool check_orthogonality(const OverlapMatrix &m, double tol);

/// Effect of rotating Alice's measurement basis by U: conj(U)·M·Uᵀ. The
/// source matrices transform as F → conj(U)·F, G → conj(U)·G, and the result
/// is recomputed from them. Throws NotUnitary.
OverlapMatrix transform_overlap(const OverlapMatrix &m, const CMatrix &u,
                                const Tolerances &tol = default_tolerances());

}  // namespace locc
