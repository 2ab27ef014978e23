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

#include "locc/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "locc/linalg.hpp"

namespace locc {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           std::multiplies<std::size_t>());
}

std::size_t product_over(std::span<const std::size_t> dims,
                         const std::vector<std::size_t> &parties) {
    std::size_t p = 1;
    for (std::size_t party : parties) p *= dims[party];
    return p;
}

// Maps a flat (row-major) index of the full space to its (Alice, Bob) pair.
class CutIndexer {
  public:
    CutIndexer(std::span<const std::size_t> dims, const Partition &partition)
        : dims_(dims.begin(), dims.end()), digits_(dims.size()), partition_(partition) {}

    std::pair<std::size_t, std::size_t> split(std::size_t flat) {
        for (std::size_t p = dims_.size(); p-- > 0;) {
            digits_[p] = flat % dims_[p];
            flat /= dims_[p];
        }
        return {group_index(partition_.alice()), group_index(partition_.bob())};
    }

  private:
    std::size_t group_index(const std::vector<std::size_t> &parties) const {
        std::size_t idx = 0;
        for (std::size_t party : parties) idx = idx * dims_[party] + digits_[party];
        return idx;
    }

    std::vector<std::size_t> dims_;
    std::vector<std::size_t> digits_;
    const Partition &partition_;
};

}  // namespace

CVector StateVector::as_vector() const {
    CVector v(static_cast<Eigen::Index>(amps_.size()));
    for (std::size_t i = 0; i < amps_.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps_[i];
    return v;
}

StateVector validate_state(RawState raw, const Tolerances &tol) {
    if (raw.dims.empty() || std::any_of(raw.dims.begin(), raw.dims.end(),
                                        [](std::size_t d) { return d == 0; })) {
        throw LoccError(ErrorCode::DimensionMismatch, "dims must be a non-empty list of positive integers");
    }
    const std::size_t expected = product(raw.dims);
    if (raw.amps.size() != expected) {
        std::ostringstream msg;
        msg << "amplitude count " << raw.amps.size() << " does not match product of dims " << expected;
        throw LoccError(ErrorCode::DimensionMismatch, msg.str());
    }
    double norm2 = 0.0;
    for (const Complex &a : raw.amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw LoccError(ErrorCode::NotNormalized, "amplitudes must be finite");
        }
        norm2 += std::norm(a);
    }
    const double norm = std::sqrt(norm2);
    if (std::abs(norm - 1.0) > tol.normalization) {
        std::ostringstream msg;
        msg << "state norm " << norm << " deviates from 1";
        throw LoccError(ErrorCode::NotNormalized, msg.str());
    }
    return StateVector(std::move(raw.dims), std::move(raw.amps));
}

StateVector normalized_state(std::vector<std::size_t> dims, std::vector<Complex> amps,
                             const Tolerances &tol) {
    double norm2 = 0.0;
    for (const Complex &a : amps) norm2 += std::norm(a);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw LoccError(ErrorCode::NotNormalized, "cannot normalize a null or non-finite vector");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex &a : amps) a *= scale;
    return validate_state(RawState{std::move(dims), std::move(amps)}, tol);
}

Complex inner_product(const StateVector &phi, const StateVector &psi) {
    if (phi.dims() != psi.dims()) {
        throw LoccError(ErrorCode::ShapeMismatch, "states have different dims");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(phi[i]) * psi[i];
    return acc;
}

Partition Partition::from_alice(std::vector<std::size_t> alice, std::size_t num_parties) {
    std::vector<std::size_t> bob;
    for (std::size_t p = 0; p < num_parties; ++p) {
        if (std::find(alice.begin(), alice.end(), p) == alice.end()) bob.push_back(p);
    }
    return make(std::move(alice), std::move(bob), num_parties);
}

Partition Partition::make(std::vector<std::size_t> alice, std::vector<std::size_t> bob,
                          std::size_t num_parties) {
    if (alice.empty() || bob.empty()) {
        throw LoccError(ErrorCode::InvalidPartition, "both sides of a partition must be non-empty");
    }
    std::vector<bool> seen(num_parties, false);
    for (const auto *side : {&alice, &bob}) {
        for (std::size_t p : *side) {
            if (p >= num_parties) {
                throw LoccError(ErrorCode::InvalidPartition,
                                "party index " + std::to_string(p) + " out of range");
            }
            if (seen[p]) {
                throw LoccError(ErrorCode::InvalidPartition,
                                "party " + std::to_string(p) + " listed twice");
            }
            seen[p] = true;
        }
    }
    if (alice.size() + bob.size() != num_parties) {
        throw LoccError(ErrorCode::InvalidPartition, "partition does not cover every party");
    }
    return Partition(std::move(alice), std::move(bob));
}

std::size_t Partition::alice_dim(std::span<const std::size_t> dims) const {
    return product_over(dims, alice_);
}

std::size_t Partition::bob_dim(std::span<const std::size_t> dims) const {
    return product_over(dims, bob_);
}

void Partition::check_against(std::span<const std::size_t> dims) const {
    if (num_parties() != dims.size()) {
        throw LoccError(ErrorCode::InvalidPartition,
                        "partition covers " + std::to_string(num_parties()) + " parties, state has " +
                            std::to_string(dims.size()));
    }
}

CMatrix extract_coefficients(const StateVector &psi, const Partition &partition) {
    partition.check_against(psi.dims());
    const auto n = static_cast<Eigen::Index>(partition.alice_dim(psi.dims()));
    const auto m = static_cast<Eigen::Index>(partition.bob_dim(psi.dims()));
    CMatrix c(n, m);
    CutIndexer indexer(psi.dims(), partition);
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
        const auto [a, b] = indexer.split(flat);
        c(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = psi[flat];
    }
    return c;
}

std::vector<Complex> flatten_coefficients(const CMatrix &coefficients,
                                          std::span<const std::size_t> dims,
                                          const Partition &partition) {
    partition.check_against(dims);
    if (static_cast<std::size_t>(coefficients.rows()) != partition.alice_dim(dims) ||
        static_cast<std::size_t>(coefficients.cols()) != partition.bob_dim(dims)) {
        throw LoccError(ErrorCode::ShapeMismatch, "coefficient matrix shape does not match the cut");
    }
    std::vector<Complex> amps(product(dims));
    CutIndexer indexer(dims, partition);
    for (std::size_t flat = 0; flat < amps.size(); ++flat) {
        const auto [a, b] = indexer.split(flat);
        amps[flat] = coefficients(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    return amps;
}

CoefficientMatrices coefficient_matrices(const StateVector &psi, const StateVector &phi,
                                         const Partition &partition) {
    if (psi.dims() != phi.dims()) {
        throw LoccError(ErrorCode::ShapeMismatch, "psi and phi have different dims");
    }
    return CoefficientMatrices{extract_coefficients(psi, partition),
                               extract_coefficients(phi, partition)};
}

OverlapMatrix overlap_from_coefficients(CoefficientMatrices source) {
    CMatrix entries = source.f * source.g.adjoint();
    return OverlapMatrix{std::move(source), std::move(entries)};
}

OverlapMatrix build_overlap_matrix(const StateVector &psi, const StateVector &phi,
                                   const Partition &partition) {
    return overlap_from_coefficients(coefficient_matrices(psi, phi, partition));
}

bool check_orthogonality(const OverlapMatrix &m, double tol) {
    return std::abs(m.trace()) <= tol;
}

OverlapMatrix transform_overlap(const OverlapMatrix &m, const CMatrix &u, const Tolerances &tol) {
    if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != m.dim()) {
        throw LoccError(ErrorCode::ShapeMismatch, "rotation and overlap matrix sizes differ");
    }
    if (!is_unitary(u, tol.unitarity)) {
        throw LoccError(ErrorCode::NotUnitary, "Alice rotation is not unitary");
    }
    const CMatrix uc = u.conjugate();
    CoefficientMatrices rotated;
    if (m.source.f.rows() == u.rows()) rotated = CoefficientMatrices{uc * m.source.f, uc * m.source.g};
    CMatrix entries = uc * m.entries * u.transpose();
    return OverlapMatrix{std::move(rotated), std::move(entries)};
}

}  // namespace locc
