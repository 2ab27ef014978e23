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

// Test-only generators and reference routines. The reference routines are
// deliberately written as plain index loops so they share no code path with
// the library (no Eigen products, no CutIndexer).

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "locc/statespace.hpp"

namespace locc::oracle {

using Cx = std::complex<double>;

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    Cx gaussian() { return {normal_(engine_), normal_(engine_)}; }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    std::size_t integer(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }

    std::vector<Cx> gaussian_vector(std::size_t n) {
        std::vector<Cx> v(n);
        for (Cx &x : v) x = gaussian();
        return v;
    }

    Eigen::MatrixXcd gaussian_matrix(std::size_t rows, std::size_t cols) {
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = gaussian();
        return m;
    }

    /// Haar-like unitary: QR of a Gaussian matrix with the R-diagonal phases removed.
    Eigen::MatrixXcd unitary(std::size_t n) {
        const Eigen::MatrixXcd a = gaussian_matrix(n, n);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
        Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
        const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index i = 0; i < q.cols(); ++i) {
            const Cx d = r(i, i);
            if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
        }
        return q;
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

inline std::size_t product(const std::vector<std::size_t> &dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) p *= d;
    return p;
}

inline double norm_of(const std::vector<Cx> &v) {
    double s = 0;
    for (const Cx &x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline Cx dot(const std::vector<Cx> &a, const std::vector<Cx> &b) {
    Cx s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline StateVector random_state(const std::vector<std::size_t> &dims, Gen &gen) {
    return normalized_state(dims, gen.gaussian_vector(product(dims)));
}

/// `count` mutually orthogonal random states (modified Gram-Schmidt, twice).
inline std::vector<StateVector> random_orthogonal_set(const std::vector<std::size_t> &dims, std::size_t count,
                                                      Gen &gen) {
    std::vector<std::vector<Cx>> basis;
    while (basis.size() < count) {
        std::vector<Cx> v = gen.gaussian_vector(product(dims));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : basis) {
                const Cx c = dot(b, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
            }
        }
        const double n = norm_of(v);
        for (Cx &x : v) x /= n;
        basis.push_back(std::move(v));
    }
    std::vector<StateVector> out;
    for (auto &b : basis) out.push_back(normalized_state(dims, std::move(b)));
    return out;
}

inline std::pair<StateVector, StateVector> random_orthogonal_pair(const std::vector<std::size_t> &dims, Gen &gen) {
    auto set = random_orthogonal_set(dims, 2, gen);
    return {set[0], set[1]};
}

/// Row-major flat index from per-party digits.
inline std::size_t flat_index(const std::vector<std::size_t> &digits, const std::vector<std::size_t> &dims) {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) idx = idx * dims[p] + digits[p];
    return idx;
}

/// Digits of `idx` in the mixed radix given by the dims of `parties`.
inline std::vector<std::size_t> group_digits(std::size_t idx, const std::vector<std::size_t> &parties,
                                             const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> digits(parties.size());
    for (std::size_t k = parties.size(); k-- > 0;) {
        digits[k] = idx % dims[parties[k]];
        idx /= dims[parties[k]];
    }
    return digits;
}

/// Amplitude of |a>_Alice |b>_Bob, assembled from digits (no reshaping).
inline Cx amplitude_at(const StateVector &s, const std::vector<std::size_t> &alice, const std::vector<std::size_t> &bob,
                       std::size_t a, std::size_t b) {
    const auto &dims = s.dims();
    std::vector<std::size_t> digits(dims.size());
    const auto da = group_digits(a, alice, dims);
    const auto db = group_digits(b, bob, dims);
    for (std::size_t k = 0; k < alice.size(); ++k) digits[alice[k]] = da[k];
    for (std::size_t k = 0; k < bob.size(); ++k) digits[bob[k]] = db[k];
    return s[flat_index(digits, dims)];
}

/// (op acting on the joint subsystem of `parties`, listed order) ⊗ identity.
inline std::vector<Cx> apply_local(const StateVector &s, const std::vector<std::size_t> &parties,
                                   const Eigen::MatrixXcd &op) {
    const auto &dims = s.dims();
    std::vector<Cx> out(s.size(), 0.0);
    const std::size_t sub = static_cast<std::size_t>(op.rows());
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        // decompose flat
        std::vector<std::size_t> digits(dims.size());
        std::size_t rem = flat;
        for (std::size_t p = dims.size(); p-- > 0;) {
            digits[p] = rem % dims[p];
            rem /= dims[p];
        }
        std::size_t col = 0;
        for (std::size_t party : parties) col = col * dims[party] + digits[party];
        for (std::size_t row = 0; row < sub; ++row) {
            const auto rd = group_digits(row, parties, dims);
            auto target = digits;
            for (std::size_t k = 0; k < parties.size(); ++k) target[parties[k]] = rd[k];
            out[flat_index(target, dims)] += op(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * s[flat];
        }
    }
    return out;
}

inline Eigen::MatrixXcd naive_product(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            Cx s = 0;
            for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline Eigen::MatrixXcd naive_adjoint(const Eigen::MatrixXcd &a) {
    Eigen::MatrixXcd c(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

/// U·M·U† by explicit loops.
inline Eigen::MatrixXcd naive_conjugate(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &m) {
    return naive_product(naive_product(u, m), naive_adjoint(u));
}

inline double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    double d = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

/// Random traceless n×n complex matrix.
inline Eigen::MatrixXcd random_traceless(std::size_t n, Gen &gen) {
    Eigen::MatrixXcd m = gen.gaussian_matrix(n, n);
    const Cx shift = m.trace() / static_cast<double>(n);
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) -= shift;
    return m;
}

}  // namespace locc::oracle
