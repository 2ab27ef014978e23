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

#include "locc/zerodiag.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "locc/linalg.hpp"

namespace locc {

namespace {

// Rows p, q of `a` ← block · rows p, q.
void apply_left(CMatrix &a, const RotationStep &step) {
    const Eigen::Matrix2cd b = step.block();
    const auto p = static_cast<Eigen::Index>(step.p);
    const auto q = static_cast<Eigen::Index>(step.q);
    for (Eigen::Index col = 0; col < a.cols(); ++col) {
        const Complex ap = a(p, col);
        const Complex aq = a(q, col);
        a(p, col) = b(0, 0) * ap + b(0, 1) * aq;
        a(q, col) = b(1, 0) * ap + b(1, 1) * aq;
    }
}

// Columns p, q of `a` ← columns p, q · block†.
void apply_right_adjoint(CMatrix &a, const RotationStep &step) {
    const Eigen::Matrix2cd b = step.block();
    const auto p = static_cast<Eigen::Index>(step.p);
    const auto q = static_cast<Eigen::Index>(step.q);
    for (Eigen::Index row = 0; row < a.rows(); ++row) {
        const Complex ap = a(row, p);
        const Complex aq = a(row, q);
        a(row, p) = ap * std::conj(b(0, 0)) + aq * std::conj(b(0, 1));
        a(row, q) = ap * std::conj(b(1, 0)) + aq * std::conj(b(1, 1));
    }
}

}  // namespace

Eigen::Matrix2cd RotationStep::block() const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex phase = std::polar(1.0, omega);
    Eigen::Matrix2cd b;
    b << Complex(c, 0.0), s * phase, s * std::conj(phase), Complex(-c, 0.0);
    return b;
}

CMatrix RotationStep::embed(std::size_t n) const {
    CMatrix u = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const Eigen::Matrix2cd b = block();
    const auto ip = static_cast<Eigen::Index>(p);
    const auto iq = static_cast<Eigen::Index>(q);
    u(ip, ip) = b(0, 0);
    u(ip, iq) = b(0, 1);
    u(iq, ip) = b(1, 0);
    u(iq, iq) = b(1, 1);
    return u;
}

Complex equidiagonal_condition(const Eigen::Matrix2cd &m, double theta, double omega) {
    const Complex x = m(0, 0), y = m(0, 1), z = m(1, 0), t = m(1, 1);
    const Complex phase = std::polar(1.0, omega);
    return (x - t) * std::cos(2.0 * theta) + std::sin(2.0 * theta) * (y * std::conj(phase) + z * phase);
}

RotationStep equidiagonalize_2x2(const Eigen::Matrix2cd &m) {
    const Complex x = m(0, 0), y = m(0, 1), z = m(1, 0), t = m(1, 1);
    const Complex d = x - t;
    const Complex sum = z + y;
    const Complex diff = z - y;

    // ω aligns y·e^{-iω} + z·e^{iω} with x − t on a common real line.
    const double num = d.imag() * sum.real() - d.real() * sum.imag();
    const double den = d.real() * diff.real() + d.imag() * diff.imag();
    const double omega = (num == 0.0 && den == 0.0) ? 0.0 : std::atan2(num, den);

    const Complex phase = std::polar(1.0, omega);
    const Complex w = y * std::conj(phase) + z * phase;

    // Both coefficients now share a direction; reduce to real scalars along it.
    const double abs_d = std::abs(d);
    const double abs_w = std::abs(w);
    RotationStep step;
    step.omega = omega;
    if (abs_d == 0.0 && abs_w == 0.0) return step;
    const Complex dir = abs_d >= abs_w ? d / abs_d : w / abs_w;
    const double dr = (d * std::conj(dir)).real();
    const double wr = (w * std::conj(dir)).real();

    double two_theta = 0.0;
    if (wr == 0.0) {
        two_theta = dr != 0.0 ? std::numbers::pi / 2.0 : 0.0;
    } else {
        two_theta = std::atan(-dr / wr);
    }
    step.theta = two_theta / 2.0;
    return step;
}

CMatrix pad_to_power_of_two(const CMatrix &m) {
    const auto n = static_cast<std::size_t>(m.rows());
    const std::size_t l = next_power_of_two(n);
    if (l == n) return m;
    CMatrix padded = CMatrix::Zero(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l));
    padded.topLeftCorner(m.rows(), m.cols()) = m;
    return padded;
}

std::vector<PairRound> schedule_pairings(unsigned k) {
    const std::size_t l = std::size_t{1} << k;
    std::vector<PairRound> rounds;
    rounds.reserve(k);
    for (unsigned r = 0; r < k; ++r) {
        const std::size_t bit = std::size_t{1} << r;
        PairRound round;
        round.reserve(l / 2);
        for (std::size_t p = 0; p < l; ++p) {
            if ((p & bit) == 0) round.emplace_back(p, p | bit);
        }
        rounds.push_back(std::move(round));
    }
    return rounds;
}

std::size_t ZerodiagResult::step_bound() const {
    const unsigned k = log2_exact(padded_dim);
    return k == 0 ? 0 : static_cast<std::size_t>(k) << (k - 1);
}

ZerodiagResult equidiagonalize_schedule(const CMatrix &m, const Tolerances &tol) {
    if (m.rows() != m.cols()) {
        throw LoccError(ErrorCode::ShapeMismatch, "overlap matrix must be square");
    }
    const CMatrix padded = pad_to_power_of_two(m);
    const auto l = static_cast<std::size_t>(padded.rows());

    ZerodiagResult result;
    result.original_dim = static_cast<std::size_t>(m.rows());
    result.padded_dim = l;
    result.scale = max_abs(m);
    result.u = CMatrix::Identity(padded.rows(), padded.cols());

    CMatrix work = padded;
    const double skip = tol.equal_skip * result.scale;
    for (const PairRound &round : schedule_pairings(log2_exact(l))) {
        for (const auto &[p, q] : round) {
            const auto ip = static_cast<Eigen::Index>(p);
            const auto iq = static_cast<Eigen::Index>(q);
            if (std::abs(work(ip, ip) - work(iq, iq)) <= skip) continue;
            Eigen::Matrix2cd block;
            block << work(ip, ip), work(ip, iq), work(iq, ip), work(iq, iq);
            RotationStep step = equidiagonalize_2x2(block);
            step.p = p;
            step.q = q;
            apply_left(work, step);
            apply_right_adjoint(work, step);
            apply_left(result.u, step);
            result.steps.push_back(step);
        }
    }

    const CMatrix final_matrix = result.u * padded * result.u.adjoint();
    result.max_diagonal = l == 0 ? 0.0 : final_matrix.diagonal().cwiseAbs().maxCoeff();
    return result;
}

ZerodiagResult zerodiagonalize(const CMatrix &m, const Tolerances &tol) {
    if (m.rows() != m.cols()) {
        throw LoccError(ErrorCode::ShapeMismatch, "overlap matrix must be square");
    }
    const double scale = max_abs(m);
    const double trace = std::abs(m.trace());
    if (trace > tol.trace * scale) {
        std::ostringstream msg;
        msg << "matrix is not traceless (|tr M| = " << trace << ", ‖M‖_max = " << scale
            << "); the states are not orthogonal";
        throw LoccError(ErrorCode::NotTraceless, msg.str());
    }
    return equidiagonalize_schedule(m, tol);
}

}  // namespace locc
