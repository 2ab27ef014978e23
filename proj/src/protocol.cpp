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

#include "locc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "locc/linalg.hpp"

namespace locc {

namespace {

CMatrix pad_rows(const CMatrix &c, std::size_t rows) {
    CMatrix padded = CMatrix::Zero(static_cast<Eigen::Index>(rows), c.cols());
    padded.topRows(c.rows()) = c;
    return padded;
}

SampleResult sample_from_table(const Eigen::MatrixX2d &table, const LoccProtocol &p, Rng &rng) {
    const Eigen::VectorXd alice = table.rowwise().sum();
    SampleResult out;
    out.alice_outcome = rng.categorical(std::span<const double>(alice.data(), static_cast<std::size_t>(alice.size())));
    const auto i = static_cast<Eigen::Index>(out.alice_outcome);
    const double click = alice(i) > 0.0 ? table(i, 0) / alice(i) : 0.0;
    out.bob_outcome = rng.uniform() < click ? 0 : 1;
    out.verdict = p.discriminators.at(out.alice_outcome).verdict(out.bob_outcome);
    return out;
}

}  // namespace

std::string_view verdict_name(Verdict v) { return v == Verdict::Psi ? "psi" : "phi"; }

BobDiscriminator make_discriminator(CVector eta, CVector nu, const Tolerances &tol) {
    BobDiscriminator d;
    const double eta_norm = eta.norm();
    const double nu_norm = nu.norm();
    const bool eta_null = eta_norm <= tol.degenerate_norm;
    const bool nu_null = nu_norm <= tol.degenerate_norm;
    if (eta_null && nu_null) {
        d.unreachable = true;
        d.degenerate = true;
        d.probe = CVector::Zero(eta.size());
        if (eta.size() > 0) d.probe(0) = 1.0;
    } else if (eta_null || nu_null) {
        d.degenerate = true;
        const Verdict forced = eta_null ? Verdict::Phi : Verdict::Psi;
        d.probe = eta_null ? CVector(nu / nu_norm) : CVector(eta / eta_norm);
        d.on_click = forced;
        d.on_no_click = forced;
    } else {
        d.probe = eta / eta_norm;
    }
    d.eta = std::move(eta);
    d.nu = std::move(nu);
    return d;
}

LoccProtocol synthesize_protocol(const StateVector &psi, const StateVector &phi,
                                 const Partition &partition, const Tolerances &tol) {
    if (psi.dims() != phi.dims()) {
        throw LoccError(ErrorCode::ShapeMismatch, "psi and phi have different dims");
    }
    partition.check_against(psi.dims());
    const double overlap = std::abs(inner_product(phi, psi));
    if (overlap > tol.orthogonality) {
        std::ostringstream msg;
        msg << "states are not orthogonal (|⟨φ|ψ⟩| = " << overlap << ")";
        throw LoccError(ErrorCode::NotOrthogonal, msg.str());
    }

    const OverlapMatrix m = build_overlap_matrix(psi, phi, partition);
    ZerodiagResult z = equidiagonalize_schedule(m.entries, tol);

    LoccProtocol p{partition, psi.dims(), z.u.conjugate(), z.padded_dim, z.original_dim, {}, {}};
    // conj(alice_basis) = U, so Bob's vectors are U·F and U·G.
    const CMatrix eta = z.u * pad_rows(m.source.f, z.padded_dim);
    const CMatrix nu = z.u * pad_rows(m.source.g, z.padded_dim);
    p.discriminators.reserve(z.padded_dim);
    for (Eigen::Index i = 0; i < eta.rows(); ++i) {
        p.discriminators.push_back(make_discriminator(eta.row(i).transpose(), nu.row(i).transpose(), tol));
    }
    p.provenance = std::move(z);
    return p;
}

CMatrix conditional_bob_vectors(const LoccProtocol &p, const StateVector &state) {
    if (state.dims() != p.dims) {
        throw LoccError(ErrorCode::ShapeMismatch, "state dims differ from the protocol's");
    }
    const CMatrix c = extract_coefficients(state, p.partition);
    if (static_cast<std::size_t>(c.rows()) > p.padded_dim ||
        static_cast<std::size_t>(p.alice_basis.rows()) != p.padded_dim) {
        throw LoccError(ErrorCode::ShapeMismatch, "Alice basis does not cover her space");
    }
    return p.alice_basis.conjugate() * pad_rows(c, p.padded_dim);
}

Eigen::MatrixX2d branch_probabilities(const LoccProtocol &p, const StateVector &state) {
    const CMatrix bob = conditional_bob_vectors(p, state);
    Eigen::MatrixX2d table(bob.rows(), 2);
    for (Eigen::Index i = 0; i < bob.rows(); ++i) {
        const CVector c = bob.row(i).transpose();
        const double total = c.squaredNorm();
        const double click = std::norm(p.discriminators.at(static_cast<std::size_t>(i)).probe.dot(c));
        table(i, 0) = std::min(click, total);
        table(i, 1) = std::max(total - click, 0.0);
    }
    return table;
}

VerificationReport verify_protocol(const LoccProtocol &p, const StateVector &psi,
                                   const StateVector &phi, const Tolerances &tol) {
    VerificationReport report;
    report.unitarity_error = unitarity_error(p.alice_basis);

    const CMatrix eta = conditional_bob_vectors(p, psi);
    const CMatrix nu = conditional_bob_vectors(p, phi);

    // Weight of the embedded states on padded computational directions.
    for (const StateVector *s : {&psi, &phi}) {
        const CMatrix c = pad_rows(extract_coefficients(*s, p.partition), p.padded_dim);
        const auto n = static_cast<Eigen::Index>(p.original_dim);
        report.padding_weight = std::max(report.padding_weight, c.bottomRows(c.rows() - n).squaredNorm());
    }

    const bool discriminators_complete = p.discriminators.size() == p.padded_dim;
    for (Eigen::Index i = 0; i < eta.rows(); ++i) {
        const CVector e = eta.row(i).transpose();
        const CVector v = nu.row(i).transpose();
        BranchCheck b;
        b.outcome = static_cast<std::size_t>(i);
        b.prob_psi = e.squaredNorm();
        b.prob_phi = v.squaredNorm();
        b.reachable = std::max(b.prob_psi, b.prob_phi) > tol.reachable_probability;
        b.degenerate = std::min(e.norm(), v.norm()) <= tol.degenerate_norm;
        b.overlap = std::abs(v.dot(e));
        if (b.reachable && !b.degenerate) {
            b.residual = b.overlap / std::max(e.norm() * v.norm(), 1e-30);
            report.min_margin = std::min(report.min_margin, 1.0 - b.residual * b.residual);
        }
        if (discriminators_complete) {
            const BobDiscriminator &d = p.discriminators[b.outcome];
            const auto wrong = [&](const CVector &c, Verdict truth) {
                const double total = c.squaredNorm();
                const double click = std::min(std::norm(d.probe.dot(c)), total);
                return (d.on_click != truth ? click : 0.0) + (d.on_no_click != truth ? total - click : 0.0);
            };
            b.error_psi = wrong(e, Verdict::Psi);
            b.error_phi = wrong(v, Verdict::Phi);
        }
        report.probability_sum_psi += b.prob_psi;
        report.probability_sum_phi += b.prob_phi;
        report.max_residual = std::max(report.max_residual, b.residual);
        report.max_error_probability = std::max({report.max_error_probability, b.error_psi, b.error_phi});
        if (b.residual > tol.branch_overlap || b.error_psi > tol.branch_overlap ||
            b.error_phi > tol.branch_overlap) {
            report.failing_outcomes.push_back(b.outcome);
        }
        report.branches.push_back(b);
    }

    report.passed = discriminators_complete && report.failing_outcomes.empty() &&
                    report.unitarity_error <= tol.unitarity &&
                    std::abs(report.probability_sum_psi - 1.0) <= tol.probability_sum &&
                    std::abs(report.probability_sum_phi - 1.0) <= tol.probability_sum &&
                    report.padding_weight <= tol.reachable_probability;
    return report;
}

SampleResult sample_run(const LoccProtocol &p, const StateVector &actual, Rng &rng) {
    return sample_from_table(branch_probabilities(p, actual), p, rng);
}

SampleResult sample_run(const LoccProtocol &p, const StateVector &actual, std::uint64_t seed) {
    Rng rng(seed);
    return sample_run(p, actual, rng);
}

SimulationReport simulate(const LoccProtocol &p, const StateVector &psi, const StateVector &phi,
                          std::uint64_t trials, std::uint64_t seed) {
    SimulationReport report;
    report.trials = trials;
    report.seed = seed;
    const std::array<Eigen::MatrixX2d, 2> tables{branch_probabilities(p, psi), branch_probabilities(p, phi)};
    const auto l = static_cast<std::size_t>(tables[0].rows());
    std::vector<std::uint64_t> counts(2 * l * 2, 0);

    for (std::uint64_t t = 0; t < trials; ++t) {
        for (std::size_t s = 0; s < 2; ++s) {
            Rng rng(derive_seed(seed, 2 * t + s));
            const SampleResult r = sample_from_table(tables[s], p, rng);
            ++report.confusion[s][static_cast<std::size_t>(r.verdict)];
            ++counts[(s * l + r.alice_outcome) * 2 + static_cast<std::size_t>(r.bob_outcome)];
        }
    }

    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t i = 0; i < l; ++i) {
            for (int b = 0; b < 2; ++b) {
                report.branches.push_back(BranchTally{static_cast<Verdict>(s), i, b,
                                                      counts[(s * l + i) * 2 + static_cast<std::size_t>(b)],
                                                      tables[s](static_cast<Eigen::Index>(i), b)});
            }
        }
    }
    return report;
}

}  // namespace locc
