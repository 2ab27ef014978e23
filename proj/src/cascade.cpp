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

#include "locc/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "locc/linalg.hpp"

namespace locc {

namespace {

CascadeNode build_node(const StateVector &psi, const StateVector &phi,
                       std::vector<std::size_t> parties, const Tolerances &tol) {
    const std::size_t n = psi.num_parties();
    CascadeNode node{std::move(parties),
                     synthesize_protocol(psi, phi, Partition::from_alice({0}, n), tol),
                     {}};
    const std::vector<std::size_t> rest_dims(psi.dims().begin() + 1, psi.dims().end());
    const std::vector<std::size_t> rest_parties(node.parties.begin() + 1, node.parties.end());

    node.branches.reserve(node.protocol.discriminators.size());
    for (const BobDiscriminator &d : node.protocol.discriminators) {
        CascadeBranch branch;
        if (d.unreachable) {
            branch.kind = BranchKind::Pruned;
        } else if (d.degenerate) {
            branch.kind = BranchKind::Forced;
            branch.forced = d.on_click;
        } else if (n == 2) {
            branch.kind = BranchKind::Discriminate;
        } else {
            branch.kind = BranchKind::Continue;
            const auto amps = [](const CVector &v) { return std::vector<Complex>(v.data(), v.data() + v.size()); };
            const StateVector next_psi = normalized_state(rest_dims, amps(d.eta), tol);
            const StateVector next_phi = normalized_state(rest_dims, amps(d.nu), tol);
            branch.next.push_back(build_node(next_psi, next_phi, rest_parties, tol));
        }
        node.branches.push_back(std::move(branch));
    }
    return node;
}

std::size_t node_depth(const CascadeNode &node) {
    std::size_t deepest = 0;
    for (const CascadeBranch &b : node.branches) {
        for (const CascadeNode &child : b.next) deepest = std::max(deepest, node_depth(child));
    }
    return deepest + 1;
}

// Alice outcome rows for an unnormalized local amplitude vector at `node`.
CMatrix outcome_rows(const CascadeNode &node, const CVector &amps) {
    const LoccProtocol &p = node.protocol;
    const auto first = static_cast<Eigen::Index>(p.dims.front());
    const auto rest = amps.size() / first;
    CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(p.padded_dim), rest);
    for (Eigen::Index a = 0; a < first; ++a) {
        for (Eigen::Index b = 0; b < rest; ++b) c(a, b) = amps(a * rest + b);
    }
    return p.alice_basis.conjugate() * c;
}

void walk_verify(const CascadeNode &node, const CVector &psi, const CVector &phi,
                 std::vector<std::size_t> &path, CascadeVerification &out, const Tolerances &tol) {
    out.max_unitarity_error = std::max(out.max_unitarity_error, unitarity_error(node.protocol.alice_basis));
    const CMatrix eta = outcome_rows(node, psi);
    const CMatrix nu = outcome_rows(node, phi);
    for (std::size_t i = 0; i < node.branches.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        const CVector e = eta.row(row).transpose();
        const CVector v = nu.row(row).transpose();
        const CascadeBranch &branch = node.branches[i];
        path.push_back(i);
        if (branch.kind == BranchKind::Continue) {
            walk_verify(branch.next.front(), e, v, path, out, tol);
            path.pop_back();
            continue;
        }
        CascadeLeaf leaf;
        leaf.path = path;
        leaf.kind = branch.kind;
        leaf.prob_psi = e.squaredNorm();
        leaf.prob_phi = v.squaredNorm();
        switch (branch.kind) {
            case BranchKind::Pruned:
                leaf.error_psi = leaf.prob_psi;
                leaf.error_phi = leaf.prob_phi;
                break;
            case BranchKind::Forced:
                if (branch.forced == Verdict::Psi) {
                    leaf.error_phi = leaf.prob_phi;
                } else {
                    leaf.error_psi = leaf.prob_psi;
                }
                break;
            case BranchKind::Discriminate: {
                const BobDiscriminator &d = node.protocol.discriminators[i];
                const double reach = std::max(leaf.prob_psi, leaf.prob_phi);
                if (reach > tol.reachable_probability &&
                    std::min(e.norm(), v.norm()) > tol.degenerate_norm) {
                    leaf.residual = std::abs(v.dot(e)) / std::max(e.norm() * v.norm(), 1e-30);
                }
                const auto wrong = [&](const CVector &c, Verdict truth) {
                    const double total = c.squaredNorm();
                    const double click = std::min(std::norm(d.probe.dot(c)), total);
                    return (d.on_click != truth ? click : 0.0) + (d.on_no_click != truth ? total - click : 0.0);
                };
                leaf.error_psi = wrong(e, Verdict::Psi);
                leaf.error_phi = wrong(v, Verdict::Phi);
                break;
            }
            case BranchKind::Continue:
                break;
        }
        out.max_residual = std::max(out.max_residual, leaf.residual);
        out.error_psi += leaf.error_psi;
        out.error_phi += leaf.error_phi;
        out.probability_sum_psi += leaf.prob_psi;
        out.probability_sum_phi += leaf.prob_phi;
        out.leaves.push_back(std::move(leaf));
        path.pop_back();
    }
}

void walk_paths(const CascadeNode &node, const CVector &amps, std::vector<std::size_t> &path,
                std::vector<VerdictPath> &out) {
    const CMatrix rows = outcome_rows(node, amps);
    for (std::size_t i = 0; i < node.branches.size(); ++i) {
        const CVector c = rows.row(static_cast<Eigen::Index>(i)).transpose();
        const CascadeBranch &branch = node.branches[i];
        path.push_back(i);
        switch (branch.kind) {
            case BranchKind::Continue:
                walk_paths(branch.next.front(), c, path, out);
                break;
            case BranchKind::Forced:
                out.push_back(VerdictPath{path, c.squaredNorm(), branch.forced});
                break;
            case BranchKind::Pruned:
                // Unreachable for the designed pair; any verdict is sound for a third state.
                out.push_back(VerdictPath{path, c.squaredNorm(), Verdict::Psi});
                break;
            case BranchKind::Discriminate: {
                const BobDiscriminator &d = node.protocol.discriminators[i];
                const double total = c.squaredNorm();
                const double click = std::min(std::norm(d.probe.dot(c)), total);
                auto with_bob = path;
                with_bob.push_back(0);
                out.push_back(VerdictPath{with_bob, click, d.on_click});
                with_bob.back() = 1;
                out.push_back(VerdictPath{std::move(with_bob), total - click, d.on_no_click});
                break;
            }
        }
        path.pop_back();
    }
}

}  // namespace

std::string_view branch_kind_name(BranchKind k) {
    switch (k) {
        case BranchKind::Pruned: return "pruned";
        case BranchKind::Forced: return "forced";
        case BranchKind::Discriminate: return "discriminate";
        case BranchKind::Continue: return "continue";
    }
    return "?";
}

std::size_t CascadeProtocol::depth() const { return node_depth(root); }

StateVector permute_parties(const StateVector &s, const std::vector<std::size_t> &order) {
    if (order.size() != s.num_parties()) {
        throw LoccError(ErrorCode::InvalidPartition, "party order must list every party once");
    }
    std::vector<std::size_t> dims;
    for (std::size_t p : order) {
        if (p >= s.num_parties()) {
            throw LoccError(ErrorCode::InvalidPartition, "party index " + std::to_string(p) + " out of range");
        }
        dims.push_back(s.dims()[p]);
    }
    if (order.size() == 1) return s;
    const Partition cut = Partition::make({order.front()}, {order.begin() + 1, order.end()}, s.num_parties());
    const CMatrix c = extract_coefficients(s, cut);
    std::vector<Complex> amps;
    amps.reserve(s.size());
    for (Eigen::Index a = 0; a < c.rows(); ++a) {
        for (Eigen::Index b = 0; b < c.cols(); ++b) amps.push_back(c(a, b));
    }
    return validate_state(RawState{std::move(dims), std::move(amps)});
}

CascadeProtocol cascade_multipartite(const StateVector &psi, const StateVector &phi,
                                     const std::vector<std::size_t> &party_order, const Tolerances &tol) {
    if (psi.dims() != phi.dims()) {
        throw LoccError(ErrorCode::ShapeMismatch, "psi and phi have different dims");
    }
    if (psi.num_parties() < 2) {
        throw LoccError(ErrorCode::TooFewParties, "a cascade needs at least two parties");
    }
    const double overlap = std::abs(inner_product(phi, psi));
    if (overlap > tol.orthogonality) {
        std::ostringstream msg;
        msg << "states are not orthogonal (|⟨φ|ψ⟩| = " << overlap << ")";
        throw LoccError(ErrorCode::NotOrthogonal, msg.str());
    }
    const StateVector local_psi = permute_parties(psi, party_order);
    const StateVector local_phi = permute_parties(phi, party_order);
    return CascadeProtocol{party_order, psi.dims(), build_node(local_psi, local_phi, party_order, tol)};
}

CascadeVerification verify_cascade(const CascadeProtocol &c, const StateVector &psi,
                                   const StateVector &phi, const Tolerances &tol) {
    CascadeVerification out;
    out.stage_count = c.stage_count();
    out.depth = c.depth();
    std::vector<std::size_t> path;
    walk_verify(c.root, permute_parties(psi, c.party_order).as_vector(),
                permute_parties(phi, c.party_order).as_vector(), path, out, tol);
    out.passed = out.max_residual <= tol.branch_overlap && out.max_unitarity_error <= tol.unitarity &&
                 out.error_psi <= tol.branch_overlap && out.error_phi <= tol.branch_overlap &&
                 std::abs(out.probability_sum_psi - 1.0) <= tol.probability_sum &&
                 std::abs(out.probability_sum_phi - 1.0) <= tol.probability_sum &&
                 out.depth <= out.stage_count;
    return out;
}

std::vector<VerdictPath> verdict_paths(const CascadeProtocol &c, const StateVector &actual) {
    std::vector<VerdictPath> out;
    std::vector<std::size_t> path;
    walk_paths(c.root, permute_parties(actual, c.party_order).as_vector(), path, out);
    return out;
}

std::vector<VerdictPath> verdict_paths(const LoccProtocol &p, const StateVector &actual) {
    const Eigen::MatrixX2d table = branch_probabilities(p, actual);
    std::vector<VerdictPath> out;
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        for (int b = 0; b < 2; ++b) {
            out.push_back(VerdictPath{{static_cast<std::size_t>(i), static_cast<std::size_t>(b)},
                                      table(i, b),
                                      p.discriminators[static_cast<std::size_t>(i)].verdict(b)});
        }
    }
    return out;
}

}  // namespace locc
