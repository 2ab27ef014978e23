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

#include "locc/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace locc {

namespace {

[[noreturn]] void parse_fail(const std::string &what) { throw LoccError(ErrorCode::ParseError, what); }

double finite_number(const Json &j, const char *what) {
    if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) parse_fail(std::string(what) + " must be finite");
    return v;
}

Complex complex_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2) parse_fail("complex entries must be [re, im] pairs");
    return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

std::vector<std::size_t> index_list(const Json &j, const char *what) {
    if (!j.is_array()) parse_fail(std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    for (const Json &v : j) {
        if (!v.is_number_unsigned()) parse_fail(std::string(what) + " must hold non-negative integers");
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

Verdict verdict_from_json(const Json &j) {
    if (j == "psi") return Verdict::Psi;
    if (j == "phi") return Verdict::Phi;
    parse_fail("verdict must be \"psi\" or \"phi\"");
}

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

Json node_to_json(const CascadeNode &node) {
    Json branches = Json::array();
    for (const CascadeBranch &b : node.branches) {
        Json jb{{"kind", branch_kind_name(b.kind)}};
        if (b.kind == BranchKind::Forced) jb["verdict"] = verdict_name(b.forced);
        if (b.kind == BranchKind::Continue) jb["next"] = node_to_json(b.next.front());
        branches.push_back(std::move(jb));
    }
    return Json{{"parties", node.parties}, {"protocol", protocol_to_json(node.protocol)}, {"branches", branches}};
}

}  // namespace

StateVector parse_state(std::string_view text, const Tolerances &tol) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception &e) {
        parse_fail(std::string("malformed JSON: ") + e.what());
    }
    RawState raw;
    raw.dims = index_list(field(j, "dims"), "dims");
    const Json &amps = field(j, "amps");
    if (!amps.is_array()) parse_fail("amps must be an array");
    raw.amps.reserve(amps.size());
    for (const Json &a : amps) raw.amps.push_back(complex_from_json(a));
    return validate_state(std::move(raw), tol);
}

StateVector read_state_file(const std::string &path, const Tolerances &tol) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open state file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str(), tol);
}

StateVector load_state(const std::string &source, const Tolerances &tol) {
    if (auto s = builtin_state(source)) return *s;
    return read_state_file(source, tol);
}

Json state_to_json(const StateVector &s) {
    Json amps = Json::array();
    for (Complex a : s.amps()) amps.push_back(complex_to_json(a));
    return Json{{"dims", s.dims()}, {"amps", amps}};
}

Json matrix_to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json &j) {
    if (!j.is_array()) parse_fail("matrix must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) parse_fail("ragged matrix");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

Json vector_to_json(const CVector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

CVector vector_from_json(const Json &j) {
    if (!j.is_array()) parse_fail("vector must be an array");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

Json to_json(const ZerodiagResult &z) {
    Json steps = Json::array();
    for (const RotationStep &s : z.steps) {
        steps.push_back(Json{{"p", s.p}, {"q", s.q}, {"theta", s.theta}, {"omega", s.omega}});
    }
    return Json{{"padded_dim", z.padded_dim},
                {"original_dim", z.original_dim},
                {"rotation_count", z.steps.size()},
                {"rotation_bound", z.step_bound()},
                {"max_diagonal", z.max_diagonal},
                {"scale", z.scale},
                {"steps", steps}};
}

Json protocol_to_json(const LoccProtocol &p) {
    Json discs = Json::array();
    for (const BobDiscriminator &d : p.discriminators) {
        discs.push_back(Json{{"eta", vector_to_json(d.eta)},
                             {"nu", vector_to_json(d.nu)},
                             {"probe", vector_to_json(d.probe)},
                             {"on_click", verdict_name(d.on_click)},
                             {"on_no_click", verdict_name(d.on_no_click)},
                             {"degenerate", d.degenerate},
                             {"unreachable", d.unreachable}});
    }
    return Json{{"partition", {{"alice", p.partition.alice()}, {"bob", p.partition.bob()}}},
                {"dims", p.dims},
                {"padded_dim", p.padded_dim},
                {"original_dim", p.original_dim},
                {"alice_basis", matrix_to_json(p.alice_basis)},
                {"discriminators", discs},
                {"zerodiag", to_json(p.provenance)}};
}

LoccProtocol protocol_from_json(const Json &j) {
    try {
        const std::vector<std::size_t> dims = index_list(field(j, "dims"), "dims");
        const Json &part = field(j, "partition");
        Partition partition = Partition::make(index_list(field(part, "alice"), "alice"),
                                              index_list(field(part, "bob"), "bob"), dims.size());
        LoccProtocol p{partition, dims, matrix_from_json(field(j, "alice_basis")),
                       field(j, "padded_dim").get<std::size_t>(), field(j, "original_dim").get<std::size_t>(),
                       {}, {}};
        for (const Json &d : field(j, "discriminators")) {
            BobDiscriminator disc;
            disc.eta = vector_from_json(field(d, "eta"));
            disc.nu = vector_from_json(field(d, "nu"));
            disc.probe = vector_from_json(field(d, "probe"));
            disc.on_click = verdict_from_json(field(d, "on_click"));
            disc.on_no_click = verdict_from_json(field(d, "on_no_click"));
            disc.degenerate = field(d, "degenerate").get<bool>();
            disc.unreachable = field(d, "unreachable").get<bool>();
            p.discriminators.push_back(std::move(disc));
        }
        const Json &z = field(j, "zerodiag");
        p.provenance.padded_dim = field(z, "padded_dim").get<std::size_t>();
        p.provenance.original_dim = field(z, "original_dim").get<std::size_t>();
        p.provenance.max_diagonal = field(z, "max_diagonal").get<double>();
        p.provenance.scale = field(z, "scale").get<double>();
        p.provenance.u = p.alice_basis.conjugate();
        for (const Json &s : field(z, "steps")) {
            p.provenance.steps.push_back(RotationStep{field(s, "p").get<std::size_t>(), field(s, "q").get<std::size_t>(),
                                                      field(s, "theta").get<double>(), field(s, "omega").get<double>()});
        }
        return p;
    } catch (const Json::exception &e) {
        parse_fail(std::string("malformed protocol: ") + e.what());
    } catch (const LoccError &e) {
        if (e.code() == ErrorCode::ParseError) throw;
        parse_fail(std::string("malformed protocol: ") + e.what());
    }
}

Json to_json(const VerificationReport &r) {
    Json branches = Json::array();
    for (const BranchCheck &b : r.branches) {
        branches.push_back(Json{{"outcome", b.outcome},
                                {"prob_psi", b.prob_psi},
                                {"prob_phi", b.prob_phi},
                                {"overlap", b.overlap},
                                {"residual", b.residual},
                                {"reachable", b.reachable},
                                {"degenerate", b.degenerate},
                                {"error_psi", b.error_psi},
                                {"error_phi", b.error_phi}});
    }
    return Json{{"passed", r.passed},
                {"max_residual", r.max_residual},
                {"min_margin", r.min_margin},
                {"max_error_probability", r.max_error_probability},
                {"probability_sum_psi", r.probability_sum_psi},
                {"probability_sum_phi", r.probability_sum_phi},
                {"padding_weight", r.padding_weight},
                {"unitarity_error", r.unitarity_error},
                {"failing_outcomes", r.failing_outcomes},
                {"branches", branches}};
}

Json to_json(const SimulationReport &r) {
    Json branches = Json::array();
    for (const BranchTally &b : r.branches) {
        branches.push_back(Json{{"actual", verdict_name(b.actual)},
                                {"alice_outcome", b.alice_outcome},
                                {"bob_outcome", b.bob_outcome},
                                {"count", b.count},
                                {"exact_probability", b.exact_probability}});
    }
    return Json{{"trials_per_state", r.trials},
                {"seed", r.seed},
                {"rng", std::string(r.rng_algorithm)},
                {"confusion",
                 {{"psi", {{"psi", r.confusion[0][0]}, {"phi", r.confusion[0][1]}}},
                  {"phi", {{"psi", r.confusion[1][0]}, {"phi", r.confusion[1][1]}}}}},
                {"wrong_verdicts", r.wrong_verdicts()},
                {"branches", branches}};
}

Json to_json(const CascadeProtocol &c) {
    return Json{{"party_order", c.party_order},
                {"dims", c.dims},
                {"stage_count", c.stage_count()},
                {"depth", c.depth()},
                {"root", node_to_json(c.root)}};
}

Json to_json(const CascadeVerification &r) {
    Json leaves = Json::array();
    for (const CascadeLeaf &l : r.leaves) {
        leaves.push_back(Json{{"path", l.path},
                              {"kind", branch_kind_name(l.kind)},
                              {"prob_psi", l.prob_psi},
                              {"prob_phi", l.prob_phi},
                              {"residual", l.residual},
                              {"error_psi", l.error_psi},
                              {"error_phi", l.error_phi}});
    }
    return Json{{"passed", r.passed},
                {"stage_count", r.stage_count},
                {"depth", r.depth},
                {"max_residual", r.max_residual},
                {"max_unitarity_error", r.max_unitarity_error},
                {"error_psi", r.error_psi},
                {"error_phi", r.error_phi},
                {"probability_sum_psi", r.probability_sum_psi},
                {"probability_sum_phi", r.probability_sum_phi},
                {"leaves", leaves}};
}

Json to_json(const ExclusionVerification &r) {
    Json outcomes = Json::array();
    for (const ExclusionOutcome &o : r.outcomes) {
        outcomes.push_back(Json{{"true_index", o.true_index},
                                {"paths", o.paths},
                                {"prob_correct", o.prob_correct},
                                {"prob_wrong", o.prob_wrong},
                                {"max_soundness_violation", o.max_soundness_violation}});
    }
    return Json{{"passed", r.passed}, {"copies_used", r.copies_used}, {"outcomes", outcomes}};
}

Json to_json(const ExclusionRun &r) {
    Json rounds = Json::array();
    for (const ExclusionRound &x : r.rounds) {
        rounds.push_back(Json{{"pair", {x.first, x.second}}, {"kept", x.kept}, {"excluded", x.excluded}});
    }
    return Json{{"rounds", rounds}, {"survivor", r.survivor}};
}

Json to_json(const BellDemoReport &r) {
    Json results = Json::array();
    for (const BellDemoResult &res : r.results) {
        Json branches = Json::array();
        for (const BellBranch &b : res.branches) {
            branches.push_back(Json{{"outcomes", b.outcomes},
                                    {"probability", b.probability},
                                    {"verdict", std::string(bell_name(b.verdict))}});
        }
        results.push_back(Json{{"truth", std::string(bell_name(res.truth))},
                               {"prob_correct", res.prob_correct},
                               {"prob_wrong", res.prob_wrong},
                               {"branches", branches}});
    }
    return Json{{"passed", r.passed}, {"copies_used", r.copies_used}, {"results", results}};
}

}  // namespace locc
