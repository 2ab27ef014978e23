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

#include "locc/cli.hpp"

#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "locc/cascade.hpp"
#include "locc/exclusion.hpp"
#include "locc/io.hpp"
#include "locc/linalg.hpp"
#include "locc/protocol.hpp"
#include "locc/states.hpp"

namespace locc::cli {

namespace {

std::string join(const std::vector<std::size_t> &xs) {
    std::ostringstream s;
    for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? "," : "") << xs[i];
    return s.str();
}

std::vector<std::size_t> default_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
}

bool is_identity(const CMatrix &m) {
    return max_abs(m - CMatrix::Identity(m.rows(), m.cols())) <= 1e-12;
}

void print_json(std::ostream &out, const Json &j) { out << j.dump(2) << '\n'; }

void print_protocol_text(std::ostream &out, const LoccProtocol &p, const VerificationReport &v) {
    const ZerodiagResult &z = p.provenance;
    out << "partition: alice={" << join(p.partition.alice()) << "} bob={" << join(p.partition.bob()) << "}\n";
    out << "alice dimension: " << p.original_dim << " (padded to " << p.padded_dim << ")\n";
    out << "rotations: " << z.steps.size() << " (bound 1/2*l*log2(l) = " << z.step_bound() << ")\n";
    out << "alice basis: " << (is_identity(p.alice_basis) ? "identity" : "rotated") << '\n';
    out << "max diagonal residual: " << z.max_diagonal << " (relative "
        << (z.scale > 0.0 ? z.max_diagonal / z.scale : 0.0) << ")\n";
    out << "outcome    p(psi)        p(phi)        residual      bob\n";
    for (const BranchCheck &b : v.branches) {
        const BobDiscriminator &d = p.discriminators.at(b.outcome);
        const char *bob = d.unreachable ? "unreachable"
                          : d.degenerate ? (d.on_click == Verdict::Psi ? "forced psi" : "forced phi")
                                         : "click->psi, else phi";
        out << std::setw(7) << b.outcome << "    " << std::setw(12) << b.prob_psi << "  " << std::setw(12)
            << b.prob_phi << "  " << std::setw(12) << b.residual << "  " << bob << '\n';
    }
    out << "max branch residual: " << v.max_residual << '\n';
    out << "min verdict margin: " << v.min_margin << '\n';
    out << "verified: " << (v.passed ? "yes" : "NO") << '\n';
    if (!v.passed) out << "failing outcomes: " << join(v.failing_outcomes) << '\n';
}

int run_distinguish(const RunConfig &c, std::ostream &out, bool from_file) {
    const StateVector psi = load_state(c.psi, c.tolerances);
    const StateVector phi = load_state(c.phi, c.tolerances);
    const LoccProtocol p = [&] {
        if (!from_file)
            return synthesize_protocol(psi, phi, Partition::from_alice(c.alice, psi.num_parties()), c.tolerances);
        std::ifstream in(c.protocol_path);
        if (!in) throw LoccError(ErrorCode::ParseError, "cannot open protocol file '" + c.protocol_path + "'");
        Json j;
        try {
            in >> j;
        } catch (const Json::exception &e) {
            throw LoccError(ErrorCode::ParseError, std::string("malformed protocol JSON: ") + e.what());
        }
        return protocol_from_json(j.contains("protocol") ? j.at("protocol") : j);
    }();
    const VerificationReport v = verify_protocol(p, psi, phi, c.tolerances);
    if (c.format == Format::Json) {
        print_json(out, Json{{"command", c.command == Command::Verify ? "verify" : "distinguish"},
                             {"identity_basis", is_identity(p.alice_basis)},
                             {"protocol", protocol_to_json(p)},
                             {"verification", to_json(v)}});
    } else {
        print_protocol_text(out, p, v);
    }
    return v.passed ? kExitOk : kExitVerificationFailed;
}

int run_simulate(const RunConfig &c, std::ostream &out) {
    if (c.trials < 1) throw LoccError(ErrorCode::ParseError, "simulate needs --trials >= 1");
    if (!c.seed) throw LoccError(ErrorCode::ParseError, "simulate needs an explicit --seed");
    const StateVector psi = load_state(c.psi, c.tolerances);
    const StateVector phi = load_state(c.phi, c.tolerances);
    const LoccProtocol p =
        synthesize_protocol(psi, phi, Partition::from_alice(c.alice, psi.num_parties()), c.tolerances);
    const VerificationReport v = verify_protocol(p, psi, phi, c.tolerances);
    const SimulationReport s = simulate(p, psi, phi, c.trials, *c.seed);
    const bool ok = v.passed && s.wrong_verdicts() == 0;
    if (c.format == Format::Json) {
        print_json(out, Json{{"command", "simulate"},
                             {"padded_dim", p.padded_dim},
                             {"rotation_count", p.provenance.steps.size()},
                             {"rotation_bound", p.provenance.step_bound()},
                             {"max_diagonal", p.provenance.max_diagonal},
                             {"verification", to_json(v)},
                             {"simulation", to_json(s)}});
    } else {
        out << "padded dimension: " << p.padded_dim << '\n';
        out << "rotations: " << p.provenance.steps.size() << " (bound " << p.provenance.step_bound() << ")\n";
        out << "max diagonal residual: " << p.provenance.max_diagonal << '\n';
        out << "verified: " << (v.passed ? "yes" : "NO") << '\n';
        out << "trials per state: " << s.trials << ", seed " << s.seed << " (" << s.rng_algorithm << ")\n";
        out << "confusion (rows = true state, cols = verdict)\n";
        out << "          psi         phi\n";
        out << "psi  " << std::setw(10) << s.confusion[0][0] << "  " << std::setw(10) << s.confusion[0][1] << '\n';
        out << "phi  " << std::setw(10) << s.confusion[1][0] << "  " << std::setw(10) << s.confusion[1][1] << '\n';
        out << "branch     alice  bob      count   expected\n";
        for (const BranchTally &b : s.branches) {
            if (b.count == 0 && b.exact_probability == 0.0) continue;
            out << std::setw(6) << verdict_name(b.actual) << "  " << std::setw(7) << b.alice_outcome << "  "
                << std::setw(3) << b.bob_outcome << "  " << std::setw(9) << b.count << "  " << std::setw(9)
                << b.exact_probability * static_cast<double>(s.trials) << '\n';
        }
        out << "wrong verdicts: " << s.wrong_verdicts() << '\n';
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

int run_cascade(const RunConfig &c, std::ostream &out) {
    const StateVector psi = load_state(c.psi, c.tolerances);
    const StateVector phi = load_state(c.phi, c.tolerances);
    const auto order = c.order.empty() ? default_order(psi.num_parties()) : c.order;
    const CascadeProtocol cascade = cascade_multipartite(psi, phi, order, c.tolerances);
    const CascadeVerification v = verify_cascade(cascade, psi, phi, c.tolerances);
    if (c.format == Format::Json) {
        print_json(out, Json{{"command", "cascade"}, {"cascade", to_json(cascade)}, {"verification", to_json(v)}});
    } else {
        out << "party order: " << join(order) << '\n';
        out << "stages: " << v.stage_count << " (deepest branch " << v.depth << ")\n";
        out << "path            kind           p(psi)        p(phi)        residual\n";
        for (const CascadeLeaf &leaf : v.leaves) {
            out << std::setw(14) << join(leaf.path) << "  " << std::setw(12) << branch_kind_name(leaf.kind)
                << "  " << std::setw(12) << leaf.prob_psi << "  " << std::setw(12) << leaf.prob_phi << "  "
                << std::setw(12) << leaf.residual << '\n';
        }
        out << "max branch residual: " << v.max_residual << '\n';
        out << "misidentification probability: psi " << v.error_psi << ", phi " << v.error_phi << '\n';
        out << "verified: " << (v.passed ? "yes" : "NO") << '\n';
    }
    return v.passed ? kExitOk : kExitVerificationFailed;
}

int run_exclude(const RunConfig &c, std::ostream &out) {
    if (c.states.size() < 2) throw LoccError(ErrorCode::TooFewStates, "exclude needs at least two --state inputs");
    std::vector<StateVector> states;
    for (const std::string &s : c.states) states.push_back(load_state(s, c.tolerances));
    const std::size_t parties = states.front().num_parties();
    const ExclusionPlan plan = c.order.empty()
                                   ? exclusion_protocol(states, Partition::from_alice(c.alice, parties), c.tolerances)
                                   : exclusion_protocol(states, c.order, c.tolerances);
    const ExclusionVerification v = verify_exclusion(plan, c.tolerances);
    std::vector<ExclusionRun> runs;
    if (c.seed) {
        for (std::size_t k = 0; k < plan.states.size(); ++k) {
            runs.push_back(run_exclusion(plan, plan.states[k], derive_seed(*c.seed, k)));
        }
    }
    if (c.format == Format::Json) {
        Json j{{"command", "exclude"}, {"candidates", plan.states.size()}, {"verification", to_json(v)}};
        if (c.seed) {
            Json sampled = Json::array();
            for (const ExclusionRun &r : runs) sampled.push_back(to_json(r));
            j["seed"] = *c.seed;
            j["sampled_runs"] = sampled;
        }
        print_json(out, j);
    } else {
        out << "candidates: " << plan.states.size() << ", copies used: " << plan.copies_used << '\n';
        out << "true state  paths  p(correct)    p(wrong)\n";
        for (const ExclusionOutcome &o : v.outcomes) {
            out << std::setw(10) << o.true_index << "  " << std::setw(5) << o.paths << "  " << std::setw(12)
                << o.prob_correct << "  " << std::setw(10) << o.prob_wrong << '\n';
        }
        for (std::size_t k = 0; k < runs.size(); ++k) {
            out << "sampled run, true state " << k << ":";
            for (const ExclusionRound &r : runs[k].rounds) {
                out << " (" << r.first << " vs " << r.second << " -> drop " << r.excluded << ")";
            }
            out << " survivor " << runs[k].survivor << '\n';
        }
        out << "verified: " << (v.passed ? "yes" : "NO") << '\n';
    }
    return v.passed ? kExitOk : kExitVerificationFailed;
}

int run_bell_demo(const RunConfig &c, std::ostream &out) {
    const BellDemoReport r = bell_two_copy_demo();
    if (c.format == Format::Json) {
        print_json(out, Json{{"command", "bell-demo"}, {"report", to_json(r)}});
    } else {
        out << "copies used: " << r.copies_used << '\n';
        for (const BellDemoResult &res : r.results) {
            out << bell_name(res.truth) << ": p(correct) = " << res.prob_correct << ", p(wrong) = " << res.prob_wrong
                << '\n';
        }
        out << "verified: " << (r.passed ? "yes" : "NO") << '\n';
    }
    return r.passed ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        switch (config.command) {
            case Command::Distinguish: return run_distinguish(config, out, false);
            case Command::Verify: return run_distinguish(config, out, !config.protocol_path.empty());
            case Command::Simulate: return run_simulate(config, out);
            case Command::Cascade: return run_cascade(config, out);
            case Command::Exclude: return run_exclude(config, out);
            case Command::BellDemo: return run_bell_demo(config, out);
        }
    } catch (const LoccError &e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Synthesize, verify and simulate LOCC protocols for orthogonal pure states"};
    app.require_subcommand(1);
    RunConfig config;
    std::string format = "text";

    const auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--tol-orthogonality", config.tolerances.orthogonality, "Max |<phi|psi>| accepted");
        sub->add_option("--tol-residual", config.tolerances.branch_overlap, "Max per-branch overlap residual");
    };
    const auto add_pair = [&](CLI::App *sub) {
        sub->add_option("--psi", config.psi, "State file or built-in name")->required();
        sub->add_option("--phi", config.phi, "State file or built-in name")->required();
    };

    CLI::App *distinguish = app.add_subcommand("distinguish", "Synthesize a protocol and report it");
    add_pair(distinguish);
    distinguish->add_option("--alice", config.alice, "Alice's parties")->delimiter(',');
    add_common(distinguish);

    CLI::App *verify = app.add_subcommand("verify", "Exhaustively verify a protocol, branch by branch");
    add_pair(verify);
    verify->add_option("--alice", config.alice, "Alice's parties")->delimiter(',');
    verify->add_option("--protocol", config.protocol_path, "Protocol JSON from 'distinguish --format json'");
    add_common(verify);

    CLI::App *sim = app.add_subcommand("simulate", "Sample protocol runs under the Born rule");
    add_pair(sim);
    sim->add_option("--alice", config.alice, "Alice's parties")->delimiter(',');
    sim->add_option("--trials", config.trials, "Trials per true state")->required()->check(CLI::PositiveNumber);
    sim->add_option("--seed", config.seed, "Master PRNG seed")->required();
    add_common(sim);

    CLI::App *cascade = app.add_subcommand("cascade", "Multipartite cascade, one party at a time");
    add_pair(cascade);
    cascade->add_option("--order", config.order, "Measurement order over parties")->delimiter(',');
    add_common(cascade);

    CLI::App *exclude = app.add_subcommand("exclude", "Multi-copy exclusion over several candidates");
    exclude->add_option("--state", config.states, "Candidate state (repeat)")->required();
    exclude->add_option("--alice", config.alice, "Alice's parties")->delimiter(',');
    exclude->add_option("--order", config.order, "Use cascades over this party order")->delimiter(',');
    exclude->add_option("--seed", config.seed, "Also sample one run per candidate");
    add_common(exclude);

    CLI::App *bell = app.add_subcommand("bell-demo", "Two-copy identification of the four Bell states");
    add_common(bell);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    config.format = format == "json" ? Format::Json : Format::Text;
    if (app.got_subcommand(distinguish)) config.command = Command::Distinguish;
    else if (app.got_subcommand(verify)) config.command = Command::Verify;
    else if (app.got_subcommand(sim)) config.command = Command::Simulate;
    else if (app.got_subcommand(cascade)) config.command = Command::Cascade;
    else if (app.got_subcommand(exclude)) config.command = Command::Exclude;
    else config.command = Command::BellDemo;
    return run(config, out, err);
}

}  // namespace locc::cli
