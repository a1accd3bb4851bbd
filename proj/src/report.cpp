#include "coinflip/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coinflip/acceptance.hpp"
#include "coinflip/alice.hpp"
#include "coinflip/fair.hpp"
#include "coinflip/protocol.hpp"

namespace coinflip {

namespace {

using nlohmann::json;

void emit_error(const std::string& type, const std::string& message) {
    json j;
    j["error"] = type;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
}

void write_artifact(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file: " + cfg.out);
    f << text;
    if (!f.good()) throw UsageError("short write to output file: " + cfg.out);
}

double required_theta(const RunConfig& cfg) {
    if (!cfg.theta) throw UsageError("missing angle: pass --theta-deg or --theta-rad");
    return *cfg.theta;
}

json generator_to_json(const Mat& g) {
    json rows = json::array();
    for (int i = 0; i < g.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < g.dim(); ++j) row.push_back({g(i, j).real(), g(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat generator_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw UsageError("strategy file: generator must be a non-empty array");
    const int d = static_cast<int>(rows.size());
    Mat g(d);
    for (int i = 0; i < d; ++i) {
        const json& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw UsageError("strategy file: generator must be square");
        for (int j = 0; j < d; ++j) {
            const json& e = row.at(j);
            if (e.is_number())
                g(i, j) = e.get<double>();
            else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
                g(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
            else
                throw UsageError("strategy file: entries must be numbers or [re, im] pairs");
        }
    }
    return g;
}

void run_alice(const RunConfig& cfg) {
    const ProtocolParams p = ProtocolParams::checked(cfg.n, required_theta(cfg));
    const AliceBiasResult r = alice_bias_spectral(p.n, p.theta);
    const double closed = alice_bias_closed(p.n, p.theta);
    json j;
    j["command"] = "alice";
    j["n"] = p.n;
    j["theta_rad"] = p.theta;
    j["theta_deg"] = rad2deg(p.theta);
    j["alice_bias"] = closed;
    j["spectral_bias"] = r.p_star;
    j["spectral_deviation"] = std::abs(r.p_star - closed);
    write_artifact(cfg, j.dump(2) + "\n");
}

void run_bob(const RunConfig& cfg) {
    const ProtocolParams p = ProtocolParams::checked(cfg.n, required_theta(cfg));
    const LambdaOperator lam = build_lambda_fast(p.n, p.theta);
    const DualSolution dual = solve_dual(p.n, p.theta);
    const PrimalRecovery rec = recover_primal(lam, dual);
    json j;
    j["command"] = "bob";
    j["n"] = p.n;
    j["theta_rad"] = p.theta;
    j["theta_deg"] = rad2deg(p.theta);
    j["bob_dual"] = dual.value;
    j["bob_primal"] = rec.value;
    j["gap"] = rec.gap;
    j["gap_closed"] = rec.gap_closed;
    j["lambda1"] = dual.lambda1;
    j["lambda2"] = dual.lambda2;
    j["slack_min_eig"] = dual.slack_min_eig;
    j["null_dim"] = rec.null_dim;
    if (!rec.note.empty()) j["note"] = rec.note;
    j["generator"] = generator_to_json(rec.generator);
    if (p.n == 2) {
        const TwoQubitAnalytic an = two_qubit_analytic(p.theta);
        const ConjecturedPrimal cp = conjectured_primal_n2(p.theta);
        j["xi"] = an.xi;
        j["chi"] = an.chi;
        j["analytic_value"] = an.value;
        j["f_star"] = cp.f_star;
        j["conjectured_value"] = cp.value;
    }
    write_artifact(cfg, j.dump(2) + "\n");
}

json fair_to_json(const FairPoint& f) {
    json j;
    j["n"] = f.n;
    j["theta_rad"] = f.theta_star;
    j["theta_deg"] = rad2deg(f.theta_star);
    j["p_fair"] = f.p_fair;
    j["alice_bias"] = f.alice_at_star;
    j["bob_bias"] = f.bob_at_star;
    j["residual"] = f.residual;
    return j;
}

void run_fair(const RunConfig& cfg) {
    json j;
    j["command"] = "fair";
    if (cfg.table) {
        json rows = json::array();
        for (const FairPoint& f : fair_table(cfg.n)) rows.push_back(fair_to_json(f));
        j["table"] = std::move(rows);
    } else {
        j.update(fair_to_json(find_fair_theta(cfg.n)));
    }
    write_artifact(cfg, j.dump(2) + "\n");
}

std::vector<double> parse_grid_degrees(const std::string& s) {
    double start = 0.0, stop = 0.0;
    int count = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &start, &stop, &count, &extra) != 3)
        throw UsageError("bad --grid, expected start:stop:count in degrees: " + s);
    if (count < 1) throw UsageError("--grid count must be at least 1");
    if (!(start <= stop)) throw UsageError("--grid start must not exceed stop");
    if (start < 0.0 || stop > 90.0) throw UsageError("--grid angles must lie in [0, 90] degrees");
    std::vector<double> rad;
    for (double deg : linspace(start, stop, count)) rad.push_back(deg2rad(deg));
    return rad;
}

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void run_sweep(const RunConfig& cfg) {
    if (cfg.grid.empty()) throw UsageError("sweep requires --grid start:stop:count");
    const std::vector<double> grid = parse_grid_degrees(cfg.grid);
    if (cfg.n < 1) throw UsageError("sweep requires --n >= 1");
    const std::vector<SweepRow> rows = sweep_curves(cfg.n, grid);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "theta_rad,theta_deg,alice,bob_dual,bob_primal,gap\n";
        for (const SweepRow& r : rows)
            os << fmt12(r.theta) << ',' << fmt12(rad2deg(r.theta)) << ',' << fmt12(r.alice) << ','
               << fmt12(r.bob_dual) << ',' << fmt12(r.bob_primal) << ',' << fmt12(r.gap) << '\n';
        write_artifact(cfg, os.str());
        return;
    }
    json j;
    j["command"] = "sweep";
    j["n"] = cfg.n;
    json jr = json::array();
    for (const SweepRow& r : rows) {
        json e;
        e["theta_rad"] = r.theta;
        e["theta_deg"] = rad2deg(r.theta);
        e["alice"] = r.alice;
        e["bob_dual"] = r.bob_dual;
        e["bob_primal"] = r.bob_primal;
        e["n1_reference"] = r.n1_reference;
        e["gap"] = r.gap;
        jr.push_back(std::move(e));
    }
    j["rows"] = std::move(jr);
    write_artifact(cfg, j.dump(2) + "\n");
}

void run_simulate(const RunConfig& cfg) {
    const ProtocolParams p = ProtocolParams::checked(cfg.n, required_theta(cfg));
    if (!cfg.seed) throw UsageError("simulate requires --seed");
    if (!(cfg.p_loss >= 0.0 && cfg.p_loss < 1.0)) throw UsageError("--p-loss must lie in [0, 1)");
    if (cfg.trials < 1) throw UsageError("--trials must be positive");
    const int target = 0;  // cheats drive the coin toward outcome 0

    json j;
    j["command"] = "simulate";
    j["cheat"] = cfg.cheat;
    j["n"] = p.n;
    j["theta_rad"] = p.theta;
    j["theta_deg"] = rad2deg(p.theta);
    j["p_loss"] = cfg.p_loss;
    j["trials"] = cfg.trials;
    j["seed"] = *cfg.seed;

    if (cfg.cheat == "none") {
        const SimulationSummary s = simulate_honest(p, cfg.p_loss, *cfg.seed, cfg.trials);
        j["completed"] = s.completed;
        j["aborted"] = s.aborted;
        j["outcome0_frac"] = s.outcome0_frac;
        j["mean_restarts"] = s.mean_restarts;
    } else {
        double rate = 0.0, expected = 0.0;
        if (cfg.cheat == "alice-optimal") {
            const AliceBiasResult r = alice_bias_spectral(p.n, p.theta);
            rate = run_cheating_alice(p, r.optimal_state, target, *cfg.seed, cfg.trials, cfg.p_loss);
            expected = r.p_star;
        } else if (cfg.cheat == "bob-optimal") {
            const LambdaOperator lam = build_lambda_fast(p.n, p.theta);
            const DualSolution dual = solve_dual(p.n, p.theta);
            const PrimalRecovery rec = recover_primal(lam, dual);
            if (!rec.gap_closed)
                throw NumericalError("bob-optimal strategy recovery left a duality gap: " + rec.note);
            const CheatStrategy strat = CheatStrategy::checked(p.n, rec.generator);
            rate = run_cheating_bob(p, strat, target, *cfg.seed, cfg.trials, cfg.p_loss);
            expected = rec.value;
        } else if (cfg.cheat == "bob-file") {
            if (cfg.cheat_file.empty()) throw UsageError("--cheat bob-file requires --cheat-file");
            std::ifstream f(cfg.cheat_file);
            if (!f) throw UsageError("cannot open strategy file: " + cfg.cheat_file);
            json doc;
            try {
                f >> doc;
            } catch (const json::exception& e) {
                throw UsageError(std::string("strategy file is not valid JSON: ") + e.what());
            }
            if (!doc.contains("n") || !doc["n"].is_number_integer() || !doc.contains("generator"))
                throw UsageError("strategy file needs integer \"n\" and \"generator\" matrix");
            const int fn = doc["n"].get<int>();
            if (fn != p.n) throw UsageError("strategy file register size does not match --n");
            Mat g = generator_from_json(doc["generator"]);
            if (g.dim() != (1 << p.n)) throw UsageError("strategy file generator has wrong dimension");
            const CheatStrategy strat = CheatStrategy::checked(p.n, std::move(g));
            rate = run_cheating_bob(p, strat, target, *cfg.seed, cfg.trials, cfg.p_loss);
            RawFamily fam = expand_family(strat);
            expected = family_success_probability(fam, p.theta, target);
        } else {
            throw UsageError("unknown --cheat mode: " + cfg.cheat);
        }
        const double sigma = std::sqrt(std::max(expected * (1.0 - expected), 1e-300) /
                                       static_cast<double>(cfg.trials));
        j["target"] = target;
        j["success_rate"] = rate;
        j["expected_rate"] = expected;
        j["sigma"] = sigma;
        j["deviation_sigmas"] = std::abs(rate - expected) / sigma;
    }
    write_artifact(cfg, j.dump(2) + "\n");
}

int run_verify(const RunConfig& cfg) {
    const std::vector<CriterionResult> results = run_acceptance(cfg.quick);
    std::ostringstream os;
    print_report(os, results);
    write_artifact(cfg, os.str());
    if (!all_pass(results)) {
        emit_error("certification", "one or more release criteria failed");
        return 3;
    }
    return 0;
}

}  // namespace

int run_command(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case RunConfig::Command::Alice: run_alice(cfg); break;
            case RunConfig::Command::Bob: run_bob(cfg); break;
            case RunConfig::Command::Fair: run_fair(cfg); break;
            case RunConfig::Command::Sweep: run_sweep(cfg); break;
            case RunConfig::Command::Simulate: run_simulate(cfg); break;
            case RunConfig::Command::Verify: return run_verify(cfg);
        }
        return 0;
    } catch (const UsageError& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const SizingError& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const StrategyError& e) {
        emit_error("strategy", e.what());
        return 3;
    } catch (const ConstructionError& e) {
        emit_error("construction", e.what());
        return 3;
    } catch (const NumericalError& e) {
        emit_error("numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
}

int cli_main(int argc, const char* const* argv) {
    RunConfig cfg;
    double theta_deg = 0.0, theta_rad = 0.0;

    CLI::App app{"loss-tolerant quantum coin-flip toolkit"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub, bool with_theta) {
        sub->add_option("--n", cfg.n, "register size in qubits")->check(CLI::Range(1, 10));
        if (with_theta) {
            auto* td = sub->add_option("--theta-deg", theta_deg, "protocol angle, degrees");
            auto* tr = sub->add_option("--theta-rad", theta_rad, "protocol angle, radians");
            td->excludes(tr);
            tr->excludes(td);
        }
        sub->add_option("--out", cfg.out, "write the artifact to this file instead of stdout");
        sub->add_option("--format", cfg.format, "artifact format")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* alice = app.add_subcommand("alice", "best sender bias at a fixed angle");
    add_common(alice, true);

    CLI::App* bob = app.add_subcommand("bob", "certified receiver bias (dual bound and recovered strategy)");
    add_common(bob, true);

    CLI::App* fair = app.add_subcommand("fair", "angle where both parties' best biases coincide");
    add_common(fair, false);
    fair->add_flag("--table", cfg.table, "emit the whole table for register sizes 1..n");

    CLI::App* sweep = app.add_subcommand("sweep", "bias curves over an angle grid");
    add_common(sweep, false);
    sweep->add_option("--grid", cfg.grid, "angle grid start:stop:count, degrees")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo protocol runs");
    add_common(simulate, true);
    simulate->add_option("--p-loss", cfg.p_loss, "per-qubit transmission loss probability");
    simulate->add_option("--trials", cfg.trials, "number of protocol runs");
    uint64_t seed = 0;
    auto* seed_opt = simulate->add_option("--seed", seed, "RNG seed (required)")->required();
    simulate->add_option("--cheat", cfg.cheat, "party playing a cheating strategy")
        ->check(CLI::IsMember({"none", "alice-optimal", "bob-optimal", "bob-file"}));
    simulate->add_option("--cheat-file", cfg.cheat_file, "strategy JSON for --cheat bob-file");

    CLI::App* verify = app.add_subcommand("verify", "run the release criteria");
    verify->add_option("--out", cfg.out, "write the report to this file instead of stdout");
    verify->add_flag("--quick", cfg.quick, "skip Monte Carlo and large registers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return 2;
    }

    if (alice->parsed()) cfg.command = RunConfig::Command::Alice;
    if (bob->parsed()) cfg.command = RunConfig::Command::Bob;
    if (fair->parsed()) cfg.command = RunConfig::Command::Fair;
    if (sweep->parsed()) cfg.command = RunConfig::Command::Sweep;
    if (simulate->parsed()) cfg.command = RunConfig::Command::Simulate;
    if (verify->parsed()) cfg.command = RunConfig::Command::Verify;

    CLI::App* active = app.get_subcommands().front();
    if (auto* o = active->get_option_no_throw("--theta-deg"); o && o->count())
        cfg.theta = deg2rad(theta_deg);
    if (auto* o = active->get_option_no_throw("--theta-rad"); o && o->count()) cfg.theta = theta_rad;
    if (seed_opt->count()) cfg.seed = seed;

    return run_command(cfg);
}

}  // namespace coinflip
