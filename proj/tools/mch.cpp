// Command-line front end: simulate | verify | besov | blowup-scan.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mch/mch.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAlert = 2;
constexpr int kExitNumerical = 3;

mch::ConfigText load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mch::ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return mch::ConfigText::parse(ss.str());
}

void apply_overrides(mch::RunConfig& rc, const std::string& out_dir, long stride, long seed) {
    if (!out_dir.empty()) rc.out_dir = out_dir;
    if (stride >= 0) rc.stride = stride;
    if (seed >= 0) {
        rc.seed = static_cast<std::uint64_t>(seed);
        if (rc.initial_u.kind == "random_bandlimited") rc.initial_u.seed = rc.seed;
        if (rc.initial_gamma.kind == "random_bandlimited")
            rc.initial_gamma.seed = mch::mix_seed(rc.seed, 5);
    }
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, long stride,
                 long seed) {
    mch::RunConfig rc = mch::parse_run_config(load_config(config_path));
    apply_overrides(rc, out_dir, stride, seed);
    const mch::SimulationOutcome out = mch::run_simulation(rc);
    std::cout << "status: " << mch::to_string(out.status) << "\n";
    if (!out.trace.empty()) {
        const auto& last = out.trace.back();
        std::cout << "t = " << mch::format_g17(last.time) << "  H = " << mch::format_g17(last.energy)
                  << "  |grad u|_inf = " << mch::format_g17(last.linf_grad_u) << "\n";
    }
    switch (out.status) {
        case mch::SimulationOutcome::Status::completed:
            return kExitOk;
        case mch::SimulationOutcome::Status::steepening_alert:
            std::cout << "steepening alert at t = " << mch::format_g17(out.alert.time) << "\n";
            return kExitAlert;
        default:
            std::cerr << "run stopped: " << out.message << "\n";
            return kExitNumerical;
    }
}

int cmd_verify(const std::string& suite) {
    const auto results = mch::verify::run_suite(suite);
    for (const auto& r : results) {
        std::printf("[%s] %-28s measured %.6e %s %.6e%s%s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.measured, r.require_at_most ? "<=" : ">=", r.threshold,
                    r.note.empty() ? "" : "  # ", r.note.c_str());
    }
    return mch::verify::all_pass(results) ? kExitOk : kExitError;
}

int cmd_besov(const std::string& snapshot_path, double s, double p, double r, int component) {
    const auto contents = mch::snapshot::read(snapshot_path);
    if (component < 0 || component >= static_cast<int>(contents.components.size()))
        throw mch::SnapshotError("component index out of range");
    const mch::Field& f = contents.components[static_cast<std::size_t>(component)];
    const mch::LPDecomposition dec = mch::lp_decompose(f);
    const mch::BesovParams bp{s, p, r};
    std::cout << "q,weight,block_lp,cumulative_norm\n";
    double acc = 0.0, top = 0.0;
    for (int q = dec.qmin(); q <= dec.qmax(); ++q) {
        const double weight = std::pow(2.0, q * s);
        const double block = mch::lp_norm(dec, q, p);
        double cumulative;
        if (std::isinf(r)) {
            top = std::max(top, weight * block);
            cumulative = top;
        } else {
            acc += std::pow(weight * block, r);
            cumulative = std::pow(acc, 1.0 / r);
        }
        std::cout << q << "," << mch::format_g17(weight) << "," << mch::format_g17(block) << ","
                  << mch::format_g17(cumulative) << "\n";
    }
    std::cout << "total,,," << mch::format_g17(mch::besov_norm(dec, bp)) << "\n";
    return kExitOk;
}

int cmd_blowup_scan(const std::string& config_path, const std::string& out_dir, long seed) {
    mch::RunConfig rc = mch::parse_run_config(load_config(config_path));
    apply_overrides(rc, out_dir, -1, seed);
    const auto rows = mch::blowup_scan(rc);
    std::filesystem::create_directories(rc.out_dir);
    const std::string table = mch::scan_table_csv(rows);
    std::ofstream os(rc.out_dir + "/blowup_scan.csv", std::ios::binary);
    os << table;
    std::cout << table;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral simulator and analysis toolkit for the modified "
                 "multi-component Camassa-Holm system on the periodic torus"};
    app.require_subcommand(1);

    std::string config_path, out_dir, snapshot_path, suite;
    long stride = -1, seed = -1;
    double s = 0.0, p = 2.0, r = 2.0;
    int component = 0;

    auto* sim = app.add_subcommand("simulate", "run a configured trajectory");
    sim->add_option("--config", config_path, "run configuration file")->required();
    sim->add_option("--out", out_dir, "override output directory");
    sim->add_option("--stride", stride, "override snapshot stride");
    sim->add_option("--seed", seed, "override RNG seed");

    auto* ver = app.add_subcommand("verify", "run a named verification suite");
    ver->add_option("suite", suite, "one of: appendix besov inequalities convergence conservation picard")
        ->required();

    auto* bes = app.add_subcommand("besov", "print block norms of a snapshot component");
    bes->add_option("snapshot", snapshot_path, "snapshot file")->required();
    bes->add_option("--s", s, "regularity index");
    bes->add_option("--p", p, "integrability (inf allowed)");
    bes->add_option("--r", r, "summation (inf allowed)");
    bes->add_option("--component", component, "component index (default 0)");

    auto* scan = app.add_subcommand("blowup-scan", "run an amplitude family and tabulate monitors");
    scan->add_option("--config", config_path, "run configuration file with [scan] amplitudes")
        ->required();
    scan->add_option("--out", out_dir, "override output directory");
    scan->add_option("--seed", seed, "override RNG seed");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, stride, seed);
        if (ver->parsed()) return cmd_verify(suite);
        if (bes->parsed()) return cmd_besov(snapshot_path, s, p, r, component);
        if (scan->parsed()) return cmd_blowup_scan(config_path, out_dir, seed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
