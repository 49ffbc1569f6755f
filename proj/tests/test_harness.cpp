#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mch/config.hpp"
#include "mch/simulate.hpp"
#include "mch/snapshot.hpp"
#include "test_util.hpp"

using namespace mch;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("mch_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args, const std::string& tag) {
    const fs::path dir = fresh_dir("cli_io_" + tag);
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd =
        std::string(MCH_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string config_path(const std::string& name) {
    return std::string(MCH_CONFIG_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("config text grammar") {
    const std::string text =
        "# comment\n[grid]\ndim = 1\nn = 64\n\n[solver]\ndt = 1e-3\nt_end = 0.5\n";
    const ConfigText cfg = ConfigText::parse(text);
    CHECK(cfg.get_int("grid", "dim") == 1);
    CHECK(cfg.get_double("solver", "dt") == 1e-3);
    CHECK(cfg.get_double("grid", "period", 1.0) == 1.0);

    SECTION("round trip is idempotent") {
        const std::string once = cfg.serialize();
        const std::string twice = ConfigText::parse(once).serialize();
        CHECK(once == twice);
        CHECK(ConfigText::parse(once) == cfg);
    }
    SECTION("malformed lines name the problem") {
        CHECK_THROWS_WITH(ConfigText::parse("[grid]\nnonsense\n"),
                          Catch::Matchers::ContainsSubstring("key = value"));
        CHECK_THROWS_WITH(ConfigText::parse("dim = 1\n"),
                          Catch::Matchers::ContainsSubstring("outside any section"));
    }
    SECTION("typed getters name the offending key") {
        CHECK_THROWS_WITH(cfg.get_double("grid", "dim_oops"),
                          Catch::Matchers::ContainsSubstring("grid.dim_oops"));
        const ConfigText bad = ConfigText::parse("[solver]\ndt = fast\n");
        CHECK_THROWS_WITH(bad.get_double("solver", "dt"),
                          Catch::Matchers::ContainsSubstring("solver.dt"));
    }
    SECTION("infinity spelled out") {
        const ConfigText inf_cfg = ConfigText::parse("[diagnostics]\nsteepening_ratio = inf\n");
        CHECK(std::isinf(inf_cfg.get_double("diagnostics", "steepening_ratio")));
    }
    SECTION("comma lists") {
        const ConfigText lst = ConfigText::parse("[scan]\namplitudes = 0.5, 1, 2\n");
        CHECK(lst.get_double_list("scan", "amplitudes") == std::vector<double>{0.5, 1.0, 2.0});
    }
}

TEST_CASE("run config resolution") {
    SECTION("unknown initial-data kind is reported with the id") {
        const std::string text =
            "[grid]\ndim = 1\nn = 64\n[initial_u]\nkind = soliton_zoo\n[initial_gamma]\nkind = "
            "gaussian_bump\n[solver]\ndt = 1e-3\nt_end = 0.1\n[output]\ndir = o\n";
        CHECK_THROWS_WITH(parse_run_config(ConfigText::parse(text)),
                          Catch::Matchers::ContainsSubstring("soliton_zoo"));
    }
    SECTION("committed configs parse") {
        for (const char* name :
             {"smooth_gaussian_1d.cfg", "ch_reduction_1d.cfg", "peakon_antipeakon_1d.cfg",
              "blowup_scan_small.cfg", "random_2d.cfg", "picard_smooth_1d.cfg", "minimal_t0.cfg",
              "determinism_1d.cfg"}) {
            const RunConfig rc = parse_run_config(ConfigText::parse(slurp(config_path(name))));
            CHECK(rc.grid.n >= 8);
        }
    }
}

TEST_CASE("initial data catalog produces real band-limited fields") {
    const Grid g(1, 128, 2.0 * std::numbers::pi);
    for (const char* kind : {"gaussian_bump", "fourier_mode", "smoothed_peakon",
                             "peakon_antipeakon", "random_bandlimited"}) {
        InitialDataSpec spec;
        spec.kind = kind;
        spec.mode = 5;
        spec.seed = 99;
        const Field f = make_scalar_initial(g, spec);
        INFO(kind);
        CHECK(is_band_limited(f));
        CHECK(all_finite(f));
        CHECK(linf_norm(f) > 0.0);
    }
    const Grid g2(2, 32, 1.0);
    InitialDataSpec spec;
    spec.kind = "gaussian_bump";
    spec.width = 0.12;
    const VectorField v = make_vector_initial(g2, spec);
    CHECK(is_band_limited(v[0]));
    CHECK(is_band_limited(v[1]));
    // the second component is the shifted profile, not a copy
    CHECK(testutil::rel_l2(v[0], v[1]) > 1e-3);
}

TEST_CASE("snapshot format round trip and validation") {
    const fs::path dir = fresh_dir("snapshot");
    const Grid g(2, 32, 1.0);
    const Field a = random_bandlimited(g, 2.0, 1);
    const Field b = random_bandlimited(g, 2.0, 2);
    const std::string path = (dir / "state.mchf").string();
    snapshot::write(path, g, {&a, &b});

    const auto contents = snapshot::read(path);
    CHECK(contents.grid == g);
    REQUIRE(contents.components.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(contents.components[0][i] == a[i]);
        CHECK(contents.components[1][i] == b[i]);
    }

    SECTION("bad magic is rejected") {
        const std::string bad = (dir / "bad.mchf").string();
        std::ofstream os(bad, std::ios::binary);
        os << "NOPE this is not a snapshot";
        os.close();
        CHECK_THROWS_AS(snapshot::read(bad), SnapshotError);
    }
    SECTION("truncation is rejected") {
        const std::string cut = (dir / "cut.mchf").string();
        const std::string full = slurp(path);
        std::ofstream os(cut, std::ios::binary);
        os << full.substr(0, full.size() / 2);
        os.close();
        CHECK_THROWS_AS(snapshot::read(cut), SnapshotError);
    }
}

TEST_CASE("cli: simulate") {
    SECTION("t_end = 0 writes a header-only CSV and the initial snapshot") {
        const fs::path out = fresh_dir("t0");
        const CliResult r = run_cli(
            "simulate --config " + config_path("minimal_t0.cfg") + " --out " + out.string(), "t0");
        CHECK(r.exit_code == 0);
        const std::string csv = slurp(out / "trajectory.csv");
        CHECK(csv == detail::kTrajectoryHeader);
        CHECK(fs::exists(out / "snapshot_000000.mchf"));
    }
    SECTION("unknown catalog id exits 1 and names the id") {
        const fs::path dir = fresh_dir("badkind");
        const fs::path cfg = dir / "bad.cfg";
        std::ofstream(cfg) << "[grid]\ndim = 1\nn = 64\n[initial_u]\nkind = warp_bubble\n"
                              "[initial_gamma]\nkind = gaussian_bump\n[solver]\ndt = 1e-3\n"
                              "t_end = 0.0\n[output]\ndir = " << (dir / "o").string() << "\n";
        const CliResult r = run_cli("simulate --config " + cfg.string(), "badkind");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("warp_bubble") != std::string::npos);
    }
    SECTION("missing config file exits 1") {
        const CliResult r = run_cli("simulate --config /nonexistent/nowhere.cfg", "missing");
        CHECK(r.exit_code == 1);
    }
    SECTION("steepening alert exits 2 with artifacts intact") {
        const fs::path dir = fresh_dir("alert");
        const fs::path cfg = dir / "alert.cfg";
        // strong peakon pair on a small grid trips the ratio-5 alert quickly
        std::ofstream(cfg) << "[grid]\ndim = 1\nn = 128\nperiod = 6.283185307179586\n"
                              "[initial_u]\nkind = peakon_antipeakon\namplitude = 1.5\n"
                              "width = 0.02\ncenter = 0.25\ncenter2 = 0.75\n"
                              "[initial_gamma]\nkind = gaussian_bump\namplitude = 0\n"
                              "[solver]\ndt = 0.002\nt_end = 4.0\n"
                              "[output]\ndir = " << (dir / "o").string() << "\n"
                           << "[diagnostics]\nsteepening_ratio = 5.0\n";
        const CliResult r = run_cli("simulate --config " + cfg.string(), "alert");
        CHECK(r.exit_code == 2);
        CHECK(fs::exists(dir / "o" / "trajectory.csv"));
        CHECK(slurp(dir / "o" / "trajectory.csv").size() > std::string(detail::kTrajectoryHeader).size());
    }
}

TEST_CASE("cli: verify rejects unknown suites") {
    const CliResult r = run_cli("verify xyz", "verify_bad");
    CHECK(r.exit_code == 1);
}

TEST_CASE("cli: besov") {
    const fs::path dir = fresh_dir("besov");
    const Grid g(1, 256, 1.0);

    SECTION("zero-field snapshot reports total 0") {
        const Field zero(g);
        const std::string path = (dir / "zero.mchf").string();
        snapshot::write(path, g, {&zero});
        const CliResult r = run_cli("besov " + path + " --s 1.5 --p 2 --r 2", "besov_zero");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("total,,,0\n") != std::string::npos);
    }
    SECTION("single-mode snapshot has one dominant block row") {
        Field mode(g);
        for (int i = 0; i < g.n; ++i)
            mode[i] = std::cos(2.0 * std::numbers::pi * 12 * g.coord(i));
        const std::string path = (dir / "mode.mchf").string();
        snapshot::write(path, g, {&mode});
        const CliResult r = run_cli("besov " + path + " --s 0 --p inf --r inf", "besov_mode");
        CHECK(r.exit_code == 0);
        // parse rows: q, weight, block_lp, cumulative
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);  // header
        int nonzero = 0, dominant_q = -99;
        double best = 0.0;
        while (std::getline(in, line) && line.rfind("total", 0) != 0) {
            std::istringstream row(line);
            std::string q_s, w_s, b_s;
            std::getline(row, q_s, ',');
            std::getline(row, w_s, ',');
            std::getline(row, b_s, ',');
            const double block = std::stod(b_s);
            if (block > 1e-12) ++nonzero;
            if (block > best) best = block, dominant_q = std::stoi(q_s);
        }
        CHECK(nonzero == 1);
        CHECK(dominant_q == 3);  // |k| = 12 lies on the plateau of block 3
    }
    SECTION("corrupt snapshot exits 1") {
        const fs::path bad = dir / "corrupt.mchf";
        std::ofstream(bad, std::ios::binary) << "garbage";
        const CliResult r = run_cli("besov " + bad.string() + " --s 1 --p 2 --r 2", "besov_bad");
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("cli: blowup-scan rejects an empty amplitude list") {
    const fs::path dir = fresh_dir("scan_empty");
    const fs::path cfg = dir / "scan.cfg";
    std::ofstream(cfg) << "[grid]\ndim = 1\nn = 64\n[initial_u]\nkind = gaussian_bump\n"
                          "[initial_gamma]\nkind = gaussian_bump\namplitude = 0\n"
                          "[solver]\ndt = 1e-3\nt_end = 0.01\n[output]\ndir = "
                       << (dir / "o").string() << "\n";
    const CliResult r = run_cli("blowup-scan --config " + cfg.string(), "scan_empty");
    CHECK(r.exit_code == 1);
}

TEST_CASE("cli: repeated runs with a fixed seed are byte-identical") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    const std::string base = "simulate --config " + config_path("determinism_1d.cfg");
    const CliResult ra = run_cli(base + " --out " + a.string(), "det_a");
    const CliResult rb = run_cli(base + " --out " + b.string(), "det_b");
    REQUIRE(ra.exit_code == 0);
    REQUIRE(rb.exit_code == 0);
    CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
    CHECK(slurp(a / "snapshot_000000.mchf") == slurp(b / "snapshot_000000.mchf"));
    CHECK(slurp(a / "snapshot_000025.mchf") == slurp(b / "snapshot_000025.mchf"));
    // a different seed changes the trajectory
    const fs::path c = fresh_dir("det_c");
    const CliResult rc = run_cli(base + " --out " + c.string() + " --seed 43", "det_c");
    REQUIRE(rc.exit_code == 0);
    CHECK(slurp(a / "trajectory.csv") != slurp(c / "trajectory.csv"));
}

TEST_CASE("scan respects MCH_THREADS while keeping deterministic tables") {
    RunConfig rc = parse_run_config(ConfigText::parse(slurp(config_path("blowup_scan_small.cfg"))));
    rc.solver.t_end = 0.2;  // shortened family for the threading check
    const auto serial = scan_table_csv(blowup_scan(rc));
    setenv("MCH_THREADS", "3", 1);
    const auto parallel = scan_table_csv(blowup_scan(rc));
    unsetenv("MCH_THREADS");
    CHECK(serial == parallel);
}
