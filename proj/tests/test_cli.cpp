// End-to-end exercises of the `gl` binary: exit-code contract, artifact
// determinism, config validation diagnostics, and verdict re-derivation.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

CmdResult run_cmd(const std::string& args) {
    std::string out_file = (fs::temp_directory_path() / "gl_cli_out.txt").string();
    std::string cmd = std::string(GL_BINARY_PATH) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_config(const std::string& name, const std::string& body) {
    fs::path dir = fs::temp_directory_path() / "gl_cli_configs";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream(p) << body;
    return p;
}

fs::path scratch_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / "gl_cli_runs" / name;
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("validate echoes a fully-defaulted config", "[cli]") {
    fs::path cfg = write_config("minimal.json", R"({
        "problem": "single",
        "domain": {"kind": "unit_square", "resolution": 16},
        "boundary": {"type": "cos", "amplitude": 0.5},
        "epsilons": [0.4, 0.2]
    })");
    CmdResult r = run_cmd("validate " + cfg.string());
    CHECK(r.exit_code == 0);
    // tau auto-set to 0.25 * min(eps)^2 = 0.01
    CHECK(r.output.find("\"tau\": 0.01") != std::string::npos);
    CHECK(r.output.find("\"max_steps\": 20000") != std::string::npos);
    CHECK(r.output.find("\"directory\": \"out\"") != std::string::npos);
}

TEST_CASE("invalid configs exit 64 listing every violation", "[cli]") {
    fs::path cfg = write_config("broken.json", R"({
        "problem": "pairish",
        "domain": {"kind": "unit_disk", "resolution": 2},
        "epsilons": [0.1, 0.2],
        "solver": {"residual_tol": -1}
    })");
    CmdResult r = run_cmd("validate " + cfg.string());
    CHECK(r.exit_code == 64);
    CHECK(r.output.find("problem: unknown value") != std::string::npos);
    CHECK(r.output.find("domain.resolution: must be in [4, 4096]") != std::string::npos);
    CHECK(r.output.find("epsilons: must be strictly decreasing") != std::string::npos);
    CHECK(r.output.find("solver.residual_tol: must be > 0") != std::string::npos);

    fs::path pair_cfg = write_config("pair_one_bc.json", R"({
        "problem": "symmetric_pair",
        "boundary": {"type": "constant"},
        "epsilons": [0.4, 0.2, 0.1]
    })");
    r = run_cmd("validate " + pair_cfg.string());
    CHECK(r.exit_code == 64);
    CHECK(r.output.find("two boundary specs required") != std::string::npos);

    fs::path garbled = write_config("garbled.json", "{ \"problem\": \n !nope }");
    r = run_cmd("validate " + garbled.string());
    CHECK(r.exit_code == 64);
    CHECK(r.output.find("not valid JSON at line 2") != std::string::npos);
}

TEST_CASE("winding boundary data exits 65 with the hypothesis message", "[cli]") {
    fs::path out = scratch_dir("winding");
    fs::path cfg = write_config("winding.json", R"({
        "problem": "single",
        "domain": {"kind": "unit_disk", "resolution": 16},
        "boundary": {"type": "winding", "mode": 1},
        "epsilons": [0.4, 0.2, 0.1],
        "output": {"directory": ")" + out.string() + R"("}
    })");
    CmdResult r = run_cmd("run " + cfg.string());
    CHECK(r.exit_code == 65);
    CHECK(r.output.find("hypothesis violated: deg(g) must be 0 (got 1)") != std::string::npos);
}

TEST_CASE("constant-boundary run exits 0 with an all-zero sweep", "[cli]") {
    fs::path out = scratch_dir("const");
    fs::path cfg = write_config("const_run.json", R"({
        "problem": "single",
        "domain": {"kind": "unit_square", "resolution": 12},
        "boundary": {"type": "constant", "amplitude": 0.0},
        "epsilons": [0.4, 0.2, 0.1],
        "output": {"directory": ")" + out.string() + R"("}
    })");
    CmdResult r = run_cmd("run " + cfg.string());
    CHECK(r.exit_code == 0);

    std::string csv = slurp(out / "sweep.csv");
    // data rows: all energy columns exactly zero
    std::istringstream lines(csv);
    std::string line;
    int data_rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("epsilon,", 0) == 0) continue;
        ++data_rows;
        CHECK(line.find(",0,0,0,0,0,0,0,") != std::string::npos);
    }
    CHECK(data_rows == 3);

    std::string verdicts = slurp(out / "verdicts.json");
    CHECK(verdicts.find("\"inconsistent\"") == std::string::npos);
}

TEST_CASE("sweep run produces deterministic artifacts and a matching report", "[cli][sweep]") {
    fs::path out_a = scratch_dir("det_a");
    fs::path out_b = scratch_dir("det_b");
    std::string body = R"({
        "problem": "single",
        "domain": {"kind": "unit_disk", "resolution": 24},
        "boundary": {"type": "cos", "amplitude": 0.5},
        "epsilons": [0.4, 0.2, 0.1, 0.05],
        "output": {"directory": "PLACEHOLDER"}
    })";
    auto with_dir = [&](const fs::path& d) {
        std::string b = body;
        b.replace(b.find("PLACEHOLDER"), 11, d.string());
        return b;
    };
    fs::path cfg_a = write_config("det_a.json", with_dir(out_a));
    fs::path cfg_b = write_config("det_b.json", with_dir(out_b));

    CmdResult ra = run_cmd("run " + cfg_a.string());
    CmdResult rb = run_cmd("run " + cfg_b.string());
    REQUIRE(ra.exit_code == 0);
    REQUIRE(rb.exit_code == 0);

    // every data artifact byte-identical (run_meta.json is the timestamp
    // sidecar and is excluded by contract)
    for (std::string f : {"sweep.csv", "references.json", "verdicts.json",
                          "solves/level_00.json", "solves/level_01.json",
                          "solves/level_02.json", "solves/level_03.json"}) {
        INFO(f);
        CHECK(slurp(out_a / f) == slurp(out_b / f));
    }

    // report re-derives the stored verdicts byte-for-byte from the artifacts
    CmdResult rep = run_cmd("report " + out_a.string());
    CHECK(rep.exit_code == 0);
    CHECK(rep.output == slurp(out_a / "verdicts.json"));

    // overrides: shrink the sweep and redirect the output
    fs::path out_c = scratch_dir("det_c");
    CmdResult rc = run_cmd("run " + cfg_a.string() + " --epsilons 0.4 0.2 --resolution 12 --out " +
                           out_c.string());
    CHECK(rc.exit_code == 0);
    std::string verdicts_c = slurp(out_c / "verdicts.json");
    CHECK(verdicts_c.find("fewer than 3 epsilon levels") != std::string::npos);
    std::string refs_c = slurp(out_c / "references.json");
    CHECK(refs_c.find("\"resolution\": 12") != std::string::npos);
}

TEST_CASE("pair run writes alpha and beta references", "[cli][sweep]") {
    fs::path out = scratch_dir("pair");
    fs::path cfg = write_config("pair_run.json", R"({
        "problem": "symmetric_pair",
        "domain": {"kind": "unit_disk", "resolution": 16},
        "boundary": [
            {"type": "cos", "amplitude": 0.5},
            {"type": "constant", "amplitude": 0.0}
        ],
        "epsilons": [0.4, 0.2, 0.1],
        "output": {"directory": ")" + out.string() + R"("}
    })");
    CmdResult r = run_cmd("run " + cfg.string());
    CHECK(r.exit_code == 0);

    std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.find("alpha=") != std::string::npos);
    CHECK(csv.find("beta=") != std::string::npos);
    CHECK(csv.find("constraint_violation=") != std::string::npos);

    // unequal data: the constrained gap is positive and the report flags it
    std::string verdicts = slurp(out / "verdicts.json");
    CHECK(verdicts.find("constrained_gap_behaviour") != std::string::npos);
    CHECK(verdicts.find("\"inconsistent\"") == std::string::npos);

    CmdResult rep = run_cmd("report " + out.string());
    CHECK(rep.exit_code == 0);
    CHECK(rep.output == verdicts);
}
