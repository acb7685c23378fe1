#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <decaf/oracle.hpp>
#include <decaf/xyz.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// End-to-end checks of the command-line binary. The path comes from the
// build system; every invocation runs in a fresh scratch directory.

using namespace decaf;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/decaf_cli_XXXXXX";
        const char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    REQUIRE(out.good());
}

RunResult run(const std::string& args) {
    const std::string base = scratch_dir();
    const std::string cmd = std::string(DECAF_CLI_PATH) + " " + args + " > " +
                            base + "/out.txt 2> " + base + "/err.txt";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(base + "/out.txt");
    r.err = slurp(base + "/err.txt");
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

}  // namespace

TEST_CASE("help output matches the golden file") {
    const auto r = run("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.out == slurp(DECAF_CLI_HELP_GOLDEN));
}

TEST_CASE("missing subcommand is a usage error") {
    CHECK(run("").exit_code == 2);
    CHECK(run("bogus-subcommand").exit_code == 2);
}

TEST_CASE("quadrature dump has 78 nodes for the default grid") {
    const auto r = run("quadrature");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2 + 78);
    CHECK(lines[0].find("layers=14,26,38") != std::string::npos);
    CHECK(lines[0].find("hash=0x") != std::string::npos);
    CHECK(lines[1] == "x,y,z,weight,layer");
    // every data row: five fields, positive weight
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto f = split_csv(lines[i]);
        REQUIRE(f.size() == 5);
        CHECK(std::stod(f[3]) > 0.0);
    }
}

TEST_CASE("distmat of a structure and its rotated copy is near zero") {
    std::mt19937 rng(61);
    std::normal_distribution<double> g(0.0, 1.2);
    Structure a;
    const char* species[] = {"O", "H", "H", "C", "N"};
    for (int i = 0; i < 5; ++i)
        a.atoms.push_back({species[i], Vec3(g(rng), g(rng), g(rng))});
    const Mat3 rot = test::random_rotation(rng);
    Structure b = a;
    for (auto& atom : b.atoms) atom.position = rot * atom.position;
    // third, genuinely different structure sets the distance scale
    Structure c = a;
    c.atoms[0].position += Vec3(0.8, -0.4, 0.3);

    const std::string path = scratch_dir() + "/rot.xyz";
    spit(path, write_xyz({a, b, c}));
    const auto r = run("distmat " + path);
    REQUIRE(r.exit_code == 0);

    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    const auto row0 = split_csv(lines[1]);
    REQUIRE(row0.size() == 4);
    const double d_rot = std::stod(row0[2]);
    const double scale = std::stod(row0[3]);
    CHECK(std::stod(row0[1]) == 0.0);
    CHECK(scale > 1e-3);
    CHECK(d_rot <= 1e-6 * scale);

    // symmetry of the emitted matrix
    const auto row1 = split_csv(lines[2]);
    CHECK(row1[1] == row0[2]);
}

TEST_CASE("corrupt input exits 2 and reports the line") {
    const std::string path = scratch_dir() + "/bad.xyz";
    spit(path, "2\n\nO 0 0 0\nH 1 0 oops\n");
    const auto r = run("frame " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 4") != std::string::npos);

    spit(path, "{not json");
    const auto r2 = run("quadrature --config " + path);
    CHECK(r2.exit_code == 2);
}

TEST_CASE("domain errors exit 3") {
    const std::string path = scratch_dir() + "/lone.xyz";
    spit(path, "1\n\nO 0 0 0\n");
    // a single atom at the center has no neighbors
    const auto r = run("frame " + path + " --center atoms");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("neighborhood") != std::string::npos);
}

TEST_CASE("frame reports row-major matrices with diagnostics") {
    const std::string path = scratch_dir() + "/dimer.xyz";
    spit(path, "2\n\nN 0 0 0\nN 1.1 0 0\n");
    const auto r = run("frame " + path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("objective=") != std::string::npos);
    CHECK(r.out.find("iterations=") != std::string::npos);
    bool found_frame = false;
    for (const auto& line : lines_of(r.out)) {
        if (line.rfind("frame ", 0) != 0) continue;
        found_frame = true;
        std::istringstream ss(line.substr(line.find(':') + 1));
        double v;
        int count = 0;
        std::string tok;
        while (ss >> tok)
            if (sscanf(tok.c_str(), "%lf", &v) == 1 &&
                tok.find('=') == std::string::npos)
                ++count;
        CHECK(count == 9);
    }
    CHECK(found_frame);
}

TEST_CASE("fingerprint binary container round trips through the CLI") {
    const std::string base = scratch_dir();
    spit(base + "/w.xyz", "3\n\nO 0 0 0\nH 0.95 0 0.2\nH -0.3 0.9 0.1\n");
    const auto r = run("fingerprint " + base + "/w.xyz --format bin -o " +
                       base + "/fp.bin");
    REQUIRE(r.exit_code == 0);
    const std::string blob = slurp(base + "/fp.bin");
    CHECK(blob.compare(0, 8, "DECAFFPR") == 0);

    // csv output of the same input has the same number of rows as prints
    const auto csv = run("fingerprint " + base + "/w.xyz");
    REQUIRE(csv.exit_code == 0);
    CHECK(lines_of(csv.out).size() >= 2);
}

TEST_CASE("active learning against the analytic morse oracle") {
    // pool of homonuclear dimers across the well; energies span the curve
    std::ostringstream pool;
    for (int i = 0; i <= 40; ++i) {
        const double r = 2.0 + 3.5 * i / 40.0;
        pool << "2\n\nN 0 0 0\nN " << r << " 0 0\n";
    }
    const std::string base = scratch_dir();
    spit(base + "/pool.xyz", pool.str());

    const auto r = run("active-learn " + base +
                       "/pool.xyz --oracle morse:1.0,1.5,3.0 --seeds 0 40 "
                       "--model-output " + base + "/m.bin -o " + base +
                       "/trace.csv");
    REQUIRE(r.exit_code == 0);

    const auto trace = lines_of(slurp(base + "/trace.csv"));
    REQUIRE(trace.size() >= 2);
    CHECK(trace[0] == "iteration,acquired,max_uncertainty");
    const auto last = split_csv(trace.back());
    REQUIRE(last.size() == 3);
    CHECK(std::stod(last[2]) < 0.1);  // met the stop criterion

    // the saved model predicts the pool close to the oracle
    const auto pred = run("predict " + base + "/pool.xyz --model " + base +
                          "/m.bin");
    REQUIRE(pred.exit_code == 0);
    const MorseOracle oracle{1.0, 1.5, 3.0};
    const auto rows = lines_of(pred.out);
    REQUIRE(rows.size() == 1 + 41);
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double sep = 2.0 + 3.5 * i / 40.0;
        const auto f = split_csv(rows[1 + i]);
        worst = std::max(worst,
                         std::abs(std::stod(f[1]) - oracle.pair_energy(sep)));
    }
    CHECK(worst < 0.2);  // well depth is 1; the stop threshold was 0.1
}

TEST_CASE("fit and predict round trip on labeled data") {
    std::ostringstream train;
    const MorseOracle oracle{1.0, 1.5, 3.0};
    for (int i = 0; i < 12; ++i) {
        const double r = 2.2 + 2.8 * i / 11.0;
        train << "2\nenergy=" << oracle.pair_energy(r) << "\nN 0 0 0\nN " << r
              << " 0 0\n";
    }
    const std::string base = scratch_dir();
    spit(base + "/train.xyz", train.str());

    const auto fit =
        run("fit " + base + "/train.xyz -o " + base + "/model.bin");
    REQUIRE(fit.exit_code == 0);
    const auto pred = run("predict " + base + "/train.xyz --model " + base +
                          "/model.bin");
    REQUIRE(pred.exit_code == 0);
    const auto rows = lines_of(pred.out);
    REQUIRE(rows.size() == 13);
    for (int i = 0; i < 12; ++i) {
        const double r = 2.2 + 2.8 * i / 11.0;
        const auto f = split_csv(rows[1 + i]);
        CHECK(std::stod(f[1]) ==
              doctest::Approx(oracle.pair_energy(r)).epsilon(1e-2));
    }

    // predicting against a different grid fails with a domain error
    spit(base + "/grid.json",
         R"({"grid": {"radial_order": 2, "angular_per_layer": [6, 14]}})");
    const auto bad = run("predict " + base + "/train.xyz --model " + base +
                         "/model.bin --config " + base + "/grid.json");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("graphspec emits one ascending spectrum per structure") {
    const std::string base = scratch_dir();
    spit(base + "/two.xyz",
         "3\n\nO 0 0 0\nH 0.95 0 0.2\nH -0.3 0.9 0.1\n"
         "2\n\nN 0 0 0\nN 1.1 0 0\n");
    const auto r = run("graphspec " + base + "/two.xyz --count 6");
    REQUIRE(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 3);
    for (int row = 1; row <= 2; ++row) {
        const auto f = split_csv(rows[row]);
        REQUIRE(f.size() == 2 + 6);
        double prev = -1e-9;
        for (int i = 2; i < 8; ++i) {
            const double ev = std::stod(f[i]);
            CHECK(ev >= prev - 1e-12);
            CHECK(ev <= 2.0 + 1e-10);
            prev = ev;
        }
    }
}

TEST_CASE("runs are deterministic given input, config, and seed") {
    const std::string base = scratch_dir();
    spit(base + "/d.xyz", "3\n\nO 0 0 0\nH 0.95 0 0.2\nH -0.3 0.9 0.1\n");
    const auto a = run("fingerprint " + base + "/d.xyz --seed 7");
    const auto b = run("fingerprint " + base + "/d.xyz --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
