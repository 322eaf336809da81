#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using std::string;

namespace {

struct CliRun {
    int exit_code = -1;
    string out;
};

string slurp(const string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// run the installed binary; capture stdout
CliRun run_cli(const string& args) {
    static int counter = 0;
    const string out_path = "cli_stdout_" + std::to_string(counter++) + ".txt";
    const string cmd = string(SUPERINT_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = (rc == -1) ? -1 : WEXITSTATUS(rc);
    r.out = slurp(out_path);
    std::remove(out_path.c_str());
    return r;
}

bool contains(const string& hay, const string& needle) { return hay.find(needle) != string::npos; }

}  // namespace

TEST_CASE("list prints the catalog with parameters and integrals") {
    const CliRun r = run_cli("list");
    CHECK(r.exit_code == 0);
    for (const char* id : {"def_a", "def_b", "def_c", "def_d", "ttw_def", "pw_def"})
        CHECK(contains(r.out, id));
    // ttw row carries its parameter names; pw row its integral names
    std::istringstream lines(r.out);
    string line, ttw_line, pw_line;
    while (std::getline(lines, line)) {
        if (line.rfind("ttw_def", 0) == 0) ttw_line = line;
        if (line.rfind("pw_def", 0) == 0) pw_line = line;
    }
    for (const char* p : {"alpha", "ka", "kb", "m", "kappa"}) CHECK(contains(ttw_line, p));
    for (const char* j : {"J1", "J2", "ReK", "ImK"}) CHECK(contains(pw_line, j));
}

TEST_CASE("certify def_c passes and returns exit code 0") {
    const CliRun r = run_cli("certify --system def_c --kappa 0.4 --n 200 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "\"pass\":true"));
}

TEST_CASE("certify accepts rational m") {
    const CliRun r = run_cli("certify --system ttw_def --m 5/2 --kappa 0.2 --n 100 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "\"pass\":true"));
}

TEST_CASE("insane kappa is a config error (exit 2)") {
    const CliRun r = run_cli("certify --system def_a --kappa -1e300");
    CHECK(r.exit_code == 2);
}

TEST_CASE("simulate: row count and domain checks") {
    const CliRun ok = run_cli(
        "simulate --system euclid_a --param k2=0 --param k3=0 --x0 1,0,0,1 "
        "--t-end 6.0 --sample-dt 0.5 --out sim_ok.csv");
    CHECK(ok.exit_code == 0);
    const string csv = slurp("sim_ok.csv");
    size_t rows = 0;
    for (char c : csv) rows += c == '\n';
    CHECK(rows == 14);  // header + floor(6/0.5)+1 = 13 samples
    std::remove("sim_ok.csv");

    const CliRun bad = run_cli("simulate --system def_c --kappa 0.5 --x0 0.2,0.2,0,0 --t-end 1");
    CHECK(bad.exit_code == 2);

    // radial plunge exits the domain: truncated output, exit 3
    const CliRun plunge = run_cli(
        "simulate --system curved_kepler_k2 --kappa 0.3 --x0 1,0,-0.5,0 --t-end 10 "
        "--sample-dt 0.01 --out sim_plunge.csv");
    CHECK(plunge.exit_code == 3);
    CHECK(!slurp("sim_plunge.csv").empty());
    std::remove("sim_plunge.csv");
}

TEST_CASE("potential profile values and clipping") {
    const CliRun flat = run_cli("potential-profile --kappa 0 --x-min 0 --x-max 2 --profile-n 3");
    CHECK(flat.exit_code == 0);
    CHECK(contains(flat.out, "\n2,2"));  // V(2) = 2 at alpha = 1, kappa = 0

    const CliRun curved =
        run_cli("potential-profile --kappa 0.25 --x-min 0 --x-max 1 --profile-n 2");
    CHECK(curved.exit_code == 0);
    // V(1) = 0.5/0.75 = 2/3
    CHECK(contains(curved.out, "0.66666666666666"));

    // kappa > 0 clips the range to |x| < 1/sqrt(kappa) = 2
    const CliRun clipped =
        run_cli("potential-profile --kappa 0.25 --x-min -5 --x-max 5 --profile-n 3");
    CHECK(clipped.exit_code == 0);
    CHECK(!contains(clipped.out, "\n5,"));
    CHECK(contains(clipped.out, "0,0"));  // the midpoint of the clipped range

    // kappa < 0: V is bounded above by 1/(2|kappa|) = 0.5 far out
    const CliRun hyper =
        run_cli("potential-profile --kappa -1 --x-min 0 --x-max 50 --profile-n 2");
    CHECK(hyper.exit_code == 0);
    std::istringstream lines(hyper.out);
    string header, row;
    std::getline(lines, header);
    std::getline(lines, row);  // x = 0 row
    std::getline(lines, row);  // x = 50 row
    const double v = std::stod(row.substr(row.find(',') + 1));
    CHECK(v < 0.5);
    CHECK(v > 0.49);
}

TEST_CASE("kappa sweep: kappa-free integrals give identically zero rows") {
    const CliRun a = run_cli("kappa-sweep --system def_a --seed 5 --n 50");
    CHECK(a.exit_code == 0);
    std::istringstream lines(a.out);
    string header;
    std::getline(lines, header);
    CHECK(header == "kappa,Ja1,Ja2,Ja3");
    string row;
    while (std::getline(lines, row)) {
        const auto last = row.rfind(',');
        CHECK(std::stod(row.substr(last + 1)) == 0.0);  // Ja3 column
    }

    const CliRun c = run_cli("kappa-sweep --system def_c --seed 5 --n 50");
    CHECK(c.exit_code == 0);
    std::istringstream clines(c.out);
    std::getline(clines, header);
    CHECK(header == "kappa,H,Jc2,Jc3,Jc3a,Jc3b");
    while (std::getline(clines, row)) {
        // Jc2 is the third column
        std::istringstream cells(row);
        string cell;
        std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        CHECK(std::stod(cell) == 0.0);
    }

    const CliRun e = run_cli("kappa-sweep --system euclid_a");
    CHECK(e.exit_code == 2);  // no Euclidean limit
}

TEST_CASE("identical seeds give byte-identical outputs") {
    const string args =
        "simulate --system def_a --kappa 0.2 --x0 0.8,0.6,0.3,-0.4 --t-end 2 --sample-dt 0.1";
    const CliRun r1 = run_cli(args), r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(!r1.out.empty());
    CHECK(r1.out == r2.out);

    const string cargs = "certify --system def_b --kappa 0.2 --n 120 --seed 42";
    const CliRun c1 = run_cli(cargs), c2 = run_cli(cargs);
    CHECK(c1.exit_code == 0);
    CHECK(c1.out == c2.out);
}
