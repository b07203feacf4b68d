#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SDR_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// One number per line, each within 1e-14 relative of the expected value.
bool close_to(const std::string& text, std::vector<double> expect) {
    std::istringstream in(text);
    std::vector<double> got;
    for (double v; in >> v;) got.push_back(v);
    if (got.size() != expect.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (std::abs(got[i] - expect[i]) > 1e-14 * std::abs(expect[i])) return false;
    return true;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("sdr_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
    std::string read(const std::string& name) const {
        std::ifstream in(path / name, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }
};

}  // namespace

TEST_CASE("estimate") {
    TempDir tmp;
    const std::string data = tmp.write("x.csv", "# five points\n0\n1\n2\n3\n100\n");
    Run r = run("estimate --input " + data + " --eps-star 0.2 --delta 0.1");
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    r = run("estimate --input " + data + " --eps-star 0.2 --delta 0.1 --trace");
    CHECK(r.code == 0);
    CHECK(r.out.find("schedule=1\n") != std::string::npos);
    CHECK(r.out.find("threshold=") != std::string::npos);
    CHECK(r.out.find("level.0.filtered=false") != std::string::npos);

    const std::string cfg = tmp.write("est.ini", "[estimate]\neps-star=0.2\ndelta=0.1\nlast-level=filtered-mean\n");
    r = run("estimate --config " + cfg + " --input " + data);
    CHECK(r.code == 0);
    CHECK(r.out == "1.5\n");

    const std::string pts = tmp.write("p.csv", "1,2\n1,2\n1,2\n");
    const std::string sig = tmp.write("s.csv", "2 0.5\n0.5 1\n");
    r = run("estimate --input " + pts + " --sigma " + sig + " --eps-star 0.1 --delta 0.1");
    CHECK(r.code == 0);
    CHECK(close_to(r.out, {1.0, 2.0}));
    r = run("estimate --input " + pts + " --sigma-approx " + sig + " --gamma 0.3 --eps-star 0.1 --delta 0.1");
    CHECK(r.code == 0);
    CHECK(close_to(r.out, {1.0, 2.0}));
}

TEST_CASE("estimate exit codes") {
    TempDir tmp;
    const std::string data = tmp.write("x.csv", "0 1\n1 0\n2 2\n");
    CHECK(run("estimate --input " + data + " --delta 0.1").code == 2);                       // missing eps-star
    CHECK(run("estimate --input " + data + " --eps-star 0.6 --delta 0.1").code == 2);        // out of range
    CHECK(run("estimate --input " + data + " --sigma-approx a --eps-star 0.1 --delta 0.1").code == 2);  // no gamma
    CHECK(run("estimate --input /nonexistent/x --eps-star 0.1 --delta 0.1").code == 3);
    const std::string ragged = tmp.write("r.csv", "1 2\n3\n");
    CHECK(run("estimate --input " + ragged + " --eps-star 0.1 --delta 0.1").code == 3);
    const std::string bad = tmp.write("b.csv", "1 2\nx 3\n");
    CHECK(run("estimate --input " + bad + " --eps-star 0.1 --delta 0.1").code == 3);
    const std::string zero = tmp.write("z.csv", "0 0\n0 0\n");
    CHECK(run("estimate --input " + data + " --sigma " + zero + " --eps-star 0.1 --delta 0.1").code == 3);
    CHECK(run("estimate --input " + data + " --eps-star 0.1 --delta 0.1 --threshold 1e-9").code == 4);
    CHECK(run("nonsense").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("schedule") {
    Run r = run("schedule --p 60");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("schedule=60 23 9 4 2 1\nlevels=5\ncost=", 0) == 0);
    r = run("schedule --p 60 --n 1000 --delta 0.1 --eps-star 0.1");
    CHECK(r.code == 0);
    CHECK(r.out.find("t=8.01563616957") != std::string::npos);
    CHECK(run("schedule --p 60 --n 1000").code == 2);
    CHECK(run("schedule --p 0").code == 2);
}

TEST_CASE("bench") {
    TempDir tmp;
    const std::string out1 = (tmp.path / "a.csv").string();
    const std::string out2 = (tmp.path / "b.csv").string();
    const std::string common = " --scheme gmc --n 80 --p 4,6 --eps 0,0.2 --trials 3 --seed 5 --no-timing";
    Run r = run("bench" + common + " --out " + out1 + " --plots " + (tmp.path / "plots").string() + " --summary " +
                (tmp.path / "s.csv").string());
    CHECK(r.code == 0);
    CHECK(r.out.rfind("scheme,n,p,eps,estimator,trials,failures,", 0) == 0);
    CHECK(fs::exists(tmp.path / "plots" / "error_vs_p.svg"));
    CHECK(fs::exists(tmp.path / "plots" / "error_vs_eps.svg"));
    CHECK_FALSE(fs::exists(tmp.path / "plots" / "runtime_vs_p.svg"));
    CHECK(tmp.read("s.csv") == r.out);

    const std::string a = tmp.read("a.csv");
    CHECK(a.rfind("scheme,n,p,eps,trial,seed,estimator,l2_error,runtime_ms\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : a) lines += c == '\n';
    CHECK(lines == 1 + 2 * 2 * 3 * 4);

    const std::string cfg = tmp.write("bench.ini", "[bench]\nscheme=gmc\nn=80\np=4,6\neps=0,0.2\ntrials=3\nseed=5\n");
    r = run("bench --config " + cfg + " --no-timing --workers 2 --out " + out2);
    CHECK(r.code == 0);
    CHECK(tmp.read("b.csv") == a);

    CHECK(run("bench --scheme xyz --n 80 --p 4 --eps 0 --out " + out2).code == 2);
    CHECK(run("bench --scheme gmc --n 80 --p 4 --eps 0.7 --out " + out2).code == 2);
    CHECK(run("bench --scheme gmc --n 80 --p 4 --eps 0 --estimators sdr,zz --out " + out2).code == 2);
    CHECK(run("bench --scheme gmc --n 80 --p 4 --eps 0 --trials 1 --out /nonexistent/dir/o.csv").code == 3);
}
