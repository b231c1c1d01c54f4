#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string workdir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/confocal_cli_XXXXXX";
        REQUIRE(mkdtemp(tmpl) != nullptr);
        return std::string(tmpl);
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(CONFOCAL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

size_t count_occurrences(const std::string& text, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("generate writes the expected number of net points") {
    const std::string out = workdir() + "/net.json";
    CHECK(run("generate --alphas 5 1 --window=-5:-1,-1:6 --both-parities -o " + out) == 0);
    const std::string doc = slurp(out);
    // 40 integer + 28 half-integer lattice points
    CHECK(count_occurrences(doc, "\"m2\"") == 68);
}

TEST_CASE("verify exits 0 on a sound configuration") {
    CHECK(run("verify --alphas 5 1 --window=-5:-1,-1:6 --both-parities -q") == 0);
    CHECK(run("verify --alphas 8 4 1 --window=-8:-4,-4:-1,-1:8 --both-parities -q") == 0);
}

TEST_CASE("verify exits 0 for a stored net and 1 after tampering") {
    const std::string out = workdir() + "/net_check.json";
    REQUIRE(run("generate --alphas 5 1 --window=-5:-1,-1:6 -o " + out) == 0);
    CHECK(run("verify --input " + out + " -q") == 0);

    // flip one digit of a coordinate value
    std::string doc = slurp(out);
    const size_t pos = doc.find("2.138089935299395");
    REQUIRE(pos != std::string::npos);
    doc[pos + 5] = doc[pos + 5] == '8' ? '7' : '8';
    std::ofstream(out) << doc;
    CHECK(run("verify --input " + out + " -q") == 1);
}

TEST_CASE("verify handles the continuous system") {
    CHECK(run("verify --continuous --a 2 1 --grid 8x8 -q") == 0);
    CHECK(run("verify --continuous --a 3 2 1 --grid 4x4x4 -q") == 0);
}

TEST_CASE("export produces OBJ and JSON meshes") {
    const std::string obj = workdir() + "/layer.obj";
    CHECK(run("export --alphas 8 4 1 --axis 0 --level=-12 --window=-4:-1,-1:8 --format obj -o " +
              obj) == 0);
    const std::string text = slurp(obj);
    CHECK(text.rfind("v ", 0) == 0);
    CHECK(count_occurrences(text, "\nf ") == 27);

    const std::string js = workdir() + "/layer.json";
    CHECK(run("export --alphas 8 4 1 --axis 0 --level=-12 --window=-4:-1,-1:8 --reflect "
              "--format json -o " + js) == 0);
    CHECK(slurp(js).find("\"vertices\"") != std::string::npos);

    const std::string focal = workdir() + "/focal.json";
    CHECK(run("export --alphas 8 4 1 --focal hyperbola --focal-range 0:8 -o " + focal) == 0);
    CHECK(slurp(focal).find("focal_hyperbola") != std::string::npos);
}

TEST_CASE("icnet verify and solve round trip") {
    CHECK(run("icnet --builtin rhombic --grid 8 --cols 8 --verify -q") == 0);
    CHECK(run("icnet --builtin rhombic --perturb 1e-3 --rng-seed 5 --verify -q") == 1);
    const std::string solved = workdir() + "/solved.json";
    CHECK(run("icnet --builtin rhombic --grid 6 --cols 6 --perturb 1e-3 --rng-seed 5 "
              "--solve --max-iter 200 -o " + solved + " -q") == 0);
    CHECK(run("icnet --input " + solved + " --verify --tol pitot=1e-8 -q") == 0);
}

TEST_CASE("usage and IO error codes") {
    CHECK(run("generate --alphas 5 1") == 2);              // missing --window
    CHECK(run("frobnicate") == 2);                         // unknown subcommand
    CHECK(run("verify --input /nonexistent/net.json") == 3);
    CHECK(run("generate --alphas 5 1 --window=-5:-1 -o /dev/null") == 2);  // dim mismatch
}
