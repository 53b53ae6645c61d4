#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "regioncert/network_io.hpp"
#include "regioncert/synthesis.hpp"

namespace fs = std::filesystem;
using namespace regioncert;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    Scratch() {
        static int counter = 0;
        dir = fs::temp_directory_path() / ("regioncert_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = haystack.find(needle); p != std::string::npos; p = haystack.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({"check"}).code == cli::kExitUsage);
    CHECK(run({"check", "/nonexistent/net.json"}).code == cli::kExitUsage);
    CHECK(run({"lemma", "--which", "rect"}).code == cli::kExitUsage);
}

TEST_CASE("check") {
    Scratch s;
    const std::string good = s.file("leaky.json");
    REQUIRE(run({"synth", "--theorem", "surjective-bijective", "--widths", "3,3,2", "--out", good}).code == 0);
    const Run ok = run({"check", good});
    CHECK(ok.code == cli::kExitOk);
    CHECK(count(ok.out, " certified ") + count(ok.out, " certified\n") == 1);

    const std::string cx = s.file("abs.json");
    REQUIRE(run({"synth", "--counterexample", "relu-absolute", "--out", cx}).code == 0);
    CHECK(run({"check", cx}).code == cli::kExitNegative);

    const std::string text = slurp(cx);
    const std::string cut = s.file("truncated.json");
    std::ofstream(cut) << text.substr(0, text.size() / 2);
    const Run bad = run({"check", cut});
    CHECK(bad.code == cli::kExitUsage);
    CHECK(bad.err.find("line") != std::string::npos);

    const std::string report = s.file("report.json");
    const Run js = run({"check", good, "--format", "json", "--out", report});
    CHECK(js.code == 0);
    CHECK(slurp(report) == js.out);
    CHECK(js.out.find("\"certified\": true") != std::string::npos);

    CHECK(run({"check", good, "--split", "sideways"}).code == cli::kExitUsage);
    CHECK(run({"check", good, "--split", "exhaustive", "--budget", "5"}).code == cli::kExitOk);
}

TEST_CASE("scan") {
    Scratch s;
    const std::string cx = s.file("abs.json");
    REQUIRE(run({"synth", "--counterexample", "relu-absolute", "--out", cx}).code == 0);
    const std::string img = s.file("abs.pgm");
    const std::string summary = s.file("abs_summary.json");
    const Run r = run({"scan", cx, "--box", "-3:3", "--res", "1024", "--out", img, "--summary", summary});
    CHECK(r.code == 0);
    CHECK(r.out.find("class 1: 2 components") != std::string::npos);
    CHECK(slurp(img).rfind("P5\n1024 16\n255\n", 0) == 0);
    CHECK(slurp(summary).find("\"components\": 2") != std::string::npos);

    CHECK(run({"scan", cx, "--box", "-3:3", "--res", "1"}).code == cli::kExitUsage);
    CHECK(run({"scan", cx, "--box", "-3:3", "--box", "0:1"}).code == cli::kExitUsage);
    CHECK(run({"scan", cx, "--box", "3:-3"}).code == cli::kExitUsage);

    const Run os = run({"scan", cx, "--box", "-3:3", "--res", "256", "--output-space"});
    CHECK(os.out.find("class 1 output-space estimate: 1") != std::string::npos);

    // affine 2-D net: one component per class
    const std::string aff = s.file("affine.json");
    std::ofstream(aff) << serialize_network(Network(2, {Layer{Matrix{{1, -1}, {0, 0}}, {0.1, 0}, std::nullopt}}));
    const std::string svg = s.file("affine.svg");
    const Run a = run({"scan", aff, "--box", "-2:2", "--res", "64", "--out", svg});
    CHECK(a.code == 0);
    CHECK(count(a.out, ": 1 component ") == 2);
    CHECK(slurp(svg).find("<svg") != std::string::npos);

    // 4-D input needs a slice
    const std::string four = s.file("four.json");
    Rng rng(3);
    std::ofstream(four) << serialize_network(gen_random({4, 3, 2}, Activation::tanh(), rng));
    CHECK(run({"scan", four, "--box", "-1:1", "--res", "16"}).code == cli::kExitUsage);
    CHECK(run({"scan", four, "--box", "-1:1", "--res", "16", "--slice", "0,0,0,0", "--dir", "1,0,0,0", "--dir", "0,0,1,0"}).code ==
          cli::kExitOk);
}

TEST_CASE("path") {
    Scratch s;
    const std::string cx = s.file("abs.json");
    REQUIRE(run({"synth", "--counterexample", "relu-absolute", "--out", cx}).code == 0);
    const Run same = run({"path", cx, "--from", "2", "--to", "2", "--box", "-3:3", "--res", "256"});
    CHECK(same.code == 0);
    CHECK(count(same.out, "\n") == 1);

    const Run dis = run({"path", cx, "--from", "-2", "--to", "2", "--box", "-3:3", "--res", "1024"});
    CHECK(dis.code == cli::kExitNegative);
    CHECK(dis.out == "disconnected\n");

    CHECK(run({"path", cx, "--from", "-2", "--to", "0", "--box", "-3:3"}).out == "different classes\n");
    CHECK(run({"path", cx, "--from", "-5", "--to", "2", "--box", "-3:3"}).code == cli::kExitUsage);

    const std::string cert = s.file("deep.json");
    REQUIRE(run({"synth", "--theorem", "relu-deep", "--widths", "2,2,2", "--seed", "4", "--out", cert}).code == 0);
    const Network net = load_network(cert);
    Rng rng(5);
    int found = 0;
    for (int i = 0; i < 20 && found < 3; ++i) {
        const Vector a{rng.uniform(-3, 3), rng.uniform(-3, 3)}, b{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        if (classify(net, a) != classify(net, b) || !classify(net, a)) continue;
        auto fmt = [](const Vector& v) { return std::to_string(v[0]) + "," + std::to_string(v[1]); };
        const Run p = run({"path", cert, "--from", fmt(a), "--to", fmt(b), "--box", "-4:4", "--res", "128"});
        if (p.out.find("boundary") != std::string::npos) continue;
        CHECK(p.code == cli::kExitOk);
        ++found;
    }
    CHECK(found > 0);
}

TEST_CASE("synth") {
    Scratch s;
    const std::string f = s.file("deep.json");
    CHECK(run({"synth", "--theorem", "relu-deep", "--widths", "4,3,2", "--out", f}).code == 0);
    CHECK(run({"check", f}).code == cli::kExitOk);

    const Run bad = run({"synth", "--theorem", "surjective-bijective", "--widths", "2,3,2"});
    CHECK(bad.code == cli::kExitUsage);
    CHECK(bad.err.find("pyramidal") != std::string::npos);

    const Run a = run({"synth", "--theorem", "bounded", "--widths", "3,2,2", "--seed", "9"});
    const Run b = run({"synth", "--theorem", "bounded", "--widths", "3,2,2", "--seed", "9"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("sigmoid") != std::string::npos);

    CHECK(run({"synth", "--theorem", "no-such"}).code == cli::kExitUsage);
    CHECK(run({"synth", "--theorem", "bounded"}).code == cli::kExitUsage);
    CHECK(run({"synth", "--theorem", "bounded", "--widths", "3,2,2", "--activation", "relu"}).code ==
          cli::kExitUsage);
    CHECK(run({"synth"}).code == cli::kExitUsage);
}

TEST_CASE("fuzz and lemma") {
    Scratch s;
    const std::string report = s.file("fuzz.json");
    const Run f = run({"fuzz", "--trials", "12", "--seed", "7", "--res", "32", "--out", report});
    CHECK(f.code == 0);
    CHECK(f.out.find("violations: 0") != std::string::npos);
    CHECK(slurp(report).find("\"violations\"") != std::string::npos);
    CHECK(run({"fuzz", "--trials", "0"}).code == cli::kExitUsage);

    const Run l = run({"lemma", "--which", "relu-segment", "--trials", "1000"});
    CHECK(l.code == 0);
    CHECK(run({"lemma", "--which", "rect-halfopen", "--trials", "1000"}).code == 0);
}
