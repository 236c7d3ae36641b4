#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("twistcoh_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args, const std::string& env = "") {
    fs::path out = scratch() / "stdout", err = scratch() / "stderr";
    std::string cmd = env + (env.empty() ? "" : " ") + "'" TWISTCOH_BIN "' " + args + " > '" + out.string() + "' 2> '" +
                      err.string() + "'";
    int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

json run_json(const std::string& args) {
    Run r = run(args);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("mn on the hopf surface at weight 1 vanishes") {
    json j = run_json("mn --model hopf_surface --alpha 1");
    CHECK(j["results"][0]["dims"] == json::array({0, 0, 0, 0, 0}));
    CHECK(j["config"]["grid"] == json::array({"1"}));
    CHECK(j["model_digest"].get<std::string>().size() == 16);
}

TEST_CASE("mn on the torus") {
    json j = run_json("mn --model torus2 --alpha 0");
    CHECK(j["results"][0]["dims"] == json::array({1, 4, 6, 4, 1}));
}

TEST_CASE("hopf command at a non-monoid weight") {
    json j = run_json("hopf --beta 1/2,1/3 --alpha 1/5");
    const json& r = j["results"][0];
    CHECK(r["all_zero"] == true);
    CHECK(r["monoid_member"] == false);
    CHECK(r["dims"] == json::array({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
}

TEST_CASE("grid ranges are exact") {
    json j = run_json("mn --model hopf_surface --alpha 0:1:1/3");
    CHECK(j["config"]["grid"] == json::array({"0", "1/3", "2/3", "1"}));
    CHECK(j["results"].size() == 4);
    CHECK(j["results"][0]["dims"] == json::array({1, 1, 0, 1, 1}));
    CHECK(run("mn --alpha 0:1:0").code == 2);
    CHECK(run("mn --alpha 1/0").code == 2);
}

TEST_CASE("every command succeeds on defaults") {
    for (const char* cmd : {"mn", "dolbeault", "bc", "frolicher", "spectrum", "hopf", "jets"}) {
        CAPTURE(cmd);
        Run r = run(cmd);
        CHECK(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j.contains("config"));
        CHECK(j.contains("model_digest"));
        CHECK(j["results"].is_array());
        CHECK(j["config"]["command"] == cmd);
    }
}

TEST_CASE("bc reports dd^c verdicts") {
    json j = run_json("bc --model hopf_surface --alpha 0 --pq 1,1");
    const json& r = j["results"][0];
    CHECK(r.dump().find("\"bc_dim\":1") != std::string::npos);
    Run csv = run("bc --model hopf_surface --alpha 0 --pq 1,1 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out == "alpha,p,q,bc_dim,ddc_holds,ddc_left,ddc_right\n0,1,1,1,false,1,0\n");
}

TEST_CASE("csv has one row per weight and bidegree") {
    Run r = run("dolbeault --model torus2 --alpha 0,1 --format csv");
    REQUIRE(r.code == 0);
    std::size_t lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 1 + 2 * 9);
    CHECK(r.out.rfind("alpha,p,q,dim\n", 0) == 0);
}

TEST_CASE("jets solve and singular weights") {
    json j = run_json("jets --subst 'X1/2; X2/3' --rhs X1*X2 --alpha 1/5,1/6 --jet-degree 8");
    const json& solves = j["results"][0]["solves"];
    CHECK(solves[0]["solution"] == "-30*X1*X2");
    CHECK(solves[0]["residual_zero"] == true);
    CHECK(solves[1]["status"] == "singular");
    CHECK(solves[1]["witness"] == json::array({1, 1}));
    CHECK(solves[1]["singular_degree"] == 2);
}

TEST_CASE("output file and determinism") {
    fs::path out = scratch() / "report.json";
    Run a = run("spectrum --model hopf_surface --out '" + out.string() + "'");
    CHECK(a.code == 0);
    std::string first = slurp(out);
    CHECK_FALSE(first.empty());
    Run b = run("spectrum --model hopf_surface");
    CHECK(b.out == first);
    CHECK(run("spectrum --model hopf_surface").out == b.out);
}

TEST_CASE("thread count does not change output") {
    const std::string args = "dolbeault --model inoue_sm --alpha -2:2:1/2";
    Run one = run(args, "TWISTCOH_THREADS=1");
    Run many = run(args, "TWISTCOH_THREADS=8");
    CHECK(one.code == 0);
    CHECK(one.out == many.out);
    Run hopf1 = run("hopf --alpha 1/50:1:1/50", "TWISTCOH_THREADS=1");
    Run hopf4 = run("hopf --alpha 1/50:1:1/50", "TWISTCOH_THREADS=4");
    CHECK(hopf1.out == hopf4.out);
}

TEST_CASE("model files") {
    fs::path good = write_file("torus.model",
                               "name: t\ndim: 2\nJ:\n0 -1\n1 0\ntheta: 0 0\n");
    json j = run_json("mn --model '" + good.string() + "' --alpha 0");
    CHECK(j["results"][0]["dims"] == json::array({1, 2, 1}));

    fs::path bad = write_file("bad.model", "name: t\ndim: 2\nJ:\n0 -1\n1 0\ntheta: 0 1/0\n");
    Run r = run("mn --model '" + bad.string() + "'");
    CHECK(r.code == 3);
    json e = json::parse(r.err);
    CHECK(e["error"]["kind"] == "parse");
    CHECK(e["error"]["message"].get<std::string>().find("line 6") != std::string::npos);

    // d^2 != 0: de1 = e2^e3, de2 = e1^e3 with a 4-dim coframe.
    fs::path invalid = write_file("invalid.model",
                                  "name: bad\ndim: 6\n"
                                  "d: 1 <- 1 * 4 ^ 5\nd: 2 <- 1 * 1 ^ 3\n"
                                  "J:\n0 -1 0 0 0 0\n1 0 0 0 0 0\n0 0 0 -1 0 0\n0 0 1 0 0 0\n0 0 0 0 0 -1\n0 0 0 0 1 0\n"
                                  "theta: 0 0 0 0 0 0\n");
    Run v = run("mn --model '" + invalid.string() + "'");
    CHECK(v.code == 4);
    CHECK(json::parse(v.err)["error"]["message"].get<std::string>().find("d^2=0") != std::string::npos);
}

TEST_CASE("error exit codes are distinct") {
    CHECK(run("frob").code == 2);
    CHECK(run("mn --format xml").code == 2);
    CHECK(run("mn --model nope").code == 2);
    CHECK(run("mn --bogus-flag").code == 2);
    Run unsupported = run("jets --subst '-X2; X1'");
    CHECK(unsupported.code == 5);
    CHECK(json::parse(unsupported.err)["error"]["kind"] == "unsupported");
    // Malformed flag values are configuration errors naming the flag.
    for (const char* args : {"jets --subst 'X1; X1'", "hopf --beta 1/2,2", "jets --subst 'X1 +'"}) {
        CAPTURE(args);
        Run r = run(args);
        CHECK(r.code == 2);
        CHECK(json::parse(r.err)["error"]["message"].get<std::string>().rfind("--", 0) == 0);
    }
}

TEST_CASE("theta override") {
    json j = run_json("spectrum --model torus2 --theta 1,0,0,0");
    CHECK(j["results"][0]["rational_roots"] == json::array({"0"}));
    CHECK(j["config"]["theta"] == "1,0,0,0");
}
