#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nodalcy/cli.hpp>

using namespace nodalcy;

namespace {

struct RunResult {
    int status;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = cli::dispatch(args, out, err);
    return {status, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/nodalcy_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string read() const {
        std::ifstream f(path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
    void write(const std::string& text) const {
        std::ofstream f(path);
        f << text;
    }
};

}  // namespace

TEST_CASE("bott subcommand prints the integer", "[cli]") {
    auto r = run({"bott", "--n", "2", "--p", "1", "--q", "1", "--m", "0"});
    CHECK(r.status == 0);
    CHECK(r.out == "1\n");
    CHECK(run({"bott", "--n", "5", "--p", "0", "--q", "0", "--m", "2"}).out == "21\n");
}

TEST_CASE("unknown command and bad flags give structured errors", "[cli]") {
    auto r = run({"frobnicate"});
    CHECK(r.status == 1);
    CHECK(r.err.find("\"UnknownCommand\"") != std::string::npos);

    auto r2 = run({"bott", "--n", "2"});
    CHECK(r2.status == 1);
    CHECK(r2.err.find("\"error\"") != std::string::npos);

    auto r3 = run({"analyze", "--input", "/nonexistent/file.json"});
    CHECK(r3.status == 1);
    CHECK(r3.err.find("\"error\"") != std::string::npos);
}

TEST_CASE("rq subcommand", "[cli]") {
    CHECK(run({"rq", "--n", "5", "--mul", "eta,eta"}).out == "A - B\n");
    CHECK(run({"rq", "--n", "5", "--mul", "A,A"}).out == "undetermined\n");
    CHECK(run({"rq", "--n", "5", "--mul", "(A+B),eta"}).out == "0\n");
    auto j = run({"rq", "--n", "5", "--mul", "A,eta", "--format", "json"});
    CHECK(j.status == 0);
    auto parsed = json::parse(j.out);
    CHECK(parsed["determined"] == true);
    CHECK(parsed["product"] == "1/2*eta^3");
    CHECK(run({"rq", "--n", "5", "--mul", "eta"}).status == 1);  // missing second expression
}

TEST_CASE("quadric-table formats", "[cli]") {
    auto csv = run({"quadric-table", "--n", "5", "--k", "3", "--jmin", "2", "--jmax", "4", "--format", "csv"});
    CHECK(csv.status == 0);
    CHECK(csv.out.find("3,1,2,1\n") != std::string::npos);
    CHECK(csv.out.find("3,1,4,undetermined\n") != std::string::npos);

    auto md = run({"quadric-table", "--n", "5", "--k", "4", "--jmin", "3", "--jmax", "5", "--format", "markdown"});
    CHECK(md.status == 0);
    CHECK(md.out.find("| q \\ j |") != std::string::npos);

    auto js = run({"quadric-table", "--n", "5", "--k", "3", "--jmin", "2", "--jmax", "2"});
    auto parsed = json::parse(js.out);
    CHECK(parsed["entries"][1]["value"] == 1);

    CHECK(run({"quadric-table", "--n", "4", "--k", "3", "--jmin", "0", "--jmax", "1"}).status == 1);
}

TEST_CASE("schoen, verify-nodes and analyze end to end at n=3", "[cli][slow]") {
    TempFile model_file("m3.json");
    TempFile report_file("r3.json");

    auto gen = run({"schoen", "--dim", "3", "--out", model_file.path});
    REQUIRE(gen.status == 0);
    auto model_json = json::parse(model_file.read());
    CHECK(model_json["nodes"].size() == 125);

    auto verify = run({"verify-nodes", "--input", model_file.path});
    CHECK(verify.status == 0);
    auto verify_json = json::parse(verify.out);
    CHECK(verify_json["all_passed"] == true);
    CHECK(verify_json["checked"] == 125);

    auto analyze = run({"analyze", "--input", model_file.path, "--out", report_file.path});
    REQUIRE(analyze.status == 0);
    auto report = json::parse(report_file.read());
    CHECK(report["smoothing"]["dim_I"] == 101);
    CHECK(report["smoothing"]["span_dimension"] == 24);
    CHECK(report["smoothing"]["smoothable"] == true);
    CHECK(report["smoothing"]["power_map_contained"] == true);
    CHECK(report["smoothing"]["power_map_spans"] == true);

    // byte-stable reports for a fixed seed and config
    auto again = run({"analyze", "--input", model_file.path});
    CHECK(again.status == 0);
    CHECK(again.out == report_file.read() + (report_file.read().back() == '\n' ? "" : "\n"));

    // modular mode agrees on the rank and is flagged partial
    auto modular = run({"analyze", "--input", model_file.path, "--modular-primes", "11,31"});
    REQUIRE(modular.status == 0);
    auto mod_report = json::parse(modular.out);
    CHECK(mod_report["smoothing"]["dim_I"] == 101);
    CHECK(mod_report["smoothing"]["method"] == "modular");
    CHECK(mod_report["smoothing"]["partial"] == true);
    CHECK(mod_report["smoothing"]["smoothable"].is_null());

    // markdown rendering
    auto md = run({"analyze", "--input", model_file.path, "--format", "markdown", "--modular-primes", "11"});
    CHECK(md.status == 0);
    CHECK(md.out.find("| dim I (degree 5) | 101 |") != std::string::npos);
}

TEST_CASE("verify-nodes reports failures with exit 1", "[cli]") {
    TempFile model_file("bad.json");
    // a smooth point listed as a node: f = x0^5 + ... + x4^5 at [1:-1:0:0:0]
    json f{{"num_vars", 5}, {"cyclotomic_order", 1}, {"terms", json::array()}};
    for (int i = 0; i < 5; ++i) {
        json exps = json::array();
        for (int j2 = 0; j2 < 5; ++j2) exps.push_back(j2 == i ? 5 : 0);
        f["terms"].push_back(json{{"exponents", exps}, {"coeff", "1"}});
    }
    json model{{"n", 3},
               {"cyclotomic_order", 1},
               {"f", f},
               {"nodes", json::array({json::array({"1", "-1", "0", "0", "0"})})}};
    model_file.write(model.dump());

    auto r = run({"verify-nodes", "--input", model_file.path});
    CHECK(r.status == 1);
    auto report = json::parse(r.out);
    CHECK(report["all_passed"] == false);
    CHECK(report["records"][0]["on_hypersurface"] == true);
    CHECK(report["records"][0]["critical"] == false);
    CHECK(r.err.find("\"error\"") != std::string::npos);
}

TEST_CASE("analyze exit code 2 on exact-cell budget", "[cli][slow]") {
    TempFile model_file("m3b.json");
    run({"schoen", "--dim", "3", "--out", model_file.path});
    auto r = run({"analyze", "--input", model_file.path, "--exact-cells", "100"});
    CHECK(r.status == 2);
    CHECK(r.err.find("\"OutOfBudget\"") != std::string::npos);

    // span-check budget exhaustion still emits the (partial) report
    auto r2 = run({"analyze", "--input", model_file.path, "--budget", "1"});
    CHECK(r2.status == 2);
    CHECK(r2.err.find("\"OutOfBudget\"") != std::string::npos);
    auto report = json::parse(r2.out);
    CHECK(report["smoothing"]["span_budget_exhausted"] == true);
    CHECK(report["smoothing"]["partial"] == true);
    CHECK(report["smoothing"]["power_map_spans"].is_null());
    CHECK(report["smoothing"]["dim_I"] == 101);
}
