#include "ctxelim/bench.hpp"
#include "ctxelim/cli.hpp"

#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ctxelim;
using namespace ctxelim::testing;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CTXELIM_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("ctxelim_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("eliminate goldens") {
  Run a = run({"eliminate", "--input", data("worked_antecedent.txt"), "--method", "lp"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == "8x - 2z <= 5\n");
  Run c = run({"eliminate", "--input", data("worked_consequent.txt"), "--method", "lp"});
  CHECK(c.out == "19x + 14z <= 45\n");
  Run s = run({"eliminate", "--input", data("split_context.txt")});
  CHECK(s.out == "x <= z\n");
  Run b = run({"eliminate", "--boolean", "--input", data("boolean_example.txt")});
  CHECK(b.out == "(p & s) | r\n");
  Run m = run({"eliminate", "--boolean", "--input", data("boolean_monotone.txt")});
  CHECK(m.out == "(p & s) | r\n");
  Run q = run({"eliminate", "--boolean", "--input", data("boolean_consequent.txt")});
  CHECK(q.out == "s\n");
}

TEST_CASE("kaykobad failure exits 2 and names the atom") {
  Run k = run({"eliminate", "--input", data("worked_antecedent.txt"), "--method", "kaykobad"});
  CHECK(k.code == kExitFailed);
  CHECK(k.out.empty());
  CHECK(k.err.find("cannot transform term") != std::string::npos);
  CHECK(k.err.find("2x + y1 - 2y2 <= 5") != std::string::npos);
  CHECK(k.err.find("kaykobad-selection") != std::string::npos);
}

TEST_CASE("usage and parse errors exit 1") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"eliminate"}).code == kExitUsage);
  CHECK(run({"eliminate", "--input", "/nonexistent/file"}).code == kExitUsage);
  CHECK(run({"eliminate", "--input", data("worked_antecedent.txt"), "--method", "simplex"})
            .code == kExitUsage);
  CHECK(run({"eliminate", "--input", data("worked_antecedent.txt"), "--sample", "x"}).code ==
        kExitUsage);
  std::string bad = temp_file("bad.txt", "eliminate: y\nmode: antecedent\nphi: x + <= 2\n");
  Run r = run({"eliminate", "--input", bad});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"bench", "--vars", "3", "--irrelevant", "4", "--trials", "1"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("sample flag") {
  Run r = run({"eliminate", "--input", data("worked_antecedent.txt"), "--method", "lp",
               "--sample", "x=1/2, z=-3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "8x - 2z <= 5\n");
}

TEST_CASE("compose and quotient") {
  Run c = run({"compose", data("pipeline_m1.txt"), data("pipeline_m2.txt"), "--internal", "o"});
  CHECK(c.code == kExitOk);
  CHECK(c.out ==
        "contract M1_M2\ninputs: i\noutputs: o'\nassumptions:\n  i <= 0\nguarantees:\n"
        "  o' <= 6i + 1\n");
  Run none = run({"compose", data("pipeline_m1.txt"), data("pipeline_m2.txt"), "--internal", ""});
  CHECK(none.code == kExitOk);
  CHECK(none.out.find("  o <= 1\n") != std::string::npos);
  CHECK(none.out.find("  o' <= 3o - 2\n") != std::string::npos);
  Run q = run({"quotient", data("missing_system.txt"), data("missing_m1.txt"), "--inputs", "o",
               "--outputs", "o'", "--name", "M2"});
  CHECK(q.code == kExitOk);
  CHECK(q.out ==
        "contract M2\ninputs: o\noutputs: o'\nassumptions:\n  o <= 3\nguarantees:\n"
        "  o' <= 2o - 3\n");
}

TEST_CASE("json certificates verify, tampered ones do not") {
  for (auto file : {"worked_antecedent.txt", "worked_consequent.txt", "disjunctive.txt",
                    "split_context.txt", "relax_guarantee.txt"}) {
    Run r = run({"eliminate", "--input", data(file), "--json"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "ok");
    VerifyResult v = verify_certificates(r.out);
    CHECK(v.ok);
    CHECK(v.checked > 0);
    std::string path = temp_file("doc.json", r.out);
    Run cli = run({"verify", path});
    CHECK(cli.code == kExitOk);
    CHECK(cli.out.rfind("verified ", 0) == 0);
  }

  Run r = run({"eliminate", "--input", data("worked_antecedent.txt"), "--method", "lp",
               "--json"});
  auto j = nlohmann::ordered_json::parse(r.out);
  auto& cert = j["atoms"][0]["certificate"];
  CHECK(cert["rows"] == nlohmann::json::array({0, 1}));
  CHECK(cert["lambda"] == nlohmann::json::array({"2/5", "3/5"}));
  CHECK(cert["kind"] == "refining");
  CHECK(j["result"] == "8x - 2z <= 5");

  auto tamper = [&](auto edit) {
    auto t = j;
    edit(t);
    return verify_certificates(t.dump());
  };
  CHECK_FALSE(tamper([](auto& t) { t["atoms"][0]["certificate"]["lambda"][0] = "-2/5"; }).ok);
  CHECK_FALSE(tamper([](auto& t) { t["atoms"][0]["certificate"]["lambda"][1] = "1"; }).ok);
  CHECK_FALSE(tamper([](auto& t) { t["atoms"][0]["certificate"]["q"][0] = "2"; }).ok);
  CHECK_FALSE(tamper([](auto& t) { t["atoms"][0]["certificate"]["B_J"][1][0] = "4"; }).ok);
  CHECK_FALSE(tamper([](auto& t) { t["atoms"][0]["result"]["constant"] = "-4"; }).ok);
  CHECK_FALSE(tamper([](auto& t) { t["atoms"][0]["certificate"]["rows"][0] = 7; }).ok);
  Run bad = run({"verify", temp_file("bad.json", "{ not json")});
  CHECK(bad.code == kExitUsage);
  auto t = j;
  t["atoms"][0]["certificate"]["lambda"][0] = "-2/5";
  Run rej = run({"verify", temp_file("rej.json", t.dump())});
  CHECK(rej.code == kExitFailed);
}

TEST_CASE("bench csv") {
  Run empty = run({"bench", "--trials", "0"});
  CHECK(empty.code == kExitOk);
  CHECK(empty.out == std::string(kBenchCsvHeader) + "\n");

  Run r = run({"bench", "--N", "5", "--vars", "6,8", "--irrelevant", "2", "--trials", "3",
               "--reps", "1"});
  CHECK(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == kBenchCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.rfind("kaykobad,5,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == 6);
}

TEST_CASE("output is deterministic") {
  auto strip_micros = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
  };
  std::vector<std::vector<std::string>> corpus = {
      {"eliminate", "--input", data("worked_antecedent.txt"), "--json"},
      {"eliminate", "--input", data("disjunctive.txt"), "--method", "lp", "--json"},
      {"compose", data("pipeline_m1.txt"), data("pipeline_m2.txt")},
      {"quotient", data("missing_system.txt"), data("missing_m1.txt"), "--inputs", "o", "--outputs",
       "o'"},
  };
  for (const auto& args : corpus) {
    Run a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
  std::vector<std::string> bench = {"bench", "--N", "5", "--vars", "15", "--irrelevant", "4",
                                    "--trials", "10", "--reps", "1", "--method", "auto"};
  CHECK(strip_micros(run(bench).out) == strip_micros(run(bench).out));
}
