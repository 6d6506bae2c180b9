#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace univrank;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
  nlohmann::json error() const { return nlohmann::json::parse(err); }
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST_CASE("machine output") {
  auto s = run({"schur-constant", "2"});
  CHECK(s.code == 0);
  CHECK(s.json().at("lo") == "1/2");
  CHECK(s.json().at("hi") == "1/2");
  CHECK(s.out.find("\"hi\":\"1/2\",\"lo\":\"1/2\"") != std::string::npos);

  auto cf = run({"cf", "19"});
  CHECK(cf.code == 0);
  auto j = cf.json();
  CHECK(j.at("a0") == "4");
  CHECK(j.at("period") == nlohmann::json::array({"2", "1", "3", "1", "2", "8"}));

  auto lemma = run({"verify-lemma", "--k", "3", "--l", "2"});
  CHECK(lemma.code == 0);
  CHECK(lemma.json().at("holds") == true);
  CHECK(lemma.json().contains("subgroups"));

  auto sk = run({"certify-sk", "--poly", "-1,-4,0,1"});
  CHECK(sk.json().at("verdict") == "certified");

  auto re = run({"rank-elements", "15", "--m", "2"});
  CHECK(re.code == 0);

  auto fld = run({"field", "quadratic:5"});
  CHECK(fld.json().at("degree") == 2);
  CHECK(fld.json().at("disc") == "5");
}

TEST_CASE("exit codes") {
  auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 1);
  CHECK(unknown.error().at("exit_code") == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"schur-constant"}).code == 1);
  CHECK(run({"schur-constant", "3", "--precision", "0"}).code == 1);

  auto d5 = run({"pipeline", "--d", "5", "--m", "2"});
  CHECK(d5.code == 2);
  CHECK(d5.error().at("message").get<std::string>().find("unsupported degree") != std::string::npos);
  auto d8 = run({"pipeline", "--d", "8", "--m", "2"});
  CHECK(d8.code == 2);
  CHECK(d8.error().at("message").get<std::string>().find("prior work") != std::string::npos);
  CHECK(run({"field", "poly:1,0,1"}).code == 2);
  CHECK(run({"field", "quadratic:12"}).code == 2);
  CHECK(run({"certify-sk", "--poly", "2,-3,1"}).code == 2);

  auto cfg = temp_file("univrank_budget.json", R"({"enumeration_budget": 5})");
  auto b = run({"--config", cfg, "indecomposables", "2", "--trace-bound", "200"});
  CHECK(b.code == 3);
  CHECK(b.error().at("exit_code") == 3);
}

TEST_CASE("configuration") {
  auto fine = temp_file("univrank_fine.json", R"({"precision": "1/1000000000000"})");
  auto coarse = run({"schur-constant", "3"}).json();
  auto viaflag = run({"--config", fine, "schur-constant", "3"}).json();
  CHECK(coarse != viaflag);
  setenv("UNIVRANK_CONFIG", fine.c_str(), 1);
  auto viaenv = run({"schur-constant", "3"}).json();
  unsetenv("UNIVRANK_CONFIG");
  CHECK(viaenv == viaflag);
  CHECK(run({"--config", "/nonexistent/univrank.json", "schur-constant", "2"}).code == 1);
  auto bad = temp_file("univrank_bad.json", R"({"thread_count": 0})");
  CHECK(run({"--config", bad, "schur-constant", "2"}).code == 1);
  CHECK(run({"--threads", "2", "indecomposables", "2", "--trace-bound", "10"}).json() ==
        run({"indecomposables", "2", "--trace-bound", "10"}).json());
}

TEST_CASE("pipeline and verification through the CLI") {
  auto path = (std::filesystem::temp_directory_path() / "univrank_cert.json").string();
  auto p = run({"pipeline", "--d", "6", "--m", "2", "--out", path});
  CHECK(p.code == 0);
  CHECK(p.json().at("valid") == true);
  CHECK(run({"pipeline", "--d", "6", "--m", "2"}).out == p.out);
  auto v = run({"verify-certificate", path});
  CHECK(v.code == 0);
  CHECK(v.json().at("ok") == true);

  auto low = run({"pipeline", "--d", "6", "--m", "2", "--K-poly", "-1,-4,0,1"});
  CHECK(low.code == 2);
  CHECK(low.json().at("K").at("validation").at("unmet") == nlohmann::json::array({"disc_K_exceeds_B"}));
}

TEST_CASE("human output") {
  auto h = run({"--human", "schur-constant", "2"});
  CHECK(h.code == 0);
  CHECK(h.out.find("1/2") != std::string::npos);
  CHECK_FALSE(nlohmann::json::accept(h.out));
}

TEST_CASE("forms and certificates") {
  auto u = run({"check-universal", "--form", R"({"field":"rationals","gram":[[["1"],["0"]],[["0"],["1"]]]})",
                "--trace-bound", "10", "--represent", "[\"7\"]"});
  CHECK(u.code == 0);
  auto j = u.json();
  CHECK(j.at("missed").size() == 3);  // 3, 6, 7
  CHECK(j.at("representation").at("represented") == false);
  auto cr = run({"certify-rank", "--L", "quadratic:15", "--elements", R"([["1","0"],["4","-1"]])"});
  CHECK(cr.code == 0);
  CHECK(cr.json().at("valid") == true);
  auto bb = run({"bound-B", "--k", "3", "--l", "2", "--L", "quadratic:2", "--elements", R"([["1","0"],["3","2"]])"});
  CHECK(bb.json().at("B_ceiling") == "1426576072");
  CHECK(bb.json().at("T") == "24");
}
