#include "doctest.h"
#include "univrank/errors.hpp"
#include "univrank/pipeline.hpp"

using namespace univrank;

namespace {

nlohmann::json d6m2() {
  PipelineOptions o;
  o.d = 6;
  o.m = 2;
  return run_pipeline(o);
}

bool has_problem(const VerifyReport& r, const std::string& needle) {
  for (const auto& p : r.problems) {
    if (p.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("branch selection") {
  for (unsigned long d : {2UL, 3UL, 4UL, 8UL}) {
    try {
      choose_branch(d);
      FAIL("expected an error");
    } catch (const HypothesisError& e) {
      CHECK(std::string(e.what()).find("prior work") != std::string::npos);
    }
  }
  for (unsigned long d : {5UL, 7UL, 11UL, 25UL}) {
    try {
      choose_branch(d);
      FAIL("expected an error");
    } catch (const HypothesisError& e) {
      CHECK(std::string(e.what()).find("unsupported degree") != std::string::npos);
    }
  }
  auto six = choose_branch(6);
  CHECK(six.branch == Branch::quadratic);
  CHECK(six.k == 3);
  auto nine = choose_branch(9);
  CHECK(nine.branch == Branch::cubic);
  CHECK(nine.k == 3);
  auto ten = choose_branch(10);
  CHECK(ten.k == 5);
  CHECK(ten.l == 2);
  CHECK(choose_branch(12).k == 6);
  CHECK(choose_branch(15).l == 3);
  CHECK_THROWS_AS(choose_branch(12, "cubic:1"), HypothesisError);  // k = 4
  CHECK(K_family(3, 4) == ZPoly{-1, -4, 0, 1});
  CHECK(K_family(5, 1) == ZPoly{-121, 274, -225, 85, -15, 1});
}

TEST_CASE("quadratic pipeline for d = 6, m = 2") {
  auto cert = d6m2();
  CHECK(cert.at("valid") == true);
  CHECK(cert.at("branch") == "quadratic");
  CHECK(cert.at("conditional") == false);
  CHECK(cert.at("rank_evidence").at("valid") == true);
  CHECK(cert.at("rank_evidence").at("rank_bound").get<std::size_t>() >= 2);
  CHECK(cert.at("K").at("validation").at("unmet").empty());
  CHECK(cert.at("compositum").at("disc_matches_product") == true);
  CHECK(cert.at("compositum").at("trace_tower") == true);
  auto r = verify_certificate(cert);
  CHECK(r.ok);
  CHECK(r.problems.empty());
  CHECK(d6m2().dump() == cert.dump());
}

TEST_CASE("tampered certificates are rejected") {
  const auto cert = d6m2();
  auto t = cert;
  t["T"] = "31";
  CHECK(has_problem(verify_certificate(t), "T differs"));
  t = cert;
  t["B"]["B_ceiling"] = "12340576818";
  CHECK_FALSE(verify_certificate(t).ok);
  t = cert;
  t["rank_evidence"]["pairs"][0]["box"] = nlohmann::json::array();
  CHECK_FALSE(verify_certificate(t).ok);
  t = cert;
  t["K"]["poly"] = nlohmann::json::array({"-1", "-4", "0", "1"});
  CHECK(has_problem(verify_certificate(t), "disc_K <= B_ceiling"));
  t = cert;
  t["d"] = 8;
  CHECK_FALSE(verify_certificate(t).ok);
  t = cert;
  t.erase("B");
  CHECK(has_problem(verify_certificate(t), "malformed"));
}

TEST_CASE("supplied K below the threshold") {
  PipelineOptions o;
  o.d = 6;
  o.m = 2;
  o.K_poly = ZPoly{-1, -4, 0, 1};
  auto cert = run_pipeline(o);
  CHECK(cert.at("valid") == false);
  CHECK(cert.at("K").at("source") == "supplied");
  const auto& v = cert.at("K").at("validation");
  CHECK(v.at("unmet") == nlohmann::json::array({"disc_K_exceeds_B"}));
  CHECK(cert.at("compositum").is_null());
  auto r = verify_certificate(cert);
  CHECK_FALSE(r.ok);
  REQUIRE(r.problems.size() == 1);
  CHECK(r.problems[0].find("disc_K <= B_ceiling") != std::string::npos);
  auto lie = cert;
  lie["valid"] = true;
  CHECK(has_problem(verify_certificate(lie), "validity flag"));
  o.K_poly = ZPoly{-2, 0, 1};
  CHECK_THROWS_AS(run_pipeline(o), UsageError);
}

TEST_CASE("cubic pipeline for d = 9") {
  PipelineOptions o;
  o.d = 9;
  o.m = 1;
  auto cert = run_pipeline(o);
  CHECK(cert.at("branch") == "cubic");
  CHECK(cert.at("conditional") == true);
  CHECK(cert.at("rank_evidence").at("n").get<std::size_t>() >= 240);
  // the scanned x^3 - t x - 1 has a huge discriminant that is not shown squarefree
  CHECK(cert.at("valid") == false);
  auto r = verify_certificate(cert);
  CHECK_FALSE(r.ok);
  CHECK(has_problem(r, "disc_K not certified"));
  for (const auto& p : r.problems) CHECK(p.find("trace-one") == std::string::npos);

  o.L_choice = "cubic:1";
  CHECK_THROWS_AS(run_pipeline(o), HypothesisError);
  o.L_choice = "";
  o.m = 0;
  CHECK_THROWS_AS(run_pipeline(o), UsageError);
}
