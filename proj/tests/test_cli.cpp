#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arithdyn/cli.hpp"
#include "arithdyn/config.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = arithdyn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json", "--no-timestamp"});
  return nlohmann::json::parse(run(args).out);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eval reports") {
    const auto j = run_json({"eval", "--fn", "phi", "--n", "18"});
    CHECK(j["schema"] == "arithdyn.report/1");
    CHECK(j["results"]["value"] == 6);
    CHECK(j["status"] == "INFO");
    CHECK_FALSE(j.contains("timestamp"));
    CHECK(j["provenance"]["config"]["sieve_bound"] == 10'000'000);
  }

  TEST_CASE("oracle-eval passes") {
    const auto r = run({"oracle-eval", "--fn", "J", "--k", "2", "--n", "96"});
    CHECK(r.code == 0);
    CHECK(r.out.find("status: PASS") != std::string::npos);
  }

  TEST_CASE("preimage and errors") {
    const auto j = run_json({"preimage", "--fn", "psi", "--n", "12"});
    CHECK(j["results"]["members"] == nlohmann::json::array({6, 8, 9, 11}));
    CHECK(run({"preimage", "--fn", "Omega", "--n", "1"}).code == 2);
    CHECK(run({"preimage", "--fn", "phi*", "--n", "6"}).code == 2);
    CHECK(run_json({"preimage", "--fn", "phi*", "--n", "6", "--bound", "50"})["results"]["completeness"] == "BOUNDED_SEARCH");
    CHECK(run({"eval", "--fn", "nope", "--n", "3"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
  }

  TEST_CASE("verify-lemma statuses") {
    const auto pass = run_json({"verify-lemma", "phi-antiorbit", "--families", "5", "--depth", "10"});
    CHECK(pass["status"] == "PASS");
    CHECK(pass["results"]["certified_bound"] == "a(phi) >= 5 at depth 10");
    const auto fail = run({"verify-lemma", "separation", "--fn", "phi", "--bound", "100"});
    CHECK(fail.code == 1);
    const auto j = run_json({"verify-lemma", "separation", "--fn", "phi", "--bound", "100"});
    CHECK(j["results"].contains("counterexample"));
    CHECK(run({"verify-lemma", "--list"}).code == 0);
    CHECK(run({"verify-lemma", "no-such-lemma"}).code == 2);
  }

  TEST_CASE("every lemma id runs") {
    for (const std::string id : {"phi-antiorbit", "d-antiorbit", "omega-antiorbit", "smallomega-antiorbit", "psi-orbit",
                                 "j2-orbit", "generic-note", "nonfinite-fibre", "partition-example"}) {
      CHECK_MESSAGE(run({"verify-lemma", id}).code == 0, id);
    }
    for (const std::string id : {"monotone-o-zero", "monotone-a-zero", "strict-o-positive", "tau-subset", "taubar-subset",
                                 "connected-forward", "separation", "phi-finite-fibre"}) {
      CHECK_MESSAGE(run({"verify-lemma", id, "--bound", "500"}).code == 0, id);
    }
  }

  TEST_CASE("csv output for tables") {
    const auto r = run({"--format", "csv", "components", "--fn", "phi", "--bound", "50"});
    CHECK(r.out.rfind("component,max,min,size\n", 0) == 0);
  }

  TEST_CASE("entropy commands") {
    const auto j = run_json({"centropy", "--fn", "phi", "--seeds", "1", "--horizon", "1"});
    CHECK(j["results"]["value"] == 1.0);
    CHECK(run({"centropy", "--fn", "Omega", "--seeds", "1", "--horizon", "2"}).code == 2);
  }

  TEST_CASE("json output is deterministic") {
    const std::vector<std::string> args = {"--format", "json", "--no-timestamp", "family", "--scheme", "omega-anti", "--depth", "4"};
    CHECK(run(args).out == run(args).out);
  }

  TEST_CASE("config file") {
    const auto before = arithdyn::limits();
    const std::string path = "arithdyn_test_config.json";
    {
      std::ofstream(path) << R"({"inverse_phi_max": 100, "depth_caps": {"omega_anti": 4}})";
    }
    CHECK(run({"--config", path, "inverse-phi", "--n", "1000"}).code == 2);
    CHECK(arithdyn::limits().depth_caps.omega_anti == 4);
    arithdyn::set_limits(before);
    {
      std::ofstream(path) << R"({"sieve_size": 5})";
    }
    CHECK(run({"--config", path, "inverse-phi", "--n", "4"}).code == 2);
    std::remove(path.c_str());
  }
}
