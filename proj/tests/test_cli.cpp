#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using json = nlohmann::json;

namespace {

std::string g_bin, g_data;

struct RunResult {
  int exit_code = -1;
  std::string out;

  json payload() const { return json::parse(out).at("payload"); }
};

RunResult run(const std::string& args) {
  std::string cmd = g_bin + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return g_data + "/" + name; }

}  // namespace

TEST_CASE("refine pair report and determinism") {
  RunResult r = run("refine " + data("c6.str") + " --pair " + data("2c3.str"));
  CHECK(r.exit_code == 0);
  json p = r.payload();
  CHECK(p.at("equivalent") == true);
  CHECK(p.at("report").size() == 2);
  RunResult again = run("refine " + data("c6.str") + " --pair " + data("2c3.str"));
  CHECK(r.out == again.out);
}

TEST_CASE("equitable pair") {
  RunResult r = run("equitable " + data("c6.str") + " " + data("2c3.str"));
  CHECK(r.exit_code == 0);
  CHECK(r.payload().contains("parameters"));
  RunResult no = run("equitable " + data("c6.str") + " " + data("p4.str"));
  CHECK(no.exit_code == 0);
  CHECK(no.payload().contains("violation"));
}

TEST_CASE("sa levels and rank") {
  RunResult f = run("sa --k 1 " + data("k3.str") + " " + data("k2.str"));
  CHECK(f.exit_code == 0);
  CHECK(f.payload().at("feasible") == true);
  CHECK(f.payload().contains("witness"));
  RunResult i = run("sa --k 3 " + data("k3.str") + " " + data("k2.str"));
  CHECK(i.exit_code == 0);
  CHECK(i.payload().at("feasible") == false);
  CHECK(i.payload().contains("certificate"));
  RunResult bad = run("sa --k 0 " + data("k3.str") + " " + data("k2.str"));
  CHECK(bad.exit_code == 1);
  RunResult rank = run("rank --max-k 4 " + data("k3.str") + " " + data("k2.str"));
  CHECK(rank.payload().at("rank") == 3);
  RunResult none = run("rank --max-k 4 " + data("c6.str") + " " + data("c3.str"));
  CHECK(none.payload().at("rank").is_null());
}

TEST_CASE("fraciso and frachom") {
  RunResult yes = run("fraciso " + data("c6.str") + " " + data("2c3.str"));
  CHECK(yes.payload().at("feasible") == true);
  RunResult size = run("fraciso " + data("k2.str") + " " + data("k3.str"));
  CHECK(size.exit_code == 0);
  CHECK(size.payload().at("feasible") == false);
  RunResult fh = run("frachom " + data("c3.str") + " " + data("c6.str"));
  CHECK(fh.payload().at("feasible") == true);
  RunResult eq = run("frachom --equality " + data("c6.str") + " " + data("2c3.str"));
  CHECK(eq.payload().at("feasible") == true);
}

TEST_CASE("blp reports the base polytope") {
  RunResult r = run("blp " + data("k3.str") + " " + data("k2.str"));
  CHECK(r.exit_code == 0);
  CHECK(r.payload().at("feasible") == true);
}

TEST_CASE("stark emits a parseable star structure") {
  std::string out = g_data + "/../star_tmp.str";
  RunResult r = run("stark --k 2 " + data("k2.str") + " -o " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.payload().at("elements") == 8);
  RunResult reread = run("refine " + out);
  CHECK(reread.exit_code == 0);
  std::remove(out.c_str());
  RunResult inline_text = run("stark --k 2 " + data("k2.str"));
  CHECK(inline_text.payload().contains("structure"));
}

TEST_CASE("treewidth") {
  RunResult r = run("treewidth " + data("c6.str"));
  CHECK(r.payload().at("width") == 2);
  CHECK(!r.payload().at("bags").empty());
  RunResult lim = run("treewidth --limit 1 " + data("c6.str"));
  CHECK(lim.payload().at("width").is_null());
}

TEST_CASE("homcount and homsearch") {
  RunResult c = run("homcount " + data("edge_t.str") + " " + data("k3.str"));
  CHECK(c.payload().at("count") == "6");
  RunResult notree = run("homcount " + data("c3.str") + " " + data("k3.str"));
  CHECK(notree.exit_code == 1);
  RunResult w = run("homsearch " + data("c6.str") + " " + data("c3.str"));
  CHECK(!w.payload().at("witness").is_null());
  RunResult none = run("homsearch " + data("c3.str") + " " + data("c6.str"));
  CHECK(none.exit_code == 0);
  CHECK(none.payload().at("witness").is_null());
}

TEST_CASE("decompose output re-verifies through verify-chain") {
  RunResult d = run("decompose " + data("k3.str") + " " + data("k2.str"));
  CHECK(d.exit_code == 0);
  json p = d.payload();
  CHECK(p.at("feasible") == true);
  CHECK(p.at("m") == 2);
  CHECK(p.at("y_size") == 6);
  CHECK(p.at("verified") == true);

  std::string tmp = g_data + "/../chain_tmp.json";
  std::ofstream(tmp) << d.out;
  RunResult v = run("verify-chain " + tmp);
  CHECK(v.exit_code == 0);
  CHECK(v.payload().at("verified") == true);

  // tampering with a homomorphism step must be caught
  json doc = json::parse(d.out);
  for (json& step : doc["payload"]["chain"])
    if (step["kind"] == "hom" && !step["map"].empty()) {
      step["map"][0] = (step["map"][0].get<int>() + 1) % 2;
      break;
    }
  std::ofstream(tmp) << doc.dump();
  RunResult bad = run("verify-chain " + tmp);
  CHECK((bad.exit_code == 1 || bad.payload().at("verified") == false));
  std::remove(tmp.c_str());
}

TEST_CASE("poly") {
  RunResult yes = run("poly " + data("leq.str") + " --arity 2");
  CHECK(yes.payload().at("verified") == true);
  CHECK(yes.payload().at("operation").at("table").size() == 3);
  RunResult no = run("poly " + data("k2.str") + " --arity 2");
  CHECK(no.exit_code == 0);
  CHECK(no.payload().at("operation").is_null());
}

TEST_CASE("ftrees") {
  RunResult r = run("ftrees " + data("k2.str") + " --max-constraints 1");
  CHECK(r.payload().at("count") == 3);
  CHECK(r.payload().at("ftrees").size() == 3);
}

TEST_CASE("usage and resource-cap exit codes") {
  CHECK(run("nonsense").exit_code == 1);
  CHECK(run("sa --k 1 " + data("missing.str") + " " + data("k2.str")).exit_code == 1);
  CHECK(run("sa --k 1 --max-vars 5 " + data("k3.str") + " " + data("k2.str")).exit_code == 2);
  CHECK(run("stark --k 3 --max-universe 10 " + data("c6.str")).exit_code == 2);
}

TEST_CASE("environment variable caps") {
  std::string cmd = "WLSA_MAX_VARS=5 " + g_bin + " sa --k 1 " + data("k3.str") + " " +
                    data("k2.str") + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: test_cli <wlsa-binary> <data-dir>\n");
    return 1;
  }
  g_bin = argv[1];
  g_data = argv[2];
  doctest::Context ctx;
  return ctx.run();
}
