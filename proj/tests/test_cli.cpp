#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

#include "padicseq/localfield.hpp"

using njson = nlohmann::json;

namespace {

struct RunResult {
  int rc = -1;
  std::string out;  // stdout and stderr interleaved
};

RunResult run(const std::string& args, const std::string& stdin_data = "") {
  std::string cmd = std::string(CLI_BIN) + " " + args + " 2>&1";
  if (!stdin_data.empty()) {
    std::string in_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                          "/padicseq_cli_stdin.json";
    std::ofstream f(in_path);
    f << stdin_data;
    f.close();
    cmd += " < " + in_path;
  }
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("terms: direct, list, and matrix-power paths agree") {
  auto r = run("terms " + data("fibonacci.json") + " --n 10");
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "s(10) = 55"));

  auto ladder = run("terms " + data("fibonacci.json") + " --n-max 10");
  CHECK(ladder.rc == 0);
  CHECK(contains(ladder.out, "s(0) = 0"));
  CHECK(contains(ladder.out, "s(10) = 55"));

  // F(11^3) mod 11^6 through the companion-matrix route equals direct iteration
  auto big = run("terms " + data("fibonacci.json") + " --large-index=1,0,3 --precision 6");
  CHECK(big.rc == 0);
  CHECK(contains(big.out, "s(1331) = 253947"));
  auto direct = run("terms " + data("fibonacci.json") + " --n 1331 --precision 6");
  CHECK(direct.out == big.out);

  auto both = run("terms " + data("fibonacci.json") + " --n 3 --n-max 5");
  CHECK(both.rc == 2);
  CHECK(contains(both.out, "exactly one of"));
}

TEST_CASE("terms: digits flag and json schema") {
  auto r = run("terms " + data("fibonacci.json") + " --n 10 --digits");
  CHECK(contains(r.out, "digits [0 5"));  // 55 = 0 + 5*11
  auto j = run("terms " + data("fibonacci.json") + " --n-list 0,1,2,3,10 --json");
  CHECK(j.rc == 0);
  njson parsed = njson::parse(j.out);
  CHECK(parsed["p"] == 11);
  CHECK(parsed["terms"].size() == 5);
  CHECK(parsed["terms"][4]["n"] == 10);
  CHECK(parsed["terms"][4]["value"]["coeffs"][0] == 55);
  CHECK(parsed["terms"][4]["value"]["modulus"] == njson({0, 1}));
}

TEST_CASE("config failures exit with code 2") {
  auto bad_p = run("terms --p 4 --coeffs=-1,-1 --initial=0,1 --n 3");
  CHECK(bad_p.rc == 2);
  CHECK(contains(bad_p.out, "p must be prime"));

  auto no_spec = run("classify");
  CHECK(no_spec.rc == 2);
  CHECK(contains(no_spec.out, "no recurrence given"));

  auto missing = run("classify /nonexistent.json");
  CHECK(missing.rc == 2);

  auto bad_flag = run("classify --frobnicate 3");
  CHECK(bad_flag.rc == 2);

  auto bad_json = run("density " + data("fibonacci.json") + " --alpha-max 0");
  CHECK(bad_json.rc == 2);
  CHECK(contains(bad_json.out, "alpha must be at least 1"));
}

TEST_CASE("classify renders the class line") {
  auto fib = run("classify " + data("fibonacci.json"));
  CHECK(fib.rc == 0);
  CHECK(contains(fib.out, "ExactTwisted, 10 functions, q=1, f=1"));

  auto dbl = run("classify " + data("doubling.json"));
  CHECK(dbl.rc == 0);
  CHECK(contains(dbl.out, "no twisted interpolation"));

  // cubic 2-shift at p = 3: wildly ramified cube root, q = 9
  auto cubic = run("classify --p 3 --coeffs=-2,0,0 --initial=1,0,0");
  CHECK(cubic.rc == 0);
  CHECK(contains(cubic.out, "q=9"));

  auto zero = run("classify --p 7 --coeffs=-1,-1 --initial=0,0");
  CHECK(contains(zero.out, "IdenticallyZero"));

  auto j = run("classify " + data("fibonacci.json") + " --json");
  njson parsed = njson::parse(j.out);
  CHECK(parsed["tag"] == "ExactTwisted");
  CHECK(parsed["q"] == 1);
  CHECK(parsed["f"] == 1);
  CHECK(parsed["function_count"] == 10);
  CHECK(parsed.contains("witness"));
  CHECK(parsed.contains("e"));
}

TEST_CASE("limit: text, polynomial check, and convergence") {
  auto p11 = run("limit " + data("fibonacci.json") + " --precision 18 --check-poly=5,5,1 "
                 "--verify-terms 8");
  CHECK(p11.rc == 0);
  CHECK(contains(p11.out, "lim s(1*11^n + 0) = "));
  CHECK(contains(p11.out, "root verified"));
  CHECK(contains(p11.out, "convergence"));

  auto wrong = run("limit " + data("fibonacci.json") + " --check-poly=5,5,2");
  CHECK(wrong.rc == 0);
  CHECK(contains(wrong.out, "root not verified"));

  auto p5 = run("limit " + data("fibonacci.json") + " --p 5 --precision 20");
  CHECK(p5.rc == 0);
  CHECK(contains(p5.out, "lim s(1*5^n + 0) = 0\n"));
  std::string dl = p5.out.substr(p5.out.find("digits: "));
  CHECK(dl.find_first_of("123456789") == std::string::npos);
}

TEST_CASE("limit at p = 2: json carries the value, sign relation holds") {
  auto j1 = run("limit " + data("fibonacci.json") + " --p 2 --precision 30 --json");
  CHECK(j1.rc == 0);
  njson a = njson::parse(j1.out);
  CHECK(a["a"] == 1);
  CHECK(a["b"] == 0);
  auto j2 = run("limit " + data("fibonacci.json") + " --p 2 --precision 30 --a 2 --json");
  njson b = njson::parse(j2.out);

  padic::Int L1(a["limit"]["coeffs"][0].get<long>());
  padic::Int L2(b["limit"]["coeffs"][0].get<long>());
  padic::Int mod = padic::pow_int(padic::Int(2), 30);
  CHECK((5 * L1 * L1 + 3) % mod == 0);
  CHECK((L1 + L2) % mod == 0);
}

TEST_CASE("round trip: limit json feeds the verify subcommand") {
  auto out = run("limit " + data("fibonacci.json") + " --json --check-poly=5,5,1");
  CHECK(out.rc == 0);
  njson parsed = njson::parse(out.out);
  CHECK(parsed["algebraic_witness"] == njson({5, 5, 1}));

  auto v = run("verify", out.out);
  CHECK(v.rc == 0);
  CHECK(contains(v.out, "root verified"));

  njson tampered = parsed;
  tampered["algebraic_witness"] = njson({5, 5, 2});
  auto bad = run("verify", tampered.dump());
  CHECK(bad.rc == 0);
  CHECK(contains(bad.out, "root not verified"));

  parsed.erase("algebraic_witness");
  auto none = run("verify", parsed.dump());
  CHECK(none.rc == 2);
  CHECK(contains(none.out, "no algebraic witness"));
}

TEST_CASE("density: profiles, exact mode, and the unsupported fallback") {
  auto exact = run("density " + data("fibonacci.json") + " --exact");
  CHECK(exact.rc == 0);
  CHECK(contains(exact.out, "exact limiting density: 145/264"));
  CHECK(contains(exact.out, "certified cosets: 6/11"));

  auto burr = run("density " + data("fibonacci.json") + " --p 3 --alpha-max 5");
  CHECK(burr.rc == 0);
  CHECK(contains(burr.out, "profile: 1, 1, 1, 1, 1"));

  auto fallback = run("density " + data("mixed.json") + " --exact --alpha-max 3");
  CHECK(fallback.rc == 3);
  CHECK(contains(fallback.out, "exact density unsupported; use empirical mode"));
  CHECK(contains(fallback.out, "profile: "));  // empirical hint still printed

  auto jf = run("density " + data("mixed.json") + " --exact --alpha-max 3 --json");
  CHECK(jf.rc == 3);
  std::string body = jf.out.substr(jf.out.find('{'));  // skip the stderr line
  njson parsed = njson::parse(body);
  CHECK(parsed["mode"] == "empirical");
  CHECK(contains(parsed["exact_error"].get<std::string>(), "unsupported"));

  auto je = run("density " + data("fibonacci.json") + " --exact --json");
  njson ex = njson::parse(je.out);
  CHECK(ex["exact"] == "145/264");
  CHECK(ex["components"][0]["measure"] == "6/11");
}

TEST_CASE("tree: dot file, stdout formats, and the exact shape") {
  std::string dot_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                         "/padicseq_cli_tree.dot";
  auto r = run("tree " + data("fibonacci.json") + " --alpha-max 3 --exact --dot " + dot_path);
  CHECK(r.rc == 0);
  std::ifstream f(dot_path);
  std::string dot((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(contains(dot, "digraph residue_tree"));
  CHECK(contains(dot, "n1_5"));
  CHECK(!contains(dot, "n1_6"));  // pruned branch point
  CHECK(contains(dot, "n2_5 -> n3_610"));

  auto txt = run("tree " + data("fibonacci.json") + " --alpha-max 2 --exact");
  CHECK(contains(txt.out, "Z_11"));
  CHECK(contains(txt.out, "[full]"));

  auto js = run("tree " + data("fibonacci.json") + " --alpha-max 2 --json");
  njson parsed = njson::parse(js.out);
  CHECK(parsed["mode"] == "empirical");
  CHECK(parsed["levels"][0]["residues"] == njson({0, 1, 2, 3, 5, 8, 10}));
  CHECK(parsed["edges"].size() == 67);

  auto ds = run("tree " + data("fibonacci.json") + " --alpha-max 2 --exact --format dot");
  CHECK(contains(ds.out, "rankdir=TB"));
}

TEST_CASE("omega and explog expose the special functions") {
  auto w = run("omega --p 11 --value 8 --precision 10");
  CHECK(w.rc == 0);
  // frozen: omega(8)^10 == 1 mod 11^10 and omega == 8 mod 11
  CHECK(contains(w.out, "omega(8) mod 11^10 = 24262286441"));
  CHECK(contains(w.out, "digits: [8 "));

  auto nonunit = run("omega --p 11 --value 22");
  CHECK(nonunit.rc == 2);

  auto lg = run("explog --p 5 --fn log --value 6 --precision 10");
  CHECK(lg.rc == 0);
  CHECK(contains(lg.out, "pi-valuation 1"));

  auto ex = run("explog --p 5 --fn exp --value 5 --precision 10 --json");
  CHECK(ex.rc == 0);
  njson parsed = njson::parse(ex.out);
  CHECK(parsed["fn"] == "exp");
  CHECK(parsed["result"]["coeffs"][0].is_number());

  auto dom = run("explog --p 5 --fn log --value 3");
  CHECK(dom.rc == 2);

  auto badfn = run("explog --p 5 --fn tan --value 3");
  CHECK(badfn.rc == 2);
}

TEST_CASE("interp surfaces branches, eval, and agreement") {
  auto r = run("interp " + data("fibonacci.json") + " --eval 37 --agree 30");
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "unit root 1"));
  CHECK(contains(r.out, "exact match"));
  CHECK(contains(r.out, "0 violations"));

  auto mixed = run("interp " + data("mixed.json") + " --agree 40");
  CHECK(mixed.rc == 0);
  CHECK(contains(mixed.out, "ApproximateOnly"));
  CHECK(contains(mixed.out, "nu_C = -1/2"));
  CHECK(contains(mixed.out, "0 violations"));

  auto j = run("interp " + data("fibonacci.json") + " --json --eval 37");
  njson parsed = njson::parse(j.out);
  CHECK(parsed["branches"].size() == 2);
  CHECK(parsed["eval"]["exact_match"] == true);
  CHECK(parsed["eval"]["i"] == 7);
}
