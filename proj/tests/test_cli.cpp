#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  std::string out;
  int code = -1;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(UPDOWN_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "cli_" + name;
  std::ofstream(path, std::ios::binary) << body;
  return path;
}

}  // namespace

TEST_CASE("compute", "[cli]") {
  auto r = run("compute -- --+-+");
  CHECK(r.code == 0);
  CHECK(r.out.find("C:         35\n") != std::string::npos);

  r = run("compute ''");
  CHECK(r.code == 0);
  CHECK(r.out.find("C:         1\n") != std::string::npos);
  CHECK(r.out.find("P:         1/1 (1)\n") != std::string::npos);

  r = run("--format csv compute +:2,3,1 --all");
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].find(",55,") != std::string::npos);

  r = run("--format json compute -- -+-");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"schema\": \"updown.compute/1\"") != std::string::npos);
  CHECK(r.out.find("\"C\": \"5\"") != std::string::npos);

  CHECK(run("compute x+-").code == 1);
  CHECK(run("compute +:2,0").code == 1);
  CHECK(run("compute --algorithm oracle ++++++++++").code == 1);
  CHECK(run("--force compute --algorithm oracle ++++++++++").code == 0);
  CHECK(run("").code == 1);
}

TEST_CASE("dump", "[cli]") {
  auto r = run("dump 1");
  CHECK(r.code == 0);
  CHECK(r.out == "index,signature,C,P,P_decimal\n0,-,1,1/2,0.5\n1,+,1,1/2,0.5\n");

  r = run("dump 2");
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[1].rfind("0,--,1,", 0) == 0);
  CHECK(rows[2].rfind("1,-+,2,", 0) == 0);
  CHECK(rows[3].rfind("2,+-,2,", 0) == 0);
  CHECK(rows[4].rfind("3,++,1,", 0) == 0);

  // engines agree byte for byte, and repeated runs are identical
  const auto rec = run("dump 8").out;
  CHECK(run("dump 8 --engine phi").out == rec);
  CHECK(run("--threads 3 dump 8 --engine triangle").out == rec);
  CHECK(run("dump 8").out == rec);
  CHECK(lines(rec).size() == 257);

  CHECK(run("dump 21").code == 1);
  CHECK(run("dump 4 --engine abacus").code == 1);
}

TEST_CASE("congruence", "[cli]") {
  auto r = run("--format csv congruence 4 5");
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 17);
  CHECK(rows[0] == "index,signature,residue_actual,residue_predicted");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const std::string& row = rows[k];
    const auto last = row.rfind(',');
    const auto prev = row.rfind(',', last - 1);
    const std::string actual = row.substr(prev + 1, last - prev - 1);
    CHECK(actual == row.substr(last + 1));
    const bool even_minus = std::count(row.begin(), row.end(), '-') % 2 == 0;
    CHECK(actual == (even_minus ? "1" : "4"));
  }

  r = run("congruence 8 9");
  CHECK(r.code == 0);
  CHECK(r.out.find("violations=0") != std::string::npos);
  CHECK(r.out.find("residues: 1:64 2:64 7:64 8:64") != std::string::npos);

  CHECK(run("congruence 8 9 --predictor mod9").code == 0);
  CHECK(run("congruence 8 7 --predictor mod7").code == 0);
  CHECK(run("congruence 12 13").code == 0);
  CHECK(run("congruence 5 5 --predictor prime").code == 0);
  CHECK(run("congruence 4 1").code == 1);
  CHECK(run("congruence 8 9 --predictor mod7").code == 1);
  CHECK(run("congruence 6 2").code == 2);  // 2 divides a denominator of c_6
  CHECK(run("congruence 6 13 --predictor prime").code == 1);
}

TEST_CASE("randomtest", "[cli]") {
  const auto good = write_temp("good.csv", "t,v\n0,1\n1,3\n2,2\n3,4\n4,3\n5,5\n");
  auto r = run("randomtest " + good + " --column v");
  CHECK(r.code == 0);
  CHECK(r.out.find("+-+-+") != std::string::npos);
  CHECK(r.out.find("61/720") != std::string::npos);

  r = run("--format json randomtest " + good + " -c 1 --threshold-log2 -3");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"schema\": \"updown.randomtest/1\"") != std::string::npos);
  CHECK(r.out.find("\"exact_p\": \"61/720\"") != std::string::npos);
  CHECK(r.out.find("\"theorem2_bound\": \"8/81\"") != std::string::npos);

  const auto bad = write_temp("bad.csv", "v\n1\nnan\n3\n");
  CHECK(run("randomtest " + bad).code == 2);
  const auto tie = write_temp("tie.csv", "v\n1\n1\n2\n0\n");
  CHECK(run("randomtest " + tie).code == 2);
  r = run("randomtest " + tie + " --tie-policy drop");
  CHECK(r.code == 0);
  CHECK(r.out.find("signature:     +-\n") != std::string::npos);
  CHECK(run("--seed 3 randomtest " + tie + " --tie-policy jitter").out ==
        run("--seed 3 randomtest " + tie + " --tie-policy jitter").out);
  CHECK(run("randomtest " + tie + " --tie-policy coin").code == 1);
  CHECK(run("randomtest missing_file.csv").code == 2);
}

TEST_CASE("verify, phi, bounds, bench", "[cli]") {
  auto r = run("verify table1");
  CHECK(r.code == 0);
  CHECK(r.out.find("checked=62 failures=0") != std::string::npos);
  r = run("verify phi8");
  CHECK(r.out.find("checked=9 failures=0") != std::string::npos);
  CHECK(run("--format json verify bounds").out.find("\"status\": \"pass\"") != std::string::npos);
  CHECK(run("verify nonsense").code == 1);

  CHECK(run("phi 3 --c").out == "3/1\t\n-1/1\t1,2\n-1/1\t2,3\n");
  CHECK(run("phi 8 --doubled --by-run-type").out.find("(8)\t62/1\t1\n") != std::string::npos);

  r = run("bounds 2");
  CHECK(r.out == "islands,exact_p,exact_p_decimal,bound,bound_decimal,ratio,ratio_decimal,satisfied\n"
                 "2,1/6,0.166666666666667,1/2,0.5,1/3,0.333333333333333,true\n"
                 "1 1,1/3,0.333333333333333,1/3,0.333333333333333,1/1,1,true\n");

  r = run("bench --from 1 --to 6");
  CHECK(r.code == 0);
  CHECK(r.out.find("N= 6  all algorithms agree") != std::string::npos);
  r = run("--format csv bench --from 20 --to 20 --algorithms recursion,phi --samples 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("20,phi,4,") != std::string::npos);
}
