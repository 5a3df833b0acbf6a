#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* cli = SFLAT_CLI_PATH;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const fs::path tmp = fs::path(SFLAT_TEST_TMP);
  fs::create_directories(tmp);
  const fs::path outfile = tmp / "cli_out.txt";
  const std::string cmd =
      std::string(cli) + " " + args + " > " + outfile.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(raw);
  std::ifstream in(outfile);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string write_scene(const std::string& name, const std::string& body) {
  const fs::path tmp = fs::path(SFLAT_TEST_TMP);
  fs::create_directories(tmp);
  const fs::path p = tmp / name;
  std::ofstream out(p);
  out << body;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify suites and exit codes") {
  // small suites pass on a pristine build
  const RunResult classify = run("verify --suite classify");
  CHECK(classify.code == 0);
  CHECK(classify.out.find("PASS") != std::string::npos);
  CHECK(classify.out.find("FAIL") == std::string::npos);

  const RunResult bpst = run("verify --suite bpst");
  CHECK(bpst.code == 0);

  // t4 at reduced resolution: 6 rows, all pass
  const RunResult t4 = run("verify --suite t4 --resolution 16");
  CHECK(t4.code == 0);
  int rows = 0;
  for (std::size_t pos = 0; (pos = t4.out.find('\n', pos)) != std::string::npos; ++pos)
    ++rows;
  CHECK(rows == 6);

  // unknown suite is a configuration error
  CHECK(run("verify --suite bogus").code == 2);
}

TEST_CASE("classify command") {
  const RunResult half = run("classify 1 1/2");
  CHECK(half.code == 0);
  CHECK(half.out.find("c0 = 1/2") != std::string::npos);

  const RunResult irr = run("classify 1 --irrational-ratio");
  CHECK(irr.code == 0);
  CHECK(irr.out.find("flat connections only") != std::string::npos);

  CHECK(run("classify 0 1").code == 2);
  CHECK(run("classify 1").code == 2);      // missing c2 without the flag
  CHECK(run("classify x 1").code == 2);    // parse failure

  const RunResult js = run("classify 2 3 --json");
  CHECK(js.code == 0);
  CHECK(js.out.find("\"c0\": \"1\"") != std::string::npos);
}

TEST_CASE("eval command") {
  const std::string flat = write_scene(
      "flat.json", R"({"preset": "flat_wilson", "resolution": 8, "wilson": [0.1, 0.2, 0, 0]})");
  const RunResult v = run("eval --scene " + flat + " --functional ym");
  CHECK(v.code == 0);
  CHECK(v.out.find("value 0.000000000000e+00") != std::string::npos);

  // schema violations exit 2
  const std::string bad = write_scene("bad.json", R"({"preset": "flat_wilson", "zzz": 1})");
  CHECK(run("eval --scene " + bad + " --functional ym").code == 2);
  const std::string badp = write_scene("badp.json", R"({"preset": "nope"})");
  CHECK(run("eval --scene " + badp + " --functional ym").code == 2);

  // point-cloud preset cannot feed quadrature-based functionals
  const std::string bpst = write_scene("bpst.json", R"({"preset": "bpst", "points": 64})");
  CHECK(run("eval --scene " + bpst + " --functional ym").code == 2);

  // determinism: identical scene gives byte-identical reports
  const std::string rnd = write_scene(
      "rnd.json",
      R"({"preset": "random_su2", "resolution": 8, "seed": 9, "amplitude": 0.2})");
  const RunResult r1 = run("eval --scene " + rnd + " --functional all --json");
  const RunResult r2 = run("eval --scene " + rnd + " --functional all --json");
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("flow command") {
  namespace fs = std::filesystem;
  const fs::path tmp = fs::path(SFLAT_TEST_TMP);

  // flat preset: immediate termination, header plus single row
  const std::string flat = write_scene(
      "flowflat.json", R"({"preset": "flat_wilson", "resolution": 8, "wilson": [0.2, 0, 0, 0]})");
  const std::string csv1 = (tmp / "flat.csv").string();
  const RunResult r = run("flow --scene " + flat + " --kind pym --steps 20 --out " + csv1);
  CHECK(r.code == 0);
  {
    const std::string body = slurp(csv1);
    CHECK(body.rfind("time,value_ym,value_pym,value_phi,residual\n", 0) == 0);
    int lines = 0;
    for (char ch : body)
      if (ch == '\n') ++lines;
    CHECK(lines == 2);  // header + initial row
  }

  // perturbed start: monotone value_pym column
  const std::string rnd = write_scene(
      "flowrnd.json",
      R"({"preset": "random_abelian", "resolution": 8, "seed": 4, "amplitude": 0.001})");
  const std::string csv2 = (tmp / "rnd.csv").string();
  const RunResult r2 = run("flow --scene " + rnd + " --kind pym --steps 60 --out " + csv2);
  CHECK(r2.code == 0);
  {
    std::ifstream in(csv2);
    std::string line;
    std::getline(in, line);  // header
    double prev = 1e300;
    bool first = true;
    while (std::getline(in, line)) {
      // value_pym is the third column
      std::size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
      std::size_t c3 = line.find(',', c2 + 1);
      const double v = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
      if (!first) CHECK(v <= prev + 1e-10 * (1.0 + prev));
      prev = v;
      first = false;
    }
  }

  // missing output path: configuration error
  CHECK(run("flow --scene " + rnd + " --kind pym --steps 5").code == 2);

  // determinism of the trace
  const std::string csv3 = (tmp / "rnd2.csv").string();
  run("flow --scene " + rnd + " --kind pym --steps 60 --out " + csv3);
  run("flow --scene " + rnd + " --kind pym --steps 60 --out " + csv2);
  CHECK(slurp(csv2) == slurp(csv3));
}
