#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct WorkDir {
  fs::path path;
  WorkDir() : path(fs::temp_directory_path() / ("fracvar_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~WorkDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

const fs::path& workdir() {
  static const WorkDir dir;
  return dir.path;
}

struct Result {
  int code;
  std::string err;
};

Result run(const std::string& args) {
  const auto errfile = workdir() / "stderr.txt";
  const std::string cmd = std::string(FRACVAR_CLI) + " " + args + " 2> " + errfile.string() + " > /dev/null";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(errfile);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str()};
}

std::string out(const std::string& name) { return (workdir() / name).string(); }

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("table-b") {
  REQUIRE(run("table-b --out " + out("b.csv")).code == 0);
  const auto rows = read_csv(out("b.csv"));
  REQUIRE(rows.size() == 43);
  CHECK(rows[0] == std::vector<std::string>{"alpha", "N", "B"});
  bool found = false;
  for (const auto& r : rows)
    if (r[0] == "0.5" && r[1] == "4") {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%.4f", std::stod(r[2]));
      CHECK(std::string(buf) == "0.3085");
      found = true;
    }
  CHECK(found);
}

TEST_CASE("output is deterministic") {
  for (const char* sub : {"table-b", "direct --n 5,10", "indirect --n 100"}) {
    REQUIRE(run(std::string(sub) + " --out " + out("d1.csv")).code == 0);
    REQUIRE(run(std::string(sub) + " --out " + out("d2.csv")).code == 0);
    CHECK(slurp(out("d1.csv")) == slurp(out("d2.csv")));
  }
}

TEST_CASE("derivative subcommand") {
  REQUIRE(run("derivative --function t4 --method integer --N 4 --out " + out("dv.csv")).code == 0);
  const auto rows = read_csv(out("dv.csv"));
  REQUIRE(rows.size() > 10);
  CHECK(rows[0].back() == "abs_error");
  for (size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i].back()) <= 1e-9);
  CHECK(run("derivative --method gl --n 10,20 --out " + out("gl.csv")).code == 0);
  CHECK(run("derivative --method nonsense --out " + out("x.csv")).code == 1);
}

TEST_CASE("usage errors exit with 1") {
  const auto r = run("table-b --alpha \"\" --out " + out("e.csv"));
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error\ttable-b\tusage\t", 0) == 0);
  CHECK(run("").code == 1);
  CHECK(run("table-b --bogus 1").code == 1);
  CHECK(run("direct --example ex1 --alpha 0.3 --out " + out("e.csv")).code == 1);
  CHECK(run("indirect --eps 0.5 --out " + out("e.csv")).code == 1);
  CHECK(run("table-b --out " + out("missing/dir/x.csv")).code == 1);
}

TEST_CASE("numerical failures exit with 2") {
  const auto r = run("direct --example ex3 --n 10 --tol 1e-300 --out " + out("e.csv"));
  CHECK(r.code == 2);
  CHECK(r.err.find("no_convergence") != std::string::npos);
}

TEST_CASE("config file and command-line override") {
  const auto ini = out("c.ini");
  {
    std::ofstream f(ini);
    f << "[table-b]\nalpha=0.5,0.7\nN=4,7\n\n[direct]\nexample=ex2\nn=5,10\n";
  }
  REQUIRE(run("--config " + ini + " table-b --out " + out("c1.csv")).code == 0);
  CHECK(read_csv(out("c1.csv")).size() == 5);
  REQUIRE(run("table-b --config " + ini + " --N 70 --out " + out("c2.csv")).code == 0);
  const auto rows = read_csv(out("c2.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][1] == "70");
  CHECK(rows[2][1] == "70");
  // keys from another section do not leak
  REQUIRE(run("--config " + ini + " direct --out " + out("c3.csv")).code == 0);
  const auto d = read_csv(out("c3.csv"));
  CHECK(d.size() == 1 + 6 + 11);
}

TEST_CASE("bounds subcommand") {
  REQUIRE(run("bounds --function exp2t --N 2,4 --out " + out("bd.csv")).code == 0);
  const auto rows = read_csv(out("bd.csv"));
  REQUIRE(rows.size() > 1);
  CHECK(rows[0].back() == "dominated");
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "true");
}
