#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

std::string fixture(const std::string& name) { return std::string(CURV_FIXTURE_DIR) + "/" + name; }

struct RunResult {
  int exitCode;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(CURV_TOOL_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("diagnostics reports counts, volumes and the timing table") {
  const RunResult r = run("--mesh " + fixture("twotet1.msh") + " --ranks 2");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("rank 0: elements 1, ghosts 1") != std::string::npos);
  CHECK(r.output.find("rank 1: elements 1, ghosts 1") != std::string::npos);
  CHECK(r.output.find("total volume = 0.5") != std::string::npos);
  CHECK(r.output.find("Min time [s]\tMax time [s]\tAction") != std::string::npos);

  // every construction stage name appears exactly once in the table
  for (const char* stage :
       {"grid: entity generation", "grid: global index construction",
        "grid: ghost element construction", "grid: index subset construction",
        "grid: communication map construction", "reader: count elements",
        "reader: read corner block", "reader: partition elements", "reader: read element data",
        "reader: read boundary data", "reader: read vertex coordinates",
        "reader: insert into factory"}) {
    std::size_t count = 0;
    for (std::size_t at = r.output.find(stage); at != std::string::npos;
         at = r.output.find(stage, at + 1))
      ++count;
    CHECK_MESSAGE(count == 1, stage);
  }
}

TEST_CASE("diagnostics volume of the reference tet fixture") {
  const RunResult r = run("--mesh " + fixture("reftet1.msh") + " --ranks 1");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("total volume = 0.166667") != std::string::npos);
}

TEST_CASE("gauss mode yields 4 pi for interior charges and 0 outside") {
  const RunResult inside =
      run("--mesh " + fixture("ico3_ball.msh") + " --ranks 2 --test gauss --charge 0,0,0 "
          "--charge 0.2,0.1,-0.15");
  CHECK(inside.exitCode == 0);
  std::istringstream lines(inside.output);
  std::string line;
  int seen = 0;
  while (std::getline(lines, line)) {
    const auto at = line.find("flux/4pi = ");
    if (at == std::string::npos) continue;
    const double ratio = std::stod(line.substr(at + 11));
    CHECK(std::abs(ratio - 1.0) <= 1e-4);
    ++seen;
  }
  CHECK(seen == 2);

  const RunResult outside = run("--mesh " + fixture("ico3_ball.msh") +
                                " --ranks 1 --test gauss --charge 3,3,3 --abs-tol 1e-12");
  CHECK(outside.exitCode == 0);
  const auto at = outside.output.find("flux = ");
  REQUIRE(at != std::string::npos);
  CHECK(std::abs(std::stod(outside.output.substr(at + 7))) <= 1e-6);
}

TEST_CASE("normal mode reports a vanishing integral on a closed surface") {
  const RunResult r = run("--mesh " + fixture("ico3_ball.msh") + " --ranks 2 --test normal");
  CHECK(r.exitCode == 0);
  const auto at = r.output.find("|integral| = ");
  REQUIRE(at != std::string::npos);
  const double norm = std::stod(r.output.substr(at + 13));
  const auto at2 = r.output.find("surface area = ");
  REQUIRE(at2 != std::string::npos);
  const double area = std::stod(r.output.substr(at2 + 15));
  CHECK(norm <= 1e-8 * area);
}

TEST_CASE("sorted parallel output is byte-identical across rank counts") {
  for (const char* file : {"cube6.msh", "ico3_ball.msh"}) {
    std::map<int, std::string> outputs;
    for (int ranks : {1, 2, 4}) {
      const std::string out = "/tmp/curvtest_sorted_" + std::to_string(ranks) + ".txt";
      const RunResult r = run("--mesh " + fixture(file) + " --ranks " + std::to_string(ranks) +
                              " --test sorted --out " + out);
      CHECK(r.exitCode == 0);
      outputs[ranks] = slurp(out);
      CHECK(!outputs[ranks].empty());
    }
    CHECK(outputs[1] == outputs[2]);
    CHECK(outputs[1] == outputs[4]);
  }
}

TEST_CASE("datahandle mode echoes global indices on every protocol") {
  const RunResult r = run("--mesh " + fixture("fan3.msh") + " --ranks 3 --test datahandle");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("interior-border <-> interior-border") != std::string::npos);
  CHECK(r.output.find("all <-> all") != std::string::npos);
}

TEST_CASE("interior-boundary gauss test distinguishes inside from outside") {
  const RunResult r = run("--mesh " + fixture("ico3_shell.msh") +
                          " --ranks 2 --test gauss --surface-tag 10 --volume-tag 1"
                          " --charge 0,0,0 --charge 0,0,1.5 --abs-tol 1e-11");
  CHECK(r.exitCode == 0);
  std::istringstream lines(r.output);
  std::string line;
  bool sawInside = false, sawOutside = false;
  while (std::getline(lines, line)) {
    const auto at = line.find("flux = ");
    if (at == std::string::npos) continue;
    const double flux = std::stod(line.substr(at + 7));
    if (line.find("(0, 0, 0)") != std::string::npos) {
      CHECK(std::abs(flux / (4 * M_PI) - 1.0) <= 1e-4);
      sawInside = true;
    } else {
      CHECK(std::abs(flux) <= 1e-5);
      sawOutside = true;
    }
  }
  CHECK(sawInside);
  CHECK(sawOutside);
}

TEST_CASE("ghost construction can be switched off") {
  const RunResult r = run("--mesh " + fixture("twotet1.msh") + " --ranks 2 --ghosts off");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("ghosts 0") != std::string::npos);
}

TEST_CASE("boundary mode validates the closed interior surface") {
  const RunResult r = run("--mesh " + fixture("ico3_shell.msh") +
                          " --ranks 2 --test boundary --surface-tag 10 --volume-tag 1");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("local faces") != std::string::npos);
  std::istringstream lines(r.output);
  std::string line;
  while (std::getline(lines, line)) {
    const auto at = line.find("normal integral |.| = ");
    if (at == std::string::npos) continue;
    const double norm = std::stod(line.substr(at + 22));
    CHECK(norm <= 1e-7);
  }
}

TEST_CASE("vtu output lands in the requested directory") {
  const RunResult r = run("--mesh " + fixture("twotet1.msh") +
                          " --ranks 2 --vtu-out /tmp --refine 2 --codim 1100");
  CHECK(r.exitCode == 0);
  CHECK(slurp("/tmp/grid.pvtu").find("grid_p0001.vtu") != std::string::npos);
  std::remove("/tmp/grid.pvtu");
  std::remove("/tmp/grid_p0000.vtu");
  std::remove("/tmp/grid_p0001.vtu");
}

TEST_CASE("exit codes distinguish the failure classes") {
  CHECK(run("--mesh /nonexistent/mesh.msh").exitCode == 5);          // i/o
  CHECK(run("--unknown-flag").exitCode == 1);                        // usage

  std::ofstream bad("/tmp/curvtest_cli_bad.msh");
  bad << "$MeshFormat\n4.1 0 8\n$EndMeshFormat\n";
  bad.close();
  CHECK(run("--mesh /tmp/curvtest_cli_bad.msh").exitCode == 2);      // parse

  // unknown interior surface tag -> construction error
  CHECK(run("--mesh " + fixture("ico3_shell.msh") +
            " --ranks 1 --test boundary --surface-tag 99 --volume-tag 1")
            .exitCode == 3);
}
