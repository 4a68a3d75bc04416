#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const std::string err_path = "/tmp/lieherm_cli_stderr.txt";
  const std::string cmd = std::string(LIEHERM_CLI_PATH) + " " + args + " 2>" + err_path;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path);
  result.err.assign(std::istreambuf_iterator<char>(err), std::istreambuf_iterator<char>());
  return result;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("catalog lists the builtins") {
  const RunResult r = run_cli("catalog");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("kodaira_thurston") != std::string::npos);
  CHECK(r.out.find("abelian_<k>") != std::string::npos);
}

TEST_CASE("certify complex_heisenberg succeeds under --assume-salamon") {
  const RunResult r = run_cli("certify --builtin complex_heisenberg --assume-salamon");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"conclusion\":\"flat_complex_group\"") != std::string::npos);

  const RunResult without = run_cli("certify --builtin complex_heisenberg");
  CHECK(without.exit_code == 2);
  CHECK(without.err.find("assume-salamon") != std::string::npos);
}

TEST_CASE("certify the real-mode catalog") {
  const RunResult iwa = run_cli("certify --builtin iwasawa_real6");
  CHECK(iwa.exit_code == 0);
  CHECK(iwa.out.find("\"conclusion\":\"flat_complex_group\"") != std::string::npos);

  const RunResult kt = run_cli("certify --builtin kodaira_thurston");
  CHECK(kt.exit_code == 1);
  CHECK(kt.out.find("\"conclusion\":\"refuted_constant_h\"") != std::string::npos);
}

TEST_CASE("analyze kodaira_thurston reports the negative verdict") {
  const RunResult r = run_cli("analyze --builtin kodaira_thurston");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("\"is_constant\":false") != std::string::npos);
  CHECK(r.out.find("\"kahler\":false") != std::string::npos);
  CHECK(r.out.find("\"chern_flat\":false") != std::string::npos);
  CHECK(r.out.find("\"complex_group\":false") != std::string::npos);
}

TEST_CASE("validate passes on the catalog and fails with a named identity") {
  CHECK(run_cli("validate --builtin abelian_2").exit_code == 0);

  const std::string path = write_temp("broken_jacobi.lha.json", R"({
    "schema": 1, "mode": "real", "name": "broken",
    "dim_real": 4,
    "brackets": [[1, 2, 3, 1.0], [2, 4, 2, 1.0]],
    "J": [[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]],
    "g": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]
  })");
  const RunResult r = run_cli("validate " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("real_jacobi") != std::string::npos);
  // the report is still emitted for inspection
  CHECK(r.out.find("\"overall\":false") != std::string::npos);
}

TEST_CASE("exactly one input source is required") {
  CHECK(run_cli("validate").exit_code == 2);
  const std::string path = write_temp("minimal.lha.json", R"({
    "schema": 1, "mode": "real", "name": "minimal", "dim_real": 2,
    "brackets": [], "J": [[0,-1],[1,0]], "g": [[1,0],[0,1]]
  })");
  CHECK(run_cli("validate --builtin abelian_1 " + path).exit_code == 2);
  CHECK(run_cli("validate " + path).exit_code == 0);
}

TEST_CASE("malformed input maps to exit code 2 with an error object") {
  const std::string path = write_temp("malformed.lha.json", "{ not json");
  const RunResult r = run_cli("validate " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("\"exit_code\":2") != std::string::npos);
  CHECK(r.err.find("\"kind\":\"structural\"") != std::string::npos);

  const RunResult unknown = run_cli("analyze --builtin nope");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("available") != std::string::npos);
}

TEST_CASE("certify rejects non-nilpotent input") {
  const std::string path = write_temp("solvable.lha.json", R"({
    "schema": 1, "mode": "real", "name": "solvable2",
    "dim_real": 2, "brackets": [[1, 2, 2, 1.0]],
    "J": [[0,-1],[1,0]], "g": [[1,0],[0,1]]
  })");
  const RunResult r = run_cli("certify " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("nilpotent") != std::string::npos);
}

TEST_CASE("search exits by convergence and is byte-deterministic") {
  const RunResult ab = run_cli("search --builtin abelian_2 --restarts 2 --max-iters 5");
  CHECK(ab.exit_code == 0);
  CHECK(ab.out.find("\"converged\":true") != std::string::npos);

  const std::string args = "search --builtin kodaira_thurston --seed 3 --restarts 2 --max-iters 20";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  CHECK(first.exit_code == 1);
  CHECK(second.exit_code == 1);
  CHECK(first.out == second.out);
  CHECK(first.out.find("\"converged\":false") != std::string::npos);
}

TEST_CASE("search requires a real-mode document") {
  const RunResult r = run_cli("search --builtin complex_heisenberg --restarts 1 --max-iters 2");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("real-mode") != std::string::npos);
}

TEST_CASE("--output writes the report to a file") {
  const std::string out_path = "/tmp/lieherm_cli_report.json";
  std::remove(out_path.c_str());
  const RunResult r = run_cli("analyze --builtin abelian_2 --output " + out_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out_path);
  REQUIRE(in.good());
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body.find("\"is_constant\":true") != std::string::npos);
}
