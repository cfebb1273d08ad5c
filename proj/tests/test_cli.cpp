// End-to-end tests that drive the installed CLI binary.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, bool raw_command = false) {
  std::string cmd = raw_command ? args + " 2>&1"
                                : std::string(BJORTHO_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "bjortho_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_spec(const std::string& name, const std::string& content) {
  fs::path p = temp_dir() / name;
  std::ofstream(p) << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli check: the max-norm asymmetry pair") {
  fs::path spec = write_spec("linf.json", R"({"kind":"lp","p":"inf","dim":2,"field":"real"})");
  RunResult fwd = run_cli("--spec " + spec.string() + " check --x 1,1 --y 1,0");
  CHECK(fwd.exit_code == 0);
  json j = json::parse(fwd.out);
  CHECK(j["schema"] == "bjortho/1");
  CHECK(j["orthogonal"] == true);
  CHECK(std::abs(j["min_value"].get<double>() - 1.0) < 1e-9);

  RunResult rev = run_cli("--spec " + spec.string() + " check --x 1,0 --y 1,1");
  CHECK(rev.exit_code == 0);
  json jr = json::parse(rev.out);
  CHECK(jr["orthogonal"] == false);
  CHECK(std::abs(jr["min_value"].get<double>() - 0.5) < 1e-6);
}

TEST_CASE("cli detect dimension") {
  fs::path spec = write_spec("l3d4.json", R"({"kind":"lp","p":3.0,"dim":4,"field":"real"})");
  RunResult r = run_cli("--spec " + spec.string() + " detect --property dimension");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["dimension"] == 4);
}

TEST_CASE("cli graph: zero samples still writes valid artifacts") {
  fs::path spec = write_spec("l2.json", R"({"kind":"lp","p":2.0,"dim":2,"field":"real"})");
  fs::path dot = temp_dir() / "empty.dot";
  fs::path gj = temp_dir() / "empty.json";
  RunResult r = run_cli("--spec " + spec.string() + " graph --samples 0 --out " + dot.string() +
                        " --report " + gj.string());
  CHECK(r.exit_code == 0);
  json summary = json::parse(r.out);
  CHECK(summary["n_vertices"] == 0);
  CHECK(summary["n_edges"] == 0);
  std::string dot_text = slurp(dot);
  CHECK(dot_text.find("digraph") != std::string::npos);
  json graph = json::parse(slurp(gj));
  CHECK(graph["vertices"].empty());
  CHECK(graph["edges"].empty());
}

TEST_CASE("cli determinism: identical configs give byte-identical artifacts") {
  fs::path spec = write_spec("l3.json", R"({"kind":"lp","p":3.0,"dim":3,"field":"real"})");
  std::string args = "--spec " + spec.string() + " --seed 7 auerbach";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  fs::path g1 = temp_dir() / "g1.json";
  fs::path g2 = temp_dir() / "g2.json";
  std::string gargs = "--spec " + spec.string() + " --seed 9 graph --samples 25 --report ";
  CHECK(run_cli(gargs + g1.string()).exit_code == 0);
  CHECK(run_cli(gargs + g2.string()).exit_code == 0);
  CHECK(slurp(g1) == slurp(g2));
}

TEST_CASE("cli graph output does not depend on the worker count") {
  fs::path spec = write_spec("l3w.json", R"({"kind":"lp","p":3.0,"dim":3,"field":"real"})");
  fs::path g1 = temp_dir() / "t1.json";
  fs::path g2 = temp_dir() / "t2.json";
  std::string tail = " --seed 5 graph --samples 30 --report ";
  CHECK(run_cli("--spec " + spec.string() + tail + g1.string()).exit_code == 0);
  RunResult r2 = run_cli("env BJORTHO_THREADS=1 " + std::string(BJORTHO_CLI_PATH) + " --spec " +
                             spec.string() + tail + g2.string(),
                         true);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(g1) == slurp(g2));
}

TEST_CASE("cli errors: unreadable and invalid specs are one-line coded") {
  RunResult miss = run_cli("--spec /nonexistent.json check --x 1,0 --y 0,1");
  CHECK(miss.exit_code == 1);
  CHECK(miss.out.find("error code=io") != std::string::npos);

  fs::path bad = write_spec("bad.json", R"({"kind":"lp","p":0.2,"dim":2})");
  RunResult r = run_cli("--spec " + bad.string() + " check --x 1,0 --y 0,1");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("error code=bad_spec") != std::string::npos);

  fs::path spec = write_spec("l2b.json", R"({"kind":"lp","p":2.0,"dim":2,"field":"real"})");
  RunResult dim = run_cli("--spec " + spec.string() + " check --x 1,0,0 --y 0,1,0");
  CHECK(dim.exit_code == 1);
  CHECK(dim.out.find("error code=dim_mismatch") != std::string::npos);
}

TEST_CASE("cli exit code 2 on property witnesses") {
  fs::path spec = write_spec("linf2.json", R"({"kind":"lp","p":"inf","dim":2,"field":"real"})");
  RunResult rot = run_cli("--spec " + spec.string() + " detect --property rotund --trials 5000");
  CHECK(rot.exit_code == 2);
  CHECK(json::parse(rot.out)["strictly_convex"] == false);

  RunResult smooth = run_cli("--spec " + spec.string() + " detect --property smooth");
  CHECK(smooth.exit_code == 2);
  CHECK(json::parse(smooth.out)["smooth"] == false);

  fs::path l2 = write_spec("l2c.json", R"({"kind":"lp","p":2.0,"dim":3,"field":"real"})");
  RunResult sym = run_cli("--spec " + l2.string() + " detect --property symmetric --pairs 200");
  CHECK(sym.exit_code == 0);
  CHECK(json::parse(sym.out)["symmetric"] == true);
}

TEST_CASE("cli complex vectors parse re+imi syntax") {
  fs::path spec = write_spec("c2.json", R"({"kind":"lp","p":2.0,"dim":2,"field":"complex"})");
  RunResult r = run_cli("--spec " + spec.string() + " check --x 1+2i,0 --y 0,-i");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["orthogonal"] == true);

  RunResult s = run_cli("--spec " + spec.string() + " support --x i,0");
  json js = json::parse(s.out);
  CHECK(std::abs(js["coeffs"][0][1].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("cli tolerance overrides reach the verdict") {
  fs::path spec = write_spec("linf3.json", R"({"kind":"lp","p":"inf","dim":2,"field":"real"})");
  // (1,0) vs (1,1) has margin -0.5; an absurdly loose margin flips the verdict
  RunResult strict = run_cli("--spec " + spec.string() + " check --x 1,0 --y 1,1");
  CHECK(json::parse(strict.out)["orthogonal"] == false);
  RunResult loose =
      run_cli("--spec " + spec.string() + " --eps-orth 0.9 check --x 1,0 --y 1,1");
  CHECK(json::parse(loose.out)["orthogonal"] == true);
}

TEST_CASE("cli thales and fp-path") {
  fs::path spec = write_spec("l4.json", R"({"kind":"lp","p":4.0,"dim":2,"field":"real"})");
  RunResult t = run_cli("--spec " + spec.string() + " thales --x 1,0 --y 0,1 --lambda0 1");
  CHECK(t.exit_code == 0);
  json jt = json::parse(t.out);
  CHECK(jt["residual"].get<double>() < 1e-6);
  CHECK(jt["orthogonal"] == true);

  fs::path csv = temp_dir() / "walk.csv";
  RunResult f = run_cli("fp-path --p 3 --start 1,0 --steps 4 --csv " + csv.string());
  CHECK(f.exit_code == 0);
  json jf = json::parse(f.out);
  CHECK(jf["two_cycle"] == true);
  CHECK(jf["revisit_step"] == 2);
  std::string text = slurp(csv);
  CHECK(text.substr(0, 17) == "step,x,y,line_id\n");
}
