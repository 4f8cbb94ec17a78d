// End-to-end checks of the installed command line tool: golden-file byte
// comparisons for every preset, the exit-code contract, and the output
// precision env var. The binary path and golden directory come in through
// compile definitions so the test works from any build directory.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <fluctoptics/io.hpp>

namespace fs = std::filesystem;
using fluctoptics::io::read_file;
using fluctoptics::io::write_file;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "fluctoptics_cli_io";
  fs::create_directories(dir);
  const std::string out = (dir / ("out" + std::to_string(++counter))).string();
  const std::string err = out + ".err";
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string(FLUCTOPTICS_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
  const int rc = std::system(cmd.c_str());
  CliResult r;
  if (rc != -1 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

std::string golden(const std::string& name) {
  return read_file(std::string(FLUCTOPTICS_GOLDEN_DIR) + "/" + name);
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("fluctoptics_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const fs::path& dir, const std::string& text) {
  const std::string path = (dir / "config.ini").string();
  write_file(path, text);
  return path;
}

}  // namespace

TEST_CASE("version and help run clean") {
  CliResult r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("presets listing matches the golden bytes") {
  CliResult r = run_cli("presets");
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out == golden("presets_stdout.txt"));
}

TEST_CASE("validate reports the canonical config hash") {
  CliResult r = run_cli("validate --preset cdgeas2-squeezed");
  CHECK(r.code == 0);
  CHECK(r.out == golden("validate_cdgeas2-squeezed.txt"));
}

TEST_CASE("validate --dump emits the canonical config") {
  CliResult r = run_cli("validate --preset fig2 --dump");
  CHECK(r.code == 0);
  CHECK(r.out == golden("fig2_dump.ini"));
  // The dump round-trips: feeding it back validates to the same hash.
  const auto dir = fresh_dir("dump");
  const std::string cfg = write_config(dir, r.out);
  CliResult round = run_cli("validate --config " + cfg);
  CHECK(round.code == 0);
  CHECK(round.out == golden("validate_fig2.txt"));
  fs::remove_all(dir);
}

TEST_CASE("e2 output for the squeezed preset is byte-stable") {
  const auto dir = fresh_dir("e2");
  CliResult r = run_cli("e2 --preset cdgeas2-squeezed --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("wrote ") != std::string::npos);
  CHECK(read_file((dir / "cdgeas2-squeezed.csv").string()) ==
        golden("cdgeas2-squeezed_e2.csv"));
  fs::remove_all(dir);
}

TEST_CASE("birefringence output in both formats is byte-stable") {
  const auto dir = fresh_dir("bire");
  CliResult r = run_cli("birefringence --preset cdgeas2-squeezed --format both --out " +
                        dir.string());
  CHECK(r.code == 0);
  CHECK(read_file((dir / "cdgeas2-squeezed.csv").string()) ==
        golden("cdgeas2-squeezed_birefringence.csv"));
  CHECK(read_file((dir / "cdgeas2-squeezed.json").string()) ==
        golden("cdgeas2-squeezed_birefringence.json"));
  fs::remove_all(dir);
}

TEST_CASE("ambient outputs are byte-stable") {
  const auto dir = fresh_dir("ambient");
  CHECK(run_cli("ambient --preset thermal-2600 --out " + dir.string()).code == 0);
  CHECK(read_file((dir / "thermal-2600.csv").string()) == golden("thermal-2600.csv"));
  CHECK(run_cli("ambient --preset casimir-sweep --out " + dir.string()).code == 0);
  CHECK(read_file((dir / "casimir-sweep.csv").string()) == golden("casimir-sweep.csv"));
  fs::remove_all(dir);
}

TEST_CASE("propagation outputs are byte-stable") {
  const auto dir = fresh_dir("prop");
  CliResult r = run_cli("propagate --preset fig2 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(read_file((dir / "fig2_snapshots.csv").string()) ==
        golden("fig2_snapshots.csv"));
  CHECK(read_file((dir / "fig2_spectrum.csv").string()) ==
        golden("fig2_spectrum.csv"));
  fs::remove_all(dir);
}

TEST_CASE("precision env var shortens the rendered digits") {
  const auto dir = fresh_dir("prec");
  CliResult r = run_cli("e2 --preset cdgeas2-squeezed --out " + dir.string(),
                        "FLUCTOPTICS_PRECISION=6");
  CHECK(r.code == 0);
  CHECK(read_file((dir / "cdgeas2-squeezed.csv").string()) ==
        golden("cdgeas2-squeezed_e2_p6.csv"));
  fs::remove_all(dir);
}

TEST_CASE("bad precision env var is a config error") {
  CliResult r = run_cli("e2 --preset cdgeas2-squeezed", "FLUCTOPTICS_PRECISION=abc");
  CHECK(r.code == 2);
  CHECK(r.err.find("config error:") != std::string::npos);
  CHECK(run_cli("presets", "FLUCTOPTICS_PRECISION=0").code == 2);
  CHECK(run_cli("presets", "FLUCTOPTICS_PRECISION=18").code == 2);
}

TEST_CASE("config problems exit 2 with diagnostics on stderr") {
  const auto dir = fresh_dir("cfg2");
  // Unknown key.
  std::string cfg = write_config(
      dir,
      "name = x\n\n[state]\ntype = thermal\n\n"
      "[sweep]\naxis = T\nfrom = 0\nto = 1\npoints = 2\nwibble = 3\n");
  CliResult r = run_cli("ambient --config " + cfg);
  CHECK(r.code == 2);
  CHECK(r.err.find("config error:") != std::string::npos);
  // Empty config points at the missing state section.
  cfg = write_config(dir, "");
  r = run_cli("validate --config " + cfg);
  CHECK(r.code == 2);
  CHECK(r.err.find("[state]") != std::string::npos);
  // Command/state mismatch.
  r = run_cli("e2 --preset thermal-2600");
  CHECK(r.code == 2);
  CHECK(r.err.find("ambient command") != std::string::npos);
  // Unknown preset.
  r = run_cli("e2 --preset nope");
  CHECK(r.code == 2);
  // Config and preset together, or neither.
  r = run_cli("e2 --preset fig2 --config " + cfg);
  CHECK(r.code == 2);
  CHECK(run_cli("e2").code == 2);
  fs::remove_all(dir);
}

TEST_CASE("missing files exit 66") {
  CliResult r = run_cli("e2 --config /nonexistent/nope.ini");
  CHECK(r.code == 66);
  CHECK(r.err.find("file error:") != std::string::npos);
  // A config referencing a missing material file also fails as a file error.
  const auto dir = fresh_dir("cfg66");
  const std::string cfg = write_config(
      dir,
      "name = x\n\n[material]\nfile = /nonexistent/material.mat\n\n"
      "[state]\ntype = squeezed_beam\nq = 1\n\n"
      "[sweep]\naxis = t\nfrom = 0\nto = 1\npoints = 2\n");
  r = run_cli("validate --config " + cfg);
  CHECK(r.code == 66);
  fs::remove_all(dir);
}

TEST_CASE("numerical aborts exit 1 with a diagnostic") {
  const auto dir = fresh_dir("num1");
  // dt far above the stability bound passes static validation (it is a
  // positive number) and dies in the integrator.
  const std::string cfg = write_config(
      dir,
      "name = unstable\n\n[state]\ntype = squeezed_beam\nq = 1\n\n"
      "[sweep]\naxis = t\nfrom = 0\nto = 1\npoints = 2\n\n"
      "[solver]\ndt = 0.1\n");
  CliResult r = run_cli("propagate --config " + cfg + " --out " + dir.string());
  CHECK(r.code == 1);
  CHECK(r.err.find("numerical error:") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("repeated runs are byte-identical") {
  const auto a = fresh_dir("rep_a");
  const auto b = fresh_dir("rep_b");
  CHECK(run_cli("birefringence --preset cdgeas2-squeezed --out " + a.string()).code == 0);
  CHECK(run_cli("birefringence --preset cdgeas2-squeezed --out " + b.string()).code == 0);
  CHECK(read_file((a / "cdgeas2-squeezed.csv").string()) ==
        read_file((b / "cdgeas2-squeezed.csv").string()));
  fs::remove_all(a);
  fs::remove_all(b);
}
