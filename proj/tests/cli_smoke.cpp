// End-to-end exercises of the command-line tool: exit codes, byte-stable
// output, kernel equivalence, and output-directory redirection.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string g_cli;
fs::path g_scratch;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::fprintf(stderr, "smoke failure: %s\n", what.c_str());
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

// envPrefix is prepended verbatim, e.g. "SETFAM_OUT_DIR='/tmp/x' ".
RunResult run_with(const std::string& env_prefix, const std::string& args) {
  const fs::path out_path = g_scratch / "stdout.txt";
  const fs::path err_path = g_scratch / "stderr.txt";
  const std::string cmd = env_prefix + "'" + g_cli + "' " + args + " > '" +
                          out_path.string() + "' 2> '" + err_path.string() +
                          "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

RunResult run(const std::string& args) { return run_with("", args); }

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

void test_construct() {
  const RunResult r = run("construct --kind a-star --n 4");
  expect(r.code == 0, "a-star n=4 exit code");
  expect(r.out == "{\"n\":4,\"sets\":[[2,3],[1,4]]}\n",
         "a-star n=4 bytes, got: " + r.out);
  expect(r.err.find("residues: r=1") != std::string::npos,
         "a-star n=4 residue echo, got: " + r.err);

  const RunResult rk = run("construct --kind a-star-k --n 5 --k 2");
  expect(rk.code == 0, "a-star-k exit code");
  expect(rk.out == "{\"n\":5,\"sets\":[[1,4]]}\n",
         "a-star-k n=5 k=2 bytes, got: " + rk.out);
  expect(rk.err.find("residues: r=0,2") != std::string::npos,
         "a-star-k residue echo, got: " + rk.err);

  const RunResult rm = run("construct --kind middle-layers --n 6 --p 0 --q 1");
  expect(rm.code == 0, "middle-layers exit code");
  expect(rm.out.find("\"n\":6") != std::string::npos, "middle-layers n");

  const RunResult rg =
      run("construct --kind greedy --n 6 --spec diff:1 --seed 3");
  expect(rg.code == 0, "greedy exit code");
  const RunResult rg2 =
      run("construct --kind greedy --n 6 --spec diff:1 --seed 3");
  expect(rg.out == rg2.out, "greedy determinism");

  expect(run("construct --kind greedy --n 6").code == 2,
         "greedy without --spec is a usage error");
  expect(run("construct --kind bogus --n 6").code == 2,
         "unknown kind is a usage error");
  expect(run("construct --kind a-star").code == 2,
         "missing required --n is a usage error");
}

void test_check() {
  const fs::path good = g_scratch / "good.json";
  const fs::path bad = g_scratch / "bad.json";
  write_file(good, "{\"n\":4,\"sets\":[[2,3],[1,4]]}\n");
  write_file(bad, "{\"n\":4,\"sets\":[[1],[1,2],[1,3]]}\n");

  const RunResult ok = run("check '" + good.string() + "' --spec diff:1");
  expect(ok.code == 0, "valid family exit code");
  expect(ok.out == "ok\n", "valid family prints ok");

  const RunResult first = run("check '" + bad.string() + "' --spec diff:1");
  expect(first.code == 1, "violating family exit code");
  expect(first.out.find("violation:") == 0, "violation line prefix");

  const RunResult all =
      run("check '" + bad.string() + "' --spec diff:1 --all");
  expect(all.code == 1, "violating family exit code under --all");
  int lines = 0;
  for (char c : all.out) lines += c == '\n' ? 1 : 0;
  expect(lines >= 2, "--all lists multiple pairs, got: " + all.out);

  expect(run("check '" + good.string() + "' --spec nope:1").code == 2,
         "bad spec is a usage error");
  expect(run("check '" + (g_scratch / "missing.json").string() +
             "' --spec diff:1")
                 .code == 3,
         "missing family file is an io error");
}

void test_search() {
  const RunResult ex = run("search --n 2 --spec diff:1 --method exhaustive");
  expect(ex.code == 0, "exhaustive exit code");
  expect(ex.out ==
             "{\"nodes_explored\":16,\"optimum\":2,\"proven_optimal\":true,"
             "\"witness\":{\"n\":2,\"sets\":[[],[1,2]]}}\n",
         "exhaustive n=2 bytes, got: " + ex.out);

  const RunResult bb = run("search --n 6 --spec diff:1");
  expect(bb.code == 0, "branch-and-bound exit code");
  expect(bb.out.find("\"optimum\":8") != std::string::npos,
         "n=6 optimum, got: " + bb.out);
  expect(bb.out.find("\"proven_optimal\":true") != std::string::npos,
         "n=6 proven");

  const RunResult star = run("search --n 8 --spec meet:0 --layer 3");
  expect(star.code == 0, "layered search exit code");
  expect(star.out.find("\"optimum\":21") != std::string::npos,
         "intersecting 3-sets optimum, got: " + star.out);

  const fs::path warm = g_scratch / "warm.json";
  write_file(warm, run("construct --kind a-star --n 7").out);
  const RunResult warmed =
      run("search --n 7 --spec diff:1 --warm-start '" + warm.string() + "'");
  expect(warmed.code == 0, "warm-started search exit code");
  expect(warmed.out.find("\"optimum\":9") != std::string::npos,
         "warm-started n=7 optimum, got: " + warmed.out);

  expect(run("search --n 5 --spec diff:1 --method exhaustive").code == 2,
         "exhaustive beyond n=4 is rejected");
  expect(run("search --n 4 --spec diff:1 --layers 2x3").code == 2,
         "malformed --layers is a usage error");
}

void test_sample_chains_and_estimates() {
  const RunResult a = run("sample-chains --n 12 --samples 2 --seed 5");
  const RunResult b = run("sample-chains --n 12 --samples 2 --seed 5");
  const RunResult c = run("sample-chains --n 12 --samples 2 --seed 6");
  expect(a.code == 0, "sample-chains exit code");
  expect(a.out == b.out, "sample-chains determinism");
  expect(a.out != c.out, "sample-chains seed sensitivity");
  expect(a.out.find("\"split\":{\"n\":12,\"m\":11}") != std::string::npos,
         "sample-chains split echo");
  int lines = 0;
  for (char ch : a.out) lines += ch == '\n' ? 1 : 0;
  expect(lines == 2, "one line per sample");

  const fs::path fam = g_scratch / "astar12.json";
  write_file(fam, run("construct --kind a-star --n 12").out);

  const RunResult withfam = run("sample-chains --n 12 --samples 3 --family '" +
                                fam.string() + "'");
  expect(withfam.code == 0, "sample-chains with family exit code");
  expect(withfam.out.find("\"sum_x\":") != std::string::npos,
         "incidence fields present");

  const RunResult est =
      run("estimate '" + fam.string() + "' --samples 2000 --seed 4");
  expect(est.code == 0, "estimate exit code");
  expect(est.out.find("\"samples\":2000") != std::string::npos,
         "estimate samples echo");
  expect(est.out.find("\"seed\":4") != std::string::npos,
         "estimate seed echo");
  const RunResult est2 =
      run("estimate '" + fam.string() + "' --samples 2000 --seed 4");
  expect(est.out == est2.out, "estimate determinism");

  const fs::path viol = g_scratch / "viol.json";
  write_file(viol, "{\"n\":12,\"sets\":[[1,2,3,4,5,6],[1,2,3,4,5,7]]}\n");
  const RunResult pre = run("estimate '" + viol.string() + "' --samples 10");
  expect(pre.code == 1, "estimate rejects violating family with exit 1");
  expect(pre.out.find("violation:") == 0, "estimate prints the violation");

  const fs::path blockfam = g_scratch / "block.json";
  write_file(blockfam, "{\"n\":6,\"sets\":[[1,2,5,6]]}\n");
  const RunResult blk =
      run("block-estimate '" + blockfam.string() + "' --k 2 --samples 2000");
  expect(blk.code == 0, "block-estimate exit code");
  expect(blk.out.find("\"k\":2") != std::string::npos, "block k echo");
  expect(blk.out.find("\"ceiling\":{\"constant\":\"d_4\"") !=
             std::string::npos,
         "block ceiling present, got: " + blk.out);
  const fs::path blockviol = g_scratch / "blockviol.json";
  write_file(blockviol, "{\"n\":6,\"sets\":[[1,2,5,6],[1,2,3,4]]}\n");
  const RunResult blkviol =
      run("block-estimate '" + blockviol.string() + "' --k 2 --samples 10");
  expect(blkviol.code == 1, "block-estimate difference-2 pair exits 1");
  expect(blkviol.out.find("violation:") == 0,
         "block-estimate prints the violation");

  const fs::path badshape = g_scratch / "badshape.json";
  write_file(badshape, "{\"n\":6,\"sets\":[[1,2,3]]}\n");
  const RunResult blkbad =
      run("block-estimate '" + badshape.string() + "' --k 2 --samples 10");
  expect(blkbad.code == 2, "block-estimate structural rejection is usage");
}

void test_kernel_equivalence() {
  // auto picks the widest available table; scalar is the reference.  The
  // bytes must match exactly on every subcommand that computes anything.
  const std::string cmds[] = {
      "construct --kind a-star --n 10",
      "construct --kind greedy --n 8 --spec diff:1,meet:0 --seed 2",
      "search --n 6 --spec symdiff:2",
      "report --table ratios --n-max 8",
  };
  for (const std::string& cmd : cmds) {
    const RunResult scalar = run("--kernel scalar " + cmd);
    const RunResult wide = run("--kernel auto " + cmd);
    expect(scalar.code == 0, "scalar run of: " + cmd);
    expect(wide.code == 0, "auto run of: " + cmd);
    expect(scalar.out == wide.out, "kernel-stable bytes for: " + cmd);
  }
}

void test_report_and_out_dir() {
  const RunResult rep = run("report --table ratios --n-max 6");
  expect(rep.code == 0, "report exit code");
  expect(rep.out.find(
             "n,spec,label,size,central_binomial,normalized_ratio,extra\n") ==
             0,
         "report header");
  expect(rep.out.find("6,diff:1,search,") != std::string::npos,
         "report search row for n=6");

  const RunResult js = run("report --table ratios --n-max 4 --format json");
  expect(js.code == 0, "json report exit code");
  expect(js.out.find("\"label\":\"a-star\"") != std::string::npos,
         "json report labels");

  expect(run("report --table bogus").code == 2, "unknown table");
  expect(run("report --table ratios --n-max 1").code == 2, "n-max too small");

  const fs::path outdir = g_scratch / "outdir";
  fs::create_directories(outdir);
  const RunResult red =
      run_with("SETFAM_OUT_DIR='" + outdir.string() + "' ",
               "construct --kind a-star --n 4 --out fam.json");
  expect(red.code == 0, "redirected construct exit code");
  expect(red.out.empty(), "redirected construct writes nothing to stdout");
  expect(slurp(outdir / "fam.json") == "{\"n\":4,\"sets\":[[2,3],[1,4]]}\n",
         "redirected construct file bytes");

  const fs::path abso = g_scratch / "abs.json";
  const RunResult absolute =
      run_with("SETFAM_OUT_DIR='" + outdir.string() + "' ",
               "construct --kind a-star --n 4 --out '" + abso.string() + "'");
  expect(absolute.code == 0, "absolute --out exit code");
  expect(fs::exists(abso), "absolute --out ignores the env directory");

  expect(run("construct --kind a-star --n 4 --out '" +
             (g_scratch / "no" / "dir.json").string() + "'")
                 .code == 3,
         "unwritable --out is an io error");
}

void test_misc_usage() {
  expect(run("").code == 2, "no subcommand is a usage error");
  expect(run("--help").code == 0, "--help exits zero");
  expect(run("frobnicate").code == 2, "unknown subcommand");
  expect(run("--kernel bogus construct --kind a-star --n 4").code == 2,
         "unknown kernel name rejected by the parser");
  expect(run("--kernel scalar construct --kind a-star --n 4").code == 0,
         "scalar kernel accepted");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_smoke PATH_TO_SETFAM\n");
    return 2;
  }
  g_cli = argv[1];
  g_scratch = fs::temp_directory_path() / "setfam_cli_smoke";
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  test_construct();
  test_check();
  test_search();
  test_sample_chains_and_estimates();
  test_kernel_equivalence();
  test_report_and_out_dir();
  test_misc_usage();

  fs::remove_all(g_scratch);
  if (g_failures == 0) {
    std::printf("cli smoke: all checks passed\n");
    return 0;
  }
  std::printf("cli smoke: %d failures\n", g_failures);
  return 1;
}
