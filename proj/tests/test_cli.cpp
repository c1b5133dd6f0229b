#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the installed binary with stderr folded into stdout.
RunResult run(const std::string& args) {
  std::string cmd = std::string(MONADPRESERVE_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(MONPRES_DATA_DIR) + "/" + rel; }

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("check").code == 2);
  CHECK(run("check frobnicate " + data("theories/linear.thy")).code == 2);
  CHECK(run("classify /nonexistent.thy").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("classify prints the flag table") {
  RunResult r = run("classify " + data("theories/dup.thy"));
  CHECK(r.code == 0);
  CHECK(r.out.find("linear") != std::string::npos);
  CHECK(r.out.find("2-discerning") != std::string::npos);
  CHECK(r.out.find("Discerning") != std::string::npos);
  CHECK(r.out.find("NotDiscerning") != std::string::npos);

  RunResult lin = run("classify " + data("theories/linear.thy") + " --json");
  CHECK(lin.code == 0);
  CHECK(lin.out.find("\"linear\": true") != std::string::npos);
}

TEST_CASE("check exit codes signal the verdict") {
  // A dropping equation breaks over the powerset at two points.
  RunResult violated = run("check powerset " + data("theories/drop.thy") + " --max-carrier 2");
  CHECK(violated.code == 1);
  CHECK(violated.out.find("Violated") != std::string::npos);
  CHECK(violated.out.find("witness") != std::string::npos);

  RunResult clean = run("check powerset " + data("theories/linear.thy") + " --max-carrier 2");
  CHECK(clean.code == 0);
  CHECK(clean.out.find("PreservedUpToBound") != std::string::npos);

  RunResult starved =
      run("check powerset " + data("theories/linear.thy") + " --max-carrier 2 --budget 1");
  CHECK(starved.code == 3);
  CHECK(starved.out.find("Unknown") != std::string::npos);

  // The sampleable tier needs --randomized.
  RunResult guarded = run("check dist " + data("theories/linear.thy"));
  CHECK(guarded.code == 2);
}

TEST_CASE("identical configurations produce identical json") {
  std::string cmd = "check powerset " + data("theories/dup.thy") + " --max-carrier 2 --json";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());

  std::string jcmd = "check powerset " + data("theories/dup.thy") + " --max-carrier 2 --json";
  RunResult serial = run(jcmd + " --jobs 1");
  RunResult parallel = run(jcmd + " --jobs 4");
  CHECK(serial.out == parallel.out);

  std::string rand_cmd =
      "check dist " + data("theories/linear.thy") + " --randomized --seed 9 --max-carrier 2 --json";
  RunResult ra = run(rand_cmd);
  RunResult rb = run(rand_cmd);
  CHECK(ra.out == rb.out);

  std::string props_cmd = "props powerset --n-relevance 2,3 --json";
  RunResult pa = run(props_cmd);
  RunResult pb = run(props_cmd);
  CHECK(pa.out == pb.out);
}

TEST_CASE("props reports the structural verdicts") {
  RunResult p = run("props powerset --n-relevance 2,3");
  CHECK(p.code == 0);
  CHECK(p.out.find("affine: No") != std::string::npos);
  CHECK(p.out.find("relevant: No") != std::string::npos);

  RunResult m = run("props maybe");
  CHECK(m.code == 0);
  CHECK(m.out.find("affine: No") != std::string::npos);
  CHECK(m.out.find("relevant: Yes") != std::string::npos);

  RunResult d = run("props dist --json");
  CHECK(d.code == 0);
  CHECK(d.out.find("\"algebraic_relevance\": null") != std::string::npos);

  RunResult w = run("props writer:" + data("monoids/z2.json") + " --n-relevance 2,3");
  CHECK(w.code == 0);
  CHECK(w.out.find("2-relevant: No") != std::string::npos);
  CHECK(w.out.find("3-relevant: Yes") != std::string::npos);

  RunResult ms = run("props multiset:" + data("semirings/f2.json"));
  CHECK(ms.code == 0);
  CHECK(ms.out.find("affine: No") != std::string::npos);
}

TEST_CASE("monoid triviality verdicts") {
  RunResult t = run("monoid " + data("presentations/trivial-a.txt"));
  CHECK(t.code == 0);
  CHECK(t.out.find("Trivial") != std::string::npos);

  RunResult z = run("monoid " + data("presentations/z2.txt"));
  CHECK(z.code == 0);
  CHECK(z.out.find("NonTrivial") != std::string::npos);

  RunResult f = run("monoid " + data("presentations/free-a.txt") + " --budget 10 --model-bound 1");
  CHECK(f.code == 3);
  CHECK(f.out.find("Unknown") != std::string::npos);
}

TEST_CASE("reproduce runs a criterion subset") {
  RunResult r = run("reproduce --only 3 --json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"all_passed\": true") != std::string::npos);
  CHECK(r.out.find("\"seconds\"") == std::string::npos);

  RunResult text = run("reproduce --only 3");
  CHECK(text.code == 0);
  CHECK(text.out.find("[PASS]") != std::string::npos);
}
