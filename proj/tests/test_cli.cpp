#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "tracelearn/io.hpp"
#include "tracelearn/model.hpp"
#include "tracelearn/trace.hpp"

namespace fs = std::filesystem;
using namespace tracelearn;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "tracelearn_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  std::string cmd = std::string(CLI_BIN) + " " + args + " >" + out.string() +
                    " 2>" + err.string();
  int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out);
  result.err = read_file(err);
  return result;
}

// Shared corpus + model fixture, generated once through the binary itself.
struct CliFixture {
  fs::path traces = work_dir() / "traces";
  fs::path gpp_traces = work_dir() / "traces_gpp";
  fs::path model = work_dir() / "blocks.model";

  CliFixture() {
    REQUIRE(run("generate --out " + traces.string()).exit_code == 0);
    REQUIRE(run("generate --out " + gpp_traces.string() + " --inject-gpp")
                .exit_code == 0);
    REQUIRE(run("learn " + traces.string() + " -o " + model.string())
                .exit_code == 0);
  }
};

const CliFixture& fixture() {
  static CliFixture f;
  return f;
}

void write_state(const fs::path& path, const std::string& body) {
  write_file_atomic(path, body);
}

}  // namespace

TEST_CASE("generate writes the 120 canonical trace files") {
  const auto& f = fixture();
  int count = 0;
  for (const auto& entry : fs::directory_iterator(f.traces))
    if (entry.path().extension() == ".trace") ++count;
  CHECK(count == 120);

  BehavioralInstance inst =
      parse_trace(read_file(f.traces / "bw_101.trace"));
  CHECK(inst.id == "bw_101");
  CHECK(inst.step_count() == 4);

  // the injected variant differs only by the marker atom
  BehavioralInstance marked =
      parse_trace(read_file(f.gpp_traces / "bw_101.trace"));
  Atom gpp{"goal_preceding_prop", {}};
  CHECK(marked.states.front().props.count(gpp) == 1);
  CHECK(marked.final_state().props.count(gpp) == 0);
  CHECK(read_file(f.traces / "bw_101.trace")
            .find("goal_preceding_prop") == std::string::npos);
}

TEST_CASE("learn produces a loadable model and reports warnings") {
  const auto& f = fixture();
  LearnedModel model = parse_model(read_file(f.model));
  CHECK(model.schemas.size() == 1);
  CHECK(model.goals.goal.size() == 3);
  CHECK(model.precedence.mandatory.empty());

  // learning the marked corpus warns once and flags the marker as mandatory
  const fs::path gpp_model = work_dir() / "gpp.model";
  RunResult r = run("learn " + f.gpp_traces.string() + " -o " +
                    gpp_model.string());
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("look non-deterministic") != std::string::npos);
  CHECK(r.err.find("goal_preceding_prop") != std::string::npos);
  LearnedModel gpp = parse_model(read_file(gpp_model));
  CHECK(gpp.precedence.mandatory ==
        std::set<Atom>{Atom{"goal_preceding_prop", {}}});
}

TEST_CASE("learn rejects unusable inputs with the right exit codes") {
  const auto& f = fixture();
  const fs::path empty = work_dir() / "empty";
  fs::create_directories(empty);
  RunResult r = run("learn " + empty.string() + " -o " +
                    (work_dir() / "nope.model").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("empty corpus") != std::string::npos);

  const fs::path corrupt = work_dir() / "corrupt";
  fs::create_directories(corrupt);
  write_state(corrupt / "bad.trace", "behavior bad\nstate 0\n  p(X)\nend\n");
  r = run("learn " + corrupt.string() + " -o " +
          (work_dir() / "nope.model").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("bad.trace") != std::string::npos);

  // missing trace directory is an I/O failure
  r = run("learn " + (work_dir() / "no_such_dir").string() + " -o " +
          (work_dir() / "nope.model").string());
  CHECK(r.exit_code == 2);

  // unwritable output is an I/O failure
  r = run("learn " + f.traces.string() + " -o " +
          (work_dir() / "no_such_dir" / "deep" / "out.model").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("explain prints the report to stdout or a file") {
  const auto& f = fixture();
  RunResult r = run("explain " + f.model.string() + " " +
                    (f.traces / "bw_101.trace").string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("achieved(1, move(a,b,p2), {clear(b), on(a,p2)})") !=
        std::string::npos);
  CHECK(r.out.find("achieved(2, move(b,p1,c), {on(b,c)})") !=
        std::string::npos);
  CHECK(r.out.find("contributed(0, clear(a), move(a,c,b))") !=
        std::string::npos);
  CHECK(r.out.find("contributed(0, clear(b), move(a,c,b))") !=
        std::string::npos);

  const fs::path report = work_dir() / "bw_101.explain";
  RunResult r2 = run("explain " + f.model.string() + " " +
                     (f.traces / "bw_101.trace").string() + " -o " +
                     report.string());
  CHECK(r2.exit_code == 0);
  CHECK(read_file(report) == r.out);
}

TEST_CASE("explain warns about steps with no relevant effects") {
  const auto& f = fixture();
  // a lone move away from the finished stack: its products are never goals
  // and never consumed, so the action explains nothing
  const fs::path trace = work_dir() / "shuffle.trace";
  write_state(
      trace,
      "behavior shuffle\n"
      "state 0\n  block(a)\n  block(b)\n  block(c)\n  clear(a)\n  clear(p2)\n"
      "  clear(p3)\n  clear(p4)\n  eq(a,a)\n  eq(b,b)\n  eq(c,c)\n"
      "  eq(p1,p1)\n  eq(p2,p2)\n  eq(p3,p3)\n  eq(p4,p4)\n  on(a,b)\n"
      "  on(b,c)\n  on(c,p1)\n  place(a)\n  place(b)\n  place(c)\n"
      "  place(p1)\n  place(p2)\n  place(p3)\n  place(p4)\n"
      "action move(a,b,p2)\n"
      "state 1\n  block(a)\n  block(b)\n  block(c)\n  clear(a)\n  clear(b)\n"
      "  clear(p3)\n  clear(p4)\n  eq(a,a)\n  eq(b,b)\n  eq(c,c)\n"
      "  eq(p1,p1)\n  eq(p2,p2)\n  eq(p3,p3)\n  eq(p4,p4)\n  on(a,p2)\n"
      "  on(b,c)\n  on(c,p1)\n  place(a)\n  place(b)\n  place(c)\n"
      "  place(p1)\n  place(p2)\n  place(p3)\n  place(p4)\n"
      "end\n");
  RunResult r = run("explain " + f.model.string() + " " + trace.string());
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning: unexplained action move(a,b,p2) at state 0 of "
                   "shuffle (no relevant effects)") != std::string::npos);
  CHECK(r.out.find("achieved(0, move(a,b,p2), {})") != std::string::npos);

  // a trace using an action the model never saw is rejected
  const fs::path odd = work_dir() / "odd.trace";
  write_state(odd,
              "behavior odd\nstate 0\n  on(a,b)\naction jump(a)\n"
              "state 1\n  on(a,b)\nend\n");
  RunResult r2 = run("explain " + f.model.string() + " " + odd.string());
  CHECK(r2.exit_code == 1);
  CHECK(r2.err.find("no schema for action jump(a)") != std::string::npos);
}

TEST_CASE("plan finds the shortest route to the learned goal") {
  const auto& f = fixture();
  const fs::path state = work_dir() / "start.state";
  write_state(state,
              "state 0\n  on(a,c)\n  on(b,p1)\n  on(c,p3)\n  clear(a)\n"
              "  clear(b)\n  clear(p2)\n  clear(p4)\n");
  RunResult r = run("plan " + f.model.string() + " " + state.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "action move(a,c,p2)\naction move(b,p1,c)\naction move(a,p2,b)\n"
        "length 3\n");

  const fs::path plan_file = work_dir() / "start.plan";
  RunResult r2 = run("plan " + f.model.string() + " " + state.string() +
                     " -o " + plan_file.string());
  CHECK(r2.exit_code == 0);
  CHECK(read_file(plan_file) == r.out);
}

TEST_CASE("plan handles satisfied goals and exhausted bounds") {
  const auto& f = fixture();
  const fs::path done = work_dir() / "done.state";
  write_state(done,
              "state 0\n  on(a,b)\n  on(b,c)\n  on(c,p1)\n  clear(a)\n"
              "  clear(p2)\n  clear(p3)\n  clear(p4)\n");
  RunResult r = run("plan " + f.model.string() + " " + done.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "length 0\n");

  const fs::path state = work_dir() / "bounded.state";
  write_state(state,
              "state 0\n  on(a,c)\n  on(b,p1)\n  on(c,p3)\n  clear(a)\n"
              "  clear(b)\n  clear(p2)\n  clear(p4)\n");
  RunResult bounded =
      run("plan " + f.model.string() + " " + state.string() +
          " --max-steps 2");
  CHECK(bounded.exit_code == 3);
  CHECK(bounded.err.find("no plan within 2 steps") != std::string::npos);
  CHECK(bounded.out.empty());

  // malformed state file
  const fs::path bad = work_dir() / "bad.state";
  write_state(bad, "state 0\n  on(a,X)\n");
  RunResult broken = run("plan " + f.model.string() + " " + bad.string());
  CHECK(broken.exit_code == 1);
  CHECK(broken.err.find("bad.state") != std::string::npos);
}

TEST_CASE("pipeline writes the full artifact tree") {
  const fs::path out = work_dir() / "pipeline";
  RunResult r = run("pipeline --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "traces" / "bw_000.trace"));
  CHECK(fs::exists(out / "traces_gpp" / "bw_119.trace"));
  CHECK(fs::exists(out / "blocks.model"));
  CHECK(fs::exists(out / "blocks_gpp.model"));
  CHECK(fs::exists(out / "explanations" / "bw_101.explain"));
  CHECK(fs::exists(out / "plans" / "bw_101.plan"));

  const std::string summary = read_file(out / "summary.txt");
  CHECK(summary.find("behavior class: blocks (120 instances") !=
        std::string::npos);
  CHECK(summary.find("17 static atoms, 25 fluent atoms, 25 distinct "
                     "observed actions") != std::string::npos);
  CHECK(summary.find("on(b,c) -> on(a,b)") != std::string::npos);
  CHECK(summary.find("mandatory (clean corpus): {}") != std::string::npos);
  CHECK(summary.find("mandatory (injected corpus traces_gpp/): "
                     "{goal_preceding_prop}") != std::string::npos);
  CHECK(summary.find("example explanation (bw_101):") != std::string::npos);
  CHECK(summary.find("strictly shorter on 16 configuration(s)") !=
        std::string::npos);
}

TEST_CASE("bad invocations fail fast") {
  CHECK(run("").exit_code != 0);
  CHECK(run("generate").exit_code != 0);          // missing --out
  CHECK(run("frobnicate --out x").exit_code != 0);
  CHECK(run("plan only_one_arg").exit_code != 0);
}
