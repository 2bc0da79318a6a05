#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include <stmwis/cli.hpp>

using namespace stmwis;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "stmwis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("stmwis_test_" + name);
  cli::write_text(p.string(), text);
  return p.string();
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("solve") {
  std::string k3 = temp_file("k3.txt", "p 3 3\nw 0 5\ne 0 1\ne 1 2\ne 0 2\n");
  for (const char* algo : {"ind", "brute", "particle"}) {
    auto r = cli_run({"solve", "--algo", algo, "--witness", k3});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "value 5"));
    CHECK(has_line(r.out, "witness 0"));
    CHECK(r.out.find("# config algo=" + std::string(algo)) != std::string::npos);
  }
  auto t = cli_run({"solve", "--test-mode", k3});
  CHECK(t.code == 0);
  CHECK(t.out.find("# TEST MODE") != std::string::npos);
  CHECK(t.out.find("stat base=") != std::string::npos);
  auto b = cli_run({"solve", "--backend", "brute", k3});
  CHECK(b.code == 0);
  CHECK(has_line(b.out, "value 5"));
}

TEST_CASE("solve with a decomposition file") {
  // P3 as the line graph of P4.
  std::string g = temp_file("p3.txt", "p 3 2\nw 1 5\ne 0 1\ne 1 2\n");
  std::string d = temp_file("p3.esdf", "hv 0\nhv 1\nhv 2\nhv 3\nhe 0 1\nhe 1 2\nhe 2 3\n"
                                       "ee 0 1: 0\nix 0 1 @ 0: 0\nix 0 1 @ 1: 0\n"
                                       "ee 1 2: 1\nix 1 2 @ 1: 1\nix 1 2 @ 2: 1\n"
                                       "ee 2 3: 2\nix 2 3 @ 2: 2\nix 2 3 @ 3: 2\n");
  auto v = cli_run({"validate-esd", g, d});
  CHECK(v.code == 0);
  CHECK(has_line(v.out, "ok"));
  auto p = cli_run({"solve", "--algo", "particle", "--esd", d, g});
  CHECK(p.code == 0);
  CHECK(has_line(p.out, "value 5"));
  auto f = cli_run({"solve", "--test-mode", "--backend", "file:" + d, g});
  CHECK(f.code == 0);
  CHECK(has_line(f.out, "value 5"));
  auto c = cli_run({"clean-esd", g, d});
  CHECK(c.code == 0);
}

TEST_CASE("validate-esd reports violations") {
  std::string g = temp_file("e2.txt", "p 2 1\ne 0 1\n");
  std::string d = temp_file("bad.esdf", "hv 0\nhv 1\nev 0: 0\nev 1: 1\n");
  auto r = cli_run({"validate-esd", g, d});
  CHECK(r.code == 1);
  CHECK(r.out.find("\nviolation edge:") != std::string::npos);
  std::string broken = temp_file("broken.esdf", "hv 0\nev 0: 0\nev 0: 1\n");
  auto b = cli_run({"validate-esd", g, broken});
  CHECK(b.code == 1);
  CHECK(b.out.find("\nviolation format:") != std::string::npos);
}

TEST_CASE("gyarfas and detect-sttt") {
  std::string p5 = temp_file("p5.txt", "p 5 4\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n");
  auto g = cli_run({"gyarfas", p5});
  CHECK(g.code == 0);
  CHECK(has_line(g.out, "verify ok"));
  // S_{1,1,1} is the claw.
  std::string claw = temp_file("claw.txt", "p 4 3\ne 0 1\ne 0 2\ne 0 3\n");
  auto d = cli_run({"detect-sttt", "--t", "1", claw});
  CHECK(d.code == 0);
  CHECK(d.out.find("sttt center=0") != std::string::npos);
  auto n = cli_run({"detect-sttt", "--t", "1", p5});
  CHECK(has_line(n.out, "none"));
}

TEST_CASE("gen and bench") {
  auto a = cli_run({"gen", "--kind", "cograph", "--n", "8", "--seed", "3"});
  auto b = cli_run({"gen", "--kind", "cograph", "--n", "8", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_NOTHROW(parse_graph(a.out));
  std::string esd = (std::filesystem::temp_directory_path() / "stmwis_test_gen.esdf").string();
  auto l = cli_run({"gen", "--kind", "line-graph", "--n", "5", "--esd-out", esd});
  CHECK(l.code == 0);
  CHECK_FALSE(validate_esd(parse_graph(l.out), parse_esdf(cli::read_text(esd))));

  auto r = cli_run({"bench", "--kind", "sttt-free", "--n", "8", "--count", "3", "--test-mode"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "bench count=3 mismatches=0"));
  auto f = cli_run({"bench", "--kind", "line-graph", "--n", "5", "--count", "3", "--backend", "file", "--test-mode"});
  CHECK(f.code == 0);
  auto bad = cli_run({"bench", "--kind", "random", "--backend", "file"});
  CHECK(bad.code == 1);
}

TEST_CASE("input errors and usage") {
  std::string bad = temp_file("bad.txt", "p 2 1\ne 0 0\n");
  auto r = cli_run({"solve", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("self-loop") != std::string::npos);
  CHECK(cli_run({"solve", "/nonexistent/file"}).code == 1);
  CHECK(cli_run({"solve", "--algo", "magic", bad}).code == 2);
  CHECK(cli_run({"frobnicate"}).code == 2);
  CHECK(cli_run({"gen", "--wmin", "5", "--wmax", "2"}).code == 2);
  CHECK(cli_run({"--help"}).code == 0);
}
