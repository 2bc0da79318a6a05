#pragma once

// Command-line front end. Results go to `out`, diagnostics to `err`.
// Every run first echoes its resolved configuration as `# config k=v` lines,
// which the graph and ESDF readers skip as comments.
//
// Exit codes: 0 success, 1 verification or input failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "decompose.hpp"
#include "diagnostics.hpp"
#include "esd.hpp"
#include "esdf.hpp"
#include "graph.hpp"
#include "ind.hpp"
#include "instances.hpp"
#include "oracles.hpp"
#include "particle_solve.hpp"
#include "separators.hpp"

namespace stmwis {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli {

inline std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw InputError("cannot write '" + path + "'");
}

inline Graph load_graph(const std::string& path) {
  try {
    return parse_graph(std::string_view(read_text(path)));
  } catch (const GraphError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Esd load_esd(const Graph& g, const std::string& path) {
  Esd d;
  try {
    d = parse_esdf(read_text(path));
  } catch (const EsdfError& e) {
    throw InputError(path + ": " + e.what());
  }
  if (auto v = validate_esd(g, d)) throw InputError(path + ": violation " + v->kind + ": " + v->message);
  return d;
}

struct Config {
  std::vector<std::pair<std::string, std::string>> items;
  template <typename T>
  void set(const std::string& k, const T& v) {
    std::ostringstream s;
    s << v;
    items.emplace_back(k, s.str());
  }
  void write(std::ostream& out) const {
    for (const auto& [k, v] : items) out << "# config " << k << '=' << v << '\n';
  }
};

inline void echo_algo(Config& c, const AlgoConfig& a) {
  c.set("t", a.t);
  c.set("ct", a.ct);
  c.set("test_mode", a.test_mode ? 1 : 0);
  c.set("c32", a.c32);
  c.set("c200", a.c200);
  c.set("c800", a.c800);
  c.set("c28000", a.c28000);
  c.set("jobs", a.jobs);
}

inline void banner(std::ostream& out, const AlgoConfig& a) {
  if (a.test_mode) {
    out << "# TEST MODE: solver constants lowered to c_t=1 and 1 for the rest; values stay exact, "
           "runtime bounds do not apply\n";
  }
}

inline AlgoConfig resolve_algo(int t, std::optional<std::int64_t> ct, bool test_mode, int jobs,
                               const Backend& backend) {
  AlgoConfig a = test_mode ? AlgoConfig::testing(t) : AlgoConfig::standard(t, backend.declared_ct());
  if (ct) a.ct = *ct;
  a.jobs = jobs;
  a.check();
  return a;
}

inline std::unique_ptr<Backend> resolve_backend(const std::string& spec, const Graph& g) {
  if (spec.rfind("file:", 0) == 0) return std::make_unique<FileBackend>(load_esd(g, spec.substr(5)));
  try {
    return make_backend(spec);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

inline void write_witness(std::ostream& out, const VertexSet& s) {
  out << "witness";
  for (Vertex v : s) out << ' ' << v;
  out << '\n';
}

inline void write_embedding(std::ostream& out, const StttEmbedding& e) {
  out << "sttt center=" << e.center << " legs=";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) out << '|';
    for (std::size_t j = 0; j < e.legs[i].size(); ++j) out << (j ? " " : "") << e.legs[i][j];
  }
  out << '\n';
}

// Particle algorithm: brute force per particle, combined through matching.
inline IndependentSet solve_by_particles(const Graph& g, const Esd& d) {
  auto parts = particles(d);
  ParticleValues vals;
  std::vector<VertexSet> witnesses;
  for (const auto& p : parts) {
    auto s = mwis_brute(g, p.members);
    vals.push_back(s.weight);
    witnesses.push_back(s.vertices);
  }
  Gadget gd = gadget_graph(d, parts, vals);
  Matching m = max_weight_matching(gd.instance);
  VertexSet set = reconstruct_independent_set(parts, witnesses, gd, m);
  return {gd.base_value + m.weight, set};
}

}  // namespace cli

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact maximum weight independent set tools for subdivided-claw-free graphs", "stmwis"};
  app.require_subcommand(1);

  // solve
  std::string algo = "ind";
  int t = 2;
  std::optional<std::int64_t> ct;
  std::string backend_spec = "gyarfas";
  std::string esd_path;
  bool witness = false;
  bool test_mode = false;
  int jobs = 1;
  std::string graph_path;
  auto* solve = app.add_subcommand("solve", "Compute the maximum weight of an independent set");
  solve->add_option("--algo", algo, "ind, brute or particle")->check(CLI::IsMember({"ind", "brute", "particle"}));
  solve->add_option("--t", t, "Leg length of the excluded subdivided claw")->check(CLI::PositiveNumber);
  solve->add_option("--ct", ct, "Core-size constant");
  solve->add_option("--backend", backend_spec, "gyarfas, brute or file:<esdf>");
  solve->add_option("--esd", esd_path, "Decomposition for --algo particle (default: one host vertex)");
  solve->add_flag("--witness", witness, "Also print an optimal set");
  solve->add_flag("--test-mode", test_mode, "Lower the solver constants");
  solve->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  solve->add_option("graph", graph_path, "Graph file, - for stdin")->required();

  // validate-esd, clean-esd
  std::string esdf_path;
  auto* validate = app.add_subcommand("validate-esd", "Check a decomposition against a graph");
  validate->add_option("graph", graph_path)->required();
  validate->add_option("esdf", esdf_path)->required();
  auto* clean = app.add_subcommand("clean-esd", "Print the locally cleaned decomposition");
  clean->add_option("graph", graph_path)->required();
  clean->add_option("esdf", esdf_path)->required();

  // gyarfas, detect-sttt
  auto* gyarfas = app.add_subcommand("gyarfas", "Print a Gyárfás path and check it");
  gyarfas->add_option("graph", graph_path)->required();
  auto* detect = app.add_subcommand("detect-sttt", "Find an induced subdivided claw");
  detect->add_option("--t", t)->required()->check(CLI::PositiveNumber);
  detect->add_option("graph", graph_path)->required();

  // gen, bench
  std::string kind = "sttt-free";
  int n = 10;
  double p = 0.5;
  std::uint64_t seed = 1;
  Weight wmin = 1;
  Weight wmax = 1;
  bool connected = false;
  std::string esd_out;
  int count = 10;
  const std::vector<std::string> kinds = {"random", "sttt-free", "cograph", "line-graph", "decomposed"};
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  auto* bench = app.add_subcommand("bench", "Compare IND with brute force on generated graphs");
  for (auto* sc : {gen, bench}) {
    sc->add_option("--kind", kind)->check(CLI::IsMember(kinds));
    sc->add_option("--n", n, "Vertices (host vertices for line-graph)")->check(CLI::Range(0, 100000));
    sc->add_option("--p", p, "Edge probability")->check(CLI::Range(0.0, 1.0));
    sc->add_option("--t", t)->check(CLI::PositiveNumber);
    sc->add_option("--seed", seed);
    sc->add_option("--wmin", wmin)->check(CLI::NonNegativeNumber);
    sc->add_option("--wmax", wmax)->check(CLI::NonNegativeNumber);
    sc->add_flag("--connected", connected);
  }
  gen->add_option("--esd-out", esd_out, "Write the decomposition here (line-graph, decomposed)");
  bench->add_option("--count", count)->check(CLI::PositiveNumber);
  bench->add_option("--backend", backend_spec, "gyarfas, brute or file (uses the generated decomposition)");
  bench->add_flag("--test-mode", test_mode);
  bench->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  if (wmin > wmax) {
    err << "usage error: --wmin exceeds --wmax\n";
    return 2;
  }

  cli::Config cfg;
  Diagnostics diag;
  try {
    if (*solve) {
      Graph g = cli::load_graph(graph_path);
      cfg.set("command", "solve");
      cfg.set("algo", algo);
      cfg.set("graph", graph_path);
      cfg.set("witness", witness ? 1 : 0);
      if (algo == "brute") {
        cfg.write(out);
        auto s = mwis_brute(g);
        out << "value " << s.weight << '\n';
        if (witness) cli::write_witness(out, s.vertices);
        return 0;
      }
      if (algo == "particle") {
        Esd d = esd_path.empty() ? trivial_esd(g.vertices()) : cli::load_esd(g, esd_path);
        cfg.set("esd", esd_path.empty() ? "trivial" : esd_path);
        cfg.write(out);
        auto s = cli::solve_by_particles(g, d);
        if (!is_independent(g, s.vertices) || g.weight_of(s.vertices) != s.weight) {
          err << "error: reconstructed set does not match the value\n";
          return 1;
        }
        out << "value " << s.weight << '\n';
        if (witness) cli::write_witness(out, s.vertices);
        return 0;
      }
      auto backend = cli::resolve_backend(backend_spec, g);
      AlgoConfig a = cli::resolve_algo(t, ct, test_mode, jobs, *backend);
      cfg.set("backend", backend_spec);
      cli::echo_algo(cfg, a);
      cfg.write(out);
      cli::banner(out, a);
      IndResult r = ind_solve(g, a, *backend, diag);
      out << "value " << r.weight << '\n';
      int code = 0;
      if (witness) {
        VertexSet s = witness_by_self_reduction(g, [&](const VertexSet& alive) {
          return ind_solve(g, alive, a, *backend, diag).weight;
        });
        if (!is_independent(g, s) || g.weight_of(s) != r.weight) {
          err << "error: witness check failed\n";
          code = 1;
        }
        cli::write_witness(out, s);
      }
      r.stats.write(out);
      diag.write(err);
      return code;
    }

    if (*validate || *clean) {
      Graph g = cli::load_graph(graph_path);
      cfg.set("command", *validate ? "validate-esd" : "clean-esd");
      cfg.set("graph", graph_path);
      cfg.set("esdf", esdf_path);
      cfg.write(out);
      Esd d;
      try {
        d = parse_esdf(cli::read_text(esdf_path));
      } catch (const EsdfError& e) {
        out << "violation format: " << e.what() << '\n';
        return 1;
      }
      if (auto v = validate_esd(g, d)) {
        out << "violation " << v->kind << ": " << v->message << '\n';
        return 1;
      }
      if (*validate) {
        out << "ok\n";
        return 0;
      }
      Esd c = local_clean(g, d);
      if (auto v = validate_esd(g, c)) {
        err << "error: cleaning broke the decomposition: " << v->message << '\n';
        return 1;
      }
      out << serialize_esdf(c);
      return 0;
    }

    if (*gyarfas) {
      Graph g = cli::load_graph(graph_path);
      cfg.set("command", "gyarfas");
      cfg.set("graph", graph_path);
      cfg.write(out);
      auto q = gyarfas_path(g, g.vertices(), g.weights());
      out << "path";
      for (Vertex v : q) out << ' ' << v;
      out << '\n';
      bool ok = verify_gyarfas_path(g, g.vertices(), g.weights(), q);
      out << "verify " << (ok ? "ok" : "failed") << '\n';
      return ok ? 0 : 1;
    }

    if (*detect) {
      Graph g = cli::load_graph(graph_path);
      cfg.set("command", "detect-sttt");
      cfg.set("t", t);
      cfg.set("graph", graph_path);
      cfg.write(out);
      auto e = find_induced_sttt(g, t);
      if (e) {
        cli::write_embedding(out, *e);
      } else {
        out << "none\n";
      }
      return 0;
    }

    Rng rng(seed);
    auto make = [&](std::optional<Esd>& esd) -> Graph {
      esd.reset();
      if (kind == "random") {
        return connected ? random_connected_graph(n, p, rng, wmin, wmax) : random_graph(n, p, rng, wmin, wmax);
      }
      if (kind == "sttt-free") return random_sttt_free(n, p, t, rng, {connected, wmin, wmax, 10000});
      if (kind == "cograph") return cograph(n, rng, wmin, wmax);
      if (kind == "line-graph") {
        Graph h = random_graph(n, p, rng);
        auto w = random_weights(static_cast<Vertex>(h.edge_count()), rng, wmin, wmax);
        auto lg = line_graph_with_esd(h, w);
        esd = std::move(lg.esd);
        return std::move(lg.g);
      }
      auto dg = random_decomposed_graph(rng, 5, n);
      esd = std::move(dg.esd);
      return std::move(dg.g);
    };
    auto echo_gen = [&](const char* command) {
      cfg.set("command", command);
      cfg.set("kind", kind);
      cfg.set("n", n);
      cfg.set("p", p);
      cfg.set("t", t);
      cfg.set("seed", seed);
      cfg.set("wmin", wmin);
      cfg.set("wmax", wmax);
      cfg.set("connected", connected ? 1 : 0);
    };

    if (*gen) {
      echo_gen("gen");
      if (!esd_out.empty()) cfg.set("esd_out", esd_out);
      cfg.write(out);
      std::optional<Esd> esd;
      Graph g = make(esd);
      out << serialize_graph(g);
      if (!esd_out.empty()) {
        if (!esd) throw InputError("--esd-out needs --kind line-graph or decomposed");
        cli::write_text(esd_out, serialize_esdf(*esd));
      }
      return 0;
    }

    // bench
    echo_gen("bench");
    cfg.set("count", count);
    cfg.set("backend", backend_spec);
    const bool file_backend = backend_spec == "file";
    if (file_backend && kind != "line-graph" && kind != "decomposed") {
      throw InputError("--backend file needs --kind line-graph or decomposed");
    }
    std::unique_ptr<Backend> fixed;
    if (!file_backend) fixed = cli::resolve_backend(backend_spec, Graph(0));
    GyarfasBackend plain;
    AlgoConfig a = cli::resolve_algo(t, std::nullopt, test_mode, jobs, fixed ? *fixed : static_cast<const Backend&>(plain));
    cli::echo_algo(cfg, a);
    cfg.write(out);
    cli::banner(out, a);
    RecursionStats total;
    int mismatches = 0;
    for (int i = 0; i < count; ++i) {
      std::optional<Esd> esd;
      Graph g = make(esd);
      std::unique_ptr<Backend> own;
      if (file_backend) own = std::make_unique<FileBackend>(*esd);
      const Backend& b = file_backend ? *own : *fixed;
      IndResult r = ind_solve(g, a, b, diag);
      Weight expect = mwis_brute(g).weight;
      bool ok = r.weight == expect;
      if (!ok) ++mismatches;
      total.add(r.stats);
      out << "bench i=" << i << " n=" << g.size() << " m=" << g.edge_count() << " ind=" << r.weight
          << " brute=" << expect << " ok=" << (ok ? 1 : 0) << '\n';
    }
    out << "bench count=" << count << " mismatches=" << mismatches << '\n';
    total.write(out);
    diag.write(err);
    return mismatches == 0 ? 0 : 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const GeneratorError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace stmwis
