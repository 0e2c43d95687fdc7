// Command line front end: cut / spectrum / gen / verify / bench.
//
// Exit codes: 0 success (including a failed certificate verdict, which is a
// result, not an error), 1 invalid input or runtime failure, 2 usage error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kcuts/experiments.hpp"
#include "kcuts/generators.hpp"
#include "kcuts/graph.hpp"
#include "kcuts/json_io.hpp"
#include "kcuts/many_cuts.hpp"

namespace {

kcuts::WeightedGraph read_graph(const std::string& path) {
  if (path == "-") return kcuts::load_edge_list(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return kcuts::load_edge_list(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::map<std::string, double> parse_params(const std::string& spec) {
  std::map<std::string, double> out;
  if (spec.empty()) return out;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error("bad parameter '" + item + "': expected key=value");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      throw std::runtime_error("bad value for parameter '" + key + "'");
    }
    if (used != val.size())
      throw std::runtime_error("bad value for parameter '" + key + "'");
    if (out.count(key)) throw std::runtime_error("duplicate parameter '" + key + "'");
    out[key] = v;
  }
  return out;
}

std::vector<std::vector<int>> read_cut_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cuts file: " + path);
  std::vector<std::vector<int>> sets;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::vector<int> members;
    long long v;
    while (ls >> v) {
      if (v < 0 || v > (1 << 28))
        throw std::runtime_error("cuts line " + std::to_string(lineno) + ": vertex id out of range");
      members.push_back(static_cast<int>(v));
    }
    if (!ls.eof()) {
      std::string rest;
      ls.clear();
      ls >> rest;
      throw std::runtime_error("cuts line " + std::to_string(lineno) + ": bad token '" + rest + "'");
    }
    if (!members.empty()) sets.push_back(std::move(members));
  }
  if (sets.empty()) throw std::runtime_error("cuts file contains no sets");
  return sets;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

kcuts::EigsMode parse_mode(const std::string& m) {
  if (m == "dense") return kcuts::EigsMode::dense;
  if (m == "lanczos") return kcuts::EigsMode::lanczos;
  return kcuts::EigsMode::automatic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disjoint sparse cuts via spectral embedding and gaussian rounding"};
  app.require_subcommand(1);

  std::string graph_path = "-";
  std::string out_path = "-";
  std::string mode = "auto";
  std::string family, params_spec, cuts_path, experiment, csv_path;
  int k = 2;
  int trials = 0;
  double fraction = 0.5;
  double tol = 1e-8;
  double lambda_override = -1.0;
  bool lambda_given = false;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed (default: drawn from the system)")
        ->each([&](const std::string&) { seed_given = true; });
  };

  auto* cmd_cut = app.add_subcommand("cut", "find up to ceil(fraction*k) disjoint sparse cuts");
  cmd_cut->add_option("--graph", graph_path, "edge list file, '-' for stdin");
  cmd_cut->add_option("--k", k, "number of eigenvectors / target scale")->required();
  cmd_cut->add_option("--trials", trials, "rounding trials (0 = 8*ceil(log2(k+1)))");
  cmd_cut->add_option("--fraction", fraction, "fraction of k cuts to return (default 0.5)");
  cmd_cut->add_option("--mode", mode, "eigensolver: auto, dense, lanczos")
      ->check(CLI::IsMember({"auto", "dense", "lanczos"}));
  cmd_cut->add_option("--tol", tol, "eigensolver residual tolerance");
  cmd_cut->add_option("--out", out_path, "output file, '-' for stdout");
  add_seed(cmd_cut);

  auto* cmd_spec = app.add_subcommand("spectrum", "bottom-k eigenvalues of the normalized laplacian");
  cmd_spec->add_option("--graph", graph_path, "edge list file, '-' for stdin");
  cmd_spec->add_option("--k", k, "number of eigenvalues")->required();
  cmd_spec->add_option("--mode", mode, "eigensolver: auto, dense, lanczos")
      ->check(CLI::IsMember({"auto", "dense", "lanczos"}));
  cmd_spec->add_option("--tol", tol, "eigensolver residual tolerance");
  cmd_spec->add_option("--out", out_path, "output file, '-' for stdout");
  add_seed(cmd_spec);

  auto* cmd_gen = app.add_subcommand("gen", "generate a named graph family as an edge list");
  cmd_gen->add_option("--family", family,
                      "fig2, appendix-a, ring-of-cliques, disjoint-cliques, path, complete, "
                      "planted, geometric")
      ->required();
  cmd_gen->add_option("--params", params_spec, "comma list, e.g. k=4,s=8,bridge=0.5");
  cmd_gen->add_option("--out", out_path, "output file, '-' for stdout");

  auto* cmd_verify = app.add_subcommand("verify", "check a disjoint family against lambda_m/2");
  cmd_verify->add_option("--graph", graph_path, "edge list file, '-' for stdin");
  cmd_verify->add_option("--cuts", cuts_path, "file with one whitespace-separated vertex set per line")
      ->required();
  cmd_verify->add_option("--lambda", lambda_override, "eigenvalue to test against (default: computed)")
      ->each([&](const std::string&) { lambda_given = true; });
  cmd_verify->add_option("--tol", tol, "eigensolver residual tolerance");
  cmd_verify->add_option("--out", out_path, "output file, '-' for stdout");

  auto* cmd_bench = app.add_subcommand("bench", "run a built-in construction end to end");
  cmd_bench->add_option("--experiment", experiment, "fig2 or appendix-a")
      ->required()
      ->check(CLI::IsMember({"fig2", "appendix-a"}));
  cmd_bench->add_option("--params", params_spec, "fig2: n,k,p; appendix-a: n,k,eps,c");
  cmd_bench->add_option("--csv", csv_path, "also write metrics as CSV rows");
  cmd_bench->add_option("--out", out_path, "output file, '-' for stdout");
  add_seed(cmd_bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    if (!seed_given) seed = fresh_seed();

    if (*cmd_cut) {
      const auto g = read_graph(graph_path);
      kcuts::ManyCutsConfig cfg;
      cfg.k = k;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.fraction = fraction;
      cfg.eigs.mode = parse_mode(mode);
      cfg.eigs.tol = tol;
      const auto rep = kcuts::many_sparse_cuts(g, cfg);
      auto j = kcuts::envelope("cut", kcuts::json{{"graph", graph_path},
                                                  {"k", rep.k},
                                                  {"trials", rep.trials},
                                                  {"seed", rep.seed},
                                                  {"fraction", rep.fraction},
                                                  {"mode", mode},
                                                  {"tol", tol}});
      j["result"] = rep;
      write_text(out_path, j.dump(2) + "\n");
    } else if (*cmd_spec) {
      const auto g = read_graph(graph_path);
      kcuts::EigsOptions opt;
      opt.k = k;
      opt.tol = tol;
      opt.seed = seed;
      opt.mode = parse_mode(mode);
      const auto sd = kcuts::spectral_embedding(g, opt);
      auto j = kcuts::envelope("spectrum", kcuts::json{{"graph", graph_path},
                                                       {"k", k},
                                                       {"seed", seed},
                                                       {"mode", mode},
                                                       {"tol", tol}});
      j["result"] = sd;
      write_text(out_path, j.dump(2) + "\n");
    } else if (*cmd_gen) {
      const auto params = parse_params(params_spec);
      const auto fam = kcuts::gen_family(family, params);
      std::ostringstream text;
      for (const auto& line : fam.comments) text << line << '\n';
      text << "# vertices: " << fam.graph.n() << " edges: " << fam.graph.edge_count() << '\n';
      kcuts::write_edge_list(fam.graph, text);
      write_text(out_path, text.str());
    } else if (*cmd_verify) {
      const auto g = read_graph(graph_path);
      const auto sets = read_cut_file(cuts_path);
      std::vector<kcuts::Cut> cuts;
      for (const auto& members : sets) cuts.push_back(kcuts::expansion(g, members));
      double lambda = lambda_override;
      std::string lambda_source = "option";
      if (!lambda_given) {
        kcuts::EigsOptions opt;
        opt.k = static_cast<int>(cuts.size());
        opt.tol = tol;
        lambda = kcuts::bottom_k_eigs(g, opt).values.back();
        lambda_source = "computed";
      }
      const auto cert = kcuts::verify_lower_bound(g, cuts, lambda);
      auto j = kcuts::envelope("verify", kcuts::json{{"graph", graph_path},
                                                     {"cuts", cuts_path},
                                                     {"lambda", lambda},
                                                     {"lambda_source", lambda_source}});
      j["result"] = kcuts::json{{"certificate", cert}, {"cuts", cuts}};
      write_text(out_path, j.dump(2) + "\n");
    } else if (*cmd_bench) {
      const auto params = parse_params(params_spec);
      auto need = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
          throw std::runtime_error(std::string("experiment needs parameter '") + key + "'");
        return it->second;
      };
      kcuts::ExperimentReport rep;
      if (experiment == "fig2") {
        rep = kcuts::run_fig2(static_cast<int>(need("n")), static_cast<int>(need("k")),
                              need("p"), seed);
      } else {
        rep = kcuts::run_appendix_a(static_cast<int>(need("n")), static_cast<int>(need("k")),
                                    need("eps"), need("c"), seed);
      }
      auto j = kcuts::envelope("bench", kcuts::json{{"experiment", experiment},
                                                    {"params", params_spec},
                                                    {"seed", seed}});
      j["result"] = rep;
      write_text(out_path, j.dump(2) + "\n");
      if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "metric,value\n";
        for (const auto& [name, value] : rep.metrics)
          csv << name << ',' << kcuts::detail::format_double(value) << '\n';
        write_text(csv_path, csv.str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  std::cerr << "completed in " << elapsed.count() << " ms\n";
  return 0;
}
