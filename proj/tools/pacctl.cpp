// pacctl: solve, generate, benchmark and characterize.
//
// Exit codes: 0 accept, 1 reject, 2 error, 3 unknown.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"

#include "pac/ac.hpp"
#include "pac/generators.hpp"
#include "pac/homomorphism.hpp"
#include "pac/meta.hpp"
#include "pac/pac.hpp"
#include "pac/point_algebra.hpp"
#include "pac/set_constraints.hpp"
#include "pac/templates.hpp"

using namespace pac;

namespace {

enum Exit { accept_code = 0, reject_code = 1, error_code = 2, unknown_code = 3 };

struct RunConfig {
  std::string template_name = "k2";
  std::string instance;
  std::string method = "pac";
  int workers = 0;
  std::uint64_t seed = 1;
  int nmax = 3;
  std::size_t cap_universe = SizeCaps{}.product_universe;
  std::uint64_t budget = HomSearchOptions{}.node_budget;
  std::string format = "text";
};

// A template is either a finite structure or one of the built-in
// infinite/pattern-based languages.
enum class Special { none, pointalg, setcon };

struct Template {
  std::string id;
  Special special = Special::none;
  Structure finite;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Template load_template(const std::string &sel) {
  if (sel == "k2")
    return {sel, Special::none, k2_template()};
  if (sel == "2sat")
    return {sel, Special::none, two_sat_template()};
  if (sel == "parity")
    return {sel, Special::none, parity_template()};
  if (sel == "pointalg")
    return {sel, Special::pointalg, {}};
  if (sel == "setcon")
    return {sel, Special::setcon, {}};
  if (sel.rfind("cycle:", 0) == 0)
    return {sel, Special::none, cycle_template(CycleOrientation::parse(sel.substr(6)))};
  if (std::filesystem::exists(sel))
    return {std::filesystem::path(sel).stem().string(), Special::none,
            parse_structure(read_file(sel))};
  throw Error("unknown template '" + sel + "'");
}

bool ends_with(const std::string &s, const std::string &suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Structure load_structure_instance(const std::string &path) {
  const std::string text = read_file(path);
  if (ends_with(path, ".cnf"))
    return cnf2_to_instance(parse_cnf2(text));
  return parse_structure(text);
}

void print_decision(const RunConfig &cfg, const Template &t, const char *decision,
                    const std::optional<std::string> &variable = std::nullopt) {
  if (cfg.format == "lines") {
    std::cout << "solve template " << t.id << " method " << cfg.method
              << " decision " << decision;
    if (variable)
      std::cout << " variable " << *variable;
    std::cout << "\n";
  } else {
    std::cout << "decision " << decision;
    if (variable)
      std::cout << " variable " << *variable;
    std::cout << "\n";
  }
}

int report_pac(const RunConfig &cfg, const Template &t, const PeekReport &r,
               const std::vector<std::string> &names) {
  if (cfg.format == "lines") {
    std::optional<std::string> var;
    if (r.rejecting_variable)
      var = names[*r.rejecting_variable];
    print_decision(cfg, t, r.accepted() ? "accept" : "reject", var);
  } else {
    std::cout << r.to_text(names);
  }
  return r.accepted() ? accept_code : reject_code;
}

int finish(const RunConfig &cfg, const Template &t, std::optional<bool> accepted) {
  print_decision(cfg, t, !accepted ? "unknown" : *accepted ? "accept" : "reject");
  return !accepted ? unknown_code : *accepted ? accept_code : reject_code;
}

PacOptions pac_options(const RunConfig &cfg) {
  PacOptions o;
  o.workers = cfg.workers;
  return o;
}

int cmd_solve(const RunConfig &cfg) {
  if (cfg.instance.empty())
    throw Error("--instance is required");
  const Template t = load_template(cfg.template_name);

  if (t.special == Special::setcon) {
    const auto inst = parse_set_constraints(read_file(cfg.instance));
    if (cfg.method == "pac")
      return finish(cfg, t, set_constraint_pac(inst));
    if (cfg.method == "brute") {
      try {
        return finish(cfg, t, set_constraint_oracle(inst, std::nullopt, cfg.budget));
      } catch (const CapExceeded &) {
        return finish(cfg, t, std::nullopt);
      }
    }
    throw Error("method '" + cfg.method + "' is not available for setcon");
  }

  const Structure a = load_structure_instance(cfg.instance);
  if (t.special == Special::pointalg) {
    if (cfg.method == "pac")
      return report_pac(cfg, t, point_algebra_pac(a, pac_options(cfg)), a.names());
    if (cfg.method == "ac")
      return finish(cfg, t, acc_holds(a, point_algebra_descriptor()));
    return finish(cfg, t, point_algebra_oracle(a));
  }

  if (cfg.method == "pac")
    return report_pac(cfg, t, pac_decide(a, t.finite, pac_options(cfg)), a.names());
  if (cfg.method == "ac")
    return finish(cfg, t, acc_holds(a, t.finite));
  HomSearchOptions search;
  search.node_budget = cfg.budget;
  const auto r = find_homomorphism(a, t.finite, search);
  if (r.status == SearchStatus::budget_exhausted)
    return finish(cfg, t, std::nullopt);
  return finish(cfg, t, r.found());
}

struct GenConfig {
  std::string kind;
  int size = -1;
  double p = 0.1;
  int clauses = -1;
  int leq = -1;
  int neq = -1;
  int sub = -1;
  int dis = -1;
  bool planted = false;
  std::string output;
};

int cmd_gen(const GenConfig &g, const RunConfig &cfg) {
  if (g.size < 1)
    throw Error("size must be at least 1");
  std::ofstream file;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file)
      throw Error("cannot write '" + g.output + "'");
  }
  std::ostream &out = g.output.empty() ? std::cout : file;
  const int n = g.size;
  if (g.kind == "graph") {
    if (g.p < 0 || g.p > 1)
      throw Error("edge probability must lie in [0, 1]");
    write_structure(out, random_graph(n, g.p, cfg.seed));
  } else if (g.kind == "2cnf") {
    write_cnf2(out, random_cnf2(n, g.clauses < 0 ? 2 * n : g.clauses, cfg.seed));
  } else if (g.kind == "pointalg") {
    PointAlgebraShape shape{n, g.leq < 0 ? 2 * n : g.leq, g.neq < 0 ? n : g.neq,
                            g.planted};
    write_structure(out, random_point_algebra(shape, cfg.seed));
  } else if (g.kind == "setcon") {
    write_set_constraints(out, random_set_constraints(n, g.sub < 0 ? n : g.sub,
                                                      g.dis < 0 ? n / 2 : g.dis,
                                                      g.neq < 0 ? n / 2 : g.neq,
                                                      cfg.seed));
  } else {
    throw Error("unknown kind '" + g.kind + "' (graph, 2cnf, pointalg, setcon)");
  }
  return 0;
}

struct BenchConfig {
  std::vector<int> sizes{100, 200, 400};
  std::vector<int> workers{1};
  std::vector<std::string> methods{"pac"};
  int repeat = 3;
  double timeout = 60.0;
};

// Benchmark instance of size n: satisfiable where possible so every peek runs.
Structure bench_instance(const Template &t, int n, std::uint64_t seed) {
  if (t.special == Special::pointalg)
    return random_point_algebra({n, 2 * n, n, true}, seed);
  if (t.id == "2sat")
    return cnf2_to_instance(random_cnf2(n, n, seed));
  if (t.id == "k2") {
    // Even cycle: bipartite, and AC never empties a domain.
    StructureBuilder b(Signature{{"E", 2}}, 2 * ((n + 1) / 2));
    const int m = 2 * ((n + 1) / 2);
    for (int i = 0; i < m; ++i)
      b.add(0, {i, (i + 1) % m}).add(0, {(i + 1) % m, i});
    return std::move(b).build();
  }
  throw Error("bench supports pointalg, k2 and 2sat");
}

double time_once(const Template &t, const Structure &a, const std::string &method,
                 int workers) {
  PacOptions o;
  o.workers = workers;
  const auto start = std::chrono::steady_clock::now();
  if (t.special == Special::pointalg) {
    if (method == "pac")
      (void)point_algebra_pac(a, o);
    else
      (void)acc_holds(a, point_algebra_descriptor());
  } else {
    if (method == "pac")
      (void)pac_decide(a, t.finite, o);
    else
      (void)acc_holds(a, t.finite);
  }
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

int cmd_bench(const BenchConfig &bc, const RunConfig &cfg) {
  const Template t = load_template(cfg.template_name);
  for (int w : bc.workers)
    if (w < 1)
      throw Error("workers must be at least 1");
  for (int n : bc.sizes)
    if (n < 1)
      throw Error("sizes must be at least 1");
  for (const auto &m : bc.methods)
    if (m != "ac" && m != "pac")
      throw Error("bench methods are ac and pac");
  if (bc.repeat < 1)
    throw Error("repeat must be at least 1");

  // Median of `repeat` runs; nullopt marks a timeout.
  std::map<std::tuple<std::string, int, int>, std::optional<double>> cells;
  std::cout << std::setprecision(6);
  for (const auto &method : bc.methods)
    for (int w : bc.workers) {
      bool timed_out = false;
      for (int n : bc.sizes) {
        auto &cell = cells[{method, w, n}];
        if (!timed_out) {
          const Structure a = bench_instance(t, n, cfg.seed);
          std::vector<double> runs;
          for (int r = 0; r < bc.repeat && !timed_out; ++r) {
            runs.push_back(time_once(t, a, method, w));
            timed_out = runs.back() > bc.timeout;
          }
          std::sort(runs.begin(), runs.end());
          if (!timed_out)
            cell = runs[runs.size() / 2];
        }
        std::cout << "bench template " << t.id << " method " << method
                  << " size " << n << " workers " << w << " seconds ";
        if (cell)
          std::cout << *cell << "\n";
        else
          std::cout << "timeout\n";
      }
    }
  for (const auto &method : bc.methods)
    for (int w : bc.workers)
      for (std::size_t i = 1; i < bc.sizes.size(); ++i) {
        const auto &lo = cells[{method, w, bc.sizes[i - 1]}];
        const auto &hi = cells[{method, w, bc.sizes[i]}];
        if (lo && hi && *lo > 0)
          std::cout << "ratio method " << method << " workers " << w << " size "
                    << bc.sizes[i] << " over " << bc.sizes[i - 1] << " value "
                    << *hi / *lo << "\n";
      }
  const int base = bc.workers.front();
  for (const auto &method : bc.methods)
    for (std::size_t j = 1; j < bc.workers.size(); ++j)
      for (int n : bc.sizes) {
        const auto &serial = cells[{method, base, n}];
        const auto &par = cells[{method, bc.workers[j], n}];
        if (serial && par && *par > 0)
          std::cout << "speedup method " << method << " size " << n << " workers "
                    << bc.workers[j] << " over " << base << " value "
                    << *serial / *par << "\n";
      }
  return 0;
}

int cmd_characterize(const RunConfig &cfg, InstanceBound bound) {
  const Template t = load_template(cfg.template_name);
  if (t.special != Special::none)
    throw Error("characterize needs a finite template");
  SizeCaps caps;
  caps.product_universe = cfg.cap_universe;
  const auto r = characterize(t.id, t.finite, cfg.nmax, bound, caps);
  std::cout << (cfg.format == "lines" ? r.to_line() + "\n" : r.to_text());
  return 0;
}

template <class T> std::vector<T> split_list(const std::string &s) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v;
    if (!(is >> v) || !is.eof())
      throw Error("bad list item '" + item + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw Error("empty list");
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Peek arc consistency solver and tools"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--template", cfg.template_name,
                    "k2, 2sat, parity, pointalg, setcon, cycle:<bits> or a structure file");
    sub->add_option("--workers", cfg.workers, "worker threads (default: all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--format", cfg.format, "text or lines")
        ->check(CLI::IsMember({"text", "lines"}));
  };

  auto *solve = app.add_subcommand("solve", "decide an instance");
  add_common(solve);
  solve->add_option("--instance", cfg.instance, "instance file (.rs/.pa structure, .cnf, .sc)")
      ->required();
  solve->add_option("--method", cfg.method, "ac, pac or brute")
      ->check(CLI::IsMember({"ac", "pac", "brute"}));
  solve->add_option("--budget", cfg.budget, "brute-force node budget");

  GenConfig gen_cfg;
  auto *gen = app.add_subcommand("gen", "write a random instance");
  add_common(gen);
  gen->add_option("kind", gen_cfg.kind, "graph, 2cnf, pointalg or setcon")->required();
  gen->add_option("size", gen_cfg.size, "vertices or variables")->required();
  gen->add_option("-p,--edge-probability", gen_cfg.p, "graph edge probability");
  gen->add_option("--clauses", gen_cfg.clauses, "2cnf clause count (default 2n)");
  gen->add_option("--leq", gen_cfg.leq, "pointalg leq count (default 2n)");
  gen->add_option("--neq", gen_cfg.neq, "pointalg/setcon neq count");
  gen->add_option("--sub", gen_cfg.sub, "setcon sub count (default n)");
  gen->add_option("--dis", gen_cfg.dis, "setcon dis count (default n/2)");
  gen->add_flag("--planted", gen_cfg.planted, "pointalg: satisfiable by construction");
  gen->add_option("-o,--output", gen_cfg.output, "output file (default stdout)");

  BenchConfig bench_cfg;
  std::string sizes = "100,200,400", workers = "1", methods = "pac";
  auto *bench = app.add_subcommand("bench", "time ac/pac across sizes and workers");
  bench->add_option("--template", cfg.template_name, "pointalg, k2 or 2sat");
  bench->add_option("--sizes", sizes, "comma-separated sizes");
  bench->add_option("--workers", workers, "comma-separated worker counts");
  bench->add_option("--method", methods, "comma-separated: ac, pac");
  bench->add_option("--seed", cfg.seed, "random seed");
  bench->add_option("--repeat", bench_cfg.repeat, "runs per cell (median reported)");
  bench->add_option("--timeout", bench_cfg.timeout, "seconds per run before giving up");

  InstanceBound bound;
  auto *charz = app.add_subcommand("characterize", "AC/PAC criteria for a finite template");
  add_common(charz);
  charz->add_option("--nmax", cfg.nmax, "largest exponent checked")->check(CLI::PositiveNumber);
  charz->add_option("--cap-universe", cfg.cap_universe, "largest constructed universe");
  charz->add_option("--bound-vars", bound.variables, "empirical instance variables");
  charz->add_option("--bound-tuples", bound.tuples, "empirical instance tuples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return error_code;
  }

  try {
    if (*solve)
      return cmd_solve(cfg);
    if (*gen)
      return cmd_gen(gen_cfg, cfg);
    if (*bench) {
      bench_cfg.sizes = split_list<int>(sizes);
      bench_cfg.workers = split_list<int>(workers);
      bench_cfg.methods = split_list<std::string>(methods);
      return cmd_bench(bench_cfg, cfg);
    }
    return cmd_characterize(cfg, bound);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return error_code;
  }
}
