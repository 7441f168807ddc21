#include "rgcap/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "rgcap/bounds.hpp"
#include "rgcap/experiments.hpp"
#include "rgcap/generators.hpp"
#include "rgcap/mincut.hpp"
#include "rgcap/serialize.hpp"

namespace rgcap::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelFlags {
  std::string model;
  std::size_t n = 0;
  std::size_t k = 0;
  double p = 0.0;
  double rs = 0.0;
  double rl = 0.0;
  std::string metric = "torus";

  void attach(CLI::App& cmd) {
    cmd.add_option("model,--model", model, "Network model")
        ->check(CLI::IsMember({"sws", "swr", "drn"}))
        ->required();
    cmd.add_option("--n", n, "Node count")->required();
    cmd.add_option("--k", k, "Ring lattice degree (sws, swr)");
    cmd.add_option("--p", p, "Shortcut / rewiring / dual-radio probability")->required();
    cmd.add_option("--rs", rs, "Short radio range (drn)");
    cmd.add_option("--rl", rl, "Long radio range (drn)");
    cmd.add_option("--metric", metric, "Distance metric (drn)")
        ->check(CLI::IsMember({"torus", "square"}));
  }

  ModelParams params() const { return make(model, n, k, p, rs, rl, metric); }

  static ModelParams make(const std::string& model, std::size_t n, std::size_t k, double p,
                          double rs, double rl, const std::string& metric) {
    ModelParams out;
    if (model == "sws") {
      out = SwsParams{n, k, p};
    } else if (model == "swr") {
      out = SwrParams{n, k, p};
    } else {
      out = DrnParams{n, p, rs, rl, parse_metric(metric)};
    }
    validate(out);
    return out;
  }
};

struct SeedFlag {
  std::optional<std::uint64_t> seed;

  void attach(CLI::App& cmd) {
    cmd.add_option("--seed", seed, "Master seed (random and echoed when omitted)");
  }

  std::uint64_t resolve() const {
    if (seed) return *seed;
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) | device();
  }
};

std::string manifest_line(const std::string& command, const std::string& details) {
  return std::string("# rgcap ") + kVersion + ' ' + command + ' ' + details;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  return file;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> values;
  for (const std::string& item : split_list(text)) {
    std::istringstream in(item);
    T value{};
    if (!(in >> value) || !in.eof()) {
      throw UsageError("bad value '" + item + "' in " + flag);
    }
    values.push_back(value);
  }
  return values;
}

TerminalPolicy parse_terminal_policy(const std::string& text) {
  if (text == "antipodal") return AntipodalTerminals{};
  if (text == "random") return RandomTerminals{};
  ExplicitTerminals fixed;
  for (auto v : parse_list<long long>(text, "--terminals")) {
    if (v < 0) throw UsageError("terminal indices must be nonnegative");
    fixed.nodes.push_back(static_cast<NodeId>(v));
  }
  if (fixed.nodes.empty()) throw UsageError("--terminals needs antipodal, random or a list");
  return fixed;
}

struct RunFlags {
  std::size_t alpha = 1;
  std::optional<double> d;
  std::size_t trials = 100;
  std::string mode = "paper";
  std::optional<std::string> terminals;
  std::size_t workers = 1;
  std::uint64_t budget = kDefaultWorkBudget;
  std::string json_path;
  std::string csv_path;
  bool assert_bounds = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--alpha", alpha, "Number of terminals");
    cmd.add_option("--d", d, "Exponent d (default: midpoint of the admissible interval)");
    cmd.add_option("--trials", trials, "Monte Carlo trials");
    cmd.add_option("--mode", mode, "Capacity mode")->check(CLI::IsMember({"paper", "graph"}));
    cmd.add_option("--terminals", terminals, "antipodal | random | comma-separated node list");
    cmd.add_option("--workers", workers, "Worker threads");
    cmd.add_option("--budget", budget, "Refuse runs with n*trials above this");
    cmd.add_option("--json", json_path, "Write the full JSON result here (default: stdout)");
    cmd.add_option("--csv", csv_path, "Write the CSV summary here");
    cmd.add_flag("--assert-bounds", assert_bounds,
                 "Exit with code 2 when violations exceed the theoretical budgets");
  }

  ExperimentConfig config(const ModelParams& model, std::uint64_t seed) const {
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.alpha = alpha;
    cfg.d = d;
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.mode = parse_capacity_mode(mode);
    if (terminals) cfg.terminal_policy = parse_terminal_policy(*terminals);
    cfg.workers = workers;
    cfg.work_budget = budget;
    return cfg;
  }
};

bool exceeds_budget(const ExperimentResult& r) {
  return !r.lower_within_budget || !r.upper_within_budget;
}

int cmd_generate(const ModelFlags& flags, const SeedFlag& seed_flag, const std::string& out_path,
                 const std::string& positions_path, std::ostream& out) {
  const ModelParams model = flags.params();
  const std::uint64_t seed = seed_flag.resolve();
  std::optional<DrnSample> drn;
  Graph g;
  if (const auto* params = std::get_if<DrnParams>(&model)) {
    drn = sample_drn(*params, seed);
    g = drn->graph;
  } else {
    g = sample_graph(model, seed);
  }
  const std::string manifest =
      manifest_line("generate", describe(model) + " seed=" + std::to_string(seed) +
                                    " edges=" + std::to_string(g.edge_count()));
  if (out_path.empty() || out_path == "-") {
    out << manifest << '\n';
    write_edge_list(out, g);
  } else {
    std::ofstream file = open_output(out_path);
    file << manifest << '\n';
    write_edge_list(file, g);
    out << manifest << '\n';
  }
  if (drn) {
    std::string sidecar = positions_path;
    if (sidecar.empty() && !out_path.empty() && out_path != "-") sidecar = out_path + ".pos";
    if (!sidecar.empty()) {
      std::ofstream file = open_output(sidecar);
      file << manifest << '\n';
      write_drn_positions(file, *drn);
    }
  }
  return kOk;
}

int cmd_bounds(const ModelFlags& flags, std::size_t alpha, std::optional<double> d, bool csv,
               std::ostream& out) {
  const BoundReport report = theorem_report(flags.params(), alpha, d);
  if (csv) {
    out << bound_csv_header() << '\n' << bound_csv_row(report) << '\n';
  } else {
    out << to_json(report).dump(2) << '\n';
  }
  return kOk;
}

int cmd_capacity(const std::string& graph_path, std::size_t source, std::optional<long long> t,
                 const std::optional<std::string>& terminals, const std::string& mode,
                 std::ostream& out) {
  if (t && terminals) throw UsageError("--t and --terminals are mutually exclusive");
  if (!t && !terminals) throw UsageError("one of --t or --terminals is required");
  std::ifstream file(graph_path);
  if (!file) throw std::runtime_error("cannot open graph file '" + graph_path + "'");
  const Graph g = read_edge_list(file);
  std::vector<NodeId> targets;
  if (t) {
    if (*t < 0) throw UsageError("--t must be nonnegative");
    targets.push_back(static_cast<NodeId>(*t));
  } else {
    for (auto v : parse_list<long long>(*terminals, "--terminals")) {
      if (v < 0) throw UsageError("terminal indices must be nonnegative");
      targets.push_back(static_cast<NodeId>(v));
    }
  }
  const RoleAssignment roles(g.node_count(), static_cast<NodeId>(source), targets);
  const CapacityResult result = sT_capacity(g, roles, parse_capacity_mode(mode));
  nlohmann::json j = to_json(result);
  j["source"] = source;
  out << j.dump() << '\n';
  return kOk;
}

int cmd_experiment(const ModelFlags& flags, const SeedFlag& seed_flag, const RunFlags& run,
                   std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = seed_flag.resolve();
  const ExperimentResult result = run_concentration(run.config(flags.params(), seed));
  for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
  const std::string json = to_json(result).dump(2);
  if (run.json_path.empty()) {
    out << json << '\n';
  } else {
    open_output(run.json_path) << json << '\n';
    out << manifest_line("experiment", describe(result.report.model) +
                                           " seed=" + std::to_string(seed)) << '\n'
        << "trials=" << result.trials << " lower_violations=" << result.lower_violations
        << " upper_violations=" << result.upper_violations << '\n';
  }
  if (!run.csv_path.empty()) {
    std::ofstream csv = open_output(run.csv_path);
    csv << manifest_line("experiment", "seed=" + std::to_string(seed)) << '\n'
        << experiment_csv_header() << '\n'
        << experiment_csv_row(result) << '\n';
  }
  if (run.assert_bounds && exceeds_budget(result)) {
    err << "violations exceed the theoretical budget\n";
    return kAssertionFailed;
  }
  return kOk;
}

struct SweepFlags {
  std::string model;
  std::string n;
  std::string k = "0";
  std::string p;
  std::string rs = "0";
  std::string rl = "0";
  std::string metric = "torus";

  void attach(CLI::App& cmd) {
    cmd.add_option("model,--model", model, "Network model")
        ->check(CLI::IsMember({"sws", "swr", "drn"}))
        ->required();
    cmd.add_option("--n", n, "Comma-separated node counts")->required();
    cmd.add_option("--k", k, "Comma-separated lattice degrees");
    cmd.add_option("--p", p, "Comma-separated probabilities")->required();
    cmd.add_option("--rs", rs, "Comma-separated short ranges");
    cmd.add_option("--rl", rl, "Comma-separated long ranges");
    cmd.add_option("--metric", metric, "Distance metric (drn)")
        ->check(CLI::IsMember({"torus", "square"}));
  }

  // Cartesian product in the order n, k, p, rs, rl (last varies fastest).
  std::vector<ModelParams> grid() const {
    const auto ns = parse_list<std::size_t>(n, "--n");
    const auto ks = parse_list<std::size_t>(k, "--k");
    const auto ps = parse_list<double>(p, "--p");
    const auto rss = parse_list<double>(rs, "--rs");
    const auto rls = parse_list<double>(rl, "--rl");
    std::vector<ModelParams> points;
    for (auto nv : ns)
      for (auto kv : ks)
        for (auto pv : ps)
          for (auto rsv : rss)
            for (auto rlv : rls) points.push_back(ModelFlags::make(model, nv, kv, pv, rsv, rlv, metric));
    return points;
  }
};

int cmd_sweep(const SweepFlags& flags, const SeedFlag& seed_flag, const RunFlags& run,
              std::ostream& out, std::ostream& err) {
  const std::vector<ModelParams> models = flags.grid();
  if (models.empty()) throw UsageError("sweep grid is empty");
  const std::uint64_t seed = seed_flag.resolve();
  std::vector<ExperimentConfig> grid;
  for (const ModelParams& m : models) grid.push_back(run.config(m, seed));
  const std::vector<SweepRow> rows = run_sweep(grid, seed);

  nlohmann::json table = nlohmann::json::array();
  bool over_budget = false;
  for (const SweepRow& row : rows) {
    nlohmann::json j = to_json(row.result);
    j.erase("capacities");
    j["index"] = row.index;
    table.push_back(std::move(j));
    over_budget = over_budget || exceeds_budget(row.result);
    for (const std::string& w : row.result.warnings) {
      err << "warning: point " << row.index << ": " << w << '\n';
    }
  }
  nlohmann::json doc{{"version", kVersion}, {"seed", seed}, {"rows", std::move(table)}};
  if (run.json_path.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    open_output(run.json_path) << doc.dump(2) << '\n';
    out << manifest_line("sweep", "model=" + flags.model + " seed=" + std::to_string(seed) +
                                      " points=" + std::to_string(rows.size()))
        << '\n';
  }
  if (!run.csv_path.empty()) {
    std::ofstream csv = open_output(run.csv_path);
    csv << manifest_line("sweep", "seed=" + std::to_string(seed)) << '\n'
        << experiment_csv_header() << '\n';
    for (const SweepRow& row : rows) csv << experiment_csv_row(row.result) << '\n';
  }
  if (run.assert_bounds && over_budget) {
    err << "violations exceed the theoretical budget\n";
    return kAssertionFailed;
  }
  return kOk;
}

std::vector<std::string> with_config_overlay(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path || args.empty()) return args;
  // File values go right after the subcommand so that later flags win.
  std::vector<std::string> file_args = config_file_arguments(*path);
  args.insert(args.begin() + 1, file_args.begin(), file_args.end());
  return args;
}

}  // namespace

std::vector<std::string> config_file_arguments(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity bounds and Monte Carlo checks for random network models", "rgcap"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  ModelFlags gen_model;
  SeedFlag gen_seed;
  std::string gen_out;
  std::string gen_positions;
  CLI::App* generate = app.add_subcommand("generate", "Sample a graph and write its edge list");
  gen_model.attach(*generate);
  gen_seed.attach(*generate);
  generate->add_option("--out", gen_out, "Edge-list output file (default: stdout)");
  generate->add_option("--positions", gen_positions,
                       "DRN position sidecar (default: <out>.pos)");

  ModelFlags bounds_model;
  std::size_t bounds_alpha = 1;
  std::optional<double> bounds_d;
  bool bounds_csv = false;
  CLI::App* bounds = app.add_subcommand("bounds", "Print the capacity bound report");
  bounds_model.attach(*bounds);
  bounds->add_option("--alpha", bounds_alpha, "Number of terminals");
  bounds->add_option("--d", bounds_d, "Exponent d (default: midpoint of the admissible interval)");
  bounds->add_flag("--csv", bounds_csv, "Emit a CSV header and row instead of JSON");

  std::string cap_graph;
  std::size_t cap_source = 0;
  std::optional<long long> cap_t;
  std::optional<std::string> cap_terminals;
  std::string cap_mode = "paper";
  CLI::App* capacity = app.add_subcommand("capacity", "Solve the s-T capacity of a graph file");
  capacity->add_option("--graph", cap_graph, "Edge-list file")->required();
  capacity->add_option("--s", cap_source, "Source node");
  capacity->add_option("--t", cap_t, "Single terminal");
  capacity->add_option("--terminals", cap_terminals, "Comma-separated terminals");
  capacity->add_option("--mode", cap_mode, "Capacity mode")
      ->check(CLI::IsMember({"paper", "graph"}));

  ModelFlags exp_model;
  SeedFlag exp_seed;
  RunFlags exp_run;
  CLI::App* experiment = app.add_subcommand("experiment", "Run a concentration experiment");
  exp_model.attach(*experiment);
  exp_seed.attach(*experiment);
  exp_run.attach(*experiment);

  SweepFlags sweep_model;
  SeedFlag sweep_seed;
  RunFlags sweep_run;
  CLI::App* sweep = app.add_subcommand("sweep", "Run experiments over a parameter grid");
  sweep_model.attach(*sweep);
  sweep_seed.attach(*sweep);
  sweep_run.attach(*sweep);

  ModelFlags ind_model;
  SeedFlag ind_seed;
  std::size_t ind_trials = 10'000;
  std::optional<std::size_t> ind_cut;
  std::size_t ind_pairs = 2000;
  double ind_significance = 0.01;
  std::size_t ind_workers = 1;
  std::string ind_json;
  CLI::App* independence =
      app.add_subcommand("independence", "Test independence of cut-crossing DRN edges");
  ind_model.attach(*independence);
  ind_seed.attach(*independence);
  independence->add_option("--trials", ind_trials, "Sampled networks");
  independence->add_option("--cut-size", ind_cut, "Near-side relay count (default N/2)");
  independence->add_option("--pairs", ind_pairs, "Edge pairs to test");
  independence->add_option("--significance", ind_significance, "Per-pair test level");
  independence->add_option("--workers", ind_workers, "Worker threads");
  independence->add_option("--json", ind_json, "Write the JSON result here (default: stdout)");

  std::size_t reg_n = 0;
  std::size_t reg_k = 0;
  double reg_p = 0.0;
  std::string reg_growth = "constant";
  CLI::App* regime = app.add_subcommand("regime", "Classify the large-n epsilon regime (swr)");
  regime->add_option("--n", reg_n, "Node count")->required();
  regime->add_option("--k", reg_k, "Lattice degree")->required();
  regime->add_option("--p", reg_p, "Rewiring probability")->required();
  regime->add_option("--growth", reg_growth, "How k grows with n")
      ->check(CLI::IsMember({"constant", "log-poly-fraction", "other"}));

  try {
    std::vector<std::string> args = with_config_overlay(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*generate) return cmd_generate(gen_model, gen_seed, gen_out, gen_positions, out);
    if (*bounds) return cmd_bounds(bounds_model, bounds_alpha, bounds_d, bounds_csv, out);
    if (*capacity) return cmd_capacity(cap_graph, cap_source, cap_t, cap_terminals, cap_mode, out);
    if (*experiment) return cmd_experiment(exp_model, exp_seed, exp_run, out, err);
    if (*sweep) return cmd_sweep(sweep_model, sweep_seed, sweep_run, out, err);
    if (*independence) {
      if (ind_model.model != "drn") throw UsageError("independence requires the drn model");
      IndependenceConfig cfg;
      cfg.model = std::get<DrnParams>(ind_model.params());
      cfg.trials = ind_trials;
      cfg.master_seed = ind_seed.resolve();
      cfg.cut_size = ind_cut;
      cfg.max_pairs = ind_pairs;
      cfg.significance = ind_significance;
      cfg.workers = ind_workers;
      nlohmann::json j = to_json(run_independence_test(cfg));
      j["seed"] = cfg.master_seed;
      j["version"] = kVersion;
      if (ind_json.empty()) {
        out << j.dump(2) << '\n';
      } else {
        open_output(ind_json) << j.dump(2) << '\n';
        out << manifest_line("independence", describe(cfg.model) +
                                                 " seed=" + std::to_string(cfg.master_seed))
            << '\n';
      }
      return kOk;
    }
    if (*regime) {
      const RegimeClassification c =
          swr_epsilon_regime(reg_n, reg_k, reg_p, parse_k_growth(reg_growth));
      out << nlohmann::json{{"regime", to_string(c.regime)}, {"condition", c.condition}}.dump()
          << '\n';
      return kOk;
    }
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetRefused;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rgcap::cli
