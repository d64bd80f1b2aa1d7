#include "dissipchain/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dissipchain/dynamics.hpp"
#include "dissipchain/entanglement.hpp"
#include "dissipchain/errors.hpp"
#include "dissipchain/linalg.hpp"
#include "dissipchain/oracle.hpp"

namespace dissipchain::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string trimmed(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && std::isfinite(value)) return value;
  } catch (const std::exception&) {
  }
  throw UsageError(key + ": expected a number, got '" + text + "'");
}

int to_int(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw UsageError(key + ": expected an integer, got '" + text + "'");
}

std::vector<double> parse_rate_list(const std::string& text) {
  std::vector<double> rates;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    rates.push_back(to_double("rates", trimmed(item)));
  }
  if (rates.empty()) throw UsageError("rates: empty list");
  return rates;
}

model::Boundary parse_boundary(const std::string& text) {
  if (text == "open") return model::Boundary::Open;
  if (text == "closed") return model::Boundary::Closed;
  throw UsageError("boundary must be 'open' or 'closed', got '" + text + "'");
}

GammaGrid parse_gamma_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ':')) parts.push_back(trimmed(item));
  if (parts.size() != 3) {
    throw UsageError("gamma_grid must look like start:stop:step, got '" + text + "'");
  }
  return {to_double("gamma_grid start", parts[0]),
          to_double("gamma_grid stop", parts[1]),
          to_double("gamma_grid step", parts[2])};
}

// All raw option text keyed by canonical name; flag values land here first
// and config-file values fill whatever is still missing.
using Settings = std::map<std::string, std::string>;

const char* const kConfigKeys[] = {"n",     "boundary",   "rates", "gamma",
                                   "init",  "tmax",       "dt",    "gamma_grid",
                                   "out",   "outdir",     "tol",   "window"};

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  Settings values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected 'key = value'");
    }
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (std::find_if(std::begin(kConfigKeys), std::end(kConfigKeys),
                     [&key](const char* k) { return key == k; }) ==
        std::end(kConfigKeys)) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
    values[key] = value;
  }
  return values;
}

RunConfig finalize(Command command, const Settings& settings) {
  auto get = [&settings](const char* key) -> std::optional<std::string> {
    const auto it = settings.find(key);
    if (it == settings.end()) return std::nullopt;
    return it->second;
  };

  RunConfig config;
  config.command = command;

  if (const auto n = get("n")) config.n_sites = to_int("n", *n);
  if (config.n_sites < 2) throw UsageError("n must be at least 2");

  config.boundary = parse_boundary(get("boundary").value_or("open"));

  if (const auto tmax = get("tmax")) config.t_max = to_double("tmax", *tmax);
  if (const auto dt = get("dt")) config.dt = to_double("dt", *dt);
  if (!(config.dt > 0.0)) throw UsageError("dt must be positive");
  if (config.t_max < config.dt) throw UsageError("tmax must be at least dt");

  if (const auto tol = get("tol")) config.tol = to_double("tol", *tol);
  if (!(config.tol > 0.0)) throw UsageError("tol must be positive");
  if (const auto window = get("window")) config.window = to_int("window", *window);
  if (config.window < 1) throw UsageError("window must be at least 1");

  if (const auto grid = get("gamma_grid")) config.gamma_grid = parse_gamma_grid(*grid);
  if (!(config.gamma_grid.step > 0.0) || !(config.gamma_grid.start > 0.0) ||
      !(config.gamma_grid.stop < 1.0) ||
      config.gamma_grid.start > config.gamma_grid.stop) {
    throw UsageError("gamma_grid must satisfy 0 < start <= stop < 1 with positive step");
  }

  const int links = config.boundary == model::Boundary::Open ? config.n_sites - 1
                                                             : config.n_sites;
  if (const auto rates = get("rates")) {
    config.rates = parse_rate_list(*rates);
  } else if (const auto gamma = get("gamma")) {
    if (config.boundary != model::Boundary::Open || config.n_sites != 3) {
      throw UsageError("--gamma is shorthand for the open three-site chain; use --rates");
    }
    const double g = to_double("gamma", *gamma);
    if (!(g > 0.0 && g < 1.0)) throw UsageError("gamma must lie in (0,1)");
    config.rates = {g, 1.0 - g};
  } else {
    config.rates.assign(links, 0.5);
  }
  try {
    model::ChainSpec probe(config.n_sites, config.boundary, config.rates);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (const auto init = get("init")) config.initial_state = *init;
  const bool needs_init = command == Command::Evolve || command == Command::Steady;
  if (needs_init && config.initial_state.empty()) {
    throw UsageError("--init is required for this command");
  }
  if (!config.initial_state.empty()) {
    if (static_cast<int>(config.initial_state.size()) != config.n_sites) {
      throw UsageError("init label must have one character per site");
    }
    for (char ch : config.initial_state) {
      if (ch != 'e' && ch != 'g') {
        throw UsageError("init label must use only 'e' and 'g'");
      }
    }
  }

  if (const auto out = get("out")) {
    config.output_path = *out;
  } else {
    switch (command) {
      case Command::Evolve: config.output_path = "evolve.csv"; break;
      case Command::Steady: config.output_path = "steady.csv"; break;
      case Command::Sweep: config.output_path = "sweep.csv"; break;
      default: config.output_path.clear(); break;
    }
  }
  config.output_dir = get("outdir").value_or(".");
  return config;
}

std::vector<entanglement::SitePair> default_pairs(int n) {
  if (n >= 3) return {{1, 2}, {2, 3}, {1, 3}};
  return {{1, 2}};
}

std::vector<double> uniform_grid(double t_max, double dt) {
  int count = static_cast<int>(std::llround(t_max / dt));
  if (count < 1) count = 1;
  std::vector<double> times(count + 1);
  for (int k = 0; k <= count; ++k) times[k] = k * dt;
  return times;
}

std::vector<std::string> all_labels(int n) {
  std::vector<std::string> labels;
  for (int index = 0; index < (1 << n); ++index) {
    std::string label(n, 'e');
    for (int s = 1; s <= n; ++s) {
      if (index >> (n - s) & 1) label[s - 1] = 'g';
    }
    labels.push_back(std::move(label));
  }
  return labels;  // already sorted: 'e' < 'g'
}

std::string join_rates(const std::vector<double>& rates) {
  std::string out;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (i) out += ';';
    out += fmt12(rates[i]);
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw UsageError("cannot write output file: " + path);
  return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);
}

void write_series_csv(std::ostream& out, const std::optional<std::string>& init,
                      const dynamics::Trajectory& traj,
                      const entanglement::ConcurrenceSeries& series,
                      bool header) {
  if (header) {
    if (init) out << "init,";
    out << "time";
    for (const auto& [i, j] : series.pairs) out << ",C_" << i << "_" << j;
    out << ",trace_err,min_eig,excitation\n";
  }
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const ComplexMatrix rho = model::devectorize(traj.states[k]);
    const double trace_err = std::abs(rho.trace() - Complex(1.0));
    const double min_eig = linalg::hermitian_eig(rho).eigenvalues.front();
    const double excitation = model::total_excitation(rho);
    if (init) out << *init << ',';
    out << fmt12(series.times[k]);
    for (std::size_t p = 0; p < series.pairs.size(); ++p) {
      out << ',' << fmt12(series.values[k][p]);
    }
    out << ',' << fmt12(trace_err) << ',' << fmt12(min_eig) << ','
        << fmt12(excitation) << '\n';
  }
}

std::string birth_string(const entanglement::BirthClassification& cls) {
  switch (cls.kind) {
    case entanglement::BirthKind::Immediate: return "Immediate";
    case entanglement::BirthKind::Never: return "Never";
    case entanglement::BirthKind::Sudden:
      return "Sudden(t*=" + fmt12(*cls.t_star) + ")";
  }
  return "?";
}

struct EvolveResult {
  dynamics::Trajectory traj;
  entanglement::ConcurrenceSeries series;
};

EvolveResult evolve_one(const model::Liouvillian& gen, const std::string& init,
                        double t_max, double dt) {
  auto traj = dynamics::propagate(gen, model::basis_state_density(init),
                                  uniform_grid(t_max, dt));
  auto series = entanglement::concurrence_series(traj, default_pairs(gen.spec.n_sites));
  return {std::move(traj), std::move(series)};
}

int run_evolve(const RunConfig& config) {
  const model::ChainSpec spec(config.n_sites, config.boundary, config.rates);
  const auto gen = model::liouvillian(spec);
  const auto result = evolve_one(gen, config.initial_state, config.t_max, config.dt);

  auto out = open_output(config.output_path);
  write_series_csv(out, std::nullopt, result.traj, result.series, true);
  std::cout << "wrote " << config.output_path << "\n";

  for (const auto& pair : result.series.pairs) {
    const auto cls =
        entanglement::sudden_birth(result.series, pair, config.tol, config.window);
    std::cout << "pair (" << pair.first << "," << pair.second
              << "): " << birth_string(cls) << "  [tol=" << fmt12(config.tol)
              << ", window=" << config.window << ", dt=" << fmt12(config.dt)
              << "]\n";
  }
  return 0;
}

int run_steady(const RunConfig& config) {
  const model::ChainSpec spec(config.n_sites, config.boundary, config.rates);
  const auto gen = model::liouvillian(spec);
  const auto report =
      dynamics::steady_state_from(gen, model::basis_state_density(config.initial_state));

  const auto pairs = default_pairs(config.n_sites);
  std::vector<double> concurrences;
  for (const auto& pair : pairs) {
    concurrences.push_back(entanglement::concurrence(
        entanglement::partial_trace(report.steady_state, pair, config.n_sites)));
  }

  std::cout << "init=" << config.initial_state
            << " boundary=" << (config.boundary == model::Boundary::Open ? "open" : "closed")
            << " rates=" << join_rates(config.rates) << "\n";
  std::cout << "f_fit=" << (report.f_fit ? fmt12(*report.f_fit) : "n/a") << "\n";
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    std::cout << "C_" << pairs[p].first << "_" << pairs[p].second << "="
              << fmt12(concurrences[p]) << "\n";
  }
  std::cout << "residual=" << fmt12(report.residual)
            << " kernel_dim=" << report.kernel_dimension
            << " elapsed_T=" << fmt12(report.elapsed_T) << "\n";

  if (!config.output_path.empty()) {
    auto out = open_output(config.output_path);
    out << "init,boundary,rates,f_fit";
    for (const auto& pair : pairs) out << ",C_" << pair.first << "_" << pair.second;
    out << ",residual,kernel_dim,elapsed_T\n";
    out << config.initial_state << ','
        << (config.boundary == model::Boundary::Open ? "open" : "closed") << ','
        << join_rates(config.rates) << ','
        << (report.f_fit ? fmt12(*report.f_fit) : "");
    for (double c : concurrences) out << ',' << fmt12(c);
    out << ',' << fmt12(report.residual) << ',' << report.kernel_dimension << ','
        << fmt12(report.elapsed_T) << '\n';
    std::cout << "wrote " << config.output_path << "\n";
  }
  return 0;
}

struct SweepRow {
  double gamma;
  std::string init;
  double c_numeric;
  double c_oracle;
  double abs_err;
};

// One steady-state solve per (initial state, gamma) cell; cells run
// concurrently and land in a preallocated slot each, so thread scheduling
// never changes the output.
std::vector<SweepRow> sweep_rows(const std::vector<std::string>& labels,
                                 const std::vector<double>& gammas) {
  std::vector<model::Liouvillian> gens;
  gens.reserve(gammas.size());
  for (double g : gammas) {
    gens.push_back(model::liouvillian(
        model::ChainSpec(3, model::Boundary::Open, {g, 1.0 - g})));
  }

  std::vector<SweepRow> rows(labels.size() * gammas.size());
  parallel_for(rows.size(), [&](std::size_t cell) {
    const std::size_t label_index = cell / gammas.size();
    const std::size_t gamma_index = cell % gammas.size();
    const std::string& label = labels[label_index];
    const double gamma = gammas[gamma_index];

    const auto report = dynamics::steady_state_from(
        gens[gamma_index], model::basis_state_density(label));
    const double c_numeric = entanglement::concurrence(
        entanglement::partial_trace(report.steady_state, {1, 2}, 3));
    const double c_oracle = 2.0 * oracle::f_closed_form(label, gamma);
    rows[cell] = {gamma, label, c_numeric, c_oracle, std::abs(c_numeric - c_oracle)};
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "gamma,init,C_numeric,C_oracle,abs_err\n";
  for (const auto& row : rows) {
    out << fmt12(row.gamma) << ',' << row.init << ',' << fmt12(row.c_numeric)
        << ',' << fmt12(row.c_oracle) << ',' << fmt12(row.abs_err) << '\n';
  }
}

int run_sweep(const RunConfig& config) {
  if (config.n_sites != 3 || config.boundary != model::Boundary::Open) {
    throw UsageError("sweep requires the open three-site chain");
  }
  std::vector<std::string> labels;
  if (config.initial_state.empty()) {
    labels = all_labels(3);
  } else {
    labels = {config.initial_state};
  }
  const auto rows = sweep_rows(labels, config.gamma_grid.points());
  auto out = open_output(config.output_path);
  write_sweep_csv(out, rows);
  std::cout << "wrote " << config.output_path << "\n";
  return 0;
}

int run_check(const RunConfig& config) {
  const model::ChainSpec spec(config.n_sites, config.boundary, config.rates);
  const auto gen = model::liouvillian(spec);
  const auto kernel = dynamics::kernel_report(gen);

  std::vector<ComplexMatrix> links;
  for (int link = 1; link <= spec.link_count(); ++link) {
    links.push_back(model::link_operator(link, spec));
  }
  const int commutant = dynamics::commutant_dimension(links);

  std::string steady_label = "non-unique (kernel dimension " +
                             std::to_string(kernel.dimension) + ")";
  if (kernel.dimension == 1) {
    ComplexMatrix rho = model::devectorize(kernel.basis.front());
    const Complex trace = rho.trace();
    steady_label = "mixed";
    if (std::abs(trace) > 1e-6) {
      rho *= Complex(1.0) / trace;
      for (int b = 0; b < rho.rows(); ++b) {
        if (std::abs(rho(b, b) - Complex(1.0)) < 1e-8) {
          std::string label(config.n_sites, 'e');
          for (int s = 1; s <= config.n_sites; ++s) {
            if (b >> (config.n_sites - s) & 1) label[s - 1] = 'g';
          }
          steady_label = label;
          break;
        }
      }
    }
  }

  std::cout << "boundary=" << (config.boundary == model::Boundary::Open ? "open" : "closed")
            << "\n";
  std::cout << "rates=" << join_rates(config.rates) << "\n";
  std::cout << "kernel_dim=" << kernel.dimension << "\n";
  std::cout << "commutant_dim=" << commutant << "\n";
  std::cout << "steady_state=" << steady_label << "\n";

  if (!config.output_path.empty()) {
    auto out = open_output(config.output_path);
    out << "boundary,rates,kernel_dim,commutant_dim,steady_state\n";
    out << (config.boundary == model::Boundary::Open ? "open" : "closed") << ','
        << join_rates(config.rates) << ',' << kernel.dimension << ','
        << commutant << ',' << steady_label << '\n';
    std::cout << "wrote " << config.output_path << "\n";
  }
  return 0;
}

// The four canonical datasets: concurrence time series from |eee>, the
// two-excitation and one-excitation starts at gamma = 1/2, and the
// steady-state sweep over every basis state.
int run_reproduce(const RunConfig& config) {
  if (config.output_dir != "." && !config.output_dir.empty()) {
    fs::create_directories(config.output_dir);
  }
  auto path_for = [&config](const char* name) {
    return (fs::path(config.output_dir) / name).string();
  };

  const model::ChainSpec spec(3, model::Boundary::Open, {0.5, 0.5});
  const auto gen = model::liouvillian(spec);
  const double t_max = 20.0;
  const double dt = 0.01;

  {
    auto out = open_output(path_for("fig2.csv"));
    const auto result = evolve_one(gen, "eee", t_max, dt);
    write_series_csv(out, std::nullopt, result.traj, result.series, true);
    std::cout << "wrote " << path_for("fig2.csv") << "\n";
  }

  const struct {
    const char* file;
    std::vector<std::string> inits;
  } stacked[] = {{"fig3.csv", {"eeg", "ege"}}, {"fig4.csv", {"egg", "geg"}}};
  for (const auto& fig : stacked) {
    auto out = open_output(path_for(fig.file));
    bool header = true;
    for (const auto& init : fig.inits) {
      const auto result = evolve_one(gen, init, t_max, dt);
      write_series_csv(out, init, result.traj, result.series, header);
      header = false;
    }
    std::cout << "wrote " << path_for(fig.file) << "\n";
  }

  {
    auto out = open_output(path_for("fig5.csv"));
    write_sweep_csv(out, sweep_rows(all_labels(3), GammaGrid{}.points()));
    std::cout << "wrote " << path_for("fig5.csv") << "\n";
  }
  return 0;
}

}  // namespace

std::vector<double> GammaGrid::points() const {
  const int count = static_cast<int>(std::llround((stop - start) / step));
  std::vector<double> grid;
  grid.reserve(count + 1);
  for (int k = 0; k <= count; ++k) grid.push_back(start + k * step);
  return grid;
}

int thread_budget() {
  if (const char* env = std::getenv("DISSIPCHAIN_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1) {
      throw UsageError("DISSIPCHAIN_THREADS must be a positive integer");
    }
    return static_cast<int>(std::min<long>(value, 256));
  }
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware ? static_cast<int>(hardware) : 1;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"dissipative qubit chain simulator"};
  app.name("dissipchain");
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> raw;
  struct Flag {
    const char* names;
    const char* key;
    const char* help;
  };
  const Flag flags[] = {
      {"-n,--n-sites", "n", "number of qubits in the chain (default 3)"},
      {"--boundary", "boundary", "chain boundary: open | closed (default open)"},
      {"--rates", "rates", "comma-separated per-link decay rates"},
      {"--gamma", "gamma", "shorthand rates (gamma, 1-gamma); open three-site chain only"},
      {"--init", "init", "initial product state label over {e,g}, e.g. eeg"},
      {"--tmax", "tmax", "evolution horizon (default 20)"},
      {"--dt", "dt", "time grid spacing (default 0.01)"},
      {"--gamma-grid", "gamma_grid", "sweep grid start:stop:step (default 0.05:0.95:0.05)"},
      {"--out", "out", "output CSV path"},
      {"--outdir", "outdir", "output directory for reproduce (default .)"},
      {"--tol", "tol", "concurrence birth threshold (default 1e-6)"},
      {"--window", "window", "grid points after t=0 counted as immediate (default 5)"},
  };

  CLI::App* const subcommands[] = {
      app.add_subcommand("evolve", "evolve an initial product state and write the concurrence time series"),
      app.add_subcommand("steady", "relax an initial state and report f, concurrences and residual"),
      app.add_subcommand("sweep", "steady-state concurrence versus gamma, one row per (init, gamma)"),
      app.add_subcommand("check", "kernel and commutant dimensions; names a unique steady state"),
      app.add_subcommand("reproduce", "write the four canonical figure datasets fig2..fig5.csv"),
  };
  std::deque<std::string> storage;  // stable addresses for option targets
  std::map<const CLI::App*, std::map<std::string, std::string*>> holders;
  for (CLI::App* cmd : subcommands) {
    cmd->add_option("--config", config_path,
                    "file of 'key = value' lines; flags take precedence");
    for (const Flag& flag : flags) {
      storage.emplace_back();
      cmd->add_option(flag.names, storage.back(), flag.help);
      holders[cmd][flag.key] = &storage.back();
    }
  }

  std::vector<std::string> argv_storage;
  argv_storage.push_back("dissipchain");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& word : argv_storage) argv.push_back(word.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    throw HelpRequested{};
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    throw HelpRequested{};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const CLI::App* active = nullptr;
  Command command = Command::Evolve;
  const Command order[] = {Command::Evolve, Command::Steady, Command::Sweep,
                           Command::Check, Command::Reproduce};
  for (std::size_t i = 0; i < std::size(subcommands); ++i) {
    if (app.got_subcommand(subcommands[i])) {
      active = subcommands[i];
      command = order[i];
      break;
    }
  }
  if (active == nullptr) throw UsageError("a subcommand is required");

  for (const Flag& flag : flags) {
    const std::string long_name = std::string(flag.names).substr(
        std::string(flag.names).find("--"));
    if (active->count(long_name) > 0) {
      raw[flag.key] = *holders.at(active).at(flag.key);
    }
  }
  if (!config_path.empty()) {
    for (const auto& [key, value] : read_config_file(config_path)) {
      raw.emplace(key, value);  // flags already present win
    }
  }
  return finalize(command, raw);
}

int run(const RunConfig& config) {
  switch (config.command) {
    case Command::Evolve: return run_evolve(config);
    case Command::Steady: return run_steady(config);
    case Command::Sweep: return run_sweep(config);
    case Command::Check: return run_check(config);
    case Command::Reproduce: return run_reproduce(config);
  }
  throw UsageError("unknown command");
}

int cli_main(int argc, const char* const* argv) {
  try {
    const RunConfig config = parse_args({argv + 1, argv + argc});
    return run(config);
  } catch (const HelpRequested&) {
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dissipchain::cli
