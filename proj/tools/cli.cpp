#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "srm/diagnostics.hpp"
#include "srm/measure_solution.hpp"
#include "srm/parallel.hpp"
#include "srm/recurrence.hpp"
#include "srm/report.hpp"
#include "srm/rng.hpp"

namespace srm::cli {

namespace {

struct Options {
  std::uint64_t seed = 42;
  std::string out = "-";
  int threads = 0;

  // simulate / hopf-check
  std::string map_name;
  std::int64_t steps = 0;
  std::string noise_law = "uniform";
  std::int64_t particles = 10000;
  std::int64_t window = 16;
  std::int64_t specs = 32;
  bool perturb = false;

  // diagnose; -1 selects the per-suite default
  std::string suite;
  std::int64_t n = -1;
  std::int64_t diag_particles = -1;
  double alpha = 0.01;
  std::int64_t index = -1;
  double t = std::numbers::pi / 3.0;
  double rho = 0.8;
  double a = 0.5;
  std::string diag_map = "fractional";
  std::int64_t window_lo = 0;
  std::int64_t window_hi = -1;
  std::vector<std::int64_t> shifts{1, 2, 5};
  std::string csv;
  bool nonstationary = false;
};

struct Outcome {
  nlohmann::json reports = nlohmann::json::array();
  bool passed = true;

  void add(const StatReport& r) {
    reports.push_back(r);
    passed = passed && r.passed;
  }
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  if (!file.flush()) throw IoError("write to " + path + " failed");
}

std::int64_t or_default(std::int64_t value, std::int64_t fallback) {
  return value >= 0 ? value : fallback;
}

std::vector<Index> shifts_of(const Options& o) {
  return {o.shifts.begin(), o.shifts.end()};
}

MeasureBuilder default_builder(const Options& o, const UpdateMap& map,
                               std::int64_t particles, std::int64_t hi) {
  MeasureBuilder b;
  b.map = map;
  b.particle_count = static_cast<std::size_t>(particles);
  b.window = {o.window_lo, hi};
  b.init_index = o.window_lo;
  b.init_seed_stream = derive_seed(o.seed, Stream::initializer, 0);
  return b;
}

DiagnosticsConfig diag_config(const Options& o, std::int64_t sample_size,
                              std::int64_t particles, std::int64_t hi) {
  DiagnosticsConfig c;
  c.sample_size = sample_size;
  c.particle_count = particles;
  c.alpha = o.alpha;
  c.seed = o.seed;
  c.window = {o.window_lo, hi};
  return c;
}

// simulate ------------------------------------------------------------------

std::string simulate(const Options& o) {
  const UpdateMap map = parse_map(o.map_name);
  NoiseLaw law = NoiseLaw::uniform;
  if (o.noise_law == "normal") law = NoiseLaw::normal;
  const NoiseWindow noise =
      NoiseModel{law, derive_seed(o.seed, Stream::noise, 0)}.generate({1, o.steps});
  const double x0 = draw_initializer(derive_seed(o.seed, Stream::initializer, 0), {});
  const PathWindow path = iterate_forward(x0, noise, map);

  std::ostringstream csv;
  csv << "index,x,xi\n";
  for (Index i = path.first_index(); i <= path.last_index(); ++i) {
    csv << i << ',' << format_double(path[i]) << ',';
    if (noise.covers(i)) csv << format_double(noise[i]);
    csv << '\n';
  }
  return csv.str();
}

// hopf-check ----------------------------------------------------------------

Outcome hopf_check(const Options& o, std::ostream& err) {
  const UpdateMap map = parse_map(o.map_name);
  MeasureBuilder builder;
  builder.map = map;
  builder.particle_count = static_cast<std::size_t>(o.particles);
  builder.window = {0, o.window - 1};
  builder.init_index = 0;
  builder.init_seed_stream = derive_seed(o.seed, Stream::initializer, 0);
  const NoiseWindow noise = NoiseModel{NoiseLaw::uniform, derive_seed(o.seed, Stream::noise, 0)}
                                .generate(builder.required_noise());
  ParticleMeasure mu = conditional_measure(builder, noise);
  if (o.perturb) mu = shuffle_coordinate(mu, builder.window.hi, o.seed);

  std::vector<CharSpec> specs = hopf_spec_grid(builder.window);
  for (auto& s : random_char_specs(builder.window, static_cast<std::size_t>(o.specs), o.seed)) {
    specs.push_back(std::move(s));
  }
  Outcome outcome;
  double worst = 0.0;
  for (const auto& spec : specs) {
    const ResidualReport r = evaluate_hopf(mu, noise, spec, map);
    worst = std::max(worst, r.residual);
    outcome.reports.push_back(r);
  }
  outcome.passed = worst <= 1e-9;
  err << "hopf-check: " << specs.size() << " specs, max residual " << worst << '\n';
  return outcome;
}

// diagnose ------------------------------------------------------------------

Outcome suite_tsirelson(const Options& o, std::ostream& out) {
  const UpdateMap map = parse_map(o.diag_map);
  const std::int64_t hi = or_default(o.window_hi, 10);
  const DiagnosticsConfig c =
      diag_config(o, or_default(o.n, 100000), or_default(o.diag_particles, 10000), hi);
  const Index index = or_default(o.index, hi);
  Outcome outcome;
  const auto phases = tsirelson_phases(c, index, map);
  outcome.add(tsirelson_statistic(c, index, map));
  outcome.add(conditional_char_statistic(c, index, map));
  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << "replica,re,im\n";
    for (std::size_t r = 0; r < phases.size(); ++r) {
      csv << r << ',' << format_double(phases[r].real()) << ','
          << format_double(phases[r].imag()) << '\n';
    }
    write_text(o.csv, csv.str(), out);
  }
  return outcome;
}

Outcome suite_stationarity(const Options& o, std::ostream&) {
  Outcome outcome;
  if (o.nonstationary) {
    // Transient contraction chain started off its stationary law.
    MeasureBuilder b = default_builder(o, contraction_map(0.5),
                                       or_default(o.diag_particles, 200),
                                       or_default(o.window_hi, o.window_lo + 5));
    b.init_law = {0.0, 0.5};
    const std::vector<Index> shifts{1};
    const auto deltas = unit_interval_cylinders(common_range(b.window, shifts));
    for (const auto& r : stationarity_suite(
             b, shifts, deltas, diag_config(o, or_default(o.n, 1000), 1, b.window.hi))) {
      outcome.add(r);
    }
    return outcome;
  }
  const MeasureBuilder b = default_builder(o, parse_map(o.diag_map),
                                           or_default(o.diag_particles, 200),
                                           or_default(o.window_hi, o.window_lo + 10));
  const auto shifts = shifts_of(o);
  const auto deltas = unit_interval_cylinders(common_range(b.window, shifts));
  for (const auto& r : stationarity_suite(
           b, shifts, deltas, diag_config(o, or_default(o.n, 1000), 1, b.window.hi))) {
    outcome.add(r);
  }
  return outcome;
}

Outcome suite_rotation(const Options& o, std::ostream&) {
  Outcome outcome;
  outcome.add(rotation_invariance_demo(diag_config(o, or_default(o.n, 100000), 1, 0), o.t));
  return outcome;
}

Outcome suite_conditional_law(const Options& o, std::ostream&) {
  const std::int64_t hi = or_default(o.window_hi, o.window_lo + 10);
  Outcome outcome;
  outcome.add(conditional_law_demo(
      o.rho, o.a, diag_config(o, 1, or_default(o.diag_particles, 10000), hi)));
  const DiagnosticsConfig stationary = diag_config(o, or_default(o.n, 1000), 200, hi);
  for (const auto& r : conditional_law_stationarity(o.rho, o.a, stationary, shifts_of(o))) {
    outcome.add(r);
  }
  return outcome;
}

Outcome suite_consistency(const Options& o, std::ostream&) {
  const MeasureBuilder b = default_builder(o, parse_map(o.diag_map),
                                           or_default(o.diag_particles, 1000),
                                           or_default(o.window_hi, o.window_lo + 16));
  Outcome outcome;
  outcome.add(consistency_suite(b, static_cast<std::size_t>(or_default(o.n, 100)), o.seed));
  return outcome;
}

Outcome suite_equivariance(const Options& o, std::ostream&) {
  const MeasureBuilder b = default_builder(o, parse_map(o.diag_map),
                                           or_default(o.diag_particles, 1000),
                                           or_default(o.window_hi, o.window_lo + 16));
  Outcome outcome;
  for (const auto& r : equivariance_suite(b, shifts_of(o), o.seed)) outcome.add(r);
  return outcome;
}

using Suite = std::function<Outcome(const Options&, std::ostream&)>;

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table{
      {"tsirelson", suite_tsirelson},
      {"stationarity", suite_stationarity},
      {"rotation", suite_rotation},
      {"conditional-law", suite_conditional_law},
      {"consistency", suite_consistency},
      {"equivariance", suite_equivariance},
  };
  return table;
}

std::map<std::string, std::string> collect_parameters(const CLI::App& app,
                                                      const CLI::App* sub) {
  std::map<std::string, std::string> params;
  const auto record = [&](const CLI::App& from) {
    for (const CLI::Option* opt : from.get_options()) {
      if (opt == from.get_help_ptr()) continue;
      const std::string name = opt->get_name(false, true);
      std::string value;
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      if (opt->count() == 0) value = opt->get_default_str();
      params[name] = value;
    }
  };
  record(app);
  if (sub) record(*sub);
  return params;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Measure-valued solutions of stochastic recurrence equations", "srm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--out", o.out, "Report path, '-' for stdout")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Iterate x_{n+1} = phi(x_n, xi_{n+1}); CSV index,x,xi");
  sim->add_option("map", o.map_name, "fractional | contraction:a=<value>")->required();
  sim->add_option("steps", o.steps, "Number of steps")->required()->check(CLI::PositiveNumber);
  sim->add_option("--noise", o.noise_law, "Noise law")
      ->check(CLI::IsMember({"uniform", "normal"}))
      ->capture_default_str();

  auto* hopf = app.add_subcommand("hopf-check", "Characteristic-functional residuals (JSON)");
  hopf->add_option("map", o.map_name, "fractional | contraction:a=<value>")->required();
  hopf->add_option("--particles", o.particles)->check(CLI::PositiveNumber)->capture_default_str();
  hopf->add_option("--window", o.window)->check(CLI::Range(3, 1 << 20))->capture_default_str();
  hopf->add_option("--specs", o.specs)->check(CLI::NonNegativeNumber)->capture_default_str();
  hopf->add_flag("--perturb", o.perturb, "Shuffle the last coordinate across particles");

  auto* diag = app.add_subcommand("diagnose", "Run a diagnostic suite (JSON)");
  diag->add_option("suite", o.suite,
                   "tsirelson | stationarity | rotation | conditional-law | consistency | "
                   "equivariance")
      ->required();
  diag->add_option("--n", o.n, "Sample size / replicas / pairs")->capture_default_str();
  diag->add_option("--particles", o.diag_particles)->capture_default_str();
  diag->add_option("--alpha", o.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  diag->add_option("--index", o.index, "Tested index (default: window end)")->capture_default_str();
  diag->add_option("--t", o.t, "Rotation time")->capture_default_str();
  diag->add_option("--rho", o.rho)->capture_default_str();
  diag->add_option("--a", o.a)->capture_default_str();
  diag->add_option("--map", o.diag_map)->capture_default_str();
  diag->add_option("--window-lo", o.window_lo)->capture_default_str();
  diag->add_option("--window-hi", o.window_hi)->capture_default_str();
  diag->add_option("--shifts", o.shifts)->delimiter(',')->capture_default_str();
  diag->add_option("--csv", o.csv, "Raw per-replica CSV (tsirelson)");
  diag->add_flag("--nonstationary", o.nonstationary,
                 "Stationarity negative control (transient contraction chain)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  set_thread_count(o.threads);
  RunManifest manifest;
  manifest.master_seed = o.seed;
  manifest.started_at = utc_timestamp();

  try {
    if (sim->parsed()) {
      manifest.command = "simulate";
      manifest.parameters = collect_parameters(app, sim);
      const std::string csv = simulate(o);
      write_text(o.out, csv, out);
      if (o.out != "-") {
        manifest.finished_at = utc_timestamp();
        write_text(o.out + ".manifest.json", nlohmann::json(manifest).dump(2) + "\n", out);
      }
      return ok;
    }

    Outcome outcome;
    if (hopf->parsed()) {
      manifest.command = "hopf-check";
      manifest.parameters = collect_parameters(app, hopf);
      outcome = hopf_check(o, err);
    } else {
      const auto it = suites().find(o.suite);
      if (it == suites().end()) {
        err << "error: unknown suite '" << o.suite << "'\n";
        return usage;
      }
      manifest.command = "diagnose " + o.suite;
      manifest.parameters = collect_parameters(app, diag);
      outcome = it->second(o, out);
    }
    manifest.finished_at = utc_timestamp();
    write_text(o.out, report_document(manifest, outcome.reports).dump(2) + "\n", out);
    return outcome.passed ? ok : check_failed;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const UnsupportedOperation& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
}

}  // namespace srm::cli
