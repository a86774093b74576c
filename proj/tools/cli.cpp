// Copyright 2026 The fftlb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "CLI11.hpp"
#include "fftlb/algorithm_io.hpp"
#include "fftlb/bottleneck.hpp"
#include "fftlb/builders.hpp"
#include "fftlb/directions.hpp"
#include "fftlb/lemmas.hpp"
#include "fftlb/quantized.hpp"
#include "fftlb/quasi_entropy.hpp"
#include "fftlb/random.hpp"
#include "fftlb/trajectory.hpp"
#include "json.hpp"

namespace fftlb::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kInequalityTolerance = 1e-7;

// Usage problems that CLI11 cannot catch (conflicting sources, bad specs).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked inequality that failed; carries the report to print.
struct Outcome {
  bool violated = false;
  std::string message;
};

struct Common {
  std::string input;
  std::string build;
  std::string output;
  std::size_t threads = 1;
};

void add_source(CLI::App* cmd, Common& c) {
  cmd->add_option("input", c.input, "Algorithm file in gate text format");
  cmd->add_option("--build", c.build, "Builder spec instead of a file (wht:N, dft:N, ...)");
}

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--output", c.output, "Write the result here instead of stdout");
}

LinearAlgorithm load_source(const Common& c) {
  if (c.input.empty() == c.build.empty()) {
    throw UsageError("give exactly one of an input file or --build SPEC");
  }
  if (!c.build.empty()) {
    try {
      return build_fixture(parse_fixture_spec(c.build));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return load_algorithm(c.input);
}

Json vector_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v(k));
  return arr;
}

Json header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Json algorithm_json(const LinearAlgorithm& a) {
  Json j;
  j["label"] = a.label();
  j["n"] = a.dimension();
  j["m"] = a.gate_count();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_real(double v) { return format_real(v); }

// ---------------------------------------------------------------------------
// build

struct BuildArgs {
  Common common;
  std::optional<std::size_t> wht;
  std::optional<std::size_t> dft;
  std::string spec;
};

std::string do_build(const BuildArgs& a) {
  const int sources = (a.wht ? 1 : 0) + (a.dft ? 1 : 0) + (a.spec.empty() ? 0 : 1);
  if (sources != 1) throw UsageError("give exactly one of --wht N, --dft N or --spec SPEC");
  try {
    if (a.wht) return render_algorithm(build_wht(*a.wht));
    if (a.dft) return render_algorithm(build_dft_real(*a.dft));
    return render_algorithm(build_fixture(parse_fixture_spec(a.spec)));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
  Common common;
  double residual_threshold = 1e-6;
};

std::string do_validate(const ValidateArgs& a) {
  const auto alg = load_source(a.common);
  ValidateOptions options;
  options.residual_threshold = a.residual_threshold;
  const auto report = validate(alg, options);
  Json j = header("validate");
  j["algorithm"] = algorithm_json(alg);
  j["rotations"] = alg.rotation_count();
  j["max_residual"] = report.max_residual;
  j["max_condition_number"] = report.max_condition_number();
  j["unstable"] = report.unstable;
  j["condition_numbers"] = report.condition_numbers;
  return dump(j);
}

// ---------------------------------------------------------------------------
// trace

struct PqArgs {
  std::string p = "identity";
  std::string q = "identity";
};

void add_pq(CLI::App* cmd, PqArgs& pq) {
  cmd->add_option("--P", pq.p, "Right factor for M: identity | proj:i,j,... | file:path");
  cmd->add_option("--Q", pq.q, "Right factor for M^{-T}: identity | proj:i,j,... | file:path");
}

Projections load_pq(const PqArgs& pq, std::size_t n) {
  Projections out;
  if (pq.p != "identity") out.p = parse_projection(pq.p, n);
  if (pq.q != "identity") out.q = parse_projection(pq.q, n);
  return out;
}

struct TraceArgs {
  Common common;
  PqArgs pq;
  std::string format = "csv";
};

std::string do_trace(const TraceArgs& a, Outcome& outcome) {
  const auto alg = load_source(a.common);
  const auto trace = trace_potential(alg, load_pq(a.pq, alg.dimension()));
  for (std::size_t t = 1; t < trace.values.size(); ++t) {
    const double slack = trace.per_step_bound[t] - trace.per_step_delta[t];
    if (slack < -kInequalityTolerance && !outcome.violated) {
      outcome.violated = true;
      outcome.message = "per-step bound violated at step " + std::to_string(t) +
                        " (slack " + format_real(slack) + ")";
    }
  }
  std::ostringstream os;
  if (a.format == "json") {
    Json j = header("trace");
    j["algorithm"] = algorithm_json(alg);
    j["phi"] = trace.values;
    j["delta"] = trace.per_step_delta;
    j["bound"] = trace.per_step_bound;
    j["final_phi"] = trace.values.back();
    os << dump(j);
    return os.str();
  }
  os << "# schema_version: " << kSchemaVersion << "\n";
  os << "t,phi,delta,bound,touched_i,touched_j\n";
  for (std::size_t t = 0; t < trace.values.size(); ++t) {
    os << t << ',' << csv_real(trace.values[t]) << ',' << csv_real(trace.per_step_delta[t]) << ','
       << csv_real(trace.per_step_bound[t]) << ',';
    const auto& rows = trace.touched[t];
    if (rows.empty()) {
      os << ",\n";
    } else {
      os << rows.first() << ',' << rows.second() << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// scan / chain

struct ScanArgs {
  Common common;
  PqArgs pq;
  std::size_t R = 1;
  bool include_constants = false;
  bool per_step = false;
};

std::string do_scan(const ScanArgs& a, Outcome& outcome) {
  const auto alg = load_source(a.common);
  ScanOptions options;
  options.R = a.R;
  options.include_constant_gates = a.include_constants;
  const auto r = scan_bottlenecks(alg, load_pq(a.pq, alg.dimension()), options);
  Json j = header("scan");
  j["algorithm"] = algorithm_json(alg);
  j["R"] = r.R;
  j["padded_gate_count"] = r.padded_gate_count;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack();
  j["potential_change"] = r.potential_change;
  j["window_star"] = r.window_star;
  j["t_star"] = r.t_star;
  j["rows_star"] = r.rows_star;
  if (a.per_step) {
    Json windows = Json::array();
    for (const auto& w : r.per_step) {
      Json e;
      e["window"] = w.window;
      e["t_start"] = w.t_start;
      e["t_end"] = w.t_end;
      e["rows"] = w.rows;
      e["included"] = w.included;
      e["at_start"] = w.at_start;
      e["at_end"] = w.at_end;
      windows.push_back(e);
    }
    j["windows"] = windows;
  }
  if (r.slack() < -kInequalityTolerance) {
    outcome.violated = true;
    outcome.message = "bottleneck inequality violated at t = " + std::to_string(r.t_star) +
                      " (slack " + format_real(r.slack()) + ")";
  }
  return dump(j);
}

struct ChainArgs {
  Common common;
  PqArgs pq;
  std::size_t R = 1;
};

std::string do_chain(const ChainArgs& a, Outcome& outcome) {
  const auto alg = load_source(a.common);
  const auto r = verify_bottleneck_chain(alg, load_pq(a.pq, alg.dimension()), a.R);
  Json j = header("chain");
  j["algorithm"] = algorithm_json(alg);
  j["R"] = r.R;
  Json links = Json::array();
  for (const auto& link : r.links) {
    Json e;
    e["name"] = link.name;
    e["lhs"] = link.lhs;
    e["rhs"] = link.rhs;
    e["slack"] = link.slack;
    links.push_back(e);
    if (link.slack < -kInequalityTolerance && !outcome.violated) {
      outcome.violated = true;
      outcome.message = "chain link '" + link.name + "' violated (slack " +
                        format_real(link.slack) + ")";
    }
  }
  j["links"] = links;
  j["worst_window"] = r.worst_window;
  j["min_slack"] = r.min_slack();
  j["holds"] = r.holds(kInequalityTolerance);
  return dump(j);
}

// ---------------------------------------------------------------------------
// lemma

struct LemmaArgs {
  Common common;
  std::uint64_t seed = 1729;
  std::size_t unit_trials = 10000;
  std::size_t unit_max_a = 64;
  std::size_t trials = 1000;
  std::size_t max_a = 16;
  std::size_t max_n = 16;
  std::size_t pairs = 100;
  std::vector<std::size_t> sizes{8, 16, 32};
  bool corrected = false;
};

Json sweep_json(const LemmaSweepReport& r) {
  Json j;
  j["name"] = r.name;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["min_slack"] = r.min_slack;
  j["worst_trial"] = r.worst_trial;
  j["worst_rows"] = r.worst_rows;
  j["worst_cols"] = r.worst_cols;
  j["holds"] = r.holds();
  return j;
}

std::string do_lemma(const LemmaArgs& a, Outcome& outcome) {
  const auto unit = sweep_unit_pair_bound(a.unit_trials, a.unit_max_a, a.seed);
  const auto unit_sharp =
      sweep_unit_pair_bound(a.unit_trials, a.unit_max_a, a.seed, UnitPairBound::kSharp);
  const auto orth = sweep_orthogonal_change(a.trials, a.max_a, a.max_n, a.seed);
  const auto orth2 = sweep_orthogonal_change(a.trials, a.max_a, a.max_n, a.seed, 2.0);
  const auto nonsing = sweep_nonsingular_change(a.trials, a.max_a, a.max_n, a.seed);

  Json j = header("lemma");
  j["seed"] = a.seed;
  Json stated = Json::object();
  stated["unit_pair"] = sweep_json(unit);
  stated["orthogonal_change"] = sweep_json(orth);
  stated["nonsingular_change"] = sweep_json(nonsing);
  j["stated"] = stated;
  Json corrected = Json::object();
  corrected["unit_pair_sharp"] = sweep_json(unit_sharp);
  corrected["orthogonal_change_factor2"] = sweep_json(orth2);
  j["corrected"] = corrected;

  Json fourier = Json::array();
  bool fourier_ok = true;
  for (std::size_t n : a.sizes) {
    Rng rng(mix_seed(a.seed, n));
    double lower = std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < a.pairs; ++k) {
      const Matrix p = random_orthogonal_projection(rng, n, uniform_index(rng, n + 1));
      const Matrix q = random_orthogonal_projection(rng, n, uniform_index(rng, n + 1));
      const auto r = verify_fourier_projection_bound(n, p, q);
      lower = std::min(lower, r.lower_slack());
      upper = std::min(upper, r.upper_slack());
    }
    Json e;
    e["n"] = n;
    e["pairs"] = a.pairs;
    e["lower_constant"] = lower_bound_constant(n);
    e["min_lower_slack"] = lower;
    e["min_upper_slack"] = upper;
    fourier.push_back(e);
    // Equality at P = Q = Id leaves rounding-level negatives.
    fourier_ok = fourier_ok && lower >= -1e-9 && upper >= -1e-9;
  }
  j["fourier_projection"] = fourier;

  const bool sweeps_ok = a.corrected ? (unit_sharp.holds() && orth2.holds() && nonsing.holds())
                                     : (unit.holds() && orth.holds() && nonsing.holds());
  if (!sweeps_ok || !fourier_ok) {
    outcome.violated = true;
    const auto judged = a.corrected ? std::array{&unit_sharp, &orth2, &nonsing}
                                    : std::array{&unit, &orth, &nonsing};
    for (const auto* r : judged) {
      if (!r->holds()) {
        outcome.message = r->name + ": " + std::to_string(r->violations) +
                          " violations, worst trial " + std::to_string(r->worst_trial) +
                          " (slack " + format_real(r->min_slack) + ")";
        break;
      }
    }
    if (outcome.message.empty()) outcome.message = "Fourier projection bound violated";
  }
  return dump(j);
}

// ---------------------------------------------------------------------------
// extract / volume / underflow

struct ExtractArgs {
  Common common;
  std::optional<std::string> tau;
  std::string criterion = "either";
  bool rotations_only = false;
  bool all_rows = false;
  bool any_target = false;
  std::optional<std::string> b;
  std::optional<std::size_t> n_prime;
};

void add_extract_options(CLI::App* cmd, ExtractArgs& a) {
  cmd->add_option("--tau", a.tau, "Threshold (default sqrt(b/2))");
  cmd->add_option("--criterion", a.criterion, "either | product")
      ->check(CLI::IsMember({"either", "product"}));
  cmd->add_flag("--rotations-only", a.rotations_only, "Skip constant-gate steps");
  cmd->add_flag("--all-rows", a.all_rows, "Scan every row of every M^(t), t = 0..m");
  cmd->add_flag("--any-target", a.any_target, "Do not require the final matrix to be F_WHT");
  cmd->add_option("--b", a.b, "Speedup used in the closed-form volume (default n log2 n / m)");
  cmd->add_option("--n-prime", a.n_prime, "n' in the closed form (default: extracted count)");
}

ExtractOptions extract_options(const ExtractArgs& a, const LinearAlgorithm& alg) {
  ExtractOptions o;
  o.tau = a.tau ? parse_real(*a.tau) : default_tau(alg);
  o.criterion = a.criterion == "product" ? ExtractCriterion::kProduct : ExtractCriterion::kEitherNorm;
  o.include_constant_gates = !a.rotations_only;
  o.touched_rows_only = !a.all_rows;
  o.require_walsh_hadamard_target = !a.any_target;
  return o;
}

Json system_json(const DirectionSystem& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["size"] = s.size();
  j["steps"] = s.steps;
  j["coords"] = s.coords;
  j["magnitudes"] = s.magnitudes;
  Json vs = Json::array();
  for (const auto& v : s.vectors) vs.push_back(vector_json(v));
  j["vectors"] = vs;
  Json raws = Json::array();
  for (const auto& v : s.raw_rows) raws.push_back(vector_json(v));
  j["raw_rows"] = raws;
  j["distinct_steps"] = s.distinct_steps();
  j["orthonormality_error"] = s.orthonormality_error();
  return j;
}

Json volume_json(const VolumeBound& v) {
  Json j;
  j["sum_log_gamma"] = v.sum_log_gamma;
  j["closed_form"] = v.closed_form;
  j["b"] = v.b;
  j["n_prime"] = v.n_prime;
  return j;
}

VolumeBound volume_of(const ExtractArgs& a, const LinearAlgorithm& alg, const ExtendedBasis& basis) {
  const double b = a.b ? parse_real(*a.b) : speedup_factor(alg);
  const std::size_t n_prime = a.n_prime ? *a.n_prime : basis.extracted;
  return uncertainty_volume_log(basis, b, n_prime);
}

void check_volume(const VolumeBound& v, Outcome& outcome) {
  if (v.sum_log_gamma < v.closed_form - kInequalityTolerance) {
    outcome.violated = true;
    outcome.message = "volume bound violated (slack " +
                      format_real(v.sum_log_gamma - v.closed_form) + ")";
  }
}

std::string do_extract(const ExtractArgs& a, Outcome& outcome) {
  const auto alg = load_source(a.common);
  const auto options = extract_options(a, alg);
  const auto r = extract_directions(alg, options);
  const auto basis = extend_basis(r.underflow, alg.dimension());
  const auto volume = volume_of(a, alg, basis);
  check_volume(volume, outcome);
  Json j = header("extract");
  j["algorithm"] = algorithm_json(alg);
  j["tau"] = options.tau;
  j["criterion"] = a.criterion;
  j["final_score"] = r.final_score;
  j["overflow"] = system_json(r.overflow);
  j["underflow"] = system_json(r.underflow);
  j["volume"] = volume_json(volume);
  return dump(j);
}

std::string do_volume(const ExtractArgs& a, Outcome& outcome) {
  const auto alg = load_source(a.common);
  const auto options = extract_options(a, alg);
  const auto r = extract_directions(alg, options);
  const auto basis = extend_basis(r.underflow, alg.dimension());
  const auto volume = volume_of(a, alg, basis);
  check_volume(volume, outcome);
  Json j = header("volume");
  j["algorithm"] = algorithm_json(alg);
  j["tau"] = options.tau;
  j["extracted"] = basis.extracted;
  j["gammas"] = basis.gammas;
  Json zs = Json::array();
  for (const auto& z : basis.z_vectors) zs.push_back(vector_json(z));
  j["z_vectors"] = zs;
  j["volume"] = volume_json(volume);
  return dump(j);
}

struct UnderflowArgs {
  Common common;
  std::string eps = "2^-10";
  std::optional<std::string> tau;
  std::size_t check_samples = 0;
  std::uint64_t seed = 0;
};

std::string do_underflow(const UnderflowArgs& a) {
  const auto alg = load_source(a.common);
  const double eps = parse_real(a.eps);
  const double tau = a.tau ? parse_real(*a.tau) : default_tau(alg);
  const auto r = underflow_widths(alg, eps, tau);
  Json j = header("underflow");
  j["algorithm"] = algorithm_json(alg);
  j["epsilon"] = r.epsilon;
  j["tau"] = r.tau;
  j["extracted"] = r.extracted;
  j["steps"] = r.steps;
  j["coords"] = r.coords;
  j["widths"] = r.widths;
  j["raw_widths"] = r.raw_widths;
  j["gammas"] = r.gammas;
  Json dirs = Json::array();
  for (const auto& d : r.directions) dirs.push_back(vector_json(d));
  j["directions"] = dirs;
  j["volume"] = volume_json(r.volume);
  if (a.check_samples > 0) {
    Json checks = Json::array();
    for (std::size_t k = 0; k < r.extracted; ++k) {
      UncertaintyCheckOptions o;
      o.samples = a.check_samples;
      o.seed = mix_seed(a.seed, k);
      const auto c = empirical_uncertainty_check(alg, eps, r.directions[k], r.steps[k],
                                                 r.coords[k], o);
      Json e;
      e["direction"] = k;
      e["predicted_width"] = c.predicted_width;
      e["measured_width"] = c.measured_width;
      e["bins_used"] = c.bins_used;
      e["status"] = to_string(c.status);
      checks.push_back(e);
    }
    j["empirical_checks"] = checks;
  }
  return dump(j);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  Common common;
  std::string eps = "2^-10";
  std::string sigma = "1";
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double word_budget = 32.0;
  bool dense = false;
  std::string format = "csv";
  std::string summary;
};

Json simulate_summary(const LinearAlgorithm& alg, const QuantizedRunStats& s) {
  Json j = header("simulate");
  j["algorithm"] = algorithm_json(alg);
  const auto& c = s.config();
  j["epsilon"] = c.epsilon;
  j["sigma"] = c.sigma;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["word_budget"] = c.word_budget;
  j["input_mean_bits"] = s.input_mean_bits();
  j["max_mean_bits"] = s.max_mean_bits();
  j["min_mean_bits"] = s.min_mean_bits();
  j["overflow_cells"] = s.overflow_cell_count();
  return j;
}

std::string do_simulate(const SimulateArgs& a, std::string& summary_text) {
  const auto alg = load_source(a.common);
  SimulationConfig config;
  config.epsilon = parse_real(a.eps);
  config.sigma = parse_real(a.sigma);
  config.samples = a.samples;
  config.seed = a.seed;
  config.word_budget = a.word_budget;
  config.threads = a.common.threads;
  const auto stats = simulate(alg, config);
  const Json summary = simulate_summary(alg, stats);
  summary_text = dump(summary);
  if (a.format == "json") return summary_text;

  std::ostringstream os;
  os << "# schema_version: " << kSchemaVersion << "\n";
  if (a.dense) {
    os << "t,i,mean_bits,max_abs,overflow_flag\n";
    for (std::size_t t = 0; t <= alg.gate_count(); ++t) {
      for (std::size_t i = 0; i < alg.dimension(); ++i) {
        os << t << ',' << i << ',' << csv_real(stats.mean_bits(t, i)) << ','
           << csv_real(stats.max_abs(t, i)) << ',' << (stats.overflow(t, i) ? 1 : 0) << '\n';
      }
    }
    return os.str();
  }
  // One row per write; the value holds for t_start <= t <= t_end.
  os << "t_start,t_end,i,mean_bits,max_abs,overflow_flag\n";
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, const WriteStats*>> rows;
  for (std::size_t i = 0; i < alg.dimension(); ++i) {
    const auto& h = stats.history(i);
    for (std::size_t k = 0; k < h.size(); ++k) {
      const std::size_t end = k + 1 < h.size() ? h[k + 1].t - 1 : alg.gate_count();
      rows.emplace_back(h[k].t, i, end, &h[k]);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  for (const auto& [t, i, end, w] : rows) {
    os << t << ',' << end << ',' << i << ',' << csv_real(w->mean_bits) << ','
       << csv_real(w->max_abs) << ',' << (w->mean_bits > config.word_budget ? 1 : 0) << '\n';
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

double parse_real(const std::string& text) {
  const auto parse_plain = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + text + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + text + "'");
    return v;
  };
  const auto caret = text.find('^');
  if (caret == std::string::npos) return parse_plain(text);
  return std::pow(parse_plain(text.substr(0, caret)), parse_plain(text.substr(caret + 1)));
}

Matrix parse_projection(const std::string& spec, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  if (spec == "identity") return Matrix::Identity(dim, dim);
  if (spec.rfind("proj:", 0) == 0) {
    Matrix p = Matrix::Zero(dim, dim);
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      unsigned long idx = 0;
      try {
        idx = std::stoul(item, &used);
      } catch (const std::exception&) {
        throw UsageError("bad coordinate '" + item + "' in '" + spec + "'");
      }
      if (used != item.size() || idx >= n) {
        throw UsageError("bad coordinate '" + item + "' in '" + spec + "'");
      }
      p(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = 1.0;
    }
    return p;
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
    Matrix p(dim, dim);
    for (Eigen::Index k = 0; k < dim * dim; ++k) {
      if (!(in >> p(k / dim, k % dim))) {
        throw UsageError("matrix file '" + path + "' needs " + std::to_string(n * n) + " reals");
      }
    }
    double extra = 0.0;
    if (in >> extra) throw UsageError("matrix file '" + path + "' has more than n*n entries");
    return p;
  }
  throw UsageError("projection spec must be identity, proj:i,j,... or file:path");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fftlb: analysis of in-place linear transform algorithms"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  BuildArgs build_args;
  auto* build_cmd = app.add_subcommand("build", "Write a builder's gate list");
  build_cmd->add_option("--wht", build_args.wht, "Walsh-Hadamard transform of size N");
  build_cmd->add_option("--dft", build_args.dft, "Real-embedded DFT of real size N");
  build_cmd->add_option("--spec", build_args.spec, "Any builder spec, e.g. scaled:8:4:4");
  add_output(build_cmd, build_args.common);

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "Residuals and condition numbers");
  add_source(validate_cmd, validate_args.common);
  add_output(validate_cmd, validate_args.common);
  validate_cmd->add_option("--residual-threshold", validate_args.residual_threshold);

  TraceArgs trace_args;
  auto* trace_cmd = app.add_subcommand("trace", "Potential along the trajectory");
  add_source(trace_cmd, trace_args.common);
  add_output(trace_cmd, trace_args.common);
  add_pq(trace_cmd, trace_args.pq);
  trace_cmd->add_option("--format", trace_args.format)->check(CLI::IsMember({"csv", "json"}));

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Bottleneck scan");
  add_source(scan_cmd, scan_args.common);
  add_output(scan_cmd, scan_args.common);
  add_pq(scan_cmd, scan_args.pq);
  scan_cmd->add_option("--R", scan_args.R, "Window length");
  scan_cmd->add_flag("--include-constants", scan_args.include_constants);
  scan_cmd->add_flag("--per-step", scan_args.per_step, "Include every window");

  ChainArgs chain_args;
  auto* chain_cmd = app.add_subcommand("chain", "Check each step of the bottleneck argument");
  add_source(chain_cmd, chain_args.common);
  add_output(chain_cmd, chain_args.common);
  add_pq(chain_cmd, chain_args.pq);
  chain_cmd->add_option("--R", chain_args.R, "Window length");

  LemmaArgs lemma_args;
  auto* lemma_cmd = app.add_subcommand("lemma", "Randomized sweeps of the potential inequalities");
  add_output(lemma_cmd, lemma_args.common);
  lemma_cmd->add_option("--seed", lemma_args.seed);
  lemma_cmd->add_option("--unit-trials", lemma_args.unit_trials);
  lemma_cmd->add_option("--unit-max-a", lemma_args.unit_max_a);
  lemma_cmd->add_option("--trials", lemma_args.trials);
  lemma_cmd->add_option("--max-a", lemma_args.max_a);
  lemma_cmd->add_option("--max-n", lemma_args.max_n);
  lemma_cmd->add_option("--pairs", lemma_args.pairs, "Projection pairs per size");
  lemma_cmd->add_option("--sizes", lemma_args.sizes, "Sizes for the Fourier projection bound");
  lemma_cmd->add_flag("--corrected", lemma_args.corrected,
                      "Judge the sweeps by the corrected constants");

  ExtractArgs extract_args;
  auto* extract_cmd = app.add_subcommand("extract", "Greedy overflow/underflow directions");
  add_source(extract_cmd, extract_args.common);
  add_output(extract_cmd, extract_args.common);
  add_extract_options(extract_cmd, extract_args);

  ExtractArgs volume_args;
  auto* volume_cmd = app.add_subcommand("volume", "Uncertainty volume bound");
  add_source(volume_cmd, volume_args.common);
  add_output(volume_cmd, volume_args.common);
  add_extract_options(volume_cmd, volume_args);

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Quantized Monte-Carlo replay");
  add_source(sim_cmd, sim_args.common);
  add_output(sim_cmd, sim_args.common);
  sim_cmd->add_option("--eps", sim_args.eps, "Quantization step, e.g. 2^-10");
  sim_cmd->add_option("--sigma", sim_args.sigma, "Input standard deviation per coordinate");
  sim_cmd->add_option("--samples", sim_args.samples);
  sim_cmd->add_option("--seed", sim_args.seed);
  sim_cmd->add_option("--W", sim_args.word_budget, "Word budget in bits");
  sim_cmd->add_option("--threads", sim_args.common.threads)->check(CLI::Range(1, 256));
  sim_cmd->add_flag("--dense", sim_args.dense, "One CSV row per (t, i)");
  sim_cmd->add_option("--format", sim_args.format)->check(CLI::IsMember({"csv", "json"}));
  sim_cmd->add_option("--summary", sim_args.summary, "Also write the JSON summary here");

  UnderflowArgs under_args;
  auto* under_cmd = app.add_subcommand("underflow", "Per-direction uncertainty widths");
  add_source(under_cmd, under_args.common);
  add_output(under_cmd, under_args.common);
  under_cmd->add_option("--eps", under_args.eps, "Quantization step, e.g. 2^-10");
  under_cmd->add_option("--tau", under_args.tau, "Threshold (default sqrt(b/2))");
  under_cmd->add_option("--check-samples", under_args.check_samples,
                        "Monte-Carlo samples per extracted direction (0 = skip)");
  under_cmd->add_option("--seed", under_args.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Outcome outcome;
    std::string text;
    std::string output;
    if (*build_cmd) {
      text = do_build(build_args);
      output = build_args.common.output;
    } else if (*validate_cmd) {
      text = do_validate(validate_args);
      output = validate_args.common.output;
    } else if (*trace_cmd) {
      text = do_trace(trace_args, outcome);
      output = trace_args.common.output;
    } else if (*scan_cmd) {
      text = do_scan(scan_args, outcome);
      output = scan_args.common.output;
    } else if (*chain_cmd) {
      text = do_chain(chain_args, outcome);
      output = chain_args.common.output;
    } else if (*lemma_cmd) {
      text = do_lemma(lemma_args, outcome);
      output = lemma_args.common.output;
    } else if (*extract_cmd) {
      text = do_extract(extract_args, outcome);
      output = extract_args.common.output;
    } else if (*volume_cmd) {
      text = do_volume(volume_args, outcome);
      output = volume_args.common.output;
    } else if (*sim_cmd) {
      std::string summary;
      text = do_simulate(sim_args, summary);
      output = sim_args.common.output;
      if (!sim_args.summary.empty()) write_text(sim_args.summary, summary, out);
    } else if (*under_cmd) {
      text = do_underflow(under_args);
      output = under_args.common.output;
    }
    write_text(output, text, out);
    if (outcome.violated) {
      err << "violation: " << outcome.message << "\n";
      return kExitViolation;
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace fftlb::cli
