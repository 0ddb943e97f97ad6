// Copyright 2026 The igdiff Authors
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

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/grid.hpp"
#include "cli/output.hpp"
#include "igdiff/diff.hpp"
#include "igdiff/errors.hpp"
#include "igdiff/mc.hpp"
#include "igdiff/metrics.hpp"
#include "igdiff/nig.hpp"
#include "igdiff/parallel.hpp"
#include "igdiff/random.hpp"
#include "igdiff/version.hpp"

namespace igdiff::cli {
namespace {

constexpr double kLogUnderflow = -690.7755278982137;  // ln(1e-300)
constexpr double kSameRatioTol = 1e-12;

struct Globals {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  unsigned workers = 0;
};

struct PairOptions {
  double a1 = 0.0;
  double b1 = 0.0;
  double a2 = 0.0;
  double b2 = 0.0;

  IGParams first() const { return {a1, b1}; }
  IGParams second() const { return {a2, b2}; }
};

void add_pair_options(CLI::App* app, PairOptions& p) {
  app->add_option("--a1", p.a1, "a of the first hitting time")->required()->check(CLI::PositiveNumber);
  app->add_option("--b1", p.b1, "b of the first hitting time")->required()->check(CLI::PositiveNumber);
  app->add_option("--a2", p.a2, "a of the second hitting time")->required()->check(CLI::PositiveNumber);
  app->add_option("--b2", p.b2, "b of the second hitting time")->required()->check(CLI::PositiveNumber);
}

QuadratureSpec quadrature(const Globals& g) { return {g.abs_tol, g.rel_tol, QuadratureSpec{}.max_refinements}; }

Json pair_json(const IGParams& p1, const IGParams& p2) {
  return Json{{"a1", p1.a()}, {"b1", p1.b()}, {"a2", p2.a()}, {"b2", p2.b()}};
}

Json moments_json(const MomentSet& m) {
  return Json{{"mean", m.mean}, {"variance", m.variance}, {"skewness", m.skewness},
              {"excess_kurtosis", m.excess_kurtosis}};
}

bool close(double x, double y) { return std::abs(x - y) <= kSameRatioTol * std::max(std::abs(x), std::abs(y)); }

// 1 for equal pairs, 2 for equal ratios b/a with a1 != a2, 0 otherwise.
int detect_use_case(const IGParams& p1, const IGParams& p2) {
  if (close(p1.a(), p2.a()) && close(p1.b(), p2.b())) return 1;
  if (close(p1.b() / p1.a(), p2.b() / p2.a())) return 2;
  return 0;
}

std::vector<std::string> manifest_argv(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--workers") {
      ++i;
      continue;
    }
    if (args[i].rfind("--workers=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

Manifest base_manifest(const std::string& command, const std::vector<std::string>& args, const Globals& g) {
  Manifest m;
  m.command = command;
  m.argv = manifest_argv(args);
  m.seed = g.seed;
  m.abs_tol = g.abs_tol;
  m.rel_tol = g.rel_tol;
  return m;
}

// Writes to --out (plus manifest) or to the output stream.
void emit(const Globals& g, Manifest& manifest, const std::string& bytes, std::ostream& out) {
  if (g.out.empty()) {
    out << bytes;
    return;
  }
  const std::filesystem::path path(g.out);
  write_file(path, bytes);
  manifest.add_output(path, bytes);
  write_file(manifest_path_for(path), dump(manifest.to_json()));
}

// ---------------------------------------------------------------- curves

void check_curve(const std::string& kind, const std::string& method, const IGParams& p1, const IGParams& p2) {
  if (kind == "pdf" && method != "exact" && method != "nig") {
    throw ConfigError("curve: method '" + method + "' is only available for kind 'tail'");
  }
  if (method == "soa" && detect_use_case(p1, p2) != 1) {
    throw ConfigError("curve: method 'soa' applies to use case 1 only (a1 = a2 and b1 = b2)");
  }
}

// ln of the curve value; NaN where the method is undefined.
double curve_log_value(const std::string& kind, const std::string& method, const IGParams& p1, const IGParams& p2,
                       const NIGParams* fit, double z, const QuadratureSpec& q) {
  const Accuracy acc{q.abs_tol, q.rel_tol};
  if (kind == "pdf") return method == "exact" ? conv_log_pdf(p1, p2, z, q) : nig_log_pdf(*fit, z);
  if (method == "exact") return conv_log_tail(p1, p2, z, q);
  if (method == "nig") return nig_log_tail(*fit, z, acc);
  if (method == "asymptotic") return z >= 0.0 ? asymptotic_log_tail(p1, p2, z) : std::nan("");
  return soa_log_tail(p1.a(), p1.b(), z);
}

Grid default_grid(const std::string& kind, const IGParams& p1, const IGParams& p2) {
  const CumulantSet k = diff_cumulants(p1, p2);
  const double sd = std::sqrt(k.k2);
  if (kind == "pdf") return covering_grid(k.k1 - 6.0 * sd, k.k1 + 6.0 * sd);
  return covering_grid(k.k1 - 6.0 * sd, k.k1 + std::max(10.0 * sd, 92.0 / (p1.b() * p1.b())));
}

std::string curve_text(const std::string& kind, const std::string& method, const IGParams& p1, const IGParams& p2,
                       const Grid& grid, const Globals& g) {
  check_curve(kind, method, p1, p2);
  const QuadratureSpec q = quadrature(g);
  const std::vector<double> z = grid.points();
  std::vector<double> logs(z.size());
  const NIGParams fit = approx_diff(p1, p2);
  parallel_for(z.size(), g.workers,
               [&](std::size_t i) { logs[i] = curve_log_value(kind, method, p1, p2, &fit, z[i], q); });

  if (g.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < z.size(); ++i) {
      Json row{{"z", z[i]}, {"value", nullptr}, {"log10_value", nullptr}};
      if (!std::isnan(logs[i])) {
        if (logs[i] >= kLogUnderflow || std::isinf(logs[i])) row["value"] = std::exp(logs[i]);
        if (std::isfinite(logs[i])) row["log10_value"] = logs[i] / std::numbers::ln10;
      }
      rows.push_back(row);
    }
    return dump(Json{{"kind", kind}, {"method", method}, {"points", rows}});
  }
  std::string text = "z,value,log10_value\n";
  for (std::size_t i = 0; i < z.size(); ++i) {
    text += format_fixed(z[i], grid.decimals);
    text += ',';
    const double lv = logs[i];
    if (std::isnan(lv)) {
      text += ",\n";
      continue;
    }
    if (lv >= kLogUnderflow || std::isinf(lv)) text += format_number(std::exp(lv));
    text += ',';
    text += format_number(lv / std::numbers::ln10);
    text += '\n';
  }
  return text;
}

Json grid_json(const Grid& grid) {
  return Json{{"start", grid.start}, {"step", grid.step}, {"count", grid.count}, {"decimals", grid.decimals}};
}

// ------------------------------------------------------------ KL support

Interval kl_support(const IGParams& p1, const IGParams& p2) {
  const CumulantSet k = diff_cumulants(p1, p2);
  const double sd = std::sqrt(k.k2);
  const double decay = std::min(p1.b() * p1.b(), p2.b() * p2.b());
  const double half = 40.0 * sd + 120.0 / decay;
  return {k.k1 - half, k.k1 + half};
}

struct KlPair {
  double exact_nig = 0.0;
  double nig_exact = 0.0;
};

KlPair kl_both(const IGParams& p1, const IGParams& p2, Interval support, const QuadratureSpec& q) {
  const NIGParams fit = approx_diff(p1, p2);
  const Density exact = [&](double z) { return conv_pdf(p1, p2, z, q); };
  const Density approx = [&](double z) { return nig_pdf(fit, z); };
  return {kl_divergence(exact, approx, support, q), kl_divergence(approx, exact, support, q)};
}

// ----------------------------------------------------------- validation

template <class Draw>
std::vector<double> draw_blocks(std::size_t n, std::uint64_t seed, std::uint64_t tag, unsigned workers, Draw draw) {
  std::vector<double> out(n);
  const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  parallel_for(blocks, workers, [&](std::size_t b) {
    CounterStream gen(seed, tag, b);
    const std::size_t end = std::min(n, (b + 1) * kSampleBlock);
    for (std::size_t i = b * kSampleBlock; i < end; ++i) out[i] = draw(gen);
  });
  return out;
}

Json check(const std::string& name, double statistic, double lo, double hi) {
  const bool pass = statistic >= lo && statistic <= hi;
  return Json{{"name", name}, {"statistic", statistic}, {"lower", lo}, {"upper", hi}, {"pass", pass}};
}

Json validate_sampler(std::size_t n, const Globals& g) {
  Json checks = Json::array();
  const IGParams ig(3.0, 3.0);
  std::vector<double> xs =
      draw_blocks(n, g.seed, 10, g.workers, [&](CounterStream& gen) { return ig_sample(ig, gen); });
  std::sort(xs.begin(), xs.end());
  const double ig_ks = ks_distance(xs, [&](double x) { return ig_cdf(ig, x); });
  checks.push_back(check("ks_ig_3_3", ig_ks, 0.0, 1.95 / std::sqrt(static_cast<double>(n))));

  const std::size_t m = std::max<std::size_t>(n / 10, 1);
  const NIGParams nig = approx_diff(IGParams(2.0, 2.0), IGParams(4.0, 4.0));
  std::vector<double> ys =
      draw_blocks(m, g.seed, 11, g.workers, [&](CounterStream& gen) { return nig_sample(nig, gen); });
  std::sort(ys.begin(), ys.end());
  const Accuracy acc{g.abs_tol, g.rel_tol};
  const std::vector<double> cdf =
      cdf_along_sorted(ys, [&](double y) { return nig_pdf(nig, y); }, 1.0 - nig_tail(nig, ys.front(), acc));
  checks.push_back(check("ks_nig_usecase2_2_4_1", ks_distance(ys, cdf), 0.0,
                         1.95 / std::sqrt(static_cast<double>(m))));
  return checks;
}

Json validate_convolution(std::size_t n, const Globals& g) {
  Json checks = Json::array();
  const IGParams p(3.0, 3.0);
  const QuadratureSpec q = quadrature(g);
  SimConfig cfg;
  cfg.n_samples = n;
  cfg.seed = g.seed;
  cfg.workers = g.workers;
  const std::vector<double> zs = sample_diff(p, p, cfg);

  constexpr int kBins = 50;
  std::vector<double> edges(kBins - 1);
  parallel_for(edges.size(), g.workers,
               [&](std::size_t i) { edges[i] = conv_quantile(p, p, static_cast<double>(i + 1) / kBins, q); });
  const ChiSquareResult chi = chi_square_equal_probability(zs, edges);
  checks.push_back(check("chi2_p_value_3_3", chi.p_value, 0.01, 1.0));

  const double z = conv_quantile(p, p, 0.99, q);
  const double tail = conv_tail(p, p, z, q);
  const double hits = static_cast<double>(std::count_if(zs.begin(), zs.end(), [&](double x) { return x > z; }));
  const double se = std::sqrt(tail * (1.0 - tail) / static_cast<double>(n));
  checks.push_back(check("tail_1e-2_z_score", (hits / static_cast<double>(n) - tail) / se, -4.0, 4.0));
  return checks;
}

Json validate_theorem1(const Globals& g) {
  Json checks = Json::array();
  const QuadratureSpec q = quadrature(g);
  struct Case {
    const char* name;
    IGParams p1;
    IGParams p2;
    double z;
  };
  const Case cases[] = {
      {"ratio_1_1_z40", {1, 1}, {1, 1}, 40.0},
      {"ratio_2_2_z40", {2, 2}, {2, 2}, 40.0},
      {"ratio_1_1_vs_2_2_z60", {1, 1}, {2, 2}, 60.0},
  };
  for (const Case& c : cases) {
    const double ratio = std::exp(conv_log_tail(c.p1, c.p2, c.z, q) - asymptotic_log_tail(c.p1, c.p2, c.z));
    checks.push_back(check(c.name, ratio, 0.95, 1.05));
  }
  return checks;
}

Json validate_physics(std::size_t n, const Globals& g) {
  Json checks = Json::array();
  const PhysicalChannel channel(1.0, 1.0, 0.5);
  const IGParams ig = physical_to_ig(channel);
  const double steps[] = {4e-4, 2e-4, 1e-4};
  std::vector<double> ks;
  double mean = 0.0;
  double se = 0.0;
  std::size_t censored = 0;
  for (double dt : steps) {
    SimConfig cfg;
    cfg.n_samples = n;
    cfg.seed = g.seed;
    cfg.dt = dt;
    cfg.workers = g.workers;
    FirstPassageResult r = first_passage_sim(channel, cfg);
    censored += r.censored;
    std::vector<double>& t = r.times;
    mean = 0.0;
    for (double x : t) mean += x;
    mean /= static_cast<double>(t.size());
    double var = 0.0;
    for (double x : t) var += (x - mean) * (x - mean);
    se = std::sqrt(var / static_cast<double>(t.size() - 1) / static_cast<double>(t.size()));
    std::sort(t.begin(), t.end());
    ks.push_back(ks_distance(t, [&](double x) { return ig_cdf(ig, x); }));
  }
  checks.push_back(check("mean_z_score_dt_1e-4", (mean - ig.mean()) / se, -5.0, 5.0));
  checks.push_back(check("ks_ratio_2e-4_over_4e-4", ks[1] / ks[0], 0.0, 1.0));
  checks.push_back(check("ks_ratio_1e-4_over_2e-4", ks[2] / ks[1], 0.0, 1.0));
  checks.push_back(
      check("censored_fraction", static_cast<double>(censored) / (3.0 * static_cast<double>(n)), 0.0, 1e-3));
  return checks;
}

// ---------------------------------------------------------- subcommands

struct Commands {
  CLI::App* fit = nullptr;
  CLI::App* curve = nullptr;
  CLI::App* figure = nullptr;
  CLI::App* kl = nullptr;
  CLI::App* crossover = nullptr;
  CLI::App* sample = nullptr;
  CLI::App* sample_diff = nullptr;
  CLI::App* sample_paths = nullptr;
  CLI::App* validate = nullptr;
};

struct Options {
  PairOptions pair;
  std::string kind;
  std::string method;
  std::string grid;
  int figure_id = 0;
  std::string out_dir;
  std::string support;
  std::string suite;
  std::size_t n = 0;
  double distance = 1.0;
  double velocity = 1.0;
  double diffusion = 0.5;
  double dt = 1e-4;
  std::size_t max_steps = 10000000;
};

int do_fit(const Options& o, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
  const IGParams p1 = o.pair.first();
  const IGParams p2 = o.pair.second();
  const MomentSet m = moments_of_diff(p1, p2);
  const CumulantSet k = diff_cumulants(p1, p2);
  const NIGParams fit = fit_from_moments(m);
  const int use_case = detect_use_case(p1, p2);
  const MomentSet back = nig_moments(fit);
  const double round_trip = std::max({std::abs(back.mean - m.mean) / std::max(std::sqrt(m.variance), 1e-300),
                                      std::abs(back.variance / m.variance - 1.0),
                                      std::abs(back.skewness - m.skewness) / std::max(std::abs(m.skewness), 1.0),
                                      std::abs(back.excess_kurtosis / m.excess_kurtosis - 1.0)});
  Json j{{"params", pair_json(p1, p2)},
         {"alpha", fit.alpha()},
         {"beta", fit.beta()},
         {"mu", fit.mu()},
         {"delta", fit.delta()},
         {"moments", moments_json(m)},
         {"cumulants", {{"k1", k.k1}, {"k2", k.k2}, {"k3", k.k3}, {"k4", k.k4}}},
         {"use_case_detected", use_case},
         {"round_trip_max_rel_error", round_trip}};
  if (use_case == 2) j["c"] = p1.b() / p1.a();

  std::string text;
  if (g.format == "csv") {
    text = "name,value\n";
    const Json flat = j.flatten();
    for (const auto& [key, value] : flat.items()) text += key.substr(1) + "," + value.dump() + "\n";
  } else {
    text = dump(j);
  }
  Manifest manifest = base_manifest("fit", args, g);
  manifest.params = pair_json(p1, p2);
  emit(g, manifest, text, out);
  return kExitOk;
}

int do_curve(const Options& o, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
  const IGParams p1 = o.pair.first();
  const IGParams p2 = o.pair.second();
  check_curve(o.kind, o.method, p1, p2);
  const Grid grid = o.grid.empty() ? default_grid(o.kind, p1, p2) : parse_grid(o.grid);
  const std::string text = curve_text(o.kind, o.method, p1, p2, grid, g);
  Manifest manifest = base_manifest("curve", args, g);
  manifest.params = pair_json(p1, p2);
  manifest.params["kind"] = o.kind;
  manifest.params["method"] = o.method;
  manifest.params["grid"] = grid_json(grid);
  emit(g, manifest, text, out);
  return kExitOk;
}

int do_figure(const Options& o, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
  const FigureSpec spec = figure_spec(o.figure_id);
  const std::filesystem::path dir(o.out_dir);
  const std::string ext = g.format == "json" ? ".json" : ".csv";
  Manifest manifest = base_manifest("figure", args, g);
  manifest.params = Json{{"figure", spec.id}, {"kind", spec.kind}, {"methods", spec.methods}};
  Json sets = Json::array();
  for (const FigureSet& set : spec.sets) {
    const Grid grid = spec.grid.empty() ? default_grid(spec.kind, set.p1, set.p2) : parse_grid(spec.grid);
    Json entry = pair_json(set.p1, set.p2);
    entry["grid"] = grid_json(grid);
    const std::string stem = "fig" + std::to_string(spec.id) + "_" + spec.kind + "_" + format_number(set.p1.a()) +
                             "_" + format_number(set.p1.b()) + "_" + format_number(set.p2.a()) + "_" +
                             format_number(set.p2.b());
    for (const std::string& method : spec.methods) {
      const std::filesystem::path file = dir / (stem + "_" + method + ext);
      const std::string text = curve_text(spec.kind, method, set.p1, set.p2, grid, g);
      write_file(file, text);
      manifest.add_output(file, text);
    }
    const KlPair kl = kl_both(set.p1, set.p2, kl_support(set.p1, set.p2), quadrature(g));
    entry["kl_exact_nig"] = kl.exact_nig;
    entry["kl_nig_exact"] = kl.nig_exact;
    sets.push_back(entry);
  }
  manifest.results["sets"] = sets;
  const std::filesystem::path manifest_file = dir / ("fig" + std::to_string(spec.id) + ".manifest.json");
  write_file(manifest_file, dump(manifest.to_json()));
  out << manifest_file.string() << "\n";
  return kExitOk;
}

int do_kl(const Options& o, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
  const IGParams p1 = o.pair.first();
  const IGParams p2 = o.pair.second();
  Interval support = kl_support(p1, p2);
  if (!o.support.empty()) {
    const auto colon = o.support.find(':');
    if (colon == std::string::npos) throw ConfigError("kl: --support expects lo:hi");
    support = {parse_grid(o.support.substr(0, colon)).start, parse_grid(o.support.substr(colon + 1)).start};
  }
  const KlPair kl = kl_both(p1, p2, support, quadrature(g));
  Json j{{"params", pair_json(p1, p2)},
         {"support", {support.lo, support.hi}},
         {"kl_exact_nig", kl.exact_nig},
         {"kl_nig_exact", kl.nig_exact}};
  Manifest manifest = base_manifest("kl", args, g);
  manifest.params = pair_json(p1, p2);
  manifest.results = j;
  emit(g, manifest, g.format == "csv" ? "kl_exact_nig,kl_nig_exact\n" + format_number(kl.exact_nig) + "," +
                                            format_number(kl.nig_exact) + "\n"
                                      : dump(j),
       out);
  return kExitOk;
}

int do_crossover(const Options& o, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
  const IGParams p1 = o.pair.first();
  const IGParams p2 = o.pair.second();
  const Grid grid = parse_grid(o.grid);
  std::vector<CrossoverMethod> methods;
  if (o.method == "all") {
    methods = {CrossoverMethod::exact, CrossoverMethod::nig, CrossoverMethod::asymptotic};
  } else {
    methods = {parse_crossover_method(o.method)};
  }
  const std::vector<double> ts = grid.points();
  if (!ts.empty() && ts.front() < 0.0) throw ConfigError("crossover: T must be >= 0");
  std::vector<double> values(ts.size() * methods.size());
  const QuadratureSpec q = quadrature(g);
  parallel_for(values.size(), g.workers, [&](std::size_t i) {
    values[i] = crossover_probability(p1, p2, ts[i / methods.size()], methods[i % methods.size()], q);
  });

  std::string text;
  if (g.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      Json row{{"t", ts[i]}};
      for (std::size_t m = 0; m < methods.size(); ++m) row[std::string(to_string(methods[m]))] = values[i * methods.size() + m];
      rows.push_back(row);
    }
    text = dump(rows);
  } else {
    text = "t";
    for (CrossoverMethod m : methods) text += "," + std::string(to_string(m));
    text += "\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      text += format_fixed(ts[i], grid.decimals);
      for (std::size_t m = 0; m < methods.size(); ++m) text += "," + format_number(values[i * methods.size() + m]);
      text += "\n";
    }
  }
  Manifest manifest = base_manifest("crossover", args, g);
  manifest.params = pair_json(p1, p2);
  manifest.params["t"] = grid_json(grid);
  manifest.params["method"] = o.method;
  emit(g, manifest, text, out);
  return kExitOk;
}

std::string column_text(const char* name, std::span<const double> values, const std::string& format) {
  if (format == "json") return dump(Json{{name, values}});
  std::string text = std::string(name) + "\n";
  for (double v : values) text += format_number(v) + "\n";
  return text;
}

int do_sample_diff(const Options& o, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
  const IGParams p1 = o.pair.first();
  const IGParams p2 = o.pair.second();
  SimConfig cfg;
  cfg.n_samples = o.n;
  cfg.seed = g.seed;
  cfg.workers = g.workers;
  const std::vector<double> z = sample_diff(p1, p2, cfg);
  Manifest manifest = base_manifest("sample diff", args, g);
  manifest.params = pair_json(p1, p2);
  manifest.params["n"] = o.n;
  emit(g, manifest, column_text("z", z, g.format), out);
  return kExitOk;
}

int do_sample_paths(const Options& o, const Globals& g, const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  const PhysicalChannel channel(o.distance, o.velocity, o.diffusion);
  SimConfig cfg;
  cfg.n_samples = o.n;
  cfg.seed = g.seed;
  cfg.dt = o.dt;
  cfg.max_steps = o.max_steps;
  cfg.workers = g.workers;
  const FirstPassageResult r = first_passage_sim(channel, cfg);
  Manifest manifest = base_manifest("sample first-passage", args, g);
  manifest.params = Json{{"distance", o.distance}, {"velocity", o.velocity}, {"diffusion", o.diffusion},
                         {"dt", o.dt},           {"n", o.n},               {"max_steps", o.max_steps}};
  manifest.results["censored"] = r.censored;
  if (r.censored > 0) err << "censored paths: " << r.censored << "\n";
  emit(g, manifest, column_text("t", r.times, g.format), out);
  return kExitOk;
}

int do_validate(const Options& o, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
  Json checks;
  if (o.suite == "sampler") {
    checks = validate_sampler(o.n > 0 ? o.n : 1000000, g);
  } else if (o.suite == "convolution") {
    checks = validate_convolution(o.n > 0 ? o.n : 1000000, g);
  } else if (o.suite == "theorem1") {
    checks = validate_theorem1(g);
  } else {
    checks = validate_physics(o.n > 0 ? o.n : 20000, g);
  }
  bool pass = true;
  for (const Json& c : checks) pass = pass && c["pass"].get<bool>();
  const Json report{{"suite", o.suite}, {"seed", g.seed}, {"pass", pass}, {"checks", checks}};
  Manifest manifest = base_manifest("validate", args, g);
  manifest.params = Json{{"suite", o.suite}, {"n", o.n}};
  manifest.results["pass"] = pass;
  emit(g, manifest, dump(report), out);
  return pass ? kExitOk : kExitValidationFailed;
}

}  // namespace

FigureSpec figure_spec(int id) {
  const std::vector<std::string> pdf_methods{"exact", "nig"};
  const std::vector<std::string> tail_methods{"exact", "nig", "asymptotic"};
  std::vector<FigureSet> sets;
  if (id == 1 || id == 2) {
    for (double a : {1.0, 3.0, 10.0, 30.0}) sets.push_back({{a, a}, {a, a}});
  } else if (id == 3 || id == 4) {
    for (auto [a, b] : {std::pair{1.0, 3.0}, {3.0, 1.0}, {3.0, 10.0}, {10.0, 3.0}}) sets.push_back({{a, b}, {a, b}});
  } else if (id == 5 || id == 6) {
    for (auto [a1, a2, c] : {std::tuple{2.0, 4.0, 1.0}, {4.0, 2.0, 1.0}, {1.0, 3.0, 2.0}}) {
      sets.push_back({{a1, c * a1}, {a2, c * a2}});
    }
  } else if (id == 7) {
    return {7, "tail", {"exact", "asymptotic", "soa"}, {{{3.0, 3.0}, {3.0, 3.0}}}, "0:12:0.05"};
  } else {
    throw ConfigError("figure: id must be in 1..7, got " + std::to_string(id));
  }
  const bool pdf = id % 2 == 1;
  return {id, pdf ? "pdf" : "tail", pdf ? pdf_methods : tail_methods, sets, ""};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Law of the difference of two inverse Gaussian first hitting times", "igdiff"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);

  Globals g;
  app.add_option("--abs-tol", g.abs_tol, "absolute quadrature tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--rel-tol", g.rel_tol, "relative quadrature tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--out", g.out, "output file (default: standard output)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads, 0 = all cores")->capture_default_str();

  Options o;
  Commands c;
  c.fit = app.add_subcommand("fit", "NIG moment-matching fit of X1 - X2");
  c.fit->add_option("a1", o.pair.a1)->required()->check(CLI::PositiveNumber);
  c.fit->add_option("b1", o.pair.b1)->required()->check(CLI::PositiveNumber);
  c.fit->add_option("a2", o.pair.a2)->required()->check(CLI::PositiveNumber);
  c.fit->add_option("b2", o.pair.b2)->required()->check(CLI::PositiveNumber);

  c.curve = app.add_subcommand("curve", "density or tail curve on a z grid");
  c.curve->add_option("kind", o.kind)->required()->check(CLI::IsMember({"pdf", "tail"}));
  c.curve->add_option("method", o.method)->required()->check(CLI::IsMember({"exact", "nig", "asymptotic", "soa"}));
  add_pair_options(c.curve, o.pair);
  c.curve->add_option("--z", o.grid, "grid start:stop:step (inclusive)");

  c.figure = app.add_subcommand("figure", "curve bundle of one evaluation figure");
  c.figure->add_option("id", o.figure_id)->required();
  c.figure->add_option("out_dir", o.out_dir)->required();

  c.kl = app.add_subcommand("kl", "KL divergence between the exact law and its NIG fit");
  add_pair_options(c.kl, o.pair);
  c.kl->add_option("--support", o.support, "integration interval lo:hi");

  c.crossover = app.add_subcommand("crossover", "probability that the later molecule arrives first");
  add_pair_options(c.crossover, o.pair);
  c.crossover->add_option("--t", o.grid, "release gap T or grid start:stop:step")->required();
  c.crossover->add_option("--method", o.method = "all")
      ->check(CLI::IsMember({"exact", "nig", "asymptotic", "all"}))
      ->capture_default_str();

  c.sample = app.add_subcommand("sample", "Monte-Carlo draws");
  c.sample->require_subcommand(1, 1);
  c.sample_diff = c.sample->add_subcommand("diff", "draws of X1 - X2");
  add_pair_options(c.sample_diff, o.pair);
  c.sample_diff->add_option("--n", o.n, "number of draws")->required()->check(CLI::PositiveNumber);
  c.sample_paths = c.sample->add_subcommand("first-passage", "Euler-Maruyama first passage times");
  c.sample_paths->add_option("--distance", o.distance)->capture_default_str()->check(CLI::PositiveNumber);
  c.sample_paths->add_option("--velocity", o.velocity)->capture_default_str()->check(CLI::PositiveNumber);
  c.sample_paths->add_option("--diffusion", o.diffusion)->capture_default_str()->check(CLI::PositiveNumber);
  c.sample_paths->add_option("--dt", o.dt)->capture_default_str()->check(CLI::PositiveNumber);
  c.sample_paths->add_option("--max-steps", o.max_steps)->capture_default_str();
  c.sample_paths->add_option("--n", o.n, "number of paths")->required()->check(CLI::PositiveNumber);

  c.validate = app.add_subcommand("validate", "run a Monte-Carlo or convergence validation suite");
  c.validate->add_option("suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"sampler", "convolution", "theorem1", "physics"}));
  c.validate->add_option("--n", o.n, "sample size override");

  for (CLI::App* sub : {c.fit, c.curve, c.figure, c.kl, c.crossover, c.sample, c.sample_diff, c.sample_paths,
                        c.validate}) {
    sub->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c.fit->parsed()) return do_fit(o, g, args, out);
    if (c.curve->parsed()) return do_curve(o, g, args, out);
    if (c.figure->parsed()) return do_figure(o, g, args, out);
    if (c.kl->parsed()) return do_kl(o, g, args, out);
    if (c.crossover->parsed()) return do_crossover(o, g, args, out);
    if (c.sample_diff->parsed()) return do_sample_diff(o, g, args, out);
    if (c.sample_paths->parsed()) return do_sample_paths(o, g, args, out, err);
    if (c.validate->parsed()) return do_validate(o, g, args, out);
  } catch (const AccuracyNotReached& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace igdiff::cli
