// walshprime command-line tool. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 I/O or internal error, 2 configuration error,
// 3 capacity error, 4 verification failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "walshprime/walshprime.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerify = 4;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(wp_status status) {
  switch (status) {
    case WP_ERR_INVALID_ARGUMENT:
    case WP_ERR_OUT_OF_RANGE:
    case WP_ERR_DEGENERATE_INPUT:
    case WP_ERR_NOT_BOOLEAN:
      return kExitConfig;
    case WP_ERR_CAPACITY:
      return kExitCapacity;
    default:
      return kExitFailure;
  }
}

void check(wp_status status, const std::string& context) {
  if (status != WP_OK)
    throw CliError{exit_code_for(status), context + ": " + wp_status_name(status) + ": " + wp_last_error_message()};
}

struct VectorDeleter {
  void operator()(wp_vector* v) const { wp_vector_destroy(v); }
};
struct PipelineDeleter {
  void operator()(wp_pipeline* p) const { wp_pipeline_destroy(p); }
};
using VectorPtr = std::unique_ptr<wp_vector, VectorDeleter>;
using PipelinePtr = std::unique_ptr<wp_pipeline, PipelineDeleter>;

// Shortest round-trip representation; JSON and CSV output agree exactly.
std::string num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Config {
  std::vector<unsigned> ns;
  std::vector<std::string> zoo;
  double K = 4.0;
  unsigned n0 = 2;
  std::string format = "csv";
  std::string cache_dir = ".walshprime-cache";
  std::uint64_t seed = 42;
  std::uint64_t max_memory_mib = 512;
  bool allow_over_cap = false;
  bool no_sieve = false;
  bool odd_slice = false;
  bool attested = false;
  std::string section = "correlation";
  std::string metric = "low_level_mass";
  std::string level = "quick";
  bool mutate_sign = false;

  wp_limits limits() const {
    wp_limits l;
    wp_limits_default(&l);
    l.max_n = wp_max_dimension_for_memory(max_memory_mib);
    l.allow_over_cap = allow_over_cap ? 1 : 0;
    if (l.max_n > 26 && !allow_over_cap)
      throw CliError{kExitCapacity, "--max-memory above 512 MiB (n > 26) requires --allow-over-cap"};
    return l;
  }
};

PipelinePtr open_pipeline(const Config& cfg, unsigned n) {
  const wp_limits limits = cfg.limits();
  wp_pipeline* raw = nullptr;
  int hit = 0, repaired = 0;
  check(wp_pipeline_open(cfg.cache_dir.c_str(), n, &limits, cfg.no_sieve ? 1 : 0, &hit, &repaired, &raw),
        "loading von Mangoldt table for n=" + std::to_string(n));
  if (repaired) std::cerr << "warning: " << wp_last_error_message() << "; re-sieved and overwrote\n";
  return PipelinePtr(raw);
}

std::vector<std::string> expand_zoo(const Config& cfg, unsigned n) {
  std::vector<std::string> out;
  for (const auto& spec : cfg.zoo) {
    if (spec != "default") {
      out.push_back(spec);
      continue;
    }
    char buf[256];
    for (uint32_t i = 0; i < wp_zoo_default_count(n); ++i) {
      check(wp_zoo_default_spec(n, i, 0, cfg.seed, buf, sizeof(buf)), "default zoo");
      out.emplace_back(buf);
    }
  }
  return out;
}

struct Member {
  std::string spec;
  VectorPtr f;
};

Member materialize(const Config& cfg, const std::string& spec, unsigned n) {
  const wp_limits limits = cfg.limits();
  wp_vector* raw = nullptr;
  char canonical[256];
  check(wp_zoo_materialize(spec.c_str(), n, cfg.seed, cfg.odd_slice ? 1 : 0, &limits, &raw, canonical,
                           sizeof(canonical)),
        "zoo spec '" + spec + "'");
  return {canonical, VectorPtr(raw)};
}

// ---- report -------------------------------------------------------------------

struct Document {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // preformatted cells
  nlohmann::json json = nlohmann::json::array();
};

void add_row(Document& doc, std::vector<std::pair<std::string, nlohmann::json>> cells) {
  std::vector<std::string> row;
  nlohmann::json obj = nlohmann::json::object();
  for (auto& [key, value] : cells) {
    if (value.is_number_float()) row.push_back(num(value.get<double>()));
    else if (value.is_string()) row.push_back(csv_field(value.get<std::string>()));
    else row.push_back(value.dump());
    obj[key] = value;
  }
  doc.rows.push_back(std::move(row));
  doc.json.push_back(std::move(obj));
}

void correlation_section(const Config& cfg, unsigned n, wp_pipeline* p, Document& doc, bool extras) {
  for (const auto& spec : expand_zoo(cfg, n)) {
    auto m = materialize(cfg, spec, n);
    wp_correlation_report r;
    check(wp_pipeline_correlate(p, m.f.get(), cfg.K, cfg.attested ? 1 : 0, cfg.seed, &r), "correlate " + m.spec);
    if (r.warnings[0]) std::cerr << "warning: " << m.spec << " (n=" << n << "): " << r.warnings << "\n";
    add_row(doc, {{"n", n},
                  {"spec", m.spec},
                  {"mean_f", r.mean_f},
                  {"sum_lambda_f", r.sum_lambda_f},
                  {"theorem_ratio", r.theorem_ratio},
                  {"pairing_tilde", r.pairing_tilde},
                  {"mean_term", r.mean_term},
                  {"low_term", r.low_term},
                  {"high_term", r.high_term},
                  {"K", r.K}});
    if (extras) {
      auto& obj = doc.json.back();
      obj["mean_tilde"] = r.mean_tilde;
      obj["decomposition_residual"] = r.decomposition_residual;
      obj["high_tail_mass"] = r.high_tail_mass;
      obj["cs_bound"] = r.cs_bound;
      obj["ineq32_lhs"] = r.ineq32_lhs;
      obj["ineq32_rhs"] = r.ineq32_rhs;
      obj["coefficients"] = {{"tilde_0", r.tilde_0},
                             {"tilde_0_predicted", r.tilde_0_predicted},
                             {"tilde_j_mean", r.tilde_j_mean},
                             {"tilde_j_predicted", 0.5},
                             {"tilde_0j_mean", r.tilde_0j_mean},
                             {"tilde_0j_predicted", -0.5}};
      obj["hypotheses_checked"] = r.hypotheses_checked != 0;
      obj["monotone"] = r.monotone != 0;
      obj["odd_supported"] = r.odd_supported != 0;
      obj["warnings"] = std::string(r.warnings);
    }
  }
}

void tail_section(const Config& cfg, unsigned n, Document& doc) {
  for (const auto& spec : expand_zoo(cfg, n)) {
    auto m = materialize(cfg, spec, n);
    wp_vector* raw = nullptr;
    check(wp_wht_forward(m.f.get(), &raw), "transform " + m.spec);
    VectorPtr s(raw);
    wp_tail_report t;
    check(wp_tail_report_compute(s.get(), cfg.K, &t), "tail report " + m.spec);
    wp_influence_check ic;
    check(wp_influence_identity_check(s.get(), &ic), "influence check " + m.spec);
    add_row(doc, {{"n", n},
                  {"spec", m.spec},
                  {"K", t.K},
                  {"cutoff", t.cutoff},
                  {"tail", t.tail},
                  {"bound", t.bound},
                  {"total_influence_fw", t.total_influence_fw},
                  {"degree1_sum", t.degree1_sum},
                  {"influence_gap", ic.gap}});
  }
}

void lowmass_section(const Config& cfg, unsigned n, wp_pipeline* p, Document& doc) {
  std::vector<double> levels(cfg.n0 + 1);
  wp_low_level_mass r;
  check(wp_pipeline_low_level_mass(p, cfg.n0, &r, levels.data(), levels.size()), "low-level mass");
  add_row(doc, {{"n", n},
                {"n0", cfg.n0},
                {"mass", r.mass},
                {"largest_mask", r.largest_mask},
                {"largest_coefficient", r.largest_coefficient}});
  doc.json.back()["per_level"] = levels;
}

void moments_section(unsigned n, wp_pipeline* p, Document& doc) {
  wp_moments m;
  check(wp_pipeline_moments(p, &m), "moments");
  const double plus = std::abs(m.mean - (n + 1) / 2.0);
  const double minus = std::abs(m.mean - (static_cast<double>(n) - 1) / 2.0);
  uint32_t j = 0, k = 0;
  double pc = 0.0;
  check(wp_pair_correlation_max(wp_pipeline_table(p), &j, &k, &pc), "pair correlation");
  add_row(doc, {{"n", n},
                {"mean", m.mean},
                {"l1", m.l1},
                {"l2", m.l2},
                {"l2_ratio", m.l2_ratio},
                {"residual_n_plus_1_over_2", plus},
                {"residual_n_minus_1_over_2", minus},
                {"supported_constant", plus <= minus ? "(n+1)/2" : "(n-1)/2"},
                {"pair_correlation_max_ratio", pc},
                {"pair_correlation_j", j},
                {"pair_correlation_k", k}});
}

const std::vector<std::string>& headers(const std::string& section) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"correlation",
       {"n", "spec", "mean_f", "sum_lambda_f", "theorem_ratio", "pairing_tilde", "mean_term", "low_term", "high_term",
        "K"}},
      {"tail", {"n", "spec", "K", "cutoff", "tail", "bound", "total_influence_fw", "degree1_sum", "influence_gap"}},
      {"lowmass", {"n", "n0", "mass", "largest_mask", "largest_coefficient"}},
      {"moments",
       {"n", "mean", "l1", "l2", "l2_ratio", "residual_n_plus_1_over_2", "residual_n_minus_1_over_2",
        "supported_constant", "pair_correlation_max_ratio", "pair_correlation_j", "pair_correlation_k"}},
  };
  return table.at(section);
}

void print_csv(const std::string& section, const Document& doc) {
  const auto& header = headers(section);
  for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
  std::cout << "\n";
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
    std::cout << "\n";
  }
}

int cmd_report(const Config& cfg) {
  std::vector<std::string> sections;
  if (cfg.section == "all") sections = {"correlation", "tail", "lowmass", "moments"};
  else sections = {cfg.section};

  std::map<std::string, Document> docs;
  for (const auto& s : sections) docs[s];
  for (unsigned n : cfg.ns) {
    PipelinePtr p;
    auto pipeline = [&] {
      if (!p) p = open_pipeline(cfg, n);
      return p.get();
    };
    for (const auto& s : sections) {
      if (s == "correlation") {
        if (!expand_zoo(cfg, n).empty()) correlation_section(cfg, n, pipeline(), docs[s], cfg.format == "json");
      } else if (s == "tail") {
        tail_section(cfg, n, docs[s]);
      } else if (s == "lowmass") {
        lowmass_section(cfg, n, pipeline(), docs[s]);
      } else if (s == "moments") {
        moments_section(n, pipeline(), docs[s]);
      }
    }
  }

  if (cfg.format == "json") {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& s : sections) out[s] = docs[s].json;
    std::cout << out.dump(2) << "\n";
  } else {
    bool first = true;
    for (const auto& s : sections) {
      if (!first) std::cout << "\n";
      first = false;
      print_csv(s, docs[s]);
    }
  }
  return kExitOk;
}

// ---- other commands ------------------------------------------------------------

int cmd_sieve(const Config& cfg) {
  const wp_limits limits = cfg.limits();
  for (unsigned n : cfg.ns) {
    wp_pipeline* raw = nullptr;
    int hit = 0, repaired = 0;
    check(wp_pipeline_open(cfg.cache_dir.c_str(), n, &limits, cfg.no_sieve ? 1 : 0, &hit, &repaired, &raw),
          "sieve n=" + std::to_string(n));
    PipelinePtr p(raw);
    if (repaired) std::cerr << "warning: " << wp_last_error_message() << "; re-sieved and overwrote\n";
    char path[4096];
    check(wp_cache_path(cfg.cache_dir.c_str(), n, path, sizeof(path)), "cache path");
    std::cout << path << "\t" << (hit ? "cache hit" : "sieved") << "\n";
  }
  return kExitOk;
}

std::vector<unsigned> parse_range(const std::string& text) {
  // "lo:hi[:step]" inclusive.
  std::vector<unsigned> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw CliError{kExitConfig, "bad --n-range '" + text + "'"};
    parts.push_back(v);
  }
  if (parts.size() < 2 || parts.size() > 3 || (parts.size() == 3 && parts[2] == 0) || parts[0] > parts[1])
    throw CliError{kExitConfig, "--n-range expects lo:hi[:step] with lo <= hi"};
  std::vector<unsigned> out;
  for (unsigned n = parts[0]; n <= parts[1]; n += parts.size() == 3 ? parts[2] : 1) out.push_back(n);
  return out;
}

int cmd_trend(const Config& cfg) {
  wp_trend_metric metric;
  check(wp_metric_from_name(cfg.metric.c_str(), &metric), "--metric");
  if (metric == WP_METRIC_THEOREM_RATIO && cfg.zoo.size() != 1)
    throw CliError{kExitConfig, "theorem_ratio trend needs exactly one --zoo spec"};
  const wp_limits limits = cfg.limits();
  std::vector<double> values(cfg.ns.size());
  wp_trend trend = WP_TREND_FLAT;
  std::string spec = cfg.zoo.empty() ? "" : cfg.zoo.front();
  if (cfg.odd_slice && !spec.empty()) spec += spec.find(':') == std::string::npos ? ":odd" : ",odd";
  check(wp_trend_table(metric, cfg.n0, spec.c_str(), cfg.K, cfg.seed, cfg.ns.data(), cfg.ns.size(), &limits,
                       cfg.cache_dir.c_str(), cfg.no_sieve ? 1 : 0, values.data(), &trend),
        "trend");
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < values.size(); ++i) rows.push_back({{"n", cfg.ns[i]}, {"value", values[i]}});
    nlohmann::json out = {{"metric", wp_metric_name(metric)}, {"rows", rows}, {"trend", wp_trend_name(trend)}};
    if (metric == WP_METRIC_LOW_LEVEL_MASS) out["n0"] = cfg.n0;
    if (metric == WP_METRIC_THEOREM_RATIO) out["spec"] = spec;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "metric,n,value,trend\n";
    for (std::size_t i = 0; i < values.size(); ++i)
      std::cout << wp_metric_name(metric) << "," << cfg.ns[i] << "," << num(values[i]) << "," << wp_trend_name(trend)
                << "\n";
  }
  return kExitOk;
}

int cmd_zoo(const Config& cfg) {
  std::cout << "n,spec,mean_f,monotone\n";
  for (unsigned n : cfg.ns) {
    Config defaults = cfg;
    if (defaults.zoo.empty()) defaults.zoo = {"default"};
    const auto specs = expand_zoo(defaults, n);
    for (const auto& spec : specs) {
      auto m = materialize(cfg, spec, n);
      double mean = 0.0;
      const double* v = wp_vector_data(m.f.get());
      for (uint64_t x = 0; x < wp_vector_size(m.f.get()); ++x) mean += v[x];
      mean /= static_cast<double>(wp_vector_size(m.f.get()));
      wp_monotonicity mono;
      check(wp_monotonicity_check(m.f.get(), n <= 16 ? 0 : 1'000'000, cfg.seed, &mono), "monotonicity");
      std::cout << n << "," << csv_field(m.spec) << "," << num(mean) << "," << (mono.monotone ? "yes" : "no") << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const Config& cfg) {
  const wp_verify_level level = cfg.level == "full" ? WP_VERIFY_FULL : WP_VERIFY_QUICK;
  char* json = nullptr;
  uint32_t failures = 0;
  check(wp_verify(level, cfg.mutate_sign ? WP_VERIFY_INVERT_SIGN : 0u, cfg.seed, &json, &failures), "verify");
  std::cout << json << "\n";
  wp_string_free(json);
  if (failures) {
    std::cerr << failures << " verification check(s) failed\n";
    return kExitVerify;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-Walsh analysis of the von Mangoldt function against monotone Boolean functions"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", cfg.cache_dir, "Directory for von Mangoldt cache files")->capture_default_str();
    sub->add_option("--max-memory", cfg.max_memory_mib, "Memory cap per vector in MiB (512 MiB = n <= 26)")
        ->capture_default_str();
    sub->add_flag("--allow-over-cap", cfg.allow_over_cap, "Acknowledge raising the memory cap above n = 26");
    sub->add_flag("--no-sieve", cfg.no_sieve, "Fail instead of sieving when the cache is missing");
    sub->add_option("--seed", cfg.seed, "PRNG seed (dnf specs without seed=, sampled checks)")->capture_default_str();
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", cfg.ns, "Cube dimension(s)")->check(CLI::Range(1u, 28u));
    if (required) opt->required();
    return opt;
  };

  auto* sieve = app.add_subcommand("sieve", "Sieve von Mangoldt tables into the cache");
  add_n(sieve, true);
  add_common(sieve);

  auto* report = app.add_subcommand("report", "Correlation, tail, low-level mass and moment reports");
  add_n(report, true);
  add_common(report);
  report->add_option("--zoo", cfg.zoo, "Zoo spec string (repeatable); 'default' expands to the built-in zoo");
  report->add_option("--K", cfg.K, "Low/high split parameter, cutoff K sqrt(n)")->capture_default_str();
  report->add_option("--n0", cfg.n0, "Level bound for the low-level mass")->capture_default_str();
  report->add_flag("--odd-slice", cfg.odd_slice, "Multiply every zoo member by x_0");
  report->add_flag("--attested", cfg.attested, "Skip monotonicity/odd-support checks");
  report->add_option("--section", cfg.section, "Report section")
      ->check(CLI::IsMember({"correlation", "tail", "lowmass", "moments", "all"}))
      ->capture_default_str();

  auto* trend = app.add_subcommand("trend", "One metric across several n");
  auto* trend_n = add_n(trend, false);
  std::string n_range;
  auto* trend_range = trend->add_option("--n-range", n_range, "lo:hi[:step], inclusive");
  trend_n->excludes(trend_range);
  add_common(trend);
  trend->add_option("--metric", cfg.metric, "low_level_mass | theorem_ratio | l2_ratio | pair_correlation_max")
      ->capture_default_str();
  trend->add_option("--n0", cfg.n0, "Level bound for low_level_mass")->capture_default_str();
  trend->add_option("--zoo", cfg.zoo, "Zoo spec for theorem_ratio");
  trend->add_option("--K", cfg.K, "Split parameter for theorem_ratio")->capture_default_str();
  trend->add_flag("--odd-slice", cfg.odd_slice, "Apply the odd slice to the zoo spec");

  auto* zoo = app.add_subcommand("zoo", "List zoo members with E[f] and a monotonicity verdict");
  add_n(zoo, true);
  zoo->add_option("--zoo", cfg.zoo, "Spec strings (default: the built-in zoo)");
  zoo->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  zoo->add_flag("--odd-slice", cfg.odd_slice, "Multiply every member by x_0");

  auto* verify = app.add_subcommand("verify", "Run the built-in invariant and oracle suites");
  verify->add_option("--level", cfg.level, "quick (n <= 12) or full (n <= 20)")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  verify->add_flag("--mutate-sign", cfg.mutate_sign, "Invert the Walsh sign convention (suite must fail)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!n_range.empty()) cfg.ns = parse_range(n_range);
    if (*sieve) return cmd_sieve(cfg);
    if (*report) return cmd_report(cfg);
    if (*trend) {
      if (cfg.ns.empty()) throw CliError{kExitConfig, "trend needs --n or --n-range"};
      return cmd_trend(cfg);
    }
    if (*zoo) return cmd_zoo(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return kExitOk;
}
