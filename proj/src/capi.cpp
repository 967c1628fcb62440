#include "walshprime/walshprime.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "walshprime/analysis.hpp"
#include "walshprime/cache.hpp"
#include "walshprime/verify.hpp"

using namespace walshprime;

struct wp_vector {
  CubeVector data;
};

struct wp_pipeline {
  Pipeline pipeline;
  wp_vector table;
  // Borrowed views, filled on first request.
  std::once_flag lhat_once, tilde_once;
  std::unique_ptr<wp_vector> lhat, tilde;
};

namespace {

thread_local std::string last_error;

wp_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return WP_ERR_INVALID_ARGUMENT;
    case ErrorCode::capacity: return WP_ERR_CAPACITY;
    case ErrorCode::dimension_mismatch: return WP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::out_of_range: return WP_ERR_OUT_OF_RANGE;
    case ErrorCode::io: return WP_ERR_IO;
    case ErrorCode::degenerate_input: return WP_ERR_DEGENERATE_INPUT;
    case ErrorCode::not_boolean: return WP_ERR_NOT_BOOLEAN;
    case ErrorCode::checksum: return WP_ERR_CHECKSUM;
  }
  return WP_ERR_INTERNAL;
}

wp_status fail(wp_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Body>
wp_status guarded(Body&& body) {
  try {
    body();
    return WP_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WP_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(WP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WP_ERR_INTERNAL, "unknown exception");
  }
}

#define WP_REQUIRE(cond, what) \
  if (!(cond)) return fail(WP_ERR_INVALID_ARGUMENT, what)

Limits to_limits(const wp_limits* l) {
  Limits out;
  if (l) {
    out.max_n = l->max_n;
    out.allow_over_cap = l->allow_over_cap != 0;
  }
  return out;
}

SieveOptions to_sieve(const wp_limits* l) {
  SieveOptions out;
  out.limits = to_limits(l);
  if (l && l->segment_size) out.segment_size = l->segment_size;
  return out;
}

wp_vector* wrap(CubeVector v) { return new wp_vector{std::move(v)}; }

Spectrum as_spectrum(const wp_vector* v) {
  const auto values = v->data.values();
  return Spectrum(v->data.n(), std::vector<double>(values.begin(), values.end()));
}

CubeVector as_vector(const Spectrum& s) {
  const auto values = s.values();
  return CubeVector(s.n(), std::vector<double>(values.begin(), values.end()));
}

void copy_string(const std::string& s, char* buffer, size_t capacity) {
  if (!buffer || capacity == 0) return;
  if (s.size() >= capacity) throw Error(ErrorCode::out_of_range, "output buffer too small");
  std::memcpy(buffer, s.c_str(), s.size() + 1);
}

}  // namespace

extern "C" {

void wp_limits_default(wp_limits* out) {
  if (!out) return;
  out->max_n = kDefaultMaxDimension;
  out->allow_over_cap = 0;
  out->segment_size = std::uint64_t{1} << 20;
}

uint32_t wp_max_dimension_for_memory(uint64_t mebibytes) { return max_dimension_for_memory(mebibytes); }

const char* wp_version(void) { return "1.0.0"; }

const char* wp_status_name(wp_status status) {
  switch (status) {
    case WP_OK: return "ok";
    case WP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case WP_ERR_CAPACITY: return "capacity";
    case WP_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case WP_ERR_OUT_OF_RANGE: return "out_of_range";
    case WP_ERR_IO: return "io";
    case WP_ERR_DEGENERATE_INPUT: return "degenerate_input";
    case WP_ERR_NOT_BOOLEAN: return "not_boolean";
    case WP_ERR_CHECKSUM: return "checksum";
    case WP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* wp_last_error_message(void) { return last_error.c_str(); }

wp_status wp_vector_create(uint32_t n, const double* values, uint64_t count, const wp_limits* limits,
                           wp_vector** out) {
  WP_REQUIRE(out, "out is NULL");
  return guarded([&] {
    to_limits(limits).check(n);
    if (!values) {
      *out = wrap(CubeVector(n));
      return;
    }
    *out = wrap(CubeVector(n, std::vector<double>(values, values + count)));
  });
}

void wp_vector_destroy(wp_vector* v) { delete v; }
uint32_t wp_vector_dim(const wp_vector* v) { return v ? v->data.n() : 0; }
uint64_t wp_vector_size(const wp_vector* v) { return v ? v->data.size() : 0; }
const double* wp_vector_data(const wp_vector* v) { return v ? v->data.values().data() : nullptr; }

wp_status wp_wht_forward(const wp_vector* f, wp_vector** out) {
  WP_REQUIRE(f && out, "NULL argument");
  return guarded([&] {
    Limits relaxed{kHardMaxDimension, true};
    *out = wrap(as_vector(wht_forward(f->data, relaxed)));
  });
}

wp_status wp_wht_inverse(const wp_vector* s, wp_vector** out) {
  WP_REQUIRE(s && out, "NULL argument");
  return guarded([&] {
    Limits relaxed{kHardMaxDimension, true};
    *out = wrap(wht_inverse(as_spectrum(s), relaxed));
  });
}

wp_status wp_level_profile(const wp_vector* s, double* mass, size_t capacity) {
  WP_REQUIRE(s && mass, "NULL argument");
  return guarded([&] {
    const auto profile = level_profile(as_spectrum(s));
    if (capacity < profile.mass.size()) throw Error(ErrorCode::out_of_range, "mass buffer needs n + 1 entries");
    std::copy(profile.mass.begin(), profile.mass.end(), mass);
  });
}

wp_status wp_inner_product(const wp_vector* f, const wp_vector* g, double* normalized, double* unnormalized) {
  WP_REQUIRE(f && g, "NULL argument");
  return guarded([&] {
    const auto ip = inner_product(f->data, g->data);
    if (normalized) *normalized = ip.normalized;
    if (unnormalized) *unnormalized = ip.unnormalized;
  });
}

wp_status wp_sieve(uint32_t n, const wp_limits* limits, wp_vector** out) {
  WP_REQUIRE(out, "out is NULL");
  return guarded([&] { *out = wrap(sieve_von_mangoldt(n, to_sieve(limits)).values()); });
}

wp_status wp_chebyshev_psi(const wp_vector* table, uint64_t u, double* out) {
  WP_REQUIRE(table && out, "NULL argument");
  return guarded([&] { *out = chebyshev_psi(VonMangoldtTable(table->data), u); });
}

wp_status wp_pair_correlation(const wp_vector* table, uint32_t j, uint32_t k, double* sum, double* ratio) {
  WP_REQUIRE(table, "NULL argument");
  return guarded([&] {
    const auto pc = pair_correlation(VonMangoldtTable(table->data), j, k);
    if (sum) *sum = pc.sum;
    if (ratio) *ratio = pc.ratio;
  });
}

wp_status wp_pair_correlation_max(const wp_vector* table, uint32_t* j, uint32_t* k, double* ratio) {
  WP_REQUIRE(table, "NULL argument");
  return guarded([&] {
    const auto best = max_pair_correlation(VonMangoldtTable(table->data));
    if (j) *j = best.j;
    if (k) *k = best.k;
    if (ratio) *ratio = best.value.ratio;
  });
}

wp_status wp_lambda_tilde(const wp_vector* table, wp_vector** out) {
  WP_REQUIRE(table && out, "NULL argument");
  return guarded([&] {
    Limits relaxed{kHardMaxDimension, true};
    *out = wrap(build_lambda_tilde(VonMangoldtTable(table->data), relaxed).values());
  });
}

wp_status wp_lambda_tilde_spectrum_via_identity(const wp_vector* lhat, wp_vector** out) {
  WP_REQUIRE(lhat && out, "NULL argument");
  return guarded([&] { *out = wrap(as_vector(lambda_tilde_spectrum_via_identity(as_spectrum(lhat)))); });
}

wp_status wp_lambda_tilde_moments(const wp_vector* lt, wp_moments* out) {
  WP_REQUIRE(lt && out, "NULL argument");
  return guarded([&] {
    const auto m = lambda_tilde_moments(LambdaTildeTable(lt->data));
    *out = {m.mean, m.l1, m.l2, m.l2_ratio};
  });
}

wp_status wp_zoo_materialize(const char* spec, uint32_t n, uint64_t default_seed, int force_odd,
                             const wp_limits* limits, wp_vector** out, char* canonical, size_t canonical_capacity) {
  WP_REQUIRE(spec && out, "NULL argument");
  return guarded([&] {
    auto parsed = MonotoneFunctionSpec::parse(spec, n, default_seed);
    if (force_odd) parsed.odd_slice = true;
    copy_string(parsed.to_string(), canonical, canonical_capacity);
    *out = wrap(materialize(parsed, to_limits(limits)));
  });
}

uint32_t wp_zoo_default_count(uint32_t n) {
  if (n == 0 || n > kHardMaxDimension) return 0;
  return static_cast<uint32_t>(default_zoo(n, false).size());
}

wp_status wp_zoo_default_spec(uint32_t n, uint32_t index, int odd, uint64_t seed, char* buffer, size_t capacity) {
  WP_REQUIRE(buffer, "NULL buffer");
  return guarded([&] {
    if (n == 0 || n > kHardMaxDimension) throw Error(ErrorCode::invalid_argument, "dimension out of range");
    const auto zoo = default_zoo(n, odd != 0, seed);
    if (index >= zoo.size()) throw Error(ErrorCode::out_of_range, "zoo index out of range");
    copy_string(zoo[index].to_string(), buffer, capacity);
  });
}

wp_status wp_monotonicity_check(const wp_vector* f, uint64_t samples, uint64_t seed, wp_monotonicity* out) {
  WP_REQUIRE(f && out, "NULL argument");
  return guarded([&] {
    const auto mode = samples == 0 ? MonotonicityMode::exhaustive() : MonotonicityMode::sampled(samples, seed);
    const auto v = monotonicity_check(f->data, mode);
    *out = {};
    out->monotone = v.monotone ? 1 : 0;
    out->edges_checked = v.edges_checked;
    if (v.counterexample) {
      out->lower = v.counterexample->lower;
      out->upper = v.counterexample->upper;
      out->bit = v.counterexample->bit;
    }
  });
}

wp_status wp_tail_report_compute(const wp_vector* s, double K, wp_tail_report* out) {
  WP_REQUIRE(s && out, "NULL argument");
  return guarded([&] {
    const auto r = tail_report(as_spectrum(s), K);
    *out = {r.K, r.cutoff, r.tail, r.bound, r.total_influence_fw, r.degree1_sum};
  });
}

wp_status wp_influence_identity_check(const wp_vector* s, wp_influence_check* out) {
  WP_REQUIRE(s && out, "NULL argument");
  return guarded([&] {
    const auto c = influence_identity_check(as_spectrum(s));
    *out = {c.lhs, c.rhs, c.gap, c.max_degree1, c.holds() ? 1 : 0};
  });
}

wp_status wp_pipeline_create(const wp_vector* table, const wp_limits* limits, wp_pipeline** out) {
  WP_REQUIRE(table && out, "NULL argument");
  return guarded([&] {
    VonMangoldtTable t(table->data);
    const Limits l = to_limits(limits);
    l.check(t.n());
    *out = new wp_pipeline{Pipeline(t, l), wp_vector{t.values()}, {}, {}, {}, {}};
  });
}

wp_status wp_pipeline_open(const char* cache_dir, uint32_t n, const wp_limits* limits, int no_sieve, int* cache_hit,
                           int* repaired, wp_pipeline** out) {
  WP_REQUIRE(cache_dir && out, "NULL argument");
  return guarded([&] {
    CacheResult info;
    const SieveOptions sieve = to_sieve(limits);
    auto table = load_or_sieve(cache_dir, n, sieve, no_sieve == 0, &info);
    if (cache_hit) *cache_hit = info.cache_hit ? 1 : 0;
    if (repaired) *repaired = info.repaired ? 1 : 0;
    if (!info.warning.empty()) last_error = info.warning;
    wp_vector view{table.values()};
    *out = new wp_pipeline{Pipeline(std::move(table), sieve.limits), std::move(view), {}, {}, {}, {}};
  });
}

void wp_pipeline_destroy(wp_pipeline* p) { delete p; }
uint32_t wp_pipeline_dim(const wp_pipeline* p) { return p ? p->pipeline.n() : 0; }
const wp_vector* wp_pipeline_table(const wp_pipeline* p) { return p ? &p->table : nullptr; }

wp_status wp_pipeline_lambda_spectrum(const wp_pipeline* p, const wp_vector** out) {
  WP_REQUIRE(p && out, "NULL argument");
  auto* mp = const_cast<wp_pipeline*>(p);
  return guarded([&] {
    std::call_once(mp->lhat_once, [&] { mp->lhat.reset(wrap(as_vector(p->pipeline.lambda_spectrum()))); });
    *out = mp->lhat.get();
  });
}

wp_status wp_pipeline_lambda_tilde(const wp_pipeline* p, const wp_vector** out) {
  WP_REQUIRE(p && out, "NULL argument");
  auto* mp = const_cast<wp_pipeline*>(p);
  return guarded([&] {
    std::call_once(mp->tilde_once, [&] { mp->tilde.reset(wrap(p->pipeline.lambda_tilde().values())); });
    *out = mp->tilde.get();
  });
}

wp_status wp_pipeline_moments(const wp_pipeline* p, wp_moments* out) {
  WP_REQUIRE(p && out, "NULL argument");
  return guarded([&] {
    const auto& m = p->pipeline.moments();
    *out = {m.mean, m.l1, m.l2, m.l2_ratio};
  });
}

wp_status wp_pipeline_correlate(const wp_pipeline* p, const wp_vector* f, double K, int attested, uint64_t seed,
                                wp_correlation_report* out) {
  WP_REQUIRE(p && f && out, "NULL argument");
  return guarded([&] {
    CorrelateOptions opts;
    opts.K = K;
    opts.attested = attested != 0;
    opts.seed = seed;
    const auto r = correlate(f->data, p->pipeline, opts);
    *out = {};
    out->n = r.n;
    out->K = r.K;
    out->mean_f = r.mean_f;
    out->sum_lambda_f = r.sum_lambda_f;
    out->theorem_ratio = r.theorem_ratio;
    out->pairing_tilde = r.pairing_tilde;
    out->mean_tilde = r.mean_tilde;
    out->mean_term = r.mean_term;
    out->low_term = r.low_term;
    out->high_term = r.high_term;
    out->decomposition_residual = r.decomposition_residual;
    out->high_tail_mass = r.high_tail_mass;
    out->tilde_l2 = r.tilde_l2;
    out->cs_bound = r.cs_bound;
    out->ineq32_lhs = r.ineq32_lhs;
    out->ineq32_rhs = r.ineq32_rhs;
    out->tilde_0 = r.probe.tilde_0;
    out->tilde_0_predicted = r.probe.tilde_0_predicted;
    out->tilde_j_mean = r.probe.tilde_j_mean;
    out->tilde_0j_mean = r.probe.tilde_0j_mean;
    out->hypotheses_checked = r.hypotheses_checked ? 1 : 0;
    out->monotone = r.monotone ? 1 : 0;
    out->odd_supported = r.odd_supported ? 1 : 0;
    std::string joined;
    for (const auto& w : r.warnings) joined += (joined.empty() ? "" : "; ") + w;
    if (joined.size() >= sizeof(out->warnings)) joined.resize(sizeof(out->warnings) - 1);
    std::memcpy(out->warnings, joined.c_str(), joined.size() + 1);
  });
}

wp_status wp_pipeline_low_level_mass(const wp_pipeline* p, uint32_t n0, wp_low_level_mass* out, double* per_level,
                                     size_t per_level_capacity) {
  WP_REQUIRE(p && out, "NULL argument");
  return guarded([&] {
    const auto r = low_level_mass(p->pipeline.lambda_spectrum(), n0);
    *out = {r.n, r.n0, r.mass, r.largest_mask, r.largest_coefficient};
    if (per_level) {
      if (per_level_capacity < r.per_level.size()) throw Error(ErrorCode::out_of_range, "per_level needs n0 + 1 entries");
      std::copy(r.per_level.begin(), r.per_level.end(), per_level);
    }
  });
}

wp_status wp_metric_from_name(const char* name, wp_trend_metric* out) {
  WP_REQUIRE(name && out, "NULL argument");
  return guarded([&] { *out = static_cast<wp_trend_metric>(parse_metric(name)); });
}

const char* wp_metric_name(wp_trend_metric metric) {
  return metric_name(static_cast<TrendMetric>(metric)).data();
}

const char* wp_trend_name(wp_trend trend) { return trend_name(static_cast<Trend>(trend)).data(); }

wp_status wp_trend_table(wp_trend_metric metric, uint32_t n0, const char* spec, double K, uint64_t seed,
                         const uint32_t* ns, size_t count, const wp_limits* limits, const char* cache_dir,
                         int no_sieve, double* values, wp_trend* trend) {
  WP_REQUIRE(ns && values, "NULL argument");
  WP_REQUIRE(metric >= WP_METRIC_LOW_LEVEL_MASS && metric <= WP_METRIC_PAIR_CORRELATION_MAX, "unknown metric");
  return guarded([&] {
    TrendQuery q;
    q.metric = static_cast<TrendMetric>(metric);
    q.n0 = n0;
    q.spec = spec ? spec : "";
    q.K = K;
    q.seed = seed;
    const SieveOptions sieve = to_sieve(limits);
    TableSource source;
    if (cache_dir) {
      std::string dir = cache_dir;
      source = [dir, sieve, no_sieve](unsigned n) { return load_or_sieve(dir, n, sieve, no_sieve == 0); };
    }
    const std::vector<unsigned> dims(ns, ns + count);
    const auto table = trend_table(q, dims, sieve, source);
    for (std::size_t i = 0; i < table.rows.size(); ++i) values[i] = table.rows[i].value;
    if (trend) *trend = static_cast<wp_trend>(table.trend);
  });
}

wp_status wp_cache_write(const char* path, const wp_vector* v) {
  WP_REQUIRE(path && v, "NULL argument");
  return guarded([&] { write_cache(path, v->data); });
}

wp_status wp_cache_read(const char* path, const wp_limits* limits, wp_vector** out) {
  WP_REQUIRE(path && out, "NULL argument");
  return guarded([&] { *out = wrap(read_cache(path, to_limits(limits))); });
}

wp_status wp_cache_path(const char* cache_dir, uint32_t n, char* path_out, size_t capacity) {
  WP_REQUIRE(cache_dir && path_out, "NULL argument");
  return guarded([&] { copy_string(cache_path(cache_dir, n).string(), path_out, capacity); });
}

uint64_t wp_fnv1a64(const void* bytes, size_t size) {
  return fnv1a64({static_cast<const std::byte*>(bytes), size});
}

wp_status wp_verify(wp_verify_level level, uint32_t flags, uint64_t seed, char** json_out, uint32_t* failures) {
  WP_REQUIRE(json_out, "NULL argument");
  return guarded([&] {
    VerifyOptions opts;
    opts.level = level == WP_VERIFY_FULL ? VerifyLevel::full : VerifyLevel::quick;
    opts.seed = seed;
    opts.invert_sign_convention = (flags & WP_VERIFY_INVERT_SIGN) != 0;
    const auto result = run_verification(opts);
    const std::string json = result.to_json();
    char* buffer = static_cast<char*>(std::malloc(json.size() + 1));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, json.c_str(), json.size() + 1);
    *json_out = buffer;
    if (failures) *failures = static_cast<uint32_t>(result.failures());
  });
}

void wp_string_free(char* s) { std::free(s); }

}  // extern "C"
