#include "iet_c.h"

#include <cstring>
#include <new>
#include <string>

#include "iet/formats.hpp"

struct iet_map {
  iet::Iet value;
};

namespace {

thread_local std::string last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
iet_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return IET_OK;
  } catch (const iet::Error& e) {
    last_error = e.what();
    return static_cast<iet_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return IET_E_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return IET_E_UNKNOWN;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) iet::fail(iet::ErrorCode::kInvalidArgument, std::string(name) + " is null");
}

const iet::Iet& unwrap(const iet_map* map) {
  require(map, "map");
  return map->value;
}

iet_map* wrap(iet::Iet value) { return new iet_map{std::move(value)}; }

iet::Rational rational_arg(const char* text, const char* name) {
  require(text, name);
  return iet::parse_rational(text);
}

}  // namespace

extern "C" {

const char* iet_status_name(iet_status status) {
  if (status == IET_E_UNKNOWN) return "unknown error";
  return iet::to_string(static_cast<iet::ErrorCode>(status));
}

const char* iet_last_error(void) { return last_error.c_str(); }

void iet_string_free(char* s) { std::free(s); }

iet_status iet_map_from_json(const char* json, iet_map** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = wrap(iet::iet_from_json(json));
  });
}

iet_status iet_map_create(const char* const* lengths, const int* pi, size_t m, iet_map** out) {
  return guarded([&] {
    require(lengths, "lengths");
    require(pi, "pi");
    require(out, "out");
    std::vector<iet::Rational> lam;
    for (size_t i = 0; i < m; ++i) lam.push_back(rational_arg(lengths[i], "length"));
    *out = wrap(iet::Iet(std::move(lam), iet::Permutation(std::vector<int>(pi, pi + m))));
  });
}

void iet_map_destroy(iet_map* map) { delete map; }

size_t iet_map_size(const iet_map* map) { return map == nullptr ? 0 : static_cast<size_t>(map->value.size()); }

int iet_map_is_irreducible(const iet_map* map) {
  return map != nullptr && map->value.perm().is_irreducible() ? 1 : 0;
}

iet_status iet_map_to_json(const iet_map* map, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(iet::iet_to_json(unwrap(map)));
  });
}

iet_status iet_map_total(const iet_map* map, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(iet::to_string(unwrap(map).total()));
  });
}

iet_status iet_map_apply(const iet_map* map, const char* x, int64_t n, char** out) {
  return guarded([&] {
    require(out, "out");
    const iet::Iet& t = unwrap(map);
    const iet::Rational point = rational_arg(x, "x");
    iet::Rational y = n >= -64 && n <= 64 ? iet::apply_power(t, point, n) : iet::power_map(t, n).apply(point);
    *out = dup_string(iet::to_string(y));
  });
}

iet_status iet_map_image_set(const iet_map* map, const char* set, int64_t n, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    const iet::IntervalSet image = iet::image_set(unwrap(map), iet::parse_interval_set(set), n);
    std::string text;
    for (const auto& p : image.parts()) {
      if (!text.empty()) text += ';';
      text += iet::to_string(p.lo()) + "," + iet::to_string(p.hi());
    }
    *out = dup_string(text);
  });
}

iet_status iet_map_induce(const iet_map* map, const char* length, int64_t cap, iet_map** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(iet::induced_map(unwrap(map), rational_arg(length, "length"), cap));
  });
}

iet_status iet_map_first_return(const iet_map* map, const char* length, const char* x, int64_t cap,
                                int64_t* k, char** y) {
  return guarded([&] {
    require(k, "k");
    require(y, "y");
    const auto r = iet::first_return(unwrap(map), iet::HalfOpenInterval(0, rational_arg(length, "length")),
                                     rational_arg(x, "x"), cap);
    *k = r.k;
    *y = dup_string(iet::to_string(r.y));
  });
}

iet_status iet_map_detect_connection(const iet_map* map, int64_t depth, int64_t* step) {
  return guarded([&] {
    require(step, "step");
    *step = iet::detect_connection(unwrap(map), depth).value_or(0);
  });
}

iet_status iet_map_is_admissible(const iet_map* map, const char* xi, const char* eta, int64_t bound,
                                 iet_admissibility* verdict) {
  return guarded([&] {
    require(verdict, "verdict");
    const auto v = iet::is_admissible(unwrap(map), rational_arg(xi, "xi"), rational_arg(eta, "eta"), bound);
    *verdict = v == iet::Admissibility::kVerified  ? IET_ADMISSIBLE_VERIFIED
               : v == iet::Admissibility::kRefuted ? IET_ADMISSIBLE_REFUTED
                                                   : IET_ADMISSIBLE_UNKNOWN;
  });
}

iet_status iet_rauzy_step(const iet_map* map, iet_map** out, char* move) {
  return guarded([&] {
    require(out, "out");
    iet::RvStep step = iet::rv_step(unwrap(map));
    if (move != nullptr) *move = iet::to_char(step.move);
    *out = wrap(std::move(step.next));
  });
}

iet_status iet_rauzy_trace_csv(const iet_map* map, int64_t n, char** out, int64_t* stopped_at) {
  int64_t stop = 0;
  iet_status status = guarded([&] {
    require(out, "out");
    *out = dup_string(iet::rv_trace_csv(unwrap(map), n, &stop));
  });
  if (stopped_at != nullptr) *stopped_at = stop;
  if (status == IET_OK && stop > 0) {
    last_error = "connection at Rauzy-Veech step " + std::to_string(stop);
    return IET_E_CONNECTION;
  }
  return status;
}

iet_status iet_rauzy_class_dot(const char* pi, char** out, size_t* node_count) {
  return guarded([&] {
    require(pi, "pi");
    require(out, "out");
    const iet::RauzyDiagram d = iet::rauzy_diagram(iet::parse_permutation(pi));
    if (node_count != nullptr) *node_count = d.nodes.size();
    *out = dup_string(iet::rauzy_dot(d));
  });
}

iet_status iet_zstar_json(const iet_map* map, int64_t cap, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(iet::zstar_json(iet::zstar(unwrap(map), cap)));
  });
}

iet_status iet_verify_lemma2_csv(size_t samples, int max_path_len, uint64_t seed, char** out, int* all_ok) {
  return guarded([&] {
    require(out, "out");
    const auto rows = iet::lemma2_sweep(samples, max_path_len, seed);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.identity_ok && r.brute_force_ok;
    if (all_ok != nullptr) *all_ok = ok ? 1 : 0;
    *out = dup_string(iet::lemma2_csv(rows, seed));
  });
}

iet_status iet_return_towers_json(const iet_map* map, int64_t cap, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(iet::columns_json(iet::return_time_towers(unwrap(map), cap)));
  });
}

iet_status iet_tower_json(const iet_map* map, const char* lo, const char* hi, int64_t height, char** out) {
  return guarded([&] {
    require(out, "out");
    const iet::HalfOpenInterval base(rational_arg(lo, "lo"), rational_arg(hi, "hi"));
    *out = dup_string(iet::tower_json(iet::build_tower(unwrap(map), base, height)));
  });
}

iet_status iet_whirly_construct(const char* alpha, const char* eps1, const char* eps2, iet_map** out) {
  return guarded([&] {
    require(alpha, "alpha");
    require(out, "out");
    const auto w = iet::make_window(rational_arg(eps1, "eps1"), rational_arg(eps2, "eps2"));
    *out = wrap(iet::construct_W_point(iet::parse_rational_list(alpha), w));
  });
}

iet_status iet_whirly_claims_csv(const char* alpha, const char* eps1, const char* eps2, int64_t l, char** out,
                                 int* all_ok) {
  return guarded([&] {
    require(alpha, "alpha");
    require(out, "out");
    const auto w = iet::make_window(rational_arg(eps1, "eps1"), rational_arg(eps2, "eps2"));
    const iet::Iet t = iet::construct_W_point(iet::parse_rational_list(alpha), w);
    const iet::ClaimsReport report = iet::verify_claims(t, w, l);
    if (all_ok != nullptr) *all_ok = report.all_hold() ? 1 : 0;
    *out = dup_string(iet::claims_csv(report));
  });
}

iet_status iet_whirly_major_json(const iet_map* map, const char* eps, int64_t l, int64_t depth, char** out,
                                 int* all_ok) {
  return guarded([&] {
    require(out, "out");
    const auto report = iet::lemma_major_check(unwrap(map), rational_arg(eps, "eps"), l, depth);
    if (all_ok != nullptr) *all_ok = report.proven_checks_hold() ? 1 : 0;
    *out = dup_string(iet::major_json(report));
  });
}

iet_status iet_whirly_lemma35_json(const iet_map* map, int64_t depth, char** out, int* all_ok) {
  return guarded([&] {
    require(out, "out");
    const auto report = iet::lemma_35_bound(unwrap(map), iet::make_window(iet::Rational(1, 2), iet::Rational(1, 2)),
                                            depth);
    if (all_ok != nullptr) *all_ok = report.all_hold() ? 1 : 0;
    *out = dup_string(iet::lemma35_json(report));
  });
}

void iet_probe_options_init(iet_probe_options* options) {
  if (options == nullptr) return;
  *options = iet_probe_options{};
  options->l = 1;
  options->depth = 200;
  options->metric_n = 20;
  options->small_powers = 16;
}

iet_status iet_whirly_probe_json(const iet_map* map, const iet_probe_options* options, char** out,
                                 int* success) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    const iet::Iet& t = unwrap(map);
    const iet::Rational eps = rational_arg(options->eps, "eps");
    const iet::IntervalSet e = options->set_e != nullptr
                                   ? iet::parse_interval_set(options->set_e)
                                   : iet::IntervalSet(iet::HalfOpenInterval(0, t.total() / 2));
    iet::ProbeMode mode = iet::SelfShift{e, options->l};
    if (options->pair_mode != 0) {
      require(options->set_f, "set_f");
      mode = iet::PairSets{e, iet::parse_interval_set(options->set_f)};
    }
    iet::ProbeSearch search;
    search.depth = options->depth;
    search.small_powers = options->small_powers;
    if (options->candidates != nullptr) {
      search.candidates.assign(options->candidates, options->candidates + options->candidate_count);
    }
    const auto report = iet::whirly_probe(t, mode, eps, iet::WeakMetricConfig{options->metric_n}, search);
    if (success != nullptr) *success = report.success ? 1 : 0;
    *out = dup_string(iet::probe_json(report));
  });
}

}  // extern "C"
