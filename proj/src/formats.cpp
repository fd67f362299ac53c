#include "iet/formats.hpp"

#include <json.hpp>
#include <sstream>

namespace iet {

using nlohmann::json;

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

json rationals_json(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

json sums_json(const std::array<mpz_class, 3>& sums) {
  json arr = json::array();
  for (const auto& v : sums) arr.push_back(v.get_str());
  return arr;
}

json set_json(const IntervalSet& s) {
  json arr = json::array();
  for (const auto& p : s.parts()) arr.push_back({to_string(p.lo()), to_string(p.hi())});
  return arr;
}

json check_json(const CheckRow& row) {
  return {{"quantity", row.quantity},
          {"computed", to_string(row.computed)},
          {"relation", row.relation},
          {"bound", to_string(row.bound)},
          {"holds", row.holds}};
}

}  // namespace

Iet iet_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("lambda") || !doc.contains("pi")) {
    fail(ErrorCode::kInvalidArgument, "IET JSON needs an object with \"lambda\" and \"pi\"");
  }
  const json& lam = doc["lambda"];
  const json& pi = doc["pi"];
  if (!lam.is_array() || !pi.is_array()) fail(ErrorCode::kInvalidArgument, "\"lambda\" and \"pi\" must be arrays");
  std::vector<Rational> lengths;
  for (const auto& v : lam) {
    if (v.is_string()) {
      lengths.push_back(parse_rational(v.get<std::string>()));
    } else if (v.is_number_integer()) {
      lengths.emplace_back(v.get<long>());
    } else {
      fail(ErrorCode::kInvalidArgument, "lambda entries must be \"p/q\" strings or integers, got " + v.dump());
    }
  }
  std::vector<int> images;
  for (const auto& v : pi) {
    if (!v.is_number_integer()) fail(ErrorCode::kInvalidArgument, "pi entries must be integers, got " + v.dump());
    images.push_back(v.get<int>());
  }
  return Iet(std::move(lengths), Permutation(std::move(images)));
}

std::string iet_to_json(const Iet& t) {
  json doc;
  doc["lambda"] = rationals_json(t.lengths());
  doc["pi"] = t.perm().images();
  return doc.dump();
}

Permutation parse_permutation(std::string_view text) {
  std::vector<int> images;
  for (auto part : split(text, ',')) {
    const Rational v = parse_rational(part);
    if (v.get_den() != 1 || !v.get_num().fits_sint_p()) {
      fail(ErrorCode::kInvalidArgument, "permutation entries must be small integers: '" + std::string(text) + "'");
    }
    images.push_back(static_cast<int>(v.get_num().get_si()));
  }
  return Permutation(std::move(images));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (auto part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

IntervalSet parse_interval_set(std::string_view text) {
  std::vector<std::pair<Rational, Rational>> raw;
  for (auto part : split(text, ';')) {
    const auto ends = parse_rational_list(part);
    if (ends.size() != 2) fail(ErrorCode::kInvalidArgument, "interval must be 'lo,hi', got '" + std::string(part) + "'");
    raw.emplace_back(ends[0], ends[1]);
  }
  return IntervalSet::normalize(std::move(raw));
}

std::string join_rationals(const std::vector<Rational>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += to_string(values[i]);
  }
  return out;
}

std::string rauzy_dot(const RauzyDiagram& diagram) {
  std::ostringstream out;
  out << "digraph rauzy {\n";
  for (std::size_t i = 0; i < diagram.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << to_string(diagram.nodes[i]) << "\"];\n";
  }
  for (const auto& e : diagram.edges) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_char(e.move) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string rv_trace_csv(const Iet& t, std::int64_t n, std::int64_t* stopped_at) {
  std::ostringstream out;
  out << "step,move,lambda,column_sums\n";
  auto row = [&](std::int64_t step, const RvIteration& state) {
    std::string sums;
    for (const auto& s : state.matrix.column_sums()) {
      if (!sums.empty()) sums += ',';
      sums += s.get_str();
    }
    out << step << ',' << to_char(state.path.moves.back()) << ",\"" << join_rationals(state.result.lengths())
        << "\",\"" << sums << "\"\n";
  };
  if (stopped_at != nullptr) *stopped_at = 0;
  try {
    rv_iterate(t, n, row);
  } catch (const InductionStopped& e) {
    if (stopped_at == nullptr) throw;
    *stopped_at = e.step();
  }
  return out.str();
}

std::vector<Lemma2Row> lemma2_sweep(std::size_t samples, int max_path_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Lemma2Row> rows;
  rows.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    ReversePathSample sample = random_reverse_path_instance(rng, max_path_len);
    const ZstarResult z = zstar(sample.lambda);
    Lemma2Row row;
    row.lambda = sample.lambda.lengths();
    row.path = sample.moves;
    row.k0 = z.k0;
    row.sums = z.sums;
    row.identity_ok = check_return_identity(z);
    const auto brute = brute_force_return_times(sample.lambda);
    row.brute_force_ok = true;
    for (std::size_t j = 0; j < 3; ++j) row.brute_force_ok = row.brute_force_ok && z.sums[j] == brute[j];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string lemma2_csv(const std::vector<Lemma2Row>& rows, std::uint64_t seed) {
  std::ostringstream out;
  out << "# seed=" << seed << '\n';
  out << "lambda,k0,a1,a2,a3,identity_ok\n";
  for (const auto& r : rows) {
    out << '"' << join_rationals(r.lambda) << "\"," << r.k0 << ',' << r.sums[0].get_str() << ','
        << r.sums[1].get_str() << ',' << r.sums[2].get_str() << ',' << (r.identity_ok ? "true" : "false") << '\n';
  }
  return out.str();
}

static json zstar_doc(const ZstarResult& r) {
  json doc;
  doc["alpha"] = rationals_json(r.alpha);
  doc["k0"] = r.k0;
  doc["path"] = to_string(r.path.moves);
  doc["return_times"] = sums_json(r.sums);
  json rows = json::array();
  for (int i = 0; i < r.matrix.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < r.matrix.dim(); ++j) row.push_back(r.matrix.entries()(i, j).get_str());
    rows.push_back(row);
  }
  doc["matrix"] = rows;
  doc["identity_ok"] = check_return_identity(r);
  return doc;
}

static json tower_doc(const Tower& tower) {
  json doc;
  doc["base"] = {to_string(tower.base.lo()), to_string(tower.base.hi())};
  doc["height"] = tower.height;
  json floors = json::array();
  for (const auto& f : tower.floors) floors.push_back(set_json(f));
  doc["floors"] = floors;
  return doc;
}

std::string zstar_json(const ZstarResult& r) { return zstar_doc(r).dump(); }

std::string tower_json(const Tower& tower) {
  json doc = tower_doc(tower);
  doc["remainder"] = set_json(tower.remainder);
  doc["remainder_measure"] = to_string(tower.remainder_measure);
  return doc.dump();
}

std::string columns_json(const ColumnDecomposition& d) {
  json doc;
  doc["zstar"] = zstar_doc(d.zstar);
  json columns = json::array();
  for (const auto& c : d.columns) columns.push_back(tower_doc(c));
  doc["columns"] = columns;
  doc["remainder"] = set_json(d.remainder);
  doc["remainder_measure"] = to_string(d.remainder_measure);
  return doc.dump();
}

std::string claims_csv(const ClaimsReport& report) {
  std::ostringstream out;
  out << "quantity,computed,bound,holds\n";
  for (const auto& row : report.rows) {
    out << row.quantity << ',' << to_string(row.computed) << ',' << to_string(row.bound) << ','
        << (row.holds ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string probe_json(const ProbeReport& report) {
  json doc;
  doc["mode"] = report.mode;
  doc["success"] = report.success;
  doc["n"] = report.n;
  doc["weak_distance"] = to_string(report.distance.value);
  doc["tail_bound"] = to_string(report.distance.tail);
  doc["overlap"] = to_string(report.overlap);
  doc["tried"] = report.tried;
  return doc.dump();
}

std::string major_json(const MajorReport& report) {
  json doc;
  doc["eps"] = to_string(report.eps);
  doc["l"] = report.l;
  doc["c"] = to_string(report.c);
  doc["depth"] = report.depth;
  json hits = json::array();
  for (const auto& h : report.hits) {
    hits.push_back({{"k", h.hit.k},
                    {"stage", h.hit.stage},
                    {"alpha", rationals_json(h.hit.alpha)},
                    {"return_times", sums_json(h.hit.sums)},
                    {"checks", {check_json(h.p1), check_json(h.p2), check_json(h.overlap), check_json(h.p3_literal)}}});
  }
  doc["hits"] = hits;
  return doc.dump();
}

std::string lemma35_json(const Lemma35Report& report) {
  json doc;
  doc["k"] = report.k;
  doc["alpha"] = rationals_json(report.alpha);
  doc["eta"] = rationals_json(report.eta);
  doc["a_star"] = report.a_star.get_str();
  doc["checks"] = {check_json(report.inequality), check_json(report.eta2), check_json(report.eta3)};
  doc["tower_disjoint"] = report.tower_disjoint;
  doc["continuous"] = report.continuous;
  return doc.dump();
}

}  // namespace iet
