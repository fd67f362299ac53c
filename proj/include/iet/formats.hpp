#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "iet/induction3.hpp"
#include "iet/whirly.hpp"

namespace iet {

// {"lambda": ["1/2","1/4","1/4"], "pi": [3,2,1]}. Lengths may also be JSON
// integers. Throws Error(kInvalidArgument) with a message naming the problem.
Iet iet_from_json(std::string_view text);
std::string iet_to_json(const Iet& t);

// "3,2,1"
Permutation parse_permutation(std::string_view text);
// "1/2,1/4,1/4"
std::vector<Rational> parse_rational_list(std::string_view text);
// "lo,hi;lo,hi" -> canonical set
IntervalSet parse_interval_set(std::string_view text);

std::string join_rationals(const std::vector<Rational>& values, char sep = ',');

std::string rauzy_dot(const RauzyDiagram& diagram);

// Header "step,move,lambda,column_sums"; one row per Rauzy-Veech step. List
// fields are quoted comma-separated rationals. On a connection the rows
// computed so far are kept and `stopped_at` receives the failing step.
std::string rv_trace_csv(const Iet& t, std::int64_t n, std::int64_t* stopped_at = nullptr);

struct Lemma2Row {
  std::vector<Rational> lambda;
  std::vector<RauzyMove> path;
  std::int64_t k0 = 0;
  std::array<mpz_class, 3> sums;
  bool identity_ok = false;
  bool brute_force_ok = false;
};

// Seeded sweep over reverse-path instances; rows are in sample order.
std::vector<Lemma2Row> lemma2_sweep(std::size_t samples, int max_path_len, std::uint64_t seed);
std::string lemma2_csv(const std::vector<Lemma2Row>& rows, std::uint64_t seed);

std::string zstar_json(const ZstarResult& r);
std::string tower_json(const Tower& tower);
std::string columns_json(const ColumnDecomposition& d);
std::string claims_csv(const ClaimsReport& report);
std::string probe_json(const ProbeReport& report);
std::string major_json(const MajorReport& report);
std::string lemma35_json(const Lemma35Report& report);

}  // namespace iet
