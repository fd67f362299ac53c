#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "iet/induction3.hpp"
#include "iet/rauzy.hpp"

namespace iet {

// ------------------------------------------------------------- weak metric

// Generating family: dyadic intervals of [0,|lambda|) in level-major order
// (halves, then quarters, ...). Only the first `truncation` sets are summed.
struct WeakMetricConfig {
  int truncation = 20;
};

std::vector<IntervalSet> dyadic_family(const Rational& total, int count);

// sum_{n<=N} 2^-n mu(S E_n sym T E_n) / |lambda|, measured in the normalized
// (probability) measure. `tail` bounds the omitted terms: 2^-N.
struct WeakDistance {
  Rational value;
  Rational tail;
  Rational upper() const { return value + tail; }
};

WeakDistance weak_distance(const TranslationMap& s, const TranslationMap& t, const WeakMetricConfig& cfg);
WeakDistance weak_distance(std::int64_t s_power, std::int64_t t_power, const Iet& t,
                           const WeakMetricConfig& cfg, std::int64_t cap = kDefaultPowerCap);

// ---------------------------------------------------------- window and B

// Closed loop at the base permutation whose visitation matrix B is
// entrywise positive, together with the constants derived from it.
struct WhirlyWindow {
  Rational eps1;
  Rational eps2;
  Permutation base = Permutation::symmetric(3);
  std::vector<RauzyMove> loop;
  IntMatrix b;
  Rational r;        // nu(B)
  Rational r_prime;  // nu(B^t)
  Rational b_max;    // max of the first row of B

  std::size_t loop_length() const { return loop.size(); }
  // loop followed by loop; forward induction from B^2 alpha runs along it.
  std::vector<RauzyMove> double_loop() const;
};

// Shortest closed loop at p (length <= max_len, ties broken
// lexicographically with a < b) whose matrix product is positive.
// eps1/eps2 are left at zero.
WhirlyWindow make_B(const Permutation& p, int max_len = 16);

WhirlyWindow make_window(const Rational& eps1, const Rational& eps2);

// (1 - eps1/2)|alpha| > alpha_2 > (1 - eps1)|alpha| and
// (1 + eps2) alpha_3 > alpha_1 > alpha_3, all strict.
bool in_Ystar(const std::vector<Rational>& alpha, const Rational& eps1, const Rational& eps2);

// Random alpha with |alpha| = 1 inside Y*(eps1, eps2); grid denominator 1e6.
std::vector<Rational> random_ystar_alpha(std::mt19937_64& rng, const Rational& eps1, const Rational& eps2);

// lambda = B^2 alpha with pi = (3,2,1); forward induction is checked to
// return to (alpha, pi).
Iet construct_W_point(const std::vector<Rational>& alpha, const WhirlyWindow& w);

// ------------------------------------------------------------------ towers

struct Tower {
  HalfOpenInterval base;
  std::int64_t height = 0;
  std::vector<IntervalSet> floors;  // floors[i] = T^i(base)
  IntervalSet remainder;            // [0,|lambda|) minus the union of floors
  Rational remainder_measure;
};

// Throws Error(kNotATower) naming the first floor that meets an earlier one.
Tower build_tower(const Iet& t, const HalfOpenInterval& base, std::int64_t height);

// Columns over the three subintervals of [0, max{lambda_1, lambda_3}) with
// heights equal to their return times.
struct ColumnDecomposition {
  ZstarResult zstar;
  std::vector<Tower> columns;
  IntervalSet remainder;
  Rational remainder_measure;
};

ColumnDecomposition return_time_towers(const Iet& t, std::int64_t cap = kDefaultInductionCap);

// ------------------------------------------------------------------ checks

struct CheckRow {
  std::string quantity;
  Rational computed;
  std::string relation;  // "==", "<", ">", ">="
  Rational bound;
  bool holds = false;
};

CheckRow make_check(std::string quantity, Rational computed, std::string relation, Rational bound);

struct ClaimsReport {
  std::vector<Rational> alpha;
  std::array<mpz_class, 3> sums;
  std::int64_t l = 0;
  Rational eps1;
  Rational eps2;
  std::vector<CheckRow> rows;
  bool all_hold() const;
};

// Exact evaluation of the tower claims on an instance built by
// construct_W_point with the same window.
ClaimsReport verify_claims(const Iet& t, const WhirlyWindow& w, std::int64_t l);

// Stage of the induction where (lambda^(k), pi) = (B^2 alpha, pi).
struct WindowHit {
  std::int64_t k = 0;
  std::int64_t stage = 0;  // k + 2n: where alpha is reached
  std::vector<Rational> alpha;
  std::vector<Rational> eta;  // lambda^(k+n) = B alpha
  std::array<mpz_class, 3> sums;       // column sums of A^(k+2n)
  std::array<mpz_class, 3> eta_sums;   // column sums of A^(k+n)
};

// Scans the first `depth` Rauzy-Veech steps for stages followed by two
// copies of the window loop. With `require_ystar`, alpha must also lie in
// Y*(w.eps1, w.eps2).
std::vector<WindowHit> find_window_hits(const Iet& t, const WhirlyWindow& w, std::int64_t depth,
                                        bool require_ystar, std::size_t max_hits = 16);

// Largest 2^-j with l c^2/(1-c) < eps/10 and c/(1-c) < eps/2.
Rational whirly_constant(const Rational& eps, std::int64_t l);

struct MajorHit {
  WindowHit hit;
  CheckRow p1;          // mu(I^a cap T^{l a2} I^a) > (1-eps)|a|
  CheckRow p2;          // |lambda| - mu(column over I^a_2) < eps |lambda|
  CheckRow overlap;     // mu(T^{l a2} I^a cap T^-l I^a) >= (1 - l c) a_3
  CheckRow p3_literal;  // same quantity against (eps/3)|a|; informational
};

struct MajorReport {
  Rational eps;
  std::int64_t l = 0;
  Rational c;
  std::int64_t depth = 0;
  std::vector<MajorHit> hits;  // elements of N_{eps,l} found within depth
  bool proven_checks_hold() const;
};

MajorReport lemma_major_check(const Iet& t, const Rational& eps, std::int64_t l, std::int64_t depth,
                              std::size_t max_hits = 8);

struct Lemma35Report {
  std::int64_t k = 0;
  std::vector<Rational> alpha;
  std::vector<Rational> eta;
  mpz_class a_star;
  CheckRow inequality;      // a_* |alpha| > |lambda| / (b_M (1 + 2 r r'))
  CheckRow eta2;            // eta_2 < r' eta_1
  CheckRow eta3;            // eta_3 < r' eta_1
  bool tower_disjoint = false;
  bool continuous = false;
  bool all_hold() const;
};

Lemma35Report lemma_35_bound(const Iet& t, const WhirlyWindow& w, std::int64_t depth = 1000);

// ------------------------------------------------------------------- probe

struct SelfShift {
  IntervalSet e;
  std::int64_t l = 1;
};

struct PairSets {
  IntervalSet e;
  IntervalSet f;
};

using ProbeMode = std::variant<SelfShift, PairSets>;

struct ProbeSearch {
  // Explicit powers to try; when empty they are harvested from window hits.
  std::vector<std::int64_t> candidates;
  std::int64_t depth = 200;
  // Loop multipliers used for harvesting; empty means {l} for SelfShift and
  // {1,2,3} for PairSets.
  std::vector<std::int64_t> harvest_ls;
  // Powers 1..small_powers are appended after the harvested ones.
  std::int64_t small_powers = 16;
};

struct ProbeReport {
  std::string mode;
  std::int64_t n = 0;
  WeakDistance distance;
  Rational overlap;
  bool success = false;
  std::vector<std::int64_t> tried;
};

// l * a2 at every Y*(c,c) window hit (c = whirly_constant(eps, l)), then
// 1..small_powers; duplicates removed, order kept.
std::vector<std::int64_t> harvest_candidates(const Iet& t, const Rational& eps,
                                             const std::vector<std::int64_t>& ls, std::int64_t depth,
                                             std::int64_t small_powers);

// First candidate n with weak_distance(T^n, Id) + tail < eps and a positive
// overlap: mu(T^n E cap T^-l E) for SelfShift, mu(T^n E cap F) for PairSets.
ProbeReport whirly_probe(const Iet& t, const ProbeMode& mode, const Rational& eps,
                         const WeakMetricConfig& cfg, const ProbeSearch& search = {});

}  // namespace iet
