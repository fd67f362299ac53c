#include <doctest.h>

#include "iet/error.hpp"
#include "iet/whirly.hpp"
#include "oracles.hpp"

using iet::Iet;
using iet::IntervalSet;
using iet::Permutation;
using iet::Rational;
using iet::RauzyMove;

namespace {

Rational r(long p, long q = 1) {
  Rational v(p, q);
  v.canonicalize();
  return v;
}

IntervalSet span(const Rational& lo, const Rational& hi) { return IntervalSet(iet::HalfOpenInterval(lo, hi)); }

template <class F>
iet::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const iet::Error& e) {
    return e.code();
  }
  return iet::ErrorCode::kOk;
}

const std::vector<Rational> kAlpha{r(401, 100000), r(99200, 100000), r(399, 100000)};
const Iet kQuarter({r(1, 2), r(1, 4), r(1, 4)}, Permutation{3, 2, 1});

// Truncated distance straight from the definition, images by stepping.
Rational distance_oracle(const Iet& t, std::int64_t s_pow, std::int64_t t_pow, int n_sets) {
  const oracle::Exchange ex(t);
  Rational value = 0, weight(1, 2);
  int produced = 0;
  for (long cells = 2; produced < n_sets; cells *= 2) {
    for (long j = 0; j < cells && produced < n_sets; ++j, ++produced) {
      const std::vector<oracle::Piece> e{{t.total() * r(j, cells), t.total() * r(j + 1, cells)}};
      const auto a = ex.image(e, s_pow), b = ex.image(e, t_pow);
      // |A sym B| = |A| + |B| - 2|A cap B|
      Rational both = 0;
      for (const auto& [alo, ahi] : a)
        for (const auto& [blo, bhi] : b) {
          const Rational lo = std::max(alo, blo), hi = std::min(ahi, bhi);
          if (lo < hi) both += hi - lo;
        }
      value += weight * (oracle::measure(a) + oracle::measure(b) - 2 * both);
      weight /= 2;
    }
  }
  return value / t.total();
}

}  // namespace

TEST_CASE("dyadic family order") {
  const auto f = iet::dyadic_family(1, 6);
  REQUIRE(f.size() == 6);
  CHECK(f[0] == span(0, r(1, 2)));
  CHECK(f[1] == span(r(1, 2), 1));
  CHECK(f[2] == span(0, r(1, 4)));
  CHECK(f[5] == span(r(3, 4), 1));
}

TEST_CASE("weak distance") {
  const iet::WeakMetricConfig one{1};
  CHECK(iet::weak_distance(3, 3, kQuarter, one).value == 0);
  CHECK(iet::weak_distance(1, 0, kQuarter, one).value == r(1, 2));
  CHECK(iet::weak_distance(1, 0, kQuarter, one).tail == r(1, 2));

  std::mt19937_64 rng(6);
  for (int round = 0; round < 20; ++round) {
    const Iet t = oracle::random_iet(rng, 2 + round % 4);
    const auto sp = static_cast<std::int64_t>(oracle::below(rng, 9)) - 4;
    const auto tp = static_cast<std::int64_t>(oracle::below(rng, 9)) - 4;
    CHECK(iet::weak_distance(sp, tp, t, iet::WeakMetricConfig{7}).value == distance_oracle(t, sp, tp, 7));
    Rational prev_value = -1, prev_tail = 2;
    for (int n = 1; n <= 12; ++n) {
      const auto d = iet::weak_distance(sp, tp, t, iet::WeakMetricConfig{n});
      CHECK(d.value >= prev_value);
      CHECK(d.tail <= prev_tail);
      CHECK(d.value <= 1 - d.tail);
      prev_value = d.value;
      prev_tail = d.tail;
    }
  }
  CHECK(code_of([] { iet::dyadic_family(1, 0); }) == iet::ErrorCode::kInvalidArgument);
}

TEST_CASE("positive loop at the symmetric permutation") {
  const iet::WhirlyWindow w = iet::make_B(Permutation::symmetric(3));
  CHECK(w.b.is_positive());
  CHECK(w.r >= 1);
  CHECK(w.r_prime >= 1);
  Rational first_row_max = 0;
  for (int j = 0; j < 3; ++j) first_row_max = std::max(first_row_max, Rational(w.b(0, j)));
  CHECK(w.b_max == first_row_max);
  CHECK(iet::path_matrix(iet::RauzyPath::follow(w.base, w.loop)).entries() == w.b);

  // a b a closes up but has zero entries
  const auto aba = iet::path_matrix(iet::RauzyPath::follow(w.base, iet::parse_moves("aba"))).entries();
  CHECK_FALSE(aba.is_positive());
  CHECK(aba.rows() == std::vector<std::vector<long>>{{1, 1, 1}, {1, 2, 0}, {0, 0, 1}});

  // nothing shorter, and nothing lexicographically earlier of the same length, is positive
  const std::size_t n = w.loop.size();
  for (std::size_t len = 1; len <= n; ++len) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
      std::string s;
      for (std::size_t i = 0; i < len; ++i) s += ((code >> (len - 1 - i)) & 1U) ? 'b' : 'a';
      if (len == n && s >= iet::to_string(w.loop)) break;
      const auto path = iet::RauzyPath::follow(w.base, iet::parse_moves(s));
      if (path.end() != w.base) continue;
      CHECK_FALSE(iet::path_matrix(path).entries().is_positive());
    }
  }
}

TEST_CASE("Y* membership") {
  CHECK(iet::in_Ystar(kAlpha, r(1, 100), r(1, 100)));
  CHECK_FALSE(iet::in_Ystar({r(1, 3), r(1, 3), r(1, 3)}, r(1, 100), r(1, 100)));
  // alpha_2 exactly (1 - eps1)|alpha|
  CHECK_FALSE(iet::in_Ystar({r(6, 1000), r(990, 1000), r(4, 1000)}, r(1, 100), r(1, 100)));
  CHECK_FALSE(iet::in_Ystar({r(4, 1000), r(992, 1000), r(4, 1000)}, r(1, 100), r(1, 100)));

  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const auto a = iet::random_ystar_alpha(rng, r(1, 100), r(1, 100));
    CHECK(iet::in_Ystar(a, r(1, 100), r(1, 100)));
    CHECK(a[0] + a[1] + a[2] == 1);
  }
}

TEST_CASE("W points") {
  const auto w = iet::make_window(r(1, 100), r(1, 100));
  const Iet t = iet::construct_W_point(kAlpha, w);
  CHECK(t.perm() == Permutation::symmetric(3));
  const iet::IntMatrix b2 = w.b * w.b;
  Rational weighted = 0;
  const auto sums = b2.column_sums();
  for (int i = 0; i < 3; ++i) weighted += Rational(sums[i]) * kAlpha[i];
  CHECK(t.total() == weighted);
  const auto run = iet::rv_iterate(t, static_cast<std::int64_t>(2 * w.loop_length()));
  CHECK(run.result.lengths() == kAlpha);
  CHECK(run.path.moves == w.double_loop());
  CHECK(code_of([&] { iet::construct_W_point({r(6, 1000), r(990, 1000), r(4, 1000)}, w); }) ==
        iet::ErrorCode::kPrecondition);
}

TEST_CASE("towers") {
  const Iet t({r(1, 2), r(1, 4), r(1, 5)}, Permutation{3, 2, 1});
  const auto one = iet::build_tower(t, iet::HalfOpenInterval(0, r(1, 20)), 1);
  REQUIRE(one.floors.size() == 1);
  CHECK(one.floors[0] == span(0, r(1, 20)));
  CHECK(one.remainder_measure == t.total() - r(1, 20));
  CHECK(iet::build_tower(t, iet::HalfOpenInterval(0, r(1, 20)), 2).floors[1] == span(r(9, 20), r(1, 2)));
  CHECK(code_of([&] { iet::build_tower(t, iet::HalfOpenInterval(0, r(19, 20)), 2); }) == iet::ErrorCode::kNotATower);

  const auto d = iet::return_time_towers(t);
  CHECK(d.remainder.empty());
  Rational covered = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(d.columns[i].height == d.zstar.sums[i].get_si());
    for (const auto& f : d.columns[i].floors) {
      CHECK(f.measure() == d.columns[i].base.length());
      covered += f.measure();
    }
  }
  CHECK(covered == r(19, 20));
  CHECK(1 * r(1, 20) + 2 * r(1, 4) + 2 * r(1, 5) == t.total());
}

TEST_CASE("tower claims on the reference instance") {
  const auto w = iet::make_window(r(1, 100), r(1, 100));
  const Iet t = iet::construct_W_point(kAlpha, w);
  const iet::ClaimsReport rep = iet::verify_claims(t, w, 2);
  CHECK(rep.all_hold());
  auto row = [&](const std::string& name) {
    for (const auto& x : rep.rows)
      if (x.quantity == name) return x;
    FAIL("missing row " << name);
    return rep.rows.front();
  };
  CHECK(row("C1_overlap").computed == kAlpha[1] - r(1, 25000));
  CHECK(row("C3_lower").bound == r(49, 50) * r(399, 100000));
  CHECK(row("C2_remainder").computed ==
        Rational(rep.sums[0]) * kAlpha[0] + Rational(rep.sums[2]) * kAlpha[2]);
  CHECK(row("C2_remainder").computed < r(1, 99) * t.total());

  // past the shift budget the whirly part is empty and the lower bound is vacuous
  const iet::ClaimsReport far = iet::verify_claims(t, w, 200);
  CHECK(row("C3_omega_measure").computed > 0);
  for (const auto& x : far.rows)
    if (x.quantity == "C3_omega_measure") CHECK(x.computed == 0);
}

TEST_CASE("claims report failures instead of hiding them") {
  // wide window: shift alpha_1 - alpha_3 = 3/20, three shifts exceed alpha_2
  const auto w = iet::make_window(r(9, 10), 1);
  const std::vector<Rational> alpha{r(2, 5), r(7, 20), r(1, 4)};
  REQUIRE(iet::in_Ystar(alpha, w.eps1, w.eps2));
  const iet::ClaimsReport rep = iet::verify_claims(iet::construct_W_point(alpha, w), w, 3);
  CHECK_FALSE(rep.all_hold());
  for (const auto& x : rep.rows)
    if (x.quantity == "C1_overlap") CHECK_FALSE(x.holds);
  CHECK(code_of([&] { iet::verify_claims(kQuarter, w, 1); }) != iet::ErrorCode::kOk);
}

TEST_CASE("whirly constant") {
  for (std::int64_t l = 1; l <= 3; ++l) CHECK(iet::whirly_constant(r(1, 20), l) == r(1, 64));
  CHECK(iet::whirly_constant(r(1, 10), 2) == r(1, 32));
  // largest power of two meeting both inequalities
  for (const Rational& eps : {r(1, 20), r(1, 10), r(1, 3)}) {
    for (std::int64_t l = 1; l <= 5; ++l) {
      const Rational c = iet::whirly_constant(eps, l);
      auto ok = [&](const Rational& x) { return l * x * x / (1 - x) < eps / 10 && x / (1 - x) < eps / 2; };
      CHECK(ok(c));
      if (c < r(1, 2)) CHECK_FALSE(ok(2 * c));
    }
  }
}

TEST_CASE("window hits and tower estimates") {
  std::mt19937_64 rng(19);
  const Rational eps(1, 10);
  const Rational c = iet::whirly_constant(eps, 2);
  const auto w = iet::make_window(c, c);
  for (int i = 0; i < 5; ++i) {
    const Iet t = iet::construct_W_point(iet::random_ystar_alpha(rng, c, c), w);
    const auto rep = iet::lemma_major_check(t, eps, 2, 50);
    REQUIRE_FALSE(rep.hits.empty());
    CHECK(rep.hits.front().hit.k == 0);
    CHECK(rep.proven_checks_hold());

    const auto l35 = iet::lemma_35_bound(t, w);
    CHECK(l35.all_hold());
    CHECK(l35.inequality.computed > l35.inequality.bound);
  }
  const Iet plain({r(7, 10), r(1, 5), r(3, 11)}, Permutation{3, 2, 1});
  CHECK(iet::lemma_major_check(plain, eps, 2, 20).hits.empty());
  CHECK(code_of([&] { iet::lemma_35_bound(plain, w, 20); }) == iet::ErrorCode::kPrecondition);
}

TEST_CASE("probe") {
  const IntervalSet whole(kQuarter.domain());
  const auto trivial = iet::whirly_probe(kQuarter, iet::PairSets{whole, whole}, 1, iet::WeakMetricConfig{20});
  CHECK(trivial.success);
  CHECK(trivial.n == 1);
  CHECK(trivial.overlap == kQuarter.total());
  CHECK(code_of([&] {
          iet::whirly_probe(kQuarter, iet::SelfShift{IntervalSet(), 1}, 1, iet::WeakMetricConfig{20});
        }) == iet::ErrorCode::kPrecondition);

  const Rational eps(1, 20);
  const Rational c = iet::whirly_constant(eps, 2);
  const auto w = iet::make_window(c, c);
  const Iet t = iet::construct_W_point(kAlpha, w);
  const auto z = iet::rv_iterate(t, static_cast<std::int64_t>(2 * w.loop_length()));
  const std::int64_t a2 = z.matrix.column_sums()[1].get_si();
  const IntervalSet base = span(0, 1);  // I^alpha, |alpha| = 1
  const auto rep = iet::whirly_probe(t, iet::SelfShift{base, 2}, eps, iet::WeakMetricConfig{20});
  REQUIRE(rep.success);
  CHECK(rep.n == 2 * a2);
  CHECK(rep.distance.upper() < eps);
  CHECK(rep.overlap >= (1 - 2 * c) * kAlpha[2]);
  // re-check with the stepping oracle
  const oracle::Exchange ex(t);
  const auto moved = ex.image(oracle::pieces(base), rep.n), back = ex.image(oracle::pieces(base), -2);
  Rational both = 0;
  for (const auto& [alo, ahi] : moved)
    for (const auto& [blo, bhi] : back) {
      const Rational lo = std::max(alo, blo), hi = std::min(ahi, bhi);
      if (lo < hi) both += hi - lo;
    }
  CHECK(both == rep.overlap);
}
