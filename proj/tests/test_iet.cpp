#include <doctest.h>

#include "iet/error.hpp"
#include "iet/iet.hpp"
#include "iet/induction3.hpp"
#include "oracles.hpp"

using iet::Iet;
using iet::IntervalSet;
using iet::Permutation;
using iet::Rational;

namespace {

Rational r(long p, long q = 1) {
  Rational v(p, q);
  v.canonicalize();
  return v;
}

Iet make(std::vector<Rational> lam, std::vector<int> pi) { return Iet(std::move(lam), Permutation(std::move(pi))); }

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

const Iet kQuarter = make({r(1, 2), r(1, 4), r(1, 4)}, {3, 2, 1});

}  // namespace

TEST_CASE("irreducibility") {
  CHECK(Permutation{3, 2, 1}.is_irreducible());
  CHECK_FALSE(Permutation{1, 2, 3}.is_irreducible());
  CHECK_FALSE(Permutation{2, 1, 3}.is_irreducible());
  CHECK(Permutation{2, 1}.is_irreducible());
  CHECK(Permutation{4, 3, 2, 1}.is_starred());
  CHECK_FALSE(Permutation{3, 1, 2}.is_starred());
  CHECK(code_of([] { Permutation{1, 1, 2}; }) == iet::ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Permutation{1}; }) == iet::ErrorCode::kInvalidArgument);
  CHECK(iet::to_string(Permutation::symmetric(4)) == "(4,3,2,1)");
}

TEST_CASE("construction: breakpoints and offsets") {
  CHECK(kQuarter.betas() == std::vector<Rational>{0, r(1, 2), r(3, 4), 1});
  CHECK(kQuarter.offsets() == std::vector<Rational>{r(1, 2), r(-1, 4), r(-3, 4)});
  const Iet swap = make({1, 1}, {2, 1});
  CHECK(swap.offsets() == std::vector<Rational>{1, -1});
  CHECK(code_of([] { make({r(1, 3), 0, r(2, 3)}, {3, 2, 1}); }) == iet::ErrorCode::kInvalidArgument);
  CHECK(code_of([] { make({1, 1}, {3, 2, 1}); }) == iet::ErrorCode::kInvalidArgument);
  // reducible permutations still define a map
  const Iet reducible = make({1, 1, 1}, {1, 3, 2});
  CHECK(reducible.is_reducible());
  CHECK(iet::apply(reducible, r(1, 2)) == r(1, 2));
}

TEST_CASE("apply forward and inverse") {
  CHECK(iet::apply(kQuarter, 0) == r(1, 2));
  CHECK(iet::apply(kQuarter, r(3, 4)) == 0);
  CHECK(iet::apply(kQuarter, r(1, 2), iet::Direction::kInverse) == 0);
  CHECK(code_of([] { iet::apply(kQuarter, 1); }) == iet::ErrorCode::kDomain);
  CHECK(code_of([] { iet::apply(kQuarter, r(-1, 8)); }) == iet::ErrorCode::kDomain);
  CHECK(kQuarter.interval_of(r(1, 2)) == 2);
}

TEST_CASE("image_set examples") {
  CHECK(iet::image_set(kQuarter, span(0, r(1, 2)), 1) == span(r(1, 2), 1));
  const IntervalSet whole(kQuarter.domain());
  for (std::int64_t n : {-7, -1, 0, 1, 5, 1000}) CHECK(iet::image_set(kQuarter, whole, n) == whole);
  const IntervalSet s = span(r(1, 8), r(5, 8));
  CHECK(iet::image_set(kQuarter, s, 0) == s);
  CHECK(code_of([] { iet::image_set(kQuarter, span(r(1, 2), 2), 1); }) == iet::ErrorCode::kDomain);
  CHECK(code_of([] { iet::power_map(kQuarter, 11, 10); }) == iet::ErrorCode::kResource);
}

TEST_CASE("image_set matches piece-by-piece stepping") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 60; ++round) {
    const int m = 2 + static_cast<int>(oracle::below(rng, 4));
    const Iet t = oracle::random_iet(rng, m);
    const oracle::Exchange ex(t);
    const IntervalSet s = oracle::random_set(rng, t.total(), 3);
    const std::int64_t n = static_cast<std::int64_t>(oracle::below(rng, 61)) - 30;
    CAPTURE(iet::to_string(t));
    CAPTURE(n);
    CHECK(oracle::pieces(iet::image_set(t, s, n)) == ex.image(oracle::pieces(s), n));
  }
}

TEST_CASE("points: power maps agree with stepping") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    const int m = 2 + static_cast<int>(oracle::below(rng, 4));
    const Iet t = oracle::random_iet(rng, m);
    const oracle::Exchange ex(t);
    const Rational x = oracle::grid_value(rng, 1000, 0, 999) * t.total();
    const std::int64_t n = static_cast<std::int64_t>(oracle::below(rng, 201)) - 100;
    CHECK(iet::apply_power(t, x, n) == ex.power(x, n));
    CHECK(iet::power_map(t, n).apply(x) == ex.power(x, n));
    CHECK(iet::apply(t, iet::apply(t, x), iet::Direction::kInverse) == x);
  }
}

TEST_CASE("bijectivity, measure preservation and piece counts") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 200; ++round) {
    const int m = 2 + round % 4;
    const Iet t = oracle::random_iet(rng, m);
    const IntervalSet whole(t.domain());
    CHECK(iet::image_set(t, whole, 1) == whole);
    const std::int64_t n = 1 + static_cast<std::int64_t>(oracle::below(rng, 200));
    const iet::TranslationMap p = iet::power_map(t, n);
    CHECK(p.pieces() <= static_cast<std::size_t>(n * (m - 1) + 1));
    CHECK(p.after(p.inverse()).pieces() == 1);
    const IntervalSet e = oracle::random_set(rng, t.total(), 3);
    CHECK(p.apply(e).measure() == e.measure());
  }
}

TEST_CASE("first return") {
  const iet::HalfOpenInterval whole(0, kQuarter.total());
  for (const Rational& x : {Rational(0), r(1, 3), r(7, 8)}) CHECK(iet::first_return(kQuarter, whole, x, 10).k == 1);

  const Iet t = make({r(1, 2), r(1, 4), r(1, 5)}, {3, 2, 1});
  const iet::HalfOpenInterval j(0, r(1, 2));
  const auto fr = iet::first_return(t, j, 0, 100);
  const auto z = iet::zstar(t);
  CHECK(fr.k == z.sums[0].get_si());
  CHECK(fr.k == oracle::Exchange(t).return_time(0, r(1, 2)));
  CHECK(code_of([&] { iet::first_return(t, j, r(3, 4), 100); }) == iet::ErrorCode::kDomain);
}

TEST_CASE("induced maps") {
  CHECK(iet::induced_map(kQuarter, 1, 100) == kQuarter);
  // last two return pieces share a translation and merge
  CHECK(iet::induced_map(kQuarter, r(3, 4), 100) == make({r(1, 4), r(1, 2)}, {2, 1}));
  const Iet t = make({r(1, 2), r(1, 4), r(1, 5)}, {3, 2, 1});
  CHECK(iet::induced_map(t, r(1, 2), 100) == make({r(1, 20), r(1, 4), r(1, 5)}, {3, 2, 1}));
}

TEST_CASE("induced map agrees with simulated first returns") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 30; ++round) {
    const Iet t = oracle::random_iet(rng, 3 + round % 3);
    const Rational L = t.total() - std::min(t.lengths().back(), t.length(t.perm().inverse(t.size())));
    if (t.lengths().back() == t.length(t.perm().inverse(t.size()))) continue;
    const Iet induced = iet::induced_map(t, L, 10000);
    CHECK(induced.total() == L);
    const oracle::Exchange ex(t);
    for (int k = 0; k < 20; ++k) {
      const Rational x = oracle::grid_value(rng, 997, 0, 996) * L;
      CHECK(iet::apply(induced, x) == ex.power(x, ex.return_time(x, L)));
    }
  }
}

TEST_CASE("connections") {
  CHECK(iet::detect_connection(make({r(1, 3), r(1, 3), r(1, 3)}, {3, 2, 1}), 10) == 1);
  CHECK_FALSE(iet::detect_connection(make({r(1, 2), r(1, 4), r(1, 5)}, {3, 2, 1}), 2).has_value());
  // every step removes at least 1/q, so rational data hits a connection within q|lambda| steps
  std::mt19937_64 rng(8);
  for (int round = 0; round < 20; ++round) {
    const Iet t = oracle::random_iet(rng, 3, 29);
    const auto step = iet::detect_connection(t, 29 * 3 * 29);
    REQUIRE(step.has_value());
    CHECK(*step <= 29 * t.total());
  }
}

TEST_CASE("admissibility") {
  const Iet t = make({r(1, 2), r(1, 4), r(1, 5)}, {3, 2, 1});
  CHECK(iet::is_admissible(t, 0, t.total(), 5) == iet::Admissibility::kVerified);
  CHECK(iet::is_admissible(t, 0, r(1, 2), 5) == iet::Admissibility::kVerified);
  const Iet g = make({r(7, 10), r(1, 5), r(3, 11)}, {3, 2, 1});
  CHECK(iet::is_admissible(g, 0, std::max(g.length(1), g.length(3)), 5) == iet::Admissibility::kVerified);
  CHECK(iet::is_admissible(g, 0, r(1, 7919), 5) == iet::Admissibility::kUnknown);
  CHECK(code_of([&] { iet::is_admissible(g, r(1, 2), r(1, 2), 5); }) == iet::ErrorCode::kPrecondition);
}
