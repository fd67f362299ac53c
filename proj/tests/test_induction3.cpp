#include <doctest.h>

#include <array>

#include "iet/error.hpp"
#include "iet/induction3.hpp"
#include "oracles.hpp"

using iet::Iet;
using iet::Permutation;
using iet::Rational;
using Sums = std::array<mpz_class, 3>;

namespace {

Rational r(long p, long q = 1) {
  Rational v(p, q);
  v.canonicalize();
  return v;
}

Iet sym(std::vector<Rational> lam) { return Iet(std::move(lam), Permutation{3, 2, 1}); }

template <class F>
iet::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const iet::Error& e) {
    return e.code();
  }
  return iet::ErrorCode::kOk;
}

using Mat = std::array<std::array<long, 3>, 3>;

Mat mul(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::array<long, 3> col_sums(const Mat& a) {
  return {a[0][0] + a[1][0] + a[2][0], a[0][1] + a[1][1] + a[2][1], a[0][2] + a[1][2] + a[2][2]};
}

// b a^l b from the explicit 3x3 matrices at (3,2,1) and (2,3,1)
std::array<long, 3> balb_oracle(int l) {
  const Mat pi_b{{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}}};
  const Mat pi2_a{{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}};
  const Mat pi2_b{{{1, 0, 0}, {0, 1, 0}, {0, 1, 1}}};
  Mat m = pi_b;
  for (int i = 0; i < l; ++i) m = mul(m, pi2_a);
  return col_sums(mul(m, pi2_b));
}

}  // namespace

TEST_CASE("zstar examples") {
  const auto a = iet::zstar(sym({1, 1, r(1, 3)}));
  CHECK(a.alpha == std::vector<Rational>{r(1, 3), r(1, 3), r(1, 3)});
  CHECK(a.k0 == 3);
  CHECK(a.sums == Sums{2, 3, 2});
  CHECK(iet::check_return_identity(a));

  const auto b = iet::zstar(sym({r(1, 2), r(1, 4), r(1, 5)}));
  CHECK(b.alpha == std::vector<Rational>{r(1, 20), r(1, 4), r(1, 5)});
  CHECK(b.k0 == 2);
  CHECK(b.sums == Sums{1, 2, 2});
  CHECK(b.matrix.entries().apply(b.alpha) == std::vector<Rational>{r(1, 2), r(1, 4), r(1, 5)});

  CHECK_THROWS_AS(iet::zstar(sym({r(1, 3), r(1, 3), r(1, 3)})), iet::ConnectionError);
  CHECK(code_of([] { iet::zstar(Iet({1, 2, 3}, Permutation{3, 1, 2})); }) == iet::ErrorCode::kPrecondition);
}

TEST_CASE("return identity") {
  CHECK(iet::check_return_identity(Sums{2, 3, 2}));
  CHECK(iet::check_return_identity(Sums{1, 2, 2}));
  CHECK(iet::check_return_identity(Sums{1, 1, 1}));
  CHECK_FALSE(iet::check_return_identity(Sums{1, 2, 1}));
  CHECK_FALSE(iet::check_return_identity(Sums{2, 2, 2}));
}

TEST_CASE("closed path sums") {
  CHECK(iet::closed_path_sums(iet::ClosedPathFamily::kABLA, 1) == Sums{2, 3, 2});
  CHECK(iet::closed_path_sums(iet::ClosedPathFamily::kABLA, 5) == Sums{6, 7, 2});
  for (int l = 0; l <= 50; ++l) {
    CAPTURE(l);
    CHECK(iet::closed_path_sums(iet::ClosedPathFamily::kABLA, l) == Sums{l + 1, l + 2, 2});
    const auto o = balb_oracle(l);
    const Sums got = iet::closed_path_sums(iet::ClosedPathFamily::kBALB, l);
    CHECK(got == Sums{o[0], o[1], o[2]});
    CHECK(iet::check_return_identity(got));
  }
  CHECK(iet::to_string(iet::closed_path_moves(iet::ClosedPathFamily::kBALB, 3)) == "baaab");
}

TEST_CASE("invariant density") {
  CHECK(iet::invariant_density_f2({r(1, 4), r(1, 2), r(1, 4)}) == r(128, 27));
  CHECK(iet::invariant_density_f2({r(3, 7), r(3, 7), r(1, 7)}) == r(1715, 288));
  CHECK(code_of([] { iet::invariant_density_f2({1, 0, 0}); }) == iet::ErrorCode::kDomain);
  CHECK(code_of([] { iet::invariant_density_f2({1, 1, 1}); }) == iet::ErrorCode::kPrecondition);
  // symmetric in lambda_1 <-> lambda_3
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Rational a = oracle::grid_value(rng, 100, 1, 40), c = oracle::grid_value(rng, 100, 1, 40);
    CHECK(iet::invariant_density_f2({a, 1 - a - c, c}) == iet::invariant_density_f2({c, 1 - a - c, a}));
  }
}

TEST_CASE("brute-force return times") {
  CHECK(iet::brute_force_return_times(sym({r(1, 2), r(1, 4), r(1, 5)})) == std::array<std::int64_t, 3>{1, 2, 2});
  CHECK(iet::brute_force_return_times(sym({1, 1, r(1, 3)})) == std::array<std::int64_t, 3>{2, 3, 2});
}

TEST_CASE("reverse-path instances satisfy the identity") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) {
    const auto sample = iet::random_reverse_path_instance(rng, 12);
    const auto z = iet::zstar(sample.lambda);
    CHECK(iet::check_return_identity(z));
    const auto brute = iet::brute_force_return_times(sample.lambda);
    for (int k = 0; k < 3; ++k) CHECK(z.sums[k] == brute[k]);
    // every return time also checked pointwise against the independent stepper
    const oracle::Exchange ex(sample.lambda);
    const Iet induced(z.alpha, Permutation{3, 2, 1});
    for (int k = 1; k <= 3; ++k) {
      CHECK(ex.return_time(induced.betas()[k - 1], induced.total()) == z.sums[k - 1].get_si());
    }
  }
}

TEST_CASE("uniform_below stays in range and is reproducible") {
  std::mt19937_64 a(1), b(1);
  for (int i = 0; i < 1000; ++i) {
    const auto x = iet::uniform_below(a, 7);
    CHECK(x < 7);
    CHECK(x == iet::uniform_below(b, 7));
  }
}
