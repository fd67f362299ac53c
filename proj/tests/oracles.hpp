// Reference computations used by the tests. Nothing here goes through
// TranslationMap, set_algebra or the Rauzy matrices; points and pieces are
// pushed around one interval at a time.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "iet/iet.hpp"

namespace oracle {

using iet::Rational;
using Piece = std::pair<Rational, Rational>;

inline std::vector<Rational> partial_sums(const std::vector<Rational>& v) {
  std::vector<Rational> out{Rational(0)};
  for (const auto& x : v) out.push_back(out.back() + x);
  return out;
}

// Where interval i (1-based) starts after the exchange.
inline Rational image_start(const std::vector<Rational>& lam, const std::vector<int>& pi, int i) {
  Rational s = 0;
  for (std::size_t k = 0; k < lam.size(); ++k) {
    if (pi[k] < pi[static_cast<std::size_t>(i - 1)]) s += lam[k];
  }
  return s;
}

struct Exchange {
  std::vector<Rational> lam;
  std::vector<int> pi;

  explicit Exchange(const iet::Iet& t) : lam(t.lengths()), pi(t.perm().images()) {}
  Exchange(std::vector<Rational> l, std::vector<int> p) : lam(std::move(l)), pi(std::move(p)) {}

  Rational total() const { return partial_sums(lam).back(); }

  Rational forward(const Rational& x) const {
    const auto b = partial_sums(lam);
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (x < b[i]) return x - b[i - 1] + image_start(lam, pi, static_cast<int>(i));
    }
    throw std::out_of_range("point outside domain");
  }

  Rational backward(const Rational& y) const {
    for (std::size_t i = 1; i <= lam.size(); ++i) {
      const Rational lo = image_start(lam, pi, static_cast<int>(i));
      if (lo <= y && y < lo + lam[i - 1]) return y - lo + partial_sums(lam)[i - 1];
    }
    throw std::out_of_range("point outside domain");
  }

  Rational power(Rational x, std::int64_t n) const {
    for (; n > 0; --n) x = forward(x);
    for (; n < 0; ++n) x = backward(x);
    return x;
  }

  // Pieces of T(s): split every piece at the interval boundaries, translate.
  std::vector<Piece> step(const std::vector<Piece>& s, bool inverse = false) const {
    std::vector<Rational> starts, shifts;
    const auto b = partial_sums(lam);
    std::vector<Piece> src;
    for (std::size_t i = 1; i <= lam.size(); ++i) {
      const Rational img = image_start(lam, pi, static_cast<int>(i));
      if (!inverse) src.emplace_back(b[i - 1], b[i]), shifts.push_back(img - b[i - 1]);
      else src.emplace_back(img, img + lam[i - 1]), shifts.push_back(b[i - 1] - img);
    }
    std::vector<Piece> out;
    for (const auto& [lo, hi] : s) {
      for (std::size_t k = 0; k < src.size(); ++k) {
        const Rational a = std::max(lo, src[k].first), z = std::min(hi, src[k].second);
        if (a < z) out.emplace_back(a + shifts[k], z + shifts[k]);
      }
    }
    return merge(out);
  }

  std::vector<Piece> image(std::vector<Piece> s, std::int64_t n) const {
    for (; n > 0; --n) s = step(s);
    for (; n < 0; ++n) s = step(s, true);
    return s;
  }

  static std::vector<Piece> merge(std::vector<Piece> s) {
    std::sort(s.begin(), s.end());
    std::vector<Piece> out;
    for (auto& p : s) {
      if (!(p.first < p.second)) continue;
      if (!out.empty() && p.first <= out.back().second) {
        out.back().second = std::max(out.back().second, p.second);
      } else {
        out.push_back(p);
      }
    }
    return out;
  }

  // Smallest k >= 1 with T^k(x) < L.
  std::int64_t return_time(const Rational& x, const Rational& L, std::int64_t cap = 1000000) const {
    Rational y = x;
    for (std::int64_t k = 1; k <= cap; ++k) {
      y = forward(y);
      if (y < L) return k;
    }
    throw std::runtime_error("return time cap");
  }
};

inline Rational measure(const std::vector<Piece>& s) {
  Rational m = 0;
  for (const auto& [lo, hi] : s) m += hi - lo;
  return m;
}

inline bool member(const std::vector<Piece>& s, const Rational& x) {
  return std::any_of(s.begin(), s.end(), [&](const Piece& p) { return p.first <= x && x < p.second; });
}

inline std::vector<Piece> pieces(const iet::IntervalSet& s) {
  std::vector<Piece> out;
  for (const auto& p : s.parts()) out.emplace_back(p.lo(), p.hi());
  return out;
}

// ---------------------------------------------------------------- generators

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

inline Rational grid_value(std::mt19937_64& rng, long den, long lo_num, long hi_num) {
  Rational r(lo_num + static_cast<long>(below(rng, static_cast<std::uint64_t>(hi_num - lo_num + 1))), den);
  r.canonicalize();
  return r;
}

inline std::vector<int> irreducible_perm(std::mt19937_64& rng, int m) {
  for (;;) {
    std::vector<int> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(p.begin(), p.end(), rng);
    if (iet::Permutation(p).is_irreducible()) return p;
  }
}

inline iet::Iet random_iet(std::mt19937_64& rng, int m, long den = 97) {
  std::vector<Rational> lam;
  for (int i = 0; i < m; ++i) lam.push_back(grid_value(rng, den, 1, 3 * den));
  return iet::Iet(lam, iet::Permutation(irreducible_perm(rng, m)));
}

// Up to `parts` random intervals inside [0,total); may be empty.
inline iet::IntervalSet random_set(std::mt19937_64& rng, const Rational& total, int parts, long den = 64) {
  std::vector<std::pair<Rational, Rational>> raw;
  const int k = static_cast<int>(below(rng, static_cast<std::uint64_t>(parts + 1)));
  for (int i = 0; i < k; ++i) {
    Rational a = grid_value(rng, den, 0, den) * total, b = grid_value(rng, den, 0, den) * total;
    if (b < a) std::swap(a, b);
    raw.emplace_back(a, b);
  }
  return iet::IntervalSet::normalize(raw);
}

}  // namespace oracle
