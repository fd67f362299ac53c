#include "iet/iet.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "iet/error.hpp"

namespace iet {

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int m = size();
  if (m < 2) fail(ErrorCode::kInvalidArgument, "permutation needs m >= 2");
  inverse_.assign(images_.size(), 0);
  for (int i = 1; i <= m; ++i) {
    const int v = images_[static_cast<std::size_t>(i - 1)];
    if (v < 1 || v > m || inverse_[static_cast<std::size_t>(v - 1)] != 0) {
      fail(ErrorCode::kInvalidArgument, "not a permutation of 1.." + std::to_string(m));
    }
    inverse_[static_cast<std::size_t>(v - 1)] = i;
  }
}

bool Permutation::is_irreducible() const {
  int max_seen = 0;
  for (int k = 1; k < size(); ++k) {
    max_seen = std::max(max_seen, (*this)(k));
    if (max_seen == k) return false;
  }
  return true;
}

bool Permutation::is_starred() const {
  if (!is_irreducible()) return false;
  for (int j = 1; j < size(); ++j) {
    if ((*this)(j + 1) == (*this)(j) + 1) return false;
  }
  return true;
}

Permutation Permutation::symmetric(int m) {
  std::vector<int> images(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) images[static_cast<std::size_t>(j - 1)] = m - j + 1;
  return Permutation(std::move(images));
}

std::string to_string(const Permutation& p) {
  std::string out = "(";
  for (int i = 1; i <= p.size(); ++i) {
    if (i > 1) out += ",";
    out += std::to_string(p(i));
  }
  return out + ")";
}

// ------------------------------------------------------------------------ Iet

Iet::Iet(std::vector<Rational> lengths, Permutation perm)
    : lengths_(std::move(lengths)), perm_(std::move(perm)) {
  const int m = perm_.size();
  if (static_cast<int>(lengths_.size()) != m) {
    fail(ErrorCode::kInvalidArgument, "length vector has " + std::to_string(lengths_.size()) +
                                          " entries, permutation has " + std::to_string(m));
  }
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    lengths_[i].canonicalize();
    if (lengths_[i] <= 0) {
      fail(ErrorCode::kInvalidArgument,
           "length " + std::to_string(i + 1) + " is not positive: " + to_string(lengths_[i]));
    }
  }
  betas_.assign(static_cast<std::size_t>(m + 1), Rational(0));
  image_betas_.assign(static_cast<std::size_t>(m + 1), Rational(0));
  for (int i = 1; i <= m; ++i) {
    betas_[static_cast<std::size_t>(i)] = betas_[static_cast<std::size_t>(i - 1)] + length(i);
    image_betas_[static_cast<std::size_t>(i)] =
        image_betas_[static_cast<std::size_t>(i - 1)] + length(perm_.inverse(i));
  }
  offsets_.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    offsets_.push_back(image_betas_[static_cast<std::size_t>(perm_(i) - 1)] -
                       betas_[static_cast<std::size_t>(i - 1)]);
  }
}

int Iet::interval_of(const Rational& x) const {
  if (x < 0 || x >= total()) {
    fail(ErrorCode::kDomain, "point " + to_string(x) + " outside [0," + to_string(total()) + ")");
  }
  const auto it = std::upper_bound(betas_.begin(), betas_.end(), x);
  return static_cast<int>(it - betas_.begin());
}

HalfOpenInterval Iet::interval(int i) const {
  return HalfOpenInterval(betas_[static_cast<std::size_t>(i - 1)], betas_[static_cast<std::size_t>(i)]);
}

std::string to_string(const Iet& t) {
  std::string out = "((";
  for (std::size_t i = 0; i < t.lengths().size(); ++i) {
    if (i > 0) out += ",";
    out += to_string(t.lengths()[i]);
  }
  return out + ")," + to_string(t.perm()) + ")";
}

Rational apply(const Iet& t, const Rational& x, Direction direction) {
  if (direction == Direction::kForward) return x + t.offset(t.interval_of(x));
  if (x < 0 || x >= t.total()) {
    fail(ErrorCode::kDomain, "point " + to_string(x) + " outside [0," + to_string(t.total()) + ")");
  }
  const auto& ib = t.image_betas();
  const int position = static_cast<int>(std::upper_bound(ib.begin(), ib.end(), x) - ib.begin());
  return x - t.offset(t.perm().inverse(position));
}

Rational apply_power(const Iet& t, const Rational& x, std::int64_t n) {
  Rational y = x;
  const Direction d = n >= 0 ? Direction::kForward : Direction::kInverse;
  for (std::int64_t k = 0; k < std::llabs(n); ++k) y = apply(t, y, d);
  return y;
}

// ------------------------------------------------------------- TranslationMap

TranslationMap TranslationMap::identity(const Rational& total) {
  TranslationMap map;
  map.cuts_ = {Rational(0), total};
  map.shifts_ = {Rational(0)};
  return map;
}

TranslationMap TranslationMap::of(const Iet& t) {
  std::vector<std::pair<HalfOpenInterval, Rational>> pieces;
  for (int i = 1; i <= t.size(); ++i) pieces.emplace_back(t.interval(i), t.offset(i));
  return from_pieces(std::move(pieces));
}

TranslationMap TranslationMap::from_pieces(std::vector<std::pair<HalfOpenInterval, Rational>> pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& a, const auto& b) { return a.first.lo() < b.first.lo(); });
  TranslationMap map;
  for (auto& [dom, shift] : pieces) {
    if (map.cuts_.empty()) {
      map.cuts_.push_back(dom.lo());
    } else if (map.cuts_.back() != dom.lo()) {
      fail(ErrorCode::kInconsistent, "translation pieces do not tile the domain");
    }
    if (!map.shifts_.empty() && map.shifts_.back() == shift) {
      map.cuts_.back() = dom.hi();
    } else {
      map.shifts_.push_back(std::move(shift));
      map.cuts_.push_back(dom.hi());
    }
  }
  return map;
}

Rational TranslationMap::apply(const Rational& x) const {
  if (x < 0 || x >= total()) {
    fail(ErrorCode::kDomain, "point " + to_string(x) + " outside [0," + to_string(total()) + ")");
  }
  const auto k = static_cast<std::size_t>(std::upper_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin()) - 1;
  return x + shifts_[k];
}

IntervalSet TranslationMap::apply(const IntervalSet& s) const {
  std::vector<std::pair<Rational, Rational>> raw;
  for (const auto& part : s.parts()) {
    auto k = static_cast<std::size_t>(
                 std::upper_bound(cuts_.begin(), cuts_.end(), part.lo()) - cuts_.begin()) - 1;
    Rational lo = part.lo();
    while (lo < part.hi()) {
      const Rational hi = std::min(part.hi(), cuts_[k + 1]);
      raw.emplace_back(lo + shifts_[k], hi + shifts_[k]);
      lo = hi;
      ++k;
    }
  }
  return IntervalSet::normalize(std::move(raw));
}

TranslationMap TranslationMap::after(const TranslationMap& inner) const {
  if (inner.total() != total()) fail(ErrorCode::kPrecondition, "composing maps on different domains");
  std::vector<std::pair<HalfOpenInterval, Rational>> pieces;
  pieces.reserve(inner.pieces());
  for (std::size_t j = 0; j < inner.pieces(); ++j) {
    const Rational& s = inner.shifts_[j];
    Rational lo = inner.cuts_[j] + s;
    const Rational hi = inner.cuts_[j + 1] + s;
    auto k = static_cast<std::size_t>(std::upper_bound(cuts_.begin(), cuts_.end(), lo) - cuts_.begin()) - 1;
    while (lo < hi) {
      const Rational end = std::min(hi, cuts_[k + 1]);
      pieces.emplace_back(HalfOpenInterval(lo - s, end - s), s + shifts_[k]);
      lo = end;
      ++k;
    }
  }
  return from_pieces(std::move(pieces));
}

TranslationMap TranslationMap::inverse() const {
  std::vector<std::pair<HalfOpenInterval, Rational>> pieces;
  pieces.reserve(shifts_.size());
  for (std::size_t k = 0; k < shifts_.size(); ++k) {
    pieces.emplace_back(HalfOpenInterval(cuts_[k] + shifts_[k], cuts_[k + 1] + shifts_[k]), -shifts_[k]);
  }
  return from_pieces(std::move(pieces));
}

TranslationMap power_map(const Iet& t, std::int64_t power, std::int64_t cap) {
  if (power > cap || power < -cap) {
    fail(ErrorCode::kResource,
         "power " + std::to_string(power) + " exceeds cap " + std::to_string(cap));
  }
  TranslationMap result = TranslationMap::identity(t.total());
  TranslationMap base = power >= 0 ? TranslationMap::of(t) : TranslationMap::of(t).inverse();
  auto n = static_cast<std::uint64_t>(power >= 0 ? power : -power);
  while (n != 0) {
    if ((n & 1U) != 0) result = base.after(result);
    n >>= 1U;
    if (n != 0) base = base.after(base);
  }
  return result;
}

IntervalSet image_set(const Iet& t, const IntervalSet& s, std::int64_t power, std::int64_t cap) {
  if (!s.empty() && (s.inf() < 0 || s.sup() > t.total())) {
    fail(ErrorCode::kDomain, "set " + to_string(s) + " not inside [0," + to_string(t.total()) + ")");
  }
  if (power == 0 || s.empty()) return s;
  return power_map(t, power, cap).apply(s);
}

// ------------------------------------------------------------ induced maps

FirstReturn first_return(const Iet& t, const HalfOpenInterval& window, const Rational& x,
                         std::int64_t cap) {
  if (window.lo() != 0 || window.hi() > t.total()) {
    fail(ErrorCode::kPrecondition, "return window must be [0,L) with L <= |lambda|");
  }
  if (!window.contains(x)) {
    fail(ErrorCode::kDomain, "point " + to_string(x) + " outside window " + to_string(window));
  }
  Rational y = x;
  for (std::int64_t k = 1; k <= cap; ++k) {
    y = apply(t, y);
    if (window.contains(y)) return {k, y};
  }
  fail(ErrorCode::kResource, "no return of " + to_string(x) + " within " + std::to_string(cap) + " steps");
}

Iet induced_map(const Iet& t, const Rational& length, std::int64_t cap) {
  if (length <= 0 || length > t.total()) {
    fail(ErrorCode::kPrecondition, "induced window length must lie in (0,|lambda|]");
  }
  if (length == t.total()) return t;

  struct Piece {
    Rational lo;     // domain piece [lo, hi) inside [0,L)
    Rational hi;
    Rational shift;  // current image is [lo+shift, hi+shift)
    std::int64_t steps;
  };
  std::vector<Piece> pending{{0, length, 0, 0}};
  std::vector<std::pair<HalfOpenInterval, Rational>> done;
  const auto& betas = t.betas();
  while (!pending.empty()) {
    Piece p = std::move(pending.back());
    pending.pop_back();
    if (p.steps >= cap) {
      fail(ErrorCode::kResource, "induced map: a piece did not return within " + std::to_string(cap) + " steps");
    }
    Rational u = p.lo + p.shift;
    const Rational end = p.hi + p.shift;
    int i = t.interval_of(u);
    while (u < end) {
      const Rational v = std::min(end, betas[static_cast<std::size_t>(i)]);
      const Rational shift = p.shift + t.offset(i);
      // Image of [u,v) under one more step is [u+off, v+off); split at L.
      const Rational img_lo = u + t.offset(i);
      const Rational img_hi = v + t.offset(i);
      if (img_lo < length) {
        const Rational cut = std::min(img_hi, length);
        done.emplace_back(HalfOpenInterval(img_lo - shift, cut - shift), shift);
      }
      if (img_hi > length) {
        const Rational cut = std::max(img_lo, length);
        pending.push_back({cut - shift, img_hi - shift, shift, p.steps + 1});
      }
      u = v;
      ++i;
    }
  }

  std::sort(done.begin(), done.end(), [](const auto& a, const auto& b) { return a.first.lo() < b.first.lo(); });
  std::vector<std::pair<HalfOpenInterval, Rational>> merged;
  for (auto& piece : done) {
    if (!merged.empty() && merged.back().second == piece.second && merged.back().first.hi() == piece.first.lo()) {
      merged.back().first = HalfOpenInterval(merged.back().first.lo(), piece.first.hi());
    } else {
      merged.push_back(std::move(piece));
    }
  }

  std::vector<Rational> lengths;
  std::vector<std::size_t> by_image(merged.size());
  for (std::size_t k = 0; k < merged.size(); ++k) {
    lengths.push_back(merged[k].first.length());
    by_image[k] = k;
  }
  std::sort(by_image.begin(), by_image.end(), [&](std::size_t a, std::size_t b) {
    return merged[a].first.lo() + merged[a].second < merged[b].first.lo() + merged[b].second;
  });
  std::vector<int> images(merged.size());
  for (std::size_t rank = 0; rank < by_image.size(); ++rank) images[by_image[rank]] = static_cast<int>(rank + 1);
  if (merged.size() == 1) {
    fail(ErrorCode::kInconsistent, "induced map is a single translation; not representable as an IET");
  }
  Iet induced(std::move(lengths), Permutation(std::move(images)));
  for (std::size_t k = 0; k < merged.size(); ++k) {
    if (induced.offsets()[k] != merged[k].second) {
      fail(ErrorCode::kInconsistent, "induced pieces do not tile the window");
    }
  }
  return induced;
}

// ------------------------------------------------------------- admissibility

const char* to_string(Admissibility verdict) {
  switch (verdict) {
    case Admissibility::kVerified: return "verified";
    case Admissibility::kRefuted: return "refuted";
    case Admissibility::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace {

// orbit[s-1][k + bound] == T^k(beta_s), k in [-bound, bound].
using BetaOrbits = std::vector<std::vector<Rational>>;

BetaOrbits beta_orbits(const Iet& t, std::int64_t bound) {
  BetaOrbits orbits;
  const auto width = static_cast<std::size_t>(2 * bound + 1);
  for (int s = 1; s < t.size(); ++s) {
    std::vector<Rational> orbit(width);
    const auto mid = static_cast<std::size_t>(bound);
    orbit[mid] = t.betas()[static_cast<std::size_t>(s)];
    for (std::size_t k = 1; k <= mid; ++k) {
      orbit[mid + k] = apply(t, orbit[mid + k - 1], Direction::kForward);
      orbit[mid - k] = apply(t, orbit[mid - k + 1], Direction::kInverse);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// Verdict for one endpoint: verified if some representation T^k(beta_s) has
// no forbidden intermediate visit, refuted if every representation found has
// one, unknown if none is found.
Admissibility endpoint_verdict(const BetaOrbits& orbits, std::int64_t bound, const Rational& endpoint,
                               const HalfOpenInterval& window) {
  bool found = false;
  for (const auto& orbit : orbits) {
    for (std::int64_t k = -bound; k <= bound; ++k) {
      if (orbit[static_cast<std::size_t>(k + bound)] != endpoint) continue;
      found = true;
      bool forbidden = false;
      if (k >= 0) {
        for (std::int64_t j = 1; j < k && !forbidden; ++j) {
          forbidden = window.contains(orbit[static_cast<std::size_t>(j + bound)]);
        }
      } else {
        for (std::int64_t j = 0; j > k && !forbidden; --j) {
          forbidden = window.contains(orbit[static_cast<std::size_t>(j + bound)]);
        }
      }
      if (!forbidden) return Admissibility::kVerified;
    }
  }
  return found ? Admissibility::kRefuted : Admissibility::kUnknown;
}

}  // namespace

Admissibility is_admissible(const Iet& t, const Rational& xi, const Rational& eta, std::int64_t bound) {
  if (!(0 <= xi && xi < eta && eta <= t.total())) {
    fail(ErrorCode::kPrecondition, "admissibility needs 0 <= xi < eta <= |lambda|");
  }
  const HalfOpenInterval window(xi, eta);
  const BetaOrbits orbits = beta_orbits(t, bound);
  const Admissibility left =
      xi == 0 ? Admissibility::kVerified : endpoint_verdict(orbits, bound, xi, window);
  const Admissibility right =
      eta == t.total() ? Admissibility::kVerified : endpoint_verdict(orbits, bound, eta, window);
  if (left == Admissibility::kRefuted || right == Admissibility::kRefuted) return Admissibility::kRefuted;
  if (left == Admissibility::kVerified && right == Admissibility::kVerified) return Admissibility::kVerified;
  return Admissibility::kUnknown;
}

}  // namespace iet
