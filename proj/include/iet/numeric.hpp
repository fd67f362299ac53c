#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace iet {

// Exact scalar used for every length and measure. mpq_class keeps results of
// arithmetic in lowest terms; values built from text go through
// parse_rational, which canonicalizes.
using Rational = mpq_class;

// Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
// Throws Error(kInvalidArgument) on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& value);

// Half-open interval [lo, hi) with lo < hi.
class HalfOpenInterval {
 public:
  HalfOpenInterval(Rational lo, Rational hi);

  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  Rational length() const { return hi_ - lo_; }
  bool contains(const Rational& x) const { return lo_ <= x && x < hi_; }

  friend bool operator==(const HalfOpenInterval&, const HalfOpenInterval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

// Finite union of half-open intervals in canonical form: sorted, pairwise
// disjoint, and no two parts touching (parts[i].hi < parts[i+1].lo).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(const HalfOpenInterval& single) : parts_{single} {}

  // Canonicalizes arbitrary (lo, hi) pairs. Pairs with lo == hi are dropped;
  // lo > hi throws Error(kInvalidArgument).
  static IntervalSet normalize(std::vector<std::pair<Rational, Rational>> raw);
  static IntervalSet normalize(const std::vector<HalfOpenInterval>& parts);

  const std::vector<HalfOpenInterval>& parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }

  Rational measure() const;
  bool contains(const Rational& x) const;
  // Smallest lo / largest hi; precondition: non-empty.
  const Rational& inf() const { return parts_.front().lo(); }
  const Rational& sup() const { return parts_.back().hi(); }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<HalfOpenInterval> parts_;
};

enum class SetOp { kUnion, kIntersect, kSymDiff };

IntervalSet set_algebra(SetOp op, const IntervalSet& a, const IntervalSet& b);

inline IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  return set_algebra(SetOp::kUnion, a, b);
}
inline IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  return set_algebra(SetOp::kIntersect, a, b);
}
inline IntervalSet set_symdiff(const IntervalSet& a, const IntervalSet& b) {
  return set_algebra(SetOp::kSymDiff, a, b);
}
// a \ b
IntervalSet set_minus(const IntervalSet& a, const IntervalSet& b);

inline Rational measure(const IntervalSet& s) { return s.measure(); }

IntervalSet translate(const IntervalSet& s, const Rational& offset);

std::string to_string(const HalfOpenInterval& interval);
std::string to_string(const IntervalSet& s);

}  // namespace iet
