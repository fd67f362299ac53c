#include "iet/numeric.hpp"

#include <algorithm>
#include <cctype>

#include "iet/error.hpp"

namespace iet {

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view body = trim(text);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' ||
      den.front() == '+') {
    fail(ErrorCode::kInvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) {
    fail(ErrorCode::kInvalidArgument, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

HalfOpenInterval::HalfOpenInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  lo_.canonicalize();
  hi_.canonicalize();
  if (!(lo_ < hi_)) {
    fail(ErrorCode::kInvalidArgument,
         "interval needs lo < hi, got [" + to_string(lo_) + "," + to_string(hi_) + ")");
  }
}

IntervalSet IntervalSet::normalize(std::vector<std::pair<Rational, Rational>> raw) {
  for (const auto& [lo, hi] : raw) {
    if (lo > hi) {
      fail(ErrorCode::kInvalidArgument,
           "malformed interval [" + to_string(lo) + "," + to_string(hi) + ")");
    }
  }
  std::erase_if(raw, [](const auto& p) { return p.first == p.second; });
  std::sort(raw.begin(), raw.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  IntervalSet out;
  for (auto& [lo, hi] : raw) {
    if (!out.parts_.empty() && lo <= out.parts_.back().hi()) {
      if (hi > out.parts_.back().hi()) {
        out.parts_.back() = HalfOpenInterval(out.parts_.back().lo(), hi);
      }
    } else {
      out.parts_.emplace_back(std::move(lo), std::move(hi));
    }
  }
  return out;
}

IntervalSet IntervalSet::normalize(const std::vector<HalfOpenInterval>& parts) {
  std::vector<std::pair<Rational, Rational>> raw;
  raw.reserve(parts.size());
  for (const auto& p : parts) raw.emplace_back(p.lo(), p.hi());
  return normalize(std::move(raw));
}

Rational IntervalSet::measure() const {
  Rational total = 0;
  for (const auto& p : parts_) total += p.hi() - p.lo();
  return total;
}

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const HalfOpenInterval& p) { return v < p.lo(); });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

IntervalSet set_algebra(SetOp op, const IntervalSet& a, const IntervalSet& b) {
  // Sweep the merged list of boundaries; membership in a and b is constant on
  // each elementary segment between consecutive boundaries.
  std::vector<Rational> cuts;
  cuts.reserve(2 * (a.size() + b.size()));
  for (const auto* s : {&a, &b}) {
    for (const auto& p : s->parts()) {
      cuts.push_back(p.lo());
      cuts.push_back(p.hi());
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<Rational, Rational>> raw;
  std::size_t ia = 0;
  std::size_t ib = 0;
  const auto& pa = a.parts();
  const auto& pb = b.parts();
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational& lo = cuts[k];
    while (ia < pa.size() && pa[ia].hi() <= lo) ++ia;
    while (ib < pb.size() && pb[ib].hi() <= lo) ++ib;
    const bool in_a = ia < pa.size() && pa[ia].lo() <= lo;
    const bool in_b = ib < pb.size() && pb[ib].lo() <= lo;
    bool keep = false;
    switch (op) {
      case SetOp::kUnion: keep = in_a || in_b; break;
      case SetOp::kIntersect: keep = in_a && in_b; break;
      case SetOp::kSymDiff: keep = in_a != in_b; break;
    }
    if (keep) raw.emplace_back(lo, cuts[k + 1]);
  }
  return IntervalSet::normalize(std::move(raw));
}

IntervalSet set_minus(const IntervalSet& a, const IntervalSet& b) {
  return set_intersect(a, set_symdiff(a, b));
}

IntervalSet translate(const IntervalSet& s, const Rational& offset) {
  std::vector<std::pair<Rational, Rational>> raw;
  raw.reserve(s.size());
  for (const auto& p : s.parts()) raw.emplace_back(p.lo() + offset, p.hi() + offset);
  return IntervalSet::normalize(std::move(raw));
}

std::string to_string(const HalfOpenInterval& interval) {
  return "[" + to_string(interval.lo()) + "," + to_string(interval.hi()) + ")";
}

std::string to_string(const IntervalSet& s) {
  if (s.empty()) return "{}";
  std::string out;
  for (const auto& p : s.parts()) {
    if (!out.empty()) out += " u ";
    out += to_string(p);
  }
  return out;
}

}  // namespace iet
