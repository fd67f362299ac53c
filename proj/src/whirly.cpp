#include "iet/whirly.hpp"

#include <algorithm>
#include <unordered_set>

namespace iet {

namespace {

std::int64_t to_int64(const mpz_class& v, const char* what) {
  if (!v.fits_slong_p()) fail(ErrorCode::kResource, std::string(what) + " exceeds machine integer range");
  return v.get_si();
}

Rational sum(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

IntervalSet interval_set(const Rational& lo, const Rational& hi) {
  if (lo >= hi) return {};
  return IntervalSet(HalfOpenInterval(lo, hi));
}

}  // namespace

// ------------------------------------------------------------- weak metric

std::vector<IntervalSet> dyadic_family(const Rational& total, int count) {
  if (count < 1) fail(ErrorCode::kInvalidArgument, "metric truncation must be >= 1");
  std::vector<IntervalSet> family;
  family.reserve(static_cast<std::size_t>(count));
  for (int level = 1; static_cast<int>(family.size()) < count; ++level) {
    const mpz_class cells = mpz_class(1) << level;
    for (mpz_class j = 0; j < cells && static_cast<int>(family.size()) < count; ++j) {
      family.emplace_back(HalfOpenInterval(total * Rational(j, cells), total * Rational(j + 1, cells)));
    }
  }
  return family;
}

WeakDistance weak_distance(const TranslationMap& s, const TranslationMap& t, const WeakMetricConfig& cfg) {
  if (s.total() != t.total()) fail(ErrorCode::kPrecondition, "weak distance of maps on different domains");
  const auto family = dyadic_family(s.total(), cfg.truncation);
  Rational value = 0;
  Rational weight(1, 2);
  for (const auto& e : family) {
    value += weight * set_symdiff(s.apply(e), t.apply(e)).measure();
    weight /= 2;
  }
  value /= s.total();
  Rational tail(mpz_class(1), mpz_class(1) << cfg.truncation);
  return {value, tail};
}

WeakDistance weak_distance(std::int64_t s_power, std::int64_t t_power, const Iet& t,
                           const WeakMetricConfig& cfg, std::int64_t cap) {
  return weak_distance(power_map(t, s_power, cap), power_map(t, t_power, cap), cfg);
}

// ---------------------------------------------------------- window and B

std::vector<RauzyMove> WhirlyWindow::double_loop() const {
  std::vector<RauzyMove> moves = loop;
  moves.insert(moves.end(), loop.begin(), loop.end());
  return moves;
}

WhirlyWindow make_B(const Permutation& p, int max_len) {
  if (!p.is_irreducible()) fail(ErrorCode::kPrecondition, "make_B needs an irreducible permutation");
  for (int len = 1; len <= max_len; ++len) {
    // Move i is bit (len-1-i) of the counter, 0 = a, so counting upward
    // enumerates strings in lexicographic order.
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
      std::vector<RauzyMove> moves;
      for (int i = len - 1; i >= 0; --i) moves.push_back(((code >> i) & 1U) != 0 ? RauzyMove::kB : RauzyMove::kA);
      const RauzyPath path = RauzyPath::follow(p, moves);
      if (path.end() != p) continue;
      IntMatrix b = path_matrix(path).entries();
      if (!b.is_positive()) continue;
      WhirlyWindow w;
      w.base = p;
      w.loop = std::move(moves);
      w.r = nu(b);
      w.r_prime = nu(b.transpose());
      w.b_max = 0;
      for (int j = 0; j < b.dim(); ++j) {
        if (Rational(b(0, j)) > w.b_max) w.b_max = b(0, j);
      }
      w.b = std::move(b);
      return w;
    }
  }
  fail(ErrorCode::kResource, "no positive closed loop of length <= " + std::to_string(max_len) + " at " + to_string(p));
}

WhirlyWindow make_window(const Rational& eps1, const Rational& eps2) {
  if (eps1 <= 0 || eps2 <= 0 || eps1 >= 1) fail(ErrorCode::kInvalidArgument, "window needs 0 < eps1 < 1 and eps2 > 0");
  static const WhirlyWindow base = make_B(Permutation::symmetric(3));
  WhirlyWindow w = base;
  w.eps1 = eps1;
  w.eps2 = eps2;
  return w;
}

bool in_Ystar(const std::vector<Rational>& alpha, const Rational& eps1, const Rational& eps2) {
  if (alpha.size() != 3) fail(ErrorCode::kInvalidArgument, "Y* is a subset of the 3-dimensional cone");
  for (const auto& v : alpha) {
    if (v <= 0) fail(ErrorCode::kInvalidArgument, "alpha must be positive");
  }
  const Rational total = sum(alpha);
  return (1 - eps1 / 2) * total > alpha[1] && alpha[1] > (1 - eps1) * total &&
         (1 + eps2) * alpha[2] > alpha[0] && alpha[0] > alpha[2];
}

namespace {

// Integers strictly between lo and hi.
std::optional<std::pair<mpz_class, mpz_class>> open_integer_range(const Rational& lo, const Rational& hi) {
  mpz_class first, last;
  mpz_fdiv_q(first.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  first += 1;
  mpz_cdiv_q(last.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  last -= 1;
  if (first > last) return std::nullopt;
  return std::make_pair(first, last);
}

std::int64_t pick(std::mt19937_64& rng, const std::pair<mpz_class, mpz_class>& range) {
  const mpz_class span = range.second - range.first + 1;
  return range.first.get_si() + static_cast<std::int64_t>(uniform_below(rng, span.get_ui()));
}

}  // namespace

std::vector<Rational> random_ystar_alpha(std::mt19937_64& rng, const Rational& eps1, const Rational& eps2) {
  constexpr long kDen = 10000000;
  if (eps1 <= 0 || eps1 >= 1 || eps2 <= 0) fail(ErrorCode::kInvalidArgument, "Y* needs 0 < eps1 < 1, eps2 > 0");
  const auto k2_range = open_integer_range((1 - eps1) * kDen, (1 - eps1 / 2) * kDen);
  if (!k2_range) fail(ErrorCode::kDomain, "Y* window too narrow for the sampling grid");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::int64_t k2 = pick(rng, *k2_range);
    const Rational rest(kDen - k2);
    // alpha_3 < alpha_1 = rest - alpha_3 < (1 + eps2) alpha_3
    const auto k3_range = open_integer_range(rest / (2 + eps2), rest / 2);
    if (!k3_range) continue;
    const std::int64_t k3 = pick(rng, *k3_range);
    std::vector<Rational> alpha{Rational(kDen - k2 - k3, kDen), Rational(k2, kDen), Rational(k3, kDen)};
    for (auto& v : alpha) v.canonicalize();
    if (in_Ystar(alpha, eps1, eps2)) return alpha;
  }
  fail(ErrorCode::kDomain, "no grid point found in Y*");
}

Iet construct_W_point(const std::vector<Rational>& alpha, const WhirlyWindow& w) {
  if (!in_Ystar(alpha, w.eps1, w.eps2)) {
    fail(ErrorCode::kPrecondition, "alpha is not in Y*(" + to_string(w.eps1) + "," + to_string(w.eps2) + ")");
  }
  return reverse_path(alpha, RauzyPath::follow(w.base, w.double_loop()));
}

// ------------------------------------------------------------------ towers

Tower build_tower(const Iet& t, const HalfOpenInterval& base, std::int64_t height) {
  if (height < 1) fail(ErrorCode::kInvalidArgument, "tower height must be >= 1");
  if (base.lo() < 0 || base.hi() > t.total()) fail(ErrorCode::kDomain, "tower base outside the domain");
  const TranslationMap step = TranslationMap::of(t);
  Tower tower{base, height, {}, {}, 0};
  tower.floors.reserve(static_cast<std::size_t>(height));
  tower.floors.emplace_back(base);
  IntervalSet covered = tower.floors.back();
  for (std::int64_t i = 1; i < height; ++i) {
    IntervalSet next = step.apply(tower.floors.back());
    if (!set_intersect(covered, next).empty()) {
      fail(ErrorCode::kNotATower, "floor " + std::to_string(i) + " meets an earlier floor");
    }
    covered = set_union(covered, next);
    tower.floors.push_back(std::move(next));
  }
  tower.remainder = set_minus(IntervalSet(t.domain()), covered);
  tower.remainder_measure = tower.remainder.measure();
  return tower;
}

ColumnDecomposition return_time_towers(const Iet& t, std::int64_t cap) {
  ColumnDecomposition out{zstar(t, cap), {}, {}, 0};
  const Iet base(out.zstar.alpha, t.perm());
  IntervalSet covered;
  for (int i = 1; i <= 3; ++i) {
    Tower column = build_tower(t, base.interval(i), to_int64(out.zstar.sums[static_cast<std::size_t>(i - 1)], "return time"));
    for (std::size_t f = 0; f < column.floors.size(); ++f) {
      if (!set_intersect(covered, column.floors[f]).empty()) {
        fail(ErrorCode::kNotATower, "column " + std::to_string(i) + " floor " + std::to_string(f) +
                                        " meets an earlier column");
      }
      covered = set_union(covered, column.floors[f]);
    }
    out.columns.push_back(std::move(column));
  }
  out.remainder = set_minus(IntervalSet(t.domain()), covered);
  out.remainder_measure = out.remainder.measure();
  return out;
}

// ------------------------------------------------------------------ checks

CheckRow make_check(std::string quantity, Rational computed, std::string relation, Rational bound) {
  bool holds = false;
  if (relation == "==") {
    holds = computed == bound;
  } else if (relation == "<") {
    holds = computed < bound;
  } else if (relation == ">") {
    holds = computed > bound;
  } else if (relation == ">=") {
    holds = computed >= bound;
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown relation " + relation);
  }
  return CheckRow{std::move(quantity), std::move(computed), std::move(relation), std::move(bound), holds};
}

bool ClaimsReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.holds; });
}

namespace {

struct InductionLog {
  std::vector<std::vector<Rational>> lengths;  // per stage 0..steps
  std::vector<Permutation> perms;
  std::vector<RauzyMove> moves;
  std::vector<std::vector<mpz_class>> column_sums;
};

InductionLog log_induction(const Iet& t, std::int64_t steps) {
  InductionLog log;
  Iet current = t;
  VisitationMatrix a = VisitationMatrix::identity(t.size());
  log.lengths.push_back(current.lengths());
  log.perms.push_back(current.perm());
  log.column_sums.push_back(a.column_sums());
  for (std::int64_t k = 1; k <= steps; ++k) {
    std::optional<RvStep> step;
    try {
      step.emplace(rv_step(current));
    } catch (const ConnectionError&) {
      break;
    }
    a = a * step->matrix;
    log.moves.push_back(step->move);
    current = std::move(step->next);
    log.lengths.push_back(current.lengths());
    log.perms.push_back(current.perm());
    log.column_sums.push_back(a.column_sums());
  }
  return log;
}

std::array<mpz_class, 3> sums3(const std::vector<mpz_class>& s) { return {s[0], s[1], s[2]}; }

// Quantities shared by the claims and Lemma "Major" evaluations.
struct TowerQuantities {
  Rational cap_overlap;      // mu(I^a cap T^{l a2} I^a)
  Rational second_overlap;   // mu(I^a_2 cap T^{l a2} I^a_2)
  Rational remainder;        // |lambda| - mu(column over I^a_2 of height a2)
  Rational whirly_overlap;   // mu(T^{l a2} I^a cap T^-l I^a)
  IntervalSet whirly_set;    // T^{l a2} I^a cap T^-l I^a
  TranslationMap forward;    // T^{l a2}
};

TowerQuantities tower_quantities(const Iet& t, const std::vector<Rational>& alpha, std::int64_t a2,
                                 std::int64_t l) {
  const Rational total_alpha = sum(alpha);
  const IntervalSet whole(HalfOpenInterval(0, total_alpha));
  const IntervalSet second(HalfOpenInterval(alpha[0], alpha[0] + alpha[1]));
  TranslationMap forward = power_map(t, l * a2);
  const IntervalSet moved_whole = forward.apply(whole);
  const Tower column = build_tower(t, HalfOpenInterval(alpha[0], alpha[0] + alpha[1]), a2);
  IntervalSet whirly = set_intersect(moved_whole, image_set(t, whole, -l));
  return TowerQuantities{
      set_intersect(whole, moved_whole).measure(),
      set_intersect(second, forward.apply(second)).measure(),
      column.remainder_measure,
      whirly.measure(),
      std::move(whirly),
      std::move(forward),
  };
}

}  // namespace

ClaimsReport verify_claims(const Iet& t, const WhirlyWindow& w, std::int64_t l) {
  if (l < 1) fail(ErrorCode::kInvalidArgument, "l must be >= 1");
  const auto loop2 = w.double_loop();
  const RvIteration run = rv_iterate(t, static_cast<std::int64_t>(loop2.size()));
  if (run.path.moves != loop2 || run.result.perm() != w.base) {
    fail(ErrorCode::kPrecondition, "instance does not induce along the window loop twice");
  }
  ClaimsReport report;
  report.alpha = run.result.lengths();
  const auto& s = run.matrix.column_sums();
  report.sums = sums3(s);
  report.l = l;
  report.eps1 = w.eps1;
  report.eps2 = w.eps2;

  const auto& alpha = report.alpha;
  const Rational total_alpha = sum(alpha);
  const Rational a1(s[0]), a3(s[2]);
  const std::int64_t a2 = to_int64(s[1], "return time");
  const Rational shift = alpha[0] - alpha[2];
  const Rational lr(l);

  const TowerQuantities q = tower_quantities(t, alpha, a2, l);
  auto& rows = report.rows;

  // Claim 1: T^{a2} shifts I^a_2 left by alpha_1 - alpha_3.
  Rational expected_overlap = alpha[1] - lr * shift;
  if (expected_overlap < 0) expected_overlap = 0;
  CheckRow c1 = make_check("C1_overlap", q.second_overlap, "==", expected_overlap);
  c1.holds = c1.holds && expected_overlap > 0;
  rows.push_back(std::move(c1));
  rows.push_back(make_check("C1_lower", q.second_overlap, ">",
                            (1 - lr * w.eps1 * w.eps2 / (1 - w.eps1)) * alpha[1]));

  // Claim 2: the column over I^a_2 misses exactly a1 alpha_1 + a3 alpha_3.
  rows.push_back(make_check("C2_remainder", q.remainder, "==", a1 * alpha[0] + a3 * alpha[2]));
  rows.push_back(make_check("C2_upper", q.remainder, "<", w.eps1 / (1 - w.eps1) * t.total()));

  // Claim 3: T^{a3} carries [a1+a2+(a1-a3), |a|) onto [a1-a3, a3), and the
  // whirly part I_omega lands inside T^{l a2} I^a cap T^-l I^a.
  if (shift < alpha[2]) {
    const IntervalSet top = interval_set(alpha[0] + alpha[1] + shift, total_alpha);
    const IntervalSet moved = image_set(t, top, to_int64(s[2], "return time"));
    rows.push_back(make_check("C3_shift_mismatch", set_symdiff(moved, interval_set(shift, alpha[2])).measure(),
                              "==", Rational(0)));
  }
  const IntervalSet omega = interval_set(alpha[0] + alpha[1] + lr * shift, total_alpha);
  const IntervalSet omega_image = q.forward.apply(omega);
  Rational omega_expected = alpha[2] - lr * shift;
  if (omega_expected < 0) omega_expected = 0;
  rows.push_back(make_check("C3_omega_measure", omega_image.measure(), "==", omega_expected));
  rows.push_back(make_check("C3_containment_gap", set_minus(omega_image, q.whirly_set).measure(), "==",
                            Rational(0)));
  rows.push_back(make_check("C3_lower", q.whirly_overlap, ">=", (1 - lr * w.eps2) * alpha[2]));
  return report;
}

std::vector<WindowHit> find_window_hits(const Iet& t, const WhirlyWindow& w, std::int64_t depth,
                                        bool require_ystar, std::size_t max_hits) {
  if (t.perm() != w.base) return {};
  const auto loop2 = w.double_loop();
  const auto n = static_cast<std::int64_t>(w.loop.size());
  const InductionLog log = log_induction(t, depth + 2 * n);
  std::vector<WindowHit> hits;
  const auto stages = static_cast<std::int64_t>(log.lengths.size());
  for (std::int64_t k = 0; k <= depth && k + 2 * n < stages && hits.size() < max_hits; ++k) {
    if (log.perms[static_cast<std::size_t>(k)] != w.base) continue;
    if (!std::equal(loop2.begin(), loop2.end(), log.moves.begin() + k)) continue;
    const auto stage = static_cast<std::size_t>(k + 2 * n);
    const auto& alpha = log.lengths[stage];
    if (require_ystar && !in_Ystar(alpha, w.eps1, w.eps2)) continue;
    hits.push_back(WindowHit{k, k + 2 * n, alpha, log.lengths[static_cast<std::size_t>(k + n)],
                             sums3(log.column_sums[stage]),
                             sums3(log.column_sums[static_cast<std::size_t>(k + n)])});
  }
  return hits;
}

Rational whirly_constant(const Rational& eps, std::int64_t l) {
  if (eps <= 0) fail(ErrorCode::kInvalidArgument, "eps must be positive");
  if (l < 1) fail(ErrorCode::kInvalidArgument, "l must be >= 1");
  Rational c(1, 2);
  const Rational lr(l);
  while (!(lr * c * c / (1 - c) < eps / 10 && c / (1 - c) < eps / 2)) c /= 2;
  return c;
}

bool MajorReport::proven_checks_hold() const {
  return std::all_of(hits.begin(), hits.end(),
                     [](const MajorHit& h) { return h.p1.holds && h.p2.holds && h.overlap.holds; });
}

MajorReport lemma_major_check(const Iet& t, const Rational& eps, std::int64_t l, std::int64_t depth,
                              std::size_t max_hits) {
  MajorReport report;
  report.eps = eps;
  report.l = l;
  report.c = whirly_constant(eps, l);
  report.depth = depth;
  const WhirlyWindow w = make_window(report.c, report.c);
  for (auto& hit : find_window_hits(t, w, depth, true, max_hits)) {
    const auto& alpha = hit.alpha;
    const Rational total_alpha = sum(alpha);
    const TowerQuantities q = tower_quantities(t, alpha, to_int64(hit.sums[1], "return time"), l);
    MajorHit h;
    h.p1 = make_check("P1", q.cap_overlap, ">", (1 - eps) * total_alpha);
    h.p2 = make_check("P2", q.remainder, "<", eps * t.total());
    h.overlap = make_check("overlap_lower", q.whirly_overlap, ">=", (1 - Rational(l) * report.c) * alpha[2]);
    h.p3_literal = make_check("P3_literal", q.whirly_overlap, ">", eps / 3 * total_alpha);
    h.hit = std::move(hit);  // alpha refers into hit; move last
    report.hits.push_back(std::move(h));
  }
  return report;
}

bool Lemma35Report::all_hold() const {
  return inequality.holds && eta2.holds && eta3.holds && tower_disjoint && continuous;
}

Lemma35Report lemma_35_bound(const Iet& t, const WhirlyWindow& w, std::int64_t depth) {
  const auto hits = find_window_hits(t, w, depth, false, 1);
  if (hits.empty()) {
    fail(ErrorCode::kPrecondition, "induction does not pass (B alpha, pi) and (alpha, pi) within depth " +
                                       std::to_string(depth));
  }
  const WindowHit& hit = hits.front();
  Lemma35Report report;
  report.k = hit.k;
  report.alpha = hit.alpha;
  report.eta = hit.eta;
  report.a_star = hit.eta_sums[0];
  const Rational total_alpha = sum(hit.alpha);
  report.inequality = make_check("a_star_cover", Rational(report.a_star) * total_alpha, ">",
                                 t.total() / (w.b_max * (1 + 2 * w.r * w.r_prime)));
  report.eta2 = make_check("eta2", hit.eta[1], "<", w.r_prime * hit.eta[0]);
  report.eta3 = make_check("eta3", hit.eta[2], "<", w.r_prime * hit.eta[0]);

  const std::int64_t a_star = to_int64(report.a_star, "a_*");
  const HalfOpenInterval base(0, total_alpha);
  try {
    const Tower tower = build_tower(t, base, a_star);
    report.tower_disjoint = true;
    const bool floors_whole = std::all_of(tower.floors.begin(), tower.floors.end(),
                                          [](const IntervalSet& f) { return f.size() == 1; });
    const IntervalSet last = TranslationMap::of(t).apply(tower.floors.back());
    report.continuous = floors_whole && last.size() == 1;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotATower) throw;
    report.tower_disjoint = false;
  }
  return report;
}

// ------------------------------------------------------------------- probe

std::vector<std::int64_t> harvest_candidates(const Iet& t, const Rational& eps,
                                             const std::vector<std::int64_t>& ls, std::int64_t depth,
                                             std::int64_t small_powers) {
  std::vector<std::int64_t> out;
  std::unordered_set<std::int64_t> seen;
  auto add = [&](std::int64_t n) {
    if (n >= 1 && seen.insert(n).second) out.push_back(n);
  };
  if (t.perm() == Permutation::symmetric(3)) {
    for (std::int64_t l : ls) {
      const Rational c = whirly_constant(eps, l);
      for (const auto& hit : find_window_hits(t, make_window(c, c), depth, true)) {
        add(l * to_int64(hit.sums[1], "return time"));
      }
    }
  }
  for (std::int64_t n = 1; n <= small_powers; ++n) add(n);
  return out;
}

ProbeReport whirly_probe(const Iet& t, const ProbeMode& mode, const Rational& eps,
                         const WeakMetricConfig& cfg, const ProbeSearch& search) {
  const IntervalSet domain(t.domain());
  auto check_set = [&](const IntervalSet& s, const char* name) {
    if (s.empty()) fail(ErrorCode::kPrecondition, std::string("probe set ") + name + " is empty");
    if (!set_minus(s, domain).empty()) fail(ErrorCode::kDomain, std::string("probe set ") + name + " leaves the domain");
  };

  ProbeReport report;
  IntervalSet target;
  const IntervalSet* source = nullptr;
  std::vector<std::int64_t> ls = search.harvest_ls;
  if (const auto* self = std::get_if<SelfShift>(&mode)) {
    check_set(self->e, "E");
    report.mode = "selfShift";
    source = &self->e;
    target = image_set(t, self->e, -self->l);
    if (ls.empty()) ls = {self->l};
  } else {
    const auto& pair = std::get<PairSets>(mode);
    check_set(pair.e, "E");
    check_set(pair.f, "F");
    report.mode = "pairSets";
    source = &pair.e;
    target = pair.f;
    if (ls.empty()) ls = {1, 2, 3};
  }

  const std::vector<std::int64_t> candidates =
      search.candidates.empty() ? harvest_candidates(t, eps, ls, search.depth, search.small_powers)
                                : search.candidates;
  const TranslationMap identity = TranslationMap::identity(t.total());
  for (std::int64_t n : candidates) {
    report.tried.push_back(n);
    const TranslationMap map = power_map(t, n);
    const Rational overlap = set_intersect(map.apply(*source), target).measure();
    if (overlap <= 0) continue;
    const WeakDistance d = weak_distance(map, identity, cfg);
    if (d.upper() < eps) {
      report.n = n;
      report.distance = d;
      report.overlap = overlap;
      report.success = true;
      return report;
    }
  }
  report.distance = WeakDistance{0, Rational(mpz_class(1), mpz_class(1) << cfg.truncation)};
  report.overlap = 0;
  return report;
}

}  // namespace iet
