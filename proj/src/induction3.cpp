#include "iet/induction3.hpp"

#include <algorithm>

namespace iet {

namespace {

const Permutation& symmetric3() {
  static const Permutation p = Permutation::symmetric(3);
  return p;
}

void require_symmetric3(const Iet& t) {
  if (t.perm() != symmetric3()) {
    fail(ErrorCode::kPrecondition, "expected the permutation (3,2,1), got " + to_string(t.perm()));
  }
}

}  // namespace

ZstarResult zstar(const Iet& t, std::int64_t cap) {
  require_symmetric3(t);
  const Rational target = std::max(t.length(1), t.length(3));
  RvIteration state{t, RauzyPath(t.perm()), VisitationMatrix::identity(3)};
  for (std::int64_t k = 1; k <= cap; ++k) {
    RvStep step = [&] {
      try {
        return rv_step(state.result);
      } catch (const ConnectionError&) {
        throw InductionStopped(k, state);
      }
    }();
    state.matrix = state.matrix * step.matrix;
    state.path.moves.push_back(step.move);
    state.path.perms.push_back(step.next.perm());
    state.result = std::move(step.next);
    const Rational& total = state.result.total();
    if (total == target && state.result.perm() == symmetric3()) {
      const auto& s = state.matrix.column_sums();
      return ZstarResult{state.result.lengths(), k, state.matrix, {s[0], s[1], s[2]}, std::move(state.path)};
    }
    if (total <= target) {
      fail(ErrorCode::kInconsistent, "induction passed max{lambda_1,lambda_3} = " + to_string(target) +
                                         " at step " + std::to_string(k) + " without returning to (3,2,1)");
    }
  }
  fail(ErrorCode::kResource, "zstar: target not reached within " + std::to_string(cap) + " steps");
}

bool check_return_identity(const std::array<mpz_class, 3>& sums) {
  return sums[1] + 1 == sums[0] + sums[2];
}

std::vector<RauzyMove> closed_path_moves(ClosedPathFamily family, int l) {
  if (l < 0) fail(ErrorCode::kInvalidArgument, "closed path exponent must be >= 0");
  const RauzyMove outer = family == ClosedPathFamily::kABLA ? RauzyMove::kA : RauzyMove::kB;
  const RauzyMove inner = family == ClosedPathFamily::kABLA ? RauzyMove::kB : RauzyMove::kA;
  std::vector<RauzyMove> moves{outer};
  moves.insert(moves.end(), static_cast<std::size_t>(l), inner);
  moves.push_back(outer);
  return moves;
}

std::array<mpz_class, 3> closed_path_sums(ClosedPathFamily family, int l) {
  const RauzyPath path = RauzyPath::follow(symmetric3(), closed_path_moves(family, l));
  if (path.end() != symmetric3()) fail(ErrorCode::kInconsistent, "closed path does not return to (3,2,1)");
  const auto s = path_matrix(path).column_sums();
  return {s[0], s[1], s[2]};
}

Rational invariant_density_f2(const std::vector<Rational>& lambda) {
  if (lambda.size() != 3) fail(ErrorCode::kInvalidArgument, "f2 takes three lengths");
  if (lambda[0] + lambda[1] + lambda[2] != 1) {
    fail(ErrorCode::kPrecondition, "f2 is defined on |lambda| = 1");
  }
  if (lambda[0] == 1 || lambda[2] == 1) fail(ErrorCode::kDomain, "f2 has a pole at lambda_1 = 1 or lambda_3 = 1");
  for (const auto& v : lambda) {
    if (v <= 0) fail(ErrorCode::kInvalidArgument, "f2 needs positive lengths");
  }
  const Rational one(1);
  return (one / (one - lambda[0]) + one / (one - lambda[2])) /
         ((lambda[0] + lambda[1]) * (lambda[1] + lambda[2]));
}

std::array<std::int64_t, 3> brute_force_return_times(const Iet& t, std::int64_t cap) {
  require_symmetric3(t);
  const Rational target = std::max(t.length(1), t.length(3));
  const Iet induced = induced_map(t, target, cap);
  if (induced.size() != 3) {
    fail(ErrorCode::kInconsistent, "induced map on [0,max{l1,l3}) has " + std::to_string(induced.size()) + " pieces");
  }
  const HalfOpenInterval window(0, target);
  std::array<std::int64_t, 3> times{};
  for (int i = 1; i <= 3; ++i) {
    const HalfOpenInterval piece = induced.interval(i);
    const Rational width = piece.length();
    std::int64_t seen = -1;
    for (const Rational& frac : {Rational(0), Rational(1, 2), Rational(7, 8)}) {
      const std::int64_t k = first_return(t, window, piece.lo() + frac * width, cap).k;
      if (seen >= 0 && k != seen) {
        fail(ErrorCode::kInconsistent, "return time not constant on induced subinterval " + std::to_string(i));
      }
      seen = k;
    }
    times[static_cast<std::size_t>(i - 1)] = seen;
  }
  return times;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::kInvalidArgument, "empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = 0;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

ReversePathSample random_reverse_path_instance(std::mt19937_64& rng, int max_len) {
  if (max_len < 2) fail(ErrorCode::kInvalidArgument, "closed paths at (3,2,1) have length >= 2");
  const Permutation& pi = symmetric3();
  const int target_len = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_len - 1)));
  RauzyPath path(pi);
  // Random walk, leaving one step to close the loop: from (3,1,2) the a-move
  // and from (2,3,1) the b-move lead back to (3,2,1).
  while (static_cast<int>(path.length()) < target_len - 1 || path.end() != pi) {
    if (static_cast<int>(path.length()) >= target_len - 1 && path.end() != pi) {
      path.push(path.end() == act(RauzyMove::kA, pi) ? RauzyMove::kA : RauzyMove::kB);
      break;
    }
    path.push(uniform_below(rng, 2) == 0 ? RauzyMove::kA : RauzyMove::kB);
  }
  constexpr std::uint64_t kDen = 1'000'000;
  std::vector<Rational> alpha;
  for (int i = 0; i < 3; ++i) {
    Rational v(static_cast<long>(1 + uniform_below(rng, kDen)), static_cast<long>(kDen));
    v.canonicalize();
    alpha.push_back(v);
  }
  Iet lambda = reverse_path(alpha, path);
  return ReversePathSample{path.moves, std::move(alpha), std::move(lambda)};
}

}  // namespace iet
