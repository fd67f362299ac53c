#include "iet/rauzy.hpp"

#include <deque>
#include <map>

namespace iet {

std::vector<RauzyMove> parse_moves(std::string_view text) {
  std::vector<RauzyMove> moves;
  for (char c : text) {
    if (c == 'a') {
      moves.push_back(RauzyMove::kA);
    } else if (c == 'b') {
      moves.push_back(RauzyMove::kB);
    } else {
      fail(ErrorCode::kInvalidArgument, "Rauzy moves are 'a' or 'b', got '" + std::string(1, c) + "'");
    }
  }
  return moves;
}

std::string to_string(const std::vector<RauzyMove>& moves) {
  std::string out;
  for (auto m : moves) out += to_char(m);
  return out;
}

// ------------------------------------------------------------------ IntMatrix

IntMatrix::IntMatrix(int n, std::vector<mpz_class> row_major) : n_(n), data_(std::move(row_major)) {
  if (n < 1 || data_.size() != static_cast<std::size_t>(n * n)) {
    fail(ErrorCode::kInvalidArgument, "matrix data does not match dimension");
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix id(n, std::vector<mpz_class>(static_cast<std::size_t>(n * n), 0));
  for (int i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<mpz_class> data;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::kInvalidArgument, "matrix is not square");
    for (long v : row) data.emplace_back(v);
  }
  return IntMatrix(n, std::move(data));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t = *this;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(i, j) = (*this)(j, i);
  return t;
}

std::vector<mpz_class> IntMatrix::column_sums() const {
  std::vector<mpz_class> sums(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) sums[static_cast<std::size_t>(j)] += (*this)(i, j);
  return sums;
}

mpz_class IntMatrix::determinant() const {
  // Bareiss fraction-free elimination.
  IntMatrix a = *this;
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < n_ - 1; ++k) {
    if (a(k, k) == 0) {
      int swap = -1;
      for (int r = k + 1; r < n_; ++r) {
        if (a(r, k) != 0) {
          swap = r;
          break;
        }
      }
      if (swap < 0) return 0;
      for (int c = 0; c < n_; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n_; ++i) {
      for (int j = k + 1; j < n_; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n_ - 1, n_ - 1);
}

bool IntMatrix::is_positive() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v > 0; });
}

bool IntMatrix::is_nonnegative() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v >= 0; });
}

std::vector<std::vector<long>> IntMatrix::rows() const {
  std::vector<std::vector<long>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (!(*this)(i, j).fits_slong_p()) fail(ErrorCode::kResource, "matrix entry exceeds machine integer");
      out[static_cast<std::size_t>(i)].push_back((*this)(i, j).get_si());
    }
  }
  return out;
}

std::vector<Rational> IntMatrix::apply(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != n_) fail(ErrorCode::kInvalidArgument, "vector size mismatch");
  std::vector<Rational> out(v.size(), Rational(0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if ((*this)(i, j) != 0) out[static_cast<std::size_t>(i)] += Rational((*this)(i, j)) * v[static_cast<std::size_t>(j)];
    }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) fail(ErrorCode::kInvalidArgument, "matrix dimension mismatch");
  IntMatrix c(a.n_, std::vector<mpz_class>(a.data_.size(), 0));
  for (int i = 0; i < a.n_; ++i)
    for (int k = 0; k < a.n_; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::string to_string(const IntMatrix& a) {
  std::string out = "[";
  for (int i = 0; i < a.dim(); ++i) {
    out += i == 0 ? "[" : ",[";
    for (int j = 0; j < a.dim(); ++j) {
      if (j > 0) out += ",";
      out += a(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

VisitationMatrix::VisitationMatrix(IntMatrix entries)
    : entries_(std::move(entries)), column_sums_(entries_.column_sums()) {
  if (!entries_.is_nonnegative()) fail(ErrorCode::kInvalidArgument, "visitation matrix has a negative entry");
}

// -------------------------------------------------------------------- actions

namespace {

void require_irreducible(const Permutation& p) {
  if (!p.is_irreducible()) {
    fail(ErrorCode::kPrecondition, "Rauzy actions need an irreducible permutation, got " + to_string(p));
  }
}

}  // namespace

Permutation act(RauzyMove move, const Permutation& p) {
  require_irreducible(p);
  const int m = p.size();
  std::vector<int> out(static_cast<std::size_t>(m));
  if (move == RauzyMove::kA) {
    const int j = p.inverse(m);
    for (int i = 1; i <= m; ++i) {
      int v = 0;
      if (i <= j) {
        v = p(i);
      } else if (i == j + 1) {
        v = p(m);
      } else {
        v = p(i - 1);
      }
      out[static_cast<std::size_t>(i - 1)] = v;
    }
  } else {
    const int last = p(m);
    for (int i = 1; i <= m; ++i) {
      const int v = p(i);
      out[static_cast<std::size_t>(i - 1)] = v <= last ? v : (v == m ? last + 1 : v + 1);
    }
  }
  return Permutation(std::move(out));
}

RauzyDiagram rauzy_diagram(const Permutation& p) {
  require_irreducible(p);
  RauzyDiagram diagram;
  std::map<Permutation, std::size_t> index;
  std::deque<std::size_t> queue;
  auto visit = [&](const Permutation& q) {
    auto [it, inserted] = index.emplace(q, diagram.nodes.size());
    if (inserted) {
      diagram.nodes.push_back(q);
      queue.push_back(it->second);
    }
    return it->second;
  };
  visit(p);
  while (!queue.empty()) {
    const std::size_t from = queue.front();
    queue.pop_front();
    for (RauzyMove move : {RauzyMove::kA, RauzyMove::kB}) {
      const std::size_t to = visit(act(move, diagram.nodes[from]));
      diagram.edges.push_back({from, to, move});
    }
  }
  return diagram;
}

std::vector<Permutation> rauzy_class(const Permutation& p) { return rauzy_diagram(p).nodes; }

VisitationMatrix step_matrix(const Permutation& p, RauzyMove move) {
  require_irreducible(p);
  const int m = p.size();
  const int j = p.inverse(m);
  IntMatrix a(m, std::vector<mpz_class>(static_cast<std::size_t>(m * m), 0));
  // 1-based helper
  auto at = [&](int row, int col) -> mpz_class& { return a(row - 1, col - 1); };
  if (move == RauzyMove::kA) {
    // lambda_i = lambda'_i (i < j), lambda_j = lambda'_j + lambda'_{j+1},
    // lambda_i = lambda'_{i+1} (j < i < m), lambda_m = lambda'_{j+1}
    for (int i = 1; i < j; ++i) at(i, i) = 1;
    at(j, j) = 1;
    at(j, j + 1) = 1;
    for (int i = j + 1; i < m; ++i) at(i, i + 1) = 1;
    at(m, j + 1) = 1;
  } else {
    // lambda_m = lambda'_m + lambda'_j, all other coordinates unchanged
    for (int i = 1; i <= m; ++i) at(i, i) = 1;
    at(m, j) = 1;
  }
  return VisitationMatrix(std::move(a));
}

// --------------------------------------------------------------- induction

RvStep rv_step(const Iet& t) {
  const Permutation& p = t.perm();
  require_irreducible(p);
  const int m = p.size();
  const int j = p.inverse(m);
  const Rational& last = t.length(m);
  const Rational& top = t.length(j);
  if (last == top) {
    throw ConnectionError(1, "connection: lambda_" + std::to_string(m) + " == lambda_" + std::to_string(j) +
                                 " == " + to_string(last) + " at " + to_string(t));
  }
  std::vector<Rational> next;
  next.reserve(static_cast<std::size_t>(m));
  RauzyMove move{};
  if (last < top) {
    move = RauzyMove::kA;
    for (int i = 1; i < j; ++i) next.push_back(t.length(i));
    next.push_back(top - last);
    next.push_back(last);
    for (int i = j + 1; i < m; ++i) next.push_back(t.length(i));
  } else {
    move = RauzyMove::kB;
    next = t.lengths();
    next.back() = last - top;
  }
  return RvStep{Iet(std::move(next), act(move, p)), move, step_matrix(p, move)};
}

RauzyPath RauzyPath::follow(const Permutation& start, const std::vector<RauzyMove>& moves) {
  RauzyPath path(start);
  for (auto move : moves) path.push(move);
  return path;
}

void RauzyPath::push(RauzyMove move) {
  Permutation next = act(move, perms.back());
  moves.push_back(move);
  perms.push_back(std::move(next));
}

VisitationMatrix path_matrix(const RauzyPath& path) {
  VisitationMatrix a = VisitationMatrix::identity(path.base.size());
  for (std::size_t k = 0; k < path.moves.size(); ++k) a = a * step_matrix(path.perms[k], path.moves[k]);
  return a;
}

InductionStopped::InductionStopped(std::int64_t step, RvIteration partial)
    : ConnectionError(step, "connection at Rauzy-Veech step " + std::to_string(step) + " (lambda = " +
                                to_string(partial.result) + ")"),
      partial_(std::move(partial)) {}

RvIteration rv_iterate(const Iet& t, std::int64_t n, const StepObserver& observer) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "step count must be non-negative");
  RvIteration state{t, RauzyPath(t.perm()), VisitationMatrix::identity(t.size())};
  for (std::int64_t k = 1; k <= n; ++k) {
    std::optional<RvStep> step;
    try {
      step.emplace(rv_step(state.result));
    } catch (const ConnectionError&) {
      throw InductionStopped(k, std::move(state));
    }
    state.matrix = state.matrix * step->matrix;
    state.path.moves.push_back(step->move);
    state.path.perms.push_back(step->next.perm());
    state.result = std::move(step->next);
    if (observer) observer(k, state);
  }
  return state;
}

Iet rv_normalized(const Iet& t) {
  RvStep step = rv_step(t);
  const Rational total = step.next.total();
  std::vector<Rational> scaled;
  for (const auto& v : step.next.lengths()) scaled.push_back(v / total);
  return Iet(std::move(scaled), step.next.perm());
}

std::optional<std::int64_t> detect_connection(const Iet& t, std::int64_t depth) {
  Iet current = t;
  for (std::int64_t k = 1; k <= depth; ++k) {
    try {
      current = rv_step(current).next;
    } catch (const ConnectionError&) {
      return k;
    }
  }
  return std::nullopt;
}

Iet reverse_path(std::vector<Rational> alpha, const RauzyPath& path) {
  for (auto& v : alpha) v.canonicalize();
  if (static_cast<int>(alpha.size()) != path.base.size()) {
    fail(ErrorCode::kInvalidArgument, "alpha has the wrong number of coordinates");
  }
  for (const auto& v : alpha) {
    if (v <= 0) fail(ErrorCode::kInvalidArgument, "alpha must be positive, got " + to_string(v));
  }
  Iet lambda(path_matrix(path).entries().apply(alpha), path.base);
  RvIteration forward = [&] {
    try {
      return rv_iterate(lambda, static_cast<std::int64_t>(path.length()));
    } catch (const InductionStopped& e) {
      fail(ErrorCode::kInconsistent, std::string("reverse path: forward check stopped: ") + e.what());
    }
  }();
  if (forward.path.moves != path.moves || forward.result.lengths() != alpha ||
      forward.result.perm() != path.end()) {
    fail(ErrorCode::kInconsistent, "reverse path: forward induction departs from " + to_string(path.moves));
  }
  return lambda;
}

Rational nu(const IntMatrix& a) {
  if (!a.is_positive()) fail(ErrorCode::kPrecondition, "nu needs a positive matrix");
  Rational best = 0;
  for (int i = 0; i < a.dim(); ++i) {
    mpz_class hi = a(i, 0);
    mpz_class lo = a(i, 0);
    for (int j = 1; j < a.dim(); ++j) {
      if (a(i, j) > hi) hi = a(i, j);
      if (a(i, j) < lo) lo = a(i, j);
    }
    Rational ratio(hi, lo);
    ratio.canonicalize();
    if (ratio > best) best = ratio;
  }
  return best;
}

}  // namespace iet
