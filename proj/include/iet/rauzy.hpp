#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "iet/error.hpp"
#include "iet/iet.hpp"

namespace iet {

// Which of the two rightmost intervals is cut: a when lambda_m is the
// shorter one (lambda_m < lambda_{pi^-1 m}), b otherwise.
enum class RauzyMove { kA, kB };

inline char to_char(RauzyMove move) { return move == RauzyMove::kA ? 'a' : 'b'; }
// Parses strings over {a,b}, e.g. "abba".
std::vector<RauzyMove> parse_moves(std::string_view text);
std::string to_string(const std::vector<RauzyMove>& moves);

// Dense square matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int n, std::vector<mpz_class> row_major);
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  int dim() const noexcept { return n_; }
  const mpz_class& operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row * n_ + col)];
  }
  mpz_class& operator()(int row, int col) { return data_[static_cast<std::size_t>(row * n_ + col)]; }

  IntMatrix transpose() const;
  std::vector<mpz_class> column_sums() const;
  mpz_class determinant() const;
  bool is_positive() const;
  bool is_nonnegative() const;
  std::vector<std::vector<long>> rows() const;  // entries must fit in long

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<mpz_class> data_;
};

std::string to_string(const IntMatrix& a);

// Product of elementary Rauzy matrices; lambda = A * lambda'. Column j sums
// to the first return time of the j-th induced subinterval.
class VisitationMatrix {
 public:
  explicit VisitationMatrix(IntMatrix entries);
  static VisitationMatrix identity(int m) { return VisitationMatrix(IntMatrix::identity(m)); }

  const IntMatrix& entries() const noexcept { return entries_; }
  const std::vector<mpz_class>& column_sums() const noexcept { return column_sums_; }
  int dim() const noexcept { return entries_.dim(); }

  friend VisitationMatrix operator*(const VisitationMatrix& a, const VisitationMatrix& b) {
    return VisitationMatrix(a.entries_ * b.entries_);
  }

 private:
  IntMatrix entries_;
  std::vector<mpz_class> column_sums_;
};

Permutation act(RauzyMove move, const Permutation& p);

struct RauzyEdge {
  std::size_t from;
  std::size_t to;
  RauzyMove move;
};

struct RauzyDiagram {
  std::vector<Permutation> nodes;  // breadth-first discovery order, nodes[0] = start
  std::vector<RauzyEdge> edges;    // one a-edge and one b-edge per node
};

// Breadth-first closure under a and b.
RauzyDiagram rauzy_diagram(const Permutation& p);
std::vector<Permutation> rauzy_class(const Permutation& p);

// Elementary matrix A(pi, c).
VisitationMatrix step_matrix(const Permutation& p, RauzyMove move);

struct RvStep {
  Iet next;
  RauzyMove move;
  VisitationMatrix matrix;
};

// One Rauzy-Veech step. Throws ConnectionError(step 1) when
// lambda_m == lambda_{pi^-1 m}.
RvStep rv_step(const Iet& t);

struct RauzyPath {
  Permutation base;
  std::vector<RauzyMove> moves;
  std::vector<Permutation> perms;  // perms[0] == base, perms.size() == moves.size() + 1

  explicit RauzyPath(Permutation start) : base(start), perms{std::move(start)} {}
  static RauzyPath follow(const Permutation& start, const std::vector<RauzyMove>& moves);
  void push(RauzyMove move);
  const Permutation& end() const { return perms.back(); }
  std::size_t length() const { return moves.size(); }
};

VisitationMatrix path_matrix(const RauzyPath& path);

struct RvIteration {
  Iet result;
  RauzyPath path;
  VisitationMatrix matrix;
};

// Thrown by rv_iterate when a connection stops the induction; carries the
// 1-based failing step and everything computed before it.
class InductionStopped : public ConnectionError {
 public:
  InductionStopped(std::int64_t step, RvIteration partial);
  const RvIteration& partial() const noexcept { return partial_; }

 private:
  RvIteration partial_;
};

using StepObserver = std::function<void(std::int64_t step, const RvIteration& state)>;

// n Rauzy-Veech steps; lambda == A^(n) lambda^(n) holds exactly. The observer
// (if any) sees the state after every step.
RvIteration rv_iterate(const Iet& t, std::int64_t n, const StepObserver& observer = {});

// rv_step rescaled to total length 1.
Iet rv_normalized(const Iet& t);

// lambda = A(path) alpha, verified by forward induction along `path`.
// Throws Error(kInconsistent) if the forward run departs from the path.
Iet reverse_path(std::vector<Rational> alpha, const RauzyPath& path);

// max over rows i, columns j,k of a_ij / a_ik. Entries must be positive.
Rational nu(const IntMatrix& a);

}  // namespace iet
