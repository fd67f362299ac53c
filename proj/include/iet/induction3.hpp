#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "iet/rauzy.hpp"

namespace iet {

// Result of inducing a symmetric 3-IET on [0, max{lambda_1, lambda_3}).
struct ZstarResult {
  std::vector<Rational> alpha;   // lengths of the induced IET, same permutation
  std::int64_t k0 = 0;           // Rauzy-Veech steps taken
  VisitationMatrix matrix;       // lambda == matrix * alpha
  std::array<mpz_class, 3> sums; // column sums = return times
  RauzyPath path;
};

inline constexpr std::int64_t kDefaultInductionCap = 100'000;

// Runs Rauzy-Veech induction on (lambda, (3,2,1)) until the total length is
// max{lambda_1, lambda_3} with the permutation back at (3,2,1).
// Throws ConnectionError, or Error(kResource) once `cap` steps are used, or
// Error(kInconsistent) if the total drops below the target without hitting it.
ZstarResult zstar(const Iet& t, std::int64_t cap = kDefaultInductionCap);

// a2 + 1 == a1 + a3
bool check_return_identity(const std::array<mpz_class, 3>& sums);
inline bool check_return_identity(const ZstarResult& r) { return check_return_identity(r.sums); }

enum class ClosedPathFamily { kABLA, kBALB };  // a b^l a,  b a^l b

std::vector<RauzyMove> closed_path_moves(ClosedPathFamily family, int l);
// Column sums of the visitation matrix of the closed path, by explicit product.
std::array<mpz_class, 3> closed_path_sums(ClosedPathFamily family, int l);

// (1/(1-l1) + 1/(1-l3)) / ((l1+l2)(l2+l3)) on the normalized simplex.
Rational invariant_density_f2(const std::vector<Rational>& lambda);

// Return times of the three induced subintervals measured by simulating
// orbits (three sample points per subinterval); independent of the
// visitation matrix. The subintervals come from induced_map.
std::array<std::int64_t, 3> brute_force_return_times(const Iet& t, std::int64_t cap = kDefaultInductionCap);

// A random closed path at (3,2,1) of length 2..max_len and a random positive
// alpha; lambda = A(path) alpha. Used for sweeps and tests.
struct ReversePathSample {
  std::vector<RauzyMove> moves;
  std::vector<Rational> alpha;
  Iet lambda;
};

ReversePathSample random_reverse_path_instance(std::mt19937_64& rng, int max_len);

// Uniform integer in [0, bound) from raw generator output (platform-stable).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace iet
