#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "iet/numeric.hpp"

namespace iet {

// A permutation of {1..m}, m >= 2, stored as its images pi(1..m).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  Permutation(std::initializer_list<int> images) : Permutation(std::vector<int>(images)) {}

  int size() const noexcept { return static_cast<int>(images_.size()); }
  // 1-based access: (*this)(i) == pi(i).
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  int inverse(int k) const { return inverse_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  // No proper prefix {1..k}, k < m, is mapped onto itself.
  bool is_irreducible() const;
  // Irreducible and pi(j+1) != pi(j)+1 for every j.
  bool is_starred() const;

  // m, m-1, ..., 1
  static Permutation symmetric(int m);

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<int> images_;
  std::vector<int> inverse_;
};

std::string to_string(const Permutation& p);  // "(3,2,1)"

inline bool is_irreducible(const Permutation& p) { return p.is_irreducible(); }

enum class Direction { kForward, kInverse };

// Interval exchange transformation on [0,|lambda|). Interval i is
// [beta_{i-1}, beta_i) and is translated by offsets[i] to position pi(i).
class Iet {
 public:
  // Throws Error(kInvalidArgument) on a non-positive length or a size
  // mismatch. Reducible permutations are accepted; see is_reducible().
  Iet(std::vector<Rational> lengths, Permutation perm);

  int size() const noexcept { return perm_.size(); }
  const std::vector<Rational>& lengths() const noexcept { return lengths_; }
  const Rational& length(int i) const { return lengths_[static_cast<std::size_t>(i - 1)]; }
  const Permutation& perm() const noexcept { return perm_; }
  // beta_0 .. beta_m
  const std::vector<Rational>& betas() const noexcept { return betas_; }
  // Partial sums of lambda^pi: left endpoints of the image positions.
  const std::vector<Rational>& image_betas() const noexcept { return image_betas_; }
  const std::vector<Rational>& offsets() const noexcept { return offsets_; }
  const Rational& offset(int i) const { return offsets_[static_cast<std::size_t>(i - 1)]; }
  const Rational& total() const noexcept { return betas_.back(); }
  bool is_reducible() const { return !perm_.is_irreducible(); }

  // 1-based index of the interval containing x; x must lie in [0,|lambda|).
  int interval_of(const Rational& x) const;
  HalfOpenInterval interval(int i) const;
  HalfOpenInterval domain() const { return HalfOpenInterval(0, total()); }

  friend bool operator==(const Iet& a, const Iet& b) {
    return a.perm_ == b.perm_ && a.lengths_ == b.lengths_;
  }

 private:
  std::vector<Rational> lengths_;
  Permutation perm_;
  std::vector<Rational> betas_;
  std::vector<Rational> image_betas_;
  std::vector<Rational> offsets_;
};

inline Iet build_iet(std::vector<Rational> lengths, Permutation perm) {
  return Iet(std::move(lengths), std::move(perm));
}

std::string to_string(const Iet& t);

// Piecewise translation of [0,total): on [cuts[k], cuts[k+1]) every point is
// shifted by shifts[k]. Adjacent pieces always carry different shifts. Powers
// of an IET are represented this way.
class TranslationMap {
 public:
  static TranslationMap identity(const Rational& total);
  static TranslationMap of(const Iet& t);

  const std::vector<Rational>& cuts() const noexcept { return cuts_; }
  const std::vector<Rational>& shifts() const noexcept { return shifts_; }
  std::size_t pieces() const noexcept { return shifts_.size(); }
  const Rational& total() const noexcept { return cuts_.back(); }

  Rational apply(const Rational& x) const;
  IntervalSet apply(const IntervalSet& s) const;

  // (*this) o inner
  TranslationMap after(const TranslationMap& inner) const;
  TranslationMap inverse() const;

 private:
  TranslationMap() = default;
  static TranslationMap from_pieces(std::vector<std::pair<HalfOpenInterval, Rational>> pieces);

  std::vector<Rational> cuts_;
  std::vector<Rational> shifts_;
};

// Default bound on |power| for image computations.
inline constexpr std::int64_t kDefaultPowerCap = 1'000'000;

// T^power as a piecewise translation (binary powering).
TranslationMap power_map(const Iet& t, std::int64_t power, std::int64_t cap = kDefaultPowerCap);

// Forward: T(x). Inverse: the unique y with T(y) == x.
Rational apply(const Iet& t, const Rational& x, Direction direction = Direction::kForward);
// T^n(x) for signed n, one step at a time.
Rational apply_power(const Iet& t, const Rational& x, std::int64_t n);

IntervalSet image_set(const Iet& t, const IntervalSet& s, std::int64_t power,
                      std::int64_t cap = kDefaultPowerCap);

struct FirstReturn {
  std::int64_t k = 0;
  Rational y;
};

// Smallest k >= 1 with T^k(x) in window = [0,L).
FirstReturn first_return(const Iet& t, const HalfOpenInterval& window, const Rational& x,
                         std::int64_t cap);

// First-return IET on [0,L). Continuity pieces are found by pulling the
// window through T until every piece has returned, so a non-admissible L
// yields more than m intervals.
Iet induced_map(const Iet& t, const Rational& length, std::int64_t cap);

// 1-based Rauzy-Veech step (<= depth) at which lambda_m == lambda_{pi^-1 m};
// nullopt when the first `depth` steps are all defined.
std::optional<std::int64_t> detect_connection(const Iet& t, std::int64_t depth);

enum class Admissibility { kVerified, kRefuted, kUnknown };

const char* to_string(Admissibility verdict);

// Bounded search for the endpoint certificates of an admissible subinterval
// [xi, eta): each endpoint must be T^k(beta_s), 1 <= s < m, |k| <= bound,
// with no intermediate orbit point inside the interval. xi == 0 and
// eta == |lambda| are accepted as beta_0 and beta_m.
Admissibility is_admissible(const Iet& t, const Rational& xi, const Rational& eta,
                            std::int64_t bound);

}  // namespace iet
