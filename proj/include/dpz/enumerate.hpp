#pragma once

// Exact counts of section pairs in the section model, by brute force and by an
// inclusion-exclusion counter that only enumerates one side.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dpz/forms.hpp"
#include "dpz/lattice.hpp"

namespace dpz {

enum class CountMode { naive, accelerated };

const char* mode_name(CountMode mode) noexcept;
CountMode parse_mode(const std::string& text);

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 30;

struct CountOptions {
  CountMode mode = CountMode::accelerated;
  std::uint64_t budget = kDefaultBudget;  // candidate pairs (naive) or weighted s-work
  unsigned threads = 1;
};

// 2a >= sum k and 2a' >= sum k.
struct RegimeFlags {
  bool two_a = false;
  bool two_a_prime = false;
  bool both() const { return two_a && two_a_prime; }
};
RegimeFlags regime_flags(std::size_t a, std::size_t a_prime, const std::vector<std::size_t>& k);

struct CountResult {
  mpz_class raw;         // #{(s, t)} with profile k
  mpz_class morphisms;   // raw / (q-1)^2
  RegimeFlags regime;
  CountMode mode = CountMode::naive;
};

// Work estimates used against the budget.
mpz_class naive_work(std::uint64_t q, std::size_t a, std::size_t a_prime);
mpz_class accelerated_work(std::uint64_t q, std::size_t a, std::size_t a_prime);

// Number of basepoint-free pairs of degree-a forms.
mpz_class basepoint_free_pairs(std::uint64_t q, std::size_t a);

CountResult count_sections(const SurfaceModel& model, std::size_t a, std::size_t a_prime,
                           const std::vector<std::size_t>& k, const CountOptions& opt = {});

// Every basepoint-free pair tallied by profile, plus the bottom profile.
struct Census {
  std::map<std::vector<std::size_t>, mpz_class> by_profile;
  mpz_class bottom;
  mpz_class pairs;  // basepoint-free s times basepoint-free t
};
Census census(const SurfaceModel& model, std::size_t a, std::size_t a_prime, const CountOptions& opt = {});

// #Mor(P^1, S, alpha)(F_q) through the section model.
mpz_class count_morphisms(const SurfaceModel& model, const DivisorClass& alpha, const CountOptions& opt = {});

// Sum of count_morphisms over the cone's classes with height <= d.
mpz_class count_N_exact(const SurfaceModel& model, const ConeSpec& cone, std::int64_t d, bool include_zero,
                        const CountOptions& opt = {});

// Pairs (C, (T_i)) with C a section of type (1, a) and T_i a degree-k_i
// subscheme of C meeting the fiber over points[i].
mpz_class count_config_cover(const FieldPtr& field, const std::vector<PointP1>& points, std::size_t a,
                             const std::vector<std::size_t>& k);

// sum_j min{2 m_j, n_j} - sum_j m_j.
std::int64_t dropping_rank(const std::vector<std::int64_t>& n, const std::vector<std::int64_t>& m);

namespace detail {
mpz_class accelerated_count(const SurfaceModel& model, std::size_t a, std::size_t a_prime,
                            const std::vector<std::size_t>& k, unsigned threads);
// Splits [0, n) into `parts` contiguous ranges and runs fn(lo, hi, part).
void parallel_ranges(std::uint64_t n, unsigned parts, const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& fn);
}  // namespace detail

}  // namespace dpz
