#pragma once

// Independent oracles used only by the tests. Every routine here takes the
// dumbest correct path on purpose; none of them shares code with the library.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracles {

using std::int64_t;

inline bool naive_is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Legendre symbol at an odd prime by Euler's criterion: a^((p-1)/2) mod p.
inline int euler_criterion(int64_t a, int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  int64_t result = 1, base = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

struct form {
  int64_t a, b, c;
  friend bool operator==(const form&, const form&) = default;
};

// Every primitive reduced form of discriminant disc by exhaustive search over
// all three coefficients: b^2 - 4ac = disc, |b| <= a <= c, b >= 0 when
// |b| = a or a = c, gcd(a, b, c) = 1. Small discriminants only.
inline std::vector<form> brute_force_reduced_forms(int64_t disc) {
  std::vector<form> out;
  const int64_t abs_disc = -disc;
  for (int64_t a = 1; 3 * a * a <= abs_disc; ++a)
    for (int64_t c = a; 4 * a * c <= a * a + abs_disc; ++c)
      for (int64_t b = -a; b <= a; ++b) {
        if (b * b - 4 * a * c != disc) continue;
        if (b < 0 && (-b == a || a == c)) continue;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        out.push_back({a, b, c});
      }
  return out;
}

inline int64_t totient_by_count(int64_t n) {
  int64_t count = 0;
  for (int64_t i = 1; i <= n; ++i)
    if (std::gcd(i, n) == 1) ++count;
  return count;
}

// psi(n) = sum over squarefree divisors d of n of n/d.
inline int64_t psi_by_divisor_sum(int64_t n) {
  auto squarefree = [](int64_t m) {
    for (int64_t d = 2; d * d <= m; ++d)
      if (m % (d * d) == 0) return false;
    return true;
  };
  int64_t sum = 0;
  for (int64_t d = 1; d <= n; ++d)
    if (n % d == 0 && squarefree(d)) sum += n / d;
  return sum;
}

}  // namespace oracles
