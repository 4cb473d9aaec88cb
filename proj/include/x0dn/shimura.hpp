#pragma once

// Numerical invariants of the Shimura curve X_0^D(N): elliptic point counts
// e_3 and e_4, the genus formula, and the Mertens-type asymptotic lower bound
// on the genus that turns the classification into a finite search.

#include <cmath>

#include "x0dn/arith.hpp"

namespace x0dn {

// A pair (D, N): D > 1 a squarefree product of an even number of primes (the
// finite ramified places of an indefinite rational quaternion algebra), N a
// coprime level. Whether N is squarefree is recorded once; the fixed-point
// machinery requires it, the genus formula does not.
class curve_label {
 public:
  curve_label(int64_t D, int64_t N) : disc_(D), level_(N) {
    if (D <= 1) throw std::invalid_argument("curve label: D must exceed 1");
    if (N < 1) throw std::invalid_argument("curve label: N must be positive");
    const auto fd = factor(D);
    if (!fd.squarefree() || fd.omega() % 2 != 0)
      throw std::invalid_argument(
          "curve label: D must be squarefree with an even, positive number of prime factors");
    if (std::gcd(D, N) != 1)
      throw std::invalid_argument("curve label: D and N must be coprime");
    dn_ = checked_mul(D, N);
    if (dn_ > max_arith_input) throw std::invalid_argument("curve label: DN exceeds 2^62");
    squarefree_level_ = is_squarefree(N);
  }

  int64_t disc() const { return disc_; }
  int64_t level() const { return level_; }
  int64_t dn() const { return dn_; }
  bool squarefree_level() const { return squarefree_level_; }

  friend bool operator==(const curve_label&, const curve_label&) = default;

 private:
  int64_t disc_;
  int64_t level_;
  int64_t dn_ = 0;
  bool squarefree_level_ = false;
};

// e_k(D,N) = prod_{p|D} (1 - (-k/p)) * prod_{q||N} (1 + (-k/q))
//            * prod_{q^2|N} nu_q(k),    nu_q(k) = 2 if (-k/q) = 1, else 0,
// for k in {3, 4}. Counts the order-(k-1) elliptic points of X_0^D(N).
inline int64_t elliptic_count(const curve_label& label, int k) {
  if (k != 3 && k != 4)
    throw std::invalid_argument("elliptic_count: k must be 3 or 4");
  int64_t e = 1;
  for (const auto& pp : factor(label.disc()).factors)
    e *= 1 - kronecker(-k, pp.prime);
  for (const auto& pp : factor(label.level()).factors) {
    const int sym = kronecker(-k, pp.prime);
    e *= pp.exponent == 1 ? 1 + sym : (sym == 1 ? 2 : 0);
  }
  return e;
}

// g = 1 + phi(D) psi(N) / 12 - e_4 / 4 - e_3 / 3, evaluated as an exact
// rational; anything but a nonnegative integer is a formula bug upstream.
inline int64_t genus(const curve_label& label) {
  const __int128 phi_psi =
      static_cast<__int128>(totient(label.disc())) * dedekind_psi(label.level());
  const __int128 num =
      12 + phi_psi - 3 * elliptic_count(label, 4) - 4 * elliptic_count(label, 3);
  if (num % 12 != 0 || num < 0)
    throw consistency_error("genus: formula did not produce a nonnegative integer for D=" +
                            std::to_string(label.disc()) + " N=" +
                            std::to_string(label.level()));
  return static_cast<int64_t>(num / 12);
}

// Lower bound 1 + (x/12) / (e^gamma loglog x + 3/loglog 6) - 7 sqrt(x) / 3
// for the genus of any X_0^D(N) with DN = x; natural logarithms.
inline double genus_lower_bound(int64_t x) {
  if (x < 16) throw std::invalid_argument("genus_lower_bound: x must be at least 16");
  constexpr double euler_gamma = 0.57721566490153286;
  static const double exp_gamma = std::exp(euler_gamma);
  static const double shift = 3.0 / std::log(std::log(6.0));
  const double xd = static_cast<double>(x);
  return 1.0 + xd / 12.0 / (exp_gamma * std::log(std::log(xd)) + shift) -
         7.0 * std::sqrt(xd) / 3.0;
}

// Smallest M with genus_lower_bound(x) > genus_cap for every integer
// x in (M, search_limit]. The bound mixes increasing and decreasing terms,
// so nondecreasingness beyond M is verified by exhaustive stepping rather
// than assumed.
inline int64_t dn_cutoff(int64_t genus_cap, int64_t search_limit = 1'000'000) {
  if (genus_cap < 0) throw std::invalid_argument("dn_cutoff: genus_cap must be nonnegative");
  if (search_limit < 1'000'000)
    throw std::invalid_argument("dn_cutoff: search_limit must be at least 10^6");
  int64_t last_below = -1;
  for (int64_t x = 16; x <= search_limit; ++x)
    if (genus_lower_bound(x) <= static_cast<double>(genus_cap)) last_below = x;
  if (last_below < 0) last_below = 16;  // bound already above cap everywhere
  if (last_below == search_limit)
    throw consistency_error("dn_cutoff: bound does not exceed the cap below the search limit");
  double prev = genus_lower_bound(last_below + 1);
  for (int64_t x = last_below + 2; x <= search_limit; ++x) {
    const double cur = genus_lower_bound(x);
    if (cur < prev)
      throw consistency_error("dn_cutoff: bound not nondecreasing beyond the cutoff");
    prev = cur;
  }
  return last_below;
}

}  // namespace x0dn
