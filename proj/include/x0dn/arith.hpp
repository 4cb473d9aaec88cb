#pragma once

// Elementary integer arithmetic shared by the whole library: smallest-prime-
// factor sieve, factorization, omega, squarefree tests, Hall divisors, the
// Kronecker symbol, and the multiplicative functions phi and psi.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace x0dn {

using std::int64_t;

// Thrown when a value that must be internally consistent is not (non-integral
// genus, disagreeing cache entries, a bound that fails its own monotonicity
// check). Distinct from rejecting bad input.
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Largest accepted input. Everything the toolkit actually computes with is
// below ~4.4e5, but the arithmetic layer stays correct for any n up to 2^62,
// which keeps every intermediate product inside a signed 64-bit word.
inline constexpr int64_t max_arith_input = int64_t{1} << 62;

inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("checked_mul: product exceeds 64-bit range");
  return r;
}

struct prime_power {
  int64_t prime = 0;
  int exponent = 0;
  friend bool operator==(const prime_power&, const prime_power&) = default;
};

// Ordered prime factorization; value == 1 has an empty factor list.
struct factorization {
  int64_t value = 1;
  std::vector<prime_power> factors;  // primes strictly increasing

  bool squarefree() const {
    for (const auto& f : factors)
      if (f.exponent > 1) return false;
    return true;
  }
  int omega() const { return static_cast<int>(factors.size()); }
};

namespace detail {

// The scan enumerates DN <= 110011 and the CM orders it touches have
// |disc| <= 4*110011, so the sieve covers every factorization on the hot path.
inline constexpr int64_t sieve_limit = 4 * 110'011;

inline const std::vector<int32_t>& spf_sieve() {
  static const std::vector<int32_t> sieve = [] {
    std::vector<int32_t> s(sieve_limit + 1, 0);
    for (int64_t i = 2; i <= sieve_limit; ++i) {
      if (s[i] != 0) continue;
      for (int64_t j = i; j <= sieve_limit; j += i)
        if (s[j] == 0) s[j] = static_cast<int32_t>(i);
    }
    return s;
  }();
  return sieve;
}

}  // namespace detail

inline factorization factor(int64_t n) {
  if (n <= 0) throw std::invalid_argument("factor: n must be positive");
  if (n > max_arith_input) throw std::invalid_argument("factor: n exceeds 2^62");

  factorization out;
  out.value = n;
  auto push = [&out](int64_t p) {
    if (!out.factors.empty() && out.factors.back().prime == p)
      ++out.factors.back().exponent;
    else
      out.factors.push_back({p, 1});
  };

  const auto& spf = detail::spf_sieve();
  int64_t m = n;
  if (m > detail::sieve_limit) {
    // Deterministic trial division; only reachable through direct queries on
    // large inputs, never by the scan itself.
    for (int64_t p : {int64_t{2}, int64_t{3}, int64_t{5}})
      while (m % p == 0) {
        push(p);
        m /= p;
      }
    static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};  // mod 30, from 7
    int64_t p = 7;
    int w = 0;
    while (m > detail::sieve_limit && p * p <= m) {
      while (m % p == 0) {
        push(p);
        m /= p;
      }
      p += wheel[w];
      w = (w + 1) & 7;
    }
    if (m > detail::sieve_limit) {  // no divisor up to sqrt: m is prime
      push(m);
      m = 1;
    }
  }
  while (m > 1) {
    int64_t p = spf[m];
    push(p);
    m /= p;
  }
  return out;
}

inline int omega(int64_t n) { return factor(n).omega(); }

inline bool is_squarefree(int64_t n) { return factor(n).squarefree(); }

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  if (n <= detail::sieve_limit) return detail::spf_sieve()[n] == n;
  auto f = factor(n);
  return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

// All d | n with gcd(d, n/d) = 1, ascending. Always contains 1 and n; the
// list has exactly 2^omega(n) entries and is closed under d -> n/d.
inline std::vector<int64_t> hall_divisors(const factorization& f) {
  std::vector<int64_t> out{1};
  out.reserve(size_t{1} << f.factors.size());
  for (const auto& pp : f.factors) {
    int64_t q = 1;
    for (int i = 0; i < pp.exponent; ++i) q = checked_mul(q, pp.prime);
    const size_t sz = out.size();
    for (size_t i = 0; i < sz; ++i) out.push_back(checked_mul(out[i], q));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int64_t> hall_divisors(int64_t n) { return hall_divisors(factor(n)); }

// Kronecker symbol (a/n) with the usual conventions: multiplicative in both
// arguments, (a/2) = 0, 1, -1 for a even, a = ±1 mod 8, a = ±3 mod 8,
// (a/-1) = sign(a) for a != 0, (a/0) = 1 iff a = ±1. (0/0) is rejected.
inline int kronecker(int64_t a, int64_t n) {
  if (a == 0 && n == 0) throw std::invalid_argument("kronecker: (0/0) is undefined");
  if (a > max_arith_input || a < -max_arith_input || n > max_arith_input ||
      n < -max_arith_input)
    throw std::invalid_argument("kronecker: argument exceeds 2^62");
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;

  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  if (n % 2 == 0) {
    if (a % 2 == 0) return 0;
    int64_t r = a % 8;
    if (r < 0) r += 8;
    const int two_symbol = (r == 1 || r == 7) ? 1 : -1;
    while (n % 2 == 0) {
      n /= 2;
      result *= two_symbol;
    }
  }
  // n odd and positive: Jacobi symbol by quadratic reciprocity.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

namespace detail {

template <typename PrimePowerValue>
int64_t multiplicative(const factorization& f, PrimePowerValue&& value) {
  int64_t r = 1;
  for (const auto& pp : f.factors) {
    int64_t pk1 = 1;  // p^(e-1)
    for (int i = 1; i < pp.exponent; ++i) pk1 = checked_mul(pk1, pp.prime);
    r = checked_mul(r, value(checked_mul(pk1, pp.prime), pk1));
  }
  return r;
}

}  // namespace detail

// Euler phi: phi(p^k) = p^k - p^(k-1).
inline int64_t totient(int64_t n) {
  return detail::multiplicative(factor(n), [](int64_t pk, int64_t pk1) { return pk - pk1; });
}

// Dedekind psi: psi(p^k) = p^k + p^(k-1).
inline int64_t dedekind_psi(int64_t n) {
  return detail::multiplicative(factor(n), [](int64_t pk, int64_t pk1) { return pk + pk1; });
}

}  // namespace x0dn
