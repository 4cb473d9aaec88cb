#pragma once

// CM point counts on X_0^D(N) and fixed-point counts of the Atkin-Lehner
// involutions w_m. Two formula variants are kept side by side:
//
//   paper   The count is 2^omega(D(R) N(R)) * h(R) whenever
//           DN / (D(R) N*(R)) divides disc(R), with the local symbol (R/p)
//           forced to 1 at every p | conductor.
//   strict  Same, except CM(R) is empty outright when some prime divides
//           both D and the conductor of R: at a prime ramified in the
//           quaternion algebra, an order whose conductor that prime divides
//           admits no optimal local embedding.
//
// Read literally, the first variant gives w_3 on the genus-zero curve
// X_0^6(1) three fixed points; an involution of a genus-zero curve fixes
// exactly two. The toolkit computes both and reports every divergence
// instead of hiding the discrepancy.

#include <optional>
#include <vector>

#include "x0dn/quadorders.hpp"
#include "x0dn/shimura.hpp"

namespace x0dn {

enum class cm_variant { paper, strict };

inline const char* to_string(cm_variant v) {
  return v == cm_variant::paper ? "paper" : "strict";
}

// Index m of an Atkin-Lehner involution w_m on a given curve: a nontrivial
// Hall divisor of DN. The full involution group has order 2^omega(DN).
struct atkin_lehner_index {
  atkin_lehner_index(const curve_label& parent_label, int64_t index)
      : parent(parent_label), m(index) {
    if (m <= 1) throw std::invalid_argument("atkin_lehner_index: m must exceed 1");
    if (parent.dn() % m != 0 || std::gcd(m, parent.dn() / m) != 1)
      throw std::invalid_argument("atkin_lehner_index: m must be a Hall divisor of DN");
  }
  curve_label parent;
  int64_t m;
};

// Orders whose CM points w_m can fix: Z[i] and Z[sqrt(-2)] for m = 2, the
// order of discriminant -4m together with the maximal order of discriminant
// -m when m = 3 mod 4, and only discriminant -4m otherwise.
inline std::vector<order_disc> fixed_point_orders(int64_t m) {
  if (m <= 1) throw std::invalid_argument("fixed_point_orders: m must exceed 1");
  if (!is_squarefree(m))
    throw std::invalid_argument("fixed_point_orders: m must be squarefree");
  if (m == 2) return {split_discriminant(-4), split_discriminant(-8)};
  if (m % 4 == 3) return {split_discriminant(-4 * m), split_discriminant(-m)};
  return {split_discriminant(-4 * m)};
}

// (R/p): the Kronecker symbol of the fundamental discriminant at p, forced
// to 1 when p divides the conductor.
inline int local_symbol(const order_disc& order, int64_t p) {
  if (order.conductor % p == 0) return 1;
  return kronecker(order.fund_disc, p);
}

struct cm_parts_t {
  int64_t d_part = 1;   // D(R): primes p | D with (R/p) = -1
  int64_t n_part = 1;   // N(R): primes p | N with (R/p) = 1
  int64_t n_star = 1;   // N*(R): primes p | N, p coprime to f, (K/p) = 1
};

inline cm_parts_t cm_parts(const curve_label& label, const order_disc& order) {
  if (!label.squarefree_level())
    throw std::invalid_argument("cm_parts: level must be squarefree");
  cm_parts_t parts;
  for (const auto& pp : factor(label.disc()).factors)
    if (local_symbol(order, pp.prime) == -1) parts.d_part *= pp.prime;
  for (const auto& pp : factor(label.level()).factors) {
    if (local_symbol(order, pp.prime) == 1) parts.n_part *= pp.prime;
    if (order.conductor % pp.prime != 0 && kronecker(order.fund_disc, pp.prime) == 1)
      parts.n_star *= pp.prime;
  }
  return parts;
}

inline int64_t cm_count(const curve_label& label, const order_disc& order, cm_variant v) {
  const cm_parts_t parts = cm_parts(label, order);
  const int64_t quotient = label.dn() / (parts.d_part * parts.n_star);
  if (order.disc % quotient != 0) return 0;  // CM(R) empty
  if (v == cm_variant::strict && std::gcd(label.disc(), order.conductor) > 1) return 0;
  const int64_t weight = int64_t{1} << omega(parts.d_part * parts.n_part);
  return checked_mul(weight, class_number(order.disc));
}

inline int64_t fixed_point_count(const curve_label& label, int64_t m, cm_variant v) {
  const atkin_lehner_index w(label, m);
  if (!label.squarefree_level())
    throw std::invalid_argument("fixed_point_count: level must be squarefree");
  int64_t total = 0;
  for (const auto& order : fixed_point_orders(w.m))
    total += cm_count(label, order, v);
  return total;
}

// Per-order counts for one involution, under both variants.
struct order_count {
  order_disc order;
  int64_t paper = 0;
  int64_t strict = 0;
};

struct involution_fixed_points {
  int64_t m = 0;
  std::vector<order_count> orders;
  int64_t total_paper = 0;
  int64_t total_strict = 0;
  bool divergent() const { return total_paper != total_strict; }
};

// Fixed points of every nontrivial w_m on one curve; entries ascend in m, one
// per Hall divisor of DN except 1, so 2^omega(DN) - 1 in all. Distinct orders
// have disjoint CM sets, so totals are plain sums.
struct fixed_point_profile {
  explicit fixed_point_profile(const curve_label& parent_label) : parent(parent_label) {
    for (int64_t m : hall_divisors(parent.dn())) {
      if (m == 1) continue;
      involution_fixed_points entry;
      entry.m = m;
      for (const auto& order : fixed_point_orders(m)) {
        order_count oc;
        oc.order = order;
        oc.paper = cm_count(parent, order, cm_variant::paper);
        oc.strict = cm_count(parent, order, cm_variant::strict);
        entry.total_paper += oc.paper;
        entry.total_strict += oc.strict;
        entry.orders.push_back(oc);
      }
      entries.push_back(std::move(entry));
    }
  }

  int64_t total(int64_t m, cm_variant v) const {
    for (const auto& e : entries)
      if (e.m == m) return v == cm_variant::paper ? e.total_paper : e.total_strict;
    throw std::invalid_argument("fixed_point_profile: no such involution index");
  }

  curve_label parent;
  std::vector<involution_fixed_points> entries;
};

}  // namespace x0dn
