#pragma once

// Imaginary quadratic orders: discriminant = conductor^2 * fundamental part,
// class numbers counted as reduced primitive binary quadratic forms, and the
// conductor (Euler-factor) class number relation used as an independent
// cross-check. A process-wide cache keeps the scan from recounting forms.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "x0dn/arith.hpp"

namespace x0dn {

// An imaginary quadratic order identified by its discriminant.
// disc = conductor^2 * fund_disc with fund_disc fundamental.
struct order_disc {
  int64_t disc = 0;
  int64_t fund_disc = 0;
  int64_t conductor = 1;
  friend bool operator==(const order_disc&, const order_disc&) = default;
};

inline bool is_discriminant(int64_t d) {
  if (d >= 0) return false;
  const int64_t r = ((d % 4) + 4) % 4;
  return r == 0 || r == 1;
}

inline bool is_fundamental_discriminant(int64_t d) {
  if (!is_discriminant(d)) return false;
  if (((d % 4) + 4) % 4 == 1) return is_squarefree(-d);
  const int64_t m = d / 4;  // negative
  const int64_t r = ((m % 4) + 4) % 4;
  return (r == 2 || r == 3) && is_squarefree(-m);
}

// The unique decomposition disc = f^2 * dK with dK fundamental.
inline order_disc split_discriminant(int64_t disc) {
  if (!is_discriminant(disc))
    throw std::invalid_argument("split_discriminant: need disc < 0 with disc = 0,1 mod 4");
  const auto f = factor(-disc);
  int64_t kernel = 1;  // product of primes with odd exponent
  int64_t root = 1;    // sqrt of the complementary square part
  for (const auto& pp : f.factors) {
    if (pp.exponent % 2 == 1) kernel = checked_mul(kernel, pp.prime);
    for (int i = 0; i < pp.exponent / 2; ++i) root = checked_mul(root, pp.prime);
  }
  // -disc = kernel * root^2
  order_disc out;
  out.disc = disc;
  if (((kernel % 4) + 4) % 4 == 3) {  // -kernel = 1 mod 4
    out.fund_disc = -kernel;
    out.conductor = root;
  } else {
    out.fund_disc = -4 * kernel;
    if (root % 2 != 0)
      throw consistency_error("split_discriminant: disc = 2,3 mod 4 slipped through");
    out.conductor = root / 2;
  }
  return out;
}

struct quad_form {
  int64_t a = 0;
  int64_t b = 0;
  int64_t c = 0;
  friend bool operator==(const quad_form&, const quad_form&) = default;
};

namespace detail {

inline int64_t isqrt(int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Visits every reduced primitive form of the given discriminant:
// b^2 - 4ac = disc, |b| <= a <= c, b >= 0 when |b| = a or a = c,
// gcd(a,b,c) = 1. Iteration order is a ascending, then b descending.
template <typename Fn>
void for_each_reduced_form(int64_t disc, Fn&& fn) {
  if (!is_discriminant(disc))
    throw std::invalid_argument("reduced_forms: need disc < 0 with disc = 0,1 mod 4");
  const int64_t abs_disc = -disc;
  const int64_t a_max = isqrt(abs_disc / 3);
  const bool odd = abs_disc % 2 == 1;
  for (int64_t a = 1; a <= a_max; ++a) {
    int64_t b = (a % 2 == (odd ? 1 : 0)) ? a : a - 1;
    for (; b > -a; b -= 2) {
      const int64_t t = b * b + abs_disc;  // = b^2 - disc = 4ac
      if (t % (4 * a) != 0) continue;
      const int64_t c = t / (4 * a);
      if (c < a) continue;
      if (b < 0 && (-b == a || a == c)) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      fn(quad_form{a, b, c});
    }
  }
}

}  // namespace detail

inline std::vector<quad_form> reduced_forms(int64_t disc) {
  std::vector<quad_form> out;
  detail::for_each_reduced_form(disc, [&out](const quad_form& f) { out.push_back(f); });
  return out;
}

// Insert-once map from discriminant to class number. Concurrent writers of the
// same key must agree; lookups see either "absent" or the final value.
class class_number_cache {
 public:
  static class_number_cache& global() {
    static class_number_cache cache;
    return cache;
  }

  std::optional<int64_t> find(int64_t disc) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(disc);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  int64_t insert(int64_t disc, int64_t h) {
    std::unique_lock lock(mutex_);
    auto [it, fresh] = map_.emplace(disc, h);
    if (!fresh && it->second != h)
      throw consistency_error("class number cache: conflicting values for disc " +
                              std::to_string(disc));
    return it->second;
  }

  size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

  // File format: one "disc<TAB>h" record per line, |disc| strictly
  // increasing, no duplicates.
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cache file: " + path);
    std::string line;
    int64_t prev_abs = 0;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const char* s = line.c_str();
      char* end = nullptr;
      const int64_t disc = std::strtoll(s, &end, 10);
      bool ok = end != s && *end == '\t';
      const char* hs = end + 1;
      const int64_t h = ok ? std::strtoll(hs, &end, 10) : 0;
      ok = ok && end != hs && *end == '\0';
      if (!ok || !is_discriminant(disc) || h < 1)
        throw std::runtime_error("malformed cache record at " + path + ":" +
                                 std::to_string(lineno));
      if (-disc <= prev_abs)
        throw std::runtime_error("cache file not sorted by |disc| at " + path + ":" +
                                 std::to_string(lineno));
      prev_abs = -disc;
      insert(disc, h);
    }
  }

  bool load_file_if_exists(const std::string& path) {
    if (!std::ifstream(path)) return false;
    load_file(path);
    return true;
  }

  void save_file(const std::string& path) const {
    std::vector<std::pair<int64_t, int64_t>> entries;
    {
      std::shared_lock lock(mutex_);
      entries.assign(map_.begin(), map_.end());
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return -x.first < -y.first; });
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file: " + path);
    for (const auto& [disc, h] : entries) out << disc << '\t' << h << '\n';
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<int64_t, int64_t> map_;
};

// Form class number, counting primitive forms only (h(-3) = h(-4) = 1).
inline int64_t class_number(int64_t disc) {
  auto& cache = class_number_cache::global();
  if (auto hit = cache.find(disc)) return *hit;
  int64_t count = 0;
  detail::for_each_reduced_form(disc, [&count](const quad_form&) { ++count; });
  if (count < 1) throw consistency_error("class_number: no principal form found");
  return cache.insert(disc, count);
}

// h(f^2 dK) = h(dK) * f * prod_{p | f} (1 - (dK/p)/p) / u, where u is the
// unit index 3 for dK = -3, 2 for dK = -4 and 1 otherwise. Exact integer
// arithmetic throughout; an oracle for class_number, not a replacement.
inline int64_t class_number_via_conductor(int64_t disc) {
  const order_disc od = split_discriminant(disc);
  if (od.conductor == 1) return class_number(disc);
  int64_t h = checked_mul(class_number(od.fund_disc), od.conductor);
  for (const auto& pp : factor(od.conductor).factors) {
    h /= pp.prime;  // exact: the conductor factor above contains p^e
    h = checked_mul(h, pp.prime - kronecker(od.fund_disc, pp.prime));
  }
  const int64_t unit_index = od.fund_disc == -3 ? 3 : od.fund_disc == -4 ? 2 : 1;
  if (h % unit_index != 0)
    throw consistency_error("class_number_via_conductor: non-integral result for disc " +
                            std::to_string(disc));
  return h / unit_index;
}

}  // namespace x0dn
