#pragma once

// The classification pipeline: derive the degree cap from the gonality bound
// for smooth plane curves, enumerate every candidate pair (D, N) up to the DN
// cutoff, test each high-genus candidate against the fixed-point count an
// involution of a smooth plane curve must have, and assemble the verdict.

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "x0dn/cmfix.hpp"

namespace x0dn {

// Largest d >= 3 with (21/200)((d-1)(d-2)/2 - 1) <= d - 1: the gonality of a
// smooth plane curve of degree d is d - 1 and is bounded below by 21/200 of
// (genus - 1). Exact rational arithmetic, cleared of denominators.
inline int max_plane_degree() {
  int d = 3;
  while (21 * (int64_t{d} * (d - 1) - 2) <= 400 * d) ++d;  // condition at d+1
  return d;
}

// {(d-1)(d-2)/2 : 1 <= d <= d_max}, sorted, duplicates removed.
inline std::vector<int64_t> admissible_genera(int d_max) {
  if (d_max < 1) throw std::invalid_argument("admissible_genera: d_max must be positive");
  std::vector<int64_t> out;
  for (int64_t d = 1; d <= d_max; ++d) {
    const int64_t g = (d - 1) * (d - 2) / 2;
    if (out.empty() || out.back() != g) out.push_back(g);
  }
  return out;
}

// Inverts g = (d-1)(d-2)/2 for g >= 3; rejects g not of that shape.
inline int degree_from_genus(int64_t g) {
  if (g < 3) throw std::invalid_argument("degree_from_genus: g must be at least 3");
  const int64_t root = detail::isqrt(8 * g + 1);
  if (root * root != 8 * g + 1 || root % 2 == 0)
    throw std::invalid_argument("degree_from_genus: g is not of the form (d-1)(d-2)/2");
  const int64_t d = (3 + root) / 2;
  return static_cast<int>(d);
}

// Fixed points of any involution of a smooth plane curve of degree d >= 4:
// d + (1 - (-1)^d)/2, i.e. d for even d and d + 1 for odd d.
inline int64_t expected_fixed_count(int d) {
  if (d < 4) throw std::invalid_argument("expected_fixed_count: d must be at least 4");
  return d % 2 == 0 ? d : d + 1;
}

// All pairs (D, N) with DN <= dn_cutoff squarefree, D > 1, gcd(D, N) = 1,
// omega(D) even, and genus in the given sorted set; ordered by (DN, D).
// Enumerates squarefree n and splits its prime set into an even-sized D part
// and the rest, so the parity constraint is structural.
inline std::vector<std::pair<curve_label, int64_t>> enumerate_candidates(
    int64_t dn_cutoff, const std::vector<int64_t>& genera) {
  if (dn_cutoff < 6) throw std::invalid_argument("enumerate_candidates: cutoff below 6");
  std::vector<std::pair<curve_label, int64_t>> out;
  std::vector<std::pair<curve_label, int64_t>> same_n;
  for (int64_t n = 6; n <= dn_cutoff; ++n) {
    const factorization f = factor(n);
    if (!f.squarefree() || f.omega() < 2) continue;
    same_n.clear();
    const int k = f.omega();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      const int bits = __builtin_popcount(mask);
      if (bits < 2 || bits % 2 != 0) continue;
      int64_t d = 1;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) d *= f.factors[i].prime;
      curve_label label(d, n / d);
      const int64_t g = genus(label);
      if (std::binary_search(genera.begin(), genera.end(), g))
        same_n.emplace_back(label, g);
    }
    std::sort(same_n.begin(), same_n.end(), [](const auto& x, const auto& y) {
      return x.first.disc() < y.first.disc();
    });
    out.insert(out.end(), same_n.begin(), same_n.end());
  }
  return out;
}

struct fixed_count_check {
  bool passes = false;
  std::vector<int64_t> witnesses;  // involution indices with the wrong count
};

// A degree-d plane model forces every nontrivial w_m to fix exactly
// expected_fixed_count(d) points; collects every m where the count differs.
inline fixed_count_check check_property1(const fixed_point_profile& profile,
                                         int64_t expected, cm_variant v) {
  fixed_count_check result;
  result.passes = true;
  for (const auto& entry : profile.entries) {
    const int64_t count = v == cm_variant::paper ? entry.total_paper : entry.total_strict;
    if (count != expected) {
      result.passes = false;
      result.witnesses.push_back(entry.m);
    }
  }
  return result;
}

struct candidate_record {
  explicit candidate_record(const curve_label& l) : label(l) {}

  curve_label label;
  int64_t genus = 0;
  std::optional<int> degree;              // present iff genus >= 3
  std::optional<int64_t> expected_fixed;  // fixed points a plane model forces
  std::optional<fixed_point_profile> profile;
  std::optional<bool> passes_paper;
  std::optional<bool> passes_strict;
  std::vector<int64_t> witnesses_paper;
  std::vector<int64_t> witnesses_strict;
};

struct scan_params {
  int64_t max_dn = 0;
  int degree_cap = 0;
  int64_t genus_cap = 0;
  int64_t derived_cutoff = 0;  // from dn_cutoff(); reported, never substituted
  cm_variant headline = cm_variant::paper;
};

struct variant_divergence {
  int64_t D = 0;
  int64_t N = 0;
  int64_t m = 0;
  int64_t paper = 0;
  int64_t strict = 0;
};

struct scan_report {
  scan_params params;
  int64_t candidate_count = 0;
  int64_t high_genus_count = 0;  // genus >= 3
  int64_t low_genus_count = 0;   // genus <= 1
  int64_t max_disc = 0;
  int64_t max_level = 0;
  bool verdict_paper = false;
  bool verdict_strict = false;
  std::vector<candidate_record> records;
  std::vector<variant_divergence> diagnostics;

  bool verdict(cm_variant v) const {
    return v == cm_variant::paper ? verdict_paper : verdict_strict;
  }
};

struct scan_config {
  int64_t max_dn = 110'011;
  int degree_cap = 0;  // 0: derive via max_plane_degree()
  cm_variant headline = cm_variant::paper;
  int jobs = 1;
  int64_t cutoff_search_limit = 1'000'000;
};

namespace detail {

template <typename Fn>
void parallel_for_index(size_t count, int jobs, Fn&& fn) {
  if (jobs < 2 || count < 2) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    size_t i;
    while (!failed.load(std::memory_order_relaxed) &&
           (i = next.fetch_add(1)) < count) {
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Runs the whole pipeline. The enumeration always uses config.max_dn (the
// derived cutoff is only reported), low-genus candidates skip the fixed-point
// computation, and the result is a deterministic function of the config: the
// jobs count only partitions work over identical per-candidate computations.
inline scan_report run_scan(const scan_config& config = {}) {
  scan_report report;
  const int degree_cap = config.degree_cap > 0 ? config.degree_cap : max_plane_degree();
  const std::vector<int64_t> genera = admissible_genera(degree_cap);
  report.params.max_dn = config.max_dn;
  report.params.degree_cap = degree_cap;
  report.params.genus_cap = genera.back();
  report.params.headline = config.headline;
  report.params.derived_cutoff =
      dn_cutoff(report.params.genus_cap, config.cutoff_search_limit);

  for (auto& [label, g] : enumerate_candidates(config.max_dn, genera)) {
    candidate_record rec(label);
    rec.genus = g;
    if (g >= 3) {
      rec.degree = degree_from_genus(g);
      rec.expected_fixed = expected_fixed_count(*rec.degree);
    }
    report.records.push_back(std::move(rec));
  }

  detail::parallel_for_index(
      report.records.size(), config.jobs, [&](size_t i) {
        candidate_record& rec = report.records[i];
        if (rec.genus < 3) return;
        rec.profile.emplace(rec.label);
        const auto paper =
            check_property1(*rec.profile, *rec.expected_fixed, cm_variant::paper);
        const auto strict =
            check_property1(*rec.profile, *rec.expected_fixed, cm_variant::strict);
        rec.passes_paper = paper.passes;
        rec.passes_strict = strict.passes;
        rec.witnesses_paper = paper.witnesses;
        rec.witnesses_strict = strict.witnesses;
      });

  report.candidate_count = static_cast<int64_t>(report.records.size());
  report.verdict_paper = true;
  report.verdict_strict = true;
  for (const auto& rec : report.records) {
    if (rec.genus >= 3)
      ++report.high_genus_count;
    else
      ++report.low_genus_count;
    report.max_disc = std::max(report.max_disc, rec.label.disc());
    report.max_level = std::max(report.max_level, rec.label.level());
    if (rec.passes_paper.value_or(false)) report.verdict_paper = false;
    if (rec.passes_strict.value_or(false)) report.verdict_strict = false;
    if (rec.profile)
      for (const auto& entry : rec.profile->entries)
        if (entry.divergent())
          report.diagnostics.push_back({rec.label.disc(), rec.label.level(), entry.m,
                                        entry.total_paper, entry.total_strict});
  }
  return report;
}

}  // namespace x0dn
