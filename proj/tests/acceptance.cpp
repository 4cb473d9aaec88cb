// Acceptance suite: end-to-end checks of the classification pipeline against
// its published tallies and the internal cross-checks. One line per
// criterion; exit status 0 iff all pass.

#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "x0dn/report.hpp"

using namespace x0dn;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::printf("[%2d] %s  %s%s%s\n", id, ok ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

using pair_set = std::set<std::pair<int64_t, int64_t>>;

pair_set labels_of(const std::vector<std::pair<curve_label, int64_t>>& candidates) {
  pair_set out;
  for (const auto& [label, g] : candidates) out.insert({label.disc(), label.level()});
  return out;
}

const pair_set genus_zero_pairs = {{6, 1}, {10, 1}, {22, 1}};
const pair_set genus_one_pairs = {{14, 1}, {15, 1}, {21, 1}, {6, 5},  {10, 3}, {33, 1},
                                  {34, 1}, {6, 7},  {46, 1}, {10, 7}, {6, 13}};

// every squarefree label (D, N) with DN <= bound, any genus
std::vector<curve_label> squarefree_labels_up_to(int64_t bound) {
  std::vector<curve_label> out;
  for (int64_t d = 6; d <= bound; ++d) {
    const auto fd = factor(d);
    if (!fd.squarefree() || fd.omega() % 2 != 0 || fd.omega() == 0) continue;
    for (int64_t n = 1; d * n <= bound; ++n) {
      if (std::gcd(d, n) != 1 || !is_squarefree(n)) continue;
      out.emplace_back(d, n);
    }
  }
  return out;
}

}  // namespace

int main() {
  const scan_config default_config;
  scan_report report = run_scan(default_config);

  criterion(1, "genus-0 pairs with squarefree DN <= 110011 are (6,1),(10,1),(22,1)",
            [&](std::string& detail) {
              const auto found = labels_of(enumerate_candidates(default_config.max_dn, {0}));
              detail = std::to_string(found.size()) + " pairs";
              return found == genus_zero_pairs;
            });

  criterion(2, "genus-1 pairs with squarefree DN <= 110011 are the known eleven",
            [&](std::string& detail) {
              const auto found = labels_of(enumerate_candidates(default_config.max_dn, {1}));
              detail = std::to_string(found.size()) + " pairs";
              return found == genus_one_pairs;
            });

  criterion(3, "tallies: candidates=312 high=298 low=14 max_D=6990 max_N=1033",
            [&](std::string& detail) {
              detail = "candidates=" + std::to_string(report.candidate_count) +
                       " high=" + std::to_string(report.high_genus_count) +
                       " low=" + std::to_string(report.low_genus_count) +
                       " max_D=" + std::to_string(report.max_disc) +
                       " max_N=" + std::to_string(report.max_level);
              return report.candidate_count == 312 && report.high_genus_count == 298 &&
                     report.low_genus_count == 14 && report.max_disc == 6990 &&
                     report.max_level == 1033;
            });

  criterion(4, "every high-genus candidate fails the plane fixed-point count, both variants",
            [&](std::string& detail) {
              int64_t high_failing_paper = 0, high_failing_strict = 0;
              for (const auto& rec : report.records) {
                if (rec.genus < 3) continue;
                if (!rec.passes_paper.value_or(true)) ++high_failing_paper;
                if (!rec.passes_strict.value_or(true)) ++high_failing_strict;
              }
              bool confined = true;
              for (const auto& d : report.diagnostics)
                if (d.m % 4 != 3 || d.D % 2 != 0) confined = false;
              detail = "failing: paper=" + std::to_string(high_failing_paper) +
                       " strict=" + std::to_string(high_failing_strict) +
                       " divergences=" + std::to_string(report.diagnostics.size()) +
                       (confined ? " (confined)" : " (NOT confined)");
              return report.verdict_paper && report.verdict_strict &&
                     high_failing_paper == report.high_genus_count &&
                     high_failing_strict == report.high_genus_count && confined;
            });

  criterion(5, "degree cap 21 and admissible genus cap 190",
            [&](std::string& detail) {
              const int d = max_plane_degree();
              const auto genera = admissible_genera(d);
              detail = "d=" + std::to_string(d) + " genus_cap=" + std::to_string(genera.back());
              return d == 21 && genera.back() == 190 && genera.size() == 20;
            });

  criterion(6, "genus lower bound exceeds 190 for every DN in (110011, 10^6]",
            [&](std::string& detail) {
              int64_t violations = 0;
              double min_seen = 1e308;
              for (int64_t x = 110'012; x <= 1'000'000; ++x) {
                const double b = genus_lower_bound(x);
                if (b <= 190.0) ++violations;
                if (b < min_seen) min_seen = b;
              }
              detail = "min=" + std::to_string(min_seen);
              return violations == 0;
            });

  criterion(7, "form-count and conductor-formula class numbers agree on [-10^4, -3]",
            [&](std::string& detail) {
              int64_t checked = 0;
              for (int64_t disc = -3; disc >= -10'000; --disc) {
                if (!is_discriminant(disc)) continue;
                ++checked;
                if (class_number(disc) != class_number_via_conductor(disc)) {
                  detail = "mismatch at disc " + std::to_string(disc);
                  return false;
                }
              }
              detail = std::to_string(checked) + " discriminants";
              return true;
            });

  criterion(8, "e_4 and e_3 equal the CM counts for disc -4 and -3 up to DN = 1000",
            [&](std::string& detail) {
              const auto z_i = split_discriminant(-4);
              const auto z_omega = split_discriminant(-3);
              int64_t checked = 0;
              for (const auto& label : squarefree_labels_up_to(1000)) {
                ++checked;
                for (auto v : {cm_variant::paper, cm_variant::strict}) {
                  if (cm_count(label, z_i, v) != elliptic_count(label, 4) ||
                      cm_count(label, z_omega, v) != elliptic_count(label, 3)) {
                    detail = "mismatch at D=" + std::to_string(label.disc()) +
                             " N=" + std::to_string(label.level());
                    return false;
                  }
                }
              }
              detail = std::to_string(checked) + " labels";
              return true;
            });

  criterion(9, "strict counts: two fixed points on genus zero, Riemann-Hurwitz up to DN = 3000",
            [&](std::string& detail) {
              for (const auto& [d, n] : genus_zero_pairs) {
                const curve_label label(d, n);
                for (const auto& entry : fixed_point_profile(label).entries)
                  if (entry.total_strict != 2) {
                    detail = "genus-0 violation at D=" + std::to_string(d) +
                             " m=" + std::to_string(entry.m);
                    return false;
                  }
              }
              int64_t checked = 0;
              for (const auto& label : squarefree_labels_up_to(3000)) {
                const int64_t g = genus(label);
                for (const auto& entry : fixed_point_profile(label).entries) {
                  ++checked;
                  const int64_t r = entry.total_strict;
                  if (r % 2 != 0 || r < 0 || r > 2 * g + 2 || (2 * g + 2 - r) % 4 != 0) {
                    detail = "violation at D=" + std::to_string(label.disc()) +
                             " N=" + std::to_string(label.level()) +
                             " m=" + std::to_string(entry.m) + " r=" + std::to_string(r);
                    return false;
                  }
                }
              }
              detail = std::to_string(checked) + " involutions";
              return true;
            });

  criterion(10, "verify output is byte-identical across reruns and worker counts",
            [&](std::string& detail) {
              render_options opts;
              opts.format = output_format::json;
              const std::string first = render_json(report, opts);
              const std::string rerun = render_json(run_scan(default_config), opts);
              scan_config parallel = default_config;
              parallel.jobs = static_cast<int>(
                  std::max(2u, std::thread::hardware_concurrency()));
              const std::string threaded = render_json(run_scan(parallel), opts);
              detail = std::to_string(first.size()) + " bytes";
              return first == rerun && first == threaded;
            });

  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
