#pragma once

// Report emitters. All three formats are deterministic functions of the
// report: keys sorted, arrays ordered by (DN, D, m), no environment leakage.
// A timestamp appears only when explicitly requested.

#include <sstream>
#include <string>

#include <json.hpp>

#include "x0dn/scan.hpp"

namespace x0dn {

enum class output_format { table, json, csv };

inline output_format parse_output_format(const std::string& name) {
  if (name == "table") return output_format::table;
  if (name == "json") return output_format::json;
  if (name == "csv") return output_format::csv;
  throw std::invalid_argument("unknown output format: " + name);
}

struct render_options {
  output_format format = output_format::table;
  bool timestamps = false;
  std::string timestamp;  // supplied by the caller; never read from the clock here
};

namespace detail {

// The verdict must be recomputable from the records alone; a mismatch with
// the incrementally assembled flags means the report is corrupt.
inline void recheck_verdicts(const scan_report& report) {
  bool paper = true, strict = true;
  int64_t high = 0, low = 0;
  for (const auto& rec : report.records) {
    (rec.genus >= 3 ? high : low) += 1;
    if (rec.passes_paper.value_or(false)) paper = false;
    if (rec.passes_strict.value_or(false)) strict = false;
  }
  if (paper != report.verdict_paper || strict != report.verdict_strict ||
      high != report.high_genus_count || low != report.low_genus_count ||
      high + low != report.candidate_count)
    throw consistency_error("report serialization: tallies disagree with records");
}

inline std::string join(const std::vector<int64_t>& xs, char sep) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace detail

inline std::string render_json(const scan_report& report, const render_options& opts) {
  detail::recheck_verdicts(report);
  nlohmann::json params{
      {"max_dn", report.params.max_dn},
      {"degree_cap", report.params.degree_cap},
      {"genus_cap", report.params.genus_cap},
      {"derived_dn_cutoff", report.params.derived_cutoff},
      {"variant", to_string(report.params.headline)},
  };
  if (opts.timestamps) params["generated_at"] = opts.timestamp;

  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : report.records) {
    nlohmann::json fixed = nlohmann::json::array();
    if (rec.profile)
      for (const auto& entry : rec.profile->entries)
        fixed.push_back({{"m", entry.m},
                         {"paper", entry.total_paper},
                         {"strict", entry.total_strict}});
    nlohmann::json row{
        {"D", rec.label.disc()},
        {"N", rec.label.level()},
        {"DN", rec.label.dn()},
        {"genus", rec.genus},
        {"degree", rec.degree ? nlohmann::json(*rec.degree) : nlohmann::json()},
        {"expected_fixed",
         rec.expected_fixed ? nlohmann::json(*rec.expected_fixed) : nlohmann::json()},
        {"fixed", std::move(fixed)},
        {"witnesses", rec.witnesses_paper},
    };
    records.push_back(std::move(row));
  }

  nlohmann::json diagnostics = nlohmann::json::array();
  for (const auto& d : report.diagnostics)
    diagnostics.push_back(
        {{"D", d.D}, {"N", d.N}, {"m", d.m}, {"paper", d.paper}, {"strict", d.strict}});

  const nlohmann::json doc{
      {"params", std::move(params)},
      {"summary",
       {{"candidates", report.candidate_count},
        {"high_genus", report.high_genus_count},
        {"low_genus", report.low_genus_count},
        {"max_D", report.max_disc},
        {"max_N", report.max_level},
        {"verdict_paper", report.verdict_paper},
        {"verdict_strict", report.verdict_strict}}},
      {"records", std::move(records)},
      {"diagnostics", std::move(diagnostics)},
  };
  return doc.dump(2) + "\n";
}

inline std::string render_csv(const scan_report& report) {
  detail::recheck_verdicts(report);
  std::string out = "D,N,DN,genus,degree,expected_fixed,pass_paper,pass_strict,witnesses\n";
  for (const auto& rec : report.records) {
    out += std::to_string(rec.label.disc()) + ',' + std::to_string(rec.label.level()) +
           ',' + std::to_string(rec.label.dn()) + ',' + std::to_string(rec.genus) + ',';
    if (rec.degree) out += std::to_string(*rec.degree);
    out += ',';
    if (rec.expected_fixed) out += std::to_string(*rec.expected_fixed);
    out += ',';
    if (rec.passes_paper) out += *rec.passes_paper ? "true" : "false";
    out += ',';
    if (rec.passes_strict) out += *rec.passes_strict ? "true" : "false";
    out += ',';
    out += detail::join(rec.witnesses_paper, ';');
    out += '\n';
  }
  return out;
}

inline std::string render_table(const scan_report& report, const render_options& opts) {
  detail::recheck_verdicts(report);
  std::ostringstream out;
  out << "scan: max-dn=" << report.params.max_dn
      << " degree-cap=" << report.params.degree_cap
      << " genus-cap=" << report.params.genus_cap
      << " derived-cutoff=" << report.params.derived_cutoff
      << " variant=" << to_string(report.params.headline) << '\n';
  if (opts.timestamps) out << "generated-at=" << opts.timestamp << '\n';
  const bool headline = report.verdict(report.params.headline);
  out << "candidates=" << report.candidate_count << " high=" << report.high_genus_count
      << " low=" << report.low_genus_count << " verdict=" << (headline ? "PASS" : "FAIL")
      << '\n';
  out << "max_D=" << report.max_disc << " max_N=" << report.max_level << '\n';
  out << "verdict_paper=" << (report.verdict_paper ? "PASS" : "FAIL")
      << " verdict_strict=" << (report.verdict_strict ? "PASS" : "FAIL") << '\n';
  if (report.diagnostics.empty()) {
    out << "variant divergences: none\n";
  } else {
    out << "variant divergences: " << report.diagnostics.size() << '\n';
    for (const auto& d : report.diagnostics)
      out << "  D=" << d.D << " N=" << d.N << " m=" << d.m << " paper=" << d.paper
          << " strict=" << d.strict << '\n';
  }
  return out.str();
}

inline std::string render_report(const scan_report& report, const render_options& opts) {
  switch (opts.format) {
    case output_format::json:
      return render_json(report, opts);
    case output_format::csv:
      return render_csv(report);
    case output_format::table:
      return render_table(report, opts);
  }
  throw std::logic_error("unreachable");
}

}  // namespace x0dn
