// x0dn: arithmetic of Shimura curves X_0^D(N) from the command line.
//
//   genus D N     genus and elliptic point counts of one curve
//   classno -- d  class number of the imaginary quadratic order of disc d
//   fixed D N [m] Atkin-Lehner fixed point counts, both formula variants
//   verify        enumerate all candidate pairs and test the smooth plane
//                 model obstruction; exit 0 iff no candidate survives
//
// Exit codes: 0 success / verdict pass, 1 verdict fail, 2 usage error,
// 3 internal consistency fault.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "x0dn/report.hpp"

namespace {

constexpr const char* cache_env_var = "X0DN_CACHE";

std::string active_cache_path(const std::string& flag_value) {
  const char* env = std::getenv(cache_env_var);
  if (env && *env) return env;  // environment wins over the flag
  return flag_value;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_genus(int64_t d, int64_t n) {
  const x0dn::curve_label label(d, n);
  std::cout << "D=" << d << " N=" << n << " g=" << x0dn::genus(label)
            << " e4=" << x0dn::elliptic_count(label, 4)
            << " e3=" << x0dn::elliptic_count(label, 3) << '\n';
  return 0;
}

int cmd_classno(int64_t disc) {
  if (!x0dn::is_discriminant(disc))
    throw std::invalid_argument("not a discriminant: " + std::to_string(disc) +
                                " (need disc < 0 with disc = 0,1 mod 4)");
  std::cout << "h(" << disc << ") = " << x0dn::class_number(disc) << '\n';
  return 0;
}

void print_involution(const x0dn::involution_fixed_points& entry) {
  std::cout << "m=" << entry.m;
  for (const auto& oc : entry.orders)
    std::cout << "  disc=" << oc.order.disc << " paper=" << oc.paper
              << " strict=" << oc.strict;
  std::cout << "  total: paper=" << entry.total_paper << " strict=" << entry.total_strict;
  if (entry.divergent()) std::cout << "  DIVERGENT";
  std::cout << '\n';
}

int cmd_fixed(int64_t d, int64_t n, int64_t m) {
  const x0dn::curve_label label(d, n);
  if (!label.squarefree_level())
    throw std::invalid_argument("fixed: level N must be squarefree");
  std::cout << "D=" << d << " N=" << n << " g=" << x0dn::genus(label) << '\n';
  const x0dn::fixed_point_profile profile(label);
  if (m == 0) {
    for (const auto& entry : profile.entries) print_involution(entry);
    return 0;
  }
  x0dn::atkin_lehner_index w(label, m);  // validates m
  for (const auto& entry : profile.entries)
    if (entry.m == w.m) print_involution(entry);
  return 0;
}

struct verify_options {
  x0dn::scan_config config;
  std::string variant = "paper";
  std::string format = "table";
  std::string out_path;
  std::string cache_path;
  bool timestamps = false;
};

int cmd_verify(const verify_options& opts) {
  x0dn::scan_config config = opts.config;
  config.headline = opts.variant == "strict" ? x0dn::cm_variant::strict
                                             : x0dn::cm_variant::paper;
  const std::string cache = active_cache_path(opts.cache_path);
  if (!cache.empty()) x0dn::class_number_cache::global().load_file_if_exists(cache);

  const x0dn::scan_report report = x0dn::run_scan(config);
  if (!cache.empty()) x0dn::class_number_cache::global().save_file(cache);

  x0dn::render_options render;
  render.format = x0dn::parse_output_format(opts.format);
  render.timestamps = opts.timestamps;
  if (render.timestamps) render.timestamp = utc_timestamp();
  const std::string text = x0dn::render_report(report, render);

  if (opts.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write output file: " + opts.out_path);
    out << text;
  }
  return report.verdict(config.headline) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arithmetic of Shimura curves X_0^D(N): genus, class numbers, "
               "Atkin-Lehner fixed points, smooth plane model verification"};
  app.require_subcommand(1);

  int64_t genus_d = 0, genus_n = 0;
  auto* genus_cmd = app.add_subcommand("genus", "genus and elliptic point counts");
  genus_cmd->add_option("D", genus_d, "quaternion discriminant")->required();
  genus_cmd->add_option("N", genus_n, "level")->required();

  int64_t classno_disc = 0;
  auto* classno_cmd =
      app.add_subcommand("classno", "class number of an imaginary quadratic order");
  classno_cmd->add_option("disc", classno_disc, "negative discriminant (pass after --)")
      ->required();

  int64_t fixed_d = 0, fixed_n = 0, fixed_m = 0;
  auto* fixed_cmd =
      app.add_subcommand("fixed", "Atkin-Lehner fixed point counts, both variants");
  fixed_cmd->add_option("D", fixed_d, "quaternion discriminant")->required();
  fixed_cmd->add_option("N", fixed_n, "squarefree level")->required();
  fixed_cmd->add_option("m", fixed_m, "involution index (default: all)");

  verify_options vopts;
  auto* verify_cmd =
      app.add_subcommand("verify", "run the full smooth plane model verification");
  verify_cmd->add_option("--max-dn", vopts.config.max_dn, "enumeration cutoff for DN")
      ->capture_default_str();
  verify_cmd->add_option("--degree-cap", vopts.config.degree_cap,
                         "plane degree cap (0: derive from the gonality bound)")
      ->capture_default_str();
  verify_cmd->add_option("--variant", vopts.variant, "verdict variant for the exit code")
      ->check(CLI::IsMember({"paper", "strict"}))
      ->capture_default_str();
  verify_cmd->add_option("--format", vopts.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  verify_cmd->add_option("--out", vopts.out_path, "write the report to a file");
  verify_cmd->add_option("--jobs", vopts.config.jobs,
                         "worker threads (0: hardware concurrency); never affects output")
      ->capture_default_str();
  verify_cmd->add_option("--cache", vopts.cache_path,
                         "class number cache file (env " + std::string(cache_env_var) +
                             " overrides)");
  verify_cmd->add_flag("--timestamps", vopts.timestamps,
                       "include a generation timestamp in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (genus_cmd->parsed()) return cmd_genus(genus_d, genus_n);
    if (classno_cmd->parsed()) return cmd_classno(classno_disc);
    if (fixed_cmd->parsed()) return cmd_fixed(fixed_d, fixed_n, fixed_m);
    if (verify_cmd->parsed()) {
      if (vopts.config.jobs == 0)
        vopts.config.jobs =
            static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      if (vopts.config.jobs < 0) throw std::invalid_argument("--jobs must be nonnegative");
      return cmd_verify(vopts);
    }
  } catch (const x0dn::consistency_error& e) {
    std::cerr << "consistency fault: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
