#include "dispgrid/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dispgrid/bounds.hpp"
#include "dispgrid/construct.hpp"
#include "dispgrid/io.hpp"
#include "dispgrid/partition.hpp"
#include "dispgrid/probability.hpp"
#include "dispgrid/rng.hpp"

namespace dispgrid {

namespace {

std::string fmt_double(double x) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, end);
}

std::string fmt_long_double(long double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.18Lg", x);
  return buffer;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::jsonl: return "jsonl";
    case OutputFormat::text: return "text";
  }
  return "csv";
}

bool uses_grid(const std::string& sub) { return sub == "gen" || sub == "mc" || sub == "min-n"; }

GridParams resolved_grid(const RunConfig& config) {
  if (config.k) return GridParams(*config.k);
  return k_from_epsilon(*config.eps);
}

}  // namespace

std::string RunConfig::echo() const {
  std::string out = subcommand;
  const auto add = [&](const std::string& flag, const std::string& value) { out += " --" + flag + " " + value; };
  if (k) add("k", std::to_string(*k));
  if (eps) add("eps", fmt_double(*eps));
  const auto& s = subcommand;
  if (s == "gen" || s == "mc" || s == "min-n") add("d", std::to_string(d));
  if (s == "gen" || s == "mc") add("n", std::to_string(n));
  if (s == "gen" || s == "mc" || s == "min-n") add("seed", std::to_string(seed));
  if (s == "gen") add("max-attempts", std::to_string(max_attempts));
  if (s == "mc" || s == "min-n") add("trials", std::to_string(trials));
  if (s == "min-n") {
    add("target", fmt_double(target));
    add("max-n", std::to_string(max_n));
  }
  if (s == "certify" || s == "disp") add("in", in_path);
  if (s == "disp") add("mode", mode == SearchMode::pruned ? "pruned" : "exhaustive");
  if (s == "bounds") {
    add("eps-list", join(eps_list));
    add("d-list", join(d_list));
  }
  if (s == "prob-audit" || s == "count-audit") {
    add("k-list", join(k_list));
    add("d-list", join(d_list));
  }
  if (s == "ineq-check") {
    add("k-min", std::to_string(k_min));
    add("k-max", std::to_string(k_max));
  }
  if (s == "mc" || s == "bounds") add("format", format_name(format));
  if (confirm_exact) out += " --confirm-exact";
  add("guard", guard.limit == EnumerationGuard::unlimited().limit ? "off" : std::to_string(guard.limit));
  return out;
}

RunConfig parse_cli(int argc, const char* const* argv) {
  RunConfig config;
  CLI::App app{"Dispersion point sets on dyadic grids: construction, certification and bound audits",
               "dispgrid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::optional<std::uint64_t> guard_limit;
  bool no_guard = false;
  std::string format = "csv";
  std::string mode = "exhaustive";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--guard", guard_limit, "Enumeration limit (default 1e8 or $DISPGRID_GUARD)");
    sub->add_flag("--no-guard", no_guard, "Disable enumeration limits");
    sub->add_option("--threads", config.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--out", config.out_path, "Output file (default stdout)");
  };
  const auto add_grid = [&](CLI::App* sub) {
    auto* k = sub->add_option("--k", config.k, "Grid resolution k (2^-k <= eps < 2^-k+1)")
                  ->check(CLI::Range(GridParams::kMinK, GridParams::kMaxK));
    auto* eps = sub->add_option("--eps", config.eps, "Target dispersion eps in (0, 1/2)");
    k->excludes(eps);
    eps->excludes(k);
  };

  auto* gen = app.add_subcommand("gen", "Sample until the dispersion certificate passes and write the point set");
  add_grid(gen);
  gen->add_option("--d", config.d, "Dimension")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  gen->add_option("--n", config.n, "Number of points")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", config.seed, "Master seed")->required();
  gen->add_option("--max-attempts", config.max_attempts, "Sampling attempts")->check(CLI::PositiveNumber);
  gen->add_flag("--confirm-exact", config.confirm_exact, "Confirm with the exact largest-empty-box search");
  add_common(gen);

  auto* certify = app.add_subcommand("certify", "Check a grid point set against every core box");
  certify->add_option("--in", config.in_path, "Point-set file")->required();
  certify->add_option("--k", config.k, "Expected grid resolution")->check(CLI::Range(GridParams::kMinK, GridParams::kMaxK));
  certify->add_flag("--confirm-exact", config.confirm_exact, "On failure, compute the exact dispersion");
  add_common(certify);

  auto* disp = app.add_subcommand("disp", "Exact dispersion (largest empty box) of a point set");
  disp->add_option("--in", config.in_path, "Point-set file")->required();
  disp->add_option("--mode", mode, "Search mode")->check(CLI::IsMember({"exhaustive", "pruned"}));
  add_common(disp);

  auto* mc = app.add_subcommand("mc", "Monte Carlo success rate of the certificate");
  add_grid(mc);
  mc->add_option("--d", config.d, "Dimension")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  mc->add_option("--n", config.n, "Number of points")->required()->check(CLI::PositiveNumber);
  mc->add_option("--trials", config.trials, "Trials")->required()->check(CLI::PositiveNumber);
  mc->add_option("--seed", config.seed, "Master seed")->required();
  mc->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  add_common(mc);

  auto* min_n = app.add_subcommand("min-n", "Smallest n reaching a target certificate success rate");
  add_grid(min_n);
  min_n->add_option("--d", config.d, "Dimension")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  min_n->add_option("--target", config.target, "Target success rate in (0,1)")
      ->check(CLI::Range(0.0, 1.0));
  min_n->add_option("--trials", config.trials, "Trials per n")->required()->check(CLI::PositiveNumber);
  min_n->add_option("--seed", config.seed, "Master seed")->required();
  min_n->add_option("--max-n", config.max_n, "Search cap")->check(CLI::PositiveNumber);
  add_common(min_n);

  auto* bounds = app.add_subcommand("bounds", "Table of closed-form sample-size bounds");
  bounds->add_option("--eps-list", config.eps_list, "Comma-separated eps values")->required()->delimiter(',');
  bounds->add_option("--d-list", config.d_list, "Comma-separated dimensions")->required()->delimiter(',');
  bounds->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  add_common(bounds);

  auto* prob = app.add_subcommand("prob-audit", "Audit core-box hit probabilities against 2^-k-4");
  config.k_list = {2, 3};
  config.d_list = {1, 2, 3};
  prob->add_option("--k-list", config.k_list, "Comma-separated k values")->delimiter(',');
  prob->add_option("--d-list", config.d_list, "Comma-separated dimensions")->delimiter(',');
  add_common(prob);

  auto* count = app.add_subcommand("count-audit", "Exact feasible class counts against the counting bounds");
  count->add_option("--k-list", config.k_list, "Comma-separated k values")->delimiter(',');
  count->add_option("--d-list", config.d_list, "Comma-separated dimensions")->delimiter(',');
  add_common(count);

  auto* ineq = app.add_subcommand("ineq-check", "Evaluate the key inequality for a range of k");
  ineq->add_option("--k-min", config.k_min, "Smallest k")->check(CLI::Range(2, 40));
  ineq->add_option("--k-max", config.k_max, "Largest k")->check(CLI::Range(2, 40));
  add_common(ineq);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), true);
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError(app.help("", CLI::AppFormatMode::All), true);
  } catch (const CLI::CallForVersion&) {
    throw UsageError(std::string(kVersion) + "\n", true);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (auto* sub : app.get_subcommands()) {
    config.subcommand = sub->get_name();
    if (sub->get_help_ptr() != nullptr && sub->get_help_ptr()->count() > 0) {
      throw UsageError(sub->help(), true);
    }
  }

  if (uses_grid(config.subcommand) && !config.k && !config.eps) {
    throw UsageError("--k or --eps is required for " + config.subcommand);
  }
  if (config.eps) {
    try {
      (void)k_from_epsilon(*config.eps);
    } catch (const std::domain_error& e) {
      throw UsageError(std::string("--eps: ") + e.what());
    }
  }
  if (config.subcommand == "min-n" && !(config.target > 0.0 && config.target < 1.0)) {
    throw UsageError("--target must lie strictly between 0 and 1");
  }
  if (config.subcommand == "bounds") {
    for (auto e : config.eps_list) {
      if (!(e > 0.0 && e < 0.5)) throw UsageError("--eps-list: " + fmt_double(e) + " outside (0, 1/2)");
    }
    for (auto d : config.d_list) {
      if (d < 2) throw UsageError("--d-list: dimensions must be at least 2");
    }
  }
  if (config.subcommand == "prob-audit" || config.subcommand == "count-audit") {
    for (auto k : config.k_list) {
      if (k < GridParams::kMinK || k > GridParams::kMaxK) throw UsageError("--k-list: k=" + std::to_string(k) + " out of range");
    }
    for (auto d : config.d_list) {
      if (d < 1) throw UsageError("--d-list: dimensions must be at least 1");
    }
  }
  if (config.subcommand == "ineq-check" && config.k_min > config.k_max) {
    throw UsageError("--k-min must not exceed --k-max");
  }
  config.format = format == "jsonl" ? OutputFormat::jsonl : OutputFormat::csv;
  if (config.subcommand == "certify" || config.subcommand == "disp" || config.subcommand == "gen") {
    config.format = OutputFormat::text;
  }
  config.mode = mode == "pruned" ? SearchMode::pruned : SearchMode::exhaustive;

  try {
    config.guard = no_guard ? EnumerationGuard::unlimited()
                            : guard_limit ? EnumerationGuard{*guard_limit}
                                          : EnumerationGuard::from_environment();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

namespace {

std::vector<std::string> metadata(const RunConfig& config) {
  std::vector<std::string> lines{std::string("dispgrid ") + kVersion, "command: " + config.echo()};
  if (uses_grid(config.subcommand)) {
    const auto grid = resolved_grid(config);
    std::string line = "k=" + std::to_string(grid.k());
    if (config.eps) line += " eps=" + fmt_double(*config.eps);
    lines.push_back(line);
    lines.push_back("master_seed=" + std::to_string(config.seed));
    lines.push_back(std::string("generator: ") + kGeneratorDescription);
  }
  return lines;
}

void write_csv_metadata(std::ostream& out, const RunConfig& config) {
  for (const auto& line : metadata(config)) out << "# " << line << '\n';
}

nlohmann::json json_metadata(const RunConfig& config) {
  return {{"type", "meta"}, {"lines", metadata(config)}};
}

int run_gen(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto grid = resolved_grid(config);
  std::optional<GeneratedSet> found;
  try {
    found = generate_certified(grid, config.d, config.n, config.seed, config.max_attempts, config.guard);
  } catch (const AttemptsExhausted& e) {
    err << "gen: " << e.what() << '\n';
    return kExitCertificateFailed;
  }
  const auto& generated = *found;
  auto lines = metadata(config);
  lines.push_back("attempts=" + std::to_string(generated.attempts) +
                  " attempt_seed=" + std::to_string(generated.attempt_seed));
  lines.push_back("certified: disp <= 2^-" + std::to_string(grid.k()));
  lines.push_back("distinct_points=" + std::to_string(generated.points.distinct_count()));
  if (config.confirm_exact) {
    const auto exact = largest_empty_box(generated.points, {SearchMode::pruned, config.guard});
    lines.push_back("exact_dispersion=" + to_string(exact.volume) + " witness=" + format_box(exact.witness));
  }
  write_point_set(out, generated.points, lines);
  return kExitOk;
}

int run_certify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto points = read_point_set(std::filesystem::path(config.in_path));
  if (points.repr() != Repr::grid) {
    err << "certify: the certificate needs a grid point set\n";
    return kExitUsage;
  }
  const auto grid = *points.grid_params();
  if (config.k && *config.k != grid.k()) {
    err << "certify: file has k=" << grid.k() << " but --k " << *config.k << " was given\n";
    return kExitUsage;
  }
  const auto result = certify_dispersion_leq(points, grid, CertifyOptions{true, config.guard});
  out << "# command: " << config.echo() << '\n';
  out << (result.pass ? "pass" : "fail") << '\n';
  out << "k=" << grid.k() << " d=" << points.dim() << " n=" << points.size()
      << " distinct=" << points.distinct_count() << '\n';
  out << "checked_classes=" << result.checked_classes << '\n';
  if (result.pass) {
    out << "certified: disp <= 2^-" << grid.k() << '\n';
    return kExitOk;
  }
  const auto core = core_box(*result.witness);
  out << "uncovered_class: " << result.witness->to_string() << '\n';
  out << "uncovered_core_box: " << core.to_string() << '\n';
  if (config.confirm_exact) {
    const auto exact = largest_empty_box(points, {SearchMode::pruned, config.guard});
    const bool within = exact.volume <= dyadic(1, static_cast<unsigned>(grid.k()));
    out << "exact_dispersion=" << to_string(exact.volume) << " (" << fmt_double(to_double(exact.volume)) << ")\n";
    out << "exact_witness=" << format_box(exact.witness) << '\n';
    out << "exact_within_bound=" << (within ? "true" : "false") << '\n';
  }
  return kExitCertificateFailed;
}

int run_disp(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto points = read_point_set(std::filesystem::path(config.in_path));
  const auto result = largest_empty_box(points, {config.mode, config.guard});
  out << "# command: " << config.echo() << '\n';
  out << "volume=" << to_string(result.volume) << '\n';
  out << "volume_decimal=" << fmt_double(to_double(result.volume)) << '\n';
  out << "witness=" << format_box(result.witness) << '\n';
  out << "candidate_boxes=" << candidate_box_count(points) << '\n';
  return kExitOk;
}

int run_mc(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto grid = resolved_grid(config);
  const auto s = monte_carlo_success(grid, config.d, config.n, config.trials, config.seed, config.threads,
                                     config.guard);
  if (config.format == OutputFormat::jsonl) {
    out << json_metadata(config).dump() << '\n';
    nlohmann::json row = {{"type", "summary"},
                          {"k", s.k},
                          {"d", s.d},
                          {"n", s.n},
                          {"trials", s.trials},
                          {"successes", s.successes},
                          {"success_rate", s.success_rate},
                          {"ci_lower", s.interval.lower},
                          {"ci_upper", s.interval.upper},
                          {"master_seed", s.master_seed}};
    out << row.dump() << '\n';
    return kExitOk;
  }
  write_csv_metadata(out, config);
  out << "k,d,n,trials,successes,success_rate,ci_lower,ci_upper,master_seed\n";
  out << s.k << ',' << s.d << ',' << s.n << ',' << s.trials << ',' << s.successes << ','
      << fmt_double(s.success_rate) << ',' << fmt_double(s.interval.lower) << ','
      << fmt_double(s.interval.upper) << ',' << s.master_seed << '\n';
  return kExitOk;
}

int run_min_n(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto grid = resolved_grid(config);
  const auto r = empirical_min_n(grid, config.d, config.target, config.trials, config.seed, config.threads,
                                 config.max_n, config.guard);
  write_csv_metadata(out, config);
  out << "k,d,target,trials,n_star,rate_at_n_star,rate_below,n_required,within_n_required\n";
  out << grid.k() << ',' << config.d << ',' << fmt_double(config.target) << ',' << config.trials << ','
      << r.n_star << ',' << fmt_double(r.rate_at_n_star) << ',' << fmt_double(r.rate_below) << ','
      << (r.n_required ? std::to_string(*r.n_required) : "") << ','
      << (r.within_n_required ? "true" : "false") << '\n';
  return kExitOk;
}

int run_bounds(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto rows = bounds_table(config.eps_list, config.d_list);
  if (config.format == OutputFormat::jsonl) {
    out << json_metadata(config).dump() << '\n';
    for (const auto& r : rows) {
      nlohmann::json row = {{"type", "row"},         {"eps", r.eps},
                            {"d", r.d},              {"k", r.k},
                            {"n_required", r.n_required}, {"N_theorem1", r.n_theorem1},
                            {"N_abstract", r.n_abstract}, {"N_rudolf", r.n_rudolf},
                            {"better", r.better},    {"A_k", r.a_k},
                            {"A_k_gt_d", r.a_k_exceeds_d}};
      out << row.dump() << '\n';
    }
    return kExitOk;
  }
  write_csv_metadata(out, config);
  out << "eps,d,k,n_required,N_theorem1,N_abstract,N_rudolf,better,A_k,A_k_gt_d\n";
  for (const auto& r : rows) {
    out << fmt_double(r.eps) << ',' << r.d << ',' << r.k << ',' << r.n_required << ','
        << fmt_double(r.n_theorem1) << ',' << fmt_double(r.n_abstract) << ',' << fmt_double(r.n_rudolf)
        << ',' << r.better << ',' << fmt_double(r.a_k) << ',' << (r.a_k_exceeds_d ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int run_prob_audit(const RunConfig& config, std::ostream& out, std::ostream&) {
  write_csv_metadata(out, config);
  out << "k,d,min_hit_probability,bound,pass\n";
  bool all = true;
  for (auto k : config.k_list) {
    for (auto d : config.d_list) {
      const auto report = audit_lemma1(GridParams(k), d, config.guard);
      all = all && report.pass();
      out << k << ',' << d << ',' << to_string(report.min_hit_probability) << ','
          << to_string(report.lower_bound) << ',' << (report.pass() ? "true" : "false") << '\n';
    }
  }
  return all ? kExitOk : kExitAuditFailed;
}

int run_count_audit(const RunConfig& config, std::ostream& out, std::ostream&) {
  write_csv_metadata(out, config);
  out << "k,d,exact_feasible_count,sum_paper_p_count,ln_pair_count_bound\n";
  for (auto k : config.k_list) {
    for (auto d : config.d_list) {
      const auto row = count_audit(GridParams(k), d, config.guard);
      out << row.k << ',' << row.d << ',' << row.exact_feasible_count << ',' << row.sum_paper_p_count.str()
          << ',' << fmt_double(row.ln_pair_count_bound) << '\n';
    }
  }
  return kExitOk;
}

int run_ineq_check(const RunConfig& config, std::ostream& out, std::ostream&) {
  write_csv_metadata(out, config);
  out << "k,lhs_min,rhs,margin,pass\n";
  bool all = true;
  for (int k = config.k_min; k <= config.k_max; ++k) {
    const auto r = check_key_inequality(GridParams(k));
    all = all && r.holds;
    out << k << ',' << fmt_long_double(r.lhs_min) << ',' << fmt_long_double(r.rhs) << ','
        << fmt_long_double(r.margin) << ',' << (r.holds ? "true" : "false") << '\n';
  }
  return all ? kExitOk : kExitAuditFailed;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& s = config.subcommand;
  if (s == "gen") return run_gen(config, out, err);
  if (s == "certify") return run_certify(config, out, err);
  if (s == "disp") return run_disp(config, out, err);
  if (s == "mc") return run_mc(config, out, err);
  if (s == "min-n") return run_min_n(config, out, err);
  if (s == "bounds") return run_bounds(config, out, err);
  if (s == "prob-audit") return run_prob_audit(config, out, err);
  if (s == "count-audit") return run_count_audit(config, out, err);
  if (s == "ineq-check") return run_ineq_check(config, out, err);
  err << "unknown subcommand " << s << '\n';
  return kExitUsage;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.out_path.empty()) return dispatch(config, out, err);
    std::ostringstream buffer;
    const int code = dispatch(config, buffer, err);
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) throw IoError("cannot open " + config.out_path + " for writing");
    file << buffer.str();
    if (!file) throw IoError("failed writing " + config.out_path);
    return code;
  } catch (const GuardExceeded& e) {
    err << config.subcommand << ": " << e.what() << '\n';
    return kExitGuardExceeded;
  } catch (const IoError& e) {
    err << config.subcommand << ": " << e.what() << '\n';
    return kExitIoError;
  } catch (const ParseError& e) {
    err << config.subcommand << ": " << config.in_path << ": " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::exception& e) {
    err << config.subcommand << ": " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace dispgrid
