// Command-line frontend: exact and asymptotic odds-ratio confidence
// intervals, outcome distributions, coverage curves.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "orci/orci.hpp"

namespace {

using nlohmann::json;

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string level_str(double gamma) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", gamma);
  return buf;
}

// 5 decimals for endpoints, "Inf" for an unbounded right end
std::string endpoint_text(double v) { return std::isinf(v) ? "Inf" : fixed(v, 5); }

json finite_or_null(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw orci::domain_error("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& stream() { return *os; }
};

void print_interval(std::ostream& os, const std::string& format, const std::string& method,
                    const orci::OrInterval& iv, const orci::TwoArmCounts& c, double gamma) {
  const double or_hat = orci::extended_or(c).value();
  if (format == "json") {
    json j;
    j["left"] = iv.left;
    j["right"] = finite_or_null(iv.right);
    j["level"] = gamma;
    j["or_hat"] = finite_or_null(or_hat);
    j["n_a"] = c.n_a;
    j["n_b"] = c.n_b;
    j["method"] = method;
    os << j.dump() << "\n";
  } else if (format == "csv") {
    os << "left,right,level,or_hat,n_a,n_b,method\n";
    os << full(iv.left) << "," << (std::isinf(iv.right) ? "" : full(iv.right)) << ","
       << level_str(gamma) << "," << (std::isinf(or_hat) ? "" : full(or_hat)) << "," << c.n_a
       << "," << c.n_b << "," << method << "\n";
  } else {
    os << "Confidence interval for odds ratio (" << endpoint_text(iv.left) << ", "
       << endpoint_text(iv.right) << ") at the confidence level " << level_str(gamma) << "\n";
    os << "Sample odds ratio equals " << (std::isinf(or_hat) ? "Inf" : fixed(or_hat, 4))
       << "; n1=" << c.n_a << ", n2=" << c.n_b << "\n";
  }
}

void print_dist(std::ostream& os, const std::string& format,
                const orci::OutcomeDistribution& dist) {
  if (format == "json") {
    json entries = json::array();
    for (const auto& e : dist.entries()) {
      entries.push_back({{"n_a1", e.counts.n_a1},
                         {"n_b1", e.counts.n_b1},
                         {"or_hat", finite_or_null(e.or_hat.value())},
                         {"prob", e.prob}});
    }
    json j{{"r", dist.r()}, {"n_a", dist.n_a()}, {"n_b", dist.n_b()}, {"entries", entries}};
    os << j.dump() << "\n";
  } else if (format == "csv") {
    os << "n_a1,n_b1,or_hat,prob\n";
    for (const auto& e : dist.entries()) {
      const double v = e.or_hat.value();
      os << e.counts.n_a1 << "," << e.counts.n_b1 << "," << (std::isinf(v) ? "" : full(v))
         << "," << full(e.prob) << "\n";
    }
  } else {
    os << "outcome distribution at r=" << level_str(dist.r()) << ", n1=" << dist.n_a()
       << ", n2=" << dist.n_b() << "\n";
    os << "n_a1  n_b1  or_hat        prob\n";
    for (const auto& e : dist.entries()) {
      char line[128];
      const double v = e.or_hat.value();
      std::snprintf(line, sizeof(line), "%4d  %4d  %-12s  %.10g\n", e.counts.n_a1,
                    e.counts.n_b1, std::isinf(v) ? "Inf" : fixed(v, 6).c_str(), e.prob);
      os << line;
    }
  }
}

void print_curve(std::ostream& os, const std::string& format, const orci::CoverageCurve& curve) {
  if (format == "json") {
    json points = json::array();
    for (const auto& p : curve.points) points.push_back({{"r", p.r}, {"coverage", p.coverage}});
    json j{{"method", curve.method == orci::CoverageMethod::exact_m ? "exact" : "standard"},
           {"n_a", curve.n_a},
           {"n_b", curve.n_b},
           {"level", curve.level},
           {"points", points}};
    os << j.dump() << "\n";
  } else {
    os << "r,coverage\n";
    for (const auto& p : curve.points) os << full(p.r) << "," << full(p.coverage) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence intervals for the odds ratio of two binomial samples"};
  app.require_subcommand(1);

  int na = 0, nb = 0, xa = 0, xb = 0;
  double level = 0.95;
  double r = 1.0, rmin = 0.05, rmax = 2.0;
  int points = 40;
  std::string method = "exact", format = "text", out_path;
  bool log_grid = false;

  const auto add_common = [&](CLI::App* cmd, bool with_counts) {
    cmd->add_option("--na", na, "group A size")->required();
    cmd->add_option("--nb", nb, "group B size")->required();
    if (with_counts) {
      cmd->add_option("--xa", xa, "successes in group A")->required();
      cmd->add_option("--xb", xb, "successes in group B")->required();
    }
    cmd->add_option("--level", level, "confidence level (default 0.95)");
    cmd->add_option("--format", format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", out_path, "output path (default stdout)");
  };

  CLI::App* c_exact = app.add_subcommand("exact", "exact confidence interval");
  add_common(c_exact, true);

  CLI::App* c_std = app.add_subcommand("standard", "asymptotic confidence interval");
  add_common(c_std, true);

  CLI::App* c_dist = app.add_subcommand("dist", "distribution of the sample odds ratio");
  add_common(c_dist, false);
  c_dist->add_option("--r", r, "true odds ratio")->required();

  CLI::App* c_cov = app.add_subcommand("coverage", "coverage probability curve");
  add_common(c_cov, false);
  c_cov->add_option("--method", method, "exact|standard")
      ->check(CLI::IsMember({"exact", "standard"}));
  c_cov->add_option("--rmin", rmin, "grid start (default 0.05)");
  c_cov->add_option("--rmax", rmax, "grid end (default 2)");
  c_cov->add_option("--points", points, "grid size (default 40)");
  c_cov->add_flag("--log-grid", log_grid, "log-spaced grid instead of linear");

  CLI::App* c_min = app.add_subcommand("minsize", "minimal group A size for a two-sided interval");
  c_min->add_option("--level", level, "confidence level (default 0.95)");
  c_min->add_option("--format", format, "output format: text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  c_min->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    Output out(out_path);
    const orci::ConfidenceLevel gamma(level);
    if (c_exact->parsed()) {
      const orci::TwoArmCounts c{na, nb, xa, xb};
      print_interval(out.stream(), format, "exact", orci::exact_ci(c, gamma), c, level);
    } else if (c_std->parsed()) {
      const orci::TwoArmCounts c{na, nb, xa, xb};
      print_interval(out.stream(), format, "standard", orci::standard_ci(c, gamma), c, level);
    } else if (c_dist->parsed()) {
      const auto dist = orci::outcome_distribution(r, na, nb);
      print_dist(out.stream(), format, *dist);
    } else if (c_cov->parsed()) {
      const auto m = method == "exact" ? orci::CoverageMethod::exact_m
                                       : orci::CoverageMethod::standard_s;
      const auto spacing = log_grid ? orci::GridSpacing::logarithmic : orci::GridSpacing::linear;
      print_curve(out.stream(), format,
                  orci::coverage_curve(m, na, nb, gamma, rmin, rmax, points, spacing));
    } else if (c_min->parsed()) {
      const int n = orci::minimal_sample_size(gamma);
      if (format == "json")
        out.stream() << json{{"level", level}, {"min_sample_size", n}}.dump() << "\n";
      else if (format == "csv")
        out.stream() << "level,min_sample_size\n" << level_str(level) << "," << n << "\n";
      else
        out.stream() << n << "\n";
    }
  } catch (const orci::undefined_interval_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const orci::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const orci::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
