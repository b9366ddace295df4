#pragma once

// Command-line front end. run_cli is separate from main so tests can drive it
// in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
// 3 numeric failure.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "weibull_mix.hpp"

namespace wmix::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

/// Law selector with every parameter any law may use.
struct LawSpec {
  std::string kind = "weibull";
  double gamma = 1.0;
  double alpha = 2.0;
  double a1 = 1.0;
  double a2 = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
  bool formal = false;

  std::string describe() const {
    using detail::format_number;
    const std::string g = "gamma=" + format_number(gamma);
    if (kind == "weibull" || kind == "two-sided" || kind == "stable" || kind == "mixing-h") return kind + "(" + g + ")";
    if (kind == "symmetric-stable") return kind + "(alpha=" + format_number(alpha) + ")";
    if (kind == "asym-laplace") return kind + "(a1=" + format_number(a1) + ", a2=" + format_number(a2) + ")";
    if (kind == "asym-weibull1") {
      return kind + "(a1=" + format_number(a1) + ", a2=" + format_number(a2) + ", " + g + ")";
    }
    return kind + "(mu=" + format_number(mu) + ", sigma=" + format_number(sigma) + ", " + g + ")";
  }

  /// Throws DomainError when the parameters violate the law's domain.
  void validate() const {
    if (kind == "weibull") (void)WeibullLaw{gamma};
    else if (kind == "two-sided") (void)TwoSidedWeibullLaw{gamma};
    else if (kind == "asym-laplace") (void)AsymLaplaceLaw{a1, a2};
    else if (kind == "asym-weibull1") {
      if (formal) (void)asym_weibull1_formal_cdf(a1, a2, gamma, 0.0);
      else (void)AsymWeibullILaw{a1, a2, gamma};
    } else if (kind == "asym-weibull2") (void)AsymWeibullIILaw{mu, sigma, gamma};
    else if (kind == "stable") (void)StableShape{gamma};
    else if (kind == "symmetric-stable") (void)SymmetricStableShape{alpha};
    else if (kind == "mixing-h") (void)MixingLawH{gamma};
    else throw DomainError("unknown law '" + kind + "'");
  }
};

inline const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names{"weibull",       "two-sided",     "asym-laplace",
                                              "asym-weibull1", "asym-weibull2", "stable",
                                              "symmetric-stable", "mixing-h"};
  return names;
}

inline double sample_law(const LawSpec& l, RandomStream& rng) {
  if (l.kind == "weibull") return sample_weibull(WeibullLaw(l.gamma), rng);
  if (l.kind == "two-sided") return sample_two_sided(TwoSidedWeibullLaw(l.gamma), rng);
  if (l.kind == "asym-laplace") return sample_asym_laplace_nvm(nvm_witness(AsymLaplaceLaw(l.a1, l.a2)), rng);
  if (l.kind == "asym-weibull1") {
    if (l.formal) throw DomainError("the formal first-kind law (gamma > 1) has no sampler");
    return sample_asym_weibull1(AsymWeibullILaw(l.a1, l.a2, l.gamma), rng);
  }
  if (l.kind == "asym-weibull2") return sample_asym_weibull2(AsymWeibullIILaw(l.mu, l.sigma, l.gamma), rng);
  if (l.kind == "stable") return sample_positive_stable_std(StableShape(l.gamma), rng);
  if (l.kind == "symmetric-stable") return sample_symmetric_stable(SymmetricStableShape(l.alpha), rng);
  if (l.kind == "mixing-h") return sample_h_gamma(MixingLawH(l.gamma), rng);
  throw DomainError("unknown law '" + l.kind + "'");
}

inline double cdf_law(const LawSpec& l, double x) {
  if (l.kind == "weibull") return weibull_cdf(WeibullLaw(l.gamma), x);
  if (l.kind == "two-sided") return two_sided_cdf(TwoSidedWeibullLaw(l.gamma), x);
  if (l.kind == "asym-laplace") return asym_laplace_cdf(AsymLaplaceLaw(l.a1, l.a2), x);
  if (l.kind == "asym-weibull1") {
    if (l.formal) return asym_weibull1_formal_cdf(l.a1, l.a2, l.gamma, x);
    return asym_weibull1_cdf(AsymWeibullILaw(l.a1, l.a2, l.gamma), x);
  }
  if (l.kind == "asym-weibull2") return asym_weibull2_cdf(AsymWeibullIILaw(l.mu, l.sigma, l.gamma), x);
  if (l.kind == "stable") return cdf_positive_stable(StableShape(l.gamma), x);
  if (l.kind == "symmetric-stable") return symmetric_stable_cdf(SymmetricStableShape(l.alpha), x);
  if (l.kind == "mixing-h") return h_gamma_cdf(MixingLawH(l.gamma), x);
  throw DomainError("unknown law '" + l.kind + "'");
}

inline double pdf_law(const LawSpec& l, double x) {
  if (l.kind == "weibull") return weibull_pdf(WeibullLaw(l.gamma), x);
  if (l.kind == "two-sided") return two_sided_pdf(TwoSidedWeibullLaw(l.gamma), x);
  if (l.kind == "asym-laplace") return asym_laplace_pdf(AsymLaplaceLaw(l.a1, l.a2), x);
  if (l.kind == "asym-weibull1") {
    if (l.formal) throw DomainError("pdf is not available for the formal first-kind law");
    return asym_weibull1_pdf(AsymWeibullILaw(l.a1, l.a2, l.gamma), x);
  }
  if (l.kind == "asym-weibull2") return asym_weibull2_pdf(AsymWeibullIILaw(l.mu, l.sigma, l.gamma), x);
  if (l.kind == "stable") return x <= 0.0 ? 0.0 : density_positive_stable(StableShape(l.gamma), x);
  if (l.kind == "symmetric-stable") return symmetric_stable_pdf(SymmetricStableShape(l.alpha), x);
  if (l.kind == "mixing-h") return x <= 0.0 ? 0.0 : h_gamma_density(MixingLawH(l.gamma), x);
  throw DomainError("unknown law '" + l.kind + "'");
}

/// Bisection on a continuous CDF; `lower` bounds the support from below.
template <class Cdf>
double bisect_quantile(const Cdf& cdf, double p, std::optional<double> lower) {
  double lo = lower.value_or(-1.0);
  double hi = 1.0;
  if (!lower) {
    while (cdf(lo) > p) lo *= 2.0;
  }
  while (cdf(hi) < p) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericFailure("quantile: upper bracket not found", p);
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double quantile_law(const LawSpec& l, double p) {
  detail::require(p > 0.0 && p < 1.0, "quantile requires 0 < p < 1");
  const double g = l.gamma;
  if (l.kind == "weibull") return weibull_quantile(WeibullLaw(g), p);
  if (l.kind == "two-sided") {
    (void)TwoSidedWeibullLaw{g};
    return p < 0.5 ? -std::pow(-std::log(2.0 * p), 1.0 / g) : std::pow(-std::log(2.0 * (1.0 - p)), 1.0 / g);
  }
  if (l.kind == "asym-laplace" || l.kind == "asym-weibull1") {
    const double shape = l.kind == "asym-laplace" ? 1.0 : g;
    if (l.kind == "asym-weibull1" && !l.formal) (void)AsymWeibullILaw{l.a1, l.a2, g};
    const AsymLaplaceLaw rates(l.a1, l.a2);
    const double left = l.a1 / (l.a1 + l.a2);
    if (p <= left) return -std::pow(-std::log(p / left), 1.0 / shape) / l.a2;
    return std::pow(-std::log((1.0 - p) / rates.right_mass()), 1.0 / shape) / l.a1;
  }
  if (l.kind == "asym-weibull2") return asym_weibull2_quantile(AsymWeibullIILaw(l.mu, l.sigma, g), p, 1e-9);
  if (l.kind == "stable" && StableShape(g).degenerate()) return 1.0;
  if (l.kind == "stable" || l.kind == "mixing-h") {
    return bisect_quantile([&](double x) { return cdf_law(l, x); }, p, 0.0);
  }
  if (l.kind == "symmetric-stable") {
    return bisect_quantile([&](double x) { return cdf_law(l, x); }, p, std::nullopt);
  }
  throw DomainError("unknown law '" + l.kind + "'");
}

/// Analytic moment of the given order and the draw transform it refers to.
struct MomentSpec {
  double analytic;
  std::string quantity;
};

inline MomentSpec moment_law(const LawSpec& l, double order) {
  if (l.kind == "weibull") return {weibull_moment(WeibullLaw(l.gamma), order), "E W^order"};
  if (l.kind == "two-sided") {
    return {weibull_moment(TwoSidedWeibullLaw(l.gamma).magnitude(), order), "E |W|^order"};
  }
  if (l.kind == "stable") return {moment_positive_stable(StableShape(l.gamma), order), "E (2 S)^order"};
  if (l.kind == "symmetric-stable") {
    return {moment_symmetric_stable(SymmetricStableShape(l.alpha), order), "E |S|^order"};
  }
  throw DomainError("moments are available for weibull, two-sided, stable and symmetric-stable, not '" + l.kind +
                    "'");
}

inline double moment_transform(const LawSpec& l, double draw, double order) {
  if (l.kind == "stable") return std::pow(2.0 * draw, order);
  return std::pow(std::abs(draw), order);
}

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;

  void validate() const {
    detail::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "grid requires lo < hi");
    detail::require(count >= 2, "grid count must be >= 2");
  }
  double at(std::size_t i) const {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

/// Parses "25,100,400" into positive integers.
inline std::vector<std::uint64_t> parse_sweep(const std::string& spec) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size() || v == 0) {
      throw DomainError("malformed k_n sweep '" + spec + "': expected comma-separated positive integers");
    }
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("malformed k_n sweep '" + spec + "': empty");
  return out;
}

struct Common {
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  std::string output = "-";
  unsigned workers = 1;
};

inline Report base_report(const std::string& sub, const std::string& law, const Common& c) {
  Report r;
  r.metadata = {{"tool", "weibullmix " + sub}, {"version", kVersion}, {"seed", std::to_string(c.seed)},
                {"law", law}};
  return r;
}

inline void emit(const Report& report, const Common& c, std::ostream& out) {
  const auto format = output_format_from_string(c.format);
  if (c.output == "-") {
    write_report(report, format, out);
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw DomainError("cannot open output file '" + c.output + "'");
  write_report(report, format, file);
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weibull-family laws: sampling, distribution functions, moments, identity checks and random sums",
               "weibullmix"};
  app.require_subcommand(1);

  Common common;
  try {
    common.seed = default_seed();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const std::string seed_help =
      "64-bit seed (default " + std::to_string(common.seed) + "; override with " + kSeedEnvVar + ")";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, seed_help);
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", common.output, "Output file, - for standard output");
    sub->add_option("--workers", common.workers, "Worker threads; results do not depend on it")
        ->check(CLI::Range(1u, 1024u));
  };

  LawSpec law;
  auto add_law = [&](CLI::App* sub) {
    sub->add_option("--law", law.kind, "Law")->check(CLI::IsMember(law_names()));
    sub->add_option("--gamma", law.gamma, "Shape gamma");
    sub->add_option("--alpha", law.alpha, "Characteristic exponent of symmetric-stable");
    sub->add_option("--a1", law.a1, "Right-tail rate");
    sub->add_option("--a2", law.a2, "Left-tail rate");
    sub->add_option("--mu", law.mu, "Mean-shift coefficient of asym-weibull2");
    sub->add_option("--sigma", law.sigma, "Scale of asym-weibull2");
    sub->add_flag("--formal", law.formal, "asym-weibull1 with gamma > 1: branch-wise CDF only");
  };

  std::size_t n = 1000;
  Grid grid{-5.0, 5.0, 101};
  std::vector<double> orders{0.1, 0.25};

  auto* sample = app.add_subcommand("sample", "Draw n values");
  add_law(sample);
  add_common(sample);
  sample->add_option("--n", n, "Number of draws")->check(CLI::PositiveNumber);

  CLI::App* dist[2];
  const char* dist_names[2] = {"cdf", "pdf"};
  for (int i = 0; i < 2; ++i) {
    dist[i] = app.add_subcommand(dist_names[i], std::string("Tabulate the ") + dist_names[i] + " on a grid");
    add_law(dist[i]);
    add_common(dist[i]);
    dist[i]->add_option("--lo", grid.lo, "Grid start");
    dist[i]->add_option("--hi", grid.hi, "Grid end");
    dist[i]->add_option("--count", grid.count, "Grid points (>= 2)");
  }

  Grid pgrid{0.01, 0.99, 99};
  auto* quant = app.add_subcommand("quantile", "Tabulate quantiles on a probability grid");
  add_law(quant);
  add_common(quant);
  quant->add_option("--lo", pgrid.lo, "First probability");
  quant->add_option("--hi", pgrid.hi, "Last probability");
  quant->add_option("--count", pgrid.count, "Grid points (>= 2)");

  std::size_t moment_n = 100000;
  auto* moments = app.add_subcommand("moments", "Analytic fractional moments with Monte Carlo estimates");
  add_law(moments);
  add_common(moments);
  moments->add_option("--order", orders, "Moment orders")->delimiter(',');
  moments->add_option("--n", moment_n, "Monte Carlo draws")->check(CLI::PositiveNumber);

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Run the identity checks; exit 1 if any fails");
  add_common(verify);
  verify->add_option("--only", vopt.only, "Run only these groups (comma-separated)")->delimiter(',');
  verify->add_option("--n", vopt.n, "KS sample size")->check(CLI::PositiveNumber);
  verify->add_option("--moment-n", vopt.moment_n, "Monte Carlo size of moment checks")->check(CLI::PositiveNumber);
  verify->add_option("--ensemble", vopt.randsum_ensemble, "Random-sum replicates")->check(CLI::PositiveNumber);
  bool list_groups = false;
  verify->add_flag("--list", list_groups, "List check groups and exit");

  RandomSumScheme scheme;
  std::string family = "two-point";
  std::string index_law = "mixing";
  std::string sweep;
  std::size_t ensemble = 100000;
  StudyOptions study;
  auto* randsum = app.add_subcommand("randsum", "Random-sum convergence study");
  add_common(randsum);
  randsum->add_option("--gamma", scheme.target_gamma, "Target shape gamma in (0, 1]");
  randsum->add_option("--mu", scheme.mu, "Limit mean-shift coefficient");
  randsum->add_option("--sigma", scheme.sigma, "Limit scale");
  randsum->add_option("--k", scheme.k_n, "Row size k_n");
  auto* sweep_opt = randsum->add_option("--sweep", sweep, "Comma-separated k_n values, one record each");
  randsum->add_option("--family", family, "Increment family")
      ->check(CLI::IsMember({"two-point", "normal", "uniform", "constant"}));
  randsum->add_option("--index", index_law, "Index law")->check(CLI::IsMember({"mixing", "constant"}));
  randsum->add_option("--ensemble", ensemble, "Replicates (>= 1000)");
  randsum->add_option("--epsilon", study.lindeberg_epsilon, "Lindeberg truncation level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sample->parsed()) {
      law.validate();
      auto report = base_report("sample", law.describe(), common);
      report.metadata.emplace_back("n", std::to_string(n));
      report.columns = {"index", "value"};
      const auto draws = draw_ensemble(n, RandomStream(common.seed, 0),
                                       [&law](RandomStream& s) { return sample_law(law, s); }, common.workers);
      for (std::size_t i = 0; i < draws.size(); ++i) report.add_row({static_cast<double>(i), draws[i]});
      emit(report, common, out);
      return kOk;
    }
    for (int i = 0; i < 2; ++i) {
      if (!dist[i]->parsed()) continue;
      law.validate();
      grid.validate();
      auto report = base_report(dist_names[i], law.describe(), common);
      report.columns = {"x", dist_names[i]};
      for (std::size_t j = 0; j < grid.count; ++j) {
        const double x = grid.at(j);
        report.add_row({x, i == 0 ? cdf_law(law, x) : pdf_law(law, x)});
      }
      emit(report, common, out);
      return kOk;
    }
    if (quant->parsed()) {
      law.validate();
      pgrid.validate();
      detail::require(pgrid.lo > 0.0 && pgrid.hi < 1.0, "quantile grid must lie inside (0, 1)");
      auto report = base_report("quantile", law.describe(), common);
      report.columns = {"p", "quantile"};
      for (std::size_t j = 0; j < pgrid.count; ++j) {
        const double p = pgrid.at(j);
        report.add_row({p, quantile_law(law, p)});
      }
      emit(report, common, out);
      return kOk;
    }
    if (moments->parsed()) {
      law.validate();
      detail::require(!orders.empty(), "at least one moment order is required");
      auto report = base_report("moments", law.describe(), common);
      report.metadata.emplace_back("n", std::to_string(moment_n));
      report.columns = {"order", "quantity", "analytic", "mc_mean", "mc_std_error"};
      const auto draws = draw_ensemble(moment_n, RandomStream(common.seed, 0),
                                       [&law](RandomStream& s) { return sample_law(law, s); }, common.workers);
      for (double order : orders) {
        const auto m = moment_law(law, order);
        const auto mc = estimate_mean_of(draws, [&](double x) { return moment_transform(law, x, order); });
        report.add_row({order, m.quantity, m.analytic, mc.mean, mc.std_error});
      }
      emit(report, common, out);
      return kOk;
    }
    if (verify->parsed()) {
      if (list_groups) {
        for (const auto& g : verify_groups()) out << g << '\n';
        return kOk;
      }
      vopt.seed = common.seed;
      vopt.workers = common.workers;
      const auto records = run_verify(vopt);
      emit(verify_report(records, vopt), common, out);
      std::size_t passed = 0;
      for (const auto& r : records) {
        passed += r.pass ? 1 : 0;
        if (!r.pass) err << "FAIL " << r.group << "/" << r.name << ": " << r.note << '\n';
      }
      err << passed << "/" << records.size() << " identity checks passed\n";
      return all_pass(records) ? kOk : kVerifyFailed;
    }
    if (randsum->parsed()) {
      scheme.family = increment_family_from_string(family);
      scheme.index_law = index_law == "constant" ? IndexLaw::constant : IndexLaw::mixing;
      scheme.validate();
      detail::require(ensemble >= 1000, "randsum requires --ensemble >= 1000");
      const auto ks = sweep_opt->count() == 0 ? std::vector<std::uint64_t>{scheme.k_n} : parse_sweep(sweep);
      study.workers = common.workers;
      const auto reports = run_convergence_sweep(scheme, ks, ensemble, RandomStream(common.seed, 0), study);
      LawSpec limit{"asym-weibull2"};
      limit.gamma = scheme.target_gamma;
      limit.mu = scheme.mu;
      limit.sigma = scheme.sigma;
      auto report = base_report("randsum", limit.describe(), common);
      report.metadata.emplace_back("gamma", detail::format_number(scheme.target_gamma));
      report.metadata.emplace_back("mu", detail::format_number(scheme.mu));
      report.metadata.emplace_back("sigma", detail::format_number(scheme.sigma));
      report.metadata.emplace_back("family", family);
      report.metadata.emplace_back("index", index_law);
      report.metadata.emplace_back("epsilon", detail::format_number(study.lindeberg_epsilon));
      report.columns = {"k_n", "ensemble", "row_ks", "index_ks", "randsum_ks", "lindeberg_fraction"};
      const bool closed = scheme.target_gamma == 1.0;
      if (closed) report.columns.push_back("closed_form_ks");
      for (const auto& r : reports) {
        std::vector<Cell> row{static_cast<double>(r.k_n), static_cast<double>(r.ensemble), r.row_ks, r.index_ks,
                              r.randsum_ks, r.lindeberg_fraction};
        if (closed) row.emplace_back(*r.closed_form_ks);
        report.add_row(std::move(row));
      }
      emit(report, common, out);
      return kOk;
    }
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

}  // namespace wmix::cli
