// Command-line front end: spectra, eigenvectors, coherent-state analyses,
// evolution traces, and the self-test suite, as CSV or JSON.
//
// Exit codes: 0 success, 1 usage error, 2 numerical tolerance failure.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimer/dimer.hpp"

namespace {

struct CommonOpts {
  std::string format = "csv";
  std::string output;
  std::string config;
  double tail_epsilon = 1e-12;
  int k_max = 512;
  double series_epsilon = 1e-16;
  CLI::Option* opt_tail = nullptr;
  CLI::Option* opt_kmax = nullptr;
  CLI::Option* opt_series = nullptr;
};

std::shared_ptr<CommonOpts> add_common(CLI::App* cmd) {
  auto c = std::make_shared<CommonOpts>();
  cmd->add_option("--format", c->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", c->output, "Write output to this path instead of standard output");
  cmd->add_option("--config", c->config, "JSON config presetting truncation policy and tolerances");
  c->opt_tail = cmd->add_option("--tail-epsilon", c->tail_epsilon, "Maximum discarded probability mass")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
  c->opt_kmax = cmd->add_option("--k-max", c->k_max, "Largest particle-number block kept")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
  c->opt_series = cmd->add_option("--series-epsilon", c->series_epsilon, "Relative series cutoff")
                      ->check(CLI::PositiveNumber)
                      ->capture_default_str();
  return c;
}

// Config file values fill in whatever the command line left at default.
void apply_config(CommonOpts& c) {
  if (c.config.empty()) return;
  std::ifstream in(c.config);
  if (!in) throw std::invalid_argument("config: cannot open " + c.config);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "tail_epsilon") {
      if (c.opt_tail->count() == 0) c.tail_epsilon = value.get<double>();
    } else if (key == "k_max") {
      if (c.opt_kmax->count() == 0) c.k_max = value.get<int>();
    } else if (key == "series_epsilon") {
      if (c.opt_series->count() == 0) c.series_epsilon = value.get<double>();
    } else {
      throw std::invalid_argument("config: unknown key \"" + key + "\"");
    }
  }
}

dimer::TruncationPolicy truncation(const CommonOpts& c) { return {c.tail_epsilon, c.k_max}; }

void write_record(const dimer::OutputRecord& rec, const CommonOpts& c) {
  const std::string text = c.format == "json" ? dimer::to_json_string(rec) : dimer::to_csv(rec);
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file " + c.output);
  out << text;
}

dimer::Complex parse_amplitude(const std::string& text, const char* name) {
  auto parsed = dimer::parse_complex(text);
  if (!parsed) throw std::invalid_argument(std::string(name) + ": malformed complex literal \"" + text + "\"");
  return *parsed;
}

dimer::CoherentParams make_params(const std::string& w, const std::string& z, const std::string& convention) {
  dimer::CoherentParams p;
  p.w = parse_amplitude(w, "--w");
  p.z = parse_amplitude(z, "--z");
  p.convention = convention == "a23" ? dimer::Convention::a23 : dimer::Convention::cd;
  return p;
}

std::vector<double> resolve_times(const std::string& times_text, const CLI::Option* t_opt, double t_value,
                                  std::vector<double> fallback) {
  if (!times_text.empty()) {
    auto parsed = dimer::parse_real_list(times_text);
    if (!parsed) throw std::invalid_argument("--times: malformed list \"" + times_text + "\"");
    return *parsed;
  }
  if (t_opt->count() > 0) return {t_value};
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-site boson hopping toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // spectrum
  {
    CLI::App* cmd = app.add_subcommand("spectrum", "Closed-form block spectrum checked against the dense solver");
    auto common = add_common(cmd);
    auto k = std::make_shared<int>(0);
    cmd->add_option("--k", *k, "Particle number")->required()->check(CLI::NonNegativeNumber);
    cmd->callback([common, k] {
      apply_config(*common);
      write_record(dimer::spectrum_record(*k), *common);
    });
  }

  // eigvec
  {
    CLI::App* cmd = app.add_subcommand("eigvec", "Normalized eigenvector of one block");
    auto common = add_common(cmd);
    auto k = std::make_shared<int>(0);
    auto m = std::make_shared<int>(0);
    cmd->add_option("--k", *k, "Particle number")->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("--m", *m, "Eigenvector index, 0 <= m <= k")->required()->check(CLI::NonNegativeNumber);
    cmd->callback([common, k, m] {
      apply_config(*common);
      if (*m > *k) throw std::invalid_argument("eigvec: --m must not exceed --k");
      write_record(dimer::eigvec_record(*k, *m), *common);
    });
  }

  // coherent
  {
    CLI::App* cmd = app.add_subcommand("coherent", "Truncated coherent state amplitudes");
    auto common = add_common(cmd);
    auto w = std::make_shared<std::string>("0");
    auto z = std::make_shared<std::string>("0");
    auto conv = std::make_shared<std::string>("cd");
    cmd->add_option("--w", *w, "First amplitude, e.g. 1.5+0.5i")->required();
    cmd->add_option("--z", *z, "Second amplitude")->required();
    cmd->add_option("--convention", *conv, "Mode pair the amplitudes refer to")
        ->check(CLI::IsMember({"cd", "a23"}))
        ->capture_default_str();
    cmd->callback([common, w, z, conv] {
      apply_config(*common);
      write_record(dimer::coherent_record(make_params(*w, *z, *conv), truncation(*common)), *common);
    });
  }

  // energy-dist
  {
    CLI::App* cmd = app.add_subcommand("energy-dist", "Energy measurement distribution, closed form vs grouping");
    auto common = add_common(cmd);
    auto w = std::make_shared<std::string>("0");
    auto z = std::make_shared<std::string>("0");
    auto conv = std::make_shared<std::string>("cd");
    auto amin = std::make_shared<int>(0);
    auto amax = std::make_shared<int>(0);
    cmd->add_option("--w", *w, "First amplitude")->required();
    cmd->add_option("--z", *z, "Second amplitude")->required();
    cmd->add_option("--convention", *conv, "Mode pair the amplitudes refer to")
        ->check(CLI::IsMember({"cd", "a23"}))
        ->capture_default_str();
    CLI::Option* omin = cmd->add_option("--alpha-min", *amin, "Lowest energy value reported");
    CLI::Option* omax = cmd->add_option("--alpha-max", *amax, "Highest energy value reported");
    cmd->callback([common, w, z, conv, amin, amax, omin, omax] {
      apply_config(*common);
      const dimer::CoherentParams p = make_params(*w, *z, *conv);
      int lo = *amin;
      int hi = *amax;
      if (omin->count() == 0 || omax->count() == 0) {
        const dimer::CoherentParams q =
            p.convention == dimer::Convention::cd ? p : dimer::convert_params(p);
        const double lambda = std::norm(q.w) + std::norm(q.z);
        const double spread = std::abs(q.w) + std::abs(q.z);
        const int reach = int(std::ceil(spread * spread + 10.0 * std::sqrt(lambda + 1.0)));
        if (omin->count() == 0) lo = -reach;
        if (omax->count() == 0) hi = reach;
      }
      if (lo > hi) throw std::invalid_argument("energy-dist: --alpha-min must not exceed --alpha-max");
      write_record(dimer::energy_dist_record(p, lo, hi, common->series_epsilon, truncation(*common)),
                   *common);
    });
  }

  // evolve
  {
    CLI::App* cmd = app.add_subcommand("evolve", "Autocorrelation trace of an evolved coherent state");
    auto common = add_common(cmd);
    auto w = std::make_shared<std::string>("0");
    auto z = std::make_shared<std::string>("0");
    auto conv = std::make_shared<std::string>("cd");
    auto times_text = std::make_shared<std::string>();
    auto t_value = std::make_shared<double>(0.0);
    auto gen = std::make_shared<std::string>("h2");
    cmd->add_option("--w", *w, "First amplitude")->required();
    cmd->add_option("--z", *z, "Second amplitude")->required();
    cmd->add_option("--convention", *conv, "Mode pair the amplitudes refer to")
        ->check(CLI::IsMember({"cd", "a23"}))
        ->capture_default_str();
    CLI::Option* times_opt = cmd->add_option("--times", *times_text, "Comma-separated times");
    CLI::Option* t_opt = cmd->add_option("--t", *t_value, "Single time");
    times_opt->excludes(t_opt);
    cmd->add_option("--generator", *gen, "Phase generator: squared Hamiltonian or plain")
        ->check(CLI::IsMember({"h2", "h"}))
        ->capture_default_str();
    cmd->callback([common, w, z, conv, times_text, t_value, t_opt, gen] {
      apply_config(*common);
      const std::vector<double> times = resolve_times(*times_text, t_opt, *t_value, {0.0});
      const dimer::Generator g = *gen == "h" ? dimer::Generator::h : dimer::Generator::h2;
      write_record(dimer::evolve_record(make_params(*w, *z, *conv), times, g, truncation(*common)),
                   *common);
    });
  }

  // cat-check
  {
    CLI::App* cmd = app.add_subcommand("cat-check", "Quarter-period cat identity, periodicity, and sign flip");
    auto common = add_common(cmd);
    auto w = std::make_shared<std::string>("0");
    auto z = std::make_shared<std::string>("0");
    auto conv = std::make_shared<std::string>("cd");
    auto times_text = std::make_shared<std::string>();
    auto t_value = std::make_shared<double>(0.0);
    cmd->add_option("--w", *w, "First amplitude")->required();
    cmd->add_option("--z", *z, "Second amplitude")->required();
    cmd->add_option("--convention", *conv, "Mode pair the amplitudes refer to")
        ->check(CLI::IsMember({"cd", "a23"}))
        ->capture_default_str();
    CLI::Option* times_opt = cmd->add_option("--times", *times_text, "Comma-separated times");
    CLI::Option* t_opt = cmd->add_option("--t", *t_value, "Single time");
    times_opt->excludes(t_opt);
    cmd->callback([common, w, z, conv, times_text, t_value, t_opt] {
      apply_config(*common);
      constexpr double pi = std::numbers::pi;
      const std::vector<double> times =
          resolve_times(*times_text, t_opt, *t_value, {0.0, pi / 4.0, pi / 2.0, pi, 2.0 * pi});
      write_record(dimer::cat_check_record(make_params(*w, *z, *conv), times, truncation(*common)),
                   *common);
    });
  }

  // selftest
  {
    CLI::App* cmd = app.add_subcommand("selftest", "Run the invariant suite and report pass/fail per check");
    auto common = add_common(cmd);
    auto quick = std::make_shared<bool>(false);
    auto inject = std::make_shared<double>(0.0);
    cmd->add_flag("--quick", *quick, "Cap blocks at k = 8 instead of 20");
    cmd->add_option("--inject", *inject, "Perturbation added to every measured deviation (negative control)");
    cmd->callback([common, quick, inject, &exit_code] {
      apply_config(*common);
      dimer::SelftestOptions opt;
      opt.k_cap = *quick ? 8 : 20;
      opt.inject = *inject;
      const std::vector<dimer::CheckResult> results = dimer::run_selftest(opt);
      write_record(dimer::selftest_record(results), *common);
      if (!dimer::selftest_all_passed(results)) exit_code = 2;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const dimer::truncation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dimer::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
