// ucirc: counts algebraic numbers on the unit circle by elliptic height and
// cross-checks the count against its limit density, Monte Carlo root
// statistics, and coprime lattice-point asymptotics.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ucirc/counting.hpp"
#include "ucirc/density.hpp"
#include "ucirc/kernels.hpp"
#include "ucirc/lattice.hpp"
#include "ucirc/montecarlo.hpp"
#include "ucirc/verify.hpp"

namespace {

using namespace ucirc;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonFlags {
  int m = 1;
  std::string weights = "flat";
  std::string arc = "-pi:pi";
  std::string output_path;
  int threads = 1;
};

double parse_angle(const std::string& tok) {
  std::string s = tok;
  double sign = 1.0;
  if (!s.empty() && s[0] == '-') {
    sign = -1.0;
    s = s.substr(1);
  }
  if (s == "pi") return sign * kPi;
  if (s.rfind("pi/", 0) == 0) {
    const double den = std::stod(s.substr(3));
    if (den == 0.0) throw CLI::ValidationError("arc", "division by zero in angle token");
    return sign * kPi / den;
  }
  size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw CLI::ValidationError("arc", "bad angle token '" + tok + "'");
  return sign * v;
}

Arc parse_arc(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("arc", "expected beta1:beta2");
  const double b1 = parse_angle(spec.substr(0, colon));
  const double b2 = parse_angle(spec.substr(colon + 1));
  return Arc(b1, b2);
}

WeightVector parse_weights(const std::string& spec, int m) {
  if (spec == "flat") return WeightVector::flat(m);
  if (spec == "bombieri") return WeightVector::bombieri(m);
  if (spec.rfind("custom:", 0) == 0) {
    std::vector<double> l;
    std::stringstream ss(spec.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) l.push_back(std::stod(item));
    if (static_cast<int>(l.size()) != m + 1)
      throw CLI::ValidationError("weights", "custom weight list must have m+1 entries");
    return WeightVector(m, std::move(l));
  }
  throw CLI::ValidationError("weights", "expected flat, bombieri, or custom:l0,l1,...");
}

void emit(const CommonFlags& flags, const std::string& text) {
  if (flags.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(flags.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path " + flags.output_path);
  out << text;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_arc = true) {
  cmd->add_option("--m", flags.m, "half-degree m (degree is 2m)")->check(CLI::PositiveNumber);
  cmd->add_option("--weights", flags.weights, "flat | bombieri | custom:l0,l1,...");
  if (with_arc) cmd->add_option("--arc", flags.arc, "angular interval, e.g. -pi:pi or 0:pi/2");
  cmd->add_option("--output", flags.output_path, "output file (default stdout)");
  cmd->add_option("--threads", flags.threads, "worker cap")->check(CLI::PositiveNumber);
}

std::vector<double> parse_q_list(const std::string& spec) {
  std::vector<double> qs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) qs.push_back(std::stod(item));
  if (qs.empty()) throw CLI::ValidationError("q-list", "empty Q list");
  return qs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic numbers on the unit circle: exact counts, limit density, "
               "Monte Carlo and lattice cross-checks"};
  app.require_subcommand(1);

  CommonFlags flags;
  double q = 10.0;
  std::string q_list = "100,200,400,800";
  long long samples = 100000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int grid_points = 1000;
  std::string out_format = "csv";
  std::string method = "generic";
  std::string mc_mode = "mean";
  std::string region_name = "disk";
  bool force = false;
  bool fast = false;
  std::string backend;

  auto* density_cmd = app.add_subcommand("density", "emit a density profile over the arc");
  add_common(density_cmd, flags);
  density_cmd->add_option("--grid-points", grid_points)->check(CLI::Range(2, 100000000));
  density_cmd->add_option("--method", method, "generic | bombieri-closed | flat-closed");
  density_cmd->add_option("--out", out_format, "csv");

  auto* predict_cmd = app.add_subcommand("predict", "main term of the counting asymptotic");
  add_common(predict_cmd, flags);
  predict_cmd->add_option("--q", q, "height bound Q");
  predict_cmd->add_option("--tol", tol, "quadrature tolerance");

  auto* count_cmd = app.add_subcommand("count", "exact count report at height Q");
  add_common(count_cmd, flags);
  count_cmd->add_option("--q", q, "height bound Q");
  count_cmd->add_option("--tol", tol, "quadrature tolerance");
  count_cmd->add_flag("--force", force, "override the candidate budget");
  count_cmd->add_option("--out", out_format, "json");

  auto* hist_cmd = app.add_subcommand("hist", "distinct-root histogram over primitive polys");
  add_common(hist_cmd, flags);
  hist_cmd->add_option("--q", q, "height bound Q");
  hist_cmd->add_flag("--force", force, "override the candidate budget");
  hist_cmd->add_option("--out", out_format, "csv | json");

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo root statistics of F");
  add_common(mc_cmd, flags);
  mc_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  mc_cmd->add_option("--seed", seed);
  mc_cmd->add_option("--mode", mc_mode, "mean | dist");
  mc_cmd->add_option("--out", out_format, "json | csv");

  auto* lattice_cmd = app.add_subcommand("lattice", "coprime lattice point ratio table");
  add_common(lattice_cmd, flags, false);
  lattice_cmd->add_option("--region", region_name, "disk | ellipsoid");
  lattice_cmd->add_option("--q-list", q_list, "comma-separated dilation factors");

  auto* converge_cmd = app.add_subcommand("converge", "phi vs main term over a Q list");
  add_common(converge_cmd, flags);
  converge_cmd->add_option("--q-list", q_list, "comma-separated increasing Q values");
  converge_cmd->add_option("--tol", tol, "quadrature tolerance");
  converge_cmd->add_flag("--force", force, "override the candidate budget");

  auto* verify_cmd = app.add_subcommand("verify", "run the full invariant cross-check suite");
  verify_cmd->add_option("--threads", flags.threads)->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--fast", fast, "reduced sample sizes");
  verify_cmd->add_option("--seed", seed);

  auto* backend_opt =
      app.add_option("--simd", backend, "force kernel backend: scalar | avx2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (!backend_opt->empty()) {
      if (backend == "scalar")
        kernels::set_backend(kernels::Backend::Scalar);
      else if (backend == "avx2")
        kernels::set_backend(kernels::Backend::Avx2);
      else
        throw ArgumentError("--simd expects scalar or avx2");
    }

    if (density_cmd->parsed()) {
      const WeightVector w = parse_weights(flags.weights, flags.m);
      DensityMethod dm = DensityMethod::Generic;
      if (method == "bombieri-closed")
        dm = DensityMethod::BombieriClosed;
      else if (method == "flat-closed")
        dm = DensityMethod::FlatClosed;
      else if (method != "generic")
        throw ArgumentError("unknown density method " + method);
      const DensityProfile prof =
          density_profile(w, parse_arc(flags.arc), grid_points, dm, flags.threads);
      std::ostringstream os;
      prof.to_csv(os);
      emit(flags, os.str());
    } else if (predict_cmd->parsed()) {
      const WeightVector w = parse_weights(flags.weights, flags.m);
      const double main = main_term(w, q, parse_arc(flags.arc), tol);
      std::ostringstream os;
      os.precision(17);
      os << main << "\n";
      emit(flags, os.str());
    } else if (count_cmd->parsed()) {
      const WeightVector w = parse_weights(flags.weights, flags.m);
      CountingOptions opts;
      opts.tol = tol;
      opts.threads = flags.threads;
      opts.budget_override = force;
      const CountReport rep = phi_count(w, q, parse_arc(flags.arc), opts);
      emit(flags, rep.to_json() + "\n");
    } else if (hist_cmd->parsed()) {
      const WeightVector w = parse_weights(flags.weights, flags.m);
      CountingOptions opts;
      opts.threads = flags.threads;
      opts.budget_override = force;
      const auto fracs = root_histogram(w, q, parse_arc(flags.arc), opts);
      std::ostringstream os;
      if (out_format == "json") {
        os << "{";
        bool first = true;
        for (const auto& [l, frac] : fracs) {
          if (!first) os << ",";
          first = false;
          os << "\"" << l << "\":" << fmt17(frac);
        }
        os << "}\n";
      } else {
        os << "l,fraction\n";
        for (const auto& [l, frac] : fracs) os << l << "," << fmt17(frac) << "\n";
      }
      emit(flags, os.str());
    } else if (mc_cmd->parsed()) {
      const WeightVector w = parse_weights(flags.weights, flags.m);
      const Arc arc = parse_arc(flags.arc);
      std::ostringstream os;
      if (mc_mode == "mean") {
        const McEstimate est = estimate_expected_roots(w, arc, samples, seed, flags.threads);
        os << est.to_json() << "\n";
      } else if (mc_mode == "dist") {
        const auto dist = mc_root_distribution(w, arc, samples, seed, flags.threads);
        if (out_format == "json") {
          os << "{";
          bool first = true;
          for (const auto& [l, prob] : dist) {
            if (!first) os << ",";
            first = false;
            os << "\"" << l << "\":" << fmt17(prob);
          }
          os << "}\n";
        } else {
          os << "l,probability\n";
          for (const auto& [l, prob] : dist) os << l << "," << fmt17(prob) << "\n";
        }
      } else {
        throw ArgumentError("mc --mode expects mean or dist");
      }
      emit(flags, os.str());
    } else if (lattice_cmd->parsed()) {
      Region region = Region::ball(2);
      double vol = kPi;
      if (region_name == "ellipsoid") {
        const WeightVector w = parse_weights(flags.weights, flags.m);
        region = Region::weight_ellipsoid(w);
        vol = ellipsoid_volume(w);
      } else if (region_name != "disk") {
        throw ArgumentError("lattice --region expects disk or ellipsoid");
      }
      LatticeOptions lopts;
      lopts.threads = flags.threads;
      lopts.budget = 8000000000ULL;
      const double limit = vol / zeta_value(region.dim, 1e-12);
      std::ostringstream os;
      os << "Q,gamma,gamma_star,gamma_star_over_Qd,vol_over_zeta,scaled_dev\n";
      for (const double qv : parse_q_list(q_list)) {
        const long long gam = count_integer_points(region, qv, lopts);
        const CoprimeCount cc = count_coprime_points(region, qv, lopts);
        const double dens = static_cast<double>(cc.direct) / std::pow(qv, region.dim);
        const double scaled =
            std::fabs(dens - limit) * qv / std::pow(std::log(qv), chi(region.dim));
        os << fmt17(qv) << "," << gam << "," << cc.direct << "," << fmt17(dens) << ","
           << fmt17(limit) << "," << fmt17(scaled) << "\n";
      }
      emit(flags, os.str());
    } else if (converge_cmd->parsed()) {
      const WeightVector w = parse_weights(flags.weights, flags.m);
      CountingOptions opts;
      opts.tol = tol;
      opts.threads = flags.threads;
      opts.budget_override = force;
      const auto rows = convergence_report(w, parse_arc(flags.arc), parse_q_list(q_list), opts);
      std::ostringstream os;
      convergence_to_csv(rows, os);
      emit(flags, os.str());
    } else if (verify_cmd->parsed()) {
      verify::VerifyOptions vopts;
      vopts.threads = flags.threads;
      vopts.full = !fast;
      vopts.seed = seed;
      const auto results = verify::run_all(vopts);
      bool all_ok = true;
      for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        all_ok = all_ok && r.pass;
      }
      std::cout << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES present\n");
      return all_ok ? 0 : 1;
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
