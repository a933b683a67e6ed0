#pragma once

// Command-line front end. run() returns 0 on success, 2 on usage errors and
// 1 on numeric failures; it never calls exit().

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coprime/complex_special.hpp"
#include "coprime/error.hpp"
#include "coprime/f_series.hpp"
#include "coprime/io.hpp"
#include "coprime/mellin.hpp"
#include "coprime/models.hpp"
#include "coprime/sieve.hpp"
#include "coprime/zeros.hpp"
#include "manifest.hpp"

namespace coprime::cli {

using nlohmann::json;

namespace detail {

struct ModelFlags {
  std::string model = "geometric";
  std::uint64_t n = 0;
  double beta = 0.0;
  double alpha = 0.0;

  void add_to(CLI::App& app) {
    app.add_option("--model", model, "uniform | kwlog | geometric | zeta")
        ->check(CLI::IsMember({"uniform", "kwlog", "geometric", "zeta"}));
    app.add_option("--n", n, "Range size for uniform / kwlog");
    app.add_option("--beta", beta, "Geometric parameter beta > 0");
    app.add_option("--alpha", alpha, "Zeta parameter alpha > 1");
  }

  Model build() const {
    auto need = [](bool ok, const char* what) {
      if (!ok) throw CLI::ValidationError(what);
    };
    if (model == "uniform") {
      need(n > 0, "--n is required for the uniform model");
      return Uniform{n};
    }
    if (model == "kwlog") {
      need(n > 0, "--n is required for the kwlog model");
      return KWLog{n};
    }
    if (model == "zeta") {
      need(alpha != 0.0, "--alpha is required for the zeta model");
      return Zeta{alpha};
    }
    need(beta != 0.0, "--beta is required for the geometric model");
    return Geometric{beta};
  }

  void record(RunManifest& m) const {
    m.param("model", model);
    if (n) m.param("n", static_cast<double>(n));
    if (beta != 0.0) m.param("beta", beta);
    if (alpha != 0.0) m.param("alpha", alpha);
  }
};

// Emits text to a file (with manifest) when --out is set, else to stdout.
class Sink {
 public:
  Sink(std::ostream& stdout_stream, std::string path) : stdout_(stdout_stream), path_(std::move(path)) {}

  std::ostream& stream() {
    if (path_.empty()) return stdout_;
    if (!file_.is_open()) {
      file_.open(path_, std::ios::binary);
      if (!file_) throw Error("cannot open output file " + path_);
    }
    return file_;
  }

  void finish(RunManifest& manifest) {
    if (path_.empty()) return;
    file_.close();
    manifest.write_beside(path_);
  }

 private:
  std::ostream& stdout_;
  std::string path_;
  std::ofstream file_;
};

inline json probability_json(const Model& model, const Probability& p) {
  json j{{"model", model_name(model)}, {"p", p.value}, {"error_bound", p.error_bound}};
  json comp = json::object();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          const auto t = shared_sieve(v.n);
          comp["totient_sum"] = totient_sum(*t, v.n);
          comp["coprime_pairs"] = 2 * totient_sum(*t, v.n) - 1;
          comp["pairs"] = static_cast<double>(v.n) * static_cast<double>(v.n);
          j["n"] = v.n;
        } else if constexpr (std::is_same_v<T, KWLog>) {
          j["n"] = v.n;
        } else if constexpr (std::is_same_v<T, Geometric>) {
          const double em1 = std::expm1(v.beta);
          const ScanRecord r = scan_point(v.beta, 1e-13);
          comp["f"] = r.f_value;
          comp["f_error_bound"] = r.f_error_bound;
          comp["scale"] = em1 * em1;
          comp["main_term"] = ReferenceConstants::density * (1.0 + v.beta);
          comp["e_p"] = r.e_p;
          comp["e_f"] = r.e_f;
          j["beta"] = v.beta;
        } else {
          comp["zeta_2alpha"] = zeta_real(2.0 * v.alpha);
          j["alpha"] = v.alpha;
        }
      },
      model);
  j["components"] = comp;
  return j;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Coprimality probabilities, the coprime-pair series and its Mellin analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunManifest manifest;
  manifest.start_time = iso8601_now();
  for (std::size_t i = 0; i < args.size(); ++i) manifest.command_line += (i ? " " : "") + args[i];

  double sieve_mb = static_cast<double>(sieve_memory_cap()) / (1 << 20);
  app.add_option("--sieve-mem-mb", sieve_mb, "Memory cap for sieve tables (MiB)");
  std::string out_path;
  std::string format = "text";
  std::function<void()> action;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", out_path, "Write the result to this file (plus a .manifest.json)");
    if (with_format)
      sub->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  };

  // prob -------------------------------------------------------------------
  detail::ModelFlags prob_flags;
  double prob_tol = 1e-10;
  auto* prob = app.add_subcommand("prob", "Probability that two random integers are coprime");
  prob_flags.add_to(*prob);
  prob->add_option("--tol", prob_tol, "Absolute tolerance (<= 1e-6)");
  add_common(prob, true);
  prob->callback([&] {
    action = [&] {
      const Model model = prob_flags.build();
      prob_flags.record(manifest);
      manifest.param("tol", prob_tol);
      const Probability p = probability_coprime(model, prob_tol);
      detail::Sink sink(out, out_path);
      if (format == "json")
        sink.stream() << detail::probability_json(model, p).dump(2) << '\n';
      else
        sink.stream() << format_double(p.value) << '\n';
      sink.finish(manifest);
    };
  });

  // scan -------------------------------------------------------------------
  double scan_lo = 1e-4, scan_hi = 1e-1, scan_tol = 1e-12;
  std::size_t scan_points = 40;
  bool scan_log = false;
  auto* scan_cmd = app.add_subcommand("scan", "Evaluate f and its remainders on a beta grid (CSV)");
  scan_cmd->add_option("--beta-min", scan_lo)->required();
  scan_cmd->add_option("--beta-max", scan_hi)->required();
  scan_cmd->add_option("--points", scan_points)->required();
  scan_cmd->add_flag("--log", scan_log, "Log-spaced grid");
  scan_cmd->add_option("--tol", scan_tol, "Absolute tolerance for f");
  add_common(scan_cmd, false);
  scan_cmd->callback([&] {
    action = [&] {
      manifest.param("beta_min", scan_lo);
      manifest.param("beta_max", scan_hi);
      manifest.param("points", static_cast<double>(scan_points));
      manifest.param("log", scan_log ? "true" : "false");
      manifest.param("tol", scan_tol);
      const auto grid = make_grid(scan_lo, scan_hi, scan_points, scan_log);
      const auto records = scan(grid, scan_tol);
      json failures = json::array();
      for (const auto& r : records)
        if (!r.ok()) failures.push_back({{"beta", r.beta}, {"error", *r.error}});
      if (!failures.empty()) manifest.parameters["failed_points"] = failures;
      detail::Sink sink(out, out_path);
      write_scan_csv(sink.stream(), records);
      sink.finish(manifest);
      if (!failures.empty()) throw Error(std::to_string(failures.size()) + " grid point(s) failed");
    };
  });

  // fit --------------------------------------------------------------------
  std::string fit_in, fit_field = "e_p";
  double fit_lo = 0.0, fit_hi = INFINITY;
  auto* fit = app.add_subcommand("fit", "Log-log exponent fit on a scan CSV");
  fit->add_option("--in", fit_in, "Scan CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--field", fit_field)->check(CLI::IsMember({"e_f", "e_p", "smooth_residual"}));
  fit->add_option("--beta-min", fit_lo, "Lower end of the fit window");
  fit->add_option("--beta-max", fit_hi, "Upper end of the fit window");
  add_common(fit, true);
  fit->callback([&] {
    action = [&] {
      manifest.param("in", fit_in);
      manifest.param("field", fit_field);
      std::ifstream in(fit_in);
      std::vector<ScanRecord> window;
      for (const auto& r : read_scan_csv(in))
        if (r.beta >= fit_lo && r.beta <= fit_hi) window.push_back(r);
      const LinearFit f = fit_exponent(window, *parse_scan_field(fit_field));
      detail::Sink sink(out, out_path);
      if (format == "json")
        sink.stream() << json{{"field", fit_field}, {"slope", f.slope}, {"intercept", f.intercept},
                              {"r2", f.r2}, {"records", window.size()}}.dump(2)
                      << '\n';
      else
        sink.stream() << "slope " << format_double(f.slope) << "\nintercept "
                      << format_double(f.intercept) << "\nr2 " << format_double(f.r2) << '\n';
      sink.finish(manifest);
    };
  });

  // mellin-verify ----------------------------------------------------------
  std::string mv_s;
  double mv_tol = 1e-10;
  auto* mv = app.add_subcommand("mellin-verify", "Quadrature Mellin transform of f vs the zeta formula");
  mv->add_option("--s", mv_s, "Complex point a+bi with a > 2")->required();
  mv->add_option("--tol", mv_tol);
  add_common(mv, true);
  mv->callback([&] {
    action = [&] {
      const Complex s = parse_complex(mv_s);
      manifest.param("s_re", s.real());
      manifest.param("s_im", s.imag());
      manifest.param("tol", mv_tol);
      const MellinValue fwd = mellin_forward(s, mv_tol);
      const Complex rhs = mellin_rhs(s);
      const double gap = std::abs(fwd.value - rhs);
      detail::Sink sink(out, out_path);
      if (format == "json")
        sink.stream() << json{{"s", to_json(s)}, {"forward", to_json(fwd.value)},
                              {"closed_form", to_json(rhs)}, {"gap", gap},
                              {"quadrature_error_estimate", fwd.error_estimate}}.dump(2)
                      << '\n';
      else
        sink.stream() << "forward " << format_complex(fwd.value) << "\nclosed_form "
                      << format_complex(rhs) << "\ngap " << format_double(gap) << '\n';
      sink.finish(manifest);
    };
  });

  // mellin-invert ----------------------------------------------------------
  MellinContourParams inv_params;
  double inv_beta = 1.0;
  auto* inv = app.add_subcommand("mellin-invert", "Recover f(beta) from the line Re s = c");
  inv->add_option("--beta", inv_beta)->required();
  inv->add_option("--c", inv_params.c);
  inv->add_option("--T", inv_params.T);
  inv->add_option("--tol", inv_params.quad_tol);
  add_common(inv, true);
  inv->callback([&] {
    action = [&] {
      manifest.param("beta", inv_beta);
      manifest.param("c", inv_params.c);
      manifest.param("T", inv_params.T);
      manifest.param("tol", inv_params.quad_tol);
      const InverseValue v = mellin_inverse(inv_beta, inv_params);
      const SeriesValue f = f_phi_series(inv_beta, 1e-14);
      detail::Sink sink(out, out_path);
      if (format == "json")
        sink.stream() << json{{"beta", inv_beta}, {"inverse", v.value},
                              {"imag_residual", v.imag_residual}, {"series", f.value},
                              {"gap", std::abs(v.value - f.value)}}.dump(2)
                      << '\n';
      else
        sink.stream() << "inverse " << format_double(v.value) << "\nseries "
                      << format_double(f.value) << "\ngap "
                      << format_double(std::abs(v.value - f.value)) << "\nimag_residual "
                      << format_double(v.imag_residual) << '\n';
      sink.finish(manifest);
    };
  });

  // delta ------------------------------------------------------------------
  double delta_sigma = 3.0, delta_t = 0.0, delta_tol = 1e-10;
  std::string delta_method = "direct";
  auto* delta = app.add_subcommand("delta", "Delta(s) = M(s) - (6/pi^2)/(s-2)");
  delta->add_option("--sigma", delta_sigma)->required();
  delta->add_option("--t", delta_t);
  delta->add_option("--method", delta_method)->check(CLI::IsMember({"direct", "integral"}));
  delta->add_option("--tol", delta_tol);
  add_common(delta, true);
  delta->callback([&] {
    action = [&] {
      manifest.param("sigma", delta_sigma);
      manifest.param("t", delta_t);
      manifest.param("method", delta_method);
      const Complex s(delta_sigma, delta_t);
      Complex value;
      bool converged = true;
      if (delta_method == "direct") {
        value = delta_direct(s);
      } else {
        const MellinValue v = delta_continued(s, delta_tol);
        value = v.value;
        converged = v.converged;
      }
      detail::Sink sink(out, out_path);
      if (format == "json")
        sink.stream() << json{{"s", to_json(s)}, {"method", delta_method}, {"delta", to_json(value)},
                              {"converged", converged}}.dump(2)
                      << '\n';
      else
        sink.stream() << format_complex(value) << (converged ? "" : " (not converged)") << '\n';
      sink.finish(manifest);
      if (!converged) throw ConvergenceError("delta: quadrature did not converge");
    };
  });

  // contour ----------------------------------------------------------------
  MellinContourParams ct_params;
  double ct_beta = 1.0;
  auto* contour = app.add_subcommand("contour", "Residue-theorem rectangle pieces (JSON)");
  contour->add_option("--beta", ct_beta)->required();
  contour->add_option("--epsilon", ct_params.epsilon);
  contour->add_option("--T", ct_params.T);
  contour->add_option("--tol", ct_params.quad_tol);
  add_common(contour, false);
  contour->callback([&] {
    action = [&] {
      manifest.param("beta", ct_beta);
      manifest.param("epsilon", ct_params.epsilon);
      manifest.param("T", ct_params.T);
      manifest.param("tol", ct_params.quad_tol);
      const ContourReport r = contour_decomposition(ct_beta, ct_params);
      detail::Sink sink(out, out_path);
      sink.stream() << to_json(r).dump(2) << '\n';
      sink.finish(manifest);
    };
  });

  // zeros-check ------------------------------------------------------------
  std::string zeros_file = "data/zeros.txt";
  auto* zc = app.add_subcommand("zeros-check", "Validate a zeros file with this library's zeta");
  zc->add_option("--file", zeros_file)->check(CLI::ExistingFile);
  add_common(zc, true);
  zc->callback([&] {
    action = [&] {
      manifest.param("file", zeros_file);
      const ZeroList zeros = load_zeros(zeros_file);
      detail::Sink sink(out, out_path);
      if (format == "json") {
        json rows = json::array();
        for (const auto& e : zeros.entries)
          rows.push_back({{"gamma", e.gamma}, {"residual", e.residual},
                          {"derivative_gap", e.derivative_gap}, {"validated", e.validated}});
        sink.stream() << json{{"source", zeros.source}, {"entries", rows},
                              {"validated", zeros.validated_count()}}.dump(2)
                      << '\n';
      } else {
        for (const auto& e : zeros.entries)
          sink.stream() << format_double(e.gamma) << ' ' << format_double(e.residual) << ' '
                        << (e.validated ? "ok" : "INVALID") << '\n';
      }
      sink.finish(manifest);
      if (zeros.validated_count() != zeros.entries.size())
        throw Error(std::to_string(zeros.entries.size() - zeros.validated_count()) +
                    " entry(ies) failed validation");
    };
  });

  // oscillation ------------------------------------------------------------
  double osc_beta = 1e-4;
  std::size_t osc_k = 3;
  std::string osc_file = "data/zeros.txt";
  auto* osc = app.add_subcommand("oscillation", "Zero-sum oscillation term of f");
  osc->add_option("--beta", osc_beta)->required();
  osc->add_option("--k", osc_k);
  osc->add_option("--file", osc_file)->check(CLI::ExistingFile);
  add_common(osc, true);
  osc->callback([&] {
    action = [&] {
      manifest.param("beta", osc_beta);
      manifest.param("k", static_cast<double>(osc_k));
      manifest.param("file", osc_file);
      const OscillationValue v = oscillation_term(osc_beta, load_zeros(osc_file), osc_k);
      const double main = ReferenceConstants::density / (osc_beta * osc_beta);
      detail::Sink sink(out, out_path);
      if (format == "json")
        sink.stream() << json{{"beta", osc_beta}, {"k", osc_k}, {"value", v.value},
                              {"envelope", v.envelope}, {"envelope_to_main", v.envelope / main}}.dump(2)
                      << '\n';
      else
        sink.stream() << "value " << format_double(v.value) << "\nenvelope "
                      << format_double(v.envelope) << "\nenvelope_to_main "
                      << format_double(v.envelope / main) << '\n';
      sink.finish(manifest);
    };
  });

  // mc ---------------------------------------------------------------------
  detail::ModelFlags mc_flags;
  std::uint64_t mc_trials = 1000000, mc_seed = 1;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the coprimality probability");
  mc_flags.add_to(*mc);
  mc->add_option("--trials", mc_trials);
  mc->add_option("--seed", mc_seed);
  add_common(mc, true);
  mc->callback([&] {
    action = [&] {
      const Model model = mc_flags.build();
      mc_flags.record(manifest);
      manifest.param("trials", static_cast<double>(mc_trials));
      manifest.seed = mc_seed;
      const MonteCarloEstimate e = monte_carlo_coprime(model, mc_trials, mc_seed);
      const Probability exact = probability_coprime(model, 1e-10);
      detail::Sink sink(out, out_path);
      if (format == "json")
        sink.stream() << json{{"model", model_name(model)}, {"trials", mc_trials}, {"seed", mc_seed},
                              {"estimate", e.estimate}, {"stderr", e.standard_error},
                              {"analytic", exact.value},
                              {"z_score", (e.estimate - exact.value) / e.standard_error}}.dump(2)
                      << '\n';
      else
        sink.stream() << "estimate " << format_double(e.estimate) << "\nstderr "
                      << format_double(e.standard_error) << "\nanalytic "
                      << format_double(exact.value) << '\n';
      sink.finish(manifest);
    };
  });

  std::vector<std::string> argv_storage{"coprime"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    sieve_memory_cap() = static_cast<std::size_t>(sieve_mb * (1 << 20));
    manifest.param("sieve_mem_mb", sieve_mb);
    if (action) action();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedModel& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace coprime::cli
