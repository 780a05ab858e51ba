// latred: complex lattice reduction and reduction-aided MIMO detection toolkit.
//
// Subcommands: reduce, simulate, bench, stats, verify. Every command writes
// <out-dir>/<command>-<stamp>.csv (plus SVG plots where a plot makes sense)
// and prints the written paths. Identical seeds give byte-identical CSVs.
//
// A config file (--config FILE, key=value lines mirroring the long flags) is
// spliced in before the explicit flags, so flags override the file.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "latred/accounting.hpp"
#include "latred/analysis.hpp"
#include "latred/channel.hpp"
#include "latred/csv.hpp"
#include "latred/detectors.hpp"
#include "latred/enumeration.hpp"
#include "latred/errors.hpp"
#include "latred/matrix.hpp"
#include "latred/reduction.hpp"
#include "latred/rng.hpp"
#include "latred/svg.hpp"
#include "latred/sweep.hpp"

namespace {

using namespace latred;

struct OutputOpts {
  std::string out_dir = ".";
  std::string stamp;  // defaults to wall-clock time
};

std::string effective_stamp(const OutputOpts& o) {
  if (!o.stamp.empty()) return o.stamp;
  std::time_t now = std::time(nullptr);
  std::tm tm_buf{};
  localtime_r(&now, &tm_buf);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm_buf);
  return buf;
}

std::string out_path(const OutputOpts& o, const std::string& stamp,
                     const std::string& command, const std::string& suffix) {
  std::filesystem::create_directories(o.out_dir);
  return (std::filesystem::path(o.out_dir) / (command + "-" + stamp + suffix)).string();
}

void add_output_opts(CLI::App* cmd, OutputOpts& o) {
  cmd->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--stamp", o.stamp,
                  "Output filename stamp (defaults to the current time)");
}

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::string token;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!token.empty()) {
        try {
          out.push_back(std::stod(token));
        } catch (const std::exception&) {
          throw ConfigError(std::string(what) + ": bad number '" + token + "'");
        }
        token.clear();
      }
    } else if (c != ' ') {
      token += c;
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& csv, const char* what) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(csv, what)) {
    if (v < 1 || v != std::floor(v))
      throw ConfigError(std::string(what) + ": expected positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// Splices `key=value` lines from a --config file in front of the explicit
// flags of the subcommand; with take-last option semantics the flags win.
std::vector<std::string> splice_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() < 2) return args;
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file argument");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  std::vector<std::string> out{args[0], args[1]};
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
      while (!line.empty() && is_space(line.front())) line.erase(line.begin());
      while (!line.empty() && is_space(line.back())) line.pop_back();
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError(config_path, lineno, 1, "expected key=value");
      std::string key = line.substr(0, eq);
      std::string value = line.substr(eq + 1);
      while (!key.empty() && is_space(key.back())) key.pop_back();
      while (!value.empty() && is_space(value.front())) value.erase(value.begin());
      if (key.empty()) throw ParseError(config_path, lineno, 1, "empty key");
      if (value == "true") {
        out.push_back("--" + key);
      } else if (value == "false") {
        // flag left at its default
      } else {
        out.push_back("--" + key);
        out.push_back(value);
      }
    }
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

void allow_overrides(CLI::App* cmd) {
  for (CLI::Option* o : cmd->get_options())
    if (o->get_expected_min() > 0)
      o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

CostModel load_cost_model(const std::string& path) {
  return path.empty() ? CostModel::standard() : CostModel::from_file(path);
}

CsvTable tally_csv(const FlopTally& tally, const CostModel& cost) {
  CsvTable t({"phase", "event", "count", "weighted"});
  for (int r = 0; r < kNumRegions; ++r)
    for (int e = 0; e < kNumFlopEvents; ++e) {
      auto region = static_cast<Region>(r);
      auto event = static_cast<FlopEvent>(e);
      std::uint64_t c = tally.count(region, event);
      if (c == 0) continue;
      t.cell(region_name(region))
          .cell(flop_event_name(event))
          .cell(c)
          .cell(static_cast<double>(c) * cost.weight(event));
      t.end_row();
    }
  return t;
}

// ---------------------------------------------------------------------------

int cmd_reduce(const std::string& input, double delta, bool allow_delta_one,
               const std::string& mode, const std::string& cost_path,
               const OutputOpts& out) {
  ComplexMatrix h = read_matrix_file(input);
  CostModel cost = load_cost_model(cost_path);
  ReductionParams params;
  params.delta = delta;
  params.allow_delta_one = allow_delta_one;

  ReductionOutput red = mode == "rlll" ? rlll_reduce(h, params, cost)
                                       : clll_reduce(h, params, cost);
  const ComplexMatrix& input_basis_for_check =
      red.real_embedded ? (is_real_valued(h) ? h : real_embed(h)) : h;

  ComplexMatrix product = input_basis_for_check * red.unimodular;
  double rel_err = frobenius_norm(product - red.reduced_basis) /
                   std::max(1e-300, frobenius_norm(red.reduced_basis));
  ReductionCheck check = is_clll_reduced(red.reduced_basis, delta);

  std::string stamp = effective_stamp(out);
  std::string basis_path = out_path(out, stamp, "reduce", "-reduced.txt");
  std::string u_path = out_path(out, stamp, "reduce", "-unimodular.txt");
  std::string report_path = out_path(out, stamp, "reduce", "-report.txt");
  std::string csv_path = out_path(out, stamp, "reduce", ".csv");

  write_matrix_file(basis_path, red.reduced_basis);
  write_matrix_file(u_path, red.unimodular);

  std::ofstream report(report_path);
  if (!report) throw Error("cannot open for writing: " + report_path);
  report << "mode=" << mode << "\n";
  report << "input=" << input << "\n";
  report << "rows=" << red.reduced_basis.rows() << "\n";
  report << "cols=" << red.reduced_basis.cols() << "\n";
  report << "delta=" << CsvTable::format_number(delta) << "\n";
  report << "swaps=" << red.swap_count << "\n";
  report << "size_reductions=" << red.size_reduce_count << "\n";
  report << "deep_test_evaluations=" << red.deep_test_evaluations << "\n";
  report << "deep_test_passes=" << red.deep_test_passes << "\n";
  report << "flops_total=" << CsvTable::format_number(red.flops_total()) << "\n";
  report << "reconstruction_rel_error=" << CsvTable::format_number(rel_err) << "\n";
  report << "is_reduced=" << (check.reduced ? "true" : "false") << "\n";
  report << "d_trace=";
  for (std::size_t i = 0; i < red.potential_trace.size(); ++i) {
    if (i) report << ",";
    report << CsvTable::format_number(red.potential_trace[i]);
  }
  report << "\n";
  report.close();

  tally_csv(red.tally, cost).write_file(csv_path);

  std::cout << basis_path << "\n" << u_path << "\n" << report_path << "\n"
            << csv_path << "\n";
  return check.reduced ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_simulate(SweepConfig cfg, const std::string& cost_path, const OutputOpts& out) {
  cfg.cost = load_cost_model(cost_path);
  SweepResult res = run_sweep(cfg);

  std::string stamp = effective_stamp(out);
  std::string csv_path = out_path(out, stamp, "simulate", ".csv");
  std::string ver_path = out_path(out, stamp, "simulate", ".svg");
  std::string ber_path = out_path(out, stamp, "simulate", "-ber.svg");
  sweep_to_csv(res).write_file(csv_path);

  auto chart = [&](bool ber) {
    SvgChartSpec spec;
    std::ostringstream title;
    title << cfg.m << "x" << cfg.n << " " << cfg.qam << "-QAM, delta="
          << cfg.delta << " (SNR = n*Es/(2*sigma^2))";
    spec.title = (ber ? std::string("BER, ") : std::string("VER, ")) + title.str();
    spec.x_label = "SNR (dB)";
    spec.y_label = ber ? "bit error rate" : "vector error rate";
    spec.log_y = true;
    for (std::size_t di = 0; di < cfg.detectors.size(); ++di) {
      SvgSeries s;
      s.label = detector_name(cfg.detectors[di]);
      for (std::size_t p = 0; p < cfg.snr_db.size(); ++p) {
        const DetectorPointStats& st = res.stats[p][di];
        s.points.emplace_back(cfg.snr_db[p],
                              ber ? st.ber(res.bits_per_vector) : st.ver());
      }
      spec.series.push_back(std::move(s));
    }
    return spec;
  };
  write_svg_file(ver_path, chart(false));
  write_svg_file(ber_path, chart(true));

  std::cout << csv_path << "\n" << ver_path << "\n" << ber_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_bench(const std::vector<std::size_t>& n_list, std::uint64_t trials, double delta,
              std::uint64_t seed, const std::string& cost_path, const OutputOpts& out) {
  CostModel cost = load_cost_model(cost_path);
  ReductionParams params;
  params.delta = delta;

  CsvTable t({"n", "rlll_flops", "clll_flops", "reduction_saved_pct", "real_qr_flops",
              "complex_qr_flops", "qr_saved_pct", "overall_saved_pct"});
  SvgChartSpec spec;
  spec.title = "Average reduction and QR cost (flops)";
  spec.x_label = "n";
  spec.y_label = "flops";
  spec.log_y = true;
  SvgSeries s_r{"rlll", {}}, s_c{"clll", {}}, s_qr{"qr real", {}}, s_qc{"qr complex", {}};

  for (std::size_t n : n_list) {
    double sum_c = 0.0, sum_r = 0.0, sum_qc = 0.0, sum_qr = 0.0;
    for (std::uint64_t tr = 0; tr < trials; ++tr) {
      Rng rng = Rng::derive(seed, 0x62656e63ULL ^ n, tr);
      ComplexMatrix h(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) h(i, j) = rng.next_cn01();
      ReductionOutput cred = clll_reduce(h, params, cost);
      ReductionOutput rred = rlll_reduce(h, params, cost);
      sum_c += cred.flops_total();
      sum_r += rred.flops_total();
      FlopTally qc, qr;
      (void)qr_decompose(cred.reduced_basis, FlopScope(&qc, Region::Qr));
      (void)qr_decompose(to_real(rred.reduced_basis), FlopScope(&qr, Region::Qr));
      sum_qc += qc.weighted_total(cost);
      sum_qr += qr.weighted_total(cost);
    }
    double tn = static_cast<double>(trials);
    double mc = sum_c / tn, mr = sum_r / tn, mqc = sum_qc / tn, mqr = sum_qr / tn;
    double red_saved = 100.0 * (1.0 - mc / mr);
    double qr_saved = 100.0 * (1.0 - mqc / mqr);
    double overall = 100.0 * (1.0 - (mc + mqc) / (mr + mqr));
    t.cell(n).cell(mr).cell(mc).cell(red_saved).cell(mqr).cell(mqc).cell(qr_saved)
        .cell(overall);
    t.end_row();
    double nx = static_cast<double>(n);
    s_r.points.emplace_back(nx, mr);
    s_c.points.emplace_back(nx, mc);
    s_qr.points.emplace_back(nx, mqr);
    s_qc.points.emplace_back(nx, mqc);
    std::printf("n=%zu rlll=%.2f clll=%.2f saved=%.1f%% qr_real=%.2f qr_complex=%.2f "
                "saved=%.1f%% overall=%.1f%%\n",
                n, mr, mc, red_saved, mqr, mqc, qr_saved, overall);
  }
  spec.series = {s_r, s_c, s_qr, s_qc};

  std::string stamp = effective_stamp(out);
  std::string csv_path = out_path(out, stamp, "bench", ".csv");
  std::string svg_path = out_path(out, stamp, "bench", ".svg");
  t.write_file(csv_path);
  write_svg_file(svg_path, spec);
  std::cout << csv_path << "\n" << svg_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_stats(const std::vector<std::size_t>& n_list, std::uint64_t trials, double delta,
              std::uint64_t seed, const OutputOpts& out) {
  CsvTable t({"n", "p_c", "p_c_stderr", "p_r", "p_r_stderr", "ratio"});
  SvgChartSpec spec;
  spec.title = "Deep size-reduction test pass probability";
  spec.x_label = "n";
  spec.y_label = "probability";
  spec.log_y = false;
  SvgSeries s_c{"complex (n)", {}}, s_r{"real (2n)", {}};
  for (std::size_t n : n_list) {
    auto [pc, pr] = estimate_pc_pr(n, trials, delta, seed);
    double ratio = pr.p_hat() > 0.0 ? pc.p_hat() / pr.p_hat() : 0.0;
    t.cell(n).cell(pc.p_hat()).cell(pc.stderr_hat()).cell(pr.p_hat())
        .cell(pr.stderr_hat()).cell(ratio);
    t.end_row();
    s_c.points.emplace_back(static_cast<double>(n), pc.p_hat());
    s_r.points.emplace_back(static_cast<double>(n), pr.p_hat());
    std::printf("n=%zu P_c=%.4f P_r=%.4f ratio=%.4f\n", n, pc.p_hat(), pr.p_hat(), ratio);
  }
  spec.series = {s_c, s_r};
  std::string stamp = effective_stamp(out);
  std::string csv_path = out_path(out, stamp, "stats", ".csv");
  std::string svg_path = out_path(out, stamp, "stats", ".svg");
  t.write_file(csv_path);
  write_svg_file(svg_path, spec);
  std::cout << csv_path << "\n" << svg_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::vector<double>& delta_list, const std::vector<std::size_t>& n_list,
               std::uint64_t trials, std::uint64_t seed, const OutputOpts& out) {
  CsvTable t({"check", "delta", "n", "index", "bound", "observed", "margin", "ok"});
  std::uint64_t violations = 0;
  std::uint64_t refusals = 0;

  auto row = [&](const std::string& check, double delta, std::size_t n, long index,
                 double bound, double observed, bool ok) {
    t.cell(check).cell(delta).cell(n).cell(static_cast<std::uint64_t>(index < 0 ? 0 : index))
        .cell(bound).cell(observed).cell(bound - observed).cell(ok ? "true" : "false");
    t.end_row();
    if (!ok) ++violations;
  };

  // geometric-sum inequality over the alpha grid (equality at j = 1)
  std::vector<double> alpha_grid;
  for (double a = 2.0; a <= 8.0 + 1e-9; a += 0.5) alpha_grid.push_back(a);
  for (const auto& r : verify_appendix_a(alpha_grid, 20))
    row("geom_sum_alpha_" + CsvTable::format_number(r.alpha), 0.0,
        static_cast<std::size_t>(r.j), r.j, r.rhs, r.lhs, r.ok);

  ReductionParams params;
  for (double delta : delta_list) {
    params.delta = delta;
    params.allow_delta_one = true;
    params.count_flops = false;
    for (std::size_t n : n_list) {
      ProximityBounds bounds = proximity_bounds(n, delta);
      // closed-form relations
      row("per_index_bound_order", delta, n, -1, 0.0, 0.0, [&] {
        for (std::size_t i = 0; i < n; ++i)
          if (bounds.sic_per_index_min[i] > bounds.sic_per_index_exp[i] * (1.0 + 1e-12))
            return false;
        return true;
      }());

      // Monte Carlo with the enumeration oracle where it applies
      if (n <= 3) {
        ProximityEmpirical emp = empirical_proximity(n, delta, trials, seed);
        for (std::size_t i = 0; i < n; ++i) {
          row("sic_proximity", delta, n, static_cast<long>(i), emp.sic_bound[i],
              emp.max_sic_ratio[i], emp.max_sic_ratio[i] <= emp.sic_bound[i] * (1 + 1e-9));
          row("zf_proximity", delta, n, static_cast<long>(i), emp.zf_bound[i],
              emp.max_zf_ratio[i], emp.max_zf_ratio[i] <= emp.zf_bound[i] * (1 + 1e-9));
        }
      } else {
        ++refusals;
        std::printf("note: enumeration oracle refused n=%zu (complex limit 3)\n", n);
      }

      // angle certificates and basis properties on sampled reductions
      std::uint64_t sample = std::min<std::uint64_t>(trials, 200);
      bool cert_ok = true;
      bool props_ok = true;
      double worst_angle_margin = 1e300;
      for (std::uint64_t tr = 0; tr < sample; ++tr) {
        Rng rng = Rng::derive(seed, 0x76657269ULL ^ n, tr);
        ComplexMatrix h(n, n);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i) h(i, j) = rng.next_cn01();
        ReductionOutput red = clll_reduce(h, params);
        for (std::size_t i = 0; i < n; ++i) {
          BabaiCertificate cert = verify_appendix_b(red.reduced_basis, delta, i);
          cert_ok = cert_ok && cert.ok;
          worst_angle_margin =
              std::min(worst_angle_margin, cert.sin_theta - cert.sin_theta_lower);
        }
        if (n <= 3) {
          double rmult = 1.0;
          for (std::size_t j = 0; j < n; ++j)
            rmult = std::max(rmult, column_norm(red.reduced_basis, j));
          double minc = 1e300;
          for (std::size_t j = 0; j < n; ++j)
            minc = std::min(minc, column_norm(red.reduced_basis, j));
          LatticeOracleResult oracle =
              shortest_vector_bruteforce(red.reduced_basis, rmult / minc + 1e-9);
          BasisPropertyReport rep = check_basis_properties(red, delta, &oracle);
          props_ok = props_ok && rep.product_ok && rep.first_vector_ok && rep.minima_ok;
        } else {
          BasisPropertyReport rep = check_basis_properties(red, delta, nullptr);
          props_ok = props_ok && rep.product_ok && rep.first_vector_ok;
        }
      }
      row("angle_certificates", delta, n, -1, 0.0, -worst_angle_margin, cert_ok);
      row("basis_properties", delta, n, -1, 0.0, 0.0, props_ok);
    }
  }

  std::string stamp = effective_stamp(out);
  std::string csv_path = out_path(out, stamp, "verify", ".csv");
  t.write_file(csv_path);
  std::cout << csv_path << "\n";
  std::printf("checks: %zu rows, %llu violations, %llu oracle refusals\n",
              t.rows().size(), static_cast<unsigned long long>(violations),
              static_cast<unsigned long long>(refusals));
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complex lattice reduction and reduction-aided MIMO detection toolkit"};
  app.require_subcommand(1);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Reduce a basis from a matrix file");
  std::string rd_input, rd_mode = "clll", rd_cost, rd_config;
  double rd_delta = 0.99;
  bool rd_allow_one = false;
  OutputOpts rd_out;
  reduce->add_option("input", rd_input, "Matrix text file")->required();
  reduce->add_option("--delta", rd_delta, "Reduction factor")->capture_default_str();
  reduce->add_flag("--allow-delta-one", rd_allow_one, "Permit delta = 1");
  reduce->add_option("--mode", rd_mode, "clll | rlll")
      ->check(CLI::IsMember({"clll", "rlll"}))
      ->capture_default_str();
  reduce->add_option("--cost-model", rd_cost, "Cost model override file");
  add_output_opts(reduce, rd_out);
  reduce->add_option("--config", rd_config, "key=value config file (flags override it)");
  allow_overrides(reduce);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo error-rate sweep");
  SweepConfig sim_cfg;
  sim_cfg.detectors = {DetectorKind::Zf, DetectorKind::Sic, DetectorKind::LrSicClll};
  std::string sim_detectors = "zf,sic,lr-sic-clll", sim_cost, sim_snr, sim_config;
  OutputOpts sim_out;
  simulate->add_option("--m", sim_cfg.m, "Receive antennas")->capture_default_str();
  simulate->add_option("--n", sim_cfg.n, "Transmit antennas")->capture_default_str();
  simulate->add_option("--qam", sim_cfg.qam, "Constellation order")->capture_default_str();
  simulate->add_option("--snr", sim_snr, "SNR grid in dB (comma separated)")
      ->required();
  simulate->add_option("--trials", sim_cfg.max_trials_per_point, "Max trials per point")
      ->capture_default_str();
  simulate
      ->add_option("--target-errors", sim_cfg.target_errors,
                   "Early-stop vector error count (0 = run all trials)")
      ->capture_default_str();
  simulate->add_option("--delta", sim_cfg.delta, "Reduction factor")
      ->capture_default_str();
  simulate->add_option("--detectors", sim_detectors, "Comma separated detector list")
      ->capture_default_str();
  simulate->add_option("--seed", sim_cfg.master_seed, "Master seed")
      ->capture_default_str();
  simulate
      ->add_option("--symbols-per-channel", sim_cfg.symbols_per_channel,
                   "Data vectors per channel draw")
      ->capture_default_str();
  simulate->add_option("--threads", sim_cfg.threads, "Worker threads")
      ->capture_default_str();
  simulate->add_option("--cost-model", sim_cost, "Cost model override file");
  add_output_opts(simulate, sim_out);
  simulate->add_option("--config", sim_config, "key=value config file (flags override it)");
  allow_overrides(simulate);

  // bench
  auto* bench = app.add_subcommand("bench", "Average reduction/QR complexity table");
  std::string bench_n = "2,3,4,6,8";
  std::uint64_t bench_trials = 2000, bench_seed = 1;
  double bench_delta = 0.99;
  std::string bench_cost, bench_config;
  OutputOpts bench_out;
  bench->add_option("--n", bench_n, "Dimension list (comma separated)")
      ->capture_default_str();
  bench->add_option("--trials", bench_trials, "Bases per dimension")
      ->capture_default_str();
  bench->add_option("--delta", bench_delta, "Reduction factor")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Seed")->capture_default_str();
  bench->add_option("--cost-model", bench_cost, "Cost model override file");
  add_output_opts(bench, bench_out);
  bench->add_option("--config", bench_config, "key=value config file (flags override it)");
  allow_overrides(bench);

  // stats
  auto* stats = app.add_subcommand("stats", "Deep test pass-probability table");
  std::string stats_n = "4,6,8,10";
  std::uint64_t stats_trials = 2000, stats_seed = 1;
  double stats_delta = 0.99;
  std::string stats_config;
  OutputOpts stats_out;
  stats->add_option("--n", stats_n, "Dimension list (comma separated)")
      ->capture_default_str();
  stats->add_option("--trials", stats_trials, "Reductions per dimension")
      ->capture_default_str();
  stats->add_option("--delta", stats_delta, "Reduction factor")->capture_default_str();
  stats->add_option("--seed", stats_seed, "Seed")->capture_default_str();
  add_output_opts(stats, stats_out);
  stats->add_option("--config", stats_config, "key=value config file (flags override it)");
  allow_overrides(stats);

  // verify
  auto* verify = app.add_subcommand("verify", "Run the bound and identity verifiers");
  std::string verify_delta = "0.75,0.99";
  std::string verify_n = "2,3,4";
  std::uint64_t verify_trials = 300, verify_seed = 1;
  std::string verify_config;
  OutputOpts verify_out;
  verify->add_option("--delta", verify_delta, "Delta list (comma separated)")
      ->capture_default_str();
  verify->add_option("--n", verify_n, "Dimension list (comma separated)")
      ->capture_default_str();
  verify->add_option("--trials", verify_trials, "Monte Carlo samples per setting")
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "Seed")->capture_default_str();
  add_output_opts(verify, verify_out);
  verify->add_option("--config", verify_config, "key=value config file (flags override it)");
  allow_overrides(verify);

  try {
    std::vector<std::string> args = splice_config(argc, argv);
    std::vector<const char*> cargv;
    cargv.reserve(args.size());
    for (const std::string& a : args) cargv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
      return app.exit(e);
    }

    if (reduce->parsed())
      return cmd_reduce(rd_input, rd_delta, rd_allow_one, rd_mode, rd_cost, rd_out);
    if (simulate->parsed()) {
      sim_cfg.snr_db = parse_double_list(sim_snr, "--snr");
      sim_cfg.detectors = parse_detector_list(sim_detectors);
      return cmd_simulate(sim_cfg, sim_cost, sim_out);
    }
    if (bench->parsed())
      return cmd_bench(parse_size_list(bench_n, "--n"), bench_trials, bench_delta,
                       bench_seed, bench_cost, bench_out);
    if (stats->parsed())
      return cmd_stats(parse_size_list(stats_n, "--n"), stats_trials, stats_delta,
                       stats_seed, stats_out);
    if (verify->parsed())
      return cmd_verify(parse_double_list(verify_delta, "--delta"),
                        parse_size_list(verify_n, "--n"), verify_trials, verify_seed,
                        verify_out);
  } catch (const latred::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
