// hmfa: multifractal analysis on the Heisenberg group.
//
// Exit codes: 0 pass, 1 analytic failure, 2 usage/configuration error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hmfa/analysis.hpp"
#include "hmfa/carnot.hpp"
#include "hmfa/field.hpp"
#include "hmfa/group.hpp"
#include "hmfa/io.hpp"
#include "hmfa/lattice.hpp"
#include "hmfa/scan.hpp"
#include "hmfa/verify.hpp"

namespace {

using namespace hmfa;

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  return &file;
}

int cmd_verify(const std::string& suite, const std::string& spec_path, std::int64_t mc_samples,
               std::uint64_t seed) {
  std::vector<verify::CheckRow> rows;
  auto extend = [&rows](std::vector<verify::CheckRow> more) {
    rows.insert(rows.end(), more.begin(), more.end());
  };
  std::optional<carnot::StratificationSpec> extra;
  if (!spec_path.empty()) extra = io::load_carnot_spec(spec_path);
  if (suite == "group" || suite == "all") extend(verify::group_suite(mc_samples, seed));
  if (suite == "lattice" || suite == "all") extend(verify::lattice_suite());
  if (suite == "carnot" || suite == "all")
    extend(verify::carnot_suite(extra, std::min<std::int64_t>(mc_samples, 4'000'000), seed));
  if (suite == "besov" || suite == "all") extend(verify::besov_suite());
  if (rows.empty()) throw std::invalid_argument("unknown suite: " + suite);
  const bool ok = verify::print_rows(std::cout, rows);
  std::cout << (ok ? "all checks passed" : "FAILURES present") << "\n";
  return ok ? 0 : 1;
}

int cmd_synth(const std::string& kind, double s, double p, double q, int jmax, int N,
              const std::string& base, const std::string& out) {
  io::FieldFile f;
  f.j_min = 1;
  f.j_max = jmax;
  f.support = synth::Support::L0;
  if (kind == "zero") {
    f.rule = "zero";
  } else if (kind == "besov-saturating") {
    f.params = {s, p, q, 4};
    f.has_params = true;
    f.params.validate();  // s > Q/p etc.
    f.rule = "besov-saturating";
  } else if (kind == "monofractal-round") {
    f.params = {s, p, q, 4};
    f.has_params = true;
    if (N < 1) throw std::domain_error("monofractal-round: N >= 1 required");
    const std::string b = base.empty() ? "zero" : base;
    if (b != "zero" && b != "besov-saturating")
      throw std::invalid_argument("base must be zero or besov-saturating");
    if (b == "besov-saturating") f.params.validate();
    f.rule = "monofractal-round(" + b + "," + std::to_string(N) + ")";
  } else {
    throw std::invalid_argument("unknown synth kind: " + kind);
  }
  (void)io::build_field(f);  // validate before writing
  io::save_field(out, f);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_exponent(const std::string& field_path, const std::string& points_path,
                 const std::string& rate, int jlo, int jhi, int jcap, const std::string& mode,
                 const std::string& lmode, const std::string& out) {
  const synth::CoefficientField field = io::load_field(field_path);
  std::vector<GPoint> pts;
  std::string provenance;
  if (!rate.empty()) {
    const double xi = (rate == "inf") ? std::numeric_limits<double>::infinity() : std::stod(rate);
    pts.push_back(lattice::point_with_rate(xi, 8));
    provenance = "rate=" + rate + " probe via dyadic approximation construction";
  } else if (!points_path.empty()) {
    pts = io::load_points(points_path);
    provenance = "points from " + points_path;
  } else {
    throw std::invalid_argument("exponent: need --points or --rate");
  }
  const analysis::FitMode fm =
      (mode == "raw") ? analysis::FitMode::Raw : analysis::FitMode::LogCorrected;
  const analysis::LeaderMode lm =
      (lmode == "windowed") ? analysis::LeaderMode::Windowed : analysis::LeaderMode::ExactStructured;

  std::ofstream file;
  std::ostream& os = *open_out(out, file);
  io::CsvWriter csv(os);
  csv.comment("pointwise exponent scan: " + provenance);
  csv.comment("jwindow=[" + std::to_string(jlo) + "," + std::to_string(jhi) + "] jcap=" +
              std::to_string(jcap) + " mode=" + mode + " leaders=" + lmode);
  // the converse criterion needs a global Hoelder floor; report the check at
  // sigma = global/2
  {
    const auto ge = analysis::global_exponent(field, jlo, jhi);
    if (ge.infinite) {
      csv.comment("sigma-check: field has no nonzero coefficients in the window");
    } else {
      const double sigma = ge.value / 2.0;
      csv.comment("sigma-check: global exponent " + io::fmt(ge.value) +
                  "; coefficients satisfy the global criterion at sigma = " + io::fmt(sigma));
    }
  }
  csv.header({"x_p", "x_q", "x_r", "h_hat", "residual"});
  for (const GPoint& x : pts) {
    const auto est = analysis::pointwise_exponent(field, x, jlo, jhi, fm, lm, jcap);
    csv.row({x.p, x.q, x.r, est.infinite ? std::numeric_limits<double>::infinity() : est.value,
             est.residual});
  }
  return 0;
}

int cmd_spectrum(const std::string& field_path, int jlo, int jhi, double h0, double h1, int hn,
                 double C0, const std::string& out) {
  const synth::CoefficientField field = io::load_field(field_path);
  std::vector<double> grid;
  for (int i = 0; i < hn; ++i) grid.push_back(h0 + (h1 - h0) * i / std::max(1, hn - 1));
  std::optional<double> c0opt;
  if (C0 > 0) c0opt = C0;
  const auto est = analysis::counting_spectrum(field, jlo, jhi, grid, c0opt);

  std::ofstream file;
  std::ostream& os = *open_out(out, file);
  io::CsvWriter csv(os);
  csv.comment("counting spectrum, jwindow=[" + std::to_string(jlo) + "," + std::to_string(jhi) +
              "], C0=" + io::fmt(est.C0));
  if (field.params()) {
    const auto& pr = *field.params();
    double dev = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < est.h.size(); ++i) {
      if (std::isinf(est.d_hat[i])) continue;
      const double limit = pr.p * (est.h[i] - pr.s + pr.Q / pr.p);
      dev = std::max(dev, std::abs(est.d_hat[i] - limit));
      any = true;
    }
    if (any) csv.comment("max |d_hat - p(h-s+Q/p)| = " + io::fmt(dev));
    csv.comment(std::string("counting inequality: ") + (est.lemma_counts_ok ? "holds" : "VIOLATED") +
                " (margin " + io::fmt(est.lemma_margin) + ")");
  }
  csv.header({"h", "d_hat", "bound"});
  for (std::size_t i = 0; i < est.h.size(); ++i) csv.row({est.h[i], est.d_hat[i], est.bound[i]});
  return 0;
}

int cmd_counting(const std::string& field_path, int jlo, int jhi, double h0, double h1, int hn,
                 double C0, const std::string& out) {
  const synth::CoefficientField field = io::load_field(field_path);
  synth::BesovParams params = field.params() ? *field.params() : synth::BesovParams{};
  const double c0 = C0 > 0 ? C0 : analysis::empirical_embedding_constant(
                                      field, params, std::min(jlo + 2, jhi), jhi);
  std::ofstream file;
  std::ostream& os = *open_out(out, file);
  io::CsvWriter csv(os);
  csv.comment("coefficient counting, C0=" + io::fmt(c0));
  csv.header({"j", "h", "count"});
  for (int j = jlo; j <= jhi; ++j) {
    for (int i = 0; i < hn; ++i) {
      const double h = h0 + (h1 - h0) * i / std::max(1, hn - 1);
      csv.row({double(j), h, double(analysis::coefficient_counting(field, j, h, c0))});
    }
  }
  return 0;
}

int cmd_rate(const std::string& points_path, const std::string& xi_arg, int depth, int jlo,
             int jhi, int window, const std::string& out) {
  std::vector<GPoint> pts;
  std::vector<int> scales;
  std::ofstream file;
  std::ostream& os = *open_out(out, file);
  io::CsvWriter csv(os);
  if (!xi_arg.empty()) {
    const double xi = (xi_arg == "inf") ? std::numeric_limits<double>::infinity() : std::stod(xi_arg);
    pts.push_back(lattice::point_with_rate(xi, depth));
    scales = lattice::rate_probe_scales(xi, depth);
    // drop the a_1 = 2 event: constant factors swamp the credit at tiny scales
    if (!scales.empty()) scales.erase(scales.begin());
    if (!scales.empty() && !std::isinf(xi)) scales.pop_back();  // x is dyadic at the last scale
    csv.comment("probe constructed with xi=" + xi_arg + ", depth=" + std::to_string(depth));
  } else if (!points_path.empty()) {
    pts = io::load_points(points_path);
  } else {
    throw std::invalid_argument("rate: need --points or --xi");
  }
  if (scales.empty())
    for (int j = jlo; j <= jhi; ++j) scales.push_back(j);
  csv.comment("covering constant C = " + io::fmt(constants::kCoveringConstant));
  csv.header({"j", "m_j", "rate"});
  for (const GPoint& x : pts) {
    const auto res = lattice::approx_rate(x, scales, window);
    for (const auto& s : res.samples) csv.row({double(s.j), s.min_dist, s.credit});
    csv.comment("xi_hat = " + io::fmt(res.xi_hat) + (res.dyadic ? " (dyadic point)" : ""));
  }
  return 0;
}

int cmd_taylor(const std::string& fn_name, double x0p, double x0q, double x0r, int order,
               double rho_hi, double rho_lo, int n_radii) {
  if (order > 3) throw std::invalid_argument("taylor: order <= 3 supported");
  std::function<double(const GPoint&)> f;
  if (fn_name == "coord-r") {
    f = [](const GPoint& x) { return x.r; };
  } else if (fn_name == "coord-p") {
    f = [](const GPoint& x) { return x.p; };
  } else if (fn_name == "sin-p-cos-r") {
    f = [](const GPoint& x) { return std::sin(x.p) * std::cos(x.r); };
  } else if (fn_name == "gauss") {
    f = [](const GPoint& x) { return std::exp(-(x.p * x.p + x.q * x.q + x.r * x.r)); };
  } else if (fn_name == "constant") {
    f = [](const GPoint&) { return 1.0; };
  } else {
    throw std::invalid_argument(
        "unknown function id (have: coord-r, coord-p, sin-p-cos-r, gauss, constant)");
  }
  const GPoint x0{x0p, x0q, x0r};
  const auto table = analysis::derivative_table(f, x0, order);
  const auto poly = analysis::taylor_poly(table, order);
  std::cout << "Taylor polynomial of '" << fn_name << "' at (" << io::fmt(x0p) << ", "
            << io::fmt(x0q) << ", " << io::fmt(x0r) << "), order " << order << ":\n";
  for (const auto& [mono, c] : poly.coef) {
    std::cout << "  p^" << mono[0] << " q^" << mono[1] << " r^" << mono[2] << " : " << io::fmt(c)
              << "\n";
  }
  std::vector<double> radii;
  for (int i = 0; i < n_radii; ++i) {
    const double t = double(i) / std::max(1, n_radii - 1);
    radii.push_back(rho_hi * std::pow(rho_lo / rho_hi, t));
  }
  const double slope = analysis::taylor_remainder_slope(f, x0, order, radii);
  std::cout << "remainder slope: " << io::fmt(slope) << " (expect >= " << order + 1 << " - 0.1)\n";
  if (std::isinf(slope)) {
    std::cout << "remainder vanishes identically (polynomial reproduced exactly)\n";
    return 0;
  }
  return (slope >= order + 1 - 0.1) ? 0 : 1;
}

int cmd_carnot_check(const std::string& path) {
  const auto spec = io::load_carnot_spec(path);
  const auto rep = carnot::validate_spec(spec);
  std::cout << "layers:";
  for (int q : spec.layers()) std::cout << " " << q;
  std::cout << "\nstep " << spec.step() << ", dim " << spec.total_dim() << ", Q_G " << spec.hom_dim()
            << ", sigma lcm " << spec.sigma_lcm() << "\n";
  if (rep.valid()) {
    std::cout << "spec is a valid stratification\n";
    return 0;
  }
  for (const auto& fmsg : rep.failures) std::cout << "FAIL: " << fmsg << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multifractal analysis on the Heisenberg group"};
  app.require_subcommand(1);

  int threads = 0;
  if (const char* env = std::getenv("HMFA_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "worker threads (results are thread-count independent)");

  // verify
  std::string suite = "all", spec_path;
  std::int64_t mc_samples = 10'000'000;
  std::uint64_t seed = 2026;
  auto* verify_cmd = app.add_subcommand("verify", "run an oracle suite");
  verify_cmd->add_option("suite", suite, "lattice|group|carnot|besov|all");
  verify_cmd->add_option("--spec", spec_path, "extra Carnot spec file to validate");
  verify_cmd->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
  verify_cmd->add_option("--seed", seed, "RNG seed");

  // synth
  std::string synth_kind, synth_base, synth_out = "field.txt";
  double s = 2.0, p = 2.0, q = 2.0;
  int jmax = 24, N = 3;
  auto* synth_cmd = app.add_subcommand("synth", "write a coefficient-field file");
  synth_cmd->add_option("kind", synth_kind, "besov-saturating|monofractal-round|zero")->required();
  synth_cmd->add_option("--s", s, "smoothness");
  synth_cmd->add_option("--p", p, "integrability");
  synth_cmd->add_option("--q", q, "summability");
  synth_cmd->add_option("--jmax", jmax, "largest scale");
  synth_cmd->add_option("--N", N, "rounding level");
  synth_cmd->add_option("--base", synth_base, "rounding base rule (zero|besov-saturating)");
  synth_cmd->add_option("--out", synth_out, "output path");

  // exponent
  std::string field_path, points_path, rate_arg, fit_mode = "log-corrected",
              leader_mode = "exact", exp_out;
  int jlo = 4, jhi = 16, jcap = 24;
  auto* exp_cmd = app.add_subcommand("exponent", "pointwise exponent scan -> CSV");
  exp_cmd->add_option("--field", field_path)->required();
  exp_cmd->add_option("--points", points_path, "probe points file (p q r per line)");
  exp_cmd->add_option("--rate", rate_arg, "construct a probe with this approximation rate (or inf)");
  exp_cmd->add_option("--jmin", jlo);
  exp_cmd->add_option("--jmax", jhi);
  exp_cmd->add_option("--jcap", jcap, "leader search depth cap");
  exp_cmd->add_option("--mode", fit_mode, "raw|log-corrected");
  exp_cmd->add_option("--leaders", leader_mode, "exact|windowed");
  exp_cmd->add_option("--out", exp_out, "CSV path (default stdout)");

  // spectrum
  std::string spec_field, spec_out;
  int sp_jlo = 4, sp_jhi = 14, sp_hn = 8;
  double sp_h0 = 0.25, sp_h1 = 1.9, sp_c0 = 0.0;
  auto* spec_cmd = app.add_subcommand("spectrum", "counting spectrum -> CSV");
  spec_cmd->add_option("--field", spec_field)->required();
  spec_cmd->add_option("--jmin", sp_jlo);
  spec_cmd->add_option("--jmax", sp_jhi);
  spec_cmd->add_option("--hmin", sp_h0);
  spec_cmd->add_option("--hmax", sp_h1);
  spec_cmd->add_option("--hcount", sp_hn);
  spec_cmd->add_option("--C0", sp_c0, "threshold constant (default: empirical)");
  spec_cmd->add_option("--out", spec_out, "CSV path (default stdout)");

  // counting
  std::string cnt_field, cnt_out;
  int cnt_jlo = 2, cnt_jhi = 10, cnt_hn = 8;
  double cnt_h0 = 0.25, cnt_h1 = 1.9, cnt_c0 = 0.0;
  auto* cnt_cmd = app.add_subcommand("counting", "threshold counts N_f(j,h) -> CSV");
  cnt_cmd->add_option("--field", cnt_field)->required();
  cnt_cmd->add_option("--jmin", cnt_jlo);
  cnt_cmd->add_option("--jmax", cnt_jhi);
  cnt_cmd->add_option("--hmin", cnt_h0);
  cnt_cmd->add_option("--hmax", cnt_h1);
  cnt_cmd->add_option("--hcount", cnt_hn);
  cnt_cmd->add_option("--C0", cnt_c0);
  cnt_cmd->add_option("--out", cnt_out);

  // rate
  std::string rate_points, rate_xi, rate_out;
  int rate_depth = 8, rate_jlo = 4, rate_jhi = 20, rate_window = 3;
  auto* rate_cmd = app.add_subcommand("rate", "dyadic approximation rates -> CSV");
  rate_cmd->add_option("--points", rate_points);
  rate_cmd->add_option("--xi", rate_xi, "construct a probe with this rate (or inf)");
  rate_cmd->add_option("--depth", rate_depth);
  rate_cmd->add_option("--jmin", rate_jlo);
  rate_cmd->add_option("--jmax", rate_jhi);
  rate_cmd->add_option("--window", rate_window);
  rate_cmd->add_option("--out", rate_out);

  // taylor
  std::string ty_fn = "coord-r";
  double ty_p = 0, ty_q = 0, ty_r = 0, ty_hi = 0.3, ty_lo = 0.003;
  int ty_order = 2, ty_nr = 9;
  auto* ty_cmd = app.add_subcommand("taylor", "Taylor polynomial + remainder slope");
  ty_cmd->add_option("function", ty_fn, "coord-r|coord-p|sin-p-cos-r|gauss|constant");
  ty_cmd->add_option("--x0p", ty_p);
  ty_cmd->add_option("--x0q", ty_q);
  ty_cmd->add_option("--x0r", ty_r);
  ty_cmd->add_option("--order", ty_order);
  ty_cmd->add_option("--rho-hi", ty_hi);
  ty_cmd->add_option("--rho-lo", ty_lo);
  ty_cmd->add_option("--radii", ty_nr);

  // carnot check
  std::string carnot_path;
  auto* carnot_cmd = app.add_subcommand("carnot", "Carnot spec utilities");
  auto* carnot_check = carnot_cmd->add_subcommand("check", "validate a stratification spec file");
  carnot_check->add_option("file", carnot_path)->required();

  CLI11_PARSE(app, argc, argv);
  scan::set_thread_count(threads);

  try {
    if (*verify_cmd) return cmd_verify(suite, spec_path, mc_samples, seed);
    if (*synth_cmd) return cmd_synth(synth_kind, s, p, q, jmax, N, synth_base, synth_out);
    if (*exp_cmd)
      return cmd_exponent(field_path, points_path, rate_arg, jlo, jhi, jcap, fit_mode, leader_mode,
                          exp_out);
    if (*spec_cmd) return cmd_spectrum(spec_field, sp_jlo, sp_jhi, sp_h0, sp_h1, sp_hn, sp_c0, spec_out);
    if (*cnt_cmd) return cmd_counting(cnt_field, cnt_jlo, cnt_jhi, cnt_h0, cnt_h1, cnt_hn, cnt_c0, cnt_out);
    if (*rate_cmd)
      return cmd_rate(rate_points, rate_xi, rate_depth, rate_jlo, rate_jhi, rate_window, rate_out);
    if (*ty_cmd) return cmd_taylor(ty_fn, ty_p, ty_q, ty_r, ty_order, ty_hi, ty_lo, ty_nr);
    if (*carnot_check) return cmd_carnot_check(carnot_path);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
