// SPDX-License-Identifier: Apache-2.0
//
// ellrange: command-line front end. Each subcommand reads its inputs, calls
// the library and prints a JSON run report on stdout. Exit codes: 0 success,
// 1 negative verdict, 2 parse error, 3 numerical error, 4 precondition error.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ellrange/ando.hpp"
#include "ellrange/calcnorm.hpp"
#include "ellrange/dilation.hpp"
#include "ellrange/dpops.hpp"
#include "ellrange/errors.hpp"
#include "ellrange/io.hpp"
#include "ellrange/numrange.hpp"
#include "ellrange/svg.hpp"

namespace {

using namespace ellrange;
using io::json;

enum Exit { kOk = 0, kNegative = 1, kParse = 2, kNumeric = 3, kPrecondition = 4 };

struct Report {
  json j;
  int code = kOk;

  Report(const std::string& command, double delta) {
    j["command"] = command;
    j["delta"] = delta;
    j["verdict"] = "";
    j["residuals"] = json::object();
    j["artifacts"] = json::array();
  }
  void verdict(const std::string& v, int c) {
    j["verdict"] = v;
    code = c;
  }
  void residual(const std::string& name, double v) { j["residuals"][name] = v; }
  void artifact(const std::string& path) { j["artifacts"].push_back(path); }
  int emit() const {
    std::cout << j.dump(2) << '\n';
    return code;
  }
};

void note(const std::string& msg) { std::cerr << msg << '\n'; }

// --- range-check -----------------------------------------------------------

struct RangeArgs {
  std::string input;
  double delta = 0.0;
  double tol = 1e-8;
  int angles = kDefaultAngles;
  int circle_points = kDefaultCirclePoints;
};

int cmd_range_check(const RangeArgs& a) {
  const ComplexMatrix t = io::read_matrix_file(a.input).matrix;
  Report r("range-check", a.delta);
  const SupportVerdict sv = contains_support(t, a.delta, a.angles, a.tol);
  r.residual("support_min_gap", sv.min_gap);
  r.j["witness"] = {{"theta", sv.worst_theta}, {"point", {sv.witness.real(), sv.witness.imag()}}};
  r.j["support_verdict"] = to_string(sv.verdict);

  std::string herglotz;
  try {
    const HerglotzReport hr = herglotz_check(t, a.delta, a.circle_points, a.tol);
    r.residual("herglotz_min_eigenvalue", hr.min_eigenvalue);
    herglotz = hr.nonnegative ? "nonnegative" : "negative";
  } catch (const SpectrumOutsideError&) {
    herglotz = "spectrum-outside";
  } catch (const SingularResolventError&) {
    herglotz = "singular";
  }
  r.j["herglotz_verdict"] = herglotz;

  const bool h_in = herglotz == "nonnegative";
  const bool h_out = herglotz == "negative" || herglotz == "spectrum-outside";
  switch (sv.verdict) {
    case Inclusion::Inside:
      if (h_in) r.verdict("inside", kOk);
      else r.verdict("disagreement", kNumeric);
      break;
    case Inclusion::Outside:
      if (h_out) r.verdict("outside", kNegative);
      else r.verdict("disagreement", kNumeric);
      break;
    case Inclusion::Boundary:
      r.verdict("boundary", kOk);
      break;
  }
  if (r.j["verdict"] == "disagreement") {
    note("support sweep and Herglotz test disagree: min gap " + std::to_string(sv.min_gap) +
         ", Herglotz " + herglotz);
  }
  return r.emit();
}

// --- dilate ----------------------------------------------------------------

struct DilateArgs {
  std::string input;
  double delta = 0.0;
  int max_power = 12;
  int z_samples = 32;
  std::string out;
};

int cmd_dilate(const DilateArgs& a) {
  const ComplexMatrix t = io::read_matrix_file(a.input).matrix;
  Report r("dilate", a.delta);
  ScalingOptions opts;
  opts.max_power = a.max_power;
  opts.z_samples = a.z_samples;
  try {
    const ScalingResult sr = find_scaling(t, a.delta, opts);
    r.j["iterations"] = sr.iterations;
    if (!sr.feasible()) {
      r.j["reason"] = sr.reason;
      r.verdict("infeasible", kNegative);
      return r.emit();
    }
    const DilationCertificate& c = *sr.certificate;
    r.residual("lmi_residual", c.residuals.lmi);
    r.residual("isometry_residual", c.residuals.isometry);
    r.residual("series_residual", c.residuals.series);
    r.residual("delta_column_residual", c.residuals.delta_column);
    r.residual("scaled_norm", c.residuals.contraction);
    if (!a.out.empty()) {
      io::write_atomic(a.out, io::certificate_to_json(c, a.delta).dump(2) + "\n");
      r.artifact(a.out);
    }
    r.verdict("feasible", kOk);
  } catch (const SolverStalledError& e) {
    r.j["reason"] = e.what();
    r.residual("stall_residual", e.residual());
    r.verdict("stalled", kNumeric);
  }
  return r.emit();
}

// --- ando ------------------------------------------------------------------

struct AndoArgs {
  std::string input;
  double delta = 0.0;
  bool factor = false;
  std::vector<std::string> compose;
  std::string out;
};

int cmd_ando(const AndoArgs& a) {
  Report r("ando", a.delta);
  json artifact;
  if (!a.compose.empty()) {
    const ComplexMatrix am = io::read_matrix_file(a.compose[0]).matrix;
    const ComplexMatrix bm = io::read_matrix_file(a.compose[1]).matrix;
    const ComplexMatrix t = ando_compose(am, bm, a.delta);
    r.j["T"] = io::matrix_to_json(t);
    const SupportVerdict sv = contains_support(t, a.delta, kDefaultAngles, 1e-8);
    r.residual("support_min_gap", sv.min_gap);
    r.j["inclusion"] = to_string(sv.verdict);
    artifact = io::matrix_to_json(t, "T");
    r.verdict("composed", kOk);
  } else {
    if (a.input.empty()) throw ParseError("--factor needs an input matrix");
    const ComplexMatrix t = io::read_matrix_file(a.input).matrix;
    try {
      const AndoFactors f = ando_factor(t, a.delta);
      r.j["A"] = io::matrix_to_json(f.A);
      r.j["B"] = io::matrix_to_json(f.B);
      r.residual("reconstruction_residual", f.reconstruction_residual);
      r.residual("norm_A", operator_norm(f.A));
      r.residual("norm_B", operator_norm(f.B));
      artifact = {{"A", io::matrix_to_json(f.A)}, {"B", io::matrix_to_json(f.B)}, {"delta", a.delta}};
      r.verdict("factored", kOk);
    } catch (const InfeasibleError& e) {
      r.j["reason"] = e.what();
      r.verdict("infeasible", kNegative);
      return r.emit();
    } catch (const SolverStalledError& e) {
      r.j["reason"] = e.what();
      r.verdict("stalled", kNumeric);
      return r.emit();
    }
  }
  if (!a.out.empty()) {
    io::write_atomic(a.out, artifact.dump(2) + "\n");
    r.artifact(a.out);
  }
  return r.emit();
}

// --- dp --------------------------------------------------------------------

struct DpArgs {
  std::string input;
  double delta = 0.0;
  bool extend = false;
  bool push = false;
  bool fact103 = false;
  std::string out;
};

int cmd_dp(const DpArgs& a) {
  Report r("dp", a.delta);
  if (a.fact103) {
    const Fact103Report f = fact103_demo(a.delta);
    r.residual("hausdorff", f.hausdorff);
    r.residual("quadratic", f.quadratic);
    r.residual("closed_form_norm", f.closed_form_norm);
    r.residual("closed_form_preimage_residual", f.closed_form_residual);
    r.residual("preimage_norm", f.preimage_norm);
    r.residual("preimage_residual", f.preimage_residual);
    r.j["T"] = io::matrix_to_json(f.T);
    r.j["closed_form_X"] = io::matrix_to_json(f.closed_form_X);
    r.j["closed_form_verdict"] = to_string(f.closed_form_verdict);
    r.j["preimage_X"] = io::matrix_to_json(f.preimage_X);
    r.j["preimage_verdict"] = to_string(f.preimage_verdict);
    char line[200];
    std::snprintf(line, sizeof line, "X %s; 1-6d+d^2 = %.6g",
                  f.closed_form_verdict == DpVerdict::NotDouglasPaulsen ? "not Douglas-Paulsen"
                  : f.closed_form_verdict == DpVerdict::Boundary        ? "on the Douglas-Paulsen boundary"
                                                                        : "Douglas-Paulsen",
                  f.quadratic);
    r.j["message"] = line;
    note(line);
    char line2[200];
    std::snprintf(line2, sizeof line2,
                  "solved preimage of T: |X| = %.12g, |pi(X) - T| = %.3g, verdict %s",
                  f.preimage_norm, f.preimage_residual, to_string(f.preimage_verdict));
    note(line2);
    r.verdict("reported", kOk);
    return r.emit();
  }
  if (a.input.empty()) throw ParseError("--extend/--push need an input matrix");
  const ComplexMatrix m = io::read_matrix_file(a.input).matrix;
  if (a.push) {
    const ComplexMatrix t = dp_push(m, a.delta);
    r.j["T"] = io::matrix_to_json(t);
    const SupportVerdict sv = contains_support(t, a.delta, kDefaultAngles, 1e-8);
    r.residual("support_min_gap", sv.min_gap);
    r.verdict(to_string(sv.verdict), sv.verdict == Inclusion::Outside ? kNegative : kOk);
    if (!a.out.empty()) {
      io::write_atomic(a.out, io::matrix_to_json(t, "T").dump(2) + "\n");
      r.artifact(a.out);
    }
    return r.emit();
  }
  // --extend
  ComplexMatrix t = m;
  ScalingOptions opts;
  const SupportVerdict sv = contains_support(t, a.delta, kDefaultAngles, 1e-9);
  double scale = 1.0;
  if (sv.verdict == Inclusion::Boundary) {
    scale = 1.0 - 1e-6;
    t *= scale;
    opts.near_boundary_policy = false;
    note("W(T) touches the ellipse; extending (1 - 1e-6) T instead");
  }
  r.j["shrink"] = scale;
  try {
    const DpWitness w = dp_extend(t, a.delta, opts);
    r.j["X"] = io::matrix_to_json(w.X);
    r.residual("norm_X", w.norm_X);
    r.residual("norm_Xinv", w.norm_Xinv);
    r.residual("restriction_residual", w.restriction_residual);
    r.residual("offdiag_residual", w.offdiag_residual);
    if (!a.out.empty()) {
      io::write_atomic(a.out, io::matrix_to_json(w.X, "X").dump(2) + "\n");
      r.artifact(a.out);
    }
    r.verdict("extended", kOk);
  } catch (const InfeasibleError& e) {
    r.j["reason"] = e.what();
    r.verdict("infeasible", kNegative);
  } catch (const SolverStalledError& e) {
    r.j["reason"] = e.what();
    r.verdict("stalled", kNumeric);
  }
  return r.emit();
}

// --- norm ------------------------------------------------------------------

struct NormArgs {
  std::string phi;
  double delta = 0.0;
  std::string mode = "bfd";
  int dim = 2;
  int samples = 1000;
  std::uint64_t seed = 42;
};

int cmd_norm(const NormArgs& a) {
  Report r("norm", a.delta);
  r.j["seed"] = a.seed;
  r.j["mode"] = a.mode;
  PolyFn phi{io::read_coeffs_file(a.phi)};
  NormEstimate e;
  if (a.mode == "bfd") {
    e = sample_bfd(phi, a.delta, a.dim, a.samples, a.seed);
    const double kappa = delyon_bound(a.delta);
    const double sup = sup_on_Gdelta(phi, a.delta);
    r.residual("upper_bound", kappa * sup);
    r.residual("sup_on_ellipse", sup);
  } else {
    e = sample_dp(pi_sharp(phi, a.delta), a.delta, a.dim, a.samples, a.seed);
  }
  r.residual("lower_bound", e.lower_bound);
  r.j["witness"] = io::matrix_to_json(e.witness);
  r.j["witness_kind"] = e.witness_kind;
  r.j["witness_index"] = e.witness_index;
  r.j["samples_used"] = e.samples_used;
  r.verdict("estimated", kOk);
  return r.emit();
}

// --- plot ------------------------------------------------------------------

struct PlotArgs {
  std::string input;
  double delta = 0.0;
  std::string out = "boundary.svg";
  int angles = kDefaultAngles;
};

int cmd_plot(const PlotArgs& a) {
  const ComplexMatrix t = io::read_matrix_file(a.input).matrix;
  Report r("plot", a.delta);
  const RangeBoundary rb = range_boundary(t, a.angles);
  const double h = hausdorff_to_ellipse(t, a.delta, a.angles);
  r.residual("hausdorff", h);
  io::write_atomic(a.out, render_range_svg(rb, a.delta, h));
  r.artifact(a.out);
  r.verdict("plotted", kOk);
  return r.emit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ellrange: numerical ranges in the ellipse K_delta, dilations and Ando factors"};
  app.require_subcommand(1);

  auto check_delta = CLI::Range(0.0, 1.0 - 1e-15);

  RangeArgs ra;
  auto* range = app.add_subcommand("range-check", "Decide W(T) in K_delta by two tests");
  range->add_option("input", ra.input, "Matrix JSON file")->required();
  range->add_option("--delta", ra.delta, "Ellipse parameter in [0, 1)")->required()->check(check_delta);
  range->add_option("--tol", ra.tol, "Boundary tolerance");
  range->add_option("--angles", ra.angles, "Support angles")->check(CLI::Range(8, 1 << 22));
  range->add_option("--circle-points", ra.circle_points, "Herglotz grid")->check(CLI::Range(8, 1 << 22));

  DilateArgs da;
  auto* dilate = app.add_subcommand("dilate", "Scaling certificate and even-stranger dilation");
  dilate->add_option("input", da.input, "Matrix JSON file")->required();
  dilate->add_option("--delta", da.delta, "Ellipse parameter in (0, 1)")->required()->check(check_delta);
  dilate->add_option("--max-power", da.max_power, "Largest power in the series check")->check(CLI::Range(0, 1000));
  dilate->add_option("--z-samples", da.z_samples, "Points in the disc for the series check")->check(CLI::Range(0, 100000));
  dilate->add_option("--out", da.out, "Certificate JSON output");

  AndoArgs aa;
  auto* ando = app.add_subcommand("ando", "Elliptical Ando factorization");
  ando->add_option("input", aa.input, "Matrix JSON file (for --factor)");
  ando->add_option("--delta", aa.delta, "Ellipse parameter")->required()->check(check_delta);
  auto* factor_flag = ando->add_flag("--factor", aa.factor, "Factor T into (A, B)");
  auto* compose_opt = ando->add_option("--compose", aa.compose, "Compose T from A.json B.json")->expected(2);
  factor_flag->excludes(compose_opt);
  ando->add_option("--out", aa.out, "Output JSON");

  DpArgs pa;
  auto* dp = app.add_subcommand("dp", "Douglas-Paulsen operations");
  dp->add_option("input", pa.input, "Matrix JSON file");
  dp->add_option("--delta", pa.delta, "Ellipse parameter in (0, 1)")->required()->check(check_delta);
  auto* ext = dp->add_flag("--extend", pa.extend, "Extend T to pi(X) on the doubled space");
  auto* push = dp->add_flag("--push", pa.push, "Compute pi(X) = X + delta X^-1");
  auto* f103 = dp->add_flag("--fact103", pa.fact103, "Focal boundary example report");
  ext->excludes(push)->excludes(f103);
  push->excludes(f103);
  dp->add_option("--out", pa.out, "Output JSON");

  NormArgs na;
  auto* norm = app.add_subcommand("norm", "Sampled calcular-norm bounds");
  norm->add_option("--phi", na.phi, "Coefficient JSON (ascending powers)")->required();
  norm->add_option("--delta", na.delta, "Ellipse parameter")->required()->check(check_delta);
  norm->add_option("--mode", na.mode, "bfd or dp")->check(CLI::IsMember({"bfd", "dp"}));
  norm->add_option("--dim", na.dim, "Matrix dimension")->check(CLI::Range(1, 64));
  norm->add_option("--samples", na.samples, "Number of samples")->check(CLI::Range(1, 10000000));
  norm->add_option("--seed", na.seed, "Random seed (default 42)");

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "SVG of W(T) against the ellipse");
  plot->add_option("input", pl.input, "Matrix JSON file")->required();
  plot->add_option("--delta", pl.delta, "Ellipse parameter")->required()->check(check_delta);
  plot->add_option("--out", pl.out, "SVG output path");
  plot->add_option("--angles", pl.angles, "Support angles")->check(CLI::Range(8, 1 << 22));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }

  try {
    if (*range) return cmd_range_check(ra);
    if (*dilate) return cmd_dilate(da);
    if (*ando) {
      if (!aa.factor && aa.compose.empty()) throw ParseError("ando needs --factor or --compose");
      return cmd_ando(aa);
    }
    if (*dp) {
      if (!pa.extend && !pa.push && !pa.fact103) throw ParseError("dp needs --extend, --push or --fact103");
      return cmd_dp(pa);
    }
    if (*norm) return cmd_norm(na);
    if (*plot) return cmd_plot(pl);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kParse;
}
