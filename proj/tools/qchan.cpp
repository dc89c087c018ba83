// qchan: command-line driver for the random channel experiments.
//
// Every subcommand writes its tables into --out and finishes with exactly one
// manifest.json listing the parameters, seed and output files.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qchan/diamond.hpp"
#include "qchan/ensembles.hpp"
#include "qchan/experiments.hpp"
#include "qchan/freeprob.hpp"
#include "qchan/parallel.hpp"
#include "qchan/report.hpp"
#include "qchan/serialize.hpp"

#ifndef QCHAN_VERSION
#define QCHAN_VERSION "dev"
#endif

namespace fs = std::filesystem;
using namespace qchan;

namespace {

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out = "qchan_out";
  bool svg = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--threads", c.threads, "worker threads (QCHAN_THREADS overrides)");
  sub->add_option("--out", c.out, "output directory");
  sub->add_flag("--svg", c.svg, "also write SVG plots");
}

class Run {
 public:
  Run(std::string command, const Common& c) : c_(c) {
    m_.command = std::move(command);
    m_.master_seed = c.seed;
    m_.version = QCHAN_VERSION;
    m_.started = utc_now();
    m_.params["threads"] = resolve_threads(c.threads);
  }

  RunOptions options() const { return {c_.seed, resolve_threads(c_.threads)}; }
  nlohmann::json& params() { return m_.params; }

  void emit(const std::string& name, const std::string& content) {
    write_text(fs::path(c_.out) / name, content);
    m_.outputs.push_back(name);
  }
  void emit_svg(const std::string& name, const PlotSpec& plot) {
    if (c_.svg) emit(name, render_svg(plot));
  }

  void finish() {
    m_.finished = utc_now();
    write_text(fs::path(c_.out) / "manifest.json", m_.to_json().dump(2) + "\n");
  }

 private:
  Common c_;
  RunManifest m_;
};

PlotSpec plot(std::string title, std::string x_label, std::string y_label,
              std::vector<Series> series) {
  PlotSpec p;
  p.title = std::move(title);
  p.x_label = std::move(x_label);
  p.y_label = std::move(y_label);
  p.series = std::move(series);
  return p;
}

std::vector<double> column(const Table& t, std::size_t c) {
  std::vector<double> v;
  for (const auto& r : t.rows) v.push_back(r[c]);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random quantum channel distances: sampling, bounds and limit laws"};
  app.set_version_flag("--version", QCHAN_VERSION);
  app.require_subcommand(1);
  int exit_code = 0;

  // convergence
  Common cc;
  ConvergenceConfig conv;
  auto* c_conv = app.add_subcommand("convergence", "diamond-norm bounds for pairs of HS channels");
  add_common(c_conv, cc);
  c_conv->add_option("--d", conv.d_grid, "dimension grid (d1 = d2 = d)");
  c_conv->add_option("--n", conv.n, "samples per dimension");
  c_conv->add_option("--x", conv.x, "s/(d1 d2) for the first channel");
  c_conv->add_option("--y", conv.y, "s/(d1 d2) for the second channel");
  c_conv->callback([&] {
    Run run("convergence", cc);
    run.params()["d_grid"] = conv.d_grid;
    run.params()["n"] = conv.n;
    run.params()["x"] = conv.x;
    run.params()["y"] = conv.y;
    const double limit = delta(SmpParams{conv.x, conv.y}).value;
    const auto rows = cmd_convergence(conv, run.options());
    const Table t = convergence_table(rows, limit);
    run.emit("convergence.csv", t.to_csv());
    PlotSpec p = plot("Diamond norm bounds", "d", "distance",
                      {{"lower", column(t, 0), column(t, 2), false},
                       {"upper", column(t, 0), column(t, 4), false}});
    p.has_reference = true;
    p.reference = limit;
    p.reference_label = "limit";
    run.emit_svg("convergence.svg", p);
    run.finish();
  });

  // smp-hist
  Common hc;
  SmpHistogramConfig hist;
  auto* c_hist = app.add_subcommand("smp-hist", "eigenvalue histogram of a subtracted Wishart pair");
  add_common(c_hist, hc);
  c_hist->add_option("--x", hist.x);
  c_hist->add_option("--y", hist.y);
  c_hist->add_option("--d1", hist.d1);
  c_hist->add_option("--d2", hist.d2);
  c_hist->add_option("--bins", hist.bins);
  c_hist->add_option("--n", hist.n, "independent samples pooled");
  c_hist->callback([&] {
    Run run("smp-hist", hc);
    run.params() = {{"x", hist.x}, {"y", hist.y}, {"d1", hist.d1}, {"d2", hist.d2},
                    {"bins", hist.bins}, {"n", hist.n}, {"threads", run.params()["threads"]}};
    const auto res = cmd_smp_histogram(hist, run.options());
    run.emit("histogram.csv", res.histogram.to_csv());
    run.emit("density.csv", res.density.to_csv());
    const nlohmann::json summary = {{"ks_distance", res.ks_distance},
                                    {"atom_empirical", res.atom_empirical},
                                    {"atom_theory", res.atom_theory},
                                    {"eigenvalues", res.eigenvalues.size()}};
    run.emit("summary.json", summary.dump(2) + "\n");
    PlotSpec p = plot("Subtracted Marchenko-Pastur", "u", "density",
                      {{"limit", column(res.density, 0), column(res.density, 1), false}});
    p.bar_edges = column(res.histogram, 0);
    p.bar_heights = column(res.histogram, 3);
    if (!res.histogram.rows.empty()) p.bar_edges.push_back(res.histogram.rows.back()[1]);
    run.emit_svg("histogram.svg", p);
    run.finish();
  });

  // depol-curve
  Common dc;
  DepolConfig depol;
  auto* c_depol = app.add_subcommand("depol-curve", "distance to the maximally depolarizing channel");
  add_common(c_depol, dc);
  c_depol->add_option("--x", depol.x_grid, "grid of s/(d1 d2)");
  c_depol->add_option("--d", depol.d);
  c_depol->add_option("--n", depol.n, "Monte Carlo samples per point (0: closed form only)");
  c_depol->callback([&] {
    Run run("depol-curve", dc);
    run.params()["x_grid"] = depol.x_grid;
    run.params()["d"] = depol.d;
    run.params()["n"] = depol.n;
    const Table t = depol_table(cmd_depol_curve(depol, run.options()));
    run.emit("depol.csv", t.to_csv());
    run.emit_svg("depol.svg", plot("Distance to the depolarizing channel", "x", "distance",
                               {{"closed form", column(t, 0), column(t, 1), false},
                                {"Monte Carlo", column(t, 0), column(t, 2), true}}));
    run.finish();
  });

  // brownian-curve
  Common bc;
  BrownianConfig brown;
  auto* c_brown = app.add_subcommand("brownian-curve", "two independent unitary Brownian motions");
  add_common(c_brown, bc);
  c_brown->add_option("--st", brown.st_grid, "grid of s + t");
  c_brown->add_option("--d", brown.d);
  c_brown->add_option("--steps", brown.steps, "time steps per motion (0: default rule)");
  c_brown->add_option("--n", brown.n);
  c_brown->callback([&] {
    Run run("brownian-curve", bc);
    run.params()["st_grid"] = brown.st_grid;
    run.params()["d"] = brown.d;
    run.params()["steps"] = brown.steps;
    run.params()["n"] = brown.n;
    const Table t = brownian_table(cmd_brownian_curve(brown, run.options()));
    run.emit("brownian.csv", t.to_csv());
    run.emit_svg("brownian.svg", plot("Unitary Brownian motions", "s+t", "diamond norm",
                                  {{"closed form", column(t, 0), column(t, 1), false},
                                   {"Monte Carlo", column(t, 0), column(t, 2), true}}));
    run.finish();
  });

  // approx-check
  Common ac;
  ApproxConfig approx;
  auto* c_approx = app.add_subcommand("approx-check", "partial normalization against rescaling");
  add_common(c_approx, ac);
  c_approx->add_option("--d", approx.d_grid);
  c_approx->add_option("--x", approx.x);
  c_approx->add_option("--n", approx.n);
  c_approx->callback([&] {
    Run run("approx-check", ac);
    run.params()["d_grid"] = approx.d_grid;
    run.params()["x"] = approx.x;
    run.params()["n"] = approx.n;
    const ApproxResult res = cmd_approximation_check(approx, run.options());
    run.emit("approx.csv", approx_table(res.rows).to_csv());
    if (res.flagged) {
      std::cerr << "warning: scaled error grows by more than 1.5x across the grid\n";
      exit_code = 2;
    }
    run.finish();
  });

  // weingarten-check
  Common wc;
  WeingartenConfig wein;
  auto* c_wein = app.add_subcommand("weingarten-check", "Haar moment closed forms vs Monte Carlo");
  add_common(c_wein, wc);
  c_wein->add_option("--d1", wein.d1);
  c_wein->add_option("--d2", wein.d2);
  c_wein->add_option("--n", wein.n);
  c_wein->callback([&] {
    if (wein.n == 0) throw CLI::ValidationError("--n", "must be positive");
    Run run("weingarten-check", wc);
    run.params()["d1"] = wein.d1;
    run.params()["d2"] = wein.d2;
    run.params()["n"] = wein.n;
    const auto rows = cmd_weingarten_check(wein, run.options());
    run.emit("weingarten.json", weingarten_json(rows).dump(2) + "\n");
    for (const auto& r : rows) {
      if (std::abs(r.z_score) > 4.0) {
        std::cerr << r.pattern << ": |z| = " << std::abs(r.z_score) << " > 4\n";
        exit_code = 3;
      }
    }
    run.finish();
  });

  // bounds
  Common oc;
  std::string choi_path;
  Index bd1 = 0, bd2 = 0;
  bool no_seesaw = false;
  auto* c_bounds = app.add_subcommand("bounds", "diamond-norm bounds of a serialized Choi matrix");
  add_common(c_bounds, oc);
  c_bounds->add_option("file", choi_path, "QCRM file")->required()->check(CLI::ExistingFile);
  c_bounds->add_option("--d1", bd1, "input dimension")->required();
  c_bounds->add_option("--d2", bd2, "output dimension")->required();
  c_bounds->add_flag("--no-seesaw", no_seesaw, "skip the see-saw lower bound");
  c_bounds->callback([&] {
    Run run("bounds", oc);
    run.params()["file"] = choi_path;
    run.params()["d1"] = bd1;
    run.params()["d2"] = bd2;
    run.params()["seesaw"] = !no_seesaw;
    const MatrixXcd j = load_qcrm(choi_path);
    const double defect = (j - j.adjoint()).norm();
    const bool herm = defect <= 1e-12 * std::max(1.0, j.norm());
    DiamondBounds b;
    if (herm && !no_seesaw) {
      RngStream rng(oc.seed, 0);
      b = seesaw_diamond(BipartiteOperator<double>::hermitian(bd1, bd2, (j + j.adjoint()) / 2.0),
                         SeesawOptions{}, rng);
    } else {
      b = diamond_bounds(herm ? BipartiteOperator<double>::hermitian(bd1, bd2, j)
                              : BipartiteOperator<double>(bd1, bd2, j));
    }
    run.emit("bounds.json", b.to_json() + "\n");
    run.finish();
  });

  // sample
  Common sc;
  std::string kind = "hs_channel";
  EnsembleSpec spec{EnsembleKind::hs_channel, 2, 2, 4, 0.0};
  std::uint64_t stream = 0;
  auto* c_sample = app.add_subcommand("sample", "draw one random Choi matrix");
  add_common(c_sample, sc);
  c_sample->add_option("--kind", kind, "hs_channel, stinespring_channel, haar_unitary, unitary_brownian");
  c_sample->add_option("--d1", spec.d1);
  c_sample->add_option("--d2", spec.d2);
  c_sample->add_option("--s", spec.s);
  c_sample->add_option("--t", spec.t, "Brownian time");
  c_sample->add_option("--stream", stream, "stream index");
  c_sample->callback([&] {
    const auto parsed = parse_ensemble_kind(kind);
    if (!parsed) throw CLI::ValidationError("--kind", "unknown ensemble '" + kind + "'");
    spec.kind = *parsed;
    Run run("sample", sc);
    run.params() = {{"kind", kind}, {"d1", spec.d1}, {"d2", spec.d2}, {"s", spec.s},
                    {"t", spec.t}, {"stream", stream}};
    RngStream rng(sc.seed, stream);
    auto sample = sample_channel<double>(spec, rng);
    std::ostringstream bin;
    write_qcrm(bin, sample.choi.mat());
    run.emit("choi.qcrm", bin.str());
    run.emit("choi.json", to_json(SampleSidecar{spec, sc.seed, stream}) + "\n");
    run.finish();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const qchan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
