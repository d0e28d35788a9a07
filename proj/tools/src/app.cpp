// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <exception>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "egpc/cli/commands.hpp"
#include "egpc/error.hpp"

namespace egpc::cli
{

namespace
{

std::string class_list()
{
  std::string s;
  for (const auto& n : class_names()) {
    s += (s.empty() ? "" : ", ") + n;
  }
  return s;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Parametric geometry classes: datasets, PCA, parameter estimation and reports", "egpc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "egpc 0.1.0");

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a dataset of one geometry class");
  g->add_option("--class", gen.class_name, "Geometry class (" + class_list() + ")")->required();
  g->add_option("--m", gen.m, "Number of samples")->capture_default_str();
  g->add_option("--seed", gen.seed, "Sampling seed")->capture_default_str();
  g->add_option("--points", gen.points, "Points per cloud")->capture_default_str();
  g->add_option("--created", gen.created, "Timestamp stored in the file (seconds since the epoch)");
  g->add_option("--out", gen.out, "Output file (default: $EGPC_OUT_DIR/<class>.egpc)");

  FitOptions fit;
  std::uint64_t split_seed = 0;
  auto* f = app.add_subcommand("fit", "Fit PCA and parameter maps on the training split");
  f->add_option("--dataset", fit.dataset, "Dataset file")->required()->check(CLI::ExistingFile);
  f->add_option("--out", fit.out_dir, "Artifact directory (default: $EGPC_OUT_DIR/<class>)");
  auto* split_opt = f->add_option("--split-seed", split_seed, "Split seed (default: the dataset seed)");
  f->add_option("--train-fraction", fit.train_fraction, "Training fraction")->capture_default_str();
  f->add_option("--presets", fit.presets, "r presets: k, t95, 200")->delimiter(',')->capture_default_str();
  f->add_option("--r", fit.explicit_r, "Additional explicit component counts")->delimiter(',');

  EstimateOptions est;
  Index index = 0;
  auto* e = app.add_subcommand("estimate", "Estimate design parameters of one point cloud");
  e->add_option("--model", est.model, "PCA model file")->required()->check(CLI::ExistingFile);
  e->add_option("--map", est.map, "Parameter map file")->required()->check(CLI::ExistingFile);
  e->add_option("--cloud", est.cloud, "Point cloud CSV with columns x,y,z")->check(CLI::ExistingFile);
  e->add_option("--dataset", est.dataset, "Dataset file")->check(CLI::ExistingFile);
  auto* index_opt = e->add_option("--index", index, "Sample index within --dataset");

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "Compare joint-PCA and standard parameter estimation");
  v->add_option("--dataset", ver.dataset, "Dataset file")->required()->check(CLI::ExistingFile);
  v->add_option("--seed", ver.seed, "Seed for mass/weight configurations and probes")->capture_default_str();
  v->add_option("--configs", ver.configs, "Number of random configurations")->capture_default_str();
  v->add_option("--trials", ver.trials, "Probe vectors per configuration")->capture_default_str();
  v->add_option("--tol", ver.tol, "Relative tolerance")->capture_default_str();
  v->add_flag("--identity", ver.identity, "Use unit masses and weights");
  v->add_option("--save-joint", ver.save_joint, "Write the last joint model to this file");

  ReportOptions rep;
  auto* r = app.add_subcommand("report", "Write CRV table, spectra, error summaries and geometry exports");
  r->add_option("--artifacts", rep.artifacts, "Artifact directories written by fit")
      ->required()
      ->check(CLI::ExistingDirectory);
  r->add_option("--out", rep.out_dir, "Report directory (default: $EGPC_OUT_DIR/report)");
  r->add_option("--thresholds", rep.thresholds, "CRV thresholds")->delimiter(',')->capture_default_str();

  PipelineOptions pipe;
  auto* p = app.add_subcommand("pipeline", "gen, fit and report for several classes");
  p->add_option("--classes", pipe.classes, "Classes (default: all)")->delimiter(',');
  p->add_option("--m", pipe.m, "Samples per class")->capture_default_str();
  p->add_option("--seed", pipe.seed, "Seed")->capture_default_str();
  p->add_option("--points", pipe.points, "Points per cloud")->capture_default_str();
  p->add_option("--train-fraction", pipe.train_fraction, "Training fraction")->capture_default_str();
  p->add_option("--jobs", pipe.jobs, "Classes processed in parallel")->capture_default_str();
  p->add_option("--out", pipe.out_dir, "Output directory (default: $EGPC_OUT_DIR)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) {
      cmd_gen(gen, out);
    } else if (f->parsed()) {
      if (split_opt->count() > 0) {
        fit.split_seed = split_seed;
      }
      cmd_fit(fit, out, err);
    } else if (e->parsed()) {
      if (index_opt->count() > 0) {
        est.index = index;
      }
      cmd_estimate(est, out);
    } else if (v->parsed()) {
      return cmd_verify(ver, out);
    } else if (r->parsed()) {
      cmd_report(rep, out);
    } else if (p->parsed()) {
      cmd_pipeline(pipe, out, err);
    }
  } catch (const UsageError& ue) {
    err << "usage error: " << ue.what() << '\n';
    return kExitUsage;
  } catch (const Error& de) {
    err << "error: " << de.what() << '\n';
    return kExitData;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

} // namespace egpc::cli
