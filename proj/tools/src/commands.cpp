// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "egpc/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "egpc/csv.hpp"
#include "egpc/dataset.hpp"
#include "egpc/error.hpp"
#include "egpc/random.hpp"
#include "egpc/report.hpp"

namespace egpc::cli
{

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace
{

constexpr int kManifestVersion = 1;
constexpr const char* kManifestName = "artifacts.json";
constexpr Index kExportedModes = 3;

std::string relative_to(const fs::path& target, const fs::path& base)
{
  return fs::relative(fs::absolute(target), fs::absolute(base)).generic_string();
}

void write_json(const fs::path& path, const Json& j)
{
  write_text(path, j.dump(2) + "\n");
}

Json read_json(const fs::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  try {
    return Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("'" + path.string() + "' is not a valid manifest: " + e.what());
  }
}

void require_class(const std::string& name)
{
  const auto& names = class_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string known;
    for (const auto& n : names) {
      known += (known.empty() ? "" : ", ") + n;
    }
    throw UsageError("unknown geometry class '" + name + "' (known: " + known + ")");
  }
}

std::string threshold_label(double th)
{
  return "t(" + format_double(th) + ")";
}

} // namespace

fs::path default_out_dir()
{
  const char* env = std::getenv("EGPC_OUT_DIR");
  if (env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  return fs::path(".");
}

fs::path cmd_gen(const GenOptions& opt, std::ostream& out)
{
  require_class(opt.class_name);
  if (opt.m < 2) {
    throw UsageError("--m must be at least 2");
  }
  const GeometryClassSpec spec = class_spec(opt.class_name, opt.points);
  Dataset ds = build_dataset(spec, opt.m, opt.seed);
  ds.created = opt.created;

  const fs::path path = opt.out.empty() ? default_out_dir() / (opt.class_name + ".egpc") : opt.out;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  save(ds, path);
  out << "class " << spec.name << ": k = " << spec.k() << ", n = " << spec.n_points << ", m = " << ds.size()
      << ", seed = " << ds.seed << " -> " << path.string() << '\n';
  return path;
}

fs::path cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& err)
{
  const Dataset ds = load_dataset(opt.dataset);
  const std::uint64_t split_seed = opt.split_seed.value_or(ds.seed);
  const fs::path dir = opt.out_dir.empty() ? default_out_dir() / ds.spec.name : opt.out_dir;
  fs::create_directories(dir);

  std::vector<RPreset> presets;
  for (const auto& name : opt.presets) {
    try {
      presets.push_back(parse_preset(name));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }

  if (!(opt.train_fraction > 0.0 && opt.train_fraction < 1.0)) {
    throw UsageError("--train-fraction must lie in (0, 1)");
  }
  const Index m = ds.size();
  const auto n_train = static_cast<Index>(std::floor(opt.train_fraction * static_cast<double>(m)));
  Split sp;
  if (n_train >= 2 && n_train < m) {
    sp = split(ds, opt.train_fraction, split_seed);
  } else {
    err << "warning: " << m << " samples are too few for a train/test split; fitting on all samples, "
        << "no test set\n";
    for (Index i = 0; i < m; ++i) {
      sp.train.push_back(i);
    }
  }

  const DataMatrix X = ds.data_matrix(sp.train);
  const ParameterMatrix P = ds.parameter_matrix(sp.train);
  const PcaModel model = fit_pca(X);
  const Index k = ds.spec.k();
  const Index q = model.rank();

  out << "class " << ds.spec.name << ": k = " << k << ", rank = " << q << ", train = " << sp.train.size()
      << ", test = " << sp.test.size() << '\n';
  if (q <= 1) {
    err << "warning: the model retains " << q << " component" << (q == 1 ? "" : "s") << '\n';
  }

  Json crv_json = Json::object();
  if (q > 0) {
    out << "  CRV:";
    for (const double th : kDefaultThresholds) {
      const Index t = min_components(model, th);
      out << ' ' << threshold_label(th) << " = " << t;
      crv_json[format_double(th)] = t;
    }
    out << '\n';
  }

  save(model, dir / "model.egpc");

  Json maps = Json::array();
  for (const auto& rp : resolve_presets(model, k, presets)) {
    const std::string name = preset_name(rp.preset);
    if (rp.clamped()) {
      err << "warning: preset '" << name << "' requests r = " << rp.requested << " but the model retains " << q
          << " components; using r = " << rp.r << '\n';
    }
    ParameterMap map;
    try {
      map = fit_parameter_map(model, X, P, rp.r);
    } catch (const RankError& e) {
      throw RankError("r preset '" + name + "': " + e.what());
    }
    const std::string file = "map_" + name + ".egpc";
    save(map, dir / file);
    maps.push_back({{"preset", name}, {"requested", rp.requested}, {"r", rp.r}, {"file", file}});
    out << "  map " << name << ": r = " << rp.r << " -> " << (dir / file).string() << '\n';
  }
  for (const Index r : opt.explicit_r) {
    const std::string name = "r" + std::to_string(r);
    if (r < 1 || r > q) {
      throw RangeError("explicit r = " + std::to_string(r) + " is outside [1, " + std::to_string(q) +
                       "], the model rank");
    }
    const ParameterMap map = fit_parameter_map(model, X, P, r);
    const std::string file = "map_" + name + ".egpc";
    save(map, dir / file);
    maps.push_back({{"preset", name}, {"requested", r}, {"r", r}, {"file", file}});
    out << "  map " << name << ": r = " << r << " -> " << (dir / file).string() << '\n';
  }

  CsvTable split_csv;
  split_csv.header = {"set", "index"};
  for (const Index i : sp.train) {
    split_csv.rows.push_back({"train", std::to_string(i)});
  }
  for (const Index i : sp.test) {
    split_csv.rows.push_back({"test", std::to_string(i)});
  }
  write_csv(dir / "split.csv", split_csv);

  Json manifest;
  manifest["version"] = kManifestVersion;
  manifest["class"] = ds.spec.name;
  manifest["k"] = k;
  manifest["n_points"] = ds.spec.n_points;
  manifest["samples"] = m;
  manifest["dataset"] = relative_to(opt.dataset, dir);
  manifest["dataset_seed"] = ds.seed;
  manifest["split_seed"] = split_seed;
  manifest["train_fraction"] = opt.train_fraction;
  manifest["split"] = "split.csv";
  manifest["model"] = "model.egpc";
  manifest["rank"] = q;
  manifest["crv"] = crv_json;
  manifest["maps"] = maps;
  write_json(dir / kManifestName, manifest);
  return dir;
}

ParameterVector cmd_estimate(const EstimateOptions& opt, std::ostream& out)
{
  const bool from_cloud = !opt.cloud.empty();
  const bool from_dataset = !opt.dataset.empty();
  if (from_cloud == from_dataset) {
    throw UsageError("pass exactly one of --cloud or --dataset");
  }
  if (from_dataset != opt.index.has_value()) {
    throw UsageError("--dataset and --index go together");
  }

  const PcaModel model = load_pca_model(opt.model);
  const ParameterMap map = load_parameter_map(opt.map);

  DesignVector x;
  std::vector<std::string> names;
  std::optional<ParameterVector> truth;
  if (from_cloud) {
    x = vec(read_geometry_csv(opt.cloud));
  } else {
    const Dataset ds = load_dataset(opt.dataset);
    const Index i = *opt.index;
    if (i < 0 || i >= ds.size()) {
      throw RangeError("--index " + std::to_string(i) + " outside dataset of size " + std::to_string(ds.size()));
    }
    const auto& sample = ds.samples[static_cast<std::size_t>(i)];
    x = vec(sample.cloud);
    names = ds.spec.parameter_names;
    truth = sample.params;
  }

  const ParameterVector p = estimate(map, model, x);
  if (names.size() != static_cast<std::size_t>(p.size())) {
    names.clear();
    for (Index j = 0; j < p.size(); ++j) {
      names.push_back("p" + std::to_string(j + 1));
    }
  }
  for (Index j = 0; j < p.size(); ++j) {
    out << names[static_cast<std::size_t>(j)] << " = " << format_double(p[j]);
    if (truth) {
      out << " (generating value " << format_double((*truth)[j]) << ')';
    }
    out << '\n';
  }
  return p;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out)
{
  if (opt.configs < 1) {
    throw UsageError("--configs must be positive");
  }
  if (opt.trials < 1) {
    throw UsageError("--trials must be positive");
  }
  if (!(opt.tol >= 0.0)) {
    throw UsageError("--tol must be non-negative");
  }
  const Dataset ds = load_dataset(opt.dataset);
  const DataMatrix X = ds.data_matrix();
  const ParameterMatrix P = ds.parameter_matrix();
  const Index points = ds.spec.n_points;

  bool all_passed = true;
  MassWeightConfig last;
  for (Index c = 0; c < opt.configs; ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    const MassWeightConfig config = opt.identity
                                        ? MassWeightConfig::identity(points)
                                        : random_mass_weight_config(points, hash_counters(opt.seed, uc, 1));
    const EquivalenceReport rep = verify_equivalence(X, P, config, opt.trials, opt.tol, hash_counters(opt.seed, uc, 2));
    all_passed = all_passed && rep.passed;
    out << "config " << c + 1 << (opt.identity ? " (identity)" : "") << ": estimate deviation "
        << format_double(rep.estimate_deviation) << ", operator deviation " << format_double(rep.operator_deviation)
        << ", transpose deviation " << format_double(rep.transpose_deviation) << ", ranks " << rep.standard_rank
        << '/' << rep.joint_rank << ", " << (rep.passed ? "pass" : "FAIL") << '\n';
    last = config;
  }
  out << ds.spec.name << ": " << (all_passed ? "equivalent" : "NOT equivalent") << " within tolerance "
      << format_double(opt.tol) << " over " << opt.configs << " configuration" << (opt.configs == 1 ? "" : "s")
      << " and " << opt.trials << " probes each\n";

  if (!opt.save_joint.empty()) {
    if (opt.save_joint.has_parent_path()) {
      fs::create_directories(opt.save_joint.parent_path());
    }
    save(fit_joint_pca(X, P, last), opt.save_joint);
  }
  return all_passed ? kExitOk : kExitVerificationFailed;
}

void cmd_report(const ReportOptions& opt, std::ostream& out)
{
  if (opt.artifacts.empty()) {
    throw UsageError("report needs at least one --artifacts directory");
  }
  const fs::path dir = opt.out_dir.empty() ? default_out_dir() / "report" : opt.out_dir;
  fs::create_directories(dir / "spectra");
  fs::create_directories(dir / "geometry");

  struct Loaded
  {
    std::string name;
    Index k = 0;
    PcaModel model;
  };
  std::vector<Loaded> loaded;
  std::vector<ErrorReport> errors;
  std::set<std::string> seen;

  for (const auto& art : opt.artifacts) {
    const Json manifest = read_json(art / kManifestName);
    Loaded entry;
    std::vector<Index> test;
    std::vector<Index> train;
    Dataset ds;
    try {
      if (manifest.at("version").get<int>() != kManifestVersion) {
        throw VersionError("'" + (art / kManifestName).string() + "' has an unsupported manifest version");
      }
      entry.name = manifest.at("class").get<std::string>();
      entry.k = manifest.at("k").get<Index>();
      ds = load_dataset(art / manifest.at("dataset").get<std::string>());
      entry.model = load_pca_model(art / manifest.at("model").get<std::string>());
      const CsvTable sp = read_csv(art / manifest.at("split").get<std::string>());
      for (const auto& row : sp.rows) {
        const auto idx = static_cast<Index>(std::stoll(row.at(1)));
        (row.at(0) == "test" ? test : train).push_back(idx);
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("'" + (art / kManifestName).string() + "': " + e.what());
    } catch (const std::invalid_argument&) {
      throw FormatError("'" + art.string() + "': split.csv holds a non-integer index");
    }
    if (!seen.insert(entry.name).second) {
      throw UsageError("class '" + entry.name + "' appears in more than one artifact directory");
    }

    ErrorReport rep;
    rep.name = entry.name;
    rep.parameter_names = ds.spec.parameter_names;
    if (!test.empty()) {
      const DataMatrix Xt = ds.data_matrix(test);
      const ParameterMatrix Pt = ds.parameter_matrix(test);
      for (const auto& m : manifest.at("maps")) {
        const ParameterMap map = load_parameter_map(art / m.at("file").get<std::string>());
        const std::string preset = m.at("preset").get<std::string>();
        if (preset.rfind('r', 0) == 0) {
          continue; // explicit r values are not part of the preset study
        }
        PresetError pe;
        pe.preset = {parse_preset(preset), m.at("requested").get<Index>(), m.at("r").get<Index>()};
        pe.summary = estimation_error(map, entry.model, Xt, Pt);
        rep.presets.push_back(std::move(pe));
      }
    }
    errors.push_back(std::move(rep));

    export_eigenvalue_spectrum(entry.model, dir / "spectra" / (entry.name + ".csv"));
    const fs::path gdir = dir / "geometry" / entry.name;
    fs::create_directories(gdir);
    export_geometry(entry.model.mean, gdir / "mean.csv");
    const std::vector<Index>& shown = test.empty() ? train : test;
    for (std::size_t i = 0; i < std::min<std::size_t>(kExportedModes, shown.size()); ++i) {
      const DesignVector x = vec(ds.samples[static_cast<std::size_t>(shown[i])].cloud);
      export_geometry(x - entry.model.mean, gdir / ("centered_" + std::to_string(i + 1) + ".csv"));
    }
    for (Index i = 0; i < std::min(kExportedModes, entry.model.rank()); ++i) {
      export_geometry(entry.model.eigenvectors.col(i), gdir / ("eigen_" + std::to_string(i + 1) + ".csv"));
    }
    loaded.push_back(std::move(entry));
  }

  std::vector<NamedModel> named;
  for (const auto& l : loaded) {
    named.push_back({l.name, l.k, &l.model});
  }
  const CrvTable table = crv_table(named, opt.thresholds);
  write_csv(dir / "crv_table.csv", to_table(table));
  write_csv(dir / "errors.csv", to_table(errors));
  write_text(dir / "errors.txt", to_text(errors));

  out << "CRV table (components needed per threshold)\n";
  for (const auto& row : table.rows) {
    out << "  " << row.name << " (k = " << row.k << "):";
    for (std::size_t j = 0; j < row.t.size(); ++j) {
      out << ' ' << threshold_label(table.thresholds[j]) << " = " << row.t[j];
    }
    out << '\n';
  }
  out << "report written to " << dir.string() << '\n';
}

void cmd_pipeline(const PipelineOptions& opt, std::ostream& out, std::ostream& err)
{
  const std::vector<std::string> classes = opt.classes.empty() ? class_names() : opt.classes;
  for (const auto& c : classes) {
    require_class(c);
  }
  if (opt.jobs < 1) {
    throw UsageError("--jobs must be positive");
  }
  const fs::path root = opt.out_dir.empty() ? default_out_dir() : opt.out_dir;
  fs::create_directories(root);

  struct Outcome
  {
    std::string out;
    std::string err;
    std::exception_ptr error;
  };
  std::vector<Outcome> outcomes(classes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < classes.size(); i = next++) {
      std::ostringstream o;
      std::ostringstream e;
      try {
        const fs::path dir = root / classes[i];
        GenOptions g;
        g.class_name = classes[i];
        g.m = opt.m;
        g.seed = opt.seed;
        g.points = opt.points;
        g.out = dir / "dataset.egpc";
        cmd_gen(g, o);
        FitOptions f;
        f.dataset = g.out;
        f.out_dir = dir;
        f.train_fraction = opt.train_fraction;
        cmd_fit(f, o, e);
      } catch (...) {
        outcomes[i].error = std::current_exception();
      }
      outcomes[i].out = o.str();
      outcomes[i].err = e.str();
    }
  };
  const unsigned threads = std::min<unsigned>(opt.jobs, static_cast<unsigned>(classes.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }

  for (const auto& o : outcomes) {
    out << o.out;
    err << o.err;
  }
  for (const auto& o : outcomes) {
    if (o.error) {
      std::rethrow_exception(o.error);
    }
  }

  ReportOptions r;
  for (const auto& c : classes) {
    r.artifacts.push_back(root / c);
  }
  r.out_dir = root / "report";
  cmd_report(r, out);
}

} // namespace egpc::cli
