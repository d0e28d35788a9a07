// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "egpc/report.hpp"

#include <sstream>

#include "egpc/error.hpp"

namespace egpc
{

CrvTable crv_table(const std::vector<NamedModel>& models, const std::vector<double>& thresholds)
{
  for (const double th : thresholds) {
    if (!(th > 0.0 && th <= 1.0)) {
      throw DomainError("CRV threshold " + format_double(th) + " is outside (0, 1]");
    }
  }
  CrvTable table;
  table.thresholds = thresholds;
  for (const auto& nm : models) {
    if (nm.model == nullptr) {
      throw DomainError("crv_table: no model for class '" + nm.name + "'");
    }
    CrvRow row{nm.name, nm.k, nm.model->rank(), {}};
    for (const double th : thresholds) {
      row.t.push_back(min_components(*nm.model, th));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable to_table(const CrvTable& table)
{
  CsvTable out;
  out.header = {"class", "k"};
  for (const double th : table.thresholds) {
    out.header.push_back("t_" + format_double(th));
  }
  for (const auto& row : table.rows) {
    std::vector<std::string> fields{row.name, std::to_string(row.k)};
    for (const Index t : row.t) {
      fields.push_back(std::to_string(t));
    }
    out.rows.push_back(std::move(fields));
  }
  return out;
}

void export_eigenvalue_spectrum(const PcaModel& model, const std::filesystem::path& path)
{
  CsvTable t;
  t.header = {"index", "eigenvalue"};
  for (Index i = 0; i < model.rank(); ++i) {
    t.rows.push_back({std::to_string(i + 1), format_double(model.eigenvalues[i])});
  }
  write_csv(path, t);
}

void export_geometry(const DesignVector& v, const std::filesystem::path& path)
{
  const PointCloud cloud = unvec(v);
  CsvTable t;
  t.header = {"x", "y", "z"};
  t.rows.reserve(static_cast<std::size_t>(cloud.size()));
  for (Index i = 0; i < cloud.size(); ++i) {
    t.rows.push_back({format_double(cloud.points()(i, 0)), format_double(cloud.points()(i, 1)),
                      format_double(cloud.points()(i, 2))});
  }
  write_csv(path, t);
}

PointCloud read_geometry_csv(const std::filesystem::path& path)
{
  const CsvTable t = read_csv(path);
  if (t.header.size() != 3) {
    throw FormatError("'" + path.string() + "': expected columns x,y,z");
  }
  PointCloud cloud(static_cast<Index>(t.rows.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t d = 0; d < 3; ++d) {
      cloud.points()(static_cast<Index>(i), static_cast<Index>(d)) = parse_double(t.rows[i][d]);
    }
  }
  if (!cloud.all_finite()) {
    throw FormatError("'" + path.string() + "' contains non-finite coordinates");
  }
  return cloud;
}

std::string preset_name(RPreset preset)
{
  switch (preset) {
  case RPreset::ParameterCount:
    return "k";
  case RPreset::Crv95:
    return "t95";
  case RPreset::Full:
    return std::to_string(kFullPresetComponents);
  }
  return "?";
}

RPreset parse_preset(const std::string& name)
{
  for (const auto p : {RPreset::ParameterCount, RPreset::Crv95, RPreset::Full}) {
    if (name == preset_name(p)) {
      return p;
    }
  }
  throw DomainError("unknown r preset '" + name + "' (expected k, t95 or " +
                    std::to_string(kFullPresetComponents) + ")");
}

std::vector<ResolvedPreset> resolve_presets(const PcaModel& model, Index k, const std::vector<RPreset>& presets)
{
  if (k < 1) {
    throw DomainError("resolve_presets: parameter count must be positive");
  }
  const Index q = model.rank();
  if (q == 0 && !presets.empty()) {
    throw RankError("r preset '" + preset_name(presets.front()) + "': the model retains no components");
  }
  std::vector<ResolvedPreset> out;
  for (const auto p : presets) {
    Index requested = 0;
    switch (p) {
    case RPreset::ParameterCount:
      requested = k;
      break;
    case RPreset::Crv95:
      requested = min_components(model, 0.95);
      if (requested == k) {
        continue;
      }
      break;
    case RPreset::Full:
      requested = kFullPresetComponents;
      break;
    }
    out.push_back({p, requested, std::min(requested, q)});
  }
  return out;
}

CsvTable to_table(const std::vector<ErrorReport>& reports)
{
  CsvTable out;
  out.header = {"class", "preset", "requested_r", "r", "parameter", "mean_abs", "max_abs"};
  for (const auto& rep : reports) {
    for (const auto& pe : rep.presets) {
      for (std::size_t j = 0; j < rep.parameter_names.size(); ++j) {
        const auto jj = static_cast<Index>(j);
        out.rows.push_back({rep.name, preset_name(pe.preset.preset), std::to_string(pe.preset.requested),
                            std::to_string(pe.preset.r), rep.parameter_names[j],
                            format_double(pe.summary.mean_abs[jj]), format_double(pe.summary.max_abs[jj])});
      }
    }
  }
  return out;
}

std::string to_text(const std::vector<ErrorReport>& reports)
{
  std::ostringstream os;
  for (const auto& rep : reports) {
    os << rep.name << '\n';
    for (const auto& pe : rep.presets) {
      os << "  preset " << preset_name(pe.preset.preset) << ": r = " << pe.preset.r;
      if (pe.preset.clamped()) {
        os << " (requested " << pe.preset.requested << ", clamped to rank)";
      }
      os << ", " << pe.summary.samples << " test samples\n";
      for (std::size_t j = 0; j < rep.parameter_names.size(); ++j) {
        const auto jj = static_cast<Index>(j);
        os << "    " << rep.parameter_names[j] << ": mean " << format_double(pe.summary.mean_abs[jj]) << ", max "
           << format_double(pe.summary.max_abs[jj]) << '\n';
      }
    }
  }
  return os.str();
}

} // namespace egpc
