// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_REPORT_HPP
#define EGPC_REPORT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "egpc/csv.hpp"
#include "egpc/dataset.hpp"
#include "egpc/estimation.hpp"
#include "egpc/pca.hpp"

namespace egpc
{

inline const std::vector<double> kDefaultThresholds{0.9, 0.95, 0.99};

struct CrvRow
{
  std::string name;
  Index k = 0;
  Index rank = 0;
  std::vector<Index> t; // one entry per threshold of the owning table
};

struct CrvTable
{
  std::vector<double> thresholds;
  std::vector<CrvRow> rows;
};

struct NamedModel
{
  std::string name;
  Index k = 0;
  const PcaModel* model = nullptr;
};

// Components needed to reach each threshold, per model. Thresholds must lie
// in (0, 1]; errors from min_components propagate.
CrvTable crv_table(const std::vector<NamedModel>& models, const std::vector<double>& thresholds = kDefaultThresholds);

// Columns: class, k, then t_<threshold> per threshold.
CsvTable to_table(const CrvTable& table);

// index,eigenvalue rows in descending order; header only for a rank-0 model.
void export_eigenvalue_spectrum(const PcaModel& model, const std::filesystem::path& path);

// unvec(v) as x,y,z rows.
void export_geometry(const DesignVector& v, const std::filesystem::path& path);
PointCloud read_geometry_csv(const std::filesystem::path& path);

enum class RPreset
{
  ParameterCount, // r = k
  Crv95,          // r = t_0.95
  Full,           // r = 200
};

inline constexpr Index kFullPresetComponents = 200;

// "k", "t95", "200".
std::string preset_name(RPreset preset);
// Inverse of preset_name. Throws DomainError for anything else.
RPreset parse_preset(const std::string& name);

struct ResolvedPreset
{
  RPreset preset = RPreset::ParameterCount;
  Index requested = 0; // component count the preset asks for
  Index r = 0;         // min(requested, rank)
  bool clamped() const noexcept { return r < requested; }
};

// Resolves the presets against a fitted model. The t95 preset is dropped when
// it coincides with k. A request above the model rank is clamped to the rank;
// a rank-0 model raises RankError naming the first preset.
std::vector<ResolvedPreset> resolve_presets(const PcaModel& model, Index k,
                                            const std::vector<RPreset>& presets = {RPreset::ParameterCount,
                                                                                   RPreset::Crv95, RPreset::Full});

struct PresetError
{
  ResolvedPreset preset;
  ErrorSummary summary;
};

struct ErrorReport
{
  std::string name;
  std::vector<std::string> parameter_names;
  std::vector<PresetError> presets;
};

// Columns: class, preset, requested_r, r, parameter, mean_abs, max_abs.
CsvTable to_table(const std::vector<ErrorReport>& reports);

// Indented plain-text rendering of the same numbers.
std::string to_text(const std::vector<ErrorReport>& reports);

} // namespace egpc

#endif // EGPC_REPORT_HPP
