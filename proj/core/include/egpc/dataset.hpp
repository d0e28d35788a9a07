// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_DATASET_HPP
#define EGPC_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "egpc/estimation.hpp"
#include "egpc/geometry.hpp"
#include "egpc/pca.hpp"

namespace egpc
{

//
// m samples of one geometry class. Samples regenerate bit-exactly from
// (spec, seed). `created` is a caller-supplied timestamp (seconds since the
// epoch); build_dataset leaves it at zero so that repeated runs write
// identical files.
//
struct Dataset
{
  GeometryClassSpec spec;
  std::vector<GeometrySample> samples;
  std::uint64_t seed = 0;
  std::int64_t created = 0;

  Index size() const noexcept { return static_cast<Index>(samples.size()); }

  // l x |indices| matrix of vectorized clouds.
  DataMatrix data_matrix(std::span<const Index> indices) const;
  DataMatrix data_matrix() const;

  // k x |indices| matrix of parameter vectors.
  ParameterMatrix parameter_matrix(std::span<const Index> indices) const;
  ParameterMatrix parameter_matrix() const;

  friend bool operator==(const Dataset& a, const Dataset& b);
};

// Throws DomainError for m < 2; generator errors propagate.
Dataset build_dataset(const GeometryClassSpec& spec, Index m, std::uint64_t seed);

struct Split
{
  std::vector<Index> train;
  std::vector<Index> test;
};

// Seeded uniform permutation of 0..m-1; the first floor(train_fraction m)
// indices train. Throws DomainError when either part would be empty.
Split split(Index m, double train_fraction, std::uint64_t seed);
Split split(const Dataset& ds, double train_fraction, std::uint64_t seed);

// Binary container persistence. Files are written to a temporary sibling and
// renamed into place. load_* throws IoError (unreadable), FormatError (bad
// magic, wrong kind, malformed payload), VersionError (unknown format
// version) or ChecksumError (truncated or corrupted content).
inline constexpr std::uint32_t kFormatVersion = 1;

enum class ArtifactKind : std::uint32_t
{
  Dataset = 1,
  PcaModel = 2,
  ParameterMap = 3,
  JointPcaModel = 4,
};

void save(const Dataset& ds, const std::filesystem::path& path);
void save(const PcaModel& model, const std::filesystem::path& path);
void save(const ParameterMap& map, const std::filesystem::path& path);
void save(const JointPcaModel& jmodel, const std::filesystem::path& path);

Dataset load_dataset(const std::filesystem::path& path);
PcaModel load_pca_model(const std::filesystem::path& path);
ParameterMap load_parameter_map(const std::filesystem::path& path);
JointPcaModel load_joint_model(const std::filesystem::path& path);

// Artifact kind recorded in a container header.
ArtifactKind peek_kind(const std::filesystem::path& path);

// One header row of parameter names, then one row per sample.
void export_parameters_csv(const Dataset& ds, const std::filesystem::path& path);

} // namespace egpc

#endif // EGPC_DATASET_HPP
