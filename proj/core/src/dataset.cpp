// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "egpc/dataset.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "binary_io.hpp"
#include "egpc/csv.hpp"
#include "egpc/error.hpp"
#include "egpc/random.hpp"

namespace egpc
{

namespace
{

using detail::ByteReader;
using detail::ByteWriter;

std::vector<Index> all_indices(Index m)
{
  std::vector<Index> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), Index{0});
  return idx;
}

void check_index(const Dataset& ds, Index i)
{
  if (i < 0 || i >= ds.size()) {
    throw RangeError("sample index " + std::to_string(i) + " outside dataset of size " + std::to_string(ds.size()));
  }
}

void write_matrix(ByteWriter& w, const Eigen::MatrixXd& A)
{
  w.f64s(A.data(), static_cast<std::size_t>(A.size()));
}

Eigen::MatrixXd read_matrix(ByteReader& r, std::uint64_t rows, std::uint64_t cols)
{
  if (rows != 0 && cols > r.remaining() / 8 / rows) {
    throw FormatError("container declares a matrix larger than its payload");
  }
  Eigen::MatrixXd A(static_cast<Index>(rows), static_cast<Index>(cols));
  r.f64s(A.data(), static_cast<std::size_t>(rows * cols));
  return A;
}

Eigen::VectorXd read_vector(ByteReader& r, std::uint64_t n)
{
  if (n > r.remaining() / 8) {
    throw FormatError("container declares a vector larger than its payload");
  }
  Eigen::VectorXd v(static_cast<Index>(n));
  r.f64s(v.data(), static_cast<std::size_t>(n));
  return v;
}

void expect_consumed(const ByteReader& r)
{
  if (r.remaining() != 0) {
    throw FormatError("container has " + std::to_string(r.remaining()) + " unexpected trailing payload bytes");
  }
}

void write_sealed(const std::filesystem::path& path, ArtifactKind kind, const ByteWriter& payload)
{
  const auto bytes = detail::seal(static_cast<std::uint32_t>(kind), payload);
  detail::write_file_atomic(path, bytes);
}

std::vector<std::byte> read_sealed(const std::filesystem::path& path, ArtifactKind kind, const char* what)
{
  return detail::unseal(detail::read_file(path), static_cast<std::uint32_t>(kind), what);
}

} // namespace

DataMatrix Dataset::data_matrix(std::span<const Index> indices) const
{
  const Index l = 3 * spec.n_points;
  DataMatrix X(l, static_cast<Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    check_index(*this, indices[j]);
    X.col(static_cast<Index>(j)) = vec(samples[static_cast<std::size_t>(indices[j])].cloud);
  }
  return X;
}

DataMatrix Dataset::data_matrix() const
{
  const auto idx = all_indices(size());
  return data_matrix(idx);
}

ParameterMatrix Dataset::parameter_matrix(std::span<const Index> indices) const
{
  ParameterMatrix P(spec.k(), static_cast<Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    check_index(*this, indices[j]);
    P.col(static_cast<Index>(j)) = samples[static_cast<std::size_t>(indices[j])].params;
  }
  return P;
}

ParameterMatrix Dataset::parameter_matrix() const
{
  const auto idx = all_indices(size());
  return parameter_matrix(idx);
}

bool operator==(const Dataset& a, const Dataset& b)
{
  if (!(a.spec == b.spec) || a.seed != b.seed || a.created != b.created || a.samples.size() != b.samples.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto& sa = a.samples[i];
    const auto& sb = b.samples[i];
    if (!(sa.cloud == sb.cloud) || !identical(sa.params, sb.params)) {
      return false;
    }
  }
  return true;
}

Dataset build_dataset(const GeometryClassSpec& spec, Index m, std::uint64_t seed)
{
  spec.validate();
  if (m < 2) {
    throw DomainError("build_dataset: at least two samples are required, got " + std::to_string(m));
  }
  Dataset ds;
  ds.spec = spec;
  ds.seed = seed;
  auto params = sample_parameters(spec, seed, m);
  ds.samples.reserve(params.size());
  for (auto& p : params) {
    PointCloud cloud = generate(spec, p);
    ds.samples.push_back({std::move(cloud), std::move(p)});
  }
  return ds;
}

Split split(Index m, double train_fraction, std::uint64_t seed)
{
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DomainError("split: train fraction must lie in (0, 1)");
  }
  const auto n_train = static_cast<Index>(std::floor(train_fraction * static_cast<double>(m)));
  if (n_train < 1 || n_train >= m) {
    throw DomainError("split: fraction " + std::to_string(train_fraction) + " of " + std::to_string(m) +
                      " samples leaves an empty part");
  }
  std::vector<Index> perm = all_indices(m);
  // Fisher-Yates driven by the counter generator so the permutation is the
  // same on every platform.
  CounterRng rng(seed, 0x5350'4c49'54ULL);
  for (Index i = m - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  Split s;
  s.train.assign(perm.begin(), perm.begin() + n_train);
  s.test.assign(perm.begin() + n_train, perm.end());
  return s;
}

Split split(const Dataset& ds, double train_fraction, std::uint64_t seed)
{
  return split(ds.size(), train_fraction, seed);
}

void save(const Dataset& ds, const std::filesystem::path& path)
{
  ds.spec.validate();
  const auto k = static_cast<std::size_t>(ds.spec.k());
  const auto n = static_cast<std::size_t>(ds.spec.n_points);
  ByteWriter w;
  w.str(ds.spec.name);
  w.u32(static_cast<std::uint32_t>(k));
  w.u32(static_cast<std::uint32_t>(n));
  w.u64(ds.samples.size());
  w.u64(ds.seed);
  w.i64(ds.created);
  w.u32(static_cast<std::uint32_t>(ds.spec.kind));
  for (std::size_t j = 0; j < k; ++j) {
    w.str(ds.spec.parameter_names[j]);
    w.f64(ds.spec.ranges[j].lo);
    w.f64(ds.spec.ranges[j].hi);
  }
  w.u32(static_cast<std::uint32_t>(ds.spec.fixed_constants.size()));
  for (const auto& [name, value] : ds.spec.fixed_constants) {
    w.str(name);
    w.f64(value);
  }
  for (const auto& s : ds.samples) {
    if (static_cast<std::size_t>(s.params.size()) != k || static_cast<std::size_t>(s.cloud.size()) != n) {
      throw ShapeError("save: sample does not match the dataset's class spec");
    }
    w.f64s(s.params.data(), k);
  }
  for (const auto& s : ds.samples) {
    for (Index i = 0; i < s.cloud.size(); ++i) {
      for (Index d = 0; d < 3; ++d) {
        w.f64(s.cloud.points()(i, d));
      }
    }
  }
  write_sealed(path, ArtifactKind::Dataset, w);
}

Dataset load_dataset(const std::filesystem::path& path)
{
  const auto payload = read_sealed(path, ArtifactKind::Dataset, "dataset");
  ByteReader r(payload);
  Dataset ds;
  ds.spec.name = r.str();
  const std::uint32_t k = r.u32();
  const std::uint32_t n = r.u32();
  const std::uint64_t m = r.u64();
  ds.seed = r.u64();
  ds.created = r.i64();
  ds.spec.kind = static_cast<GeometryKind>(r.u32());
  ds.spec.n_points = n;
  for (std::uint32_t j = 0; j < k; ++j) {
    ds.spec.parameter_names.push_back(r.str());
    const double lo = r.f64();
    const double hi = r.f64();
    ds.spec.ranges.push_back({lo, hi});
  }
  const std::uint32_t n_const = r.u32();
  for (std::uint32_t j = 0; j < n_const; ++j) {
    std::string name = r.str();
    const double value = r.f64();
    ds.spec.fixed_constants.emplace_back(std::move(name), value);
  }
  try {
    ds.spec.validate();
  } catch (const DomainError& e) {
    throw FormatError(std::string("stored class spec is invalid: ") + e.what());
  }
  const std::uint64_t per_sample = 8ULL * (k + 3ULL * n);
  if (per_sample != 0 && m > r.remaining() / per_sample) {
    throw FormatError("container declares more samples than it holds");
  }
  ds.samples.resize(static_cast<std::size_t>(m));
  for (auto& s : ds.samples) {
    s.params = read_vector(r, k);
  }
  for (auto& s : ds.samples) {
    s.cloud = PointCloud(static_cast<Index>(n));
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
      for (Index d = 0; d < 3; ++d) {
        s.cloud.points()(i, d) = r.f64();
      }
    }
  }
  expect_consumed(r);
  return ds;
}

void save(const PcaModel& model, const std::filesystem::path& path)
{
  ByteWriter w;
  w.u64(static_cast<std::uint64_t>(model.length()));
  w.u64(static_cast<std::uint64_t>(model.samples));
  w.u64(static_cast<std::uint64_t>(model.rank()));
  write_matrix(w, model.mean);
  write_matrix(w, model.eigenvalues);
  write_matrix(w, model.eigenvectors);
  write_sealed(path, ArtifactKind::PcaModel, w);
}

PcaModel load_pca_model(const std::filesystem::path& path)
{
  const auto payload = read_sealed(path, ArtifactKind::PcaModel, "PCA model");
  ByteReader r(payload);
  PcaModel model;
  const std::uint64_t l = r.u64();
  model.samples = static_cast<Index>(r.u64());
  const std::uint64_t q = r.u64();
  model.mean = read_vector(r, l);
  model.eigenvalues = read_vector(r, q);
  model.eigenvectors = read_matrix(r, l, q);
  expect_consumed(r);
  return model;
}

void save(const ParameterMap& map, const std::filesystem::path& path)
{
  ByteWriter w;
  w.u64(static_cast<std::uint64_t>(map.k()));
  w.u64(static_cast<std::uint64_t>(map.r));
  w.u64(map.model_ref);
  write_matrix(w, map.param_mean);
  write_matrix(w, map.H);
  write_sealed(path, ArtifactKind::ParameterMap, w);
}

ParameterMap load_parameter_map(const std::filesystem::path& path)
{
  const auto payload = read_sealed(path, ArtifactKind::ParameterMap, "parameter map");
  ByteReader r(payload);
  ParameterMap map;
  const std::uint64_t k = r.u64();
  const std::uint64_t rr = r.u64();
  map.r = static_cast<Index>(rr);
  map.model_ref = r.u64();
  map.param_mean = read_vector(r, k);
  map.H = read_matrix(r, k, rr);
  expect_consumed(r);
  return map;
}

void save(const JointPcaModel& jm, const std::filesystem::path& path)
{
  ByteWriter w;
  w.u64(static_cast<std::uint64_t>(jm.V.rows()));
  w.u64(static_cast<std::uint64_t>(jm.H.rows()));
  w.u64(static_cast<std::uint64_t>(jm.samples));
  w.u64(static_cast<std::uint64_t>(jm.rank()));
  write_matrix(w, jm.mean_x);
  write_matrix(w, jm.mean_p);
  write_matrix(w, jm.eigenvalues);
  write_matrix(w, jm.V);
  write_matrix(w, jm.H);
  w.u64(static_cast<std::uint64_t>(jm.config.points()));
  write_matrix(w, jm.config.masses);
  write_matrix(w, jm.config.weights);
  write_sealed(path, ArtifactKind::JointPcaModel, w);
}

JointPcaModel load_joint_model(const std::filesystem::path& path)
{
  const auto payload = read_sealed(path, ArtifactKind::JointPcaModel, "joint PCA model");
  ByteReader r(payload);
  JointPcaModel jm;
  const std::uint64_t l = r.u64();
  const std::uint64_t k = r.u64();
  jm.samples = static_cast<Index>(r.u64());
  const std::uint64_t q = r.u64();
  jm.mean_x = read_vector(r, l);
  jm.mean_p = read_vector(r, k);
  jm.eigenvalues = read_vector(r, q);
  jm.V = read_matrix(r, l, q);
  jm.H = read_matrix(r, k, q);
  const std::uint64_t points = r.u64();
  jm.config.masses = read_vector(r, points);
  jm.config.weights = read_vector(r, points);
  expect_consumed(r);
  return jm;
}

ArtifactKind peek_kind(const std::filesystem::path& path)
{
  return static_cast<ArtifactKind>(detail::sealed_kind(detail::read_file(path)));
}

void export_parameters_csv(const Dataset& ds, const std::filesystem::path& path)
{
  CsvTable t;
  t.header = ds.spec.parameter_names;
  t.rows.reserve(ds.samples.size());
  for (const auto& s : ds.samples) {
    std::vector<std::string> row;
    row.reserve(static_cast<std::size_t>(s.params.size()));
    for (Index j = 0; j < s.params.size(); ++j) {
      row.push_back(format_double(s.params[j]));
    }
    t.rows.push_back(std::move(row));
  }
  write_csv(path, t);
}

} // namespace egpc
