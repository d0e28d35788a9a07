// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "egpc/csv.hpp"
#include "egpc/dataset.hpp"
#include "egpc/error.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"

namespace egpc
{
namespace
{

using testing::read_bytes;
using testing::TempDir;
using testing::write_bytes;

TEST(BuildDataset, RectangleParametersInRangeAndCloudsMatchGenerator)
{
  const auto spec = class_spec("rectangle");
  const auto ds = build_dataset(spec, 2000, 5);
  ASSERT_EQ(ds.size(), 2000);
  for (const auto& s : ds.samples) {
    ASSERT_GE(s.params.minCoeff(), 0.0);
    ASSERT_LT(s.params.maxCoeff(), 10.0);
  }
  EXPECT_TRUE(ds.samples[123].cloud == generate(spec, ds.samples[123].params));
  EXPECT_EQ(ds.data_matrix().rows(), 600);
  EXPECT_EQ(ds.parameter_matrix().rows(), 2);
}

TEST(BuildDataset, MinimalAndInvalidSizes)
{
  EXPECT_EQ(build_dataset(class_spec("tube"), 2, 1).size(), 2);
  EXPECT_THROW(build_dataset(class_spec("tube"), 1, 1), DomainError);
}

TEST(BuildDataset, MatrixViewsFollowIndices)
{
  const auto ds = build_dataset(class_spec("helix"), 10, 2);
  const std::vector<Index> idx{7, 2};
  const DataMatrix X = ds.data_matrix(idx);
  EXPECT_TRUE(identical(X.col(0), vec(ds.samples[7].cloud)));
  EXPECT_TRUE(identical(ds.parameter_matrix(idx).col(1), ds.samples[2].params));
  const std::vector<Index> bad{10};
  EXPECT_THROW(ds.data_matrix(bad), RangeError);
  EXPECT_THROW(ds.parameter_matrix(bad), RangeError);
}

TEST(BuildDataset, RebuildsBitExactlyAndSerializesIdentically)
{
  TempDir dir;
  const auto a = build_dataset(class_spec("fan_blade"), 50, 77);
  const auto b = build_dataset(class_spec("fan_blade"), 50, 77);
  EXPECT_TRUE(a == b);
  save(a, dir / "a.egpc");
  save(b, dir / "b.egpc");
  EXPECT_EQ(read_bytes(dir / "a.egpc"), read_bytes(dir / "b.egpc"));
}

TEST(Split, NinetyTenAndSmallCase)
{
  const auto big = split(2000, 0.9, 1);
  EXPECT_EQ(big.train.size(), 1800U);
  EXPECT_EQ(big.test.size(), 200U);
  const auto small = split(10, 0.9, 1);
  EXPECT_EQ(small.train.size(), 9U);
  EXPECT_EQ(small.test.size(), 1U);
}

TEST(Split, RejectsEmptyParts)
{
  EXPECT_THROW(split(10, 0.0, 1), DomainError);
  EXPECT_THROW(split(10, 1.0, 1), DomainError);
  EXPECT_THROW(split(10, 0.05, 1), DomainError);
  EXPECT_EQ(split(2, 0.9, 1).train.size(), 1U);
}

TEST(SplitProperty, DisjointExhaustiveDeterministic)
{
  for (int c = 0; c < 100; ++c) {
    testing::Gen gen(static_cast<std::uint64_t>(c));
    const Index m = gen.integer(2, 500);
    const double f = gen.uniform(0.01, 0.99);
    const auto train_size = static_cast<Index>(std::floor(f * static_cast<double>(m)));
    if (train_size < 1 || train_size >= m) {
      ASSERT_THROW(split(m, f, 3), DomainError);
      continue;
    }
    const auto s = split(m, f, static_cast<std::uint64_t>(c));
    ASSERT_EQ(static_cast<Index>(s.train.size()), train_size);
    std::vector<Index> all = s.train;
    all.insert(all.end(), s.test.begin(), s.test.end());
    std::sort(all.begin(), all.end());
    std::vector<Index> expected(static_cast<std::size_t>(m));
    std::iota(expected.begin(), expected.end(), Index{0});
    ASSERT_EQ(all, expected) << "case " << c;

    const auto again = split(m, f, static_cast<std::uint64_t>(c));
    ASSERT_EQ(again.train, s.train);
    ASSERT_EQ(again.test, s.test);
  }
}

TEST(Persistence, EveryKindRoundTripsBitExactly)
{
  TempDir dir;
  auto ds = build_dataset(class_spec("tube"), 20, 3);
  ds.created = 1700000000;
  save(ds, dir / "ds.egpc");
  EXPECT_TRUE(load_dataset(dir / "ds.egpc") == ds);
  EXPECT_EQ(peek_kind(dir / "ds.egpc"), ArtifactKind::Dataset);

  const DataMatrix X = ds.data_matrix();
  const auto model = fit_pca(X);
  save(model, dir / "model.egpc");
  EXPECT_TRUE(load_pca_model(dir / "model.egpc") == model);

  const auto map = fit_parameter_map(model, X, ds.parameter_matrix(), 5);
  save(map, dir / "map.egpc");
  EXPECT_TRUE(load_parameter_map(dir / "map.egpc") == map);
  EXPECT_EQ(peek_kind(dir / "map.egpc"), ArtifactKind::ParameterMap);

  const auto jm = fit_joint_pca(X, ds.parameter_matrix(), random_mass_weight_config(200, 1));
  save(jm, dir / "joint.egpc");
  EXPECT_TRUE(load_joint_model(dir / "joint.egpc") == jm);
}

TEST(Persistence, RankZeroModelRoundTrips)
{
  TempDir dir;
  const auto model = fit_pca(Eigen::VectorXd::Ones(6).replicate(1, 3));
  save(model, dir / "m.egpc");
  EXPECT_TRUE(load_pca_model(dir / "m.egpc") == model);
}

TEST(Persistence, DistinctErrorsForDistinctFailures)
{
  TempDir dir;
  const auto ds = build_dataset(class_spec("rectangle"), 5, 1);
  save(ds, dir / "ds.egpc");
  const auto bytes = read_bytes(dir / "ds.egpc");

  EXPECT_THROW(load_dataset(dir / "missing.egpc"), IoError);

  auto truncated = bytes;
  truncated.resize(bytes.size() / 2);
  write_bytes(dir / "truncated.egpc", truncated);
  EXPECT_THROW(load_dataset(dir / "truncated.egpc"), ChecksumError);

  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x01;
  write_bytes(dir / "flipped.egpc", flipped);
  EXPECT_THROW(load_dataset(dir / "flipped.egpc"), ChecksumError);

  auto version = bytes;
  version[4] = 9; // little-endian format version follows the magic
  write_bytes(dir / "version.egpc", version);
  EXPECT_THROW(load_dataset(dir / "version.egpc"), VersionError);

  auto magic = bytes;
  magic[0] = 'X';
  write_bytes(dir / "magic.egpc", magic);
  try {
    load_dataset(dir / "magic.egpc");
    FAIL() << "bad magic accepted";
  } catch (const VersionError&) {
    FAIL() << "bad magic reported as a version error";
  } catch (const ChecksumError&) {
    FAIL() << "bad magic reported as a checksum error";
  } catch (const FormatError&) {
  }

  EXPECT_THROW(load_pca_model(dir / "ds.egpc"), FormatError); // wrong kind
}

TEST(Persistence, ParameterCsvHasNamedHeader)
{
  TempDir dir;
  const auto ds = build_dataset(class_spec("cuboid"), 4, 1);
  export_parameters_csv(ds, dir / "p.csv");
  const auto table = read_csv(dir / "p.csv");
  EXPECT_EQ(table.header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(table.rows.size(), 4U);
  EXPECT_EQ(parse_double(table.rows[2][1]), ds.samples[2].params[1]);
}

TEST(Csv, DoublesRoundTripExactly)
{
  testing::Gen gen(1);
  for (int c = 0; c < 1000; ++c) {
    const double v = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.uniform(-300.0, 300.0));
    ASSERT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_THROW(parse_double("1.5x"), FormatError);
  EXPECT_THROW(parse_double(""), FormatError);
}

} // namespace
} // namespace egpc
