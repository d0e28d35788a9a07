// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_CLI_COMMANDS_HPP
#define EGPC_CLI_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "egpc/geometry.hpp"

namespace egpc::cli
{

enum ExitCode : int
{
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitData = 3,
};

// Invalid flag combination or value detected after parsing.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// $EGPC_OUT_DIR when set and non-empty, otherwise the working directory.
std::filesystem::path default_out_dir();

struct GenOptions
{
  std::string class_name;
  Index m = 2000;
  std::uint64_t seed = 0;
  Index points = 200;
  std::int64_t created = 0;
  std::filesystem::path out; // default: <out dir>/<class>.egpc
};

std::filesystem::path cmd_gen(const GenOptions& opt, std::ostream& out);

struct FitOptions
{
  std::filesystem::path dataset;
  std::filesystem::path out_dir; // default: <out dir>/<class>
  std::optional<std::uint64_t> split_seed; // default: the dataset seed
  double train_fraction = 0.9;
  std::vector<std::string> presets{"k", "t95", "200"};
  std::vector<Index> explicit_r; // written as map_r<r>.egpc; never clamped
};

// Writes model.egpc, one map per preset, split.csv and artifacts.json.
std::filesystem::path cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& err);

struct EstimateOptions
{
  std::filesystem::path model;
  std::filesystem::path map;
  std::filesystem::path cloud;   // x,y,z CSV
  std::filesystem::path dataset; // alternative input together with index
  std::optional<Index> index;
};

ParameterVector cmd_estimate(const EstimateOptions& opt, std::ostream& out);

struct VerifyOptions
{
  std::filesystem::path dataset;
  std::uint64_t seed = 0; // mass/weight configuration and probe seed
  Index configs = 1;
  Index trials = 100;
  double tol = 1e-10;
  bool identity = false;
  std::filesystem::path save_joint; // optional
};

// Returns kExitOk when every configuration passes, else kExitVerificationFailed.
int cmd_verify(const VerifyOptions& opt, std::ostream& out);

struct ReportOptions
{
  std::vector<std::filesystem::path> artifacts; // directories written by fit
  std::filesystem::path out_dir;                // default: <out dir>/report
  std::vector<double> thresholds{0.9, 0.95, 0.99};
};

void cmd_report(const ReportOptions& opt, std::ostream& out);

struct PipelineOptions
{
  std::vector<std::string> classes; // default: all
  Index m = 2000;
  std::uint64_t seed = 0;
  Index points = 200;
  double train_fraction = 0.9;
  unsigned jobs = 1;
  std::filesystem::path out_dir; // default: <out dir>
};

// gen, fit and report for each class; per-class work runs on up to `jobs`
// threads and console output is emitted in class order.
void cmd_pipeline(const PipelineOptions& opt, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name), dispatches, and
// maps exceptions to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace egpc::cli

#endif // EGPC_CLI_COMMANDS_HPP
