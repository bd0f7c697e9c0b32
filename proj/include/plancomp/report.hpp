#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plancomp/dataio.hpp"
#include "plancomp/pairwise.hpp"

namespace plancomp {

inline constexpr std::string_view kVersion = "1.0.0";

struct ReportConfig {
  double alpha_pairwise = 0.001;
  double alpha_magnitude = 0.05;
  double alpha_agreement = 0.05;
  double alpha_scaling = 0.05;
  int bootstrap_B = 10000;
  int bootstrap_m = 20;
  std::int64_t cutoff_ms = 1'800'000;
  std::uint64_t seed = 3;
  std::string output_dir = ".";
  unsigned threads = 1;
  bool require_ranking_agreement = false;

  // Throws Error(InvalidConfig) for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  // Plain-text key=value lines; blank lines and '#' comments ignored.
  void load_file(const std::string& path);
  void validate() const;
};

enum class Command { Validate, Compare, Order, Hardness, Agreement, Scaling, Series };

std::string_view to_string(Command command) noexcept;
std::optional<Command> parse_command(std::string_view text);

struct ReportRequest {
  std::optional<Level> level;
  std::optional<Measure> measure;
  Category category = Category::FullyAutomated;
  std::optional<SizeClass> size;
  std::optional<std::string> domain;
  bool reduce = false;
  bool cross = false;
};

struct ReportFile {
  std::string name;
  std::string contents;
};

struct Report {
  std::vector<ReportFile> files;
  std::string summary;
  std::vector<std::string> warnings;  // degenerate statistics and skipped cells
  int validation_errors = 0;
};

// Header lines embedded in every output (without comment prefix).
std::vector<std::string> metadata_lines(const ReportConfig& config, const Dataset& data, Command command);

Report report_validate(const Dataset& data, const ReportConfig& config);
Report report_compare(const Dataset& data, const ReportConfig& config, const ReportRequest& request);
Report report_order(const Dataset& data, const ReportConfig& config, const ReportRequest& request);
Report report_hardness(const Dataset& data, const ReportConfig& config, const ReportRequest& request);
Report report_agreement(const Dataset& data, const ReportConfig& config, const ReportRequest& request);
Report report_scaling(const Dataset& data, const ReportConfig& config, const ReportRequest& request);
Report report_series(const Dataset& data, const ReportConfig& config, const ReportRequest& request);

Report run_report(Command command, const Dataset& data, const ReportConfig& config, const ReportRequest& request);

// Cell renderings shared by the text tables.
std::string format_z(double z);
std::string format_pairwise_p(double p, double alpha);
std::string render_comparison_cell(const ComparisonResult& c, double alpha);
std::string format_hardness_cell(int easy, int hard);
std::string format_f_cell(int df1, int df2, double F, bool significant);

// Writes each file under `dir`, creating it if needed.
void write_report(const Report& report, const std::string& dir);

}  // namespace plancomp
