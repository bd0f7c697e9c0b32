#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace plancomp {

enum class Level { Strips, Numeric, HardNumeric, SimpleTime, Time, Complex };

inline constexpr std::array<Level, 6> kAllLevels = {Level::Strips,     Level::Numeric, Level::HardNumeric,
                                                    Level::SimpleTime, Level::Time,    Level::Complex};

enum class Category { FullyAutomated, HandCoded };
enum class SizeClass { Small, Large };
enum class QualityDirection { Minimize, Maximize };

// Lower-case token used in files ("strips", "simpletime", ...).
std::string_view to_string(Level level) noexcept;
// Display name used in tables ("Strips", "SimpleTime", ...).
std::string_view display_name(Level level) noexcept;
std::string_view to_string(Category category) noexcept;
std::string_view to_string(SizeClass size) noexcept;
std::string_view to_string(QualityDirection direction) noexcept;

// Case-insensitive. Throws Error(UnknownLevel).
Level parse_level(std::string_view text);
std::optional<Category> parse_category(std::string_view text);
std::optional<SizeClass> parse_size_class(std::string_view text);

struct RunRecord {
  std::string planner;
  std::string domain;
  Level level = Level::Strips;
  std::string problem;
  bool solved = false;
  std::optional<std::int64_t> time_ms;
  std::optional<double> metric_value;
  std::optional<std::int64_t> seq_length;
  std::optional<std::int64_t> conc_length;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct PlannerEntry {
  std::string name;
  Category category = Category::FullyAutomated;
  std::vector<Level> levels_entered;

  bool entered(Level level) const;
};

struct ProblemSet {
  std::string domain;
  Level level = Level::Strips;
  SizeClass size_class = SizeClass::Small;
  QualityDirection quality_direction = QualityDirection::Minimize;
  std::vector<std::string> problems;
};

struct Manifest {
  std::vector<PlannerEntry> planners;
  std::vector<ProblemSet> problem_sets;

  const PlannerEntry* find_planner(std::string_view name) const;
  const ProblemSet* find_set(std::string_view domain, Level level, SizeClass size) const;
  // The set that lists `problem` under (domain, level), whatever its size class.
  const ProblemSet* resolve(std::string_view domain, Level level, std::string_view problem) const;
  std::vector<const ProblemSet*> sets_at(Level level, SizeClass size) const;
  std::vector<const PlannerEntry*> planners_in(Category category) const;
};

inline constexpr std::string_view kRunsHeader =
    "planner,domain,level,problem,solved,time_ms,metric_value,seq_length,conc_length";

std::vector<RunRecord> parse_runs(std::string_view text);
std::vector<RunRecord> load_runs(const std::string& path);
// Inverse of parse_runs; numbers use the shortest round-trip representation.
std::string format_runs(const std::vector<RunRecord>& runs);

Manifest parse_manifest(std::string_view json_text);
Manifest load_manifest(const std::string& path);
std::string format_manifest(const Manifest& manifest);

struct Diagnostic {
  enum class Severity { Error, Info };
  enum class Kind { UnknownPlanner, UnknownProblem, LevelNotEntered, CoverageGap };

  Severity severity = Severity::Error;
  Kind kind = Kind::UnknownPlanner;
  std::string message;
};

std::string_view to_string(Diagnostic::Kind kind) noexcept;

std::vector<Diagnostic> validate_dataset(const std::vector<RunRecord>& runs, const Manifest& manifest);

// Runs plus manifest, indexed by (planner, domain, level, problem).
class Dataset {
 public:
  Dataset(std::vector<RunRecord> runs, Manifest manifest);

  const std::vector<RunRecord>& runs() const noexcept { return runs_; }
  const Manifest& manifest() const noexcept { return manifest_; }

  // nullptr means "did not attempt".
  const RunRecord* find(std::string_view planner, std::string_view domain, Level level,
                        std::string_view problem) const;
  // Number of records the planner has for problems in `set`.
  std::size_t attempted(std::string_view planner, const ProblemSet& set) const;
  std::size_t solved(std::string_view planner, Level level, SizeClass size) const;

  // FNV-1a over the canonical runs CSV and manifest JSON, as 16 hex digits.
  std::string content_hash() const;

 private:
  using Key = std::tuple<std::string, std::string, Level, std::string>;

  std::vector<RunRecord> runs_;
  Manifest manifest_;
  std::map<Key, std::size_t, std::less<>> index_;
};

}  // namespace plancomp
