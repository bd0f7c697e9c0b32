#include "plancomp/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "plancomp/error.hpp"

namespace plancomp {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

constexpr std::array<std::string_view, 9> kColumns = {"planner", "domain",       "level",      "problem",    "solved",
                                                      "time_ms", "metric_value", "seq_length", "conc_length"};

std::optional<std::int64_t> parse_count(std::string_view field, std::size_t row, std::size_t column) {
  if (field.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw RowError(ErrorCode::BadField, row, std::string(kColumns[column]), "not an integer: '" + std::string(field) + "'");
  if (value < 0) throw RowError(ErrorCode::BadField, row, std::string(kColumns[column]), "negative value");
  return value;
}

std::optional<double> parse_real(std::string_view field, std::size_t row, std::size_t column) {
  if (field.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value))
    throw RowError(ErrorCode::BadField, row, std::string(kColumns[column]), "not a finite number: '" + std::string(field) + "'");
  return value;
}

template <typename T>
std::string shortest(T value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

template <typename T>
std::string optional_field(const std::optional<T>& value) {
  return value ? shortest(*value) : std::string();
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::BadField: return "BadField";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownLevel: return "UnknownLevel";
    case ErrorCode::EmptyProblemList: return "EmptyProblemList";
    case ErrorCode::DuplicateProblem: return "DuplicateProblem";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::TooFewPairs: return "TooFewPairs";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::RaggedMatrix: return "RaggedMatrix";
    case ErrorCode::InvalidRankRow: return "InvalidRankRow";
    case ErrorCode::PlannerNotInLevel: return "PlannerNotInLevel";
    case ErrorCode::NoProblems: return "NoProblems";
    case ErrorCode::MixedLevels: return "MixedLevels";
    case ErrorCode::InconsistentComparisons: return "InconsistentComparisons";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::SampleSizeMismatch: return "SampleSizeMismatch";
    case ErrorCode::TooFewJudges: return "TooFewJudges";
    case ErrorCode::EmptyDomainList: return "EmptyDomainList";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

RowError::RowError(ErrorCode code, std::size_t row, std::string column, const std::string& reason)
    : Error(code, "row " + std::to_string(row) + (column.empty() ? "" : ", column " + column) + ": " + reason),
      row_(row),
      column_(std::move(column)) {}

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::Strips: return "strips";
    case Level::Numeric: return "numeric";
    case Level::HardNumeric: return "hardnumeric";
    case Level::SimpleTime: return "simpletime";
    case Level::Time: return "time";
    case Level::Complex: return "complex";
  }
  return "?";
}

std::string_view display_name(Level level) noexcept {
  switch (level) {
    case Level::Strips: return "Strips";
    case Level::Numeric: return "Numeric";
    case Level::HardNumeric: return "HardNumeric";
    case Level::SimpleTime: return "SimpleTime";
    case Level::Time: return "Time";
    case Level::Complex: return "Complex";
  }
  return "?";
}

std::string_view to_string(Category category) noexcept {
  return category == Category::FullyAutomated ? "fully-automated" : "hand-coded";
}

std::string_view to_string(SizeClass size) noexcept { return size == SizeClass::Small ? "small" : "large"; }

std::string_view to_string(QualityDirection direction) noexcept {
  return direction == QualityDirection::Minimize ? "minimize" : "maximize";
}

Level parse_level(std::string_view text) {
  const auto key = lower(text);
  for (auto level : kAllLevels)
    if (to_string(level) == key) return level;
  throw Error(ErrorCode::UnknownLevel, "unknown level '" + std::string(text) + "'");
}

std::optional<Category> parse_category(std::string_view text) {
  const auto key = lower(text);
  if (key == "fully-automated" || key == "auto") return Category::FullyAutomated;
  if (key == "hand-coded" || key == "hand") return Category::HandCoded;
  return std::nullopt;
}

std::optional<SizeClass> parse_size_class(std::string_view text) {
  const auto key = lower(text);
  if (key == "small") return SizeClass::Small;
  if (key == "large") return SizeClass::Large;
  return std::nullopt;
}

bool PlannerEntry::entered(Level level) const {
  return std::find(levels_entered.begin(), levels_entered.end(), level) != levels_entered.end();
}

const PlannerEntry* Manifest::find_planner(std::string_view name) const {
  for (const auto& p : planners)
    if (p.name == name) return &p;
  return nullptr;
}

const ProblemSet* Manifest::find_set(std::string_view domain, Level level, SizeClass size) const {
  for (const auto& s : problem_sets)
    if (s.domain == domain && s.level == level && s.size_class == size) return &s;
  return nullptr;
}

const ProblemSet* Manifest::resolve(std::string_view domain, Level level, std::string_view problem) const {
  for (const auto& s : problem_sets) {
    if (s.domain != domain || s.level != level) continue;
    if (std::find(s.problems.begin(), s.problems.end(), problem) != s.problems.end()) return &s;
  }
  return nullptr;
}

std::vector<const ProblemSet*> Manifest::sets_at(Level level, SizeClass size) const {
  std::vector<const ProblemSet*> out;
  for (const auto& s : problem_sets)
    if (s.level == level && s.size_class == size) out.push_back(&s);
  return out;
}

std::vector<const PlannerEntry*> Manifest::planners_in(Category category) const {
  std::vector<const PlannerEntry*> out;
  for (const auto& p : planners)
    if (p.category == category) out.push_back(&p);
  return out;
}

std::vector<RunRecord> parse_runs(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  auto lines = split_lines(text);
  if (lines.empty() || lines.front() != kRunsHeader)
    throw Error(ErrorCode::MissingHeader, "first line must be exactly '" + std::string(kRunsHeader) + "'");

  std::vector<RunRecord> runs;
  std::set<std::tuple<std::string, std::string, Level, std::string>> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    if (lines[i].empty()) continue;
    auto fields = split_fields(lines[i]);
    if (fields.size() != kColumns.size())
      throw RowError(ErrorCode::BadField, row, "",
                     "expected 9 fields, found " + std::to_string(fields.size()));
    for (std::size_t c : {0u, 1u, 3u})
      if (fields[c].empty()) throw RowError(ErrorCode::BadField, row, std::string(kColumns[c]), "empty identifier");

    RunRecord r;
    r.planner = fields[0];
    r.domain = fields[1];
    r.problem = fields[3];
    try {
      r.level = parse_level(fields[2]);
    } catch (const Error& e) {
      throw RowError(ErrorCode::BadField, row, "level", e.what());
    }
    if (fields[4] == "1") {
      r.solved = true;
    } else if (fields[4] != "0") {
      throw RowError(ErrorCode::BadField, row, "solved", "must be 0 or 1");
    }
    r.time_ms = parse_count(fields[5], row, 5);
    r.metric_value = parse_real(fields[6], row, 6);
    r.seq_length = parse_count(fields[7], row, 7);
    r.conc_length = parse_count(fields[8], row, 8);

    if (r.solved && !r.time_ms) throw RowError(ErrorCode::BadField, row, "time_ms", "solved run without a time");
    if (!r.solved) {
      for (std::size_t c = 5; c < kColumns.size(); ++c)
        if (!fields[c].empty())
          throw RowError(ErrorCode::BadField, row, std::string(kColumns[c]), "value present on an unsolved run");
    }
    if (!seen.emplace(r.planner, r.domain, r.level, r.problem).second)
      throw RowError(ErrorCode::DuplicateKey, row, "",
                     "duplicate record for " + r.planner + "/" + r.domain + "/" + std::string(to_string(r.level)) + "/" +
                         r.problem);
    runs.push_back(std::move(r));
  }
  return runs;
}

std::vector<RunRecord> load_runs(const std::string& path) { return parse_runs(read_file(path)); }

std::string format_runs(const std::vector<RunRecord>& runs) {
  std::string out(kRunsHeader);
  out += '\n';
  for (const auto& r : runs) {
    out += r.planner + ',' + r.domain + ',' + std::string(to_string(r.level)) + ',' + r.problem + ',' +
           (r.solved ? '1' : '0') + ',' + optional_field(r.time_ms) + ',' + optional_field(r.metric_value) + ',' +
           optional_field(r.seq_length) + ',' + optional_field(r.conc_length) + '\n';
  }
  return out;
}

Manifest parse_manifest(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  }

  auto require_string = [](const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string())
      throw Error(ErrorCode::ParseError, "manifest: " + where + " needs string field '" + key + "'");
    return obj.at(key).get<std::string>();
  };
  auto require_array = [](const json& obj, const char* key, const std::string& where) -> const json& {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_array())
      throw Error(ErrorCode::ParseError, "manifest: " + where + " needs array field '" + key + "'");
    return obj.at(key);
  };

  Manifest m;
  std::set<std::string> planner_names;
  for (const auto& p : require_array(doc, "planners", "document")) {
    PlannerEntry entry;
    entry.name = require_string(p, "name", "planner");
    auto category = parse_category(require_string(p, "category", "planner " + entry.name));
    if (!category) throw Error(ErrorCode::ParseError, "manifest: planner " + entry.name + " has an unknown category");
    entry.category = *category;
    for (const auto& level : require_array(p, "levels", "planner " + entry.name)) {
      if (!level.is_string()) throw Error(ErrorCode::ParseError, "manifest: levels must be strings");
      auto parsed = parse_level(level.get<std::string>());
      if (!entry.entered(parsed)) entry.levels_entered.push_back(parsed);
    }
    if (!planner_names.insert(entry.name).second)
      throw Error(ErrorCode::ParseError, "manifest: planner " + entry.name + " listed twice");
    m.planners.push_back(std::move(entry));
  }

  std::set<std::tuple<std::string, Level, std::string>> problem_keys;
  for (const auto& s : require_array(doc, "problem_sets", "document")) {
    ProblemSet set;
    set.domain = require_string(s, "domain", "problem set");
    const auto where = "problem set " + set.domain;
    set.level = parse_level(require_string(s, "level", where));
    auto size = parse_size_class(require_string(s, "size_class", where));
    if (!size) throw Error(ErrorCode::ParseError, "manifest: " + where + " has an unknown size_class");
    set.size_class = *size;
    auto direction = lower(require_string(s, "quality_direction", where));
    if (direction == "minimize") {
      set.quality_direction = QualityDirection::Minimize;
    } else if (direction == "maximize") {
      set.quality_direction = QualityDirection::Maximize;
    } else {
      throw Error(ErrorCode::ParseError, "manifest: " + where + " has an unknown quality_direction");
    }
    if (m.find_set(set.domain, set.level, set.size_class))
      throw Error(ErrorCode::ParseError, "manifest: " + where + " declared twice for one level and size");
    for (const auto& problem : require_array(s, "problems", where)) {
      if (!problem.is_string() || problem.get<std::string>().empty())
        throw Error(ErrorCode::ParseError, "manifest: problem ids must be non-empty strings");
      auto id = problem.get<std::string>();
      if (!problem_keys.emplace(set.domain, set.level, id).second)
        throw Error(ErrorCode::DuplicateProblem, "manifest: problem " + id + " appears twice in " + set.domain + "/" +
                                                     std::string(to_string(set.level)));
      set.problems.push_back(std::move(id));
    }
    if (set.problems.empty())
      throw Error(ErrorCode::EmptyProblemList,
                  "manifest: " + where + "/" + std::string(to_string(set.level)) + " has no problems");
    m.problem_sets.push_back(std::move(set));
  }
  return m;
}

Manifest load_manifest(const std::string& path) { return parse_manifest(read_file(path)); }

std::string format_manifest(const Manifest& manifest) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["planners"] = ordered_json::array();
  for (const auto& p : manifest.planners) {
    ordered_json levels = ordered_json::array();
    for (auto l : p.levels_entered) levels.push_back(std::string(to_string(l)));
    doc["planners"].push_back(
        {{"name", p.name}, {"category", std::string(to_string(p.category))}, {"levels", std::move(levels)}});
  }
  doc["problem_sets"] = ordered_json::array();
  for (const auto& s : manifest.problem_sets) {
    doc["problem_sets"].push_back({{"domain", s.domain},
                                   {"level", std::string(to_string(s.level))},
                                   {"size_class", std::string(to_string(s.size_class))},
                                   {"quality_direction", std::string(to_string(s.quality_direction))},
                                   {"problems", s.problems}});
  }
  return doc.dump(2) + "\n";
}

std::string_view to_string(Diagnostic::Kind kind) noexcept {
  switch (kind) {
    case Diagnostic::Kind::UnknownPlanner: return "UnknownPlanner";
    case Diagnostic::Kind::UnknownProblem: return "UnknownProblem";
    case Diagnostic::Kind::LevelNotEntered: return "LevelNotEntered";
    case Diagnostic::Kind::CoverageGap: return "CoverageGap";
  }
  return "?";
}

std::vector<Diagnostic> validate_dataset(const std::vector<RunRecord>& runs, const Manifest& manifest) {
  using Severity = Diagnostic::Severity;
  using Kind = Diagnostic::Kind;
  std::vector<Diagnostic> out;
  std::set<std::string> reported_planners;
  std::set<std::pair<std::string, Level>> reported_levels;

  for (const auto& r : runs) {
    const auto* planner = manifest.find_planner(r.planner);
    if (!planner) {
      if (reported_planners.insert(r.planner).second)
        out.push_back({Severity::Error, Kind::UnknownPlanner, "planner " + r.planner + " is not in the manifest"});
    } else if (!planner->entered(r.level)) {
      if (reported_levels.emplace(r.planner, r.level).second)
        out.push_back({Severity::Error, Kind::LevelNotEntered,
                       "planner " + r.planner + " has records at level " + std::string(to_string(r.level)) +
                           " but did not enter it"});
    }
    if (!manifest.resolve(r.domain, r.level, r.problem))
      out.push_back({Severity::Error, Kind::UnknownProblem,
                     "problem " + r.domain + "/" + std::string(to_string(r.level)) + "/" + r.problem +
                         " is not in any problem set"});
  }

  // Coverage: how many problems each planner attempted and solved, per entered level.
  std::map<std::tuple<std::string, Level, SizeClass>, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& r : runs) {
    const auto* set = manifest.resolve(r.domain, r.level, r.problem);
    if (!set || !manifest.find_planner(r.planner)) continue;
    auto& c = counts[{r.planner, r.level, set->size_class}];
    ++c.first;
    if (r.solved) ++c.second;
  }
  for (const auto& p : manifest.planners) {
    for (auto level : p.levels_entered) {
      for (auto size : {SizeClass::Small, SizeClass::Large}) {
        std::size_t total = 0;
        for (const auto* set : manifest.sets_at(level, size)) total += set->problems.size();
        if (total == 0) continue;
        auto it = counts.find({p.name, level, size});
        const std::size_t attempted = it == counts.end() ? 0 : it->second.first;
        const std::size_t solved = it == counts.end() ? 0 : it->second.second;
        if (attempted < total)
          out.push_back({Severity::Info, Kind::CoverageGap,
                         "planner " + p.name + " attempted " + std::to_string(attempted) + " of " +
                             std::to_string(total) + " " + std::string(to_string(size)) + " " +
                             std::string(to_string(level)) + " problems (solved " + std::to_string(solved) + ")"});
      }
    }
  }
  return out;
}

Dataset::Dataset(std::vector<RunRecord> runs, Manifest manifest) : runs_(std::move(runs)), manifest_(std::move(manifest)) {
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    const auto& r = runs_[i];
    index_.emplace(Key{r.planner, r.domain, r.level, r.problem}, i);
  }
}

const RunRecord* Dataset::find(std::string_view planner, std::string_view domain, Level level,
                               std::string_view problem) const {
  auto it = index_.find(Key{std::string(planner), std::string(domain), level, std::string(problem)});
  return it == index_.end() ? nullptr : &runs_[it->second];
}

std::size_t Dataset::attempted(std::string_view planner, const ProblemSet& set) const {
  std::size_t n = 0;
  for (const auto& problem : set.problems)
    if (find(planner, set.domain, set.level, problem)) ++n;
  return n;
}

std::size_t Dataset::solved(std::string_view planner, Level level, SizeClass size) const {
  std::size_t n = 0;
  for (const auto* set : manifest_.sets_at(level, size))
    for (const auto& problem : set->problems)
      if (const auto* r = find(planner, set->domain, level, problem); r && r->solved) ++n;
  return n;
}

std::string Dataset::content_hash() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
  };
  feed(format_runs(runs_));
  feed(format_manifest(manifest_));
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(hash));
  return buf.data();
}

}  // namespace plancomp
