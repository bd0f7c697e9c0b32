#include "plancomp/report.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "plancomp/agreement.hpp"
#include "plancomp/error.hpp"
#include "plancomp/hardness.hpp"
#include "plancomp/ordering.hpp"
#include "plancomp/rng.hpp"
#include "plancomp/scaling.hpp"

namespace plancomp {

namespace {

std::string strf(const char* format, ...) {
  std::array<char, 256> buf{};
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf.data(), buf.size(), format, args);
  va_end(args);
  return buf.data();
}

std::string upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::string shortest(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

// %.{digits}g without exponent notation for the ranges these tables hold.
std::string sig(double value, int digits) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  auto text = strf("%.*g", digits, value);
  if (text.find('e') == std::string::npos) return text;
  const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(value))));
  if (magnitude >= 0) return strf("%.0f", value);
  text = strf("%.*f", digits - 1 - magnitude, value);
  return text;
}

std::string csv_num(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return strf("%.6g", value);
}

std::string bold(const std::string& text) { return "**" + text + "**"; }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string category_tag(Category c) { return c == Category::FullyAutomated ? "auto" : "hand"; }

std::string with_header(const std::vector<std::string>& meta, std::string_view prefix, const std::string& body) {
  std::string out;
  for (const auto& line : meta) out += std::string(prefix) + line + "\n";
  return out + body;
}

std::vector<SizeClass> sizes_for(const ReportRequest& request) {
  if (request.size) return {*request.size};
  if (request.category == Category::HandCoded) return {SizeClass::Small, SizeClass::Large};
  return {SizeClass::Small};
}

std::vector<Level> levels_for(const Dataset& data, const ReportRequest& request, SizeClass size) {
  std::vector<Level> out;
  for (auto level : kAllLevels) {
    if (request.level && *request.level != level) continue;
    if (!data.manifest().sets_at(level, size).empty()) out.push_back(level);
  }
  return out;
}

// Category planners that entered the level and have at least one record there.
std::vector<std::string> active_planners(const Dataset& data, Category category, Level level, SizeClass size) {
  std::vector<std::string> out;
  const auto sets = data.manifest().sets_at(level, size);
  for (const auto* p : data.manifest().planners_in(category)) {
    if (!p->entered(level)) continue;
    if (std::any_of(sets.begin(), sets.end(), [&](const ProblemSet* s) { return data.attempted(p->name, *s) > 0; }))
      out.push_back(p->name);
  }
  return out;
}

std::vector<Measure> measures_for(const ReportRequest& request, Level level) {
  if (request.measure) return {*request.measure};
  std::vector<Measure> out{Measure::Speed};
  for (auto m : default_quality_measures(level)) out.push_back(m);
  return out;
}

std::vector<std::pair<std::string, std::string>> all_pairs(const std::vector<std::string>& planners) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < planners.size(); ++i)
    for (std::size_t j = i + 1; j < planners.size(); ++j) out.emplace_back(planners[i], planners[j]);
  return out;
}

bool is_quality(Measure m) { return m != Measure::Speed; }

std::string measure_label(Level level, Measure measure) {
  auto label = upper(to_string(level));
  if (measure == Measure::QualitySeq) label += " (Seq)";
  if (measure == Measure::QualityConc) label += " (Conc)";
  return label;
}

constexpr std::size_t kCellsPerRow = 6;

// Figure-style block: a label row of titles then any number of content rows.
void append_block(std::string& out, const std::string& label, const std::vector<std::vector<std::string>>& columns) {
  if (columns.empty()) return;
  const std::size_t rows = columns.front().size();
  for (std::size_t start = 0; start < columns.size(); start += kCellsPerRow) {
    const std::size_t end = std::min(columns.size(), start + kCellsPerRow);
    for (std::size_t r = 0; r < rows; ++r) {
      out += r == 0 ? label : std::string();
      for (std::size_t c = start; c < end; ++c) out += "\t" + columns[c][r];
      out += "\n";
    }
  }
}

std::string comparison_title(const ComparisonResult& c) {
  if (c.wilcoxon.favored == Favored::Second) return c.planner_b + "-" + c.planner_a;
  return c.planner_a + "-" + c.planner_b;
}

const char* kComparisonCsvHeader =
    "level,size_class,measure,mode,planner_a,planner_b,favored,n,n_effective,rank_sum_pos,rank_sum_neg,T,z,p,"
    "prop_wins,prop_n,prop_z,prop_p,significant,too_small\n";

std::string comparison_csv_row(const ComparisonResult& c) {
  const auto favored = c.favored_planner();
  return std::string(to_string(c.level)) + "," + std::string(to_string(c.size)) + "," +
         std::string(to_string(c.measure)) + "," + std::string(to_string(c.mode)) + "," + c.planner_a + "," +
         c.planner_b + "," + (favored ? *favored : "none") + "," + std::to_string(c.n) + "," +
         std::to_string(c.wilcoxon.n_effective) + "," + csv_num(c.wilcoxon.rank_sum_pos) + "," +
         csv_num(c.wilcoxon.rank_sum_neg) + "," + csv_num(c.wilcoxon.T) + "," + csv_num(c.wilcoxon.z) + "," +
         csv_num(c.wilcoxon.p_two_sided.value()) + "," + std::to_string(c.proportion.wins) + "," +
         std::to_string(c.proportion.n) + "," + csv_num(c.proportion.z) + "," +
         csv_num(c.proportion.p_two_sided.value()) + "," + (c.significant_at ? "1" : "0") + "," +
         (c.too_small ? "1" : "0") + "\n";
}

std::string magnitude_p(double p) {
  if (p < 0.001) return "< 0.001";
  if (p < 0.01) return strf("%.3f", p);
  return strf("%.2f", p);
}

std::string trimmed2(double v) {
  auto text = strf("%.2f", v);
  while (text.back() == '0') text.pop_back();
  if (text.back() == '.') text.pop_back();
  return text;
}

std::string format_t(double t) {
  if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
  return strf("%.2f", t);
}

std::string percentile_text(double p) {
  if (p == 0.0) return "0";
  if (p == 1.0) return "1";
  return sig(p, 2);
}

std::string hardness_levels_header(const std::vector<Level>& levels,
                                   const std::map<Level, int>& planners_at_level) {
  std::string out;
  for (auto level : levels) {
    auto it = planners_at_level.find(level);
    out += "\t" + upper(to_string(level)) + " [" + std::to_string(it == planners_at_level.end() ? 0 : it->second) + "]";
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// config

void ReportConfig::set(std::string_view key, std::string_view value) {
  auto fail = [&](const char* why) {
    throw Error(ErrorCode::InvalidConfig, "config " + std::string(key) + "=" + std::string(value) + ": " + why);
  };
  auto real = [&]() {
    double v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) fail("not a number");
    return v;
  };
  auto integer = [&]() {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) fail("not an integer");
    return v;
  };

  if (key == "alpha_pairwise") {
    alpha_pairwise = real();
  } else if (key == "alpha_magnitude") {
    alpha_magnitude = real();
  } else if (key == "alpha_agreement") {
    alpha_agreement = real();
  } else if (key == "alpha_scaling") {
    alpha_scaling = real();
  } else if (key == "bootstrap_B") {
    bootstrap_B = static_cast<int>(integer());
  } else if (key == "bootstrap_m") {
    bootstrap_m = static_cast<int>(integer());
  } else if (key == "cutoff_ms") {
    cutoff_ms = integer();
  } else if (key == "seed") {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) fail("not an unsigned 64-bit integer");
    seed = v;
  } else if (key == "output_dir") {
    output_dir = std::string(value);
  } else if (key == "threads") {
    const auto v = integer();
    if (v < 1) fail("must be positive");
    threads = static_cast<unsigned>(v);
  } else if (key == "require_ranking_agreement") {
    if (value == "1" || value == "true") {
      require_ranking_agreement = true;
    } else if (value == "0" || value == "false") {
      require_ranking_agreement = false;
    } else {
      fail("expected true/false");
    }
  } else {
    fail("unknown key");
  }
}

void ReportConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::InvalidConfig, path + ":" + std::to_string(line_no) + ": expected key=value");
    set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
}

void ReportConfig::validate() const {
  for (double a : {alpha_pairwise, alpha_magnitude, alpha_agreement, alpha_scaling})
    if (!(a > 0.0 && a < 0.5)) throw Error(ErrorCode::InvalidConfig, "alphas must lie in (0, 0.5)");
  if (bootstrap_B <= 0 || bootstrap_m <= 0 || cutoff_ms <= 0)
    throw Error(ErrorCode::InvalidConfig, "bootstrap_B, bootstrap_m and cutoff_ms must be positive");
}

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::Validate: return "validate";
    case Command::Compare: return "compare";
    case Command::Order: return "order";
    case Command::Hardness: return "hardness";
    case Command::Agreement: return "agreement";
    case Command::Scaling: return "scaling";
    case Command::Series: return "series";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view text) {
  for (auto c : {Command::Validate, Command::Compare, Command::Order, Command::Hardness, Command::Agreement,
                 Command::Scaling, Command::Series})
    if (to_string(c) == text) return c;
  return std::nullopt;
}

std::vector<std::string> metadata_lines(const ReportConfig& config, const Dataset& data, Command command) {
  return {
      "plancomp " + std::string(kVersion) + " " + std::string(to_string(command)),
      "seed=" + std::to_string(config.seed) + " B=" + std::to_string(config.bootstrap_B) +
          " m=" + std::to_string(config.bootstrap_m) + " cutoff_ms=" + std::to_string(config.cutoff_ms) +
          " rng=" + SplitMix64::kName,
      "alpha_pairwise=" + csv_num(config.alpha_pairwise) + " alpha_magnitude=" + csv_num(config.alpha_magnitude) +
          " alpha_agreement=" + csv_num(config.alpha_agreement) + " alpha_scaling=" + csv_num(config.alpha_scaling),
      "dataset=" + data.content_hash(),
  };
}

// ---------------------------------------------------------------------------
// cell renderings

std::string format_z(double z) {
  if (std::isinf(z)) return z > 0 ? "inf" : "-inf";
  return sig(std::fabs(z), 2);
}

std::string format_pairwise_p(double p, double alpha) {
  if (p < alpha) return "*";
  if (p < 0.01) return "< 0.01";
  return strf("%.2f", p);
}

std::string render_comparison_cell(const ComparisonResult& c, double alpha) {
  const double p = c.wilcoxon.p_two_sided.value();
  const bool significant = !c.too_small && c.wilcoxon.favored != Favored::None && p <= alpha;
  std::string text;
  const bool fallback =
      !significant && !c.too_small && c.proportion.n > 0 && c.proportion.p_two_sided.value() <= alpha;
  if (fallback) {
    // proportion z oriented towards the first-named planner of the title
    const bool flipped = c.wilcoxon.favored == Favored::Second;
    const double zp = flipped ? -c.proportion.z : c.proportion.z;
    text = format_z(c.wilcoxon.z) + " (" + (zp < 0 ? "-" : "") + format_z(zp) + ") " + format_pairwise_p(p, alpha) +
           " (" + format_pairwise_p(c.proportion.p_two_sided.value(), alpha) + ")";
  } else {
    text = format_z(c.wilcoxon.z) + " " + format_pairwise_p(p, alpha);
  }
  if (c.too_small) text += " [n<" + std::to_string(kMinComparisonSample) + "]";
  return significant ? text : bold(text);
}

std::string format_hardness_cell(int easy, int hard) { return std::to_string(easy) + "/" + std::to_string(hard); }

std::string format_f_cell(int df1, int df2, double F, bool significant) {
  const auto text = "F_{" + std::to_string(df1) + "," + std::to_string(df2) + "} = " + sig(F, 3);
  return significant ? text : bold(text);
}

// ---------------------------------------------------------------------------
// validate

Report report_validate(const Dataset& data, const ReportConfig& config) {
  Report report;
  const auto diagnostics = validate_dataset(data.runs(), data.manifest());
  std::string body;
  int notes = 0;
  for (const auto& d : diagnostics) {
    const bool error = d.severity == Diagnostic::Severity::Error;
    (error ? report.validation_errors : notes)++;
    body += std::string(error ? "ERROR " : "INFO ") + std::string(to_string(d.kind)) + ": " + d.message + "\n";
  }
  report.summary = std::to_string(data.runs().size()) + " records, " +
                   std::to_string(data.manifest().planners.size()) + " planners, " +
                   std::to_string(data.manifest().problem_sets.size()) + " problem sets: " +
                   std::to_string(report.validation_errors) + " error(s), " + std::to_string(notes) + " note(s)\n" + body;
  report.files.push_back(
      {"validate.txt", with_header(metadata_lines(config, data, Command::Validate), "# ", report.summary)});
  return report;
}

// ---------------------------------------------------------------------------
// compare

Report report_compare(const Dataset& data, const ReportConfig& config, const ReportRequest& request) {
  Report report;
  const auto meta = metadata_lines(config, data, Command::Compare);
  const double alpha = config.alpha_pairwise;

  for (auto size : sizes_for(request)) {
    // measure -> (text, csv, magnitude text, magnitude csv)
    std::map<Measure, std::array<std::string, 4>> outputs;
    for (auto level : levels_for(data, request, size)) {
      const auto planners = active_planners(data, request.category, level, size);
      if (planners.size() < 2) continue;
      for (auto measure : measures_for(request, level)) {
        auto& out = outputs[measure];
        std::vector<std::vector<std::string>> whole_cols;
        std::vector<std::vector<std::string>> hits_cols;
        std::vector<std::vector<std::string>> mag_cols;
        for (const auto& [a, b] : all_pairs(planners)) {
          PairQuery q{a, b, level, measure, PairingMode::AtLeastOne, size};
          const auto whole = compare(data, q, alpha);
          out[1] += comparison_csv_row(whole);
          whole_cols.push_back({comparison_title(whole), render_comparison_cell(whole, alpha), std::to_string(whole.n)});
          if (whole.too_small)
            report.warnings.push_back("small sample (n=" + std::to_string(whole.n) + ") " + a + "/" + b + " " +
                                      std::string(to_string(level)) + " " + std::string(to_string(measure)));
          if (is_quality(measure)) {
            q.mode = PairingMode::DoubleHits;
            const auto hits = compare(data, q, alpha);
            out[1] += comparison_csv_row(hits);
            hits_cols.push_back({comparison_title(hits), render_comparison_cell(hits, alpha), std::to_string(hits.n)});
          }

          q.mode = PairingMode::DoubleHits;
          try {
            const auto mag = magnitude(data, q);
            const auto& t = mag.t_result;
            const bool sig_mag = t.p_two_sided.value() <= config.alpha_magnitude;
            auto third = format_t(t.t) + "," + std::to_string(t.df);
            auto fourth = magnitude_p(t.p_two_sided.value());
            if (!sig_mag) {
              third = bold(third);
              fourth = bold(fourth);
            }
            mag_cols.push_back({a + " " + trimmed2(t.mean_first_norm), b + " " + trimmed2(t.mean_second_norm), third,
                                fourth});
            out[3] += std::string(to_string(level)) + "," + std::string(to_string(size)) + "," +
                      std::string(to_string(measure)) + "," + a + "," + b + "," + std::to_string(mag.n) + "," +
                      std::to_string(mag.n_excluded) + "," + csv_num(t.mean_first_norm) + "," +
                      csv_num(t.mean_second_norm) + "," + csv_num(t.t) + "," + std::to_string(t.df) + "," +
                      csv_num(t.p_two_sided.value()) + "," + (sig_mag ? "1" : "0") + "\n";
            if (std::isinf(t.t))
              report.warnings.push_back("degenerate t (zero spread) " + a + "/" + b + " " +
                                        std::string(to_string(level)) + " " + std::string(to_string(measure)));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::TooFewPairs) throw;
            report.warnings.push_back("magnitude skipped (fewer than 2 double hits) " + a + "/" + b + " " +
                                      std::string(to_string(level)) + " " + std::string(to_string(measure)));
          }
        }
        append_block(out[0], measure_label(level, measure), whole_cols);
        if (!hits_cols.empty()) {
          // double-hits rows are labelled separately below the whole-sample rows
          append_block(out[0], measure_label(level, measure) + " double hits", hits_cols);
        }
        append_block(out[2], measure_label(level, measure), mag_cols);
      }
    }

    for (const auto& [measure, out] : outputs) {
      const auto stem = category_tag(request.category) + "_" + std::string(to_string(size)) + "_" +
                        std::string(to_string(measure));
      const auto footnote = "'*' indicates a result less than " + csv_num(alpha) +
                            "\nBolded (**...**) results are not significant at p = " + csv_num(alpha) + "\n";
      report.files.push_back({"compare_" + stem + ".txt", with_header(meta, "# ", out[0] + footnote)});
      report.files.push_back({"compare_" + stem + ".csv", with_header(meta, "# ", kComparisonCsvHeader + out[1])});
      report.files.push_back(
          {"magnitude_" + stem + ".txt",
           with_header(meta, "# ",
                       out[2] + "Bolded (**...**) results are not significant at p = " +
                           csv_num(config.alpha_magnitude) + "\n")});
      report.files.push_back(
          {"magnitude_" + stem + ".csv",
           with_header(meta, "# ",
                       "level,size_class,measure,planner_a,planner_b,n,n_excluded,mean_a_norm,mean_b_norm,t,df,p,"
                       "significant\n" +
                           out[3])});
    }
  }
  report.summary = "compare: wrote " + std::to_string(report.files.size()) + " file(s)\n";
  return report;
}

// ---------------------------------------------------------------------------
// order

Report report_order(const Dataset& data, const ReportConfig& config, const ReportRequest& request) {
  Report report;
  auto meta = metadata_lines(config, data, Command::Order);
  if (request.reduce) meta.push_back("transitive reduction applied to solid edges");

  for (auto size : sizes_for(request)) {
    for (auto level : levels_for(data, request, size)) {
      std::vector<std::string> planners;
      std::string tag;
      if (request.cross) {
        // best planner of each category: most problems solved at this level
        for (auto cat : {Category::FullyAutomated, Category::HandCoded}) {
          const auto candidates = active_planners(data, cat, level, size);
          std::optional<std::string> best;
          std::size_t best_solved = 0;
          for (const auto& p : candidates) {
            const auto solved = data.solved(p, level, size);
            if (!best || solved > best_solved) {
              best = p;
              best_solved = solved;
            }
          }
          if (best) planners.push_back(*best);
        }
        tag = "cross";
      } else {
        planners = active_planners(data, request.category, level, size);
        tag = category_tag(request.category);
      }
      if (planners.size() < 2) continue;

      for (auto measure : measures_for(request, level)) {
        std::vector<ComparisonResult> comparisons;
        for (const auto& [a, b] : all_pairs(planners)) {
          for (auto mode : {PairingMode::AtLeastOne, PairingMode::DoubleHits}) {
            comparisons.push_back(compare(data, PairQuery{a, b, level, measure, mode, size}, config.alpha_pairwise));
            if (comparisons.back().too_small && mode == PairingMode::AtLeastOne)
              report.warnings.push_back("small sample excluded from ordering: " + a + "/" + b + " " +
                                        std::string(to_string(level)) + " " + std::string(to_string(measure)));
          }
        }
        auto order = build_order(comparisons, config.alpha_pairwise);
        if (request.reduce) order = transitive_reduction(order);
        for (const auto& note : order.annotations) report.warnings.push_back(note);
        const auto name = "order_" + tag + "_" + std::string(to_string(size)) + "_" + std::string(to_string(level)) +
                          "_" + std::string(to_string(measure)) + ".dot";
        report.files.push_back({name, to_dot(order, meta)});
      }
    }
  }
  report.summary = "order: wrote " + std::to_string(report.files.size()) + " graph(s)\n";
  return report;
}

// ---------------------------------------------------------------------------
// hardness

Report report_hardness(const Dataset& data, const ReportConfig& config, const ReportRequest& request) {
  Report report;
  const auto meta = metadata_lines(config, data, Command::Hardness);
  const BootstrapParams params{config.bootstrap_B, config.bootstrap_m, config.cutoff_ms, config.seed, config.threads};

  for (auto size : sizes_for(request)) {
    const auto levels = levels_for(data, request, size);
    std::vector<HardnessTable> tables;
    for (auto pool : {PoolKind::LevelSpecific, PoolKind::LevelIndependent}) {
      auto table = hardness_table(data, request.category, pool, size, params);
      if (request.level) {
        std::erase_if(table.cells, [&](const HardnessCell& c) { return c.level != *request.level; });
        std::erase_if(table.verdicts, [&](const HardnessVerdict& v) { return v.level != *request.level; });
      }
      tables.push_back(std::move(table));
    }

    std::vector<std::string> domains;
    for (const auto& set : data.manifest().problem_sets)
      if (set.size_class == size && std::find(domains.begin(), domains.end(), set.domain) == domains.end())
        domains.push_back(set.domain);

    std::string text = "\tLevel-dependent";
    text += std::string(levels.size(), '\t');
    text += "Level-independent\n";
    for (const auto& table : tables) {
      std::map<Level, int> at_level;
      for (const auto& c : table.cells) at_level[c.level] = std::max(at_level[c.level], c.planners);
      text += hardness_levels_header(levels, at_level);
    }
    text += "\n";
    for (const auto& domain : domains) {
      text += domain + (size == SizeClass::Large ? " (large)" : "");
      for (const auto& table : tables)
        for (auto level : levels) {
          auto it = std::find_if(table.cells.begin(), table.cells.end(),
                                 [&](const HardnessCell& c) { return c.domain == domain && c.level == level; });
          text += "\t" + (it == table.cells.end() ? std::string("-") : format_hardness_cell(it->easy, it->hard));
        }
      text += "\n";
    }
    text += "Cells: planners finding the problems significantly easy / significantly hard.\n";

    // Per-planner listing of findings significant at the 5% level.
    for (const auto& table : tables) {
      text += "\n" + std::string(to_string(table.pool)) + " findings\n\tEasy\t\tHard\t\n";
      std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> rows;
      for (const auto& v : table.notable()) {
        auto entry = v.domain + " " + std::string(display_name(v.level)) + "\t" + percentile_text(v.percentile);
        (v.percentile <= 0.05 ? rows[v.planner].first : rows[v.planner].second).push_back(std::move(entry));
      }
      for (const auto* p : data.manifest().planners_in(request.category)) {
        auto it = rows.find(p->name);
        if (it == rows.end()) continue;
        auto& [easy, hard] = it->second;
        std::sort(easy.begin(), easy.end());
        std::sort(hard.begin(), hard.end());
        const std::size_t lines = std::max(easy.size(), hard.size());
        for (std::size_t i = 0; i < lines; ++i) {
          text += (i == 0 ? p->name : std::string()) + "\t" + (i < easy.size() ? easy[i] : "\t") + "\t" +
                  (i < hard.size() ? hard[i] : "\t") + "\n";
        }
      }
    }

    std::string csv = "planner,domain,level,size_class,pool,area_ms,percentile,classification\n";
    for (const auto& table : tables)
      for (const auto& v : table.verdicts)
        csv += v.planner + "," + v.domain + "," + std::string(to_string(v.level)) + "," +
               std::string(to_string(v.size)) + "," + std::string(to_string(v.pool)) + "," + csv_num(v.area_ms) +
               "," + csv_num(v.percentile) + "," + std::string(to_string(v.classification)) + "\n";

    const auto stem = "hardness_" + category_tag(request.category) + "_" + std::string(to_string(size));
    report.files.push_back({stem + ".txt", with_header(meta, "# ", text)});
    report.files.push_back({stem + ".csv", with_header(meta, "# ", csv)});
  }
  report.summary = "hardness: wrote " + std::to_string(report.files.size()) + " file(s)\n";
  return report;
}

// ---------------------------------------------------------------------------
// agreement

Report report_agreement(const Dataset& data, const ReportConfig& config, const ReportRequest& request) {
  Report report;
  const auto meta = metadata_lines(config, data, Command::Agreement);
  for (auto size : sizes_for(request)) {
    auto grid = agreement_table(data, request.category, size, config.alpha_agreement);
    if (request.level)
      std::erase_if(grid, [&](const AgreementResult& r) { return r.level != *request.level; });
    const auto levels = levels_for(data, request, size);

    std::vector<std::string> domains;
    for (const auto& r : grid)
      if (std::find(domains.begin(), domains.end(), r.domain) == domains.end()) domains.push_back(r.domain);
    std::stable_sort(domains.begin(), domains.end(), [&](const std::string& x, const std::string& y) {
      auto pos = [&](const std::string& d) {
        for (std::size_t i = 0; i < data.manifest().problem_sets.size(); ++i)
          if (data.manifest().problem_sets[i].domain == d) return i;
        return data.manifest().problem_sets.size();
      };
      return pos(x) < pos(y);
    });

    std::string text = (request.category == Category::FullyAutomated ? "Fully Automated" : "Hand-Coded") +
                       std::string(size == SizeClass::Large ? " (Large)" : "");
    for (auto level : levels) text += "\t" + std::string(display_name(level));
    text += "\n";
    for (const auto& domain : domains) {
      text += domain;
      for (auto level : levels) {
        auto it = std::find_if(grid.begin(), grid.end(),
                               [&](const AgreementResult& r) { return r.domain == domain && r.level == level; });
        text += "\t";
        if (it != grid.end()) text += format_f_cell(it->mrc.df1, it->mrc.df2, it->mrc.F, it->significant);
      }
      text += "\n";
    }
    text += "Bolded (**...**) cells show no significant agreement at p = " + csv_num(config.alpha_agreement) + "\n";

    std::string csv = "domain,level,size_class,F,df1,df2,p,significant,judges\n";
    for (const auto& r : grid) {
      csv += r.domain + "," + std::string(to_string(r.level)) + "," + std::string(to_string(r.size)) + "," +
             csv_num(r.mrc.F) + "," + std::to_string(r.mrc.df1) + "," + std::to_string(r.mrc.df2) + "," +
             csv_num(r.mrc.p.value()) + "," + (r.significant ? "1" : "0") + "," + join(r.judges, ";") + "\n";
      if (std::isinf(r.mrc.F))
        report.warnings.push_back("perfect agreement (infinite F) at " + r.domain + "/" + std::string(to_string(r.level)));
      for (const auto& p : r.excluded)
        report.warnings.push_back("judge " + p + " excluded at " + r.domain + "/" + std::string(to_string(r.level)) +
                                  " (attempted under half the problems)");
    }
    const auto stem = "agreement_" + category_tag(request.category) + "_" + std::string(to_string(size));
    report.files.push_back({stem + ".txt", with_header(meta, "# ", text)});
    report.files.push_back({stem + ".csv", with_header(meta, "# ", csv)});
  }
  report.summary = "agreement: wrote " + std::to_string(report.files.size()) + " file(s)\n";
  return report;
}

// ---------------------------------------------------------------------------
// scaling

Report report_scaling(const Dataset& data, const ReportConfig& config, const ReportRequest& request) {
  Report report;
  const auto meta = metadata_lines(config, data, Command::Scaling);
  const BootstrapParams params{config.bootstrap_B, config.bootstrap_m, config.cutoff_ms, config.seed, config.threads};
  const ScalingOptions options{config.alpha_scaling, config.cutoff_ms, config.require_ranking_agreement};

  for (auto size : sizes_for(request)) {
    const auto hardness = hardness_table(data, request.category, PoolKind::LevelSpecific, size, params);
    std::vector<std::string> planners;
    for (const auto* p : data.manifest().planners_in(request.category)) planners.push_back(p->name);

    std::string text;
    std::string csv = "planner_a,planner_b,level,n,rho_z,p,verdict,domains\n";
    for (auto level : levels_for(data, request, size)) {
      std::map<std::pair<std::string, std::string>, std::string> cells;
      bool any = false;
      for (std::size_t i = 0; i < planners.size(); ++i)
        for (std::size_t j = i + 1; j < planners.size(); ++j) {
          const auto& a = planners[i];
          const auto& b = planners[j];
          const auto r = scaling_comparison(data, a, b, level, hardness, request.category, size, options);
          any = any || r.comparable();
          csv += a + "," + b + "," + std::string(to_string(level)) + "," + std::to_string(r.n) + "," +
                 (r.comparable() ? csv_num(r.spearman.z) : "") + "," +
                 (r.comparable() ? csv_num(r.spearman.p_two_sided.value()) : "") + "," +
                 std::string(to_string(r.verdict)) + "," + join(r.domains, ";") + "\n";
          if (r.spearman.small_sample && r.comparable())
            report.warnings.push_back("scaling " + a + "/" + b + " " + std::string(to_string(level)) +
                                      " has only " + std::to_string(r.n) + " problems");
          switch (r.verdict) {
            case ScalingVerdict::AScalesBetter: cells[{a, b}] = sig(std::fabs(r.spearman.rho), 2); break;
            case ScalingVerdict::BScalesBetter: cells[{b, a}] = sig(std::fabs(r.spearman.rho), 2); break;
            case ScalingVerdict::NoDifference: cells[{a, b}] = "0"; break;
            case ScalingVerdict::NoSharedTrack: cells[{a, b}] = "x"; break;
            case ScalingVerdict::InsufficientAgreement: cells[{a, b}] = "o"; break;
          }
        }
      text += upper(to_string(level)) + (any ? "" : " (no comparable pairs)") + "\n";
      for (const auto& col : planners) text += "\t" + col;
      text += "\n";
      for (const auto& row : planners) {
        text += row;
        for (const auto& col : planners) {
          auto it = cells.find({row, col});
          text += "\t" + (row == col ? std::string("-") : it == cells.end() ? std::string() : it->second);
        }
        text += "\n";
      }
      text += "\n";
    }
    text +=
        "Row planner scales better by the shown correlation. 0 = no significant difference; x = one planner "
        "produced no data at this level; o = insufficient agreement on difficulty.\n";
    const auto stem = "scaling_" + category_tag(request.category) + "_" + std::string(to_string(size));
    report.files.push_back({stem + ".txt", with_header(meta, "# ", text)});
    report.files.push_back({stem + ".csv", with_header(meta, "# ", csv)});
  }
  report.summary = "scaling: wrote " + std::to_string(report.files.size()) + " file(s)\n";
  return report;
}

// ---------------------------------------------------------------------------
// series

Report report_series(const Dataset& data, const ReportConfig& config, const ReportRequest& request) {
  if (!request.domain || !request.level)
    throw Error(ErrorCode::UnknownCell, "series needs --domain and --level");
  const auto size = request.size.value_or(SizeClass::Small);
  const auto* set = data.manifest().find_set(*request.domain, *request.level, size);
  if (!set)
    throw Error(ErrorCode::UnknownCell, "no " + std::string(to_string(size)) + " problem set for " + *request.domain +
                                            "/" + std::string(to_string(*request.level)));
  const auto measure = request.measure.value_or(default_quality_measures(*request.level).front());

  std::vector<std::string> planners;
  for (const auto& p : data.manifest().planners)
    if (data.attempted(p.name, *set) > 0) planners.push_back(p.name);

  auto meta = metadata_lines(config, data, Command::Series);
  meta.push_back("domain=" + set->domain + " level=" + std::string(to_string(set->level)) +
                 " size_class=" + std::string(to_string(size)) + " measure=" + std::string(to_string(measure)));
  meta.push_back("direction=" + std::string(measure == Measure::QualityMetric ? to_string(set->quality_direction)
                                                                             : to_string(QualityDirection::Minimize)));

  std::string csv = "problem";
  for (const auto& p : planners) csv += "," + p;
  csv += "\n";
  for (const auto& problem : set->problems) {
    csv += problem;
    for (const auto& p : planners) {
      csv += ",";
      const auto* r = data.find(p, set->domain, set->level, problem);
      if (!r) continue;
      if (auto v = measure_value(*r, measure)) csv += shortest(*v);
    }
    csv += "\n";
  }

  Report report;
  report.files.push_back({"series_" + set->domain + "_" + std::string(to_string(set->level)) + "_" +
                              std::string(to_string(size)) + "_" + std::string(to_string(measure)) + ".csv",
                          with_header(meta, "# ", csv)});
  report.summary = "series: " + std::to_string(set->problems.size()) + " problems x " +
                   std::to_string(planners.size()) + " planners\n";
  return report;
}

Report run_report(Command command, const Dataset& data, const ReportConfig& config, const ReportRequest& request) {
  config.validate();
  switch (command) {
    case Command::Validate: return report_validate(data, config);
    case Command::Compare: return report_compare(data, config, request);
    case Command::Order: return report_order(data, config, request);
    case Command::Hardness: return report_hardness(data, config, request);
    case Command::Agreement: return report_agreement(data, config, request);
    case Command::Scaling: return report_scaling(data, config, request);
    case Command::Series: return report_series(data, config, request);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown command");
}

void write_report(const Report& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir + ": " + ec.message());
  for (const auto& file : report.files) {
    const auto path = std::filesystem::path(dir) / file.name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << file.contents;
  }
}

}  // namespace plancomp
