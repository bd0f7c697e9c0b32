// plancomp: command-line front end over the C API.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plancomp/plancomp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitStrict = 3;

struct Options {
  std::string runs;
  std::string manifest;
  std::string config_file;
  std::optional<std::string> level;
  std::optional<std::string> measure;
  std::string category = "auto";
  std::optional<std::string> size;
  std::optional<std::string> domain;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool reduce = false;
  bool cross = false;
  bool strict = false;
  bool quiet = false;
};

int fail(pc_status status, const char* context) {
  std::fprintf(stderr, "plancomp: %s: %s (%s)\n", context, pc_last_error(), pc_status_name(status));
  return kExitInput;
}

void print_report_stderr(const pc_report* report) {
  std::fputs(pc_report_summary(report), stderr);
}

int run(pc_command command, const Options& opt) {
  pc_config* config = nullptr;
  if (auto s = pc_config_new(&config); s != PC_OK) return fail(s, "config");
  struct ConfigGuard {
    pc_config* c;
    ~ConfigGuard() { pc_config_free(c); }
  } config_guard{config};

  if (!opt.config_file.empty())
    if (auto s = pc_config_load_file(config, opt.config_file.c_str()); s != PC_OK) return fail(s, "config file");

  auto set = [&](const char* key, const std::string& value) {
    return pc_config_set(config, key, value.c_str());
  };
  if (opt.alpha)
    if (auto s = set("alpha_pairwise", std::to_string(*opt.alpha)); s != PC_OK) return fail(s, "--alpha");
  if (opt.seed)
    if (auto s = set("seed", std::to_string(*opt.seed)); s != PC_OK) return fail(s, "--seed");
  if (opt.out)
    if (auto s = set("output_dir", *opt.out); s != PC_OK) return fail(s, "--out");
  if (opt.threads)
    if (auto s = set("threads", std::to_string(*opt.threads)); s != PC_OK) return fail(s, "--threads");

  pc_dataset* dataset = nullptr;
  if (auto s = pc_dataset_load(opt.runs.c_str(), opt.manifest.c_str(), &dataset); s != PC_OK)
    return fail(s, "loading dataset");
  struct DatasetGuard {
    pc_dataset* d;
    ~DatasetGuard() { pc_dataset_free(d); }
  } dataset_guard{dataset};

  pc_request request{};
  request.level = opt.level ? opt.level->c_str() : nullptr;
  request.measure = opt.measure ? opt.measure->c_str() : nullptr;
  request.category = opt.category.c_str();
  request.size = opt.size ? opt.size->c_str() : nullptr;
  request.domain = opt.domain ? opt.domain->c_str() : nullptr;
  request.reduce = opt.reduce ? 1 : 0;
  request.cross = opt.cross ? 1 : 0;

  pc_report* report = nullptr;
  const auto status = pc_run(command, dataset, config, &request, &report);
  struct ReportGuard {
    pc_report* r;
    ~ReportGuard() { pc_report_free(r); }
  } report_guard{report};

  if (status == PC_ERR_VALIDATION) {
    print_report_stderr(report);
    return kExitInput;
  }
  if (status != PC_OK) return fail(status, "analysis");

  if (auto s = pc_report_write(report, config, nullptr); s != PC_OK) return fail(s, "writing output");

  if (!opt.quiet) std::fputs(pc_report_summary(report), stdout);
  const auto warnings = pc_report_warning_count(report);
  for (size_t i = 0; i < warnings; ++i) std::fprintf(stderr, "warning: %s\n", pc_report_warning(report, i));
  if (opt.strict && warnings > 0) return kExitStrict;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical analysis of planning competition results"};
  app.set_version_flag("--version", std::string(pc_version()));
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::pair<const char*, pc_command>> commands = {
      {"validate", PC_CMD_VALIDATE},   {"compare", PC_CMD_COMPARE},     {"order", PC_CMD_ORDER},
      {"hardness", PC_CMD_HARDNESS},   {"agreement", PC_CMD_AGREEMENT}, {"scaling", PC_CMD_SCALING},
      {"series", PC_CMD_SERIES},
  };
  const std::vector<std::pair<const char*, const char*>> help = {
      {"validate", "Check runs against the manifest"},
      {"compare", "Pairwise Wilcoxon comparison and magnitude tables"},
      {"order", "Partial-order graphs (DOT)"},
      {"hardness", "Bootstrap domain hardness tables"},
      {"agreement", "Agreement among planners on problem difficulty"},
      {"scaling", "Scaling comparison matrices"},
      {"series", "Per-problem quality series (CSV)"},
  };

  std::optional<pc_command> chosen;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i].second);
    sub->add_option("--runs", opt.runs, "Runs CSV")->required()->check(CLI::ExistingFile);
    sub->add_option("--manifest", opt.manifest, "Manifest JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--config", opt.config_file, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("--level", opt.level, "strips|numeric|hardnumeric|simpletime|time|complex");
    sub->add_option("--measure", opt.measure, "speed|metric|seq|conc")
        ->check(CLI::IsMember({"speed", "metric", "seq", "conc"}));
    sub->add_option("--category", opt.category, "auto|hand")->check(CLI::IsMember({"auto", "hand"}));
    sub->add_option("--size", opt.size, "small|large")->check(CLI::IsMember({"small", "large"}));
    sub->add_option("--domain", opt.domain, "Domain (series)");
    sub->add_option("--alpha", opt.alpha, "Pairwise significance level");
    sub->add_option("--seed", opt.seed, "Bootstrap seed");
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--threads", opt.threads, "Bootstrap worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--reduce", opt.reduce, "Transitive reduction of solid edges");
    sub->add_flag("--cross", opt.cross, "Best automated against best hand-coded");
    sub->add_flag("--strict", opt.strict, "Exit 3 when any warning is raised");
    sub->add_flag("-q,--quiet", opt.quiet, "No summary on stdout");
    const auto command = commands[i].second;
    sub->callback([&chosen, command] { chosen = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  return run(*chosen, opt);
}
