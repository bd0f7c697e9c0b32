#include "plancomp/hardness.hpp"

#include <algorithm>
#include <thread>

#include "plancomp/error.hpp"

namespace plancomp {

double difficulty_area(std::span<const std::optional<std::int64_t>> times, std::int64_t cutoff_ms) {
  if (times.empty()) throw Error(ErrorCode::EmptyInput, "difficulty_area: no problems");
  if (cutoff_ms <= 0) throw Error(ErrorCode::DomainError, "difficulty_area: cutoff must be positive");
  double area = 0.0;
  for (const auto& t : times) area += static_cast<double>(t ? std::min(*t, cutoff_ms) : cutoff_ms);
  return area;
}

DifficultyArea subject_area(const Dataset& data, const std::string& planner, const ProblemSet& set,
                            std::int64_t cutoff_ms) {
  std::vector<std::optional<std::int64_t>> times;
  times.reserve(set.problems.size());
  for (const auto& problem : set.problems) {
    const auto* r = data.find(planner, set.domain, set.level, problem);
    times.push_back(r && r->solved ? r->time_ms : std::nullopt);
  }
  return {planner, set.domain, set.level, set.size_class, difficulty_area(times, cutoff_ms),
          static_cast<int>(set.problems.size()), cutoff_ms};
}

DifficultyArea rescale(const DifficultyArea& area, int m) {
  DifficultyArea out = area;
  if (area.n_problems != m) {
    out.area_ms = area.area_ms * static_cast<double>(m) / area.n_problems;
    out.n_problems = m;
  }
  return out;
}

std::string_view to_string(PoolKind kind) noexcept {
  return kind == PoolKind::LevelSpecific ? "level-specific" : "level-independent";
}

std::string_view to_string(Hardness h) noexcept {
  switch (h) {
    case Hardness::Easy: return "Easy";
    case Hardness::Hard: return "Hard";
    case Hardness::Neither: return "Neither";
  }
  return "?";
}

BootstrapPool BootstrapPool::build(const Dataset& data, const PoolSpec& spec, std::int64_t cutoff_ms) {
  const auto& manifest = data.manifest();
  const auto planners = manifest.planners_in(spec.category);
  std::vector<std::vector<double>> times;
  for (const auto& set : manifest.problem_sets) {
    if (set.size_class != spec.size) continue;
    if (spec.kind == PoolKind::LevelSpecific && set.level != spec.level) continue;

    // Planners that competed in this domain and level.
    std::vector<const PlannerEntry*> competitors;
    for (const auto* p : planners)
      if (p->entered(set.level) && data.attempted(p->name, set) > 0) competitors.push_back(p);
    if (competitors.empty()) continue;

    for (const auto& problem : set.problems) {
      std::vector<double> candidates;
      for (const auto* p : competitors) {
        const auto* r = data.find(p->name, set.domain, set.level, problem);
        candidates.push_back(static_cast<double>(r && r->solved ? std::min(*r->time_ms, cutoff_ms) : cutoff_ms));
      }
      times.push_back(std::move(candidates));
    }
  }
  if (times.empty())
    throw Error(ErrorCode::EmptyPool, "bootstrap pool is empty for " + std::string(to_string(spec.kind)) + " " +
                                          std::string(to_string(spec.level)) + " " + std::string(to_string(spec.size)) +
                                          " " + std::string(to_string(spec.category)));
  return from_times(spec, std::move(times), cutoff_ms);
}

BootstrapPool BootstrapPool::from_times(PoolSpec spec, std::vector<std::vector<double>> times, std::int64_t cutoff_ms) {
  if (times.empty()) throw Error(ErrorCode::EmptyPool, "bootstrap pool has no problems");
  for (auto& candidates : times) {
    if (candidates.empty()) throw Error(ErrorCode::EmptyPool, "bootstrap pool problem without planners");
    for (auto& t : candidates) t = std::clamp(t, 0.0, static_cast<double>(cutoff_ms));
  }
  BootstrapPool pool;
  pool.spec_ = spec;
  pool.cutoff_ms_ = cutoff_ms;
  pool.times_ = std::move(times);
  return pool;
}

double BootstrapPool::draw_area(SplitMix64& rng, int m) const {
  double area = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto& candidates = times_[rng.below(times_.size())];
    area += candidates[rng.below(candidates.size())];
  }
  return area;
}

double BootstrapDistribution::percentile(double area) const {
  const auto lo = std::lower_bound(sorted.begin(), sorted.end(), area);
  const auto hi = std::upper_bound(lo, sorted.end(), area);
  const double below = static_cast<double>(lo - sorted.begin());
  const double equal = static_cast<double>(hi - lo);
  return (below + 0.5 * equal) / static_cast<double>(sorted.size());
}

BootstrapDistribution resample(const BootstrapPool& pool, const BootstrapParams& params) {
  if (params.B < 1 || params.m < 1) throw Error(ErrorCode::DomainError, "bootstrap: B and m must be positive");
  BootstrapDistribution dist;
  dist.pool = pool.spec();
  dist.B = params.B;
  dist.m = params.m;
  dist.cutoff_ms = pool.cutoff_ms();
  dist.seed = params.seed;
  dist.samples.resize(static_cast<std::size_t>(params.B));

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = SplitMix64::stream(params.seed, i);
      dist.samples[i] = pool.draw_area(rng, params.m);
    }
  };
  const std::size_t total = dist.samples.size();
  const std::size_t workers = std::clamp<std::size_t>(params.threads, 1, total);
  if (workers == 1) {
    work(0, total);
  } else {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t begin = 0; begin < total; begin += chunk)
      threads.emplace_back(work, begin, std::min(total, begin + chunk));
  }

  dist.sorted = dist.samples;
  std::sort(dist.sorted.begin(), dist.sorted.end());
  return dist;
}

BootstrapDistribution bootstrap_distribution(const Dataset& data, const PoolSpec& spec,
                                             const BootstrapParams& params) {
  if (params.cutoff_ms <= 0) throw Error(ErrorCode::DomainError, "bootstrap: cutoff must be positive");
  return resample(BootstrapPool::build(data, spec, params.cutoff_ms), params);
}

HardnessVerdict classify(const DifficultyArea& area, const BootstrapDistribution& dist) {
  if (dist.sorted.empty()) throw Error(ErrorCode::EmptyInput, "classify: empty distribution");
  if (area.n_problems != dist.m)
    throw Error(ErrorCode::SampleSizeMismatch, "classify: subject covers " + std::to_string(area.n_problems) +
                                                   " problems, distribution samples " + std::to_string(dist.m));
  HardnessVerdict v;
  v.planner = area.planner;
  v.domain = area.domain;
  v.level = area.level;
  v.size = area.size;
  v.pool = dist.pool.kind;
  v.area_ms = area.area_ms;
  v.percentile = dist.percentile(area.area_ms);
  v.classification = v.percentile <= kEasyTail   ? Hardness::Easy
                     : v.percentile >= kHardTail ? Hardness::Hard
                                                 : Hardness::Neither;
  return v;
}

std::vector<HardnessVerdict> HardnessTable::notable() const {
  std::vector<HardnessVerdict> out;
  for (const auto& v : verdicts)
    if (v.percentile <= 0.05 || v.percentile >= 0.95) out.push_back(v);
  return out;
}

std::uint64_t pool_seed(std::uint64_t base_seed, const PoolSpec& spec) {
  const std::uint64_t tag = spec.kind == PoolKind::LevelIndependent ? 0xff : static_cast<std::uint64_t>(spec.level);
  const std::uint64_t size = spec.size == SizeClass::Small ? 0 : 1;
  const std::uint64_t category = spec.category == Category::FullyAutomated ? 0 : 1;
  return SplitMix64::mix(base_seed ^ SplitMix64::mix((tag << 8) | (size << 4) | category));
}

HardnessTable hardness_table(const Dataset& data, Category category, PoolKind pool, SizeClass size,
                             const BootstrapParams& params) {
  HardnessTable table;
  table.pool = pool;
  table.category = category;
  table.size = size;
  const auto& manifest = data.manifest();
  const auto planners = manifest.planners_in(category);

  auto make_distribution = [&](const PoolSpec& spec) -> std::optional<BootstrapDistribution> {
    auto p = params;
    p.seed = pool_seed(params.seed, spec);
    try {
      auto dist = bootstrap_distribution(data, spec, p);
      table.pool_seeds.push_back(p.seed);
      return dist;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::EmptyPool) return std::nullopt;
      throw;
    }
  };

  std::optional<BootstrapDistribution> shared;
  if (pool == PoolKind::LevelIndependent) {
    shared = make_distribution(PoolSpec{PoolKind::LevelIndependent, Level::Strips, category, size});
    if (!shared) return table;
  }

  for (auto level : kAllLevels) {
    const auto sets = manifest.sets_at(level, size);
    if (sets.empty()) continue;
    std::optional<BootstrapDistribution> local;
    if (pool == PoolKind::LevelSpecific) {
      local = make_distribution(PoolSpec{PoolKind::LevelSpecific, level, category, size});
      if (!local) continue;
    }
    const auto& dist = pool == PoolKind::LevelSpecific ? *local : *shared;

    for (const auto* set : sets) {
      HardnessCell cell{set->domain, level, size, 0, 0, 0};
      for (const auto* p : planners) {
        if (!p->entered(level) || data.attempted(p->name, *set) == 0) continue;
        const auto area = rescale(subject_area(data, p->name, *set, params.cutoff_ms), params.m);
        auto verdict = classify(area, dist);
        ++cell.planners;
        if (verdict.classification == Hardness::Easy) ++cell.easy;
        if (verdict.classification == Hardness::Hard) ++cell.hard;
        table.verdicts.push_back(std::move(verdict));
      }
      if (cell.planners > 0) table.cells.push_back(cell);
    }
  }
  return table;
}

}  // namespace plancomp
