/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "socsum/core.hpp"
#include "socsum/filters.hpp"

namespace socsum {

// User request: total length and how it splits across advanced filters.
struct SummarySpec {
  double total_duration_s = 0.0;
  std::vector<std::pair<std::string, double>> allocations;  // (filter name, percent)

  void validate() const {
    if (!(total_duration_s > 0.0)) throw config_error("summary duration must be positive");
    double sum = 0.0;
    for (const auto& [name, pct] : allocations) {
      if (pct < 0.0) throw config_error("negative percentage for filter '" + name + "'");
      sum += pct;
    }
    if (std::abs(sum - 100.0) > 1e-9) throw config_error("filter percentages must sum to 100");
  }
};

struct SummaryEntry {
  std::int64_t shot_id = 0;
  std::int64_t start_frame = 0;
  std::int64_t end_frame = 0;
  std::string filter;
  double local = 0.0;
  double global_score = 0.0;
};

struct Summary {
  double target_duration_s = 0.0;
  std::vector<SummaryEntry> entries;  // broadcast time order
};

// Diagnostics for tests: budgets after redistribution and what each filter
// actually claimed, in seconds.
struct SelectionTrace {
  std::vector<double> budget;
  std::vector<double> claimed;
};

// Greedy constrained selection. Per filter (declaration order), shots rank
// by local score (ties: higher global score, then earlier start). A shot
// is claimed while its filter's budget and the global pool are both unmet;
// the last claim may overshoot its budget by at most its own length.
// Budgets that cannot be filled are redistributed equally among filters
// that still hold positive-score unclaimed candidates, until nothing
// moves. The global pool cap bounds the summary by target + one shot
// length no matter how budgets interleave.
inline Summary select_shots(const std::vector<Shot>& shots, Rational fps, const ScoreTable& table,
                            const std::vector<AdvancedFilterSpec>& filters, const SummarySpec& spec,
                            SelectionTrace* trace = nullptr) {
  spec.validate();
  if (shots.empty()) throw analysis_error("cannot select from an empty shot list");
  if (table.local.size() != filters.size()) throw analysis_error("score table does not match filters");
  for (const auto& l : table.local)
    if (l.size() != shots.size()) throw analysis_error("score table does not match shots");

  // Resolve allocations to filter indices.
  std::vector<double> budget(filters.size(), 0.0);
  for (const auto& [name, pct] : spec.allocations) {
    std::size_t idx = filters.size();
    for (std::size_t f = 0; f < filters.size(); ++f)
      if (filters[f].name == name) {
        idx = f;
        break;
      }
    if (idx == filters.size()) throw config_error("allocation names unknown filter '" + name + "'");
    budget[idx] += pct / 100.0 * spec.total_duration_s;
  }

  std::vector<double> dur(shots.size());
  for (std::size_t s = 0; s < shots.size(); ++s) dur[s] = shot_duration_s(shots[s], fps);

  // Candidate ranking per filter.
  std::vector<std::vector<std::size_t>> order(filters.size());
  for (std::size_t f = 0; f < filters.size(); ++f) {
    std::vector<std::size_t>& idx = order[f];
    idx.resize(shots.size());
    for (std::size_t s = 0; s < shots.size(); ++s) idx[s] = s;
    const std::vector<double>& local = table.local[f];
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (local[a] != local[b]) return local[a] > local[b];
      if (table.global_score[a] != table.global_score[b])
        return table.global_score[a] > table.global_score[b];
      return shots[a].start_frame < shots[b].start_frame;
    });
  }

  std::vector<bool> taken(shots.size(), false);
  std::vector<int> taken_by(shots.size(), -1);
  std::vector<double> claimed(filters.size(), 0.0);
  std::vector<std::size_t> cursor(filters.size(), 0);
  double pool = 0.0;

  auto has_candidates = [&](std::size_t f) {
    for (std::size_t c = cursor[f]; c < order[f].size(); ++c) {
      std::size_t s = order[f][c];
      if (!taken[s] && table.local[f][s] > 0.0) return true;
    }
    return false;
  };

  auto run_claims = [&]() {
    for (std::size_t f = 0; f < filters.size(); ++f) {
      while (claimed[f] < budget[f] && pool < spec.total_duration_s) {
        std::size_t& c = cursor[f];
        while (c < order[f].size() && (taken[order[f][c]] || !(table.local[f][order[f][c]] > 0.0))) ++c;
        if (c >= order[f].size()) break;
        std::size_t s = order[f][c];
        taken[s] = true;
        taken_by[s] = static_cast<int>(f);
        claimed[f] += dur[s];
        pool += dur[s];
      }
    }
  };

  run_claims();
  // Fixed-point redistribution: donors hand their unfilled budget, in equal
  // shares, to filters that can still claim.
  for (;;) {
    if (pool >= spec.total_duration_s) break;
    double deficit = 0.0;
    std::vector<std::size_t> donors, takers;
    for (std::size_t f = 0; f < filters.size(); ++f) {
      if (has_candidates(f)) {
        takers.push_back(f);
      } else if (budget[f] > claimed[f]) {
        deficit += budget[f] - claimed[f];
        donors.push_back(f);
      }
    }
    if (deficit <= 1e-9 || takers.empty()) break;
    for (std::size_t f : donors) budget[f] = claimed[f];
    double share = deficit / static_cast<double>(takers.size());
    for (std::size_t f : takers) budget[f] += share;
    run_claims();
  }

  if (trace) {
    trace->budget = budget;
    trace->claimed = claimed;
  }

  Summary out;
  out.target_duration_s = spec.total_duration_s;
  for (std::size_t s = 0; s < shots.size(); ++s) {
    if (!taken[s]) continue;
    std::size_t f = static_cast<std::size_t>(taken_by[s]);
    out.entries.push_back({shots[s].id, shots[s].start_frame, shots[s].end_frame, filters[f].name,
                           table.local[f][s], table.global_score[s]});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const SummaryEntry& a, const SummaryEntry& b) { return a.start_frame < b.start_frame; });
  return out;
}

}  // namespace socsum
