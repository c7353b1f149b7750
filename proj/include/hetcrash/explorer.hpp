/*
 * explorer.hpp
 *
 * This source file is part of the hetcrash project
 *
 * Copyright 2026 The hetcrash Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Bounded exhaustive exploration: every valid schedule up to max_events
// mutation events, with a crash injected at every position, run through each
// strategy and checked by the oracle.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hetcrash/oracle.hpp"
#include "hetcrash/recovery.hpp"

namespace hetcrash {

/// Escalating simulation modes: A = page-granularity syncs and atomic
/// write-back, B = adds arbitrary-length sync writes, C = adds write-back
/// as a start/deliver/end duration.
enum class World { kA, kB, kC };

std::optional<World> parse_world(std::string_view name);
char to_char(World w);

/// Byte ranges the generator may pick for a write.
enum class RangeSet {
  kWhole,         // whole page only
  kUnitAndWhole,  // every single byte, plus the whole page
  kAll,           // every (off, len)
};

std::string_view to_string(RangeSet r);
std::optional<RangeSet> parse_range_set(std::string_view name);

struct ExploreConfig {
  std::size_t max_events = 6;
  std::size_t page_count = 1;
  std::size_t page_size = 4;
  std::string alphabet = "xy";
  bool allow_partial_sync_writes = false;
  bool allow_wb_duration = false;
  // A sync-write run must follow a SYNC with no plain write of the page in between.
  bool strict_sync_pattern = true;
  RangeSet ranges = RangeSet::kUnitAndWhole;
  // Prefix every schedule with an INIT of the unwritten page for each page.
  bool seed_init = true;
  std::vector<StrategyName> strategies;
  MarkPoint latest_dev_mark = MarkPoint::kDeliver;
  unsigned workers = 1;
  std::size_t max_counterexamples = 3;

  Geometry geometry() const { return {page_size, page_count}; }
};

/// Preset for a world with its default bound and strategy list.
ExploreConfig world_config(World w);

/// Throws Error{kUsage} for an unusable configuration.
void validate_config(const ExploreConfig& cfg);

/// One generator step: a single event, or a fused write-back triple.
using Move = std::vector<Event>;

/// Generator-side state: what moves are legal next.
struct GenState {
  std::vector<PageFlags> flags;
  std::vector<WbPhase> phase;
  std::vector<bool> plain_dirty;  // plain write since the last SYNC
  std::size_t symbols_used = 0;
  std::size_t depth = 0;

  explicit GenState(const ExploreConfig& cfg);
};

/// Legal moves in a fixed order (the enumeration order).
std::vector<Move> legal_moves(const ExploreConfig& cfg, const GenState& g);
void advance(GenState& g, const Move& m, const ExploreConfig& cfg);

/// The INIT prefix every generated schedule starts with (possibly empty).
std::vector<Event> init_prefix(const ExploreConfig& cfg);

/// Visits every valid schedule: each move path of length <= max_events,
/// once crash-free and once with a trailing CRASH.
void enumerate(const ExploreConfig& cfg, const std::function<void(const Schedule&)>& visit);
std::vector<Schedule> enumerate_all(const ExploreConfig& cfg);

/// Rebuilds a schedule from its id (see ScheduleRecord::id).
Schedule schedule_from_id(const ExploreConfig& cfg, std::string_view id);

/// Runs, recovers every page and checks. Crash-free schedules always pass.
Verdict run_one(const Schedule& s, const Strategy& strategy, CheckMode mode = CheckMode::kPerByte);

enum class ProofCase : std::uint8_t {
  k1_1, k1_2, k1_3,
  k2_1, k2_2, k2_3, k2_4,
  k3_1, k3_2, k3_3, k3_4, k3_5,
};
inline constexpr std::size_t kProofCaseCount = 12;

std::string_view to_string(ProofCase c);

/// Event-kind shape of a schedule up to its crash: w=WRITE s=SYNC a=SYNC_WRITE
/// '<' '|' '>' = wb_start, wb_deliver, wb_end. An atomic write-back is "<|>".
std::string shape_of(const Schedule& s);

/// Bitmask over ProofCase of the proof-case patterns a crash shape ends with.
std::uint16_t tag_shape(const std::string& shape);
inline std::uint16_t tag_cases(const Schedule& s) {
  return s.crash_pos() ? tag_shape(shape_of(s)) : 0;
}

struct Counterexample {
  std::string id;
  Schedule schedule;
  StrategyName strategy = StrategyName::kVersionedMark;
  MarkPoint latest_dev_mark = MarkPoint::kDeliver;
  Verdict verdict;
  bool minimized = false;
};

/// Greedily drops events and trims write data while the schedule still
/// violates under the same strategy. The input must reproduce.
Counterexample shrink(const Counterexample& c);

struct StrategyTally {
  StrategyName strategy = StrategyName::kVersionedMark;
  std::uint64_t crash_schedules = 0;
  std::uint64_t violations = 0;
  std::vector<Counterexample> counterexamples;  // earliest in enumeration order
};

struct SweepReport {
  ExploreConfig config;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::uint64_t schedules = 0;
  std::uint64_t crash_schedules = 0;
  std::vector<StrategyTally> tallies;
  std::array<std::uint64_t, kProofCaseCount> case_matches{};

  const StrategyTally* tally(StrategyName s) const;
};

/// One checked crash schedule, for per-schedule reports.
struct ScheduleRecord {
  std::string id;
  StrategyName strategy;
  bool passed;
  std::optional<Witness> witness;  // set for violations
};

using RecordSink = std::function<void(const ScheduleRecord&)>;

/// Exhaustive over enumerate(cfg). Results do not depend on cfg.workers.
SweepReport sweep(const ExploreConfig& cfg, const RecordSink& sink = {});

/// Uniform random walk over legal moves; appends a CRASH with probability crash_p.
Schedule random_schedule(const ExploreConfig& cfg, std::mt19937_64& rng, double crash_p = 0.75);

/// Randomized alternative to sweep() for bounds too large to enumerate.
SweepReport sample(const ExploreConfig& cfg, std::uint64_t count, std::uint64_t seed);

}  // namespace hetcrash
