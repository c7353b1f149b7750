/*
 * acceptance.cpp
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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "hetcrash/cli.hpp"
#include "hetcrash/explorer.hpp"
#include "reference_generator.hpp"

using namespace hetcrash;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string case_counts(const SweepReport& r, std::initializer_list<ProofCase> cases, Outcome& o) {
  std::string out;
  for (ProofCase c : cases) {
    const auto n = r.case_matches[static_cast<std::size_t>(c)];
    out += " case" + std::string(to_string(c)) + "=" + std::to_string(n);
    o.require(n > 0, "case " + std::string(to_string(c)) + " never generated");
  }
  return out;
}

std::uint64_t violations(const SweepReport& r, StrategyName s) {
  const StrategyTally* t = r.tally(s);
  return t ? t->violations : ~0ull;
}

SweepReport world_sweep(World w, const std::vector<StrategyName>& strategies) {
  ExploreConfig cfg = world_config(w);
  cfg.strategies = strategies;
  cfg.workers = workers();
  return sweep(cfg);
}

// Scenario matrix over the bundled corpus.
Outcome ac1() {
  Outcome o;
  // Columns follow kAllStrategies: naive-disk naive-nvm latest-dev wb-mark-start wb-mark-end versioned-mark.
  const std::map<std::string, std::string> want = {
      {"fig1_t10", "PFPPPP"}, {"fig1_t5", "FPPPPP"},  {"fig1_t8", "PPPPPP"},  {"fig2_t10", "FFFPPP"},
      {"fig2_t4", "FPPPPP"},  {"fig2_t8", "PFPPPP"},  {"fig3_t10", "FPPPFP"}, {"fig3_t4", "FPPFPP"},
      {"fig3_t5", "FPPFPP"},  {"fig3_t7", "PPPPPP"},
  };
  std::map<std::string, std::string> got;
  for (const CorpusRow& row : run_corpus(HETCRASH_TEST_CORPUS)) {
    std::string cells;
    for (const RunReport& r : row.runs) cells += r.verdict.passed() ? 'P' : 'F';
    got[row.scenario] = cells;
  }
  o.require(got == want, "table differs");
  for (const auto& [name, cells] : got) {
    if (want.count(name) && want.at(name) != cells) o.detail << " " << name << "=" << cells;
  }
  o.detail << " scenarios=" << got.size() << " cells=" << got.size() * std::size(kAllStrategies);
  return o;
}

Outcome ac2() {
  Outcome o;
  const SweepReport r = world_sweep(World::kA, {StrategyName::kLatestDev});
  const auto v = violations(r, StrategyName::kLatestDev);
  o.require(v == 0, "latest-dev violated");
  o.detail << " crash_schedules=" << r.crash_schedules << " latest-dev=" << v
           << case_counts(r, {ProofCase::k1_1, ProofCase::k1_2, ProofCase::k1_3}, o);
  return o;
}

Outcome ac3() {
  Outcome o;
  const SweepReport r = world_sweep(World::kB, {StrategyName::kWbMarkAtEnd, StrategyName::kLatestDev});
  const auto end = violations(r, StrategyName::kWbMarkAtEnd), latest = violations(r, StrategyName::kLatestDev);
  o.require(end == 0, "wb-mark-end violated");
  o.require(latest >= 1 && latest != ~0ull, "latest-dev never violated");
  o.detail << " crash_schedules=" << r.crash_schedules << " wb-mark-end=" << end << " latest-dev=" << latest
           << case_counts(r, {ProofCase::k2_1, ProofCase::k2_2, ProofCase::k2_3, ProofCase::k2_4}, o);
  return o;
}

Outcome ac4() {
  Outcome o;
  const SweepReport r = world_sweep(
      World::kC, {StrategyName::kVersionedMark, StrategyName::kWbMarkAtStart, StrategyName::kWbMarkAtEnd});
  const auto ver = violations(r, StrategyName::kVersionedMark);
  const auto start = violations(r, StrategyName::kWbMarkAtStart), end = violations(r, StrategyName::kWbMarkAtEnd);
  o.require(ver == 0, "versioned-mark violated");
  o.require(start >= 1 && start != ~0ull, "wb-mark-start never violated");
  o.require(end >= 1 && end != ~0ull, "wb-mark-end never violated");
  o.detail << " crash_schedules=" << r.crash_schedules << " versioned-mark=" << ver << " wb-mark-start=" << start
           << " wb-mark-end=" << end
           << case_counts(r, {ProofCase::k3_1, ProofCase::k3_2, ProofCase::k3_3, ProofCase::k3_4, ProofCase::k3_5}, o);
  return o;
}

// Oracle soundness and verdict determinism.
Outcome ac5() {
  Outcome o;
  std::uint64_t seed = 20240611;
  if (const char* env = std::getenv("HETCRASH_SEED")) seed = std::strtoull(env, nullptr, 10);

  ExploreConfig cfg = world_config(World::kC);
  cfg.max_events = 16;
  cfg.page_count = 2;
  cfg.page_size = 6;
  cfg.alphabet = "xyz";
  cfg.ranges = RangeSet::kAll;
  cfg.strict_sync_pattern = false;
  std::mt19937_64 rng(seed);
  std::size_t checked = 0, unsound = 0, unstable = 0;
  for (int i = 0; i < 10000; ++i) {
    const Schedule s = random_schedule(cfg, rng, 1.0);
    if (!is_valid(s)) {
      o.require(false, "generator produced an invalid schedule");
      break;
    }
    const History h = History::from_schedule(s);
    for (std::uint32_t p = 0; p < cfg.page_count; ++p) {
      unsound += !check(h, replay_full(h, PageId{p}), PageId{p}).passed();
    }
    for (StrategyName name : kAllStrategies) {
      const Strategy st = make_strategy(name);
      unstable += run_one(s, st) != run_one(s, st);
    }
    ++checked;
  }
  o.require(unsound == 0, "full replay rejected");
  o.require(unstable == 0, "repeated run disagreed");

  ExploreConfig sc = world_config(World::kC);
  sc.max_events = 5;
  sc.strategies = {std::begin(kAllStrategies), std::end(kAllStrategies)};
  std::vector<std::string> reports;
  std::vector<std::vector<std::string>> records;
  for (unsigned w : {1u, 4u}) {
    sc.workers = w;
    std::vector<std::string> rec;
    const SweepReport r = sweep(sc, [&](const ScheduleRecord& x) {
      rec.push_back(x.id + " " + std::string(to_string(x.strategy)) + (x.passed ? " PASS" : " VIOLATION") +
                    (x.witness ? " " + format_witness(*x.witness) : ""));
    });
    reports.push_back(format_sweep_report(r, {}));
    records.push_back(std::move(rec));
  }
  o.require(reports[0] == reports[1], "report depends on worker count");
  o.require(records[0] == records[1], "records depend on worker count");
  o.detail << " seed=" << seed << " random_schedules=" << checked << " unsound=" << unsound
           << " unstable=" << unstable << " worker_records=" << records[0].size();
  return o;
}

// Enumeration against an independent brute-force generator.
Outcome ac6() {
  Outcome o;
  std::size_t configs = 0, schedules = 0;
  for (World w : {World::kA, World::kB, World::kC}) {
    for (std::size_t n = 0; n <= 3; ++n) {
      for (RangeSet ranges : {RangeSet::kUnitAndWhole, RangeSet::kAll}) {
        ExploreConfig cfg = world_config(w);
        cfg.max_events = n;
        cfg.ranges = ranges;
        std::set<std::vector<Event>> got, want;
        std::size_t emitted = 0;
        enumerate(cfg, [&](const Schedule& s) {
          got.insert(s.events);
          ++emitted;
        });
        for (const Schedule& s : reference_schedules(cfg)) want.insert(s.events);
        ++configs;
        schedules += want.size();
        if (got != want || emitted != got.size()) {
          o.require(false, std::string("world ") + to_char(w) + " n=" + std::to_string(n) + " ranges=" +
                               std::string(to_string(ranges)));
        }
      }
    }
  }
  o.detail << " configs=" << configs << " schedules=" << schedules;
  return o;
}

Outcome ac7() {
  Outcome o;
  const Schedule s = load_trace(std::string(HETCRASH_TEST_CORPUS) + "/fig2_t10.trace").schedule;
  const RunReport latest = run_trace(s, make_strategy(StrategyName::kLatestDev));
  const RunReport end = run_trace(s, make_strategy(StrategyName::kWbMarkAtEnd));
  const std::string a = latest.recovered.at(0).str(), b = end.recovered.at(0).str();
  o.require(a == "abcxyz", "latest-dev rebuilt " + a);
  o.require(b.substr(1, 2) == "31" && b.substr(3) == "xyz", "wb-mark-end rebuilt " + b);
  o.require(end.verdict.passed(), "wb-mark-end string rejected by the oracle");
  o.require(!latest.verdict.passed(), "latest-dev string accepted by the oracle");
  o.detail << " latest-dev=\"" << a << "\" wb-mark-end=\"" << b << "\"";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"AC1 corpus scenario matrix", ac1},
      {"AC2 world A sweep", ac2},
      {"AC3 world B sweep", ac3},
      {"AC4 world C sweep", ac4},
      {"AC5 oracle soundness and determinism", ac5},
      {"AC6 enumeration vs reference generator", ac6},
      {"AC7 recovered strings", ac7},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ":" << o.detail.str() << " (" << std::fixed
              << std::setprecision(1) << secs << "s)" << std::endl;
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
