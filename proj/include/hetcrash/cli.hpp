/*
 * cli.hpp
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

// Command-line front end: run a trace, sweep a world, tabulate the corpus.

#include <iosfwd>
#include <string>
#include <vector>

#include "hetcrash/explorer.hpp"
#include "hetcrash/trace.hpp"

namespace hetcrash {

struct RunReport {
  StrategyName strategy = StrategyName::kVersionedMark;
  MarkPoint latest_dev_mark = MarkPoint::kDeliver;
  bool crashed = false;
  std::vector<PageBytes> recovered;  // empty for a crash-free schedule
  Verdict verdict;
};

/// run_one() that also keeps the recovered pages.
RunReport run_trace(const Schedule& s, const Strategy& strategy,
                    CheckMode mode = CheckMode::kPerByte);

/// Directory of the bundled *.trace scenarios.
std::string default_corpus_dir();

/// *.trace files in `dir`, sorted by name.
std::vector<std::string> corpus_traces(const std::string& dir);

struct CorpusRow {
  std::string scenario;  // file stem
  std::vector<RunReport> runs;  // one per kAllStrategies entry
};

std::vector<CorpusRow> run_corpus(const std::string& dir, MarkPoint latest_dev_mark = MarkPoint::kDeliver);
std::string format_corpus_table(const std::vector<CorpusRow>& rows);

struct Expectation {
  StrategyName strategy;
  bool pass;  // false: at least one violation expected

  bool operator==(const Expectation&) const = default;
};

std::vector<Expectation> default_expectations(World w);

/// Parses "latest-dev=pass,naive-disk=fail". Throws Error{kUsage}.
std::vector<Expectation> parse_expectations(std::string_view text);

bool expectation_met(const SweepReport& r, const Expectation& e);

std::string format_sweep_report(const SweepReport& r, const std::vector<Expectation>& expect);

/// Entry point of the hetcrash tool. Exit codes: 0 ok / PASS, 1 error,
/// 2 violation found (run) or expectation not met (sweep).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hetcrash
