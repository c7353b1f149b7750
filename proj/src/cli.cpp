/*
 * cli.cpp
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

#include "hetcrash/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#ifndef HETCRASH_CORPUS_DIR
#define HETCRASH_CORPUS_DIR "corpus"
#endif

namespace hetcrash {

namespace fs = std::filesystem;
using nlohmann::json;

RunReport run_trace(const Schedule& s, const Strategy& strategy, CheckMode mode) {
  RunReport report;
  report.strategy = strategy.name;
  report.latest_dev_mark = strategy.latest_dev_mark;
  RunResult run = run_to_crash(s, strategy.hooks);
  report.crashed = run.history.crash_pos().has_value();
  if (!report.crashed) return report;
  for (std::uint32_t p = 0; p < s.geometry.page_count; ++p) {
    const PageId page{p};
    report.recovered.push_back(recover(strategy, run.state.nvm, run.state.disk, page, s.geometry));
    if (report.verdict.passed()) report.verdict = check(run.history, report.recovered.back(), page, mode);
  }
  return report;
}

std::string default_corpus_dir() {
  if (const char* env = std::getenv("HETCRASH_CORPUS")) return env;
  return HETCRASH_CORPUS_DIR;
}

std::vector<std::string> corpus_traces(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kUsage, "not a directory: " + dir);
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".trace") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CorpusRow> run_corpus(const std::string& dir, MarkPoint latest_dev_mark) {
  std::vector<CorpusRow> rows;
  for (const std::string& path : corpus_traces(dir)) {
    const TraceFile trace = load_trace(path);
    CorpusRow row{fs::path(path).stem().string(), {}};
    for (StrategyName s : kAllStrategies) {
      row.runs.push_back(run_trace(trace.schedule, make_strategy(s, latest_dev_mark)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_corpus_table(const std::vector<CorpusRow>& rows) {
  std::size_t first = 8;
  for (const auto& r : rows) first = std::max(first, r.scenario.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(first)) << "scenario";
  for (StrategyName s : kAllStrategies) out << "  " << std::setw(static_cast<int>(to_string(s).size())) << to_string(s);
  out << "\n";
  for (const auto& r : rows) {
    out << std::setw(static_cast<int>(first)) << r.scenario;
    for (std::size_t k = 0; k < r.runs.size(); ++k) {
      const char* cell = r.runs[k].verdict.passed() ? "PASS" : "FAIL";
      if (k + 1 == r.runs.size()) {
        out << "  " << cell;
      } else {
        out << "  " << std::setw(static_cast<int>(to_string(kAllStrategies[k]).size())) << cell;
      }
    }
    out << "\n";
  }
  return out.str();
}

std::vector<Expectation> default_expectations(World w) {
  switch (w) {
    case World::kA:
      return {{StrategyName::kLatestDev, true},
              {StrategyName::kNaiveDisk, false},
              {StrategyName::kNaiveNvm, false}};
    case World::kB:
      return {{StrategyName::kWbMarkAtEnd, true}, {StrategyName::kLatestDev, false}};
    case World::kC:
      return {{StrategyName::kVersionedMark, true},
              {StrategyName::kWbMarkAtStart, false},
              {StrategyName::kWbMarkAtEnd, false}};
  }
  return {};
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto at = text.find(sep);
    out.push_back(text.substr(0, at));
    if (at == std::string_view::npos) break;
    text.remove_prefix(at + 1);
  }
  return out;
}

StrategyName strategy_or_throw(std::string_view name) {
  if (auto s = parse_strategy(name)) return *s;
  throw Error(ErrorCode::kUsage, "unknown strategy '" + std::string(name) + "'");
}

}  // namespace

std::vector<Expectation> parse_expectations(std::string_view text) {
  std::vector<Expectation> out;
  if (text.empty()) return out;
  for (std::string_view item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::kUsage, "expected strategy=pass|fail");
    const std::string_view verdict = item.substr(eq + 1);
    if (verdict != "pass" && verdict != "fail") {
      throw Error(ErrorCode::kUsage, "expected pass or fail, got '" + std::string(verdict) + "'");
    }
    out.push_back({strategy_or_throw(item.substr(0, eq)), verdict == "pass"});
  }
  return out;
}

bool expectation_met(const SweepReport& r, const Expectation& e) {
  const StrategyTally* t = r.tally(e.strategy);
  if (!t) return false;
  return e.pass ? t->violations == 0 : t->violations > 0;
}

namespace {

std::string indent(const std::string& text, const std::string& pad) {
  std::string out;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty()) out += pad + std::string(line) + "\n";
  }
  return out;
}

}  // namespace

std::string format_sweep_report(const SweepReport& r, const std::vector<Expectation>& expect) {
  const ExploreConfig& c = r.config;
  std::ostringstream out;
  out << (r.sampled ? "sample" : "sweep") << " max_events=" << c.max_events << " page_size=" << c.page_size
      << " page_count=" << c.page_count << " alphabet=" << c.alphabet << " ranges=" << to_string(c.ranges)
      << " sync_writes=" << (c.allow_partial_sync_writes ? "yes" : "no")
      << " wb_duration=" << (c.allow_wb_duration ? "yes" : "no")
      << " pattern=" << (c.strict_sync_pattern ? "strict" : "liberal")
      << " mark=" << to_string(c.latest_dev_mark) << "\n";
  if (r.sampled) out << "seed=" << r.seed << "\n";
  out << "schedules=" << r.schedules << " crash_schedules=" << r.crash_schedules << "\n";

  bool all_met = true;
  for (const StrategyTally& t : r.tallies) {
    out << "strategy=" << to_string(t.strategy) << " crash_schedules=" << t.crash_schedules
        << " violations=" << t.violations;
    auto e = std::find_if(expect.begin(), expect.end(), [&](const Expectation& x) { return x.strategy == t.strategy; });
    if (e != expect.end()) {
      const bool met = expectation_met(r, *e);
      all_met = all_met && met;
      out << " expect=" << (e->pass ? "pass" : "fail") << " " << (met ? "ok" : "MISMATCH");
    }
    out << "\n";
    for (const Counterexample& cx : t.counterexamples) {
      out << "  counterexample id=" << cx.id << (cx.minimized ? " minimized" : "") << "\n";
      out << indent(format_trace(cx.schedule), "    ");
      if (cx.verdict.witness) out << "    witness " << format_witness(*cx.verdict.witness) << "\n";
    }
  }
  for (const Expectation& e : expect) {
    if (!r.tally(e.strategy)) {
      all_met = false;
      out << "strategy=" << to_string(e.strategy) << " not swept MISMATCH\n";
    }
  }
  out << "cases";
  for (std::size_t i = 0; i < kProofCaseCount; ++i) {
    out << " " << to_string(static_cast<ProofCase>(i)) << "=" << r.case_matches[i];
  }
  out << "\n";
  out << "result=" << (all_met ? "ok" : "mismatch") << "\n";
  return out.str();
}

namespace {

json witness_json(const Witness& w, const std::vector<std::size_t>* lines) {
  auto pos = [&](const std::optional<std::size_t>& p) -> json {
    if (!p) return nullptr;
    if (lines && *p < lines->size()) return (*lines)[*p];
    return *p;
  };
  json j{{"page", w.page.index},     {"byte", w.byte},
         {"expected", w.expected},   {"actual", std::string(1, w.actual)},
         {"write", pos(w.write_pos)}, {"sync", pos(w.sync_pos)},
         {"crash", pos(w.crash_pos)}, {"read", pos(w.read_pos)}};
  if (w.write) j["write_event"] = describe(*w.write);
  if (w.sync) j["sync_event"] = describe(*w.sync);
  return j;
}

std::string line_ref(const std::optional<std::size_t>& pos, const std::optional<Event>& e,
                     const std::vector<std::size_t>& lines) {
  if (!pos) return "initial";
  std::string out = *pos < lines.size() ? "line " + std::to_string(lines[*pos]) : "#" + std::to_string(*pos);
  if (e) out += " `" + describe(*e) + "`";
  return out;
}

Strategy strategy_from(const std::string& name, const std::string& mark) {
  auto m = parse_mark_point(mark);
  if (!m) throw Error(ErrorCode::kUsage, "unknown mark point '" + mark + "'");
  return make_strategy(strategy_or_throw(name), *m);
}

int cmd_run(const std::string& path, const std::string& strategy_name, const std::string& mark, bool strict,
            bool as_json, bool do_shrink, std::ostream& out) {
  const TraceFile trace = load_trace(path);
  const Strategy strategy = strategy_from(strategy_name, mark);
  const CheckMode mode = strict ? CheckMode::kStrict : CheckMode::kPerByte;
  const RunReport r = run_trace(trace.schedule, strategy, mode);

  std::optional<Counterexample> minimized;
  if (do_shrink && !r.verdict.passed()) {
    minimized = shrink({path, trace.schedule, strategy.name, strategy.latest_dev_mark, r.verdict, false});
  }

  if (as_json) {
    json j{{"trace", path},
           {"strategy", to_string(strategy.name)},
           {"latest_dev_mark", to_string(strategy.latest_dev_mark)},
           {"crashed", r.crashed},
           {"verdict", to_string(r.verdict.status)}};
    json pages = json::array();
    for (const PageBytes& p : r.recovered) pages.push_back(p.str());
    j["recovered"] = pages;
    j["witness"] = r.verdict.witness ? witness_json(*r.verdict.witness, &trace.lines) : json(nullptr);
    if (minimized) j["minimized"] = format_trace(minimized->schedule);
    out << j.dump(2) << "\n";
  } else {
    out << "trace=" << path << " strategy=" << to_string(strategy.name);
    if (strategy.name == StrategyName::kLatestDev) out << " mark=" << to_string(strategy.latest_dev_mark);
    out << " verdict=" << to_string(r.verdict.status) << "\n";
    if (!r.crashed) out << "no crash\n";
    for (std::size_t p = 0; p < r.recovered.size(); ++p) {
      out << "recovered page=" << p << " bytes=\"" << r.recovered[p].str() << "\"\n";
    }
    if (const auto& w = r.verdict.witness) {
      out << "witness page=" << w->page.index << " byte=" << w->byte << " expected={" << w->expected
          << "} actual=" << w->actual << "\n";
      out << "  write " << line_ref(w->write_pos, w->write, trace.lines) << "\n";
      out << "  sync " << line_ref(w->sync_pos, w->sync, trace.lines) << "\n";
      out << "  crash " << line_ref(w->crash_pos, std::nullopt, trace.lines) << "\n";
      if (w->read_pos) out << "  read " << line_ref(w->read_pos, std::nullopt, trace.lines) << "\n";
    }
    if (minimized) {
      out << "minimized:\n" << indent(format_trace(minimized->schedule), "  ");
    }
  }
  return r.verdict.passed() ? 0 : 2;
}

struct SweepArgs {
  std::string world;
  std::optional<std::size_t> max_events;
  std::string strategies;
  std::optional<std::string> expect;
  std::optional<std::size_t> page_size;
  std::optional<std::size_t> page_count;
  std::string alphabet;
  std::string ranges;
  bool liberal = false;
  unsigned workers = 1;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::string records;
  std::string mark = "deliver";
  bool no_shrink = false;
  bool as_json = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  auto world = parse_world(a.world);
  if (!world) throw Error(ErrorCode::kUsage, "unknown world '" + a.world + "'");
  ExploreConfig cfg = world_config(*world);
  if (a.max_events) cfg.max_events = *a.max_events;
  if (a.page_size) cfg.page_size = *a.page_size;
  if (a.page_count) cfg.page_count = *a.page_count;
  if (!a.alphabet.empty()) cfg.alphabet = a.alphabet;
  if (!a.ranges.empty()) {
    auto r = parse_range_set(a.ranges);
    if (!r) throw Error(ErrorCode::kUsage, "unknown range set '" + a.ranges + "'");
    cfg.ranges = *r;
  }
  cfg.strict_sync_pattern = !a.liberal;
  cfg.workers = a.workers;
  auto mark = parse_mark_point(a.mark);
  if (!mark) throw Error(ErrorCode::kUsage, "unknown mark point '" + a.mark + "'");
  cfg.latest_dev_mark = *mark;
  if (!a.strategies.empty()) {
    cfg.strategies.clear();
    for (std::string_view s : split(a.strategies, ',')) cfg.strategies.push_back(strategy_or_throw(s));
  }
  std::vector<Expectation> expect = a.expect ? parse_expectations(*a.expect) : default_expectations(*world);
  if (!a.strategies.empty() && !a.expect) {
    std::erase_if(expect, [&](const Expectation& e) {
      return std::find(cfg.strategies.begin(), cfg.strategies.end(), e.strategy) == cfg.strategies.end();
    });
  }

  std::ofstream records;
  RecordSink sink;
  if (!a.records.empty()) {
    records.open(a.records);
    if (!records) throw Error(ErrorCode::kUsage, "cannot write " + a.records);
    sink = [&](const ScheduleRecord& r) {
      records << r.id << " " << to_string(r.strategy) << " " << (r.passed ? "PASS" : "VIOLATION");
      if (r.witness) records << " " << format_witness(*r.witness);
      records << "\n";
    };
  }

  SweepReport report;
  if (a.samples > 0) {
    std::uint64_t seed = 0;
    if (a.seed) {
      seed = *a.seed;
    } else if (const char* env = std::getenv("HETCRASH_SEED")) {
      seed = std::strtoull(env, nullptr, 10);
    } else {
      seed = std::random_device{}();
    }
    report = sample(cfg, a.samples, seed);
  } else {
    report = sweep(cfg, sink);
  }
  if (!a.no_shrink) {
    for (auto& t : report.tallies) {
      for (auto& c : t.counterexamples) c = shrink(c);
    }
  }

  bool all_met = true;
  for (const auto& e : expect) all_met = all_met && expectation_met(report, e);

  if (a.as_json) {
    json j{{"sampled", report.sampled},
           {"max_events", cfg.max_events},
           {"page_size", cfg.page_size},
           {"page_count", cfg.page_count},
           {"schedules", report.schedules},
           {"crash_schedules", report.crash_schedules},
           {"result", all_met ? "ok" : "mismatch"}};
    if (report.sampled) j["seed"] = report.seed;
    json tallies = json::array();
    for (const auto& t : report.tallies) {
      json cx = json::array();
      for (const auto& c : t.counterexamples) {
        cx.push_back({{"id", c.id},
                      {"trace", format_trace(c.schedule)},
                      {"witness", c.verdict.witness ? witness_json(*c.verdict.witness, nullptr) : json(nullptr)}});
      }
      tallies.push_back({{"strategy", to_string(t.strategy)},
                         {"crash_schedules", t.crash_schedules},
                         {"violations", t.violations},
                         {"counterexamples", cx}});
    }
    j["strategies"] = tallies;
    json cases = json::object();
    for (std::size_t i = 0; i < kProofCaseCount; ++i) {
      cases[std::string(to_string(static_cast<ProofCase>(i)))] = report.case_matches[i];
    }
    j["cases"] = cases;
    out << j.dump(2) << "\n";
  } else {
    out << format_sweep_report(report, expect);
  }
  return all_met ? 0 : 2;
}

int cmd_corpus(const std::string& dir, const std::string& mark, std::ostream& out) {
  auto m = parse_mark_point(mark);
  if (!m) throw Error(ErrorCode::kUsage, "unknown mark point '" + mark + "'");
  out << format_corpus_table(run_corpus(dir, *m));
  return 0;
}

int cmd_format(const std::string& path, std::ostream& out) {
  out << format_trace(load_trace(path).schedule);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crash-consistency explorer for a DRAM cache over NVM and disk"};
  app.require_subcommand(1);

  std::string trace_path, strategy = "versioned-mark", mark = "deliver";
  bool strict = false, as_json = false, do_shrink = false;
  auto* run = app.add_subcommand("run", "Run one trace and check the recovered pages");
  run->add_option("trace", trace_path, "Trace file")->required();
  run->add_option("-s,--strategy", strategy, "Recovery strategy");
  run->add_option("--latest-dev-mark", mark, "When latest-dev flips a page to disk: start, deliver, end");
  run->add_flag("--strict", strict, "Also require a point-in-time page image");
  run->add_flag("--json", as_json, "JSON output");
  run->add_flag("--shrink", do_shrink, "Print a minimized trace for a violation");

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "Enumerate every bounded schedule of a world");
  sw->add_option("-w,--world", sa.world, "a, b or c")->required();
  sw->add_option("-n,--max-events", sa.max_events, "Mutation events per schedule");
  sw->add_option("--strategies", sa.strategies, "Comma-separated strategy names");
  sw->add_option("--expect", sa.expect, "strategy=pass|fail,...");
  sw->add_option("--page-size", sa.page_size);
  sw->add_option("--page-count", sa.page_count);
  sw->add_option("--alphabet", sa.alphabet, "Write symbols");
  sw->add_option("--ranges", sa.ranges, "whole, unit+whole or all");
  sw->add_flag("--liberal", sa.liberal, "Allow sync writes right after plain writes");
  sw->add_option("-j,--workers", sa.workers, "Worker threads");
  sw->add_option("--samples", sa.samples, "Random schedules instead of enumeration");
  sw->add_option("--seed", sa.seed, "Sampling seed (default: $HETCRASH_SEED or random)");
  sw->add_option("--records", sa.records, "Write one line per checked crash schedule");
  sw->add_option("--latest-dev-mark", sa.mark);
  sw->add_flag("--no-shrink", sa.no_shrink, "Report counterexamples as found");
  sw->add_flag("--json", sa.as_json, "JSON output");

  std::string corpus_dir = default_corpus_dir(), corpus_mark = "deliver";
  auto* corpus = app.add_subcommand("corpus", "Tabulate every strategy over the scenario corpus");
  corpus->add_option("--dir", corpus_dir, "Directory of .trace files");
  corpus->add_option("--latest-dev-mark", corpus_mark);

  std::string format_path;
  auto* fmt = app.add_subcommand("format", "Print a trace in canonical form");
  fmt->add_option("trace", format_path)->required();

  std::vector<const char*> argv{"hetcrash"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(trace_path, strategy, mark, strict, as_json, do_shrink, out);
    if (*sw) return cmd_sweep(sa, out);
    if (*corpus) return cmd_corpus(corpus_dir, corpus_mark, out);
    if (*fmt) return cmd_format(format_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace hetcrash
