/*
 * explorer.cpp
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

#include "hetcrash/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <mutex>
#include <regex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace hetcrash {

std::optional<World> parse_world(std::string_view name) {
  if (name == "a" || name == "A") return World::kA;
  if (name == "b" || name == "B") return World::kB;
  if (name == "c" || name == "C") return World::kC;
  return std::nullopt;
}

char to_char(World w) {
  switch (w) {
    case World::kA: return 'a';
    case World::kB: return 'b';
    case World::kC: return 'c';
  }
  return '?';
}

std::string_view to_string(RangeSet r) {
  switch (r) {
    case RangeSet::kWhole: return "whole";
    case RangeSet::kUnitAndWhole: return "unit+whole";
    case RangeSet::kAll: return "all";
  }
  return "?";
}

std::optional<RangeSet> parse_range_set(std::string_view name) {
  if (name == "whole") return RangeSet::kWhole;
  if (name == "unit+whole" || name == "unit") return RangeSet::kUnitAndWhole;
  if (name == "all") return RangeSet::kAll;
  return std::nullopt;
}

ExploreConfig world_config(World w) {
  ExploreConfig cfg;
  switch (w) {
    case World::kA:
      cfg.max_events = 5;
      cfg.strategies = {StrategyName::kLatestDev, StrategyName::kNaiveDisk, StrategyName::kNaiveNvm};
      break;
    case World::kB:
      cfg.max_events = 6;
      cfg.allow_partial_sync_writes = true;
      cfg.strategies = {StrategyName::kWbMarkAtEnd, StrategyName::kLatestDev};
      break;
    case World::kC:
      cfg.max_events = 7;
      cfg.allow_partial_sync_writes = true;
      cfg.allow_wb_duration = true;
      cfg.strategies = {StrategyName::kVersionedMark, StrategyName::kWbMarkAtStart,
                        StrategyName::kWbMarkAtEnd};
      break;
  }
  return cfg;
}

void validate_config(const ExploreConfig& cfg) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::kUsage, why); };
  if (cfg.page_size < 1 || cfg.page_size > kMaxPageSize) bad("page_size must be in 1..4096");
  if (cfg.page_count < 1 || cfg.page_count > kMaxPageCount) bad("page_count must be in 1..1024");
  if (cfg.alphabet.empty()) bad("alphabet must be nonempty");
  for (std::size_t i = 0; i < cfg.alphabet.size(); ++i) {
    const char c = cfg.alphabet[i];
    if (c == kUnwritten || c == '"' || c == '\n' || c == '\r' || c == '\0') {
      bad(std::string("alphabet symbol not allowed: ") + c);
    }
    if (cfg.alphabet.find(c) != i) bad(std::string("duplicate alphabet symbol: ") + c);
  }
  if (cfg.workers < 1) bad("workers must be >= 1");
}

// ---------------------------------------------------------------------------
// Move generation

GenState::GenState(const ExploreConfig& cfg)
    : flags(cfg.page_count), phase(cfg.page_count, WbPhase::kIdle), plain_dirty(cfg.page_count) {}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> ranges_for(const ExploreConfig& cfg) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = cfg.page_size;
  switch (cfg.ranges) {
    case RangeSet::kWhole:
      out.emplace_back(0, n);
      break;
    case RangeSet::kUnitAndWhole:
      for (std::size_t o = 0; o < n; ++o) out.emplace_back(o, 1);
      if (n > 1) out.emplace_back(0, n);
      break;
    case RangeSet::kAll:
      for (std::size_t o = 0; o < n; ++o) {
        for (std::size_t l = 1; o + l <= n; ++l) out.emplace_back(o, l);
      }
      break;
  }
  return out;
}

}  // namespace

std::vector<Move> legal_moves(const ExploreConfig& cfg, const GenState& g) {
  std::vector<Move> out;
  const auto ranges = ranges_for(cfg);
  const std::size_t symbols = std::min(g.symbols_used + 1, cfg.alphabet.size());

  for (std::uint32_t p = 0; p < cfg.page_count; ++p) {
    const PageId page{p};
    for (const auto& [off, len] : ranges) {
      for (std::size_t s = 0; s < symbols; ++s) {
        out.push_back({Event::write(page, off, std::string(len, cfg.alphabet[s]))});
      }
    }
    if (cfg.allow_partial_sync_writes && !(cfg.strict_sync_pattern && g.plain_dirty[p])) {
      for (const auto& [off, len] : ranges) {
        for (std::size_t s = 0; s < symbols; ++s) {
          out.push_back({Event::sync_write(page, off, std::string(len, cfg.alphabet[s]))});
        }
      }
    }
  }
  out.push_back({Event::sync()});
  for (std::uint32_t p = 0; p < cfg.page_count; ++p) {
    const PageId page{p};
    if (!cfg.allow_wb_duration) {
      if (g.flags[p].dirty) {
        out.push_back({Event::wb_start(page), Event::wb_deliver(page), Event::wb_end(page)});
      }
      continue;
    }
    switch (g.phase[p]) {
      case WbPhase::kIdle:
        if (g.flags[p].dirty) out.push_back({Event::wb_start(page)});
        break;
      case WbPhase::kQueued:
        out.push_back({Event::wb_deliver(page)});
        break;
      case WbPhase::kDelivered:
        out.push_back({Event::wb_end(page)});
        break;
    }
  }
  return out;
}

void advance(GenState& g, const Move& m, const ExploreConfig& cfg) {
  for (const Event& e : m) {
    const std::size_t p = e.page.index;
    switch (e.kind) {
      case EventKind::kWrite:
      case EventKind::kSyncWrite: {
        g.flags[p].dirty = true;
        if (e.kind == EventKind::kWrite) g.plain_dirty[p] = true;
        const std::size_t s = cfg.alphabet.find(e.data.front());
        g.symbols_used = std::max(g.symbols_used, s + 1);
        break;
      }
      case EventKind::kSync:
        std::fill(g.plain_dirty.begin(), g.plain_dirty.end(), false);
        break;
      case EventKind::kWbStart:
        g.flags[p].dirty = false;
        g.flags[p].writeback = true;
        g.phase[p] = WbPhase::kQueued;
        break;
      case EventKind::kWbDeliver:
        g.phase[p] = WbPhase::kDelivered;
        break;
      case EventKind::kWbEnd:
        g.flags[p].writeback = false;
        g.phase[p] = WbPhase::kIdle;
        break;
      default:
        break;
    }
  }
  ++g.depth;
}

std::vector<Event> init_prefix(const ExploreConfig& cfg) {
  std::vector<Event> out;
  if (!cfg.seed_init) return out;
  for (std::uint32_t p = 0; p < cfg.page_count; ++p) {
    out.push_back(Event::init(PageId{p}, std::string(cfg.page_size, kUnwritten)));
  }
  return out;
}

namespace {

std::string path_id(const std::vector<std::size_t>& path, bool crashed) {
  std::string id = "m:";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) id += '.';
    id += std::to_string(path[i]);
  }
  if (crashed) id += "+crash";
  return id;
}

Schedule build_schedule(const ExploreConfig& cfg, const std::vector<Move>& moves, bool crashed) {
  Schedule s{cfg.geometry(), init_prefix(cfg)};
  for (const Move& m : moves) s.events.insert(s.events.end(), m.begin(), m.end());
  if (crashed) s.events.push_back(Event::crash());
  return s;
}

void enumerate_from(const ExploreConfig& cfg, const GenState& g, std::vector<Move>& path,
                    const std::function<void(const Schedule&)>& visit) {
  visit(build_schedule(cfg, path, false));
  visit(build_schedule(cfg, path, true));
  if (g.depth >= cfg.max_events) return;
  for (const Move& m : legal_moves(cfg, g)) {
    GenState next = g;
    advance(next, m, cfg);
    path.push_back(m);
    enumerate_from(cfg, next, path, visit);
    path.pop_back();
  }
}

}  // namespace

void enumerate(const ExploreConfig& cfg, const std::function<void(const Schedule&)>& visit) {
  validate_config(cfg);
  std::vector<Move> path;
  enumerate_from(cfg, GenState(cfg), path, visit);
}

std::vector<Schedule> enumerate_all(const ExploreConfig& cfg) {
  std::vector<Schedule> out;
  enumerate(cfg, [&](const Schedule& s) { out.push_back(s); });
  return out;
}

Schedule schedule_from_id(const ExploreConfig& cfg, std::string_view id) {
  auto bad = [&] { throw Error(ErrorCode::kUsage, "bad schedule id: " + std::string(id)); };
  if (id.substr(0, 2) != "m:") bad();
  id.remove_prefix(2);
  bool crashed = false;
  if (const auto plus = id.find('+'); plus != std::string_view::npos) {
    if (id.substr(plus) != "+crash") bad();
    crashed = true;
    id = id.substr(0, plus);
  }
  GenState g(cfg);
  std::vector<Move> moves;
  while (!id.empty()) {
    const auto dot = id.find('.');
    const std::string_view part = id.substr(0, dot);
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), index);
    if (ec != std::errc() || ptr != part.data() + part.size()) bad();
    if (g.depth >= cfg.max_events) bad();
    auto legal = legal_moves(cfg, g);
    if (index >= legal.size()) bad();
    advance(g, legal[index], cfg);
    moves.push_back(std::move(legal[index]));
    if (dot == std::string_view::npos) break;
    id.remove_prefix(dot + 1);
  }
  return build_schedule(cfg, moves, crashed);
}

Verdict run_one(const Schedule& s, const Strategy& strategy, CheckMode mode) {
  RunResult run = run_to_crash(s, strategy.hooks);
  if (!run.history.crash_pos()) return Verdict::pass();
  for (std::uint32_t p = 0; p < s.geometry.page_count; ++p) {
    const PageId page{p};
    PageBytes recovered = recover(strategy, run.state.nvm, run.state.disk, page, s.geometry);
    Verdict v = check(run.history, recovered, page, mode);
    if (!v.passed()) return v;
  }
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Proof-case tagging

std::string_view to_string(ProofCase c) {
  static constexpr std::string_view names[kProofCaseCount] = {
      "1.1", "1.2", "1.3", "2.1", "2.2", "2.3", "2.4", "3.1", "3.2", "3.3", "3.4", "3.5",
  };
  return names[static_cast<std::size_t>(c)];
}

std::string shape_of(const Schedule& s) {
  std::string out;
  for (const Event& e : s.events) {
    switch (e.kind) {
      case EventKind::kWrite: out += 'w'; break;
      case EventKind::kSync: out += 's'; break;
      case EventKind::kSyncWrite: out += 'a'; break;
      case EventKind::kWbStart: out += '<'; break;
      case EventKind::kWbDeliver: out += '|'; break;
      case EventKind::kWbEnd: out += '>'; break;
      case EventKind::kCrash: return out;
      default: break;
    }
  }
  return out;
}

namespace {

struct CasePattern {
  ProofCase id;
  std::regex suffix;
};

const std::vector<CasePattern>& case_patterns() {
  // An atomic write-back is an adjacent "<|>".
  static const std::vector<CasePattern> patterns = [] {
    std::vector<CasePattern> p;
    auto add = [&](ProofCase c, const char* re) { p.push_back({c, std::regex(re)}); };
    add(ProofCase::k1_1, R"(w<\|>s$)");
    add(ProofCase::k1_2, R"(ws<\|>$)");
    add(ProofCase::k1_3, R"(ws$)");
    add(ProofCase::k2_1, R"(wsa+$)");
    add(ProofCase::k2_2, R"(w<\|>sa+$)");
    add(ProofCase::k2_3, R"(ws<\|>a+$)");
    add(ProofCase::k2_4, R"(a<\|>a+$)");
    add(ProofCase::k3_2, R"(a<a*$)");
    add(ProofCase::k3_3, R"(a<a+\|a*$)");
    add(ProofCase::k3_4, R"(a<a+\|a*>a*$)");
    add(ProofCase::k3_5, R"(<(\|w|w\|)>s$)");
    return p;
  }();
  return patterns;
}

}  // namespace

std::uint16_t tag_shape(const std::string& shape) {
  std::uint16_t mask = 0;
  for (const auto& p : case_patterns()) {
    if (std::regex_search(shape, p.suffix)) mask |= std::uint16_t(1u << static_cast<unsigned>(p.id));
  }
  // Crash before the next wb^s: a synced write last, no write-back in flight.
  const auto open = shape.rfind('<');
  const bool in_flight = open != std::string::npos && shape.find('>', open) == std::string::npos;
  if (!shape.empty() && shape.back() == 'a' && !in_flight) {
    mask |= std::uint16_t(1u << static_cast<unsigned>(ProofCase::k3_1));
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Shrinking

namespace {

std::optional<Verdict> violation_of(const Schedule& s, const Strategy& strategy) {
  if (!is_valid(s)) return std::nullopt;
  try {
    Verdict v = run_one(s, strategy);
    if (!v.passed()) return v;
  } catch (const Error&) {
  }
  return std::nullopt;
}

// Candidate reductions in a fixed order, smallest-first.
std::vector<Schedule> reductions(const Schedule& s) {
  std::vector<Schedule> out;
  const auto& ev = s.events;
  auto without = [&](std::vector<std::size_t> drop) {
    Schedule c{s.geometry, {}};
    for (std::size_t i = 0; i < ev.size(); ++i) {
      if (std::find(drop.begin(), drop.end(), i) == drop.end()) c.events.push_back(ev[i]);
    }
    out.push_back(std::move(c));
  };
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i].kind == EventKind::kCrash) continue;
    if (ev[i].kind == EventKind::kWbStart) {
      std::vector<std::size_t> drop{i};
      for (std::size_t j = i + 1; j < ev.size() && drop.size() < 3; ++j) {
        if (ev[j].page == ev[i].page &&
            (ev[j].kind == EventKind::kWbDeliver || ev[j].kind == EventKind::kWbEnd)) {
          drop.push_back(j);
        }
      }
      without(drop);
    }
    without({i});
  }
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const Event& e = ev[i];
    if ((e.kind != EventKind::kWrite && e.kind != EventKind::kSyncWrite) || e.len() < 2) continue;
    Schedule head = s;
    head.events[i].data.pop_back();
    out.push_back(std::move(head));
    Schedule tail = s;
    tail.events[i].data.erase(0, 1);
    tail.events[i].off += 1;
    out.push_back(std::move(tail));
  }
  return out;
}

}  // namespace

Counterexample shrink(const Counterexample& c) {
  const Strategy strategy = make_strategy(c.strategy, c.latest_dev_mark);
  auto current = violation_of(c.schedule, strategy);
  if (!current) throw Error(ErrorCode::kUsage, "counterexample does not reproduce");

  Counterexample out = c;
  out.verdict = *current;
  bool progress = true;
  while (progress) {
    progress = false;
    for (Schedule& candidate : reductions(out.schedule)) {
      if (auto v = violation_of(candidate, strategy)) {
        out.schedule = std::move(candidate);
        out.verdict = *v;
        progress = true;
        break;
      }
    }
  }
  out.minimized = true;
  return out;
}

// ---------------------------------------------------------------------------
// Sweep engine. Walks the same move tree as enumerate() but advances one
// SystemState per strategy and a per-byte oracle incrementally, so each node
// costs one step instead of a full replay.

const StrategyTally* SweepReport::tally(StrategyName s) const {
  for (const auto& t : tallies) {
    if (t.strategy == s) return &t;
  }
  return nullptr;
}

namespace {

// Per-byte acceptable set maintained along the path; equivalent to
// acceptable_bytes() on the path's history.
struct ByteFloor {
  ByteSet accept;
  char last = kUnwritten;
};

struct Frame {
  std::vector<SystemState> states;
  std::vector<ByteFloor> floors;  // page-major
  GenState gen;
  std::string shape;

  explicit Frame(const ExploreConfig& cfg) : gen(cfg) {}
};

void oracle_apply(std::vector<ByteFloor>& floors, const Event& e, std::size_t page_size) {
  switch (e.kind) {
    case EventKind::kInit:
    case EventKind::kSyncWrite:
    case EventKind::kWrite: {
      const bool synced = e.kind != EventKind::kWrite;
      for (std::size_t i = 0; i < e.len(); ++i) {
        ByteFloor& f = floors[e.page.index * page_size + e.off + i];
        if (synced) f.accept.clear();
        f.accept.insert(e.data[i]);
        f.last = e.data[i];
      }
      break;
    }
    case EventKind::kSync:
      for (ByteFloor& f : floors) {
        f.accept.clear();
        f.accept.insert(f.last);
      }
      break;
    default:
      break;
  }
}

char shape_char(EventKind k) {
  switch (k) {
    case EventKind::kWrite: return 'w';
    case EventKind::kSync: return 's';
    case EventKind::kSyncWrite: return 'a';
    case EventKind::kWbStart: return '<';
    case EventKind::kWbDeliver: return '|';
    case EventKind::kWbEnd: return '>';
    default: return 0;
  }
}

struct TaskResult {
  std::uint64_t schedules = 0;
  std::uint64_t crash_schedules = 0;
  std::vector<std::uint64_t> violations;
  std::vector<std::vector<Counterexample>> counterexamples;
  std::array<std::uint64_t, kProofCaseCount> case_matches{};
  std::vector<ScheduleRecord> records;
};

class Explorer {
 public:
  Explorer(const ExploreConfig& cfg, bool keep_records)
      : cfg_(cfg), keep_records_(keep_records) {
    for (StrategyName s : cfg.strategies) strategies_.push_back(make_strategy(s, cfg.latest_dev_mark));
  }

  Frame root() const {
    Frame f(cfg_);
    f.states.assign(strategies_.size(), SystemState(cfg_.geometry()));
    f.floors.assign(cfg_.page_count * cfg_.page_size, ByteFloor{});
    for (ByteFloor& b : f.floors) b.accept.insert(kUnwritten);
    for (const Event& e : init_prefix(cfg_)) apply_event(f, e);
    return f;
  }

  TaskResult fresh_result() const {
    TaskResult r;
    r.violations.assign(strategies_.size(), 0);
    r.counterexamples.resize(strategies_.size());
    return r;
  }

  void evaluate(const Frame& f, const std::vector<Move>& path_moves,
                const std::vector<std::size_t>& path, TaskResult& out) {
    out.schedules += 2;
    out.crash_schedules += 1;

    auto hit = tags_.find(f.shape);
    if (hit == tags_.end()) hit = tags_.emplace(f.shape, tag_shape(f.shape)).first;
    for (std::size_t c = 0; c < kProofCaseCount; ++c) {
      if (hit->second & (1u << c)) ++out.case_matches[c];
    }

    const Geometry g = cfg_.geometry();
    for (std::size_t k = 0; k < strategies_.size(); ++k) {
      const SystemState& st = f.states[k];
      bool passed = true;
      for (std::uint32_t p = 0; p < g.page_count && passed; ++p) {
        const PageBytes rec = recover(strategies_[k], st.nvm, st.disk, PageId{p}, g);
        const ByteFloor* floors = &f.floors[p * g.page_size];
        for (std::size_t b = 0; b < g.page_size; ++b) {
          if (!floors[b].accept.contains(rec[b])) {
            passed = false;
            break;
          }
        }
      }
      if (passed) {
        if (keep_records_) out.records.push_back({path_id(path, true), strategies_[k].name, true, {}});
        continue;
      }
      ++out.violations[k];
      const bool keep_cx = out.counterexamples[k].size() < cfg_.max_counterexamples;
      if (!keep_cx && !keep_records_) continue;

      // Witnesses come from a full replay, which also cross-checks the incremental verdict.
      Counterexample c;
      c.id = path_id(path, true);
      c.schedule = build_schedule(cfg_, path_moves, true);
      c.strategy = strategies_[k].name;
      c.latest_dev_mark = cfg_.latest_dev_mark;
      c.verdict = run_one(c.schedule, strategies_[k]);
      if (c.verdict.passed()) {
        throw std::logic_error("incremental and replayed verdicts disagree on " + c.id);
      }
      if (keep_records_) out.records.push_back({c.id, c.strategy, false, c.verdict.witness});
      if (keep_cx) out.counterexamples[k].push_back(std::move(c));
    }
  }

  void explore(std::vector<Frame>& frames, std::vector<Move>& path_moves,
               std::vector<std::size_t>& path, TaskResult& out) {
    const std::size_t d = path.size();
    evaluate(frames[d], path_moves, path, out);
    if (frames[d].gen.depth >= cfg_.max_events) return;
    const auto moves = legal_moves(cfg_, frames[d].gen);
    for (std::size_t i = 0; i < moves.size(); ++i) {
      descend(frames, d, moves[i]);
      path.push_back(i);
      path_moves.push_back(moves[i]);
      explore(frames, path_moves, path, out);
      path.pop_back();
      path_moves.pop_back();
    }
  }

  void descend(std::vector<Frame>& frames, std::size_t d, const Move& m) {
    if (frames.size() <= d + 1) frames.push_back(frames[d]);
    Frame& next = frames[d + 1];
    const Frame& cur = frames[d];
    for (std::size_t k = 0; k < cur.states.size(); ++k) next.states[k] = cur.states[k];
    next.floors = cur.floors;
    next.gen = cur.gen;
    next.shape = cur.shape;
    for (const Event& e : m) apply_event(next, e);
    advance(next.gen, m, cfg_);
  }

 private:
  void apply_event(Frame& f, const Event& e) const {
    for (std::size_t k = 0; k < strategies_.size(); ++k) apply(f.states[k], e, strategies_[k].hooks);
    oracle_apply(f.floors, e, cfg_.page_size);
    if (char c = shape_char(e.kind)) f.shape += c;
  }

  const ExploreConfig& cfg_;
  bool keep_records_;
  std::vector<Strategy> strategies_;
  std::unordered_map<std::string, std::uint16_t> tags_;
};

void merge_into(SweepReport& report, TaskResult& r, std::size_t limit, const RecordSink& sink) {
  report.schedules += r.schedules;
  report.crash_schedules += r.crash_schedules;
  for (std::size_t k = 0; k < report.tallies.size(); ++k) {
    StrategyTally& t = report.tallies[k];
    t.crash_schedules += r.crash_schedules;
    t.violations += r.violations[k];
    for (auto& c : r.counterexamples[k]) {
      if (t.counterexamples.size() < limit) t.counterexamples.push_back(std::move(c));
    }
  }
  for (std::size_t c = 0; c < kProofCaseCount; ++c) report.case_matches[c] += r.case_matches[c];
  if (sink) {
    for (const auto& rec : r.records) sink(rec);
  }
}

}  // namespace

SweepReport sweep(const ExploreConfig& cfg, const RecordSink& sink) {
  validate_config(cfg);
  SweepReport report;
  report.config = cfg;
  for (StrategyName s : cfg.strategies) report.tallies.push_back({s, 0, 0, {}});

  const bool keep_records = static_cast<bool>(sink);
  Explorer root_explorer(cfg, keep_records);
  const Frame root = root_explorer.root();

  TaskResult root_result = root_explorer.fresh_result();
  root_explorer.evaluate(root, {}, {}, root_result);
  merge_into(report, root_result, cfg.max_counterexamples, sink);
  if (cfg.max_events == 0) return report;

  const auto top = legal_moves(cfg, root.gen);
  std::vector<TaskResult> results(top.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    Explorer ex(cfg, keep_records);
    std::vector<Frame> frames{root};
    for (std::size_t i = next++; i < top.size(); i = next++) {
      try {
        TaskResult r = ex.fresh_result();
        std::vector<Move> path_moves{top[i]};
        std::vector<std::size_t> path{i};
        ex.descend(frames, 0, top[i]);
        ex.explore(frames, path_moves, path, r);
        results[i] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(top.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& r : results) merge_into(report, r, cfg.max_counterexamples, sink);
  return report;
}

Schedule random_schedule(const ExploreConfig& cfg, std::mt19937_64& rng, double crash_p) {
  validate_config(cfg);
  std::uniform_int_distribution<std::size_t> length(0, cfg.max_events);
  const std::size_t n = length(rng);
  GenState g(cfg);
  std::vector<Move> moves;
  for (std::size_t i = 0; i < n; ++i) {
    auto legal = legal_moves(cfg, g);
    std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
    Move m = std::move(legal[pick(rng)]);
    advance(g, m, cfg);
    moves.push_back(std::move(m));
  }
  std::bernoulli_distribution crash(crash_p);
  return build_schedule(cfg, moves, crash(rng));
}

SweepReport sample(const ExploreConfig& cfg, std::uint64_t count, std::uint64_t seed) {
  validate_config(cfg);
  SweepReport report;
  report.config = cfg;
  report.sampled = true;
  report.seed = seed;
  std::vector<Strategy> strategies;
  for (StrategyName s : cfg.strategies) {
    report.tallies.push_back({s, 0, 0, {}});
    strategies.push_back(make_strategy(s, cfg.latest_dev_mark));
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    Schedule s = random_schedule(cfg, rng, 1.0);
    ++report.schedules;
    ++report.crash_schedules;
    const std::uint16_t tags = tag_cases(s);
    for (std::size_t c = 0; c < kProofCaseCount; ++c) {
      if (tags & (1u << c)) ++report.case_matches[c];
    }
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      StrategyTally& t = report.tallies[k];
      ++t.crash_schedules;
      Verdict v = run_one(s, strategies[k]);
      if (v.passed()) continue;
      ++t.violations;
      if (t.counterexamples.size() < cfg.max_counterexamples) {
        t.counterexamples.push_back({"r:" + std::to_string(seed) + ":" + std::to_string(i), s,
                                     strategies[k].name, cfg.latest_dev_mark, v, false});
      }
    }
  }
  return report;
}

}  // namespace hetcrash
