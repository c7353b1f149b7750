/*
 * model.cpp
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

#include "hetcrash/model.hpp"

#include <algorithm>

namespace hetcrash {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBounds: return "BOUNDS";
    case ErrorCode::kInvalidTrace: return "INVALID_TRACE";
    case ErrorCode::kCorruptState: return "CORRUPT_STATE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kUsage: return "USAGE";
  }
  return "UNKNOWN";
}

void PageBytes::overlay_in_place(std::string_view data, std::size_t off) {
  if (off > bytes_.size() || data.size() > bytes_.size() - off) {
    throw Error(ErrorCode::kBounds, "overlay of " + std::to_string(data.size()) + " bytes at offset " +
                                        std::to_string(off) + " exceeds page size " +
                                        std::to_string(bytes_.size()));
  }
  std::copy(data.begin(), data.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(off));
}

PageBytes overlay(const PageBytes& base, std::string_view data, std::size_t off) {
  PageBytes out = base;
  out.overlay_in_place(data, off);
  return out;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kInit: return "init";
    case EventKind::kWrite: return "write";
    case EventKind::kSync: return "sync";
    case EventKind::kSyncWrite: return "syncw";
    case EventKind::kWbStart: return "wb_start";
    case EventKind::kWbDeliver: return "wb_deliver";
    case EventKind::kWbEnd: return "wb_end";
    case EventKind::kCrash: return "crash";
    case EventKind::kRead: return "read";
  }
  return "?";
}

bool is_mutation(EventKind kind) { return kind != EventKind::kRead; }

bool carries_data(EventKind kind) {
  return kind == EventKind::kInit || kind == EventKind::kWrite || kind == EventKind::kSyncWrite;
}

bool targets_page(EventKind kind) {
  return kind != EventKind::kSync && kind != EventKind::kCrash;
}

std::string describe(const Event& e) {
  std::string out(to_string(e.kind));
  if (targets_page(e.kind)) out += " " + std::to_string(e.page.index);
  switch (e.kind) {
    case EventKind::kWrite:
    case EventKind::kSyncWrite:
      out += " " + std::to_string(e.off) + " \"" + e.data + "\"";
      break;
    case EventKind::kInit:
      out += " \"" + e.data + "\"";
      break;
    default:
      break;
  }
  return out;
}

std::optional<std::size_t> Schedule::crash_pos() const {
  auto it = std::find_if(events.begin(), events.end(),
                         [](const Event& e) { return e.kind == EventKind::kCrash; });
  if (it == events.end()) return std::nullopt;
  return static_cast<std::size_t>(it - events.begin());
}

namespace {

enum class Phase : std::uint8_t { kIdle, kStarted, kDelivered };

struct PageTrack {
  PageFlags flags;
  Phase phase = Phase::kIdle;
  bool initialized = false;
};

}  // namespace

std::vector<ScheduleViolation> validate_schedule(const Schedule& s) {
  std::vector<ScheduleViolation> out;
  const Geometry& g = s.geometry;
  auto flag = [&](std::size_t pos, const char* rule) { out.push_back({pos, rule}); };

  if (g.page_size < 1 || g.page_size > kMaxPageSize) flag(0, "bad page size");
  if (g.page_count < 1 || g.page_count > kMaxPageCount) flag(0, "bad page count");
  if (!out.empty()) return out;

  std::vector<PageTrack> pages(g.page_count);
  bool crashed = false;
  bool past_init_prefix = false;

  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const Event& e = s.events[i];

    if (e.kind == EventKind::kCrash) {
      if (crashed) flag(i, "multiple crash");
      crashed = true;
    } else if (crashed && e.kind != EventKind::kRead) {
      flag(i, "event after crash");
    }
    if (e.kind != EventKind::kInit) past_init_prefix = true;

    if (!carries_data(e.kind) && (!e.data.empty() || e.off != 0)) flag(i, "unexpected payload");
    if (carries_data(e.kind) && (e.off > g.page_size || e.len() > g.page_size - e.off)) {
      flag(i, "write out of bounds");
    }
    if ((e.kind == EventKind::kWrite || e.kind == EventKind::kSyncWrite) && e.len() == 0) {
      flag(i, "empty write");
    }

    if (!targets_page(e.kind)) continue;
    if (e.page.index >= g.page_count) {
      flag(i, "page out of range");
      continue;
    }
    PageTrack& t = pages[e.page.index];

    switch (e.kind) {
      case EventKind::kInit:
        if (e.off != 0 || e.len() != g.page_size) flag(i, "init not whole page");
        if (t.initialized) flag(i, "duplicate init");
        if (past_init_prefix) flag(i, "init after use");
        t.initialized = true;
        break;
      case EventKind::kWrite:
      case EventKind::kSyncWrite:
        t.flags.dirty = true;
        break;
      case EventKind::kWbStart:
        if (t.phase != Phase::kIdle) {
          flag(i, "nested writeback");
          break;
        }
        if (!t.flags.dirty) flag(i, "wb_start on clean page");
        t.flags.dirty = false;
        t.flags.writeback = true;
        t.phase = Phase::kStarted;
        break;
      case EventKind::kWbDeliver:
        if (t.phase == Phase::kIdle) {
          flag(i, "unmatched wb_deliver");
        } else if (t.phase == Phase::kDelivered) {
          flag(i, "duplicate wb_deliver");
        } else {
          t.phase = Phase::kDelivered;
        }
        break;
      case EventKind::kWbEnd:
        if (t.phase == Phase::kIdle) {
          flag(i, "unmatched wb_end");
          break;
        }
        if (t.phase == Phase::kStarted) flag(i, "wb_end before wb_deliver");
        t.flags.writeback = false;
        t.phase = Phase::kIdle;
        break;
      default:
        break;
    }
  }
  return out;
}

std::size_t mutation_count(const Schedule& s) {
  std::size_t n = 0;
  const auto& ev = s.events;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const EventKind k = ev[i].kind;
    if (k == EventKind::kInit || k == EventKind::kCrash || k == EventKind::kRead) continue;
    if (k == EventKind::kWbStart && i + 2 < ev.size() && ev[i + 1].kind == EventKind::kWbDeliver &&
        ev[i + 2].kind == EventKind::kWbEnd && ev[i + 1].page == ev[i].page &&
        ev[i + 2].page == ev[i].page) {
      i += 2;
    }
    ++n;
  }
  return n;
}

}  // namespace hetcrash
