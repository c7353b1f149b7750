/*
 * oracle.cpp
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

#include "hetcrash/oracle.hpp"

#include <algorithm>

namespace hetcrash {

History History::from_schedule(const Schedule& s) {
  History h(s.geometry);
  for (std::size_t i = 0; i < s.events.size(); ++i) h.record(s.events[i], i);
  return h;
}

void History::record(const Event& e, std::size_t position) {
  if (crash_pos_) {
    if (e.kind == EventKind::kRead) reads_.push_back({position, e, 0});
    return;
  }
  HistoryEntry entry{position, e, 0};
  if (carries_data(e.kind)) entry.stamp = next_stamp_++;
  if (e.kind == EventKind::kCrash) crash_pos_ = position;
  entries_.push_back(std::move(entry));
}

std::string ByteSet::to_string() const {
  std::string out;
  for (std::size_t c = 0; c < 256; ++c) {
    if (bits_.test(c)) out.push_back(static_cast<char>(c));
  }
  return out;
}

std::string_view to_string(VerdictStatus s) {
  return s == VerdictStatus::kPass ? "PASS" : "VIOLATION";
}

namespace {

bool covers(const Event& e, PageId p, std::size_t b) {
  return carries_data(e.kind) && e.page == p && b >= e.off && b < e.off + e.len();
}

// Entry index of the floor write for (p, b), or none for the implicit initial content.
std::optional<std::size_t> floor_entry(const History& h, PageId p, std::size_t b) {
  const auto& entries = h.entries();
  std::optional<std::size_t> last_sync;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].event.kind == EventKind::kSync) last_sync = i;
  }
  std::optional<std::size_t> floor;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Event& e = entries[i].event;
    if (!covers(e, p, b)) continue;
    const bool self_synced = e.kind == EventKind::kSyncWrite || e.kind == EventKind::kInit;
    if (self_synced || (last_sync && *last_sync > i)) floor = i;
  }
  return floor;
}

std::optional<std::size_t> first_sync_after(const History& h, std::size_t entry) {
  const auto& entries = h.entries();
  const Event& w = entries[entry].event;
  if (w.kind == EventKind::kSyncWrite || w.kind == EventKind::kInit) return entry;
  for (std::size_t i = entry + 1; i < entries.size(); ++i) {
    if (entries[i].event.kind == EventKind::kSync) return i;
  }
  return std::nullopt;
}

Witness make_witness(const History& h, PageId p, std::size_t b, const ByteSet& expected,
                     char actual) {
  Witness w;
  w.page = p;
  w.byte = b;
  w.expected = expected.to_string();
  w.actual = actual;
  w.crash_pos = h.crash_pos();
  if (auto f = floor_entry(h, p, b)) {
    const auto& entries = h.entries();
    w.write_pos = entries[*f].position;
    w.write = entries[*f].event;
    if (auto s = first_sync_after(h, *f)) {
      w.sync_pos = entries[*s].position;
      w.sync = entries[*s].event;
    }
  }
  for (const auto& r : h.post_crash_reads()) {
    if (r.event.page == p) {
      w.read_pos = r.position;
      break;
    }
  }
  return w;
}

}  // namespace

std::uint32_t synced_floor(const History& h, PageId p, std::size_t b) {
  auto f = floor_entry(h, p, b);
  return f ? h.entries()[*f].stamp : kInitialStamp;
}

ByteSet acceptable_bytes(const History& h, PageId p, std::size_t b) {
  const std::uint32_t floor = synced_floor(h, p, b);
  ByteSet out;
  if (floor == kInitialStamp) out.insert(kUnwritten);
  for (const auto& entry : h.entries()) {
    if (entry.stamp >= floor && covers(entry.event, p, b)) {
      out.insert(entry.event.data[b - entry.event.off]);
    }
  }
  return out;
}

PageBytes replay_full(const History& h, PageId p) {
  PageBytes page = PageBytes::unwritten(h.geometry().page_size);
  for (const auto& entry : h.entries()) {
    const Event& e = entry.event;
    if (carries_data(e.kind) && e.page == p) page.overlay_in_place(e.data, e.off);
  }
  return page;
}

Verdict check(const History& h, const PageBytes& recovered, PageId p, CheckMode mode) {
  const std::size_t page_size = h.geometry().page_size;
  if (recovered.size() != page_size) {
    throw Error(ErrorCode::kCorruptState, "recovered page has " + std::to_string(recovered.size()) +
                                              " bytes, expected " + std::to_string(page_size));
  }
  for (std::size_t b = 0; b < page_size; ++b) {
    ByteSet ok = acceptable_bytes(h, p, b);
    if (!ok.contains(recovered[b])) {
      return {VerdictStatus::kViolation, make_witness(h, p, b, ok, recovered[b])};
    }
  }
  if (mode == CheckMode::kPerByte) return Verdict::pass();

  // Strict: some cache image at or after the newest synced write must match.
  std::optional<std::size_t> newest;
  for (std::size_t b = 0; b < page_size; ++b) {
    auto f = floor_entry(h, p, b);
    if (f && (!newest || *f > *newest)) newest = f;
  }
  PageBytes image = PageBytes::unwritten(page_size);
  bool eligible = !newest.has_value();
  if (eligible && image == recovered) return Verdict::pass();
  const auto& entries = h.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Event& e = entries[i].event;
    if (carries_data(e.kind) && e.page == p) image.overlay_in_place(e.data, e.off);
    if (newest && i == *newest) eligible = true;
    if (eligible && image == recovered) return Verdict::pass();
  }
  PageBytes final_image = replay_full(h, p);
  std::size_t b = 0;
  while (b + 1 < page_size && final_image[b] == recovered[b]) ++b;
  ByteSet expected;
  expected.insert(final_image[b]);
  return {VerdictStatus::kViolation, make_witness(h, p, b, expected, recovered[b])};
}

std::string format_witness(const Witness& w) {
  auto pos = [](const std::optional<std::size_t>& p) {
    return p ? "#" + std::to_string(*p) : std::string("-");
  };
  std::string out = "page=" + std::to_string(w.page.index) + " byte=" + std::to_string(w.byte) +
                    " expected={" + w.expected + "} actual=" + std::string(1, w.actual) +
                    " write=" + pos(w.write_pos) + " sync=" + pos(w.sync_pos) +
                    " crash=" + pos(w.crash_pos) + " read=" + pos(w.read_pos);
  return out;
}

}  // namespace hetcrash
