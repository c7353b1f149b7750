/*
 * model.hpp
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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetcrash/error.hpp"

namespace hetcrash {

/// Byte value of a page position that no write has touched yet.
inline constexpr char kUnwritten = '-';

inline constexpr std::size_t kMaxPageSize = 4096;
inline constexpr std::size_t kMaxPageCount = 1024;

struct Geometry {
  std::size_t page_size = 6;
  std::size_t page_count = 1;

  bool operator==(const Geometry&) const = default;
};

/// Page number within the single simulated file.
struct PageId {
  std::uint32_t index = 0;

  constexpr PageId() = default;
  constexpr explicit PageId(std::uint32_t i) : index(i) {}

  auto operator<=>(const PageId&) const = default;
};

/// Fixed-length content of one page. The length never changes after
/// construction; all mutation goes through overlay().
class PageBytes {
 public:
  PageBytes() = default;
  explicit PageBytes(std::string bytes) : bytes_(std::move(bytes)) {}

  static PageBytes unwritten(std::size_t page_size) {
    return PageBytes(std::string(page_size, kUnwritten));
  }

  std::size_t size() const noexcept { return bytes_.size(); }
  char operator[](std::size_t i) const { return bytes_[i]; }
  const std::string& str() const noexcept { return bytes_; }
  std::string_view view() const noexcept { return bytes_; }

  /// In-place variant of overlay(); used by the simulator's hot path.
  void overlay_in_place(std::string_view data, std::size_t off);

  bool operator==(const PageBytes&) const = default;

 private:
  std::string bytes_;
};

/// Returns `base` with [off, off + data.size()) replaced by `data`.
/// Throws Error{kBounds} if the range leaves the page.
PageBytes overlay(const PageBytes& base, std::string_view data, std::size_t off);

enum class EventKind : std::uint8_t {
  kInit,
  kWrite,
  kSync,
  kSyncWrite,
  kWbStart,
  kWbDeliver,
  kWbEnd,
  kCrash,
  kRead,
};

std::string_view to_string(EventKind kind);

/// True for events that change simulator state (everything except READ).
bool is_mutation(EventKind kind);
bool carries_data(EventKind kind);
bool targets_page(EventKind kind);

struct Event {
  EventKind kind = EventKind::kSync;
  PageId page{};
  std::size_t off = 0;
  std::string data;

  std::size_t len() const noexcept { return data.size(); }

  static Event init(PageId p, std::string bytes) {
    return {EventKind::kInit, p, 0, std::move(bytes)};
  }
  static Event write(PageId p, std::size_t off, std::string bytes) {
    return {EventKind::kWrite, p, off, std::move(bytes)};
  }
  static Event sync() { return {EventKind::kSync, PageId{}, 0, {}}; }
  static Event sync_write(PageId p, std::size_t off, std::string bytes) {
    return {EventKind::kSyncWrite, p, off, std::move(bytes)};
  }
  static Event wb_start(PageId p) { return {EventKind::kWbStart, p, 0, {}}; }
  static Event wb_deliver(PageId p) { return {EventKind::kWbDeliver, p, 0, {}}; }
  static Event wb_end(PageId p) { return {EventKind::kWbEnd, p, 0, {}}; }
  static Event crash() { return {EventKind::kCrash, PageId{}, 0, {}}; }
  static Event read(PageId p) { return {EventKind::kRead, p, 0, {}}; }

  bool operator==(const Event&) const = default;
  auto operator<=>(const Event&) const = default;
};

/// Short human-readable form, e.g. `syncw 0 3 "xyz"`. Matches the trace grammar.
std::string describe(const Event& e);

struct PageFlags {
  bool dirty = false;
  bool writeback = false;

  bool operator==(const PageFlags&) const = default;
};

/// A finite event sequence with at most one CRASH.
struct Schedule {
  Geometry geometry;
  std::vector<Event> events;

  std::optional<std::size_t> crash_pos() const;

  bool operator==(const Schedule&) const = default;
  auto operator<=>(const Schedule& o) const { return events <=> o.events; }
};

/// One broken Schedule/Event invariant.
struct ScheduleViolation {
  std::size_t pos = 0;
  std::string rule;

  bool operator==(const ScheduleViolation&) const = default;
};

/// Every invariant violation of `s`, in event order. Empty means valid.
std::vector<ScheduleViolation> validate_schedule(const Schedule& s);

inline bool is_valid(const Schedule& s) { return validate_schedule(s).empty(); }

/// Count of mutation events other than INIT and CRASH; an adjacent
/// wb_start/wb_deliver/wb_end triple on one page counts once.
std::size_t mutation_count(const Schedule& s);

}  // namespace hetcrash
