/*
 * history.hpp
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

#include <cstdint>
#include <optional>
#include <vector>

#include "hetcrash/model.hpp"

namespace hetcrash {

/// Stamp of the implicit all-unwritten content every page starts with.
inline constexpr std::uint32_t kInitialStamp = 0;

struct HistoryEntry {
  std::size_t position = 0;  // index in the originating Schedule
  Event event;
  std::uint32_t stamp = 0;   // > 0 for INIT/WRITE/SYNC_WRITE, in execution order

  bool operator==(const HistoryEntry&) const = default;
};

/// Executed events up to and including the crash, with per-write version
/// stamps. Reads after the crash are kept separately; they never mutate.
class History {
 public:
  History() = default;
  explicit History(Geometry g) : geometry_(g) {}

  static History from_schedule(const Schedule& s);

  void record(const Event& e, std::size_t position);

  const Geometry& geometry() const noexcept { return geometry_; }
  const std::vector<HistoryEntry>& entries() const noexcept { return entries_; }
  const std::vector<HistoryEntry>& post_crash_reads() const noexcept { return reads_; }
  std::optional<std::size_t> crash_pos() const noexcept { return crash_pos_; }

  bool operator==(const History&) const = default;

 private:
  Geometry geometry_;
  std::vector<HistoryEntry> entries_;
  std::vector<HistoryEntry> reads_;
  std::optional<std::size_t> crash_pos_;
  std::uint32_t next_stamp_ = 1;
};

}  // namespace hetcrash
