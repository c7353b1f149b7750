/*
 * devices.hpp
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

// DRAM page cache, NVM record log and disk, plus the queued write-back
// lifecycle (start, real disk write, completion). A SystemState is advanced
// one Event at a time; recovery strategies plug in through StrategyHooks.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "hetcrash/history.hpp"
#include "hetcrash/model.hpp"

namespace hetcrash {

enum class Device : std::uint8_t { kDisk, kNvm };

enum class RecordType : std::uint8_t { kWrite, kWriteback };

struct NvmRecord {
  RecordType type = RecordType::kWrite;
  PageId page;
  std::size_t off = 0;
  std::string data;           // WRITE only
  std::uint64_t vid = 0;
  std::uint64_t exp_vid = 0;  // WRITEBACK only

  bool covers_page(std::size_t page_size) const {
    return type == RecordType::kWrite && off == 0 && data.size() == page_size;
  }

  bool operator==(const NvmRecord&) const = default;
};

class NvmLog {
 public:
  NvmLog() = default;
  explicit NvmLog(const Geometry& g);

  // Persistent.
  const std::vector<NvmRecord>& records() const noexcept { return records_; }
  Device latest_dev(PageId p) const { return latest_dev_.at(p.index); }
  void set_latest_dev(PageId p, Device d) { latest_dev_.at(p.index) = d; }

  // Volatile: lost on crash.
  std::uint64_t page_ver_id(PageId p) const { return page_ver_id_.at(p.index); }
  std::optional<NvmRecord>& prep_rec(PageId p) { return prep_rec_.at(p.index); }
  const std::optional<NvmRecord>& prep_rec(PageId p) const { return prep_rec_.at(p.index); }

  /// Appends atomically, stamping vid from the page's auto-increment counter.
  const NvmRecord& append(NvmRecord r);
  const NvmRecord& append_write(PageId p, std::size_t off, std::string_view data);
  const NvmRecord& append_writeback(PageId p, std::uint64_t exp_vid);

  void lose_volatile();
  /// Rebuilds page_ver_id as (max vid in the log for the page) + 1.
  void rebuild_volatile();

  bool operator==(const NvmLog&) const = default;

 private:
  std::vector<NvmRecord> records_;
  std::vector<Device> latest_dev_;
  std::vector<std::uint64_t> page_ver_id_;
  std::vector<std::optional<NvmRecord>> prep_rec_;
};

struct DramCache {
  std::vector<PageBytes> pages;  // empty after a crash
  std::vector<PageFlags> flags;

  bool operator==(const DramCache&) const = default;
};

enum class WbPhase : std::uint8_t { kIdle, kQueued, kDelivered };

struct Inflight {
  WbPhase phase = WbPhase::kIdle;
  std::optional<PageBytes> delivered;  // snapshot written at WB_DELIVER

  bool operator==(const Inflight&) const = default;
};

struct DiskState {
  std::vector<PageBytes> pages;     // persistent
  std::vector<Inflight> inflight;   // volatile

  const PageBytes& page(PageId p) const { return pages.at(p.index); }

  bool operator==(const DiskState&) const = default;
};

/// Bookkeeping a recovery strategy persists at each lifecycle point. Hooks see
/// only the NVM log; the disk is written by the simulator alone.
struct StrategyHooks {
  std::function<void(NvmLog&, PageId, const PageBytes&)> on_sync;
  std::function<void(NvmLog&, PageId, std::size_t off, std::string_view data)> on_sync_write;
  std::function<void(NvmLog&, PageId)> on_wb_start;
  std::function<void(NvmLog&, PageId)> on_wb_deliver;
  std::function<void(NvmLog&, PageId)> on_wb_end;
};

struct SystemState {
  Geometry geometry;
  DramCache cache;
  NvmLog nvm;
  DiskState disk;
  bool crashed = false;

  SystemState() = default;
  explicit SystemState(const Geometry& g);

  bool operator==(const SystemState&) const = default;
};

/// Advances `state` by one event in place. Throws Error{kInvalidTrace} for an
/// event the lifecycle forbids and Error{kBounds} for an out-of-page write.
void apply(SystemState& state, const Event& e, const StrategyHooks& hooks);

/// Value form of apply().
SystemState step(SystemState state, const Event& e, const StrategyHooks& hooks);

struct RunResult {
  SystemState state;
  History history;
};

/// Folds apply() over the schedule up to and including the CRASH (or to the
/// end for crash-free schedules). Post-crash reads land in the history only.
RunResult run_to_crash(const Schedule& s, const StrategyHooks& hooks);

}  // namespace hetcrash
