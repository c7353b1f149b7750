/*
 * recovery.hpp
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

#include <optional>
#include <string_view>
#include <vector>

#include "hetcrash/devices.hpp"

namespace hetcrash {

enum class StrategyName {
  kNaiveDisk,      // always adopt the disk page
  kNaiveNvm,       // always rebuild from NVM records
  kLatestDev,      // persistent per-page "latest device" marker
  kWbMarkAtStart,  // write-back recorded on NVM when it is queued
  kWbMarkAtEnd,    // write-back recorded on NVM when it completes
  kVersionedMark,  // write-back record carries the vid cutoff taken at queue time
};

inline constexpr StrategyName kAllStrategies[] = {
    StrategyName::kNaiveDisk,     StrategyName::kNaiveNvm,    StrategyName::kLatestDev,
    StrategyName::kWbMarkAtStart, StrategyName::kWbMarkAtEnd, StrategyName::kVersionedMark,
};

/// CLI spelling, e.g. "wb-mark-end".
std::string_view to_string(StrategyName s);
std::optional<StrategyName> parse_strategy(std::string_view name);

/// Lifecycle point at which the latest-device marker flips to DISK.
enum class MarkPoint { kStart, kDeliver, kEnd };

std::string_view to_string(MarkPoint m);
std::optional<MarkPoint> parse_mark_point(std::string_view name);

struct Strategy {
  StrategyName name = StrategyName::kVersionedMark;
  MarkPoint latest_dev_mark = MarkPoint::kDeliver;
  StrategyHooks hooks;
};

Strategy make_strategy(StrategyName name, MarkPoint latest_dev_mark = MarkPoint::kDeliver);

/// Disk page when the marker says DISK, otherwise the NVM image: the newest
/// whole-page record with every later record of the page overlaid.
/// Throws Error{kCorruptState} when the marker says NVM but no whole-page
/// record exists.
PageBytes recover_latest_dev(const NvmLog& nvm, const DiskState& disk, PageId p,
                             const Geometry& g);

/// Replays the page's WRITE records newer than its last WRITEBACK record over
/// the disk page.
PageBytes recover_wb_mark(const NvmLog& nvm, const DiskState& disk, PageId p);

/// Result of the versioned backward walk, exposed for inspection.
struct VersionedWalk {
  std::vector<std::size_t> survivors;   // record indices, newest first
  std::vector<std::uint64_t> cutoffs;   // exp_vid of each WRITEBACK met, in walk order
};

VersionedWalk versioned_walk(const NvmLog& nvm, PageId p);

/// Replays the survivors of versioned_walk() oldest-first over the disk page.
PageBytes recover_versioned(const NvmLog& nvm, const DiskState& disk, PageId p);

/// Replays every WRITE record of the page over the unwritten page, ignoring
/// the disk and any WRITEBACK records.
PageBytes recover_nvm_only(const NvmLog& nvm, PageId p, const Geometry& g);

/// Dispatch on the strategy. Reads persistent state only.
PageBytes recover(StrategyName s, const NvmLog& nvm, const DiskState& disk, PageId p,
                  const Geometry& g);

inline PageBytes recover(const Strategy& s, const NvmLog& nvm, const DiskState& disk, PageId p,
                         const Geometry& g) {
  return recover(s.name, nvm, disk, p, g);
}

}  // namespace hetcrash
