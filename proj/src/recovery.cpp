/*
 * recovery.cpp
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

#include "hetcrash/recovery.hpp"

#include <array>
#include <utility>

namespace hetcrash {

namespace {

constexpr std::array<std::pair<StrategyName, std::string_view>, 6> kStrategyNames{{
    {StrategyName::kNaiveDisk, "naive-disk"},
    {StrategyName::kNaiveNvm, "naive-nvm"},
    {StrategyName::kLatestDev, "latest-dev"},
    {StrategyName::kWbMarkAtStart, "wb-mark-start"},
    {StrategyName::kWbMarkAtEnd, "wb-mark-end"},
    {StrategyName::kVersionedMark, "versioned-mark"},
}};

void log_page(NvmLog& nvm, PageId p, const PageBytes& page) {
  nvm.append_write(p, 0, page.view());
}

void log_range(NvmLog& nvm, PageId p, std::size_t off, std::string_view data) {
  nvm.append_write(p, off, data);
}

void mark_writeback(NvmLog& nvm, PageId p) { nvm.append_writeback(p, nvm.page_ver_id(p)); }

}  // namespace

std::string_view to_string(StrategyName s) {
  for (const auto& [name, text] : kStrategyNames) {
    if (name == s) return text;
  }
  return "?";
}

std::optional<StrategyName> parse_strategy(std::string_view text) {
  for (const auto& [name, spelled] : kStrategyNames) {
    if (spelled == text) return name;
  }
  return std::nullopt;
}

std::string_view to_string(MarkPoint m) {
  switch (m) {
    case MarkPoint::kStart: return "start";
    case MarkPoint::kDeliver: return "deliver";
    case MarkPoint::kEnd: return "end";
  }
  return "?";
}

std::optional<MarkPoint> parse_mark_point(std::string_view name) {
  if (name == "start") return MarkPoint::kStart;
  if (name == "deliver") return MarkPoint::kDeliver;
  if (name == "end") return MarkPoint::kEnd;
  return std::nullopt;
}

Strategy make_strategy(StrategyName name, MarkPoint latest_dev_mark) {
  Strategy s{name, latest_dev_mark, {}};
  StrategyHooks& h = s.hooks;
  switch (name) {
    case StrategyName::kNaiveDisk:
    case StrategyName::kNaiveNvm:
      h.on_sync = log_page;
      h.on_sync_write = log_range;
      break;
    case StrategyName::kLatestDev: {
      h.on_sync = [](NvmLog& nvm, PageId p, const PageBytes& page) {
        log_page(nvm, p, page);
        nvm.set_latest_dev(p, Device::kNvm);
      };
      h.on_sync_write = [](NvmLog& nvm, PageId p, std::size_t off, std::string_view data) {
        log_range(nvm, p, off, data);
        nvm.set_latest_dev(p, Device::kNvm);
      };
      auto to_disk = [](NvmLog& nvm, PageId p) { nvm.set_latest_dev(p, Device::kDisk); };
      switch (latest_dev_mark) {
        case MarkPoint::kStart: h.on_wb_start = to_disk; break;
        case MarkPoint::kDeliver: h.on_wb_deliver = to_disk; break;
        case MarkPoint::kEnd: h.on_wb_end = to_disk; break;
      }
      break;
    }
    case StrategyName::kWbMarkAtStart:
      h.on_sync = log_page;
      h.on_sync_write = log_range;
      h.on_wb_start = mark_writeback;
      break;
    case StrategyName::kWbMarkAtEnd:
      h.on_sync = log_page;
      h.on_sync_write = log_range;
      h.on_wb_end = mark_writeback;
      break;
    case StrategyName::kVersionedMark:
      h.on_sync = log_page;
      h.on_sync_write = log_range;
      h.on_wb_start = [](NvmLog& nvm, PageId p) {
        nvm.prep_rec(p) = NvmRecord{RecordType::kWriteback, p, 0, {}, 0, nvm.page_ver_id(p)};
      };
      h.on_wb_end = [](NvmLog& nvm, PageId p) {
        auto& prep = nvm.prep_rec(p);
        if (!prep) throw Error(ErrorCode::kInvalidTrace, "write-back completed without a prepared record");
        nvm.append(std::move(*prep));
        prep.reset();
      };
      break;
  }
  return s;
}

PageBytes recover_latest_dev(const NvmLog& nvm, const DiskState& disk, PageId p,
                             const Geometry& g) {
  if (nvm.latest_dev(p) == Device::kDisk) return disk.page(p);

  const auto& records = nvm.records();
  std::optional<std::size_t> anchor;
  for (std::size_t i = records.size(); i-- > 0;) {
    if (records[i].page == p && records[i].covers_page(g.page_size)) {
      anchor = i;
      break;
    }
  }
  if (!anchor) {
    throw Error(ErrorCode::kCorruptState,
                "page " + std::to_string(p.index) + " marked NVM-latest without a whole-page record");
  }
  PageBytes page(records[*anchor].data);
  for (std::size_t i = *anchor + 1; i < records.size(); ++i) {
    const NvmRecord& r = records[i];
    if (r.page == p && r.type == RecordType::kWrite) page.overlay_in_place(r.data, r.off);
  }
  return page;
}

PageBytes recover_wb_mark(const NvmLog& nvm, const DiskState& disk, PageId p) {
  const auto& records = nvm.records();
  std::size_t first = 0;
  for (std::size_t i = records.size(); i-- > 0;) {
    if (records[i].page == p && records[i].type == RecordType::kWriteback) {
      first = i + 1;
      break;
    }
  }
  PageBytes page = disk.page(p);
  for (std::size_t i = first; i < records.size(); ++i) {
    const NvmRecord& r = records[i];
    if (r.page == p) page.overlay_in_place(r.data, r.off);
  }
  return page;
}

VersionedWalk versioned_walk(const NvmLog& nvm, PageId p) {
  VersionedWalk walk;
  const auto& records = nvm.records();
  std::uint64_t exp_vid = 0;
  for (std::size_t i = records.size(); i-- > 0;) {
    const NvmRecord& r = records[i];
    if (r.page != p) continue;
    if (r.vid < exp_vid) break;
    if (r.type == RecordType::kWriteback) {
      exp_vid = r.exp_vid;
      walk.cutoffs.push_back(exp_vid);
    } else {
      walk.survivors.push_back(i);
    }
  }
  return walk;
}

PageBytes recover_versioned(const NvmLog& nvm, const DiskState& disk, PageId p) {
  const VersionedWalk walk = versioned_walk(nvm, p);
  PageBytes page = disk.page(p);
  for (auto it = walk.survivors.rbegin(); it != walk.survivors.rend(); ++it) {
    const NvmRecord& r = nvm.records()[*it];
    page.overlay_in_place(r.data, r.off);
  }
  return page;
}

PageBytes recover_nvm_only(const NvmLog& nvm, PageId p, const Geometry& g) {
  PageBytes page = PageBytes::unwritten(g.page_size);
  for (const NvmRecord& r : nvm.records()) {
    if (r.page == p && r.type == RecordType::kWrite) page.overlay_in_place(r.data, r.off);
  }
  return page;
}

PageBytes recover(StrategyName s, const NvmLog& nvm, const DiskState& disk, PageId p,
                  const Geometry& g) {
  switch (s) {
    case StrategyName::kNaiveDisk: return disk.page(p);
    case StrategyName::kNaiveNvm: return recover_nvm_only(nvm, p, g);
    case StrategyName::kLatestDev: return recover_latest_dev(nvm, disk, p, g);
    case StrategyName::kWbMarkAtStart:
    case StrategyName::kWbMarkAtEnd: return recover_wb_mark(nvm, disk, p);
    case StrategyName::kVersionedMark: return recover_versioned(nvm, disk, p);
  }
  throw Error(ErrorCode::kUsage, "unknown strategy");
}

}  // namespace hetcrash
