/*
 * devices.cpp
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

#include "hetcrash/devices.hpp"

#include <algorithm>

namespace hetcrash {

NvmLog::NvmLog(const Geometry& g)
    : latest_dev_(g.page_count, Device::kDisk),
      page_ver_id_(g.page_count, 0),
      prep_rec_(g.page_count) {}

const NvmRecord& NvmLog::append(NvmRecord r) {
  r.vid = page_ver_id_.at(r.page.index)++;
  records_.push_back(std::move(r));
  return records_.back();
}

const NvmRecord& NvmLog::append_write(PageId p, std::size_t off, std::string_view data) {
  return append({RecordType::kWrite, p, off, std::string(data), 0, 0});
}

const NvmRecord& NvmLog::append_writeback(PageId p, std::uint64_t exp_vid) {
  NvmRecord r{RecordType::kWriteback, p, 0, {}, 0, exp_vid};
  r.exp_vid = std::min(exp_vid, page_ver_id_.at(p.index));
  return append(std::move(r));
}

void NvmLog::lose_volatile() {
  std::fill(page_ver_id_.begin(), page_ver_id_.end(), 0);
  std::fill(prep_rec_.begin(), prep_rec_.end(), std::nullopt);
}

void NvmLog::rebuild_volatile() {
  lose_volatile();
  for (const auto& r : records_) {
    auto& next = page_ver_id_.at(r.page.index);
    next = std::max(next, r.vid + 1);
  }
}

SystemState::SystemState(const Geometry& g) : geometry(g), nvm(g) {
  cache.pages.assign(g.page_count, PageBytes::unwritten(g.page_size));
  cache.flags.assign(g.page_count, PageFlags{});
  disk.pages.assign(g.page_count, PageBytes::unwritten(g.page_size));
  disk.inflight.assign(g.page_count, Inflight{});
}

namespace {

[[noreturn]] void invalid(const Event& e, const char* why) {
  throw Error(ErrorCode::kInvalidTrace, describe(e) + ": " + why);
}

void crash(SystemState& s) {
  s.cache.pages.clear();
  s.cache.flags.clear();
  s.nvm.lose_volatile();
  s.disk.inflight.clear();
  s.crashed = true;
}

template <typename Hook, typename... Args>
void call(const Hook& hook, Args&&... args) {
  if (hook) hook(std::forward<Args>(args)...);
}

}  // namespace

void apply(SystemState& s, const Event& e, const StrategyHooks& hooks) {
  if (s.crashed) {
    if (e.kind == EventKind::kRead) return;
    invalid(e, "mutation after crash");
  }
  if (targets_page(e.kind) && e.page.index >= s.geometry.page_count) invalid(e, "page out of range");

  const PageId p = e.page;
  switch (e.kind) {
    case EventKind::kInit: {
      if (e.off != 0 || e.len() != s.geometry.page_size) invalid(e, "init must cover the page");
      s.cache.pages[p.index] = PageBytes(e.data);
      s.cache.flags[p.index] = PageFlags{};
      s.disk.pages[p.index] = PageBytes(e.data);
      s.nvm.append_write(p, 0, e.data);
      s.nvm.set_latest_dev(p, Device::kNvm);
      break;
    }
    case EventKind::kWrite:
      s.cache.pages[p.index].overlay_in_place(e.data, e.off);
      s.cache.flags[p.index].dirty = true;
      break;
    case EventKind::kSyncWrite:
      s.cache.pages[p.index].overlay_in_place(e.data, e.off);
      s.cache.flags[p.index].dirty = true;
      call(hooks.on_sync_write, s.nvm, p, e.off, std::string_view(e.data));
      break;
    case EventKind::kSync:
      // A page queued for write-back is not on disk yet, so it is persisted too.
      for (std::uint32_t i = 0; i < s.geometry.page_count; ++i) {
        const PageFlags& f = s.cache.flags[i];
        if (f.dirty || f.writeback) call(hooks.on_sync, s.nvm, PageId{i}, s.cache.pages[i]);
      }
      break;
    case EventKind::kWbStart: {
      PageFlags& f = s.cache.flags[p.index];
      if (f.writeback) invalid(e, "write-back already in flight");
      if (!f.dirty) invalid(e, "page is not dirty");
      f.dirty = false;
      f.writeback = true;
      s.disk.inflight[p.index] = Inflight{WbPhase::kQueued, std::nullopt};
      call(hooks.on_wb_start, s.nvm, p);
      break;
    }
    case EventKind::kWbDeliver: {
      Inflight& in = s.disk.inflight[p.index];
      if (in.phase != WbPhase::kQueued) invalid(e, "no queued write-back");
      s.disk.pages[p.index] = s.cache.pages[p.index];
      in.phase = WbPhase::kDelivered;
      in.delivered = s.cache.pages[p.index];
      call(hooks.on_wb_deliver, s.nvm, p);
      break;
    }
    case EventKind::kWbEnd: {
      Inflight& in = s.disk.inflight[p.index];
      if (in.phase != WbPhase::kDelivered) invalid(e, "write-back not delivered");
      in = Inflight{};
      s.cache.flags[p.index].writeback = false;
      call(hooks.on_wb_end, s.nvm, p);
      break;
    }
    case EventKind::kCrash:
      crash(s);
      break;
    case EventKind::kRead:
      break;
  }
}

SystemState step(SystemState state, const Event& e, const StrategyHooks& hooks) {
  apply(state, e, hooks);
  return state;
}

RunResult run_to_crash(const Schedule& s, const StrategyHooks& hooks) {
  if (auto v = validate_schedule(s); !v.empty()) {
    throw Error(ErrorCode::kInvalidTrace,
                "event " + std::to_string(v.front().pos) + ": " + v.front().rule);
  }
  RunResult out{SystemState(s.geometry), History(s.geometry)};
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    apply(out.state, s.events[i], hooks);
    out.history.record(s.events[i], i);
  }
  return out;
}

}  // namespace hetcrash
