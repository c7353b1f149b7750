/*
 * reference_generator.hpp
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

// Brute-force schedule generator used to cross-check enumerate(): build every
// sequence over a flat event alphabet and keep those that pass the filters.
// Shares nothing with the explorer's move generator except validate_schedule.

#include <set>
#include <string>
#include <vector>

#include "hetcrash/explorer.hpp"

namespace hetcrash {

inline std::vector<std::pair<std::size_t, std::size_t>> reference_ranges(std::size_t n, RangeSet r) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t off = 0; off < n; ++off) {
    for (std::size_t len = 1; off + len <= n; ++len) {
      const bool whole = off == 0 && len == n;
      if (r == RangeSet::kAll || whole || (r == RangeSet::kUnitAndWhole && len == 1)) out.emplace_back(off, len);
    }
  }
  return out;
}

// Each atom counts as one event toward the bound.
inline std::vector<std::vector<Event>> reference_atoms(const ExploreConfig& cfg) {
  std::vector<std::vector<Event>> atoms;
  atoms.push_back({Event::sync()});
  for (std::uint32_t p = 0; p < cfg.page_count; ++p) {
    const PageId page{p};
    for (auto [off, len] : reference_ranges(cfg.page_size, cfg.ranges)) {
      for (char c : cfg.alphabet) {
        atoms.push_back({Event::write(page, off, std::string(len, c))});
        if (cfg.allow_partial_sync_writes) atoms.push_back({Event::sync_write(page, off, std::string(len, c))});
      }
    }
    if (cfg.allow_wb_duration) {
      atoms.push_back({Event::wb_start(page)});
      atoms.push_back({Event::wb_deliver(page)});
      atoms.push_back({Event::wb_end(page)});
    } else {
      atoms.push_back({Event::wb_start(page), Event::wb_deliver(page), Event::wb_end(page)});
    }
  }
  return atoms;
}

// Symbols must be introduced in alphabet order.
inline bool reference_canonical(const std::vector<Event>& events, const std::string& alphabet) {
  std::size_t introduced = 0;
  for (const Event& e : events) {
    if (e.kind != EventKind::kWrite && e.kind != EventKind::kSyncWrite) continue;
    const std::size_t idx = alphabet.find(e.data[0]);
    if (idx > introduced) return false;
    if (idx == introduced) ++introduced;
  }
  return true;
}

// A sync write on page p needs no plain write to p since the last SYNC.
inline bool reference_sync_pattern(const std::vector<Event>& events) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].kind != EventKind::kSyncWrite) continue;
    for (std::size_t j = i; j-- > 0;) {
      if (events[j].kind == EventKind::kSync) break;
      if (events[j].kind == EventKind::kWrite && events[j].page == events[i].page) return false;
    }
  }
  return true;
}

inline std::vector<Schedule> reference_schedules(const ExploreConfig& cfg) {
  const auto atoms = reference_atoms(cfg);
  std::vector<Event> prefix;
  if (cfg.seed_init) {
    for (std::uint32_t p = 0; p < cfg.page_count; ++p) {
      prefix.push_back(Event::init(PageId{p}, std::string(cfg.page_size, kUnwritten)));
    }
  }

  std::vector<std::vector<Event>> bodies{{}};
  std::vector<std::vector<Event>> frontier{{}};
  for (std::size_t depth = 0; depth < cfg.max_events; ++depth) {
    std::vector<std::vector<Event>> next;
    for (const auto& body : frontier) {
      for (const auto& atom : atoms) {
        auto longer = body;
        longer.insert(longer.end(), atom.begin(), atom.end());
        next.push_back(std::move(longer));
      }
    }
    bodies.insert(bodies.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  std::vector<Schedule> out;
  for (const auto& body : bodies) {
    for (bool crash : {false, true}) {
      Schedule s{cfg.geometry(), prefix};
      s.events.insert(s.events.end(), body.begin(), body.end());
      if (crash) s.events.push_back(Event::crash());
      if (!is_valid(s)) continue;
      if (!reference_canonical(body, cfg.alphabet)) continue;
      if (cfg.strict_sync_pattern && !reference_sync_pattern(body)) continue;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace hetcrash
