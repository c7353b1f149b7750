/*
 * oracle.hpp
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

// Ground-truth checker for sync semantics. For every (write, sync, crash,
// read) in a history, the data read after the crash must be no earlier than
// the synced write. The check is per byte and inspects only the History and
// the recovered bytes; it knows nothing about devices or strategies.

#include <bitset>
#include <optional>
#include <string>

#include "hetcrash/history.hpp"

namespace hetcrash {

class ByteSet {
 public:
  void insert(char c) { bits_.set(static_cast<unsigned char>(c)); }
  bool contains(char c) const { return bits_.test(static_cast<unsigned char>(c)); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  void clear() { bits_.reset(); }
  bool subset_of(const ByteSet& o) const { return (bits_ & ~o.bits_).none(); }

  /// Members in ascending byte order.
  std::string to_string() const;

  bool operator==(const ByteSet&) const = default;

 private:
  std::bitset<256> bits_;
};

/// Stamp of the last write covering (p, b) that is synced before the crash:
/// either a SYNC_WRITE, an INIT, or any write followed by a SYNC. Returns
/// kInitialStamp when nothing qualifies.
std::uint32_t synced_floor(const History& h, PageId p, std::size_t b);

/// Byte values (p, b) may legally hold after recovery: the value of every
/// write covering it with stamp >= synced_floor, plus the unwritten symbol
/// when the floor is the implicit initial content. Never empty.
ByteSet acceptable_bytes(const History& h, PageId p, std::size_t b);

enum class VerdictStatus { kPass, kViolation };

std::string_view to_string(VerdictStatus s);

struct Witness {
  PageId page;
  std::size_t byte = 0;
  std::optional<std::size_t> write_pos;  // none: implicit initial content
  std::optional<std::size_t> sync_pos;   // equals write_pos for SYNC_WRITE/INIT
  std::optional<std::size_t> crash_pos;
  std::optional<std::size_t> read_pos;   // none: implicit post-crash read
  std::optional<Event> write;
  std::optional<Event> sync;
  std::string expected;  // acceptable byte values
  char actual = 0;

  bool operator==(const Witness&) const = default;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::kPass;
  std::optional<Witness> witness;

  bool passed() const noexcept { return status == VerdictStatus::kPass; }
  static Verdict pass() { return {}; }

  bool operator==(const Verdict&) const = default;
};

enum class CheckMode {
  kPerByte,
  // Additionally require the page to equal one point-in-time cache image at or
  // after the newest synced write. Not part of the sync-semantics contract.
  kStrict,
};

Verdict check(const History& h, const PageBytes& recovered, PageId p,
              CheckMode mode = CheckMode::kPerByte);

/// Replays every write in `h` over the initial content: the true final page.
PageBytes replay_full(const History& h, PageId p);

/// One-line rendering, e.g. `page=0 byte=1 expected={3} actual=b write=#3 sync=#5 crash=#8`.
std::string format_witness(const Witness& w);

}  // namespace hetcrash
