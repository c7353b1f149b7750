/*
 * trace.hpp
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

// Line-oriented text format for schedules.
//
//   page_size 6          # optional header lines, before any directive
//   page_count 1
//   init 0 "------"
//   write 0 1 "317"
//   sync
//   syncw 0 3 "xyz"
//   wb 0                 # wb_start, wb_deliver, wb_end back to back
//   wb_start 0
//   crash
//   read 0
//
// Bytes are quoted verbatim and may not contain '"' or a newline.

#include <string>
#include <string_view>
#include <vector>

#include "hetcrash/model.hpp"

namespace hetcrash {

/// Parsed schedule with the 1-based source line of every event.
struct TraceFile {
  Schedule schedule;
  std::vector<std::size_t> lines;
};

/// Throws Error{kParseError} with "line N: ..." on malformed text or an
/// invalid schedule.
TraceFile parse_trace(std::string_view text);

TraceFile load_trace(const std::string& path);

/// Inverse of parse_trace up to whitespace and comments. Adjacent write-back
/// triples are written as `wb P`; header lines are emitted only when they
/// differ from the defaults.
std::string format_trace(const Schedule& s);

}  // namespace hetcrash
