/*
 * support.hpp
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

#include <string>

#include "hetcrash/trace.hpp"

namespace hetcrash::testing {

inline Schedule trace(const std::string& text) { return parse_trace(text).schedule; }

inline Schedule corpus(const std::string& name) {
  return load_trace(std::string(HETCRASH_TEST_CORPUS) + "/" + name + ".trace").schedule;
}

}  // namespace hetcrash::testing
