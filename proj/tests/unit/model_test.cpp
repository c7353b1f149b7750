/*
 * model_test.cpp
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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hetcrash/model.hpp"
#include "support.hpp"

namespace hetcrash {
namespace {

using testing::trace;

TEST(Overlay, ReplacesRange) {
  const PageBytes base("------");
  EXPECT_EQ(overlay(base, "abc", 0).str(), "abc---");
  EXPECT_EQ(overlay(base, "317", 1).str(), "-317--");
  EXPECT_EQ(overlay(base, "uv", 4).str(), "----uv");
  EXPECT_EQ(overlay(base, "", 6).str(), "------");
}

TEST(Overlay, RejectsRangeOutsidePage) {
  const PageBytes base("------");
  for (auto [data, off] : {std::pair<std::string, std::size_t>{"abc", 4}, {"a", 6}, {"", 7}, {"abcdefg", 0}}) {
    try {
      overlay(base, data, off);
      FAIL() << data << "@" << off;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBounds);
    }
  }
}

TEST(Overlay, ComposesLeftToRight) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> sym('a', 'd');
  for (int iter = 0; iter < 2000; ++iter) {
    const std::size_t n = 1 + rng() % 8;
    std::string base(n, '-');
    for (char& c : base) c = static_cast<char>(sym(rng));
    auto random_write = [&] {
      const std::size_t off = rng() % (n + 1);
      std::string d(rng() % (n - off + 1), 'x');
      for (char& c : d) c = static_cast<char>(sym(rng));
      return std::pair{d, off};
    };
    const auto [d1, o1] = random_write();
    const auto [d2, o2] = random_write();
    const PageBytes seq = overlay(overlay(PageBytes(base), d1, o1), d2, o2);

    // Byte-wise: the later write wins where it covers, else the earlier, else the base.
    for (std::size_t b = 0; b < n; ++b) {
      char want = base[b];
      if (b >= o1 && b < o1 + d1.size()) want = d1[b - o1];
      if (b >= o2 && b < o2 + d2.size()) want = d2[b - o2];
      ASSERT_EQ(seq[b], want);
    }
    EXPECT_EQ(overlay(overlay(PageBytes(base), d1, o1), d1, o1), overlay(PageBytes(base), d1, o1));
    EXPECT_EQ(seq.size(), n);
  }
}

std::vector<std::string> rules(const std::string& text) {
  // Parse without the trace layer's own validation.
  Schedule s;
  s.geometry = {6, 2};
  std::istringstream in(text);
  std::string op;
  while (in >> op) {
    if (op == "init") {
      std::uint32_t p;
      std::string d;
      in >> p >> d;
      s.events.push_back(Event::init(PageId{p}, d));
    } else if (op == "write" || op == "syncw") {
      std::uint32_t p;
      std::size_t off;
      std::string d;
      in >> p >> off >> d;
      if (d == "_") d.clear();
      s.events.push_back(op == "write" ? Event::write(PageId{p}, off, d) : Event::sync_write(PageId{p}, off, d));
    } else if (op == "sync") {
      s.events.push_back(Event::sync());
    } else if (op == "crash") {
      s.events.push_back(Event::crash());
    } else {
      std::uint32_t p;
      in >> p;
      if (op == "start") s.events.push_back(Event::wb_start(PageId{p}));
      if (op == "deliver") s.events.push_back(Event::wb_deliver(PageId{p}));
      if (op == "end") s.events.push_back(Event::wb_end(PageId{p}));
      if (op == "read") s.events.push_back(Event::read(PageId{p}));
    }
  }
  std::vector<std::string> out;
  for (const auto& v : validate_schedule(s)) out.push_back(v.rule);
  return out;
}

TEST(ValidateSchedule, AcceptsWellFormed) {
  EXPECT_TRUE(rules("").empty());
  EXPECT_TRUE(rules("crash").empty());
  EXPECT_TRUE(rules("init 0 ------ init 1 ------ write 0 1 abc sync start 0 deliver 0 end 0 crash read 0").empty());
  EXPECT_TRUE(rules("syncw 1 5 z start 1 write 1 0 q deliver 1 end 1 start 1 crash").empty());
}

TEST(ValidateSchedule, FlagsEachRule) {
  using V = std::vector<std::string>;
  EXPECT_EQ(rules("crash crash"), V{"multiple crash"});
  EXPECT_EQ(rules("crash write 0 0 a"), V{"event after crash"});
  EXPECT_EQ(rules("crash sync"), V{"event after crash"});
  EXPECT_EQ(rules("write 0 4 abc"), V{"write out of bounds"});
  EXPECT_EQ(rules("write 0 0 _"), V{"empty write"});
  EXPECT_EQ(rules("write 2 0 a"), V{"page out of range"});
  EXPECT_EQ(rules("init 0 ---"), V{"init not whole page"});
  EXPECT_EQ(rules("init 0 ------ init 0 ------"), V{"duplicate init"});
  EXPECT_EQ(rules("write 0 0 a init 1 ------"), V{"init after use"});
  EXPECT_EQ(rules("start 0"), V{"wb_start on clean page"});
  EXPECT_EQ(rules("write 0 0 a start 0 start 0"), V{"nested writeback"});
  EXPECT_EQ(rules("deliver 0"), V{"unmatched wb_deliver"});
  EXPECT_EQ(rules("write 0 0 a start 0 deliver 0 deliver 0"), V{"duplicate wb_deliver"});
  EXPECT_EQ(rules("end 0"), V{"unmatched wb_end"});
  EXPECT_EQ(rules("write 0 0 a start 0 end 0"), V{"wb_end before wb_deliver"});
}

TEST(ValidateSchedule, FlagsBadGeometry) {
  Schedule s;
  s.geometry = {0, 1};
  EXPECT_EQ(validate_schedule(s).size(), 1u);
  s.geometry = {kMaxPageSize + 1, 0};
  EXPECT_EQ(validate_schedule(s).size(), 2u);
}

TEST(ValidateSchedule, FlagsPayloadOnBareEvents) {
  Schedule s;
  Event e = Event::sync();
  e.data = "x";
  s.events.push_back(e);
  ASSERT_EQ(validate_schedule(s).size(), 1u);
  EXPECT_EQ(validate_schedule(s)[0].rule, "unexpected payload");
}

TEST(MutationCount, FusesAdjacentTriples) {
  EXPECT_EQ(mutation_count(trace("init 0 \"------\"\nwrite 0 0 \"a\"\nwb 0\nsync\ncrash\n")), 3u);
  EXPECT_EQ(mutation_count(trace("write 0 0 \"a\"\nwb_start 0\nwrite 0 1 \"b\"\nwb_deliver 0\nwb_end 0\n")), 5u);
  EXPECT_EQ(mutation_count(Schedule{}), 0u);
}

TEST(Describe, MatchesTraceGrammar) {
  EXPECT_EQ(describe(Event::sync_write(PageId{0}, 3, "xyz")), "syncw 0 3 \"xyz\"");
  EXPECT_EQ(describe(Event::init(PageId{1}, "------")), "init 1 \"------\"");
  EXPECT_EQ(describe(Event::wb_deliver(PageId{2})), "wb_deliver 2");
  EXPECT_EQ(describe(Event::crash()), "crash");
}

}  // namespace
}  // namespace hetcrash
