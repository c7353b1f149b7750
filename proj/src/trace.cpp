/*
 * trace.cpp
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

#include "hetcrash/trace.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hetcrash {

namespace {

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t number) : rest_(line), number_(number) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(number_) + ": " + what);
  }

  void skip_space() {
    while (!rest_.empty() && (rest_.front() == ' ' || rest_.front() == '\t')) rest_.remove_prefix(1);
  }

  bool at_end() {
    skip_space();
    return rest_.empty() || rest_.front() == '#';
  }

  std::string_view word() {
    skip_space();
    std::size_t n = 0;
    while (n < rest_.size() && rest_[n] != ' ' && rest_[n] != '\t' && rest_[n] != '#') ++n;
    std::string_view w = rest_.substr(0, n);
    rest_.remove_prefix(n);
    return w;
  }

  std::size_t number(const char* what) {
    std::string_view w = word();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (w.empty() || ec != std::errc() || ptr != w.data() + w.size()) {
      fail(std::string("expected ") + what);
    }
    return v;
  }

  std::string quoted() {
    skip_space();
    if (rest_.empty() || rest_.front() != '"') fail("expected quoted bytes");
    const auto close = rest_.find('"', 1);
    if (close == std::string_view::npos) fail("unterminated quoted bytes");
    std::string out(rest_.substr(1, close - 1));
    rest_.remove_prefix(close + 1);
    return out;
  }

  void finish() {
    if (!at_end()) fail("unexpected trailing text");
  }

 private:
  std::string_view rest_;
  std::size_t number_;
};

std::string strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return std::string(line);
}

}  // namespace

TraceFile parse_trace(std::string_view text) {
  TraceFile out;
  Schedule& s = out.schedule;
  bool directives_seen = false;

  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string line = strip_cr(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;

    LineReader r(line, number);
    if (r.at_end()) continue;
    const std::string op(r.word());
    auto page = [&] {
      const std::size_t p = r.number("page number");
      if (p > UINT32_MAX) r.fail("page number too large");
      return PageId{static_cast<std::uint32_t>(p)};
    };
    auto push = [&](Event e) {
      s.events.push_back(std::move(e));
      out.lines.push_back(number);
    };

    if (op == "page_size" || op == "page_count") {
      if (directives_seen) r.fail(op + " must precede all events");
      const std::size_t v = r.number("a count");
      (op == "page_size" ? s.geometry.page_size : s.geometry.page_count) = v;
      r.finish();
      continue;
    }
    directives_seen = true;

    if (op == "init") {
      const PageId p = page();
      push(Event::init(p, r.quoted()));
    } else if (op == "write" || op == "syncw") {
      const PageId p = page();
      const std::size_t off = r.number("offset");
      std::string data = r.quoted();
      push(op == "write" ? Event::write(p, off, std::move(data))
                         : Event::sync_write(p, off, std::move(data)));
    } else if (op == "sync") {
      push(Event::sync());
    } else if (op == "wb") {
      const PageId p = page();
      push(Event::wb_start(p));
      push(Event::wb_deliver(p));
      push(Event::wb_end(p));
    } else if (op == "wb_start") {
      push(Event::wb_start(page()));
    } else if (op == "wb_deliver") {
      push(Event::wb_deliver(page()));
    } else if (op == "wb_end") {
      push(Event::wb_end(page()));
    } else if (op == "crash") {
      push(Event::crash());
    } else if (op == "read") {
      push(Event::read(page()));
    } else {
      r.fail("unknown directive '" + op + "'");
    }
    r.finish();
  }

  const auto violations = validate_schedule(s);
  if (!violations.empty()) {
    const auto& v = violations.front();
    const std::size_t line = v.pos < out.lines.size() ? out.lines[v.pos] : 0;
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + v.rule);
  }
  return out;
}

TraceFile load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUsage, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

std::string format_trace(const Schedule& s) {
  std::string out;
  const Geometry defaults;
  if (s.geometry.page_size != defaults.page_size) {
    out += "page_size " + std::to_string(s.geometry.page_size) + "\n";
  }
  if (s.geometry.page_count != defaults.page_count) {
    out += "page_count " + std::to_string(s.geometry.page_count) + "\n";
  }
  const auto& ev = s.events;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i].kind == EventKind::kWbStart && i + 2 < ev.size() &&
        ev[i + 1].kind == EventKind::kWbDeliver && ev[i + 2].kind == EventKind::kWbEnd &&
        ev[i + 1].page == ev[i].page && ev[i + 2].page == ev[i].page) {
      out += "wb " + std::to_string(ev[i].page.index) + "\n";
      i += 2;
      continue;
    }
    out += describe(ev[i]) + "\n";
  }
  return out;
}

}  // namespace hetcrash
