/*
 * hetcrash_py.cpp
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hetcrash/cli.hpp"
#include "hetcrash/explorer.hpp"
#include "hetcrash/trace.hpp"

namespace py = pybind11;
using namespace hetcrash;

namespace {

StrategyName strategy_arg(const std::string& name) {
  if (auto s = parse_strategy(name)) return *s;
  throw Error(ErrorCode::kUsage, "unknown strategy " + name);
}

MarkPoint mark_arg(const std::string& name) {
  if (auto m = parse_mark_point(name)) return *m;
  throw Error(ErrorCode::kUsage, "unknown mark point " + name);
}

py::dict run_dict(const RunReport& r) {
  py::dict d;
  d["strategy"] = std::string(to_string(r.strategy));
  d["verdict"] = std::string(to_string(r.verdict.status));
  d["passed"] = r.verdict.passed();
  d["crashed"] = r.crashed;
  py::list pages;
  for (const PageBytes& p : r.recovered) pages.append(p.str());
  d["recovered"] = pages;
  d["witness"] = r.verdict.witness ? py::cast(format_witness(*r.verdict.witness)) : py::none();
  return d;
}

py::dict sweep_dict(const SweepReport& r) {
  py::dict d, violations, counterexamples, cases;
  d["schedules"] = r.schedules;
  d["crash_schedules"] = r.crash_schedules;
  if (r.sampled) d["seed"] = r.seed;
  for (const StrategyTally& t : r.tallies) {
    const std::string name(to_string(t.strategy));
    violations[py::str(name)] = t.violations;
    py::list traces;
    for (const Counterexample& c : t.counterexamples) traces.append(format_trace(c.schedule));
    counterexamples[py::str(name)] = traces;
  }
  for (std::size_t i = 0; i < kProofCaseCount; ++i) {
    cases[py::str(std::string(to_string(static_cast<ProofCase>(i))))] = r.case_matches[i];
  }
  d["violations"] = violations;
  d["counterexamples"] = counterexamples;
  d["cases"] = cases;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hetcrash, m) {
  m.doc() = "Crash-consistency explorer for a DRAM page cache over NVM and disk";

  py::register_exception<Error>(m, "HetcrashError", PyExc_ValueError);

  m.def("overlay", [](const std::string& base, const std::string& data, std::size_t off) {
    return overlay(PageBytes(base), data, off).str();
  }, py::arg("base"), py::arg("data"), py::arg("off"));

  m.def("strategies", [] {
    std::vector<std::string> out;
    for (StrategyName s : kAllStrategies) out.emplace_back(to_string(s));
    return out;
  });

  py::class_<Event>(m, "Event")
      .def_property_readonly("kind", [](const Event& e) { return std::string(to_string(e.kind)); })
      .def_property_readonly("page", [](const Event& e) { return e.page.index; })
      .def_readonly("off", &Event::off)
      .def_readonly("data", &Event::data)
      .def("__eq__", [](const Event& a, const Event& b) { return a == b; })
      .def("__repr__", [](const Event& e) { return describe(e); });

  py::class_<Schedule>(m, "Schedule")
      .def_property_readonly("page_size", [](const Schedule& s) { return s.geometry.page_size; })
      .def_property_readonly("page_count", [](const Schedule& s) { return s.geometry.page_count; })
      .def_readonly("events", &Schedule::events)
      .def_property_readonly("crashed", [](const Schedule& s) { return s.crash_pos().has_value(); })
      .def("shape", [](const Schedule& s) { return shape_of(s); })
      .def("__len__", [](const Schedule& s) { return s.events.size(); })
      .def("__eq__", [](const Schedule& a, const Schedule& b) { return a == b; })
      .def("__str__", [](const Schedule& s) { return format_trace(s); });

  m.def("parse_trace", [](const std::string& text) { return parse_trace(text).schedule; }, py::arg("text"));
  m.def("load_trace", [](const std::string& path) { return load_trace(path).schedule; }, py::arg("path"));
  m.def("format_trace", &format_trace, py::arg("schedule"));

  m.def("run", [](const Schedule& s, const std::string& strategy, const std::string& mark, bool strict) {
    const Strategy st = make_strategy(strategy_arg(strategy), mark_arg(mark));
    RunReport r;
    {
      py::gil_scoped_release release;
      r = run_trace(s, st, strict ? CheckMode::kStrict : CheckMode::kPerByte);
    }
    return run_dict(r);
  }, py::arg("schedule"), py::arg("strategy") = "versioned-mark", py::arg("latest_dev_mark") = "deliver",
     py::arg("strict") = false);

  m.def("sweep", [](const std::string& world, std::optional<std::size_t> max_events,
                    std::optional<std::vector<std::string>> strategies, unsigned workers,
                    std::uint64_t samples, std::uint64_t seed) {
    const auto w = parse_world(world);
    if (!w) throw Error(ErrorCode::kUsage, "unknown world " + world);
    ExploreConfig cfg = world_config(*w);
    if (max_events) cfg.max_events = *max_events;
    if (strategies) {
      cfg.strategies.clear();
      for (const std::string& s : *strategies) cfg.strategies.push_back(strategy_arg(s));
    }
    cfg.workers = workers;
    SweepReport r;
    {
      py::gil_scoped_release release;
      r = samples ? sample(cfg, samples, seed) : sweep(cfg);
    }
    return sweep_dict(r);
  }, py::arg("world") = "a", py::arg("max_events") = py::none(), py::arg("strategies") = py::none(),
     py::arg("workers") = 1, py::arg("samples") = 0, py::arg("seed") = 0);

  m.def("corpus", [](std::optional<std::string> dir, const std::string& mark) {
    const auto rows = run_corpus(dir ? *dir : default_corpus_dir(), mark_arg(mark));
    py::dict out;
    for (const CorpusRow& row : rows) {
      py::dict cells;
      for (const RunReport& r : row.runs) cells[py::str(std::string(to_string(r.strategy)))] = r.verdict.passed();
      out[py::str(row.scenario)] = cells;
    }
    return out;
  }, py::arg("dir") = py::none(), py::arg("latest_dev_mark") = "deliver");
}
