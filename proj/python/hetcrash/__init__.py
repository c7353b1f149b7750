"""Crash-consistency explorer for a DRAM page cache over NVM and disk."""

from ._hetcrash import (
    Event,
    HetcrashError,
    Schedule,
    corpus,
    format_trace,
    load_trace,
    overlay,
    parse_trace,
    run,
    strategies,
    sweep,
)

__all__ = [
    "Event",
    "HetcrashError",
    "Schedule",
    "corpus",
    "format_trace",
    "load_trace",
    "overlay",
    "parse_trace",
    "run",
    "strategies",
    "sweep",
]
