"""Deterministic forcing runs.

Two run disciplines over the same synchronous round primitive:

* with propagation: each applicable rule is exhausted (a propagating step)
  before moving to the next rule in order; inapplicable rules are skipped
  silently and runs always terminate;
* without propagation: exactly one synchronous round per rule visit, cycling
  through the rules; no-op visits count, and a revisited
  (coloring, next-rule-position) pair proves the run never terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ColoredGraph, ForcingNetwork, Rule, StateLabel
from .errors import LimitExceededError, NotTerminatedError


@dataclass(frozen=True)
class RoundEvent:
    """One counted forcing step: `recolored` flipped to `rule.source`.

    `fs_index` is 1-based over the counted steps of the run; `pfs_index`
    groups steps into propagating steps (propagation mode only).
    """

    rule: Rule
    recolored: frozenset[int]
    fs_index: int
    pfs_index: int | None = None


@dataclass(frozen=True)
class Terminated:
    final: StateLabel


@dataclass(frozen=True)
class NonTerminating:
    """The exact (coloring, next-rule-position) pair seen before visit
    `first_index` showed up again before visit `repeat_index`."""

    first_index: int
    repeat_index: int


@dataclass(frozen=True)
class ForcingTrace:
    initial: StateLabel
    events: tuple[RoundEvent, ...]
    outcome: Terminated | NonTerminating
    fs_count: int
    pfs_count: int | None = None  # None in non-propagation mode

    @property
    def terminated(self) -> bool:
        return isinstance(self.outcome, Terminated)


def _scan(colors: list[int], neighbors, source: int, target: int) -> list[int]:
    # the defining set: { v : color(v)=target and some neighbor has color source }
    hit = []
    for v, c in enumerate(colors):
        if c == target:
            for u in neighbors[v]:
                if colors[u] == source:
                    hit.append(v)
                    break
    return hit


def forcing_round(state: StateLabel, graph: ColoredGraph, rule: Rule) -> tuple[StateLabel, frozenset[int]]:
    """One synchronous round of `rule`: every currently forceable vertex flips at once."""
    colors = list(state.colors)
    hit = _scan(colors, graph.neighbors, rule.source, rule.target)
    if not hit:
        return state, frozenset()
    for v in hit:
        colors[v] = rule.source
    return StateLabel(tuple(colors), state.step_index), frozenset(hit)


def propagating_step(
    state: StateLabel, graph: ColoredGraph, rule: Rule
) -> tuple[StateLabel, list[frozenset[int]]]:
    """Repeat rounds of `rule` until none applies.  Returns the new state and
    the per-round recolored sets (empty list when the rule never applied)."""
    colors = list(state.colors)
    nbrs = graph.neighbors
    rounds: list[frozenset[int]] = []
    while True:
        hit = _scan(colors, nbrs, rule.source, rule.target)
        if not hit:
            break
        for v in hit:
            colors[v] = rule.source
        rounds.append(frozenset(hit))
    if not rounds:
        return state, []
    return StateLabel(tuple(colors), state.step_index + 1), rounds


def run_with_propagation(
    graph: ColoredGraph, network: ForcingNetwork, max_pfs: int | None = None
) -> ForcingTrace:
    """Cycle through the rules in order, exhausting each applicable one as a
    propagating step; stop once a full cycle changes nothing.

    Always terminates; the number of propagating steps is at most
    max(vertex_count - 1, 0) because each one merges two monochromatic
    components.
    """
    initial = StateLabel(graph.colors, 0)
    rules = network.rules
    n = graph.vertex_count
    colors = list(graph.colors)
    nbrs = graph.neighbors
    events: list[RoundEvent] = []
    fs = 0
    pfs = 0
    pos = 0
    streak = 0  # consecutive rules with no applicable force
    while rules and n and streak < len(rules):
        rule = rules[pos]
        src, tgt = rule
        rounds: list[list[int]] = []
        while True:
            hit = _scan(colors, nbrs, src, tgt)
            if not hit:
                break
            for v in hit:
                colors[v] = src
            rounds.append(hit)
        if rounds:
            if max_pfs is not None and pfs >= max_pfs:
                raise LimitExceededError(f"run needs more than max_pfs={max_pfs} propagating steps")
            pfs += 1
            for hit in rounds:
                fs += 1
                events.append(RoundEvent(rule, frozenset(hit), fs, pfs))
            streak = 0
        else:
            streak += 1
        pos = (pos + 1) % len(rules)
    assert pfs <= max(n - 1, 0)
    final = StateLabel(tuple(colors), pfs)
    return ForcingTrace(initial, tuple(events), Terminated(final), fs, pfs)


def default_max_fs(graph: ColoredGraph, network: ForcingNetwork) -> int:
    """Safety limit for non-propagation runs: three full laps of the
    (coloring, rule-position) state space, far past the pigeonhole bound."""
    return 3 * max(len(network.rules), 1) * len(network.palette) ** graph.vertex_count


def run_without_propagation(
    graph: ColoredGraph, network: ForcingNetwork, max_fs: int | None = None
) -> ForcingTrace:
    """One synchronous round per rule visit, cycling through the rules.

    Every visit counts as one forcing step, no-ops included.  The run is
    Terminated once len(rules) consecutive visits change nothing (the
    reported fs_count then ends at the last visit that recolored anything),
    and NonTerminating once the exact (coloring, next-rule-position) pair
    repeats.
    """
    initial = StateLabel(graph.colors, 0)
    rules = network.rules
    n = graph.vertex_count
    if not rules or not n:
        return ForcingTrace(initial, (), Terminated(StateLabel(graph.colors, 0)), 0, None)
    limit = default_max_fs(graph, network) if max_fs is None else max_fs
    colors = list(graph.colors)
    nbrs = graph.neighbors
    events: list[RoundEvent] = []
    seen: dict[tuple[tuple[int, ...], int], int] = {(graph.colors, 0): 0}
    i = 0  # visits performed
    pos = 0
    streak = 0
    last_recolor = 0
    while True:
        if i >= limit:
            raise LimitExceededError(f"no resolution within max_fs={limit} forcing steps")
        rule = rules[pos]
        hit = _scan(colors, nbrs, rule.source, rule.target)
        i += 1
        events.append(RoundEvent(rule, frozenset(hit), i, None))
        if hit:
            for v in hit:
                colors[v] = rule.source
            streak = 0
            last_recolor = i
        else:
            streak += 1
        if streak >= len(rules):
            # a full silent cycle: stable; report up to the last real step
            final = StateLabel(tuple(colors), last_recolor)
            return ForcingTrace(initial, tuple(events[:last_recolor]), Terminated(final), last_recolor, None)
        pos = (pos + 1) % len(rules)
        key = (tuple(colors), pos)
        if key in seen:
            return ForcingTrace(initial, tuple(events), NonTerminating(seen[key], i), i, None)
        seen[key] = i


def end_state(trace: ForcingTrace) -> StateLabel:
    """Final coloring of a terminated run; NotTerminated otherwise."""
    if not isinstance(trace.outcome, Terminated):
        raise NotTerminatedError(
            f"run repeats: state before step {trace.outcome.first_index} "
            f"recurs before step {trace.outcome.repeat_index}"
        )
    return trace.outcome.final
