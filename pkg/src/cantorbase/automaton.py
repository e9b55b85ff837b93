"""The automaton recognising the factors of the beta-shift of an alternate base.

States are triples ``(i, j, k)``: following the quasi-greedy word of class
``i`` at position ``k`` while the current position is in class ``j``.
Reading the expected digit advances ``k``; reading a smaller digit jumps to
the start state of the next class.  Every state is final.
"""
from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .bases import UPBase
from .errors import NotAlternateBase, UnknownQuasiGreedy, UnsupportedFormat
from .expansion import QuasiGreedyTable, quasi_greedy_table
from .words import FiniteWord, UPWord

State = tuple[int, int, int]


@dataclass(frozen=True, eq=False)
class ShiftAutomaton:
    p: int
    states: frozenset[State]
    delta: dict[tuple[State, int], State]
    initial: frozenset[State]
    alphabet_max: int
    final: frozenset[State] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.final is None:
            object.__setattr__(self, "final", self.states)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ShiftAutomaton):
            return NotImplemented
        return (self.p, self.states, self.delta, self.initial, self.final, self.alphabet_max) == (
            other.p, other.states, other.delta, other.initial, other.final, other.alphabet_max)

    def step(self, state: State, digit: int) -> State | None:
        return self.delta.get((state, digit))

    def edge_groups(self) -> dict[tuple[State, State], list[int]]:
        """Labels grouped by (source, target), sorted."""
        groups: dict[tuple[State, State], list[int]] = defaultdict(list)
        for (src, digit), dst in self.delta.items():
            groups[(src, dst)].append(digit)
        return {k: sorted(v) for k, v in sorted(groups.items())}

    def accepts(self, word: Sequence[int]) -> bool:
        return accepts_factor(self, word)

    def __len__(self) -> int:
        return len(self.states)


def build_automaton(base: UPBase, table: QuasiGreedyTable | None = None,
                    max_steps: int | None = None) -> ShiftAutomaton:
    """The full automaton with ``sum_i p (m_i + n_i)`` states."""
    if not base.is_alternate():
        raise NotAlternateBase("the automaton is defined for alternate bases only")
    if table is None:
        table = quasi_greedy_table(base, max_steps)
    if not table.complete:
        raise UnknownQuasiGreedy(f"quasi-greedy expansions of classes {table.unknown_classes()} are unresolved")
    p = base.p
    states: set[State] = set()
    delta: dict[tuple[State, int], State] = {}
    for i in range(p):
        t: UPWord = table.dstar[i]  # type: ignore[assignment]
        size = t.m + t.n
        for j in range(p):
            nxt = (j + 1) % p
            for k in range(size):
                q = (i, j, k)
                states.add(q)
                delta[(q, t[k])] = (i, nxt, k + 1 if k != size - 1 else t.m)
                for s in range(t[k]):
                    delta[(q, s)] = (nxt, nxt, 0)
    return ShiftAutomaton(p, frozenset(states), delta, frozenset((i, i, 0) for i in range(p)),
                          base.alphabet_bound())


def trim_accessible(a: ShiftAutomaton) -> ShiftAutomaton:
    """Restrict to states reachable from an initial state."""
    seen = set(a.initial)
    queue = deque(a.initial)
    out: dict[State, list[State]] = defaultdict(list)
    for (src, _), dst in a.delta.items():
        out[src].append(dst)
    while queue:
        q = queue.popleft()
        for r in out[q]:
            if r not in seen:
                seen.add(r)
                queue.append(r)
    delta = {key: dst for key, dst in a.delta.items() if key[0] in seen}
    return ShiftAutomaton(a.p, frozenset(seen), delta, a.initial, a.alphabet_max, a.final & frozenset(seen))


def run(a: ShiftAutomaton, word: Iterable[int]) -> frozenset[State]:
    """States reachable from the initial set after reading ``word``."""
    current = set(a.initial)
    for d in word:
        current = {r for q in current if (r := a.delta.get((q, d))) is not None}
        if not current:
            break
    return frozenset(current)


def accepts_factor(a: ShiftAutomaton, word: Sequence[int]) -> bool:
    return bool(run(a, word) & a.final)


def forbidden_factors(a: ShiftAutomaton, max_len: int) -> list[FiniteWord]:
    """Minimal forbidden words of length ``<= max_len``, shortest first.

    ``w`` is minimal forbidden when it is rejected but both ``w[1:]`` and
    ``w[:-1]`` are accepted (the language is factorial).
    """
    if max_len < 1:
        return []
    alphabet = range(a.alphabet_max + 1)
    out: list[FiniteWord] = []
    level: dict[FiniteWord, frozenset[State]] = {(): a.initial}
    for _ in range(max_len):
        nxt: dict[FiniteWord, frozenset[State]] = {}
        for u, states in level.items():
            for c in alphabet:
                reach = frozenset(r for q in states if (r := a.delta.get((q, c))) is not None)
                w = u + (c,)
                if reach:
                    nxt[w] = reach
                elif accepts_factor(a, w[1:]):
                    out.append(w)
        level = nxt
    return sorted(out, key=lambda w: (len(w), w))


# -- determinisation and minimisation -------------------------------------

@dataclass(frozen=True)
class DFA:
    """Complete-on-live-states DFA; missing transitions reject."""

    start: int
    delta: dict[tuple[int, int], int]
    accepting: frozenset[int]
    alphabet: tuple[int, ...]
    size: int


def determinize(a: ShiftAutomaton) -> DFA:
    """Subset construction from the initial set; dead subsets are dropped."""
    alphabet = tuple(range(a.alphabet_max + 1))
    start = frozenset(a.initial)
    index = {start: 0}
    queue = deque([start])
    delta: dict[tuple[int, int], int] = {}
    accepting = set()
    while queue:
        s = queue.popleft()
        if s & a.final:
            accepting.add(index[s])
        for c in alphabet:
            t = frozenset(r for q in s if (r := a.delta.get((q, c))) is not None)
            if not t:
                continue
            if t not in index:
                index[t] = len(index)
                queue.append(t)
            delta[(index[s], c)] = index[t]
    return DFA(0, delta, frozenset(accepting), alphabet, len(index))


def minimize(d: DFA) -> DFA:
    """Partition refinement (Moore) on the live states; an implicit sink
    absorbs missing transitions."""
    sink = d.size
    states = list(range(d.size + 1))

    def go(q: int, c: int) -> int:
        return sink if q == sink else d.delta.get((q, c), sink)

    block = {q: (1 if q in d.accepting else 0) for q in states}
    while True:
        sig = {q: (block[q],) + tuple(block[go(q, c)] for c in d.alphabet) for q in states}
        ids: dict[tuple, int] = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in states}
        if len(ids) == len(set(block.values())):
            block = new
            break
        block = new
    dead = block[sink]
    live = sorted({b for b in block.values() if b != dead})
    renum = {b: i for i, b in enumerate(live)}
    delta = {}
    for q in range(d.size):
        for c in d.alphabet:
            t = go(q, c)
            if block[t] != dead and block[q] != dead:
                delta[(renum[block[q]], c)] = renum[block[t]]
    accepting = frozenset(renum[block[q]] for q in d.accepting if block[q] != dead)
    return DFA(renum[block[d.start]], delta, accepting, d.alphabet, len(live))


def same_language(a: ShiftAutomaton, b: ShiftAutomaton) -> bool:
    """Language equality by a product walk of the two determinised machines."""
    da, db = determinize(a), determinize(b)
    alphabet = sorted(set(da.alphabet) | set(db.alphabet))
    seen = {(da.start, db.start)}
    queue = deque(seen)
    while queue:
        x, y = queue.popleft()
        if (x is not None and x in da.accepting) != (y is not None and y in db.accepting):
            return False
        for c in alphabet:
            nx = da.delta.get((x, c)) if x is not None else None
            ny = db.delta.get((y, c)) if y is not None else None
            if nx is None and ny is None:
                continue
            if (nx, ny) not in seen:
                seen.add((nx, ny))
                queue.append((nx, ny))
    return True


# -- sofic verdict ---------------------------------------------------------

@dataclass(frozen=True)
class Sofic:
    automaton: ShiftAutomaton


@dataclass(frozen=True)
class Undetermined:
    """Some quasi-greedy expansion showed no period within ``budget`` steps.

    This is not a proof that the shift is non-sofic.
    """

    budget: int
    statuses: tuple[str, ...]


SoficVerdict = Union[Sofic, Undetermined]


def sofic_verdict(base: UPBase, budget: int | None = None) -> SoficVerdict:
    """Sofic (with the trimmed automaton) when every quasi-greedy expansion
    of 1 is detected ultimately periodic within ``budget`` steps."""
    from .expansion import default_max_steps

    budget = default_max_steps() if budget is None else budget
    table = quasi_greedy_table(base, budget)
    if not table.complete:
        statuses = tuple("periodic" if isinstance(w, UPWord) else "unknown" for w in table.dstar)
        return Undetermined(budget, statuses)
    return Sofic(trim_accessible(build_automaton(base, table)))


# -- export ----------------------------------------------------------------

def _node(q: State) -> str:
    return "q_%d_%d_%d" % q


def export(a: ShiftAutomaton, fmt: str = "dot") -> str:
    if fmt == "dot":
        return to_dot(a)
    if fmt == "json":
        return to_json(a)
    raise UnsupportedFormat(f"unknown export format {fmt!r}")


def to_dot(a: ShiftAutomaton) -> str:
    lines = ["digraph shift_automaton {", "  rankdir=LR;"]
    for q in sorted(a.states):
        attrs = [f'label="q_{{{q[0]},{q[1]},{q[2]}}}"']
        if q in a.initial:
            attrs.append("initial=true")
        lines.append(f"  {_node(q)} [{', '.join(attrs)}];")
    for (src, dst), labels in a.edge_groups().items():
        lines.append(f'  {_node(src)} -> {_node(dst)} [label="{",".join(map(str, labels))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(a: ShiftAutomaton) -> str:
    doc = {
        "version": 1,
        "p": a.p,
        "alphabet_max": a.alphabet_max,
        "states": [list(q) for q in sorted(a.states)],
        "initial": [list(q) for q in sorted(a.initial)],
        "final": [list(q) for q in sorted(a.final)],
        "edges": [{"from": list(s), "labels": labels, "to": list(t)}
                  for (s, t), labels in a.edge_groups().items()],
    }
    return json.dumps(doc, sort_keys=True)


def from_json(text: str) -> ShiftAutomaton:
    doc = json.loads(text)
    if doc.get("version") != 1:
        raise UnsupportedFormat(f"unsupported automaton schema version {doc.get('version')!r}")
    states = frozenset(tuple(q) for q in doc["states"])
    delta = {}
    for e in doc["edges"]:
        for c in e["labels"]:
            delta[(tuple(e["from"]), c)] = tuple(e["to"])
    final = frozenset(tuple(q) for q in doc["final"]) if "final" in doc else states
    return ShiftAutomaton(doc["p"], states, delta, frozenset(tuple(q) for q in doc["initial"]),
                          doc["alphabet_max"], final)
