"""Observation tables over a membership oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .linalg import Matrix, rank_over_field, rank_over_pid, solve
from .semiring import INT, RAT, Semiring, SolverKind
from .wfa import format_word


@dataclass(frozen=True)
class Closed:
    """Every successor row is a combination of rows in S; ``combinations`` is keyed by successor label."""
    combinations: dict


@dataclass(frozen=True)
class Defect:
    word: tuple


class ObservationTable:
    """Rows ``S`` and columns ``E`` with cells ``L(s·e)``.

    The cache is keyed by the concatenated word, so two cells denoting the
    same word cost one membership query.
    """

    def __init__(self, oracle: Callable[[tuple], object], alphabet: Sequence[str],
                 semiring: Semiring, use_cache: bool = True):
        self.oracle = oracle
        self.alphabet = tuple(alphabet)
        self.semiring = semiring
        self.use_cache = use_cache
        self.S: list[tuple] = [()]
        self.E: list[tuple] = [()]
        self.cache: dict[tuple, object] = {}
        self.queries = 0
        self.fill()

    # -- cells ------------------------------------------------------------

    def value(self, word: tuple):
        if self.use_cache and word in self.cache:
            return self.cache[word]
        v = self.oracle(word)
        self.queries += 1
        self.cache[word] = v
        return v

    def successors(self) -> list[tuple]:
        """``S·A`` in canonical order: S order, then alphabet order."""
        return [s + (a,) for s in self.S for a in self.alphabet]

    def fill(self) -> None:
        for u in self.S + self.successors():
            for e in self.E:
                self.value(u + e)

    def row(self, s: tuple) -> tuple:
        return tuple(self.value(s + e) for e in self.E)

    srow = row

    # -- growth -----------------------------------------------------------

    def add_row(self, word: tuple) -> None:
        word = tuple(word)
        if word in self.S:
            raise ValueError(f"row {format_word(word)} is already in S")
        self.S.append(word)
        self.fill()

    def add_suffix_columns(self, word: Sequence[str]) -> list[tuple]:
        """Add every suffix of ``word`` to E, shortest first; return the new columns."""
        word = tuple(word)
        added = []
        for k in range(len(word), -1, -1):
            suffix = word[k:]
            if suffix not in self.E:
                self.E.append(suffix)
                added.append(suffix)
        self.fill()
        return added

    # -- closedness -------------------------------------------------------

    def system(self, t: tuple) -> tuple[Matrix, tuple]:
        """The ``|E| x |S|`` system whose columns are the rows of S and whose right side is ``srow(t)``."""
        return Matrix.from_columns(self.semiring, [self.row(s) for s in self.S], len(self.E)), self.srow(t)

    def combination(self, t: tuple, solver: SolverKind | None = None) -> tuple | None:
        A, b = self.system(t)
        return solve(solver or self.semiring.solver, A, b)

    def check_closedness(self, solver: SolverKind | None = None) -> Closed | Defect:
        combos = {}
        for t in self.successors():
            alpha = self.combination(t, solver)
            if alpha is None:
                return Defect(t)
            combos[t] = alpha
        outcome = Closed(combos)
        self.verify(outcome)
        return outcome

    def verify(self, outcome: Closed) -> None:
        s = self.semiring
        rows = [self.row(r) for r in self.S]
        for t, alpha in outcome.combinations.items():
            combined = tuple(s.dot(alpha, col) for col in zip(*rows)) if rows else ()
            if combined != self.srow(t):
                raise AssertionError(f"combination for {format_word(t)} does not reproduce its row")

    # -- measures ---------------------------------------------------------

    def matrix(self) -> Matrix:
        return Matrix(self.semiring, [self.row(s) for s in self.S], len(self.E))

    def rank(self) -> int:
        """Rank of the module spanned by the rows of S (rationals and integers only)."""
        if self.semiring is RAT:
            return rank_over_field(self.matrix())
        if self.semiring is INT:
            return rank_over_pid(self.matrix())
        raise ValueError(f"no rank for semiring {self.semiring.tag!r}")

    # -- display ----------------------------------------------------------

    def render(self) -> str:
        """Rows of S above a rule, the remaining successor rows below it."""
        fmt = self.semiring.format
        lower = [t for t in self.successors() if t not in self.S]
        labels = [format_word(w) for w in self.S + lower]
        width0 = max(len(x) for x in labels)
        header = [format_word(e) for e in self.E]
        cells = [[fmt(v) for v in self.row(w)] for w in self.S + lower]
        widths = [max([len(h)] + [len(r[j]) for r in cells]) for j, h in enumerate(header)]

        def line(label, items):
            return (label.ljust(width0) + " | " + "  ".join(x.ljust(w) for x, w in zip(items, widths))).rstrip()

        rule = "-" * (width0 + 1) + "+" + "-" * (sum(widths) + 2 * len(widths) - 1)
        out = [line("", header), rule]
        out += [line(lbl, c) for lbl, c in zip(labels[:len(self.S)], cells[:len(self.S)])]
        out.append(rule)
        out += [line(lbl, c) for lbl, c in zip(labels[len(self.S):], cells[len(self.S):])]
        return "\n".join(out)


def table_init(oracle, alphabet, semiring) -> ObservationTable:
    return ObservationTable(oracle, alphabet, semiring)


def format_combination(alpha: Sequence, labels: Sequence[tuple], semiring: Semiring) -> str:
    terms = []
    for c, lbl in zip(alpha, labels):
        if semiring.is_zero(c):
            continue
        name = format_word(lbl)
        terms.append(name if c == semiring.one else f"{semiring.format(c)}·{name}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"
