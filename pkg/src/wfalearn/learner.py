"""The learning loop: close the table, hypothesise, ask for equivalence, add counterexample suffixes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .linalg import Matrix
from .semiring import INT, RAT, SolverKind
from .table import Closed, ObservationTable, format_combination
from .teacher import Teacher
from .wfa import Wfa, format_word

DEFAULT_BUDGET = 500


@dataclass(frozen=True)
class Hypothesis:
    wfa: Wfa
    state_labels: tuple[tuple, ...]


@dataclass(frozen=True)
class Step:
    kind: str  # "init", "defect" or "counterexample"
    word: tuple | None
    rank: int | None  # table rank after the step was applied


@dataclass
class LearnerStats:
    iterations: int = 0
    defects: int = 0
    counterexamples: int = 0
    membership_queries: int = 0
    equivalence_queries: int = 0
    rows: int = 0
    columns: int = 0
    # table rank each time a hypothesis is built, and after every applied step
    ranks: list = field(default_factory=list)
    steps: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "defects": self.defects,
            "counterexamples": self.counterexamples,
            "membership_queries": self.membership_queries,
            "equivalence_queries": self.equivalence_queries,
            "rows": self.rows,
            "columns": self.columns,
            "ranks": list(self.ranks),
            "steps": [{"kind": s.kind, "word": None if s.word is None else list(s.word), "rank": s.rank}
                      for s in self.steps],
        }


@dataclass(frozen=True)
class Learned:
    hypothesis: Hypothesis
    stats: LearnerStats


@dataclass(frozen=True)
class BudgetExhausted:
    stats: LearnerStats
    S: tuple
    E: tuple
    pending: tuple  # (kind, word) of the event that hit the budget


def build_hypothesis(table: ObservationTable, closed: Closed) -> Hypothesis:
    """States are the rows of S; the transition from ``s`` on ``a`` is the combination for ``sa``."""
    s = table.semiring
    S = list(table.S)
    n = len(S)
    eps = S.index(())
    initial = tuple(s.one if k == eps else s.zero for k in range(n))
    output = tuple(table.value(w) for w in S)
    transitions = {a: Matrix(s, [closed.combinations[w + (a,)] for w in S], n) for a in table.alphabet}
    return Hypothesis(Wfa(s, table.alphabet, initial, output, transitions), tuple(S))


def describe_hypothesis(h: Hypothesis) -> list[str]:
    w = h.wfa
    s = w.semiring
    names = [format_word(x) for x in h.state_labels]
    lines = [f"hypothesis with {w.n} state{'s' if w.n != 1 else ''}"]
    for k, name in enumerate(names):
        init = "" if s.is_zero(w.initial[k]) else f"initial {s.format(w.initial[k])}, "
        lines.append(f"  state {name}: {init}output {s.format(w.output[k])}")
    for k, name in enumerate(names):
        for a in w.alphabet:
            for k2, weight in enumerate(w.transitions[a].row(k)):
                if not s.is_zero(weight):
                    lines.append(f"  {name} --{a}--> {names[k2]}  {s.format(weight)}")
    return lines


def learn(teacher: Teacher, solver: SolverKind | None = None, budget: int = DEFAULT_BUDGET,
          trace: Callable[[str], None] | None = None) -> Learned | BudgetExhausted:
    """Run the learner against ``teacher``.

    Each closedness defect and each counterexample consumes one budget unit.
    The event that consumes the last unit is reported but not applied, and
    the run ends with :class:`BudgetExhausted`.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    semiring = teacher.semiring
    solver = solver or semiring.solver
    emit = trace or (lambda line: None)
    table = ObservationTable(teacher.membership, teacher.alphabet, semiring)
    stats = LearnerStats()
    has_rank = semiring in (RAT, INT)

    def rank():
        return table.rank() if has_rank else None

    def sync():
        stats.membership_queries = table.queries
        stats.rows, stats.columns = len(table.S), len(table.E)

    def spend(kind, word):
        stats.iterations += 1
        sync()
        if stats.iterations >= budget:
            emit(f"budget of {budget} exhausted at {kind} {format_word(word)}")
            return BudgetExhausted(stats, tuple(table.S), tuple(table.E), (kind, word))
        return None

    stats.steps.append(Step("init", None, rank()))
    outer = 0
    while True:
        outer += 1
        emit(f"== iteration {outer} ==")
        emit(table.render())
        while True:
            outcome = table.check_closedness(solver)
            if isinstance(outcome, Closed):
                break
            t = outcome.word
            emit(f"not closed: srow({format_word(t)}) is not a combination of rows in S")
            stop = spend("defect", t)
            if stop:
                return stop
            table.add_row(t)
            stats.defects += 1
            stats.steps.append(Step("defect", t, rank()))
            emit(f"add row {format_word(t)}")
            emit(table.render())

        emit("closed")
        for t, alpha in outcome.combinations.items():
            emit(f"  cs({format_word(t)}) = {format_combination(alpha, table.S, semiring)}")
        hyp = build_hypothesis(table, outcome)
        stats.ranks.append(rank())
        for line in describe_hypothesis(hyp):
            emit(line)

        cex = teacher.equivalence(hyp.wfa)
        stats.equivalence_queries += 1
        if cex is None:
            emit("equivalence query: equivalent")
            sync()
            return Learned(hyp, stats)
        cex = tuple(cex)
        emit(f"equivalence query: counterexample {format_word(cex)} "
             f"(hypothesis {semiring.format(hyp.wfa.evaluate(cex))}, "
             f"target {semiring.format(table.value(cex))})")
        stop = spend("counterexample", cex)
        if stop:
            return stop
        added = table.add_suffix_columns(cex)
        stats.counterexamples += 1
        stats.steps.append(Step("counterexample", cex, rank()))
        emit("add columns " + (", ".join(format_word(e) for e in added) if added else "(none)"))
