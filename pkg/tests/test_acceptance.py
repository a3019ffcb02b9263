"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (with timing)
straight to the terminal, then asserts.
"""

import random
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from wfalearn import catalog
from wfalearn.equiv import cross_equiv, equiv
from wfalearn.learner import BudgetExhausted, Learned, learn
from wfalearn.linalg import (Matrix, check_farkas_certificate, farkas_certificate, mat_vec,
                             nat_solve, pid_solve, smith_normal_form)
from wfalearn.semiring import INT, NAT, RAT, SolverKind
from wfalearn.table import ObservationTable
from wfalearn.teacher import AdversarialTeacher, WfaTeacher
from wfalearn.wfa import embed_wfa, evaluate, obs_value, random_wfa, reach_config, reinterpret

from corpus import equivalence_pairs, learning_targets
from oracles import det, first_difference, minors_gcd, nat_dfs, obs_rec, random_word, reach_rec

GOLDEN = Path(__file__).resolve().parent / "golden" / "mersenne_trace.txt"
AAA = ("a",) * 3


class Criterion:
    def __init__(self, number, limit, capsys):
        self.number, self.limit, self.capsys = number, limit, capsys
        self.failures = []

    def check(self, ok, message):
        if not ok:
            self.failures.append(message)
        return ok

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if self.limit is not None and elapsed >= self.limit:
            self.failures.append(f"took {elapsed:.2f}s, limit {self.limit}s")
        verdict = "PASS" if not self.failures else "FAIL"
        limit = f" (limit {self.limit}s)" if self.limit is not None else ""
        detail = "" if not self.failures else " : " + "; ".join(self.failures[:3])
        with self.capsys.disabled():
            print(f"\ncriterion {self.number}: {verdict} in {elapsed:.2f}s{limit}{detail}")
        if exc_type is None:
            assert not self.failures, self.failures
        return False


# -- 1 and 2: the worked run over the rationals and the integers ---------------

class RecordingTeacher(WfaTeacher):
    def __init__(self, target):
        super().__init__(target)
        self.hypotheses = []

    def equivalence(self, hypothesis):
        self.hypotheses.append(hypothesis)
        return super().equivalence(hypothesis)


def traced(semiring):
    lines = []
    teacher = RecordingTeacher(catalog.mersenne(semiring))
    result = learn(teacher, trace=lines.append)
    return result, lines, teacher.hypotheses


def check_worked_run(c, semiring):
    result, lines, hypotheses = traced(semiring)
    text = "\n".join(lines) + "\n"
    c.check(text == GOLDEN.read_text(encoding="utf-8"), "trace differs from the golden file")
    c.check(lines == traced(semiring)[1], "trace not stable across runs")
    c.check(lines[0] == "== iteration 1 ==", "first line")
    c.check("not closed: srow(a) is not a combination of rows in S" in lines, "initial defect at a")
    c.check("  cs(aa) = 3·a" in lines, "first closing combination")
    c.check("equivalence query: counterexample aaa (hypothesis 9, target 7)" in lines, "counterexample")
    c.check("add columns a, aa, aaa" in lines, "suffixes of aaa")
    c.check("  cs(aa) = -2·ε + 3·a" in lines, "second closing combination")
    c.check(lines[-1] == "equivalence query: equivalent", "final answer")
    c.check(isinstance(result, Learned), "result")
    h = result.hypothesis.wfa
    c.check(h == reinterpret(catalog.second_hypothesis(RAT), semiring), "final hypothesis")
    c.check(cross_equiv(h, catalog.mersenne(NAT)) is None, "final hypothesis language")
    st = result.stats
    c.check((st.defects, st.counterexamples, st.equivalence_queries, st.rows, st.columns) == (1, 1, 2, 2, 4),
            "statistics")
    expected = [reinterpret(catalog.first_hypothesis(RAT), semiring), h]
    c.check(hypotheses == expected, "hypotheses differ from A1, A2")
    c.check(hypotheses[0].evaluate(AAA) == 9 and catalog.mersenne(semiring).evaluate(AAA) == 7,
            "counterexample values")


def test_criterion_1_rational_worked_run(capsys):
    with Criterion(1, 1.0, capsys) as c:
        c.check(RAT.solver is SolverKind.FIELD_GAUSSIAN, "rational solver")
        check_worked_run(c, RAT)


def test_criterion_2_integer_worked_run(capsys):
    with Criterion(2, 1.0, capsys) as c:
        c.check(INT.solver is SolverKind.PID_SMITH, "integer solver")
        check_worked_run(c, INT)
        result = learn(WfaTeacher(catalog.mersenne(INT)))
        c.check(equiv(embed_wfa(result.hypothesis.wfa), embed_wfa(catalog.mersenne(INT))) is None,
                "equivalence under the embedding")


# -- 3: no convergence over the naturals ----------------------------------------

def test_criterion_3_natural_numbers_never_close(capsys):
    with Criterion(3, 5.0, capsys) as c:
        target = catalog.mersenne(NAT)
        result = learn(WfaTeacher(target), budget=12)
        c.check(isinstance(result, BudgetExhausted), "budget not exhausted")
        steps = result.stats.steps
        kinds = [s.kind for s in steps]
        c.check(kinds[:3] == ["init", "defect", "counterexample"], f"opening steps {kinds[:3]}")
        c.check(result.stats.counterexamples == 1, "exactly one counterexample")
        c.check(all(k == "defect" for k in kinds[3:]) and result.pending[0] == "defect",
                "a closedness check succeeded after the counterexample")
        defects = [s.word for s in steps if s.kind == "defect"] + [result.pending[1]]
        c.check(defects == [("a",) * j for j in range(1, 12)], "defect words are a, aa, ..., a^11")
        c.check(result.S == tuple(("a",) * j for j in range(11)), "S grows by one power of a")

        # replay and confirm every failed system independently
        table = ObservationTable(target.evaluate, target.alphabet, NAT)
        confirmed = brute = 0
        for kind, word in [(s.kind, s.word) for s in steps[1:]] + [result.pending]:
            if kind == "counterexample":
                table.add_suffix_columns(word)
                continue
            A, b = table.system(word)
            cert = farkas_certificate(A, b)
            ok = cert is not None and check_farkas_certificate(A, b, cert) and nat_solve(A, b) is None
            columns = [tuple(map(int, col)) for col in A.columns()]
            if len(columns) <= 4:
                ok = ok and nat_dfs(columns, tuple(map(int, b))) is None
                brute += 1
            confirmed += ok
            if word != result.pending[1]:
                table.add_row(word)
        c.check(confirmed == 11, f"{confirmed} of 11 defects confirmed")
        c.check(brute >= 4, "plain search covered the small systems")


# -- 4: random learning runs ---------------------------------------------------

@lru_cache(maxsize=None)
def random_runs(tag):
    runs = []
    for k, target in learning_targets(tag, 100):
        runs.append((target, learn(WfaTeacher(target), budget=500)))
    for k, target in learning_targets(tag, 50, offset=100):
        runs.append((target, learn(AdversarialTeacher(target, seed=k), budget=500)))
    return runs


def test_criterion_4_termination(capsys):
    with Criterion(4, 120.0, capsys) as c:
        for tag in ("rat", "int", "bool"):
            runs = random_runs(tag)
            c.check(len(runs) >= 100, f"{tag}: only {len(runs)} targets")
            learned = [(t, r) for t, r in runs if isinstance(r, Learned)]
            c.check(len(learned) == len(runs), f"{tag}: {len(runs) - len(learned)} runs did not finish")
            bad = sum(equiv(r.hypothesis.wfa, t) is not None for t, r in learned)
            c.check(bad == 0, f"{tag}: {bad} learned automata are not equivalent")
            if tag == "rat":
                over = sum(r.stats.rows > t.n for t, r in learned)
                c.check(over == 0, f"rat: {over} runs with |S| above the state count")


# -- 5: Smith normal form -------------------------------------------------------

def test_criterion_5_smith_normal_form(capsys):
    with Criterion(5, 30.0, capsys) as c:
        rng = random.Random(2024)
        for _ in range(500):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            A = Matrix(INT, [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)])
            snf = smith_normal_form(A)
            D = snf.D
            c.check((snf.U @ A @ snf.V).entries == D.entries, "U·A·V != D")
            c.check(abs(det(snf.U.entries)) == 1 and abs(det(snf.V.entries)) == 1, "not unimodular")
            c.check(all(D[i, j] == 0 for i in range(m) for j in range(n) if i != j), "not diagonal")
            diag = [D[i, i] for i in range(min(m, n))]
            nz = [d for d in diag if d]
            c.check(diag[:len(nz)] == nz and all(b % a == 0 for a, b in zip(nz, nz[1:])), "divisibility")
            prod = 1
            for k in range(1, min(m, n) + 1):
                prod *= diag[k - 1]
                c.check(prod == minors_gcd(A.entries, k), "determinantal divisors")
        solved = 0
        for _ in range(500):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            A = Matrix(INT, [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)])
            b = mat_vec(A, [rng.randint(-20, 20) for _ in range(n)])
            x = pid_solve(A, b)
            solved += x is not None and mat_vec(A, x) == b
        c.check(solved == 500, f"pid_solve solved {solved} of 500 planted systems")


# -- 6: equivalence against brute force -----------------------------------------

def test_criterion_6_equivalence_oracle(capsys):
    with Criterion(6, 60.0, capsys) as c:
        for tag in ("rat", "int", "bool", "nat"):
            count = 0
            for A, B in equivalence_pairs(tag, 300):
                expected = first_difference(A, B, A.n + B.n)
                got = equiv(A, B)
                c.check((got is None) == (expected is None), f"{tag}: verdict differs")
                if got is not None:
                    c.check(got.word == expected, f"{tag}: witness {got.word} is not the least {expected}")
                    c.check(got.lhs == evaluate(A, got.word) and got.rhs == evaluate(B, got.word)
                            and got.lhs != got.rhs, f"{tag}: witness values")
                count += 1
            c.check(count >= 300, f"{tag}: only {count} pairs")


# -- 7: rank as a progress measure, over the runs of criterion 4 ---------------

def test_criterion_7_rank_progress(capsys):
    with Criterion(7, None, capsys) as c:
        for tag in ("rat", "int"):
            for target, r in random_runs(tag):
                steps = r.stats.steps
                ranks = [s.rank for s in steps]
                c.check(ranks == sorted(ranks), f"{tag}: rank decreased")
                c.check(max(ranks) <= target.n, f"{tag}: rank above the state count")
                if tag == "rat":
                    for prev, step in zip(steps, steps[1:]):
                        if step.kind == "defect":
                            c.check(step.rank > prev.rank, "rat: defect fix without rank increase")
                hyp = r.stats.ranks
                c.check(all(a < b for a, b in zip(hyp, hyp[1:])),
                        f"{tag}: rank did not grow between hypotheses {hyp}")
                c.check(len(hyp) == r.stats.counterexamples + 1, "one hypothesis per counterexample")


# -- 8: matrix semantics against the recursive definitions ----------------------

def test_criterion_8_semantics_oracle(capsys):
    with Criterion(8, 10.0, capsys) as c:
        for tag in ("rat", "int", "bool", "nat"):
            rng = random.Random(8)
            pairs = 0
            for seed in range(250):
                aut = random_wfa(tag, 1 + seed % 4, 1 + seed % 2, bound=3,
                                 density=(0.3, 0.6, 1.0)[seed % 3], seed=seed)
                for _ in range(4):
                    u = random_word(rng, aut.alphabet, 7)
                    value = evaluate(aut, u)
                    c.check(reach_config(aut, u) == reach_rec(aut, u), f"{tag}: reach differs")
                    c.check(value == obs_rec(aut, aut.initial, u), f"{tag}: obs differs")
                    c.check(value == obs_value(aut, reach_config(aut, u), ()), f"{tag}: reach then obs")
                    if tag in ("int", "nat"):
                        c.check(evaluate(embed_wfa(aut), u) == Fraction(value), f"{tag}: embedding")
                    pairs += 1
            c.check(pairs >= 1000, f"{tag}: only {pairs} pairs")
