"""Exact language equivalence with shortest counterexamples.

Both procedures explore words breadth-first in length-then-lexicographic
order (lexicographic by alphabet position), so the returned witness is the
least differing word in that order.  ``None`` means equivalent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .linalg import Matrix, gaussian_solve
from .semiring import BOOL, INT, NAT, RAT
from .wfa import Wfa, WfaError, embed_wfa


class EquivalenceError(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    word: tuple
    lhs: object
    rhs: object


def _check_alphabets(A: Wfa, B: Wfa) -> None:
    if A.alphabet != B.alphabet:
        raise EquivalenceError(f"alphabet mismatch: {list(A.alphabet)} vs {list(B.alphabet)}")


def _checked(A: Wfa, B: Wfa, word: tuple) -> Witness:
    lhs, rhs = A.evaluate(word), B.evaluate(word)
    if lhs == rhs:
        raise AssertionError(f"spurious witness {word!r}: both automata give {lhs!r}")
    return Witness(word, lhs, rhs)


def field_equiv(A: Wfa, B: Wfa, stats: dict | None = None) -> Witness | None:
    """Decide equivalence of two rational automata.

    Runs the difference automaton (``A`` with initial vector ``i_A`` beside
    ``B`` with ``-i_B``) and keeps a linearly independent set of reached
    configurations; configurations already spanned are not expanded.
    """
    _check_alphabets(A, B)
    if A.semiring is not RAT or B.semiring is not RAT:
        raise EquivalenceError("field_equiv needs two automata over 'rat'")
    nA, nB = A.n, B.n
    size = nA + nB
    output = A.output + B.output

    def step(config, a):
        return A.step(config[:nA], a) + B.step(config[nA:], a)

    root = A.initial + tuple(-v for v in B.initial)
    basis: list[tuple] = []
    queue = deque([((), root)])
    while queue:
        word, config = queue.popleft()
        if basis and gaussian_solve(Matrix.from_columns(RAT, basis, size), config) is not None:
            continue
        if not basis and all(v == 0 for v in config):
            continue
        if RAT.dot(config, output) != 0:
            return _checked(A, B, word)
        basis.append(config)
        if len(basis) > size:
            raise AssertionError("spanning set exceeds the combined state count")
        if stats is not None:
            stats["basis"] = len(basis)
        for a in A.alphabet:
            queue.append((word + (a,), step(config, a)))
    return None


def bool_equiv(A: Wfa, B: Wfa) -> Witness | None:
    """Decide equivalence of two Boolean automata (NFAs) by a joint subset construction."""
    _check_alphabets(A, B)
    if A.semiring is not BOOL or B.semiring is not BOOL:
        raise EquivalenceError("bool_equiv needs two automata over 'bool'")

    def accepts(w: Wfa, states: frozenset) -> bool:
        return any(w.output[q] for q in states)

    def post(w: Wfa, states: frozenset, a: str) -> frozenset:
        m = w.transitions[a].entries
        return frozenset(q2 for q in states for q2 in range(w.n) if m[q][q2])

    start = (frozenset(q for q in range(A.n) if A.initial[q]),
             frozenset(q for q in range(B.n) if B.initial[q]))
    seen = {start}
    queue = deque([((), start)])
    while queue:
        word, (P, Q) = queue.popleft()
        if accepts(A, P) != accepts(B, Q):
            return _checked(A, B, word)
        for a in A.alphabet:
            nxt = (post(A, P, a), post(B, Q, a))
            if nxt not in seen:
                seen.add(nxt)
                queue.append((word + (a,), nxt))
    return None


def equiv(A: Wfa, B: Wfa) -> Witness | None:
    """Equivalence for automata over the same semiring.

    Integer and natural automata are compared after embedding into the
    rationals, which preserves and reflects their languages.  Witness values
    are reported in the original semiring.
    """
    if A.semiring is not B.semiring:
        raise EquivalenceError(f"semiring mismatch: {A.semiring.tag!r} vs {B.semiring.tag!r}")
    _check_alphabets(A, B)
    s = A.semiring
    if s is BOOL:
        return bool_equiv(A, B)
    if s is RAT:
        return field_equiv(A, B)
    if s in (INT, NAT):
        w = field_equiv(embed_wfa(A), embed_wfa(B))
        return None if w is None else _checked(A, B, w.word)
    raise EquivalenceError(f"no equivalence procedure for semiring {s.tag!r}")


def cross_equiv(A: Wfa, B: Wfa) -> Witness | None:
    """Like :func:`equiv`, but allows mixing 'rat', 'int' and 'nat' automata (compared over 'rat')."""
    if A.semiring is B.semiring:
        return equiv(A, B)
    try:
        eA, eB = embed_wfa(A), embed_wfa(B)
    except WfaError as exc:
        raise EquivalenceError(str(exc)) from None
    w = field_equiv(eA, eB)
    return None if w is None else _checked(A, B, w.word)

