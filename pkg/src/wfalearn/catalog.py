"""Small named automata used by the demos, fixtures and tests."""

from __future__ import annotations

from .semiring import NAT, RAT, Semiring, get_semiring
from .wfa import Wfa, make_wfa


def two_state_example(semiring: Semiring | str = RAT) -> Wfa:
    """States with outputs 2 and 3; ``q0`` loops with 1 and moves to ``q1`` with 1, ``q1`` loops with 2."""
    if isinstance(semiring, str):
        semiring = get_semiring(semiring)
    return make_wfa(semiring, ["a"], [1, 0], [2, 3], {"a": [[1, 1], [0, 2]]})


def mersenne(semiring: Semiring | str = NAT) -> Wfa:
    """Two-state automaton over ``{a}`` whose language is ``a^j -> 2^j - 1``."""
    if isinstance(semiring, str):
        semiring = get_semiring(semiring)
    return make_wfa(semiring, ["a"], [1, 0], [0, 1], {"a": [[1, 1], [0, 2]]})


def first_hypothesis(semiring: Semiring | str = RAT) -> Wfa:
    """The hypothesis learned before the first counterexample for :func:`mersenne` (``a^j -> 3^(j-1)``)."""
    if isinstance(semiring, str):
        semiring = get_semiring(semiring)
    return make_wfa(semiring, ["a"], [1, 0], [0, 1], {"a": [[0, 1], [0, 3]]})


def second_hypothesis(semiring: Semiring | str = RAT) -> Wfa:
    """The final learned automaton for :func:`mersenne`; it needs the weight -2."""
    if isinstance(semiring, str):
        semiring = get_semiring(semiring)
    return make_wfa(semiring, ["a"], [1, 0], [0, 1], {"a": [[0, 1], [-2, 3]]})
