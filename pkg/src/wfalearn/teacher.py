"""Teachers answer membership and equivalence queries about a hidden target."""

from __future__ import annotations

import random
from typing import Protocol

from .equiv import cross_equiv
from .semiring import Semiring
from .wfa import Wfa, format_word


class Teacher(Protocol):
    """Query interface seen by the learner."""

    semiring: Semiring
    alphabet: tuple[str, ...]

    def membership(self, word: tuple): ...

    def equivalence(self, hypothesis: Wfa) -> tuple | None:
        """Return ``None`` if the hypothesis is correct, else a counterexample word."""
        ...


class WfaTeacher:
    """Exact teacher backed by a target automaton.

    Counterexamples are the shortest differing words in length-then-lexicographic order.
    """

    def __init__(self, target: Wfa, log_words: bool = False):
        self._target = target
        self.semiring = target.semiring
        self.alphabet = target.alphabet
        self.membership_queries = 0
        self.equivalence_queries = 0
        self.word_log: list[tuple] | None = [] if log_words else None

    def membership(self, word: tuple):
        value = self._target.evaluate(word)
        self.membership_queries += 1
        if self.word_log is not None:
            self.word_log.append(tuple(word))
        return value

    def _shortest(self, hypothesis: Wfa):
        return cross_equiv(hypothesis, self._target)

    def equivalence(self, hypothesis: Wfa) -> tuple | None:
        self.equivalence_queries += 1
        witness = self._shortest(hypothesis)
        if witness is None:
            return None
        return self._checked(hypothesis, witness.word)

    def _checked(self, hypothesis: Wfa, word: tuple) -> tuple:
        if hypothesis.evaluate(word) == self._target.evaluate(word):
            raise AssertionError(f"teacher produced a non-counterexample {format_word(word)}")
        return word


class AdversarialTeacher(WfaTeacher):
    """Returns the shortest witness extended by a random suffix, when that is still a counterexample.

    Suffixes of length up to ``max_extra`` are tried ``tries`` times; if none
    works the shortest witness is returned unchanged.
    """

    def __init__(self, target: Wfa, seed: int = 0, max_extra: int = 4, tries: int = 20,
                 log_words: bool = False):
        super().__init__(target, log_words)
        self.rng = random.Random(seed)
        self.max_extra = max_extra
        self.tries = tries

    def equivalence(self, hypothesis: Wfa) -> tuple | None:
        self.equivalence_queries += 1
        witness = self._shortest(hypothesis)
        if witness is None:
            return None
        for _ in range(self.tries):
            extra = tuple(self.rng.choice(self.alphabet)
                          for _ in range(self.rng.randint(1, self.max_extra)))
            word = witness.word + extra
            if hypothesis.evaluate(word) != self._target.evaluate(word):
                return self._checked(hypothesis, word)
        return self._checked(hypothesis, witness.word)

