"""Weighted finite automata in matrix form.

A WFA over a semiring has an initial row vector ``i``, an output column
vector ``o`` and one ``n x n`` transition matrix per symbol, where
``M_a[q][q']`` is the weight of ``q --a--> q'``.  Its language maps
``a1...ak`` to ``i · M_a1 ··· M_ak · o``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .linalg import Matrix, vec_mat
from .semiring import BOOL, INT, NAT, RAT, Semiring, embed_to_rationals, get_semiring

Word = tuple  # tuple of symbols (str)

EPSILON = "ε"


class WfaError(ValueError):
    """Invalid automaton, or malformed automaton file; ``path`` names the offending field."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UnknownSymbolError(WfaError):
    pass


@dataclass(frozen=True, eq=False)
class Wfa:
    semiring: Semiring
    alphabet: tuple[str, ...]
    initial: tuple
    output: tuple
    transitions: Mapping[str, Matrix]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "initial", tuple(self.initial))
        object.__setattr__(self, "output", tuple(self.output))
        object.__setattr__(self, "transitions", dict(self.transitions))
        n = len(self.initial)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise WfaError("alphabet contains duplicate symbols", "alphabet")
        if len(self.output) != n:
            raise WfaError(f"expected {n} entries, got {len(self.output)}", "output")
        if set(self.transitions) != set(self.alphabet):
            raise WfaError("transition symbols do not match the alphabet", "transitions")
        for a, m in self.transitions.items():
            if m.shape != (n, n):
                raise WfaError(f"expected a {n}x{n} matrix, got {m.shape[0]}x{m.shape[1]}",
                               f"transitions.{a}")
            if m.semiring is not self.semiring:
                raise WfaError("matrix semiring differs from automaton semiring", f"transitions.{a}")

    @property
    def n(self) -> int:
        return len(self.initial)

    def __eq__(self, other):
        if not isinstance(other, Wfa):
            return NotImplemented
        return (self.semiring is other.semiring and self.alphabet == other.alphabet
                and self.initial == other.initial and self.output == other.output
                and all(self.transitions[a].entries == other.transitions[a].entries
                        for a in self.alphabet)
                and set(self.transitions) == set(other.transitions))

    def matrix(self, symbol: str) -> Matrix:
        try:
            return self.transitions[symbol]
        except KeyError:
            raise UnknownSymbolError(f"unknown symbol {symbol!r}") from None

    def step(self, config: Sequence, symbol: str) -> tuple:
        return vec_mat(config, self.matrix(symbol))

    def reach_config(self, word: Sequence[str]) -> tuple:
        config = self.initial
        for a in word:
            config = self.step(config, a)
        return config

    def obs_value(self, config: Sequence, word: Sequence[str]):
        if len(config) != self.n:
            raise WfaError(f"configuration has length {len(config)}, expected {self.n}")
        for a in word:
            config = self.step(config, a)
        return self.semiring.dot(config, self.output)

    def evaluate(self, word: Sequence[str]):
        return self.obs_value(self.initial, word)

    __call__ = evaluate


def make_wfa(semiring: Semiring, alphabet: Sequence[str], initial: Sequence, output: Sequence,
             transitions: Mapping[str, Sequence[Sequence]]) -> Wfa:
    """Build a WFA from raw Python values, coercing them into ``semiring``."""
    n = len(initial)
    c = semiring.coerce
    return Wfa(semiring, tuple(alphabet), tuple(c(v) for v in initial), tuple(c(v) for v in output),
               {a: Matrix(semiring, [[c(v) for v in row] for row in transitions[a]], n)
                for a in alphabet})


def evaluate(w: Wfa, word: Sequence[str]):
    return w.evaluate(word)


def reach_config(w: Wfa, word: Sequence[str]) -> tuple:
    return w.reach_config(word)


def obs_value(w: Wfa, config: Sequence, word: Sequence[str]):
    return w.obs_value(config, word)


def embed_wfa(w: Wfa) -> Wfa:
    """Reinterpret an integer or natural automaton over the rationals."""
    if w.semiring is RAT:
        return w
    if w.semiring not in (INT, NAT):
        raise WfaError(f"cannot embed a {w.semiring.tag!r} automaton into the rationals")
    return Wfa(RAT, w.alphabet, tuple(map(embed_to_rationals, w.initial)),
               tuple(map(embed_to_rationals, w.output)),
               {a: m.map(embed_to_rationals, RAT) for a, m in w.transitions.items()})


def reinterpret(w: Wfa, semiring: Semiring) -> Wfa:
    """Move every weight into another semiring, failing if some weight is not representable there."""
    if semiring is w.semiring:
        return w
    src = w.semiring

    def conv(v):
        return semiring.coerce(src.to_json(v))

    try:
        return Wfa(semiring, w.alphabet, tuple(map(conv, w.initial)), tuple(map(conv, w.output)),
                   {a: m.map(conv, semiring) for a, m in w.transitions.items()})
    except (TypeError, ValueError) as exc:
        raise WfaError(f"weights not representable under {semiring.tag!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Words

def format_word(word: Sequence[str]) -> str:
    if not word:
        return EPSILON
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return " ".join(word)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse ``text`` into a word over ``alphabet``.

    Whitespace separates symbols when present; otherwise single-character
    symbols are read one character at a time.  ``""`` and ``"ε"`` are the
    empty word.
    """
    text = text.strip()
    if text in ("", EPSILON):
        return ()
    parts = text.split() if any(ch.isspace() for ch in text) else (
        list(text) if all(len(a) == 1 for a in alphabet) else [text])
    for p in parts:
        if p not in alphabet:
            raise UnknownSymbolError(f"unknown symbol {p!r}")
    return tuple(parts)


def words_up_to(alphabet: Sequence[str], length: int):
    """All words of length <= ``length`` in length-then-lexicographic order."""
    layer = [()]
    for _ in range(length + 1):
        yield from layer
        layer = [w + (a,) for w in layer for a in alphabet]


# ---------------------------------------------------------------------------
# JSON

def to_dict(w: Wfa) -> dict:
    j = w.semiring.to_json
    return {
        "semiring": w.semiring.tag,
        "alphabet": list(w.alphabet),
        "states": w.n,
        "initial": [j(v) for v in w.initial],
        "output": [j(v) for v in w.output],
        "transitions": {a: [[j(v) for v in row] for row in w.transitions[a].entries]
                        for a in w.alphabet},
    }


def serialize_wfa(w: Wfa, indent: int | None = 2) -> str:
    return json.dumps(to_dict(w), indent=indent, ensure_ascii=False)


def _coerce_at(semiring: Semiring, raw, path: str):
    try:
        return semiring.coerce(raw)
    except (TypeError, ValueError) as exc:
        raise WfaError(str(exc), path) from None


def _vector(semiring: Semiring, raw, n: int, path: str) -> tuple:
    if not isinstance(raw, list):
        raise WfaError("expected a list", path)
    if len(raw) != n:
        raise WfaError(f"dimension mismatch: expected {n} entries, got {len(raw)}", path)
    return tuple(_coerce_at(semiring, v, f"{path}[{i}]") for i, v in enumerate(raw))


def from_dict(data) -> Wfa:
    if not isinstance(data, dict):
        raise WfaError("expected a JSON object")
    for key in ("semiring", "alphabet", "states", "initial", "output", "transitions"):
        if key not in data:
            raise WfaError("missing field", key)
    try:
        semiring = get_semiring(data["semiring"])
    except (ValueError, TypeError) as exc:
        raise WfaError(str(exc), "semiring") from None
    alphabet = data["alphabet"]
    if not isinstance(alphabet, list) or not all(isinstance(a, str) and a for a in alphabet):
        raise WfaError("expected a list of nonempty strings", "alphabet")
    n = data["states"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise WfaError("expected a nonnegative integer", "states")
    initial = _vector(semiring, data["initial"], n, "initial")
    output = _vector(semiring, data["output"], n, "output")
    trans = data["transitions"]
    if not isinstance(trans, dict):
        raise WfaError("expected an object", "transitions")
    extra = set(trans) - set(alphabet)
    if extra:
        raise WfaError(f"symbols not in the alphabet: {sorted(extra)}", "transitions")
    mats = {}
    for a in alphabet:
        path = f"transitions.{a}"
        if a not in trans:
            raise WfaError("missing matrix", path)
        rows = trans[a]
        if not isinstance(rows, list) or len(rows) != n:
            raise WfaError(f"dimension mismatch: expected {n} rows", path)
        mats[a] = Matrix(semiring, [_vector(semiring, r, n, f"{path}[{i}]")
                                    for i, r in enumerate(rows)], n)
    return Wfa(semiring, tuple(alphabet), initial, output, mats)


def parse_wfa(text: str) -> Wfa:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WfaError(f"malformed JSON: {exc}") from None
    return from_dict(data)


def load_wfa(path: str | Path) -> Wfa:
    return parse_wfa(Path(path).read_text(encoding="utf-8"))


def save_wfa(w: Wfa, path: str | Path) -> None:
    Path(path).write_text(serialize_wfa(w) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# Random automata

def _random_weight(rng: random.Random, semiring: Semiring, bound: int, nonzero: bool):
    if semiring is BOOL:
        return True if nonzero else rng.random() < 0.5
    if semiring is NAT:
        return NAT.coerce(rng.randint(1 if nonzero else 0, bound))
    if semiring is INT:
        v = rng.randint(-bound, bound - 1 if nonzero else bound)
        return v + 1 if nonzero and v >= 0 else v
    if semiring is RAT:
        num = rng.randint(-bound, bound - 1 if nonzero else bound)
        if nonzero and num >= 0:
            num += 1
        return Fraction(num, rng.randint(1, bound))
    raise ValueError(f"no random generator for semiring {semiring.tag!r}")


def random_wfa(tag: str, n: int, alphabet_size: int, bound: int = 3, density: float = 0.5,
               seed: int = 0) -> Wfa:
    """Random automaton: each transition is present with probability ``density``.

    Present transitions get a nonzero weight drawn uniformly within
    ``bound`` (numerators in ``[-bound, bound]`` and denominators in
    ``[1, bound]`` for rationals); initial and output weights may be zero.
    """
    semiring = get_semiring(tag)
    if n < 1:
        raise ValueError("random_wfa needs at least one state")
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    if not 1 <= alphabet_size <= 26:
        raise ValueError("alphabet size must be between 1 and 26")
    if bound < 1:
        raise ValueError("weight bound must be at least 1")
    rng = random.Random(seed)
    alphabet = tuple(chr(ord("a") + k) for k in range(alphabet_size))
    initial = tuple(_random_weight(rng, semiring, bound, False) for _ in range(n))
    output = tuple(_random_weight(rng, semiring, bound, False) for _ in range(n))
    transitions = {}
    for a in alphabet:
        rows = [[_random_weight(rng, semiring, bound, True) if rng.random() < density else semiring.zero
                 for _ in range(n)] for _ in range(n)]
        transitions[a] = Matrix(semiring, rows, n)
    return Wfa(semiring, alphabet, initial, output, transitions)
