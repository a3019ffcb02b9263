"""Exact active learning of weighted finite automata over the rationals, integers, Booleans and naturals."""

from .equiv import Witness, equiv
from .learner import BudgetExhausted, Learned, learn
from .semiring import BOOL, INT, NAT, RAT, get_semiring
from .teacher import AdversarialTeacher, WfaTeacher
from .wfa import Wfa, evaluate, load_wfa, make_wfa, parse_wfa, random_wfa, serialize_wfa

__all__ = [
    "BOOL", "INT", "NAT", "RAT", "AdversarialTeacher", "BudgetExhausted", "Learned", "Wfa",
    "WfaTeacher", "Witness", "equiv", "evaluate", "get_semiring", "learn", "load_wfa", "make_wfa",
    "parse_wfa", "random_wfa", "serialize_wfa",
]
