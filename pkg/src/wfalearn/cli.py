"""Command-line front end.

Exit codes: 0 success or equivalent, 1 inequivalent, 2 budget exhausted,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog
from .equiv import EquivalenceError, equiv
from .learner import DEFAULT_BUDGET, BudgetExhausted, Learned, learn
from .linalg import Matrix, check_farkas_certificate, farkas_certificate, nat_solve, smith_normal_form
from .semiring import INT, NAT, get_semiring
from .table import ObservationTable
from .teacher import WfaTeacher
from .wfa import (WfaError, format_word, load_wfa, parse_word, random_wfa, reinterpret,
                  save_wfa, serialize_wfa, to_dict)

EXIT_OK, EXIT_INEQUIVALENT, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3
DEFAULT_SEED = 0


class InputError(Exception):
    pass


def _load(path: str, semiring: str | None = None):
    try:
        w = load_wfa(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except WfaError as exc:
        raise InputError(f"{path}: {exc}") from None
    if semiring:
        try:
            w = reinterpret(w, get_semiring(semiring))
        except (ValueError, WfaError) as exc:
            raise InputError(f"{path}: {exc}") from None
    return w


def cmd_learn(args) -> int:
    target = _load(args.target, args.semiring)
    trace = print if args.trace else None
    result = learn(WfaTeacher(target), budget=args.budget, trace=trace)
    stats = result.stats.to_dict()
    if isinstance(result, Learned):
        learned = result.hypothesis.wfa
        report = {"result": "learned", "stats": stats,
                  "states": [format_word(s) for s in result.hypothesis.state_labels],
                  "wfa": to_dict(learned)}
        if args.out:
            save_wfa(learned, args.out)
    else:
        kind, word = result.pending
        report = {"result": "budget-exhausted", "stats": stats,
                  "S": [format_word(s) for s in result.S], "E": [format_word(e) for e in result.E],
                  "pending": {"kind": kind, "word": list(word)}}
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    elif isinstance(result, Learned):
        print(f"learned {learned.n}-state automaton: defects {stats['defects']}, counterexamples "
              f"{stats['counterexamples']}, membership queries {stats['membership_queries']}, "
              f"equivalence queries {stats['equivalence_queries']}")
        if not args.out:
            print(serialize_wfa(learned))
    else:
        print(f"budget exhausted after {stats['iterations']} steps; |S| = {stats['rows']}, "
              f"|E| = {stats['columns']}; pending {kind} {format_word(word)}")
    return EXIT_OK if isinstance(result, Learned) else EXIT_BUDGET


def cmd_eval(args) -> int:
    w = _load(args.wfa)
    try:
        word = parse_word(args.word, w.alphabet)
    except WfaError as exc:
        raise InputError(str(exc)) from None
    print(w.semiring.format(w.evaluate(word)))
    return EXIT_OK


def cmd_equiv(args) -> int:
    A, B = _load(args.a), _load(args.b)
    try:
        witness = equiv(A, B)
    except EquivalenceError as exc:
        raise InputError(str(exc)) from None
    if witness is None:
        print("equivalent")
        return EXIT_OK
    print(f"witness {format_word(witness.word)}")
    print(f"{args.a}: {A.semiring.format(witness.lhs)}")
    print(f"{args.b}: {B.semiring.format(witness.rhs)}")
    return EXIT_INEQUIVALENT


def _read_matrix(path: str) -> Matrix:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from None
    if (not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data)
            or not all(isinstance(v, int) and not isinstance(v, bool) for r in data for v in r)):
        raise InputError(f"{path}: expected a nonempty JSON array of arrays of integers")
    if len({len(r) for r in data}) != 1:
        raise InputError(f"{path}: rows have different lengths")
    return Matrix(INT, data, len(data[0]))


def cmd_snf(args) -> int:
    snf = smith_normal_form(_read_matrix(args.matrix))
    print(json.dumps({"U": snf.U.tolist(), "D": snf.D.tolist(), "V": snf.V.tolist()}))
    return EXIT_OK


def cmd_demo_nat(args) -> int:
    if args.steps < 1:
        raise InputError("--steps must be at least 1")
    target = catalog.mersenne(NAT)
    trace = print if args.trace else None
    result = learn(WfaTeacher(target), budget=args.steps, trace=trace)

    # Replay the run on a fresh table so each defect can be shown with its system.
    events = [(st.kind, st.word, True) for st in result.stats.steps if st.kind != "init"]
    if isinstance(result, BudgetExhausted):
        events.append(result.pending + (False,))
    table = ObservationTable(WfaTeacher(target).membership, target.alphabet, NAT)
    ok = True
    for k, (kind, word, applied) in enumerate(events, 1):
        if kind == "counterexample":
            print(f"step {k}: counterexample {format_word(word)}")
            if applied:
                table.add_suffix_columns(word)
            continue
        A, b = table.system(word)
        cert = farkas_certificate(A, b)
        confirmed = nat_solve(A, b) is None and cert is not None and check_farkas_certificate(A, b, cert)
        ok = ok and confirmed
        rows = ", ".join(f"row({format_word(s)}) = {_fmt_vec(table.row(s))}" for s in table.S)
        print(f"step {k}: defect {format_word(word)}")
        print(f"  srow({format_word(word)}) = {_fmt_vec(b)} is not a natural combination of {rows}")
        print(f"  confirmed: no natural solution, certificate {_fmt_vec(cert)}" if confirmed
              else "  NOT CONFIRMED")
        if applied:
            table.add_row(word)
    kinds = [kind for kind, _, _ in events]
    if "counterexample" in kinds and "counterexample" in kinds[kinds.index("counterexample") + 1:]:
        ok = False
        print("unexpected: a closedness check succeeded after the counterexample")
    if isinstance(result, BudgetExhausted):
        print(f"budget exhausted, table not closed (|S| = {len(result.S)}, |E| = {len(result.E)})")
    else:
        ok = False
        print("unexpected: the learner terminated")
    return EXIT_OK if ok else EXIT_INEQUIVALENT


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) if isinstance(x, Fraction) else str(int(x)) for x in v) + ")"


def cmd_gen(args) -> int:
    try:
        w = random_wfa(args.semiring, args.states, args.alphabet, bound=args.bound,
                       density=args.density, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.out:
        save_wfa(w, args.out)
    else:
        print(serialize_wfa(w))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wfalearn", description="Exact active learning of weighted automata.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("learn", help="learn the language of a target automaton file")
    q.add_argument("target")
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    q.add_argument("--semiring", choices=["rat", "int", "bool", "nat"],
                   help="reinterpret the target's weights in another semiring")
    q.add_argument("--trace", action="store_true")
    q.add_argument("--json", action="store_true")
    q.add_argument("--out")
    q.set_defaults(func=cmd_learn)

    q = sub.add_parser("eval", help="evaluate an automaton on a word")
    q.add_argument("wfa")
    q.add_argument("word", nargs="?", default="")
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("equiv", help="decide equivalence of two automata")
    q.add_argument("a")
    q.add_argument("b")
    q.set_defaults(func=cmd_equiv)

    q = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    q.add_argument("matrix")
    q.set_defaults(func=cmd_snf)

    q = sub.add_parser("demo-nat", aliases=["demo_nat"],
                       help="run the natural-number learner on a^j -> 2^j - 1")
    q.add_argument("--steps", type=int, default=12)
    q.add_argument("--trace", action="store_true")
    q.set_defaults(func=cmd_demo_nat)

    q = sub.add_parser("gen", help="generate a random automaton")
    q.add_argument("--semiring", choices=["rat", "int", "bool", "nat"], default="int")
    q.add_argument("--states", type=int, default=3)
    q.add_argument("--alphabet", type=int, default=2)
    q.add_argument("--bound", type=int, default=3)
    q.add_argument("--density", type=float, default=0.5)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--out")
    q.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "budget", 1) < 1:
        print("error: --budget must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
