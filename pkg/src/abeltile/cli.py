"""Command-line front end.

Problems arrive as JSON files, verdicts leave as deterministic single-line
JSON on stdout (sorted keys, no whitespace) so that byte comparison works —
only the timing_ms field varies between runs.  Exit codes are the contract
for scripting::

    0  YES / check passed
    1  NO / check failed
    2  UNKNOWN (budget exhausted)
    3  malformed input
    4  capacity cap refused the instance

Problem file schema (all sections except "group" and "f" optional)::

    {
      "group":    {"free_rank": 2, "torsion": [2, 4]},
      "f":        [{"elem": [0, 0], "coeff": 1}, ...],
      "g":        {"period": 2, "values": [1, 1, 1, 1]},
      "a":        {"period": 2, "values": [1, -1, 1, -1]},
      "cert":     {"q": 2, "bits": [1, 0, 1, 0]},
      "budget":   {"max_q": 12, "max_box_radius": 6, "max_nodes": 200000},
      "dilation": {"q": 2, "r_list": [3, 5]}
    }

"values"/"bits" may be flat (row-major over the fundamental domain) or a list
of rows; torsion coordinates may exceed their modulus and are canonicalized.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .annihilator import (
    decide_level_shift,
    decide_zero_annihilator,
    verify_annihilator,
)
from .cyclotomic import enumerate_minimal_tuples
from .errors import BudgetExceededError, CapacityError, InputError
from .groups import FinMap, GroupSpec, PeriodicMap, convolve_periodic
from .multitile import SearchBudget, TorusAssignment, decide_multitile, verify_multitile
from .qzlinear import RationalMod1
from .structure import coset_slice, dilation_check

__all__ = ["ProblemFile", "parse_problem", "run", "main"]


@dataclass(frozen=True)
class ProblemFile:
    group: GroupSpec
    f: FinMap
    g: Optional[PeriodicMap] = None
    a: Optional[PeriodicMap] = None
    cert: Optional[TorusAssignment] = None
    budget: SearchBudget = SearchBudget()
    dilation: Optional[Tuple[int, Tuple[int, ...]]] = None


# ---------------------------------------------------------------------------
# parsing


def _want(obj, path: str, kind, what: str):
    if not isinstance(obj, kind) or isinstance(obj, bool):
        raise InputError(f"{path}: expected {what}, got {obj!r}")
    return obj


def _want_int(obj, path: str, minimum: Optional[int] = None) -> int:
    _want(obj, path, int, "an integer")
    if minimum is not None and obj < minimum:
        raise InputError(f"{path}: expected an integer >= {minimum}, got {obj}")
    return obj


def _flat_ints(obj, path: str) -> List[int]:
    _want(obj, path, list, "a list")
    if obj and all(isinstance(row, list) for row in obj):
        flat: List[int] = []
        for i, row in enumerate(obj):
            flat.extend(_want_int(v, f"{path}[{i}][{j}]") for j, v in enumerate(row))
        return flat
    if any(isinstance(row, list) for row in obj):
        raise InputError(f"{path}: mixes rows and scalars")
    return [_want_int(v, f"{path}[{i}]") for i, v in enumerate(obj)]


def _parse_group(obj) -> GroupSpec:
    _want(obj, "group", dict, "an object")
    extra = set(obj) - {"free_rank", "torsion"}
    if extra:
        raise InputError(f"group: unknown field {sorted(extra)[0]!r}")
    free_rank = _want_int(obj.get("free_rank", 0), "group.free_rank", 0)
    torsion = obj.get("torsion", [])
    _want(torsion, "group.torsion", list, "a list")
    torsion = tuple(
        _want_int(n, f"group.torsion[{i}]", 1) for i, n in enumerate(torsion)
    )
    return GroupSpec(free_rank, torsion)


def _parse_finmap(obj, group: GroupSpec, path: str) -> FinMap:
    _want(obj, path, list, "a list of terms")
    pairs = []
    for i, term in enumerate(obj):
        _want(term, f"{path}[{i}]", dict, "an object")
        extra = set(term) - {"elem", "coeff"}
        if extra:
            raise InputError(f"{path}[{i}]: unknown field {sorted(extra)[0]!r}")
        if "elem" not in term or "coeff" not in term:
            raise InputError(f"{path}[{i}]: needs 'elem' and 'coeff'")
        elem = _want(term["elem"], f"{path}[{i}].elem", list, "a coordinate list")
        if len(elem) != group.rank:
            raise InputError(
                f"{path}[{i}].elem: expected {group.rank} coordinates, got {len(elem)}"
            )
        coords = tuple(
            _want_int(c, f"{path}[{i}].elem[{j}]") for j, c in enumerate(elem)
        )
        coeff = _want_int(term["coeff"], f"{path}[{i}].coeff")
        pairs.append((coords, coeff))
    return FinMap(group, pairs)


def _parse_periodic(obj, group: GroupSpec, path: str) -> PeriodicMap:
    _want(obj, path, dict, "an object")
    extra = set(obj) - {"period", "values"}
    if extra:
        raise InputError(f"{path}: unknown field {sorted(extra)[0]!r}")
    if "period" not in obj or "values" not in obj:
        raise InputError(f"{path}: needs 'period' and 'values'")
    period = _want_int(obj["period"], f"{path}.period", 1)
    values = _flat_ints(obj["values"], f"{path}.values")
    expected = group.domain_size(period)
    if len(values) != expected:
        raise InputError(
            f"{path}.values: expected {expected} values for period {period}, "
            f"got {len(values)}"
        )
    return PeriodicMap(group, period, values)


def _parse_cert(obj, path: str) -> TorusAssignment:
    _want(obj, path, dict, "an object")
    extra = set(obj) - {"q", "bits"}
    if extra:
        raise InputError(f"{path}: unknown field {sorted(extra)[0]!r}")
    if "q" not in obj or "bits" not in obj:
        raise InputError(f"{path}: needs 'q' and 'bits'")
    q = _want_int(obj["q"], f"{path}.q", 1)
    bits = _flat_ints(obj["bits"], f"{path}.bits")
    if len(bits) != q * q:
        raise InputError(f"{path}.bits: expected {q * q} bits, got {len(bits)}")
    return TorusAssignment(q, tuple(bits))


def _parse_budget(obj) -> SearchBudget:
    if obj is None:
        return SearchBudget()
    _want(obj, "budget", dict, "an object")
    base = SearchBudget()
    known = {"max_q", "max_box_radius", "max_nodes"}
    extra = set(obj) - known
    if extra:
        raise InputError(f"budget: unknown field {sorted(extra)[0]!r}")
    kwargs = {
        name: _want_int(obj[name], f"budget.{name}", 1)
        for name in known
        if name in obj
    }
    return SearchBudget(**{**base.__dict__, **kwargs})


def _parse_dilation(obj) -> Tuple[int, Tuple[int, ...]]:
    _want(obj, "dilation", dict, "an object")
    extra = set(obj) - {"q", "r_list"}
    if extra:
        raise InputError(f"dilation: unknown field {sorted(extra)[0]!r}")
    if "q" not in obj or "r_list" not in obj:
        raise InputError("dilation: needs 'q' and 'r_list'")
    q = _want_int(obj["q"], "dilation.q", 1)
    rl = _want(obj["r_list"], "dilation.r_list", list, "a list")
    r_list = tuple(_want_int(r, f"dilation.r_list[{i}]", 1) for i, r in enumerate(rl))
    return q, r_list


def parse_problem(text: str) -> ProblemFile:
    """Validated ProblemFile, or InputError naming the offending location."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    _want(obj, "problem", dict, "a JSON object")
    known = {"group", "f", "g", "a", "cert", "budget", "dilation"}
    extra = set(obj) - known
    if extra:
        raise InputError(f"unknown top-level field {sorted(extra)[0]!r}")
    if "group" not in obj:
        raise InputError("missing required section 'group'")
    if "f" not in obj:
        raise InputError("missing required section 'f'")
    group = _parse_group(obj["group"])
    f = _parse_finmap(obj["f"], group, "f")
    g = _parse_periodic(obj["g"], group, "g") if "g" in obj else None
    a = _parse_periodic(obj["a"], group, "a") if "a" in obj else None
    cert = _parse_cert(obj["cert"], "cert") if "cert" in obj else None
    budget = _parse_budget(obj.get("budget"))
    dilation = _parse_dilation(obj["dilation"]) if "dilation" in obj else None
    return ProblemFile(group, f, g, a, cert, budget, dilation)


def _load(path: str) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read problem file: {e}") from None
    return parse_problem(text)


# ---------------------------------------------------------------------------
# serialization helpers


def _rat(r: RationalMod1) -> str:
    return f"{r.numerator}/{r.denominator}"


def _finmap_json(f: FinMap) -> list:
    return [
        {"elem": list(x), "coeff": f.coeff(x)} for x in f.support()
    ]


def _parse_vec(text: str, flag: str) -> Tuple[int, int]:
    parts = text.split(",")
    try:
        vec = tuple(int(p.strip()) for p in parts)
    except ValueError:
        raise InputError(f"{flag}: expected integers like '1,0', got {text!r}") from None
    if len(vec) != 2:
        raise InputError(f"{flag}: expected exactly two coordinates, got {text!r}")
    return vec  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_decide_zero(ns) -> Tuple[dict, int]:
    problem = _load(ns.problem)
    verdict = decide_zero_annihilator(problem.group, problem.f, cap=ns.cap_n)
    payload = {"command": ns.command, "answer": verdict.answer}
    if verdict.is_yes:
        chi = verdict.witness_character
        wit = verdict.witness_map
        payload["certificate"] = {
            "character": [_rat(e) for e in chi.etas],
            "witness": {"period": wit.period, "values": list(wit.values)},
            "blocks": [
                {
                    "terms": list(b.term_indices),
                    "omega": [_rat(o) for o in b.omega],
                    "xi0": _rat(b.xi0),
                }
                for b in verdict.partition_trace
            ],
        }
    return payload, 0 if verdict.is_yes else 1


def _cmd_decide_levelshift(ns) -> Tuple[dict, int]:
    problem = _load(ns.problem)
    verdict = decide_level_shift(problem.group, problem.f, cap=ns.cap_n)
    payload = {"command": ns.command, "answer": verdict.answer}
    if verdict.is_yes:
        wit = verdict.witness_map
        payload["certificate"] = {
            "character": [_rat(e) for e in verdict.witness_character.etas],
            "witness": {"period": wit.period, "values": list(wit.values)},
        }
    return payload, 0 if verdict.is_yes else 1


def _cmd_decide_multitile(ns) -> Tuple[dict, int]:
    problem = _load(ns.problem)
    if problem.g is None:
        raise InputError("decide-multitile needs a 'g' section")
    budget = problem.budget
    overrides = {}
    if ns.max_q is not None:
        overrides["max_q"] = ns.max_q
    if ns.max_box is not None:
        overrides["max_box_radius"] = ns.max_box
    if ns.budget_nodes is not None:
        overrides["max_nodes"] = ns.budget_nodes
    if overrides:
        budget = SearchBudget(**{**budget.__dict__, **overrides})
    verdict = decide_multitile(problem.f, problem.g, budget)
    payload = {
        "command": ns.command,
        "answer": verdict.answer,
        "nodes_used": verdict.nodes_used,
    }
    if verdict.answer == "YES":
        payload["certificate"] = {
            "q": verdict.certificate.q,
            "bits": list(verdict.certificate.bits),
        }
        if ns.render:
            print(verdict.certificate.render(), file=sys.stderr)
        return payload, 0
    if verdict.answer == "NO":
        payload["refutation_box_radius"] = verdict.refutation_box_radius
        return payload, 1
    payload["budget_note"] = verdict.budget_note
    return payload, 2


def _cmd_verify(ns) -> Tuple[dict, int]:
    problem = _load(ns.problem)
    if problem.g is not None:
        if problem.cert is not None:
            ok = verify_multitile(problem.f, problem.g, problem.cert)
            mode = "tiling-certificate"
        elif problem.a is not None:
            ok = convolve_periodic(problem.f, problem.a).equals(problem.g)
            mode = "tiling"
        else:
            raise InputError("verify with 'g' needs an 'a' or 'cert' section")
    else:
        if problem.a is None:
            raise InputError("verify needs an 'a' section (annihilator mode)")
        ok = verify_annihilator(problem.f, problem.a)
        mode = "annihilator"
    payload = {
        "command": ns.command,
        "answer": "PASS" if ok else "FAIL",
        "mode": mode,
    }
    return payload, 0 if ok else 1


def _cmd_omega(ns) -> Tuple[dict, int]:
    tuples = enumerate_minimal_tuples(ns.k, cap=ns.cap)
    payload = {
        "command": ns.command,
        "answer": "OK",
        "k": ns.k,
        "tuples": [[_rat(e) for e in t.entries] for t in tuples],
    }
    return payload, 0


def _cmd_dilate_check(ns) -> Tuple[dict, int]:
    problem = _load(ns.problem)
    if problem.a is None or problem.g is None or problem.dilation is None:
        raise InputError("dilate-check needs 'a', 'g', and 'dilation' sections")
    q, r_list = problem.dilation
    report = dilation_check(problem.f, problem.a, problem.g, q, r_list)
    payload = {
        "command": ns.command,
        "answer": "PASS" if report.all_pass else "FAIL",
        "q": report.q,
        "results": [{"r": r, "pass": ok} for r, ok in report.results],
    }
    return payload, 0 if report.all_pass else 1


def _cmd_slice(ns) -> Tuple[dict, int]:
    problem = _load(ns.problem)
    w = _parse_vec(ns.w, "--w")
    x = _parse_vec(ns.x, "--x")
    part = coset_slice(problem.f, x, w)
    payload = {
        "command": ns.command,
        "answer": "OK",
        "slice": _finmap_json(part),
    }
    return payload, 0


# ---------------------------------------------------------------------------
# driver


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit codes ours, not argparse's
        raise InputError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="abeltile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--json-out", metavar="PATH", help="also write the verdict here")
        return p

    p = add("decide-zero", _cmd_decide_zero, help="does f*a = 0 have a non-zero solution?")
    p.add_argument("problem")
    p.add_argument("--cap-n", type=int, default=8, help="l1-norm capacity cap")

    p = add("decide-levelshift", _cmd_decide_levelshift,
            help="does f*a = const have a non-constant solution?")
    p.add_argument("problem")
    p.add_argument("--cap-n", type=int, default=8, help="l1-norm capacity cap")

    p = add("decide-multitile", _cmd_decide_multitile,
            help="does some A in Z² satisfy f*1_A = g?")
    p.add_argument("problem")
    p.add_argument("--budget-nodes", type=int, help="node cap per search attempt")
    p.add_argument("--max-q", type=int, help="largest torus side to try")
    p.add_argument("--max-box", type=int, help="largest refutation radius to try")
    p.add_argument("--render", action="store_true",
                   help="draw a YES certificate on stderr")

    p = add("verify", _cmd_verify, help="re-check a certificate against its problem")
    p.add_argument("problem")

    p = add("omega", _cmd_omega, help="canonical minimal vanishing phase tuples")
    p.add_argument("--k", type=int, required=True, help="tuple length")
    p.add_argument("--cap", type=int, default=6, help="largest allowed k")

    p = add("dilate-check", _cmd_dilate_check,
            help="is f*a = g stable under support dilation?")
    p.add_argument("problem")

    p = add("slice", _cmd_slice, help="restrict f to a line x + Zw")
    p.add_argument("problem")
    p.add_argument("--w", required=True, help="direction vector, e.g. '1,0'")
    p.add_argument("--x", required=True, help="base point, e.g. '0,0'")

    return parser


def _emit(payload: dict, started: float, json_out: Optional[str]) -> None:
    payload["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    print(text)
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def run(argv: Sequence[str]) -> int:
    started = time.perf_counter()
    json_out = None
    command = None
    try:
        ns = _build_parser().parse_args(list(argv))
        json_out = ns.json_out
        command = ns.command
        payload, code = ns.fn(ns)
    except InputError as e:
        _emit({"command": command, "answer": "ERROR", "error": str(e)}, started, json_out)
        return 3
    except CapacityError as e:
        _emit({"command": command, "answer": "ERROR", "error": str(e)}, started, json_out)
        return 4
    except BudgetExceededError as e:
        _emit({"command": command, "answer": "UNKNOWN", "error": str(e)}, started, json_out)
        return 2
    _emit(payload, started, json_out)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
