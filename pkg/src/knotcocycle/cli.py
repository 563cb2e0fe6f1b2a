"""Batch front-end: verifications, relation sets, integrals, JSON reports.

Every subcommand emits a single machine-readable report:

``{"command": ..., "inputs": {..., "digest": sha256}, "verdicts": {name:
"pass"|"fail"|"skip"}, "outputs": {...}}``

Reports are byte-stable across runs for identical inputs; wall time is
only included when ``--timing`` is passed, since it would break that
stability.  Exit status: 0 when no verdict fails, 1 when any verdict
fails, 2 on input errors or unknown subcommands.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .diagrams import enumerate_v_diagrams
from .integrals import (
    QuadratureConfig,
    eval_functional,
    experiment_commute,
    kontsevich_z,
    reduced_gramain_oracle,
    vector_to_json,
    weight_functionals,
    z1,
    z_hat,
)
from .kzforms import prufer_tree, tree_form_sign
from .morse import (
    KnotPath,
    MorseKnot,
    NotMorseError,
    gramain,
    knot_from_json,
    load_knot_fixture,
    path_from_json,
)
from .ratlinalg import RatMatrix, rank, row_space_equal
from .relations import (
    RelatorSet,
    relation_matrix,
    relator_set_to_json,
    relators_16t_28t,
    relators_1t,
    relators_2t,
    relators_4x4t,
    is_weight_system,
    standard_4t_relators,
    weight_system_basis,
)
from .vassiliev import calibrated_tree_relations, verify_appendix_c

__all__ = ["main"]


class InputError(Exception):
    """A problem with the command line or an input file (exit status 2)."""


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _load_knot(spec: str) -> Tuple[MorseKnot, Dict[str, str]]:
    """A knot from a JSON file path or a shipped fixture name."""

    p = Path(spec)
    if p.is_file():
        raw = p.read_bytes()
        try:
            knot = knot_from_json(json.loads(raw))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read knot from {spec}: {exc}") from exc
        return knot, {"knot": spec, "knotSha256": _sha256(raw)}
    try:
        return load_knot_fixture(spec), {"knotFixture": spec}
    except FileNotFoundError:
        raise InputError(f"no such knot file or fixture: {spec}") from None


def _load_path(spec: str) -> Tuple[KnotPath, Dict[str, str]]:
    p = Path(spec)
    if not p.is_file():
        raise InputError(f"no such path file: {spec}")
    raw = p.read_bytes()
    try:
        path = path_from_json(json.loads(raw))
    except (NotMorseError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read path from {spec}: {exc}") from exc
    return path, {"path": spec, "pathSha256": _sha256(raw)}


def _load_quad(spec: Optional[str]) -> Tuple[QuadratureConfig, dict]:
    if spec is None:
        quad = QuadratureConfig()
    else:
        p = Path(spec)
        if not p.is_file():
            raise InputError(f"no such quadrature config: {spec}")
        try:
            quad = QuadratureConfig.from_json(json.loads(p.read_text()))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"cannot read quadrature config from {spec}: {exc}") from exc
    return quad, quad.to_json()


def _imag_within_error(vectors) -> bool:
    return all(
        abs(c.imag) <= 10.0 * v.err.get(d, 0.0) + 1e-12
        for v in vectors
        for d, c in v.coeffs.items()
    )


def _relators_annihilated(v, max_degree: int) -> bool:
    tol = 10.0 * v.max_err() + 1e-12
    for degree in (2, 3):
        if degree > max_degree:
            continue
        matrix, basis, _ = relation_matrix(degree)
        for row in matrix.rows:
            val = sum(complex(c) * v[basis[j]] for j, c in row.items())
            if abs(val) > tol:
                return False
    return True


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (inputs, verdicts, outputs)
# ---------------------------------------------------------------------------


def _cmd_verify_appendix(args) -> Tuple[dict, dict, dict]:
    report = verify_appendix_c(args.fixture_dir)
    verdicts = {check["name"]: _verdict(check["ok"]) for check in report["checks"]}
    outputs = {"ranks": report["ranks"]}
    inputs = {"fixtureDir": args.fixture_dir or "shipped"}
    return inputs, verdicts, outputs


_FIXED_DEGREE_FAMILIES = {"4T": 2, "16T": 3, "28T": 3, "4x4T": 4}
_EXPECTED_TERMS = {"1T": 1, "2T": 2, "16T": 16, "28T": 28, "4x4T": 16}


def _cmd_relations(args) -> Tuple[dict, dict, dict]:
    family, degree = args.family, args.degree
    fixed = _FIXED_DEGREE_FAMILIES.get(family)
    if fixed is not None:
        if degree is not None and degree != fixed:
            raise InputError(f"family {family} lives in degree {fixed}")
        degree = fixed
    elif degree is None:
        raise InputError(f"--degree is required for family {family}")
    elif degree < 2:
        raise InputError("relator families start in degree 2")

    if family == "1T":
        rs = relators_1t(degree)
    elif family == "2T":
        rs = relators_2t(degree)
    elif family == "4T":
        rs = RelatorSet(
            degree=2,
            family="4T",
            basis=enumerate_v_diagrams(2),
            relators=standard_4t_relators(),
        )
    elif family == "4x4T":
        rs = relators_4x4t()
    else:
        sixteen, twenty_eight = relators_16t_28t()
        rs = sixteen if family == "16T" else twenty_eight

    rs.matrix()  # raises if a relator leaves the declared basis
    term_sums = rs.slotted if rs.slotted is not None else rs.relators
    counts = sorted(len(s.items()) for s in term_sums)
    verdicts = {
        "relatorsOverBasis": "pass",
        "nonEmpty": _verdict(len(rs.relators) > 0),
    }
    expected = _EXPECTED_TERMS.get(family)
    if expected is not None:
        verdicts["relatorTermCounts"] = _verdict(all(c == expected for c in counts))
    outputs = {
        "count": len(rs.relators),
        "termCounts": counts,
        "relatorSet": relator_set_to_json(rs),
    }
    inputs = {"family": family, "degree": degree}
    return inputs, verdicts, outputs


def _cmd_weights(args) -> Tuple[dict, dict, dict]:
    degree = args.degree
    if degree < 2:
        raise InputError("weight systems start in degree 2")
    basis = enumerate_v_diagrams(degree)
    index = {d: i for i, d in enumerate(basis)}
    ws = weight_system_basis(degree)
    rows = [
        sorted([index[d], str(Fraction(c))] for d, c in w.items())
        for w in ws
    ]
    verdicts = {
        "annihilatesRelators": _verdict(all(is_weight_system(w, degree) for w in ws)),
    }
    outputs = {"degree": degree, "dimension": len(ws), "basisRows": rows}
    return {"degree": degree}, verdicts, outputs


def _cmd_curvature(args) -> Tuple[dict, dict, dict]:
    if args.strands != 4:
        raise InputError("the curvature cross-check is built for four strands")
    data = calibrated_tree_relations()
    curv = data["curvature"]
    flips = sorted(data["flips"])
    sixteen, twenty_eight = data["sixteen"], data["twentyEight"]
    counts16 = sorted(len(s.items()) for s in sixteen.slotted)
    counts28 = sorted(len(s.items()) for s in twenty_eight.slotted)
    # the rows eliminated from the calibrated splitting: transpose-kernel
    # combinations of the flipped matrix
    derived = RatMatrix.from_rows(
        [
            {j: v for j, v in enumerate(data["tilde"].row_times(list(vec))) if v}
            for vec in data["kernelT"]
        ],
        data["tilde"].n_cols,
    )
    verdicts = {
        "curvatureShape": _verdict((curv.n_rows, curv.n_cols) == (16, 72)),
        "curvatureRank": _verdict(rank(curv) == 6),
        "flipSetSize": _verdict(len(flips) == 3),
        "rowSpaceEqual": _verdict(row_space_equal(derived, curv)),
        "termSplit": _verdict(counts16 == [16] * 3 and counts28 == [28] * 3),
    }
    outputs = {
        "rank": rank(curv),
        "flips": flips,
        "sixteenTermCounts": counts16,
        "twentyEightTermCounts": counts28,
    }
    return {"strands": 4}, verdicts, outputs


def _cmd_tree_lemma(args) -> Tuple[dict, dict, dict]:
    if args.max_p < 2:
        raise InputError("--max-p must be at least 2")
    counts: Dict[str, int] = {}
    ok = True
    for p in range(2, args.max_p + 1):
        seqs = itertools.product(range(1, p + 1), repeat=max(p - 2, 0))
        n = 0
        for seq in seqs:
            try:
                sign = tree_form_sign(prufer_tree(list(seq), p), p)
            except ValueError:
                ok = False
                break
            if sign not in (1, -1):
                ok = False
                break
            n += 1
        counts[str(p)] = n
        if not ok:
            break
    verdicts = {"proportionalAllTrees": _verdict(ok)}
    return {"maxP": args.max_p}, verdicts, {"treeCounts": counts}


def _cmd_z(args) -> Tuple[dict, dict, dict]:
    knot, inputs = _load_knot(args.knot)
    quad, quad_json = _load_quad(args.quad)
    raw = kontsevich_z(knot, max_degree=args.max_degree, quad=quad)
    hat = z_hat(knot, max_degree=args.max_degree, quad=quad)
    verdicts = {"imagWithinError": _verdict(_imag_within_error([raw, hat]))}
    outputs = {"raw": vector_to_json(raw), "corrected": vector_to_json(hat)}
    inputs.update({"maxDegree": args.max_degree, "quad": quad_json})
    return inputs, verdicts, outputs


def _cmd_z1(args) -> Tuple[dict, dict, dict]:
    if args.mode == "gramain":
        if args.knot is None:
            raise InputError("z1 gramain requires --knot")
        knot, inputs = _load_knot(args.knot)
        path = gramain(knot)
        inputs["loop"] = "gramain"
    else:
        if args.path is None:
            raise InputError("z1 requires --path (or the gramain mode with --knot)")
        path, inputs = _load_path(args.path)
    quad, quad_json = _load_quad(args.quad)
    v = z1(path, max_degree=args.max_degree, quad=quad)
    verdicts = {
        "imagWithinError": _verdict(_imag_within_error([v])),
        "relatorsAnnihilated": _verdict(_relators_annihilated(v, args.max_degree)),
    }
    outputs = {"vector": vector_to_json(v)}
    inputs.update({"maxDegree": args.max_degree, "quad": quad_json})
    return inputs, verdicts, outputs


def _cmd_consistency(args) -> Tuple[dict, dict, dict]:
    knot, inputs = _load_knot(args.knot)
    quad, quad_json = _load_quad(args.quad)
    v = z1(gramain(knot), quad=quad)
    oracle = reduced_gramain_oracle(knot, quad=quad)
    table: List[dict] = []
    ok = True
    max_diff = 0.0
    for w in weight_functionals(3):
        got = eval_functional(w, v)
        want = eval_functional(w, oracle)
        diff = abs(got - want)
        max_diff = max(max_diff, diff)
        if diff > 5e-3 * max(abs(want), 1e-6):
            ok = False
        table.append(
            {
                "z1": [got.real, got.imag],
                "oracle": [want.real, want.imag],
                "absDiff": diff,
            }
        )
    verdicts = {"oracleAgreement": _verdict(ok)}
    outputs = {"functionals": table, "maxAbsDiff": max_diff}
    inputs.update({"comparison": "gramain", "quad": quad_json})
    return inputs, verdicts, outputs


def _cmd_experiment(args) -> Tuple[dict, dict, dict]:
    path, inputs = _load_path(args.path)
    quad, quad_json = _load_quad(args.quad)
    report = experiment_commute(path, max_degree=args.max_degree, quad=quad)
    # the commutation question is open: the report carries the numbers but
    # no verdict is asserted either way
    verdicts = {"commuteWithinError": "skip"}
    outputs = {
        "maxDegree": report["max_degree"],
        "maxCoeffDiff": report["max_coeff_diff"],
        "err": report["err"],
        "commuteWithinErr": report["commute_within_err"],
    }
    inputs.update({"experiment": "commute", "maxDegree": args.max_degree, "quad": quad_json})
    return inputs, verdicts, outputs


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotcocycle",
        description="diagram-relation verifications and knot/cocycle integrals",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to a file instead of stdout")
    common.add_argument(
        "--timing",
        action="store_true",
        help="include wall time in the report (breaks byte-stability)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "verify-appendix",
        parents=[common],
        help="check computed boundary matrices against the printed fixtures",
    )
    p.add_argument("--fixture-dir", help="override the fixture directory")
    p.set_defaults(handler=_cmd_verify_appendix)

    p = sub.add_parser("relations", parents=[common], help="generate a relator family")
    p.add_argument(
        "--family",
        required=True,
        choices=["1T", "2T", "4T", "16T", "28T", "4x4T"],
    )
    p.add_argument("--degree", type=int)
    p.set_defaults(handler=_cmd_relations)

    p = sub.add_parser("weights", parents=[common], help="weight-system basis of a degree")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=_cmd_weights)

    p = sub.add_parser(
        "curvature", parents=[common], help="curvature cross-check of the sign calibration"
    )
    p.add_argument("--strands", type=int, default=4)
    p.set_defaults(handler=_cmd_curvature)

    p = sub.add_parser(
        "tree-lemma", parents=[common], help="tree wedge proportionality, exhaustively"
    )
    p.add_argument("--max-p", type=int, default=6)
    p.set_defaults(handler=_cmd_tree_lemma)

    p = sub.add_parser("z", parents=[common], help="the knot integral of a Morse knot")
    p.add_argument("--knot", required=True, help="knot JSON file or fixture name")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--quad", help="quadrature config JSON file")
    p.set_defaults(handler=_cmd_z)

    p = sub.add_parser("z1", parents=[common], help="the one-cocycle integral of a path")
    p.add_argument("mode", nargs="?", choices=["gramain"])
    p.add_argument("--path", help="path JSON file")
    p.add_argument("--knot", help="knot JSON file or fixture name (gramain mode)")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--quad", help="quadrature config JSON file")
    p.set_defaults(handler=_cmd_z1)

    p = sub.add_parser(
        "consistency", parents=[common], help="rotation loop against the reduced oracle"
    )
    p.add_argument("mode", choices=["gramain"])
    p.add_argument("--knot", required=True, help="knot JSON file or fixture name")
    p.add_argument("--quad", help="quadrature config JSON file")
    p.set_defaults(handler=_cmd_consistency)

    p = sub.add_parser(
        "experiment", parents=[common], help="open-question experiments (report only)"
    )
    p.add_argument("mode", choices=["commute"])
    p.add_argument("--path", required=True, help="path JSON file")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--quad", help="quadrature config JSON file")
    p.set_defaults(handler=_cmd_experiment)

    return parser


def _digest(command: str, inputs: dict) -> str:
    payload = json.dumps({"command": command, "inputs": inputs}, sort_keys=True)
    return _sha256(payload.encode())


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return 0 if exc.code in (0, None) else 2

    started = time.perf_counter()
    try:
        inputs, verdicts, outputs = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    wall = time.perf_counter() - started

    report = {
        "command": args.command,
        "inputs": {**inputs, "digest": _digest(args.command, inputs)},
        "verdicts": verdicts,
        "outputs": outputs,
    }
    if args.timing:
        report["wallTimeSeconds"] = wall
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 1 if any(v == "fail" for v in verdicts.values()) else 0


if __name__ == "__main__":  # pragma: no cover - exercised via the console script
    raise SystemExit(main())
