"""Command-line front end: load problems from JSON, run checks, build recoveries.

Problem file format (UTF-8 JSON). A matrix is a row-major list of rows;
every entry is a two-element ``[re, im]`` pair. Floats round-trip exactly
(shortest-repr decimal serialization). Composite indices are A-major: the
embedding's column ``k * n + i`` is the product basis vector
``|alpha_k>|beta_i>``.

    {
      "dim": 8,
      "tol": 1e-9,                          // optional, default 1e-9
      "kraus": [ <matrix>, ... ],           // noise operators, dim x dim
      "decomposition": {                    // optional for `check cptp`
        "embedding": <dim x (m*n) matrix>,  // isometry
        "m": 1,
        "n": 2
      },
      "recovery": [ <matrix>, ... ]         // optional, dim x dim
    }

Exit codes: 0 condition holds, 1 condition fails, 2 usage/parse/IO error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channel import QuantumChannel, channels_equal, identity_channel, is_cptp
from .codes import SubsystemDecomposition, classify
from .conditions import (
    check_correctable_triple,
    check_kl,
    check_ns_algebraic,
    check_opalg_correct,
    check_oqec,
)
from .matops import DEFAULT_TOL
from .recovery import NotCorrectableError, build_oqec_recovery, build_standard_recovery
from .report import CheckReport

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


class ProblemFormatError(ValueError):
    """Malformed problem file (bad JSON, ragged rows, inconsistent dimensions)."""


@dataclass
class Problem:
    dim: int
    tol: float
    channel: QuantumChannel
    decomposition: SubsystemDecomposition | None
    recovery: QuantumChannel | None


# ---------------------------------------------------------------------------
# parsing / serialization


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _entry_to_complex(entry, where: str) -> complex:
    if (
        not isinstance(entry, (list, tuple))
        or len(entry) != 2
        or not all(_is_number(part) for part in entry)
    ):
        raise ProblemFormatError(f"{where}: entry must be a [re, im] pair of numbers, got {entry!r}")
    return complex(entry[0], entry[1])


def matrix_from_json(obj, where: str, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Parse one row-major [re, im]-pair matrix, with positional diagnostics."""
    if not isinstance(obj, list) or not obj:
        raise ProblemFormatError(f"{where}: expected a non-empty list of rows")
    if rows is not None and len(obj) != rows:
        raise ProblemFormatError(f"{where}: expected {rows} rows, got {len(obj)}")
    width = None
    out = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise ProblemFormatError(f"{where}, row {i}: expected a non-empty list of entries")
        if width is None:
            width = len(row)
            if cols is not None and width != cols:
                raise ProblemFormatError(f"{where}, row {i}: expected {cols} entries, got {width}")
        elif len(row) != width:
            raise ProblemFormatError(
                f"{where}, row {i}: ragged row ({len(row)} entries, expected {width})"
            )
        out.append([_entry_to_complex(e, f"{where}, row {i}, col {j}") for j, e in enumerate(row)])
    return np.array(out, dtype=complex)


def matrix_to_json(mat: np.ndarray) -> list:
    """Encode a matrix as row-major [re, im] pairs."""
    mat = np.asarray(mat, dtype=complex)
    return [[[float(e.real), float(e.imag)] for e in row] for row in mat]


def _complex_array_to_json(arr: np.ndarray):
    # Nested lists with innermost [re, im]; used for the extracted scalar tensors.
    arr = np.asarray(arr, dtype=complex)
    if arr.ndim == 0:
        return [float(arr.real), float(arr.imag)]
    return [_complex_array_to_json(sub) for sub in arr]


def load_problem(path: str | Path) -> Problem:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ProblemFormatError(f"{path}: top level must be an object")

    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ProblemFormatError(f"{path}: 'dim' must be a positive integer")

    tol = data.get("tol", DEFAULT_TOL)
    if not _is_number(tol) or tol <= 0:
        raise ProblemFormatError(f"{path}: 'tol' must be a positive number")

    kraus_obj = data.get("kraus")
    if not isinstance(kraus_obj, list) or not kraus_obj:
        raise ProblemFormatError(f"{path}: 'kraus' must be a non-empty list of matrices")
    kraus = [
        matrix_from_json(mat, f"kraus[{i}]", rows=dim, cols=dim)
        for i, mat in enumerate(kraus_obj)
    ]

    decomposition = None
    if "decomposition" in data:
        dobj = data["decomposition"]
        if not isinstance(dobj, dict):
            raise ProblemFormatError(f"{path}: 'decomposition' must be an object")
        m, n = dobj.get("m"), dobj.get("n")
        for name, value in (("m", m), ("n", n)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ProblemFormatError(f"{path}: decomposition '{name}' must be a positive integer")
        embedding = matrix_from_json(
            dobj.get("embedding"), "decomposition embedding", rows=dim, cols=m * n
        )
        try:
            decomposition = SubsystemDecomposition.from_embedding(embedding, m, n)
        except ValueError as exc:
            raise ProblemFormatError(f"{path}: bad decomposition: {exc}") from exc

    recovery = None
    if "recovery" in data:
        robj = data["recovery"]
        if not isinstance(robj, list) or not robj:
            raise ProblemFormatError(f"{path}: 'recovery' must be a non-empty list of matrices")
        recovery_ops = [
            matrix_from_json(mat, f"recovery[{i}]", rows=dim, cols=dim)
            for i, mat in enumerate(robj)
        ]
        recovery = QuantumChannel.from_kraus(recovery_ops)

    return Problem(
        dim=dim,
        tol=float(tol),
        channel=QuantumChannel.from_kraus(kraus),
        decomposition=decomposition,
        recovery=recovery,
    )


def problem_to_dict(
    dim: int,
    kraus,
    decomposition: SubsystemDecomposition | None = None,
    recovery=None,
    tol: float | None = None,
) -> dict:
    data: dict = {"dim": dim}
    if tol is not None:
        data["tol"] = tol
    data["kraus"] = [matrix_to_json(op) for op in kraus]
    if decomposition is not None:
        data["decomposition"] = {
            "embedding": matrix_to_json(decomposition.embedding),
            "m": decomposition.m,
            "n": decomposition.n,
        }
    if recovery is not None:
        data["recovery"] = [matrix_to_json(op) for op in recovery]
    return data


def _list_depth(obj) -> int:
    if isinstance(obj, list):
        return 1 + max((_list_depth(e) for e in obj), default=0)
    return 0


def _dump_json(obj, pad: str = "") -> str:
    # Keep matrix rows on single lines; floats serialize via repr (lossless).
    if isinstance(obj, dict):
        inner = ",\n".join(
            f'{pad}  {json.dumps(key)}: {_dump_json(value, pad + "  ")}'
            for key, value in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, list) and _list_depth(obj) > 2:
        inner = ",\n".join(f"{pad}  {_dump_json(e, pad + '  ')}" for e in obj)
        return "[\n" + inner + "\n" + pad + "]"
    return json.dumps(obj)


def save_problem(path: str | Path, data: dict) -> None:
    Path(path).write_text(_dump_json(data) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# reports


def _report_payload(rep: CheckReport) -> dict:
    payload = {
        "condition": rep.condition.value,
        "verdict": rep.verdict,
        "residual": rep.residual,
        "threshold": rep.tol,
        "worst_index": list(rep.worst_index) if rep.worst_index is not None else None,
    }
    if rep.note:
        payload["note"] = rep.note
    if rep.lam is not None:
        payload["lambda"] = {
            "order": rep.lam.order,
            "residual": rep.lam.residual,
            "values": _complex_array_to_json(rep.lam.values),
        }
    return payload


def _format_lambda_text(lam: dict) -> list[str]:
    values = np.asarray(lam["values"])
    shape = values.shape[:-1]
    lines = [f"lambda ({lam['order']}, shape {'x'.join(map(str, shape))}):"]
    if len(shape) == 2:
        for row in values:
            lines.append(
                "  " + "  ".join(f"{re:+.6g}{im:+.6g}j" for re, im in row)
            )
    else:
        flat = values.reshape(-1, 2)
        indices = np.ndindex(*shape)
        for idx, (re, im) in zip(indices, flat):
            lines.append(f"  {idx}: {re:+.6g}{im:+.6g}j")
    return lines


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "machine":
        print(json.dumps(payload))
        return
    for key, value in payload.items():
        if key == "lambda":
            for line in _format_lambda_text(value):
                print(line)
        elif isinstance(value, dict):
            print(f"{key}:")
            for k2, v2 in value.items():
                if k2 == "lambda":
                    for line in _format_lambda_text(v2):
                        print("  " + line)
                else:
                    print(f"  {k2}: {_fmt_value(v2)}")
        else:
            print(f"{key}: {_fmt_value(value)}")


def _fmt_value(value) -> str:
    if isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, float):
        return f"{value:.6e}"
    return str(value)


# ---------------------------------------------------------------------------
# commands


def _resolve_tol(args, problem: Problem) -> float:
    return args.tol if args.tol is not None else problem.tol


def _require_decomposition(problem: Problem, path) -> SubsystemDecomposition:
    if problem.decomposition is None:
        raise ProblemFormatError(f"{path}: this command needs a 'decomposition' section")
    return problem.decomposition


def _classification(problem: Problem, tol: float) -> str:
    # Identity recovery suffices exactly when the sector is noiseless for the
    # channel; an explicit recovery in the file overrides that inference.
    dec = problem.decomposition
    if problem.recovery is not None:
        trivial = channels_equal(problem.recovery, identity_channel(problem.dim), tol)
    else:
        trivial = check_ns_algebraic(problem.channel, dec, tol).verdict
    return classify(dec, trivial).value


def cmd_check(args) -> int:
    problem = load_problem(args.file)
    tol = _resolve_tol(args, problem)
    kind = args.kind
    if kind == "cptp":
        rep = is_cptp(problem.channel, tol)
    else:
        dec = _require_decomposition(problem, args.file)
        if kind == "kl":
            rep = check_kl(problem.channel, dec, tol)
        elif kind == "ns":
            rep = check_ns_algebraic(problem.channel, dec, tol)
        elif kind == "oqec":
            rep = check_oqec(problem.channel, dec, tol)
        else:  # triple
            if problem.recovery is None:
                raise ProblemFormatError(f"{args.file}: 'check triple' needs a 'recovery' section")
            rep = check_correctable_triple(problem.recovery, problem.channel, dec, tol)
    payload = {"command": "check", "kind": kind}
    payload.update(_report_payload(rep))
    if rep.verdict and kind != "cptp":
        payload["classification"] = _classification(problem, tol)
    _emit(payload, args.format)
    return EXIT_PASS if rep.verdict else EXIT_FAIL


def cmd_recover(args) -> int:
    problem = load_problem(args.file)
    tol = _resolve_tol(args, problem)
    dec = _require_decomposition(problem, args.file)
    payload: dict = {"command": "recover"}
    if dec.m == 1:
        cond = check_kl(problem.channel, dec, tol)
    else:
        cond = check_oqec(problem.channel, dec, tol)
    payload["condition_report"] = _report_payload(cond)
    if not cond.verdict:
        payload["recovery_built"] = False
        _emit(payload, args.format)
        return EXIT_FAIL
    if dec.m == 1:
        rec = build_standard_recovery(problem.channel, dec, cond.lam, tol)
    else:
        rec = build_oqec_recovery(problem.channel, dec, tol)
    verification = check_opalg_correct(rec, problem.channel, dec, tol)
    out = Path(args.out)
    try:
        save_problem(
            out,
            problem_to_dict(
                problem.dim, problem.channel.kraus, dec, recovery=rec.kraus, tol=problem.tol
            ),
        )
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    payload.update(
        {
            "recovery_built": True,
            "out": str(out),
            "num_recovery_kraus": rec.num_kraus,
            "verification_residual": verification.residual,
            "verification_verdict": verification.verdict,
            "classification": _classification(problem, tol),
        }
    )
    _emit(payload, args.format)
    return EXIT_PASS if verification.verdict else EXIT_FAIL


def cmd_verify(args) -> int:
    problem = load_problem(args.file)
    tol = _resolve_tol(args, problem)
    dec = _require_decomposition(problem, args.file)
    if problem.recovery is None:
        raise ProblemFormatError(f"{args.file}: 'verify' needs a 'recovery' section")
    triple = check_correctable_triple(problem.recovery, problem.channel, dec, tol)
    opalg = check_opalg_correct(problem.recovery, problem.channel, dec, tol)
    ok = triple.verdict and opalg.verdict
    payload = {
        "command": "verify",
        "verdict": ok,
        "triple": _report_payload(triple),
        "opalg": _report_payload(opalg),
    }
    if ok:
        payload["classification"] = _classification(problem, tol)
    _emit(payload, args.format)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    problem = load_problem(args.file)
    tol = _resolve_tol(args, problem)
    dec = _require_decomposition(problem, args.file)
    oqec_rep = check_oqec(problem.channel, dec, tol)
    if problem.recovery is not None:
        correctable = check_correctable_triple(problem.recovery, problem.channel, dec, tol).verdict
    else:
        correctable = oqec_rep.verdict
    payload = {
        "command": "classify",
        "correctable": correctable,
        "classification": _classification(problem, tol) if correctable else None,
        "oqec": _report_payload(oqec_rep),
    }
    _emit(payload, args.format)
    return EXIT_PASS if correctable else EXIT_FAIL


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oqec",
        description="Check correctability conditions and build recovery channels "
        "for noise models given in JSON problem files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--tol", type=float, default=None, help="base tolerance (default: file's, else 1e-9)")
        p.add_argument("--format", choices=["text", "machine"], default="text", help="report format")

    p_check = sub.add_parser("check", help="check one condition and report verdict/residual")
    p_check.add_argument("kind", choices=["cptp", "kl", "ns", "oqec", "triple"])
    add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_recover = sub.add_parser("recover", help="build a recovery channel and re-verify it")
    add_common(p_recover)
    p_recover.add_argument("--out", required=True, help="output problem file including the recovery")
    p_recover.set_defaults(func=cmd_recover)

    p_verify = sub.add_parser("verify", help="verify a bundled recovery against the noise")
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_classify = sub.add_parser("classify", help="report the structural classification")
    add_common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except NotCorrectableError as exc:
        print(f"not correctable: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ProblemFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
