"""Command-line interface.

Exit codes: 0 success / all checks pass, 1 check failure or input error,
2 usage error.  ``--json`` emits machine output with the stable key names
id, status, witness, value.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as cat
from . import dsl
from .forms import DegenerateForm
from .geometry import constant_curvature, curvature, flatness_defect, levi_civita
from .liealg import (
    NotUnimodular,
    WrongDimension,
    center,
    classify_3d_unimodular,
    derived_series,
    is_nilpotent,
    is_solvable,
    is_unimodular,
    jacobi_witness,
)
from .models import check_invariance, invariant_forms, isotropy_type


def main() -> None:
    sys.exit(cli(sys.argv[1:]))


def cli(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.handler(args)
    except (dsl.DslError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    # The flags live on the main parser and on every subparser, so both
    # `holriem --json classify F` and `holriem classify F --json` work;
    # SUPPRESS keeps subparser defaults from clobbering main-level values.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="machine-readable output",
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        default=argparse.SUPPRESS,
        help="suppress passing lines",
    )

    parser = argparse.ArgumentParser(
        prog="holriem",
        description="Exact checks for left-invariant holomorphic Riemannian metrics",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--quiet", action="store_true", help="suppress passing lines")
    sub = parser.add_subparsers(dest="command", required=True)

    def file_command(name: str, handler, help_text: str):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="a .liealg input file")
        p.set_defaults(handler=handler)
        return p

    file_command("validate", _cmd_validate, "check Jacobi identity and form nondegeneracy")
    file_command("invariants", _cmd_invariants, "structural invariants of the algebra")
    file_command("classify", _cmd_classify, "class of a 3-dimensional unimodular algebra")
    file_command("connection", _cmd_connection, "Christoffel table of the metric")
    file_command("curvature", _cmd_curvature, "curvature tensor of the metric")
    file_command("constcurv", _cmd_constcurv, "constant-curvature certificate")
    file_command("model", _cmd_model, "isotropy type and invariance of a model file")

    vp = sub.add_parser(
        "verify-paper", parents=[common], help="run the full catalog verification suite"
    )
    vp.add_argument("--seed", type=int, default=cat.DEFAULT_SEED)
    vp.add_argument("--tol", type=float, default=cat.DEFAULT_TOL)
    vp.set_defaults(handler=_cmd_verify)

    mb = sub.add_parser(
        "mobius-check", parents=[common], help="numeric invariance of the surface metric"
    )
    mb.add_argument("--samples", type=int, default=1000)
    mb.add_argument("--seed", type=int, default=cat.DEFAULT_SEED)
    mb.add_argument("--tol", type=float, default=cat.DEFAULT_TOL)
    mb.set_defaults(handler=_cmd_mobius)
    return parser


def _load(path: str) -> dsl.SpecFile:
    with open(path, "r", encoding="utf-8") as handle:
        return dsl.parse(handle.read())


def _emit_records(args, records: list[dict], data: bool = False) -> None:
    """Print check-shaped records as text lines or one JSON array.

    ``data`` marks informational output that --quiet must not suppress.
    """
    if args.json:
        print(json.dumps(records, indent=2))
        return
    for record in records:
        if data:
            print(f"{record['id']} = {record['value']}")
            continue
        if args.quiet and record["status"] == "pass":
            continue
        line = f"{record['status'].upper():4} {record['id']}"
        if record.get("value") is not None:
            line += f"  value={record['value']}"
        if record.get("witness") is not None:
            line += f"  witness={record['witness']}"
        print(line)


def _record(check_id: str, ok: bool, witness=None, value=None) -> dict:
    return {
        "id": check_id,
        "status": "pass" if ok else "fail",
        "witness": None if ok else witness,
        "value": value,
    }


def _cmd_validate(args) -> int:
    spec = _load(args.file)
    algebra = dsl.to_algebra(spec)
    records = []
    triple = jacobi_witness(algebra)
    witness = None
    if triple is not None:
        names = ",".join(algebra.basis_names[t] for t in triple)
        witness = f"triple=({names})"
    records.append(_record("jacobi", triple is None, witness))
    if spec.isotropy:
        try:
            model = dsl.to_model(spec)
            if model.quotient_form is not None:
                records.append(
                    _record(
                        "form_nondegenerate",
                        model.quotient_form.nondegenerate,
                        "quotient form is degenerate",
                    )
                )
        except ValueError as exc:
            records.append(_record("model_wellformed", False, str(exc)))
    else:
        form = dsl.to_metric(spec)
        if form is not None:
            records.append(
                _record("form_nondegenerate", form.nondegenerate, "form is degenerate")
            )
    _emit_records(args, records)
    return 0 if all(r["status"] == "pass" for r in records) else 1


def _cmd_invariants(args) -> int:
    spec = _load(args.file)
    algebra = dsl.to_algebra(spec)
    facts = [
        ("unimodular", "true" if is_unimodular(algebra) else "false"),
        ("solvable", "true" if is_solvable(algebra) else "false"),
        ("nilpotent", "true" if is_nilpotent(algebra) else "false"),
        ("center_dim", str(len(center(algebra)))),
        ("derived_dims", ",".join(str(d) for d in derived_series(algebra))),
    ]
    if args.json:
        print(
            json.dumps(
                [_record(key, True, value=value) for key, value in facts], indent=2
            )
        )
    else:
        for key, value in facts:
            print(f"{key}: {value}")
    return 0


def _cmd_classify(args) -> int:
    spec = _load(args.file)
    algebra = dsl.to_algebra(spec)
    try:
        tag = classify_3d_unimodular(algebra).name
    except (NotUnimodular, WrongDimension) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps([_record("classify", True, value=tag)], indent=2))
    else:
        print(tag)
    return 0


def _require_metric(spec: dsl.SpecFile):
    if spec.isotropy:
        raise ValueError(
            "this command needs a metric file (a form on the full basis, no isotropy)"
        )
    form = dsl.to_metric(spec)
    if form is None:
        raise ValueError("the file declares no [form] section")
    return dsl.to_algebra(spec), form


def _cmd_connection(args) -> int:
    spec = _load(args.file)
    algebra, form = _require_metric(spec)
    table = levi_civita(algebra, form)
    records = []
    for i, a in enumerate(algebra.basis_names):
        for j, b in enumerate(algebra.basis_names):
            combo = {
                algebra.basis_names[k]: c
                for k, c in enumerate(table.coeffs[i][j])
                if c
            }
            rendered = dsl.format_combination(algebra.basis_names, combo)
            records.append(_record(f"nabla({a},{b})", True, value=rendered))
    _emit_records(args, records, data=True)
    return 0


def _cmd_curvature(args) -> int:
    spec = _load(args.file)
    algebra, form = _require_metric(spec)
    tensor = curvature(algebra, levi_civita(algebra, form))
    names = algebra.basis_names
    records = []
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            for k in range(algebra.dim):
                combo = {
                    names[l]: c for l, c in enumerate(tensor.comps[i][j][k]) if c
                }
                rendered = dsl.format_combination(names, combo)
                records.append(
                    _record(f"R({names[i]},{names[j]}){names[k]}", True, value=rendered)
                )
    _emit_records(args, records, data=True)
    return 0


def _cmd_constcurv(args) -> int:
    spec = _load(args.file)
    algebra, form = _require_metric(spec)
    try:
        value = constant_curvature(algebra, form)
    except DegenerateForm as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if value is None:
        tensor = curvature(algebra, levi_civita(algebra, form))
        triple = flatness_defect(tensor)
        names = ",".join(algebra.basis_names[t] for t in triple) if triple else ""
        witness = f"triple=({names})" if triple else None
        if args.json:
            print(
                json.dumps(
                    [_record("constcurv", True, value="NotConstant", witness=witness)],
                    indent=2,
                )
            )
        else:
            suffix = f"  witness={witness}" if witness else ""
            print(f"NotConstant{suffix}")
        return 0
    rendered = f"Constant({value})"
    if args.json:
        print(json.dumps([_record("constcurv", True, value=rendered)], indent=2))
    else:
        print(rendered)
    return 0


def _cmd_model(args) -> int:
    spec = _load(args.file)
    if not spec.isotropy:
        raise ValueError("the file declares no [isotropy] section")
    model = dsl.to_model(spec)
    facts = [("isotropy", isotropy_type(model).name)]
    if model.quotient_form is not None:
        facts.append(("invariance", "true" if check_invariance(model) else "false"))
    else:
        facts.append(("invariance", "n/a"))
    facts.append(("invariant_form_dim", str(len(invariant_forms(model)))))
    if args.json:
        print(
            json.dumps(
                [_record(key, True, value=value) for key, value in facts], indent=2
            )
        )
    else:
        for key, value in facts:
            print(f"{key}: {value}")
    return 0


def _cmd_verify(args) -> int:
    report = cat.verify_all(seed=args.seed, tol=args.tol)
    if args.json:
        print(cat.report_to_json(report))
    else:
        print(cat.render_report_text(report, quiet=args.quiet))
    return 0 if report.all_pass else 1


def _cmd_mobius(args) -> int:
    worst = cat.mobius_invariance_check(args.samples, args.seed, args.tol)
    if args.json:
        print(
            json.dumps(
                [
                    _record(
                        "mobius",
                        worst < args.tol,
                        witness=f"residual {worst!r}",
                        value=repr(worst),
                    )
                ],
                indent=2,
            )
        )
    else:
        print(f"max residual: {worst!r} (tol {args.tol!r})")
    return 0 if worst < args.tol else 1
