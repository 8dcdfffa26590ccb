"""Command-line front end.

    psalgebroid betti --complex circle
    psalgebroid ce --liealg sl2
    psalgebroid algebroid-cohomology --complex sphere --liealg sl2
    psalgebroid verify kunneth --complex circle --liealg sl2 --seed 1

Inputs are file paths or names of bundled fixtures. Reports are JSON
(``--text`` for a table). Exit codes: 0 pass, 1 verdict failure, 2 input
error, 3 internal integrity error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import config, fixtures
from .homology import cohomology
from .liealg import LieAlgebra, ce_basis, ce_complex, liealg_from_json, validate
from .linalg import IntegrityError
from .models import Model
from .polynomial import fraction_str
from .simplicial import DomainError, MalformedInput, SimplicialComplex, complex_from_json
from .verify import SUITES, SuiteOptions, algebroid_report, betti_report, bracket_sign_suite, mv_suite, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INTEGRITY = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = ""
    suite: str | None = None
    complex: str | None = None
    liealg: str | None = None
    model: str = "whitney"
    poly_degree: int | None = None
    bracket_sign: str = "auto"
    split: str | None = None
    seed: int = 0
    cases: int = 200
    max_simplices: int = config.LIMITS.max_simplices
    max_lie_dim: int = config.LIMITS.max_lie_dim
    out: str | None = None
    text: bool = False

    def __post_init__(self):
        if self.poly_degree is not None and self.poly_degree < 0:
            raise InputError("--poly-degree must be >= 0")
        if self.bracket_sign not in ("paper", "standard", "auto"):
            raise InputError("--bracket-sign must be paper, standard or auto")

    def model_obj(self) -> Model:
        try:
            return Model.parse(self.model, self.poly_degree)
        except ValueError as exc:
            raise InputError(str(exc)) from None


def _read_json(spec: str, kind: str):
    path = Path(spec)
    if not path.exists():
        names = {"complex": fixtures.COMPLEXES, "liealg": fixtures.ALGEBRAS}.get(kind, ())
        if spec in names:
            return json.loads(fixtures.data_path(f"{spec}.{kind}.json").read_text()), spec
        raise InputError(f"no such file or bundled {kind}: {spec}")
    text = path.read_text()
    try:
        return json.loads(text), path.stem
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_complex(spec: str) -> SimplicialComplex:
    data, _ = _read_json(spec, "complex")
    return complex_from_json(data)


def load_algebra(spec: str) -> LieAlgebra:
    data, name = _read_json(spec, "liealg")
    return liealg_from_json(data, name=name.split(".")[0])


def load_split(spec: str) -> tuple[list, list]:
    data, _ = _read_json(spec, "split")
    try:
        u, v = data["U_generators"], data["V_generators"]
    except (KeyError, TypeError):
        raise InputError("split file needs U_generators and V_generators") from None
    if not (isinstance(u, list) and isinstance(v, list) and u and v
            and all(isinstance(x, list) and x for x in u + v)):
        raise InputError("U_generators and V_generators must be non-empty lists of simplices")
    return u, v


def _need(cfg: RunConfig, attr: str, flag: str):
    v = getattr(cfg, attr)
    if v is None:
        raise InputError(f"{cfg.command} needs {flag}")
    return v


def cmd_betti(cfg: RunConfig) -> dict:
    K = load_complex(_need(cfg, "complex", "--complex"))
    return {"command": "betti", **betti_report(K, cfg.model_obj())}


def cmd_ce(cfg: RunConfig) -> dict:
    g = load_algebra(_need(cfg, "liealg", "--liealg"))
    rep = validate(g)
    if not rep.ok:
        return {"command": "ce", "ok": False, "error": str(rep.violation),
                "violation": {"kind": rep.violation.kind, "indices": list(rep.violation.indices)}}
    H = cohomology(ce_complex(g))
    reps = []
    for p, deg in enumerate(H.degrees):
        basis = ce_basis(g.dim, p)
        reps.append([{",".join(map(str, basis[i])) or "1": fraction_str(v) for i, v in enumerate(z) if v}
                     for z in deg.representatives])
    return {"command": "ce", "ok": True, "dim": g.dim, "dims": H.dims, "representatives": reps}


def cmd_algebroid_cohomology(cfg: RunConfig) -> dict:
    K = load_complex(_need(cfg, "complex", "--complex"))
    g = load_algebra(_need(cfg, "liealg", "--liealg"))
    rep = validate(g)
    if not rep.ok:
        raise InputError(f"not a Lie algebra: {rep.violation}")
    return {"command": "algebroid-cohomology", **algebroid_report(K, g, cfg.model_obj())}


def resolve_convention(cfg: RunConfig) -> tuple[str, dict | None]:
    if cfg.bracket_sign != "auto":
        return cfg.bracket_sign, None
    exp = bracket_sign_suite(LieAlgebra.sl2(), (0, 1, 2), SuiteOptions(seed=cfg.seed, cases=40))
    if exp["named"] is None:
        raise IntegrityError("bracket-sign experiment did not single out a convention")
    return exp["named"], {"named": exp["named"], "ok": exp["ok"]}


def cmd_verify(cfg: RunConfig) -> dict:
    suite = _need(cfg, "suite", "a suite name")
    K = load_complex(cfg.complex) if cfg.complex else None
    g = load_algebra(cfg.liealg) if cfg.liealg else None
    if suite != "bracket-sign":
        if K is None:
            raise InputError(f"verify {suite} needs --complex")
        g = g or LieAlgebra.abelian(1)
    if g is not None and not validate(g).ok:
        raise InputError(f"not a Lie algebra: {validate(g).violation}")
    conv, auto = resolve_convention(cfg) if suite != "bracket-sign" else (cfg.bracket_sign, None)
    opts = SuiteOptions(seed=cfg.seed, cases=cfg.cases, model=cfg.model_obj(),
                        convention=conv if conv != "auto" else "standard")
    if suite == "mv" and cfg.split:
        u, v = load_split(cfg.split)
        out = mv_suite(K, g, opts, u_generators=u, v_generators=v)
    else:
        out = run_suite(suite, K, g, opts)
    out["command"] = "verify"
    out["seed"] = cfg.seed
    if auto is not None:
        out["bracket_sign_auto"] = auto
    return out


COMMANDS = {"betti": cmd_betti, "ce": cmd_ce, "algebroid-cohomology": cmd_algebroid_cohomology,
            "verify": cmd_verify}


def _text(report: dict) -> str:
    lines = []
    cmd = report.get("command")
    if cmd == "betti":
        lines.append(f"simplicial  {report['simplicial']}")
        lines.append(f"{report['model_name']:<11} {report['model']}")
    elif cmd == "ce":
        lines.append(f"H(g) dims   {report['dims']}" if report["ok"] else f"error       {report['error']}")
    elif cmd == "algebroid-cohomology":
        for k in ("betti", "lie_cohomology", "predicted", "computed"):
            lines.append(f"{k:<15} {report[k]}")
    else:
        lines.append(f"suite {report['suite']}")
        for p in report["properties"]:
            lines.append(f"  {'PASS' if p['ok'] else 'FAIL'}  {p['name']:<32} cases={p['cases']}")
        if report.get("named"):
            lines.append(f"  named convention: {report['named']}")
    lines.append("verdict: " + ("ok" if report.get("ok") else "FAILED"))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    common.add_argument("--complex")
    common.add_argument("--liealg")
    common.add_argument("--model", choices=["whitney", "pr"])
    common.add_argument("--poly-degree", type=int, dest="poly_degree")
    common.add_argument("--bracket-sign", choices=["paper", "standard", "auto"], dest="bracket_sign")
    common.add_argument("--split", help="verify mv: JSON with U_generators and V_generators")
    common.add_argument("--seed", type=int)
    common.add_argument("--cases", type=int)
    common.add_argument("--out")
    common.add_argument("--text", action="store_true", default=None)
    ap = argparse.ArgumentParser(prog="psalgebroid", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("betti", "ce", "algebroid-cohomology"):
        sub.add_parser(name, parents=[common])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", choices=SUITES)
    return ap


def make_config(args: argparse.Namespace) -> RunConfig:
    base: dict = {}
    if getattr(args, "config", None):
        data, _ = _read_json(args.config, "config")
        known = {f.name for f in fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        base.update(data)
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            base[f.name] = v
    return RunConfig(**base)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        config.LIMITS.max_simplices = cfg.max_simplices
        config.LIMITS.max_lie_dim = cfg.max_lie_dim
        report = COMMANDS[cfg.command](cfg)
        code = EXIT_PASS if report.get("ok") else EXIT_FAIL
    except (InputError, MalformedInput, DomainError) as exc:
        report, code = {"command": args.command, "ok": False, "error": str(exc), "kind": "input"}, EXIT_INPUT
    except IntegrityError as exc:
        report, code = {"command": args.command, "ok": False, "error": str(exc), "kind": "integrity"}, EXIT_INTEGRITY
    # input and integrity errors are always JSON
    if args.text and "kind" not in report:
        text = _text(report)
    else:
        text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
