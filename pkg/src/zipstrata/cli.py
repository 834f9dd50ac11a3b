"""Command-line entry point: ``zipstrata <command> [flags]``.

Exit status: 0 when every check passes, 1 on a verification failure,
2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Any

from .roots import FAMILY_ALIASES, build_classical
from .strata import build_zip_datum, export_poset, flag_orbit_poset, zip_orbit_poset

COMMANDS = ("strata", "weights", "verify", "identity", "gs-cone", "steinberg")
SAMPLING = {"verify"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    n: int | None = None
    r: int | None = None
    s: int | None = None
    q: int | None = None
    d: list = field(default_factory=list)
    lam: list | None = None
    m: int = 1
    levi_only: bool = False
    samples: int = 200
    seed: int | None = None
    ext: int | None = None
    suite: list = field(default_factory=list)
    kind: str = "zip"
    fmt: str = "json"
    output: str | None = None
    binomial: int | None = None
    socle: list = field(default_factory=list)

    @property
    def signature(self) -> tuple | None:
        if self.r is None and self.s is None:
            return None
        r = self.r if self.r is not None else self.n - (self.s or 0)
        s = self.s if self.s is not None else self.n - r
        return (r, s)

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        needs_group = self.command in ("strata", "weights", "verify", "gs-cone", "steinberg")
        if needs_group:
            if self.family is None:
                raise UsageError("--family is required")
            fam = FAMILY_ALIASES.get(self.family)
            if fam is None:
                raise UsageError(f"unknown family {self.family!r}")
            self.family = fam
            if self.n is None and self.r is not None:
                self.n = self.r + (self.s or 0)
            if self.n is None or self.q is None:
                raise UsageError("--n and --q are required")
            if fam == "gl_split" and self.signature is None:
                self.r, self.s = self.n, 0
            if fam == "u_inert" and self.signature is None:
                raise UsageError("u_inert needs --r and --s")
            if fam == "sp_split" and self.signature is not None:
                raise UsageError("sp_split takes no signature")
            try:
                build_classical(fam, self.n, self.q, self.signature)
            except ValueError as e:
                raise UsageError(str(e)) from None
        if self.command in SAMPLING and self.seed is None:
            raise UsageError("--seed is mandatory for sampling commands")
        if self.command in ("gs-cone", "steinberg"):
            if self.lam is None:
                raise UsageError("--lambda is required")
            if len(self.lam) != self.n:
                raise UsageError(f"--lambda needs {self.n} entries")
        if self.command == "identity" and self.binomial is None and not self.socle:
            raise UsageError("identity needs --binomial and/or --socle")
        if self.kind not in ("zip", "flag"):
            raise UsageError("--kind is zip or flag")
        if self.fmt not in ("json", "dot"):
            raise UsageError("--format is json or dot")
        return self


# ---------------------------------------------------------------------------
# serialization

def jsonable(obj: Any) -> Any:
    """Fractions become "a/b" strings (integers stay integers); tuples become lists."""
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


def load_schema(command: str) -> dict:
    """The JSON schema shipped for a command's output."""
    from importlib.resources import files

    return json.loads(files("zipstrata").joinpath(f"schemas/{command}.schema.json").read_text())


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------
# commands

def _zip_datum(cfg: RunConfig):
    return build_zip_datum(build_classical(cfg.family, cfg.n, cfg.q, cfg.signature))


def _group_header(cfg: RunConfig) -> dict:
    return {"family": cfg.family, "n": cfg.n, "q": cfg.q,
            "signature": list(cfg.signature) if cfg.signature else None}


def cmd_strata(cfg: RunConfig) -> tuple:
    zd = _zip_datum(cfg)
    poset = zip_orbit_poset(zd) if cfg.kind == "zip" else flag_orbit_poset(zd)
    return 0, export_poset(poset, cfg.fmt)


def cmd_weights(cfg: RunConfig) -> tuple:
    from .weights import delta_alpha, determinant_weight, weight_table

    zd = _zip_datum(cfg)
    out = {**_group_header(cfg), "rows": weight_table(zd)}
    if cfg.family != "sp_split":
        out["lambda_det"] = list(determinant_weight(zd))
    out["delta_alpha"] = {str(i): list(delta_alpha(zd, i)) for i in zd.delta_p}
    return 0, dumps(out)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("ZIPSTRATA_THREADS", "1")))
    except ValueError:
        return 1


def cmd_verify(cfg: RunConfig) -> tuple:
    from .realize import SUITES, run_tasks, standard_tasks

    suites = cfg.suite or [s for s in SUITES]
    for s in suites:
        if s not in SUITES:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    tasks = standard_tasks(cfg.family, cfg.n, cfg.q, cfg.signature, suites,
                           cfg.d or None, cfg.samples, cfg.seed, cfg.ext)
    reports = run_tasks(tasks, _workers())
    passed = all(r["pass"] for r in reports)
    out = {"suite": "+".join(suites), "pass": passed,
           "samples_used": sum(r["samples_used"] for r in reports),
           "case": _group_header(cfg), "seed": cfg.seed, "reports": reports}
    first = next((r for r in reports if not r["pass"]), None)
    if first is not None:
        out["counterexample"] = {"suite": first["suite"], **first.get("counterexample", {})}
    return (0 if passed else 1), dumps(out)


def cmd_identity(cfg: RunConfig) -> tuple:
    from .poly import binomial_sweep, socle_counterexample, steinberg_monomial_check

    out: dict = {"cases_checked": 0, "failures": []}
    if cfg.binomial is not None:
        sweep = binomial_sweep(cfg.binomial)
        out["cases_checked"] += sweep["cases_checked"]
        out["failures"] += [{"kind": "binomial", **f} for f in sweep["failures"]]
        out["binomial"] = {"n_max": cfg.binomial, "cases_checked": sweep["cases_checked"]}
    socle = []
    for q in cfg.socle:
        rep = socle_counterexample(q)
        mono = steinberg_monomial_check(q)
        rep.pop("polynomial")
        socle.append({**rep, "monomial_check": mono})
        out["cases_checked"] += 1
        if rep["contained"] or not mono["pass"]:
            out["failures"].append({"kind": "socle", "q": q, "contained": rep["contained"],
                                    "monomial_check": mono["pass"]})
    if socle:
        out["socle"] = socle
    return (1 if out["failures"] else 0), dumps(out)


def cmd_gs_cone(cfg: RunConfig) -> tuple:
    from .weights import in_gs_cone, in_gs_cone_via_dominance, vgs_full
    from .roots import is_dominant

    zd = _zip_datum(cfg)
    lam = tuple(cfg.lam)
    out = {**_group_header(cfg), "lambda": list(lam),
           "in_gs_cone": in_gs_cone(zd, lam),
           "in_gs_cone_via_dominance": in_gs_cone_via_dominance(zd, lam),
           "levi_dominant": is_dominant(zd.datum, lam, zd.levi)}
    out["vgs_full"] = vgs_full(zd, lam) if out["levi_dominant"] else None
    consistent = out["in_gs_cone"] == out["in_gs_cone_via_dominance"]
    lemma_ok = not out["in_gs_cone"] or out["vgs_full"]
    out["pass"] = bool(consistent and lemma_ok)
    return (0 if out["pass"] else 1), dumps(out)


def cmd_steinberg(cfg: RunConfig) -> tuple:
    from .roots import is_dominant
    from .weights import is_restricted, steinberg_decompose, steinberg_recompose

    zd = _zip_datum(cfg)
    d = zd.datum
    subset = zd.levi if cfg.levi_only else None
    twisted = not cfg.levi_only
    lam = tuple(cfg.lam)
    if not is_dominant(d, lam, subset):
        raise UsageError(f"{list(lam)} is not dominant")
    digits = steinberg_decompose(d, lam, cfg.m, subset, twisted)
    out = {**_group_header(cfg), "lambda": list(lam), "m": cfg.m,
           "region": "levi" if cfg.levi_only else "full", "digits": None}
    if digits is not None:
        back = steinberg_recompose(d, digits, twisted)
        out["digits"] = [list(x) for x in digits]
        out["recomposed"] = list(back)
        out["restricted"] = all(is_restricted(d, x, subset) for x in digits)
        out["pass"] = back == lam and out["restricted"]
    else:
        out["pass"] = False
    return (0 if out["pass"] else 1), dumps(out)


HANDLERS = {
    "strata": cmd_strata, "weights": cmd_weights, "verify": cmd_verify,
    "identity": cmd_identity, "gs-cone": cmd_gs_cone, "steinberg": cmd_steinberg,
}


def run(cfg: RunConfig) -> tuple:
    """Validate and dispatch; returns (exit status, text)."""
    cfg.validate()
    return HANDLERS[cfg.command](cfg)


# ---------------------------------------------------------------------------
# argument parsing

def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.replace(" ", "").strip("()[]").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer vector {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    # defaults are None so that flags can be told apart from config values
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file with flag values; explicit flags win")
    common.add_argument("--family", help="gl | sp | u-inert (and long names)")
    common.add_argument("--n", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--s", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--output", "-o", help="write here instead of stdout")

    p = _Parser(prog="zipstrata", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("strata", parents=[common], help="zip or flag stratum poset")
    sp.add_argument("--kind", choices=("zip", "flag"))
    sp.add_argument("--format", dest="fmt", choices=("json", "dot"))

    sub.add_parser("weights", parents=[common], help="flag Hasse invariant weights")

    sp = sub.add_parser("verify", parents=[common], help="sampled checks in the matrix model")
    sp.add_argument("--d", type=int, action="append")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--ext", type=int, help="degree of the sampling field over F_q")
    sp.add_argument("--suite", action="append",
                    help="borel | flag | zip | vanishing | ev1 (repeatable; default all)")

    sp = sub.add_parser("identity", parents=[common], help="binomial sum and socle expansion")
    sp.add_argument("--binomial", type=int, metavar="N_MAX")
    sp.add_argument("--socle", type=int, action="append", metavar="Q")

    sp = sub.add_parser("gs-cone", parents=[common], help="cone membership and V_GS test")
    sp.add_argument("--lambda", dest="lam", type=_int_list)

    sp = sub.add_parser("steinberg", parents=[common], help="restricted digit decomposition")
    sp.add_argument("--lambda", dest="lam", type=_int_list)
    sp.add_argument("--m", type=int)
    sp.add_argument("--levi-only", dest="levi_only", action="store_const", const=True)
    return p


def config_from_args(argv: list | None) -> RunConfig:
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise UsageError("a command is required: " + ", ".join(COMMANDS))
    values: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config: {e}") from None
        if "lambda" in values:
            values["lam"] = values.pop("lambda")
        if "format" in values:
            values["fmt"] = values.pop("format")
    for k, v in vars(args).items():
        if k != "config" and v is not None:
            values[k] = v
    values["command"] = args.command
    known = {f.name for f in fields(RunConfig)}
    extra = set(values) - known
    if extra:
        raise UsageError(f"unknown config keys: {', '.join(sorted(extra))}")
    for key in ("d", "suite", "socle"):
        if isinstance(values.get(key), (int, str)):
            values[key] = [values[key]]
    if isinstance(values.get("lam"), str):
        values["lam"] = _int_list(values["lam"])
    return RunConfig(**values)


def main(argv: list | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        status, text = run(cfg)
    except (UsageError, argparse.ArgumentTypeError) as e:
        print(f"zipstrata: error: {e}", file=sys.stderr)
        return 2
    if cfg.output:
        try:
            with open(cfg.output, "w") as fh:
                fh.write(text)
        except OSError as e:
            print(f"zipstrata: error: cannot write {cfg.output}: {e}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
