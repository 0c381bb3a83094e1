"""Command-line frontend: point evaluation, grid tabulation, identity sweeps.

    taubeta eval zeta_r --alpha 2 --r 0
    taubeta tabulate tricomi_psi --var x --start 1 --stop 4 --count 4 --a 1 --c 2
    taubeta verify --identity thm2 --trials 10 --seed 7

Data goes to stdout (CSV by default, JSON with --out json), diagnostics
to stderr.  Exit codes: 0 converged / all passed, 2 tolerance not met or
failed rows, 1 domain or usage errors.  Identical inputs and seed produce
byte-identical output; numbers are serialized with 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys

from .confluent import ConfluentParams, phi, phi_integral
from .gengamma import GenGammaParams, gen_gamma, gen_gamma_bessel
from .genzeta import (ZetaParams, hurwitz_zeta_r, hurwitz_zeta_star,
                      zeta_r_bessel, zeta_r_csch, zeta_r_integral,
                      zeta_r_laplace, zeta_r_series, zeta_star)
from .tricomi import (GenTricomiParams, TricomiParams, gen_tricomi_deriv,
                      gen_tricomi_u, tricomi_psi)
from .types import EvalResult, Status, TauBetaError, Tolerances
from .verify import IDENTITY_IDS, default_tolerance, run_identity


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1 (argparse defaults to 2, which we reserve
    # for tolerance-not-met results)
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _cp(b: dict) -> ConfluentParams:
    return ConfluentParams(b["a"], b["c"], b["tau"], b["beta"])


def _zp(b: dict) -> ZetaParams:
    alpha = complex(b["alpha"], b.get("alpha_im", 0.0))
    return ZetaParams(alpha, b["r"], b.get("q", 1.0), _cp(b))


def _gtp(b: dict) -> GenTricomiParams:
    base = TricomiParams(b["a"], b["c"], b["x"])
    cp = ConfluentParams(b["alpha"], b["gamma_"], b["tau"], b["beta"])
    return GenTricomiParams(base, cp, b["delta"], b["r"])


_CP_DEFAULTS = [("a", 1.0), ("c", 1.0), ("tau", 1.0), ("beta", 1.0)]
_ZETA_PARAMS = [("alpha", None), ("alpha_im", 0.0), ("r", 0.0)] + _CP_DEFAULTS
_HURWITZ_PARAMS = _ZETA_PARAMS + [("q", 1.0)]
_TRICOMI_GEN = [("a", None), ("c", None), ("x", None), ("alpha", 1.0),
                ("gamma_", 1.0), ("tau", 1.0), ("beta", 1.0),
                ("delta", 1.0), ("r", 0.0)]

# name -> (parameter spec [(flag, default-or-None=required)], runner)
FUNCTIONS = {
    "phi": ([("z", None)] + _CP_DEFAULTS,
            lambda b, tol: phi(_cp(b), b["z"], tol)),
    "phi_integral": ([("z", None)] + _CP_DEFAULTS,
                     lambda b, tol: phi_integral(_cp(b), b["z"], tol)),
    "gen_gamma": ([("varsigma", None), ("alpha", None), ("alpha_im", 0.0)]
                  + _CP_DEFAULTS,
                  lambda b, tol: gen_gamma(GenGammaParams(
                      b["varsigma"], complex(b["alpha"], b["alpha_im"]),
                      _cp(b)), tol)),
    "gen_gamma_bessel": ([("varsigma", None), ("alpha", None)],
                         lambda b, tol: _wrap(gen_gamma_bessel(
                             b["varsigma"], b["alpha"]))),
    "zeta_r": (_ZETA_PARAMS, lambda b, tol: zeta_r_integral(_zp(b), tol)),
    "zeta_r_series": (_ZETA_PARAMS,
                      lambda b, tol: zeta_r_series(_zp(b), tol)),
    "zeta_r_csch": (_ZETA_PARAMS, lambda b, tol: zeta_r_csch(_zp(b), tol)),
    "zeta_r_laplace": (_ZETA_PARAMS,
                       lambda b, tol: zeta_r_laplace(_zp(b), tol)),
    "zeta_r_bessel": ([("alpha", None), ("r", None)],
                      lambda b, tol: zeta_r_bessel(b["alpha"], b["r"], tol)),
    "zeta_star": (_ZETA_PARAMS, lambda b, tol: zeta_star(_zp(b), tol)),
    "hurwitz_zeta_r": (_HURWITZ_PARAMS,
                       lambda b, tol: hurwitz_zeta_r(_zp(b), tol)),
    "hurwitz_zeta_star": (_HURWITZ_PARAMS,
                          lambda b, tol: hurwitz_zeta_star(_zp(b), tol)),
    "tricomi_psi": ([("a", None), ("c", None), ("x", None)],
                    lambda b, tol: tricomi_psi(
                        TricomiParams(b["a"], b["c"], b["x"]), tol)),
    "gen_tricomi_u": (_TRICOMI_GEN,
                      lambda b, tol: gen_tricomi_u(_gtp(b), tol)),
    "gen_tricomi_deriv": ([("n", 1.0)] + _TRICOMI_GEN,
                          lambda b, tol: gen_tricomi_deriv(
                              int(b["n"]), _gtp(b), tol)),
}


def _wrap(value: float) -> EvalResult:
    return EvalResult(complex(value), 5e-15 * abs(value), 1,
                      Status.CONVERGED)


def _record(function: str, bindings: dict, res: EvalResult | None,
            error: str | None = None) -> dict:
    rec = {"function": function}
    for k in sorted(bindings):
        rec[k] = bindings[k]
    if res is not None:
        rec.update(value_re=res.value.real, value_im=res.value.imag,
                   abs_err=res.abs_error_est, work=res.work,
                   status=res.status.value)
    else:
        rec.update(value_re=float("nan"), value_im=float("nan"),
                   abs_err=float("nan"), work=0, status=error or "Error")
    return rec


def _emit_records(records: list[dict], out_format: str, stream) -> None:
    if out_format == "json":
        stream.write(json.dumps(records, indent=2))
        stream.write("\n")
        return
    cols = list(records[0].keys())
    stream.write(",".join(cols) + "\n")
    for rec in records:
        cells = []
        for col in cols:
            v = rec[col]
            cells.append(_fmt(v) if isinstance(v, float) else str(v))
        stream.write(",".join(cells) + "\n")


def _tolerances(args) -> Tolerances:
    return Tolerances(abs_tol=args.tol, rel_tol=args.tol,
                      max_terms=args.max_terms)


def _add_common(sub):
    sub.add_argument("--out", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default=None, help="file path (default stdout)")
    sub.add_argument("--tol", type=float, default=1e-10,
                     help="absolute and relative error target")
    sub.add_argument("--max-terms", type=int, default=10_000)


def _open_output(args):
    if args.output:
        return open(args.output, "w", encoding="utf-8", newline="\n")
    return sys.stdout


def _bind(args, spec) -> dict:
    bindings = {}
    for flag, default in spec:
        val = getattr(args, flag)
        if val is None:
            if default is None:
                raise TauBetaError(f"missing required parameter --{flag}")
            val = default
        bindings[flag] = val
    return bindings


def _cmd_eval(args) -> int:
    spec, runner = FUNCTIONS[args.function]
    bindings = _bind(args, spec)
    res = runner(bindings, _tolerances(args))
    stream = _open_output(args)
    try:
        _emit_records([_record(args.function, bindings, res)],
                      args.out, stream)
    finally:
        if stream is not sys.stdout:
            stream.close()
    if res.status is Status.TOLERANCE_NOT_MET:
        return 2
    return 0


def _cmd_tabulate(args) -> int:
    spec, runner = FUNCTIONS[args.function]
    if args.count < 2:
        raise TauBetaError("grid count must be >= 2")
    flags = [f for f, _ in spec]
    if args.var not in flags:
        raise TauBetaError(
            f"{args.function} has no parameter {args.var!r}")
    bindings = _bind(args, [(f, d if f != args.var else 0.0)
                            for f, d in spec])
    tol = _tolerances(args)
    step = (args.stop - args.start) / (args.count - 1)
    records = []
    any_failed = False
    for i in range(args.count):
        bindings[args.var] = args.start + step * i
        try:
            res = runner(dict(bindings), tol)
            rec = _record(args.function, bindings, res)
            if res.status is Status.TOLERANCE_NOT_MET:
                any_failed = True
        except TauBetaError as exc:
            rec = _record(args.function, bindings, None,
                          type(exc).__name__)
            any_failed = True
        records.append(rec)
    stream = _open_output(args)
    try:
        _emit_records(records, args.out, stream)
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 2 if any_failed else 0


def _cmd_verify(args) -> int:
    identity = args.identity.lower()
    if identity not in IDENTITY_IDS:
        raise TauBetaError(
            f"unknown identity {args.identity!r}; choose from "
            + ", ".join(IDENTITY_IDS))
    tolerance = args.tolerance if args.tolerance is not None \
        else default_tolerance(identity)
    reports = run_identity(identity, args.trials, args.seed, tolerance,
                           _tolerances(args))
    records = []
    for rep in reports:
        rec = {"identity": rep.identity_id,
               "trial": rep.params.get("trial", 0)}
        for k in sorted(rep.params):
            if k != "trial":
                rec[k] = float(rep.params[k])
        rec.update(lhs_re=rep.lhs.real, lhs_im=rep.lhs.imag,
                   rhs_re=rep.rhs.real, rhs_im=rep.rhs.imag,
                   residual=rep.residual, tolerance=rep.tolerance,
                   informational=rep.informational,
                   passed=bool(rep.passed))
        records.append(rec)
    n_pass = sum(1 for rep in reports if rep.passed)
    stream = _open_output(args)
    try:
        if args.out == "json":
            payload = {"identity": identity, "seed": args.seed,
                       "tolerance": tolerance, "reports": records,
                       "passed": n_pass, "trials": len(reports)}
            stream.write(json.dumps(payload, indent=2))
            stream.write("\n")
        else:
            _emit_records(records, "csv", stream)
            stream.write(f"# passed {n_pass}/{len(reports)}\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    if all(rep.passed or rep.informational for rep in reports):
        return 0
    return 2


def main(argv=None) -> int:
    parser = _Parser(prog="taubeta",
                     description="generalized zeta / gamma / Tricomi "
                                 "evaluation and identity verification")
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", parents=[], help="evaluate at one point")
    p_eval.add_argument("function", choices=sorted(FUNCTIONS))
    _add_common(p_eval)

    p_tab = subs.add_parser("tabulate", help="evaluate on a grid")
    p_tab.add_argument("function", choices=sorted(FUNCTIONS))
    p_tab.add_argument("--var", required=True)
    p_tab.add_argument("--start", type=float, required=True)
    p_tab.add_argument("--stop", type=float, required=True)
    p_tab.add_argument("--count", type=int, required=True)
    _add_common(p_tab)

    p_ver = subs.add_parser("verify", help="identity residual sweep")
    p_ver.add_argument("--identity", required=True)
    p_ver.add_argument("--trials", type=int, default=10)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--tolerance", type=float, default=None,
                       help="residual tolerance (default per identity)")
    _add_common(p_ver)

    all_flags = sorted({flag for spec, _ in FUNCTIONS.values()
                        for flag, _ in spec})
    for sub in (p_eval, p_tab):
        for flag in all_flags:
            sub.add_argument(f"--{flag}", type=float, default=None)

    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "tabulate":
            return _cmd_tabulate(args)
        return _cmd_verify(args)
    except TauBetaError as exc:
        print(f"taubeta: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
