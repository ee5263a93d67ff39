"""Command line interface.

Every subcommand is a thin adapter over the library.  Exit codes: 0 on
success, including certified negative answers (reported in ``verdict``);
1 on input or usage errors; 2 when an internal identity check fails.

``--json`` prints one object with keys command, inputs, verdict, data and
assertions_checked (keys sorted, two-space indent).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .arith import ProjectivePoint, format_polynomial
from .decomp import decompose, decompose_completely
from .errors import DetrepError, InputError, InternalAssertionFailure, NotDecomposable, Verdict
from .hyperbolic import is_hyperbolic_at, pd_coordinates, pd_rep_hyperbolicity_check, pd_verdicts, thread_count
from .kernelmod import is_generically_mg, matrix_factorization, recover_from_adjoint
from .linearize import homogenize_matrix, homogenized_determinant, linearize, sym_linearize
from .localred import local_reduce
from .matrix import PolyMatrix, det_and_adjugate, determinant
from .parser import (
    format_factors,
    format_matrix,
    load_text,
    parse_coordinates,
    parse_factors,
    parse_matrix,
    parse_point,
    parse_polynomial,
)
from .symmetric import sym_reduce

DEFAULT_SEED = 0
DEFAULT_TRIALS = 256


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    structured: bool = False
    threads: int = 0


@dataclass
class Outcome:
    verdict: str = "ok"
    data: dict = field(default_factory=dict)
    text: list = field(default_factory=list)
    assertions: list = field(default_factory=list)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# formatting


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _const_matrix(A) -> str:
    return "[" + ", ".join("[" + ", ".join(_q(x) for x in r) + "]" for r in A) + "]"


def _point(p) -> str:
    return str(p) if isinstance(p, ProjectivePoint) else "(" + ", ".join(_q(c) for c in p) + ")"


def _entry(ij) -> str:
    return f"({ij[0]},{ij[1]})"


# input loading


def _matrix(arg):
    text, mv = load_text(arg)
    return parse_matrix(text.strip(), max_vars=mv)


def _poly(arg):
    text, mv = load_text(arg)
    return parse_polynomial(text.strip(), max_vars=mv)


def _factors(arg):
    text, mv = load_text(arg)
    return parse_factors(text, max_vars=mv)


def _center(args):
    if args.affine:
        return parse_coordinates(args.point)
    return parse_point(args.point)


# subcommands


def cmd_det(args, cfg, inputs):
    M = _matrix(args.matrix)
    inputs["matrix"] = format_matrix(M)
    det = determinant(M)
    return Outcome(data={"det": format_polynomial(det)}, text=[format_polynomial(det)])


def cmd_adj(args, cfg, inputs):
    M = _matrix(args.matrix)
    inputs["matrix"] = format_matrix(M)
    det, adj = det_and_adjugate(M)
    if M @ adj != PolyMatrix.identity(M.size, M.nvars) * det:
        raise InternalAssertionFailure("M·adj(M) != det(M)·I")
    return Outcome(data={"adj": format_matrix(adj), "det": format_polynomial(det)},
                   text=[format_matrix(adj)], assertions=["M*adj(M) = det(M)*I"])


def cmd_reduce(args, cfg, inputs):
    M = _matrix(args.matrix)
    pt = _center(args)
    inputs.update(matrix=format_matrix(M), point=_point(pt))
    red = local_reduce(M, pt)
    data = {"p": red.p, "N": format_matrix(red.N), "left": format_matrix(red.left), "right": format_matrix(red.right)}
    text = [f"p = {red.p}", f"N = {data['N']}", f"left = {data['left']}", f"right = {data['right']}"]
    return Outcome(data=data, text=text, assertions=["left*M*right = I + N"])


def cmd_linearize(args, cfg, inputs):
    M = _matrix(args.matrix)
    inputs["matrix"] = format_matrix(M)
    res = sym_linearize(M) if args.symmetric else linearize(M)
    data = {"L": format_matrix(res.L), "size": res.size, "unit": res.unit, "steps": res.step_count}
    checked = ["det(L) = unit*det(M)", "top-degree measure decreases"]
    if args.symmetric:
        checked.append("L symmetric")
    text = [data["L"], f"size = {res.size}", f"unit = {res.unit}", f"steps = {res.step_count}"]
    return Outcome(data=data, text=text, assertions=checked)


def cmd_homogenize(args, cfg, inputs):
    L = _matrix(args.matrix)
    inputs.update(matrix=format_matrix(L), var=f"x{args.var}")
    H = homogenize_matrix(L, args.var)
    det = format_polynomial(homogenized_determinant(L, args.var))
    return Outcome(data={"M": format_matrix(H), "det": det}, text=[format_matrix(H), f"det = {det}"])


def _decomp_data(res):
    return {
        "U1": _const_matrix(res.U1),
        "U2": _const_matrix(res.U2),
        "blocks": [format_matrix(b) for b in res.blocks],
        "factors": [format_polynomial(f) for f in res.factors],
        "constants": [_q(c) for c in res.constants],
    }


def cmd_decompose(args, cfg, inputs):
    M = _matrix(args.matrix)
    inputs["matrix"] = format_matrix(M)
    try:
        if args.factors is not None:
            spec = _factors(args.factors)
            inputs["factors"] = format_factors(spec)
            res = decompose_completely(M, spec)
        else:
            if args.f1 is None or args.f2 is None:
                raise UsageError("decompose needs --f1 and --f2, or --factors")
            f1, f2 = _poly(args.f1), _poly(args.f2)
            inputs.update(f1=format_polynomial(f1), f2=format_polynomial(f2))
            res = decompose(M, f1, f2)
    except NotDecomposable as e:
        data = {"witness": _entry(e.witness) if e.witness else None, "message": str(e)}
        if e.partial is not None:
            data["partial"] = _decomp_data(e.partial)
        text = ["verdict: NotDecomposable"]
        if e.witness:
            text.append(f"witness: adjugate entry {_entry(e.witness)}")
        return Outcome("NotDecomposable", data, text)
    data = _decomp_data(res)
    text = ["verdict: decomposable", f"U1 = {data['U1']}", f"U2 = {data['U2']}"]
    for b, f, c in zip(data["blocks"], data["factors"], data["constants"]):
        text.append(f"block {b}  det = {c} * ({f})")
    return Outcome("decomposable", data, text, res.assertions_checked)


def cmd_maxgen(args, cfg, inputs):
    M = _matrix(args.matrix)
    spec = _factors(args.factors)
    points = [parse_point(p) for p in args.point or []]
    inputs.update(matrix=format_matrix(M), factors=format_factors(spec))
    if points:
        inputs["points"] = [_point(p) for p in points]
    rep = is_generically_mg(M, spec, points)
    verdict = "generically-mg" if rep.verdict else "not-generically-mg"
    factors = [{"f": format_polynomial(r.f), "generic_corank": r.generic_corank, "multiplicity": r.multiplicity, "mg": r.verdict}
               for r in rep.factors]
    pts = [{"point": _point(r.point), "corank": r.corank, "multiplicity": r.multiplicity, "mg": r.verdict} for r in rep.points]
    text = [f"verdict: {verdict}"]
    text += [f"factor {x['f']}: generic corank {x['generic_corank']}, multiplicity {x['multiplicity']}" for x in factors]
    text += [f"point {x['point']}: corank {x['corank']}, multiplicity {x['multiplicity']}, mg {str(x['mg']).lower()}" for x in pts]
    return Outcome(verdict, {"factors": factors, "points": pts}, text)


def cmd_mf(args, cfg, inputs):
    M = _matrix(args.matrix)
    spec = _factors(args.factors)
    inputs.update(matrix=format_matrix(M), factors=format_factors(spec))
    N = matrix_factorization(M, spec)
    red = format_polynomial(spec.reduced())
    return Outcome(data={"N": format_matrix(N), "reduced": red}, text=[format_matrix(N), f"M*N = ({red})*I"],
                   assertions=["generically mg", "adj(M) divisible by prod f^(p-1)", "M*N = N*M = f_red*I"])


def cmd_recover(args, cfg, inputs):
    A = _matrix(args.matrix)
    f = _poly(args.f)
    inputs.update(matrix=format_matrix(A), f=format_polynomial(f))
    M = recover_from_adjoint(A, f)
    det = format_polynomial(determinant(M))
    return Outcome(data={"M": format_matrix(M), "det": det}, text=[format_matrix(M), f"det = {det}"],
                   assertions=["degrees", "det(A) = c*f^(d-1)", "adj(A) divisible by f^(d-2)"])


def cmd_symreduce(args, cfg, inputs):
    M = _matrix(args.matrix)
    pt = _center(args)
    inputs.update(matrix=format_matrix(M), point=_point(pt))
    red = sym_reduce(M, pt)
    data = {"D": [_q(x) for x in red.D], "units": [str(u) for u in red.units], "N": format_matrix(red.N), "A": format_matrix(red.A)}
    text = [f"D = [{', '.join(data['D'])}]", f"units = [{', '.join(data['units'])}]", f"N = {data['N']}", f"A = {data['A']}"]
    return Outcome(data=data, text=text, assertions=["A*M*A^T = U + N", "det(U + N) = det(A)^2*det(M)", "symmetric after each step"])


def _report_data(rep):
    data = {
        "point": _point(rep.point),
        "trials": rep.trials,
        "seed": rep.seed,
        "resampled": rep.resampled,
        "root_counts": [t.distinct_roots for t in rep.per_trial],
    }
    if rep.witness is not None:
        e, v = rep.witness
        data["witness"] = {"point": _point(e), "direction": _point(v), "restriction": [_q(c) for c in rep.witness_poly]}
    return data


def cmd_hyperbolic(args, cfg, inputs):
    pt = parse_point(args.point)
    text_in, _ = load_text(args.expr)
    is_matrix = text_in.lstrip().startswith("[")
    if is_matrix:
        M = _matrix(args.expr)
        inputs.update(matrix=format_matrix(M), point=_point(pt))
        pd, anti = pd_verdicts(M, pt)
        rep = pd_rep_hyperbolicity_check(M, pt, cfg.trials, cfg.seed, threads=cfg.threads)
        checked = ["M(e) positive definite", "det(M) not refuted"]
    else:
        f = _poly(args.expr)
        inputs.update(f=format_polynomial(f), point=_point(pt))
        rep = is_hyperbolic_at(f, pt, cfg.trials, cfg.seed, threads=cfg.threads)
        checked = []
    inputs.update(trials=cfg.trials, seed=cfg.seed)
    data = _report_data(rep)
    text = [f"verdict: {rep.verdict}", f"trials: {rep.trials}  seed: {rep.seed}  resampled: {rep.resampled}"]
    if rep.witness is not None:
        w = data["witness"]
        text.append(f"witness: line {w['point']} + t*{w['direction']}")
        text.append("restriction (ascending in t): " + ", ".join(w["restriction"]))
    if is_matrix:
        data["pd_at_point"] = pd
        data["pd_at_antipode"] = anti
    return Outcome(rep.verdict, data, text, checked)


def cmd_pdcoords(args, cfg, inputs):
    M = _matrix(args.matrix)
    pt = parse_point(args.point)
    inputs.update(matrix=format_matrix(M), point=_point(pt))
    res = pd_coordinates(M, pt)
    data = {"T": _const_matrix(res.T), "coefficients": [_const_matrix(A) for A in res.coefficients],
            "M": format_matrix(res.transformed())}
    text = [f"T = {data['T']}", f"M(T*y) = {data['M']}"]
    return Outcome(data=data, text=text, assertions=["every coefficient matrix positive definite", "T invertible"])


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")

    p = _Parser(prog="detrep", description="Determinantal representations of hypersurfaces, in exact arithmetic.")
    p.add_argument("--version", action="version", version=f"detrep {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help, matrix=True):
        s = sub.add_parser(name, help=help, parents=[common])
        if matrix:
            s.add_argument("matrix", help="matrix text or @file")
        s.set_defaults(fn=fn)
        return s

    add("det", cmd_det, "determinant")
    add("adj", cmd_adj, "adjugate")
    s = add("reduce", cmd_reduce, "local reduction at a point")
    s.add_argument("--point", required=True)
    s.add_argument("--affine", action="store_true", help="treat the point as affine (dehomogenized input)")
    s = add("linearize", cmd_linearize, "linearize a polynomial matrix")
    s.add_argument("--symmetric", action="store_true")
    s = add("homogenize", cmd_homogenize, "homogenize an affine-linear matrix")
    s.add_argument("--var", type=int, default=0, help="index of the homogenizing variable (default 0)")
    s = add("decompose", cmd_decompose, "global block decomposition")
    s.add_argument("--f1")
    s.add_argument("--f2")
    s.add_argument("--factors", help="factor list text or @file")
    s = add("maxgen", cmd_maxgen, "maximal generation test")
    s.add_argument("--factors", required=True)
    s.add_argument("--point", action="append", help="also test at this point (repeatable)")
    s = add("mf", cmd_mf, "matrix factorization of the reduced polynomial")
    s.add_argument("--factors", required=True)
    s = add("recover", cmd_recover, "recover M from a candidate adjoint")
    s.add_argument("--f", required=True)
    s = add("symreduce", cmd_symreduce, "symmetric local reduction")
    s.add_argument("--point", required=True)
    s.add_argument("--affine", action="store_true")
    s = add("hyperbolic", cmd_hyperbolic, "sampled hyperbolicity test (polynomial, or PD pencil if a matrix)", matrix=False)
    s.add_argument("expr", help="polynomial or matrix text, or @file")
    s.add_argument("--point", required=True)
    s.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s = add("pdcoords", cmd_pdcoords, "coordinates with positive definite coefficient matrices")
    s.add_argument("--point", required=True)
    return p


def _emit(out, command, inputs, outcome, structured):
    if structured:
        obj = {
            "command": command,
            "inputs": inputs,
            "verdict": outcome.verdict,
            "data": outcome.data,
            "assertions_checked": outcome.assertions,
        }
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        for line in outcome.text:
            out.write(line + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        err.write(f"{e}\n")
        return 1
    cfg = RunConfig(seed=getattr(args, "seed", DEFAULT_SEED), trials=getattr(args, "trials", DEFAULT_TRIALS),
                    structured=args.json, threads=thread_count())
    inputs = {}
    try:
        outcome = args.fn(args, cfg, inputs)
    except UsageError as e:
        err.write(f"detrep {args.command}: {e}\n")
        return 1
    except InternalAssertionFailure as e:
        err.write(f"internal assertion failed: {e}\n")
        return 2
    except Verdict as e:
        outcome = Outcome(type(e).__name__, {"message": str(e)}, [f"verdict: {type(e).__name__}", str(e)])
    except (InputError, OSError, ValueError) as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        if cfg.structured:
            _emit(out, args.command, inputs, Outcome("error", {"error": type(e).__name__, "message": str(e)}), True)
        return 1
    except DetrepError as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        return 1
    _emit(out, args.command, inputs, outcome, cfg.structured)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
