"""Command line front end: ``rackcoh <verb> ...``.

Exit codes: 0 ok, 2 malformed input file, 3 failed precondition
(axioms, decomposable quandle, not a cocycle), 4 bad argument, 5 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import catalog
from .affine import (
    AffineSpec,
    ClauwensGroup,
    affine_quandle,
    explicit_p2_cocycle,
    family_spec,
    p2_invariants,
    s_group,
)
from .coefficients import parse_coefficients
from .cohomology import (
    CocycleDatum,
    analyze,
    are_cohomologous,
    datum_to_json,
    decompose_cocycle,
    h2_description,
    parse_cocycle,
    reconstruct_cocycle,
    serialize_cocycle,
    verify_cocycle,
)
from .errors import InvalidParamsError, ParseError, RackcohError, TooLargeError
from .fpgroup import DEFAULT_MAX_COSETS
from .homology import DEFAULT_ORACLE_CAP, HomologyResult, quandle_h2, rack_h2
from .quandle import inner_action, parse, serialize


@dataclass
class Config:
    max_cosets: int = DEFAULT_MAX_COSETS
    oracle_cap: int = DEFAULT_ORACLE_CAP
    base_point: int = 0
    json: bool = False
    render_exp: bool = False

    def __post_init__(self):
        if self.max_cosets < 1 or self.oracle_cap < 1:
            raise InvalidParamsError("caps must be positive")
        if self.base_point < 0:
            raise InvalidParamsError("base point must be non-negative")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidParamsError(f"{self.prog}: {message}")


def _globals(defaults: bool) -> argparse.ArgumentParser:
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = _Parser(add_help=False)
    p.add_argument("--max-cosets", type=int, default=d(DEFAULT_MAX_COSETS))
    p.add_argument("--oracle-cap", type=int, default=d(DEFAULT_ORACLE_CAP))
    p.add_argument("--base-point", type=int, default=d(0))
    p.add_argument("--json", action="store_true", default=d(False))
    p.add_argument("--render-exp", action="store_true", default=d(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rackcoh", description=__doc__.splitlines()[0], parents=[_globals(True)])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    common = [_globals(False)]

    p = sub.add_parser("info", parents=common, help="axioms, orbits and n_x")
    p.add_argument("quandle")

    p = sub.add_parser("h2", parents=common, help="H^2(X, A) with generating cocycles")
    p.add_argument("quandle")
    p.add_argument("--coeff", default="QZ")
    p.add_argument("--out-dir", default=".", help="where generator .coc files go")
    p.add_argument("--no-write", action="store_true", help="do not write generator files")

    p = sub.add_parser("cocycle", parents=common, help="cocycle of a datum (a, g)")
    p.add_argument("quandle")
    p.add_argument("--coeff", default="QZ")
    p.add_argument("--a", default="0")
    p.add_argument("--g", default="", help="comma separated values, one per invariant factor (default all 0)")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", parents=common, help="check the cocycle condition")
    p.add_argument("quandle")
    p.add_argument("cocycle")

    p = sub.add_parser("decompose", parents=common, help="datum (a, g) of a cocycle")
    p.add_argument("quandle")
    p.add_argument("cocycle")

    p = sub.add_parser("equiv", parents=common, help="are two cocycles cohomologous")
    p.add_argument("quandle")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("homology", parents=common, help="predicted H_2 and optional oracle")
    p.add_argument("quandle")
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("affine", parents=common, help="affine quandles and their S(L, gamma)")
    p.add_argument("--moduli")
    p.add_argument("--gamma", help="rows separated by ';', entries by ','")
    p.add_argument("--family", choices=["A1", "A2", "A3", "A4"])
    p.add_argument("--p", type=int)
    p.add_argument("--alpha")
    p.add_argument("--beta", type=int)
    p.add_argument("--explicit", type=int, metavar="ELL", help="write the explicit cocycle for ELL")
    p.add_argument("-o", "--output", help="write the quandle (.qnd) here")

    p = sub.add_parser("catalog", parents=common, help="built-in fixtures")
    csub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    csub.add_parser("list", parents=common)
    g = csub.add_parser("get", parents=common)
    g.add_argument("name")
    g.add_argument("-o", "--output")
    return parser


# --------------------------------------------------------------------------
# helpers


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidParamsError(f"cannot read {path}: {exc.strerror}") from None


def _load_quandle(path):
    return parse(_read(path))


def _load_cocycle(path, q):
    return parse_cocycle(_read(path), q)


def _coeff(label):
    try:
        return parse_coefficients(label)
    except ParseError as exc:
        raise InvalidParamsError(str(exc)) from None


def _value(A, token):
    try:
        return A.parse(token.strip())
    except ParseError as exc:
        raise InvalidParamsError(str(exc)) from None


def _emit(out, cfg, data, text):
    if cfg.json:
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _write(path, text, out):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def _render(A, v, cfg):
    s = A.format(v)
    if cfg.render_exp:
        z = A.render(v)
        s += f" ({z.real:+.6f}{z.imag:+.6f}i)"
    return s


def _structure(q, cfg):
    if cfg.base_point >= q.n:
        raise InvalidParamsError(f"base point {cfg.base_point} outside [0, {q.n})")
    return analyze(q, x0=cfg.base_point, max_cosets=cfg.max_cosets)


# --------------------------------------------------------------------------
# verbs


def cmd_info(args, cfg, out):
    q = _load_quandle(args.quandle)
    ia = inner_action(q)
    status = "indecomposable" if ia.indecomposable else "decomposable"
    data = {
        "kind": q.kind,
        "size": q.n,
        "indecomposable": ia.indecomposable,
        "orbits": [list(o) for o in ia.orbits],
        "n_x": list(ia.orders),
    }
    text = f"{q.kind}, {status}, n={q.n}\norbits: {len(ia.orbits)}\nn_x: {' '.join(map(str, ia.orders))}"
    _emit(out, cfg, data, text)
    return 0


def cmd_h2(args, cfg, out):
    q = _load_quandle(args.quandle)
    A = _coeff(args.coeff)
    S = _structure(q, cfg)
    summary = h2_description(q, A, structure=S)
    refs = []
    if not args.no_write:
        outdir = Path(args.out_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        stem = Path(args.quandle).stem
        for i, c in enumerate(summary.generators):
            path = outdir / f"{stem}_gen{i}.coc"
            path.write_text(serialize_cocycle(c), encoding="utf-8")
            refs.append(str(path))
    else:
        refs = [f"generator_{i}" for i in range(len(summary.generators))]
    data = summary.to_json(refs)
    lines = [
        f"quandle size        {summary.quandle_size}",
        f"|F_X|               {summary.fx_order}",
        f"|N_X|               {summary.nx_order}",
        f"|N_0|               {summary.n0_order}",
        f"(N_0)_ab factors    {list(summary.n0_invariant_factors)}",
        f"{'H^2(X, ' + A.label + ')':<20}{summary.h2_type}",
    ]
    if summary.h2_order is not None:
        lines.append(f"|H^2|               {summary.h2_order}")
    for r, d in zip(refs, summary.generator_data):
        dj = datum_to_json(A, d)
        lines.append(f"generator {r}: a={dj['a']} g={dj['g']}")
    _emit(out, cfg, data, "\n".join(lines))
    return 0


def cmd_cocycle(args, cfg, out):
    q = _load_quandle(args.quandle)
    A = _coeff(args.coeff)
    S = _structure(q, cfg)
    a = _value(A, args.a)
    if args.g.strip():
        g = tuple(_value(A, t) for t in args.g.split(","))
    else:
        g = tuple(A.zero for _ in S.factors)
    if not S.factors and g == (A.zero,):
        g = ()
    c = reconstruct_cocycle(S, A, CocycleDatum(a, g))
    ok, wit = verify_cocycle(c)
    if not ok:
        raise RackcohError(f"reconstructed table fails the cocycle condition at {wit}")
    _write(args.output, serialize_cocycle(c), out)
    return 0


def cmd_verify(args, cfg, out):
    q = _load_quandle(args.quandle)
    c = _load_cocycle(args.cocycle, q)
    ok, wit = verify_cocycle(c)
    data = {"cocycle": ok, "witness": list(wit) if wit else None}
    text = "cocycle: yes" if ok else f"cocycle: no, fails at (x, y, z) = {wit}"
    _emit(out, cfg, data, text)
    return 0 if ok else 3


def cmd_decompose(args, cfg, out):
    q = _load_quandle(args.quandle)
    c = _load_cocycle(args.cocycle, q)
    S = _structure(q, cfg)
    d = decompose_cocycle(S, c)
    A = c.coeff
    data = datum_to_json(A, d)
    data["n0_invariant_factors"] = list(S.factors)
    text = f"a = {_render(A, d.a, cfg)}\ng = [{', '.join(_render(A, v, cfg) for v in d.g)}]"
    _emit(out, cfg, data, text)
    return 0


def cmd_equiv(args, cfg, out):
    q = _load_quandle(args.quandle)
    c1 = _load_cocycle(args.first, q)
    c2 = _load_cocycle(args.second, q)
    if c1.coeff != c2.coeff:
        raise InvalidParamsError("cocycles have different coefficient groups")
    gamma = are_cohomologous(c1, c2)
    A = c1.coeff
    data = {"cohomologous": gamma is not None, "gamma": [A.format(v) for v in gamma] if gamma else None}
    if gamma is None:
        text = "not cohomologous"
    else:
        text = "cohomologous, gamma = [" + ", ".join(_render(A, v, cfg) for v in gamma) + "]"
    _emit(out, cfg, data, text)
    return 0


def cmd_homology(args, cfg, out):
    q = _load_quandle(args.quandle)
    S = _structure(q, cfg)
    pred_rack = HomologyResult(1, tuple(S.factors))
    pred_q = HomologyResult(0, tuple(S.factors))
    data = {"engine": {"rack": pred_rack.to_json(), "quandle": pred_q.to_json()}}
    lines = [f"engine  H_2 = {pred_rack}   H_2^Q = {pred_q}"]
    if args.oracle:
        try:
            r, rq = rack_h2(q, cfg.oracle_cap), quandle_h2(q, cfg.oracle_cap)
        except TooLargeError:
            data["oracle"] = None
            data["note"] = "oracle skipped"
            lines.append(f"oracle skipped (|X| = {q.n} > cap {cfg.oracle_cap})")
        else:
            data["oracle"] = {"rack": r.to_json(), "quandle": rq.to_json()}
            data["agree"] = r == pred_rack and rq == pred_q
            lines.append(f"oracle  H_2 = {r}   H_2^Q = {rq}")
            lines.append("agree" if data["agree"] else "DISAGREE")
    _emit(out, cfg, data, "\n".join(lines))
    if args.oracle and data.get("agree") is False:
        return 1
    return 0


def _ints(s, what):
    try:
        return [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise InvalidParamsError(f"{what} must be comma separated integers") from None


def cmd_affine(args, cfg, out):
    params = None
    if args.family:
        if args.p is None or args.alpha is None:
            raise InvalidParamsError("--family needs --p and --alpha")
        alpha = _ints(args.alpha, "--alpha")
        params = tuple(alpha + ([args.beta] if args.beta is not None else []))
        spec = family_spec(args.family, args.p, params)
    else:
        if not args.moduli or not args.gamma:
            raise InvalidParamsError("give --moduli and --gamma, or --family")
        moduli = _ints(args.moduli, "--moduli")
        gamma = [_ints(r, "--gamma") for r in args.gamma.split(";")]
        spec = AffineSpec(moduli, gamma)
    S = s_group(spec)
    G = ClauwensGroup(spec, S)
    ok_id, _ = G.check_identification()
    data = {
        "size": spec.size,
        "moduli": list(spec.moduli),
        "gamma": [list(r) for r in spec.gamma],
        "order_gamma": spec.order(),
        "s_invariant_factors": list(S.factors),
        "clauwens_identification": ok_id,
    }
    lines = [
        f"Aff(L, gamma) of size {spec.size}, ord(gamma) = {spec.order()}",
        f"S(L, gamma) factors {list(S.factors)}",
        f"identification x -> (x, 1, 0): {'ok' if ok_id else 'FAILS'}",
    ]
    if args.family:
        pred = p2_invariants(args.p, args.family, params)
        data["predicted_h2"] = pred.to_json()
        lines.append(f"predicted H_2 = {pred}")
    if args.output:
        Path(args.output).write_text(serialize(affine_quandle(spec)), encoding="utf-8")
        data["quandle_file"] = args.output
    if args.explicit is not None:
        if not args.family:
            raise InvalidParamsError("--explicit needs --family")
        fam_params = params[:1] if args.family == "A1" else (() if args.family == "A2" else params)
        c = explicit_p2_cocycle(args.family, args.p, fam_params, args.explicit)
        ok, wit = verify_cocycle(c)
        data["explicit_cocycle"] = {"valid": ok, "witness": list(wit) if wit else None}
        lines.append(f"explicit cocycle (ell = {args.explicit}): " + ("valid" if ok else f"fails at {wit}"))
        if not cfg.json:
            lines.append(serialize_cocycle(c).rstrip("\n"))
    _emit(out, cfg, data, "\n".join(lines))
    return 0


def cmd_catalog(args, cfg, out):
    if args.action == "list":
        rows = [(n, catalog.get(n)) for n in catalog.names()]
        data = [{"name": n, "size": f.quandle.n, "note": f.note} for n, f in rows]
        text = "\n".join(f"{n:<20} {f.quandle.n:>4}  {f.note}" for n, f in rows)
        _emit(out, cfg, data, text)
        return 0
    f = catalog.get(args.name)
    _write(args.output, serialize(f.quandle, comment=f"{f.name}: {f.note}"), out)
    return 0


VERBS = {
    "info": cmd_info,
    "h2": cmd_h2,
    "cocycle": cmd_cocycle,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "equiv": cmd_equiv,
    "homology": cmd_homology,
    "affine": cmd_affine,
    "catalog": cmd_catalog,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = Config(args.max_cosets, args.oracle_cap, args.base_point, args.json, args.render_exp)
        return VERBS[args.verb](args, cfg, out)
    except RackcohError as exc:
        err.write(f"rackcoh: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except KeyboardInterrupt:
        return 130
