"""Command-line interface.

Exit codes: 0 success / admits / true, 1 obstructed / false, 2 undecided,
64 usage error, 65 data error (parse error, Jacobi failure, out of scope).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .catalog import ENTRIES, CatalogError, catalog
from .classify import OutOfScope, classify, type_bound, verify_witness
from .exact import format_complex, format_rational, parse_rational
from .exterior import PForm, annihilator_filtration, format_form
from .formats import ParseError, format_algebra, parse_algebra, parse_form, parse_generalized
from .liealg import JacobiError, LieAlgebra, NotNilpotentError, graded, homogeneous_weights, lower_central_series, validate
from .spinor import DEFAULT_MAX_DIM, annihilator, cond_nondegenerate, integrability, spinor_from_data, spinor_line_from_L
from .structures import courant, pairing

EXIT_OK, EXIT_FALSE, EXIT_UNDECIDED, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65
VERBS = ("validate", "series", "grade", "filtration", "bound", "classify", "witness",
         "catalog", "courant", "spinor")
OUTCOME_CODES = {"admits": EXIT_OK, "obstructed": EXIT_FALSE, "undecided": EXIT_UNDECIDED}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gcsnil", description="Complex and generalized complex structures "
                "on nilpotent Lie algebras, with exact arithmetic.")
    p.add_argument("--version", action="version", version=f"gcsnil {__version__}")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("path", nargs="?", help="algebra file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--catalog", metavar="NAME")
    p.add_argument("--list", action="store_true", help="list catalog entries")
    for flag in ("n", "r", "d"):
        p.add_argument(f"--{flag}", type=int)
    for flag in ("delta", "a", "b"):
        p.add_argument(f"--{flag}")
    p.add_argument("--theta", action="append", default=[], metavar="EXPR")
    p.add_argument("--B", metavar="EXPR")
    p.add_argument("--omega", metavar="EXPR")
    p.add_argument("--u", metavar="EXPR")
    p.add_argument("--v", metavar="EXPR")
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    return p


# --------------------------------------------------------------------------
# input

def _rational_param(name, text):
    try:
        return parse_rational(text)
    except ValueError:
        raise UsageError(f"--{name} expects a rational literal, got {text!r}") from None


def load_algebra(args) -> LieAlgebra:
    if args.path and args.catalog:
        raise UsageError("give either a file or --catalog, not both")
    if args.catalog:
        entry = ENTRIES.get(args.catalog)
        if entry is None:
            raise UsageError(f"unknown catalog name {args.catalog!r} (see 'catalog --list')")
        params = {}
        for name in entry.params:
            val = getattr(args, name, None)
            if val is not None and name in ("delta", "a", "b"):
                val = _rational_param(name, val)
            params[name] = val
        try:
            return catalog(args.catalog, **params)
        except CatalogError as e:
            raise UsageError(str(e)) from None
    if not args.path:
        raise UsageError("an algebra file or --catalog NAME is required")
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DataError(f"cannot read {args.path}: {e.strerror}") from None
    try:
        return parse_algebra(text, name=args.path)
    except ParseError as e:
        raise DataError(f"{args.path}: {e}") from None
    except ValueError as e:
        raise DataError(f"{args.path}: {e}") from None


def _checked(g: LieAlgebra):
    try:
        return validate(g)
    except JacobiError as e:
        a, b, c = e.triple
        raise DataError(f"Jacobi identity fails on ({g.labels[a]}, {g.labels[b]}, {g.labels[c]})") from None


def _forms(exprs, dim, what="--theta"):
    out = []
    for e in exprs:
        try:
            out.append(parse_form(e, dim))
        except ParseError as err:
            raise DataError(f"{what} {e!r}: col {err.col}: {err.message}") from None
    return out


def _gv_text(gv) -> str:
    d = gv.dim
    terms = {(k,): c for k, c in enumerate(gv.vec) if c}
    vec = format_form(PForm(d, terms, 1), symbol="X") if terms else ""
    fterms = {(k,): c for k, c in enumerate(gv.form) if c}
    form = format_form(PForm(d, fterms, 1)) if fterms else ""
    if vec and form:
        return vec + (" - " + form[1:] if form.startswith("-") else " + " + form)
    return vec or form or "0"


# --------------------------------------------------------------------------
# verbs: each returns (exit code, report dict, text lines)

def cmd_validate(g, args):
    rep = _checked(g)
    d = {"algebra": g.name, "dim": g.dim, **rep.to_dict()}
    lines = [f"algebra: {g.name or '-'}", f"dim: {g.dim}", "Jacobi: ok", f"class: {rep.cls}"]
    if rep.nilindex is not None:
        lines.append(f"nilindex: {rep.nilindex}")
        lines.append("form: {" + ", ".join(map(str, rep.form_vector)) + "}"
                     + (f" ({rep.form_tag})" if rep.form_tag else ""))
    return EXIT_OK, d, lines


def cmd_series(g, args):
    _checked(g)
    series = lower_central_series(g)
    d = {"algebra": g.name, "dims": [s.dim for s in series],
         "bases": [[[format_rational(x) for x in v] for v in s.basis()] for s in series]}
    lines = []
    for i, s in enumerate(series, start=1):
        lines.append(f"g^{i}: dim {s.dim}")
        for v in s.basis():
            lines.append("  " + (format_form(PForm(g.dim, {(k,): c for k, c in enumerate(v) if c}, 1), "X")))
    return EXIT_OK, d, lines


def cmd_grade(g, args):
    rep = _checked(g)
    if rep.nilindex is None:
        raise DataError("algebra is not nilpotent")
    gr = graded(g)
    w = homogeneous_weights(g)
    text = format_algebra(gr)
    d = {"algebra": g.name, "naturally_graded_basis": gr == g, "weights": w, "graded": text}
    lines = [f"weights: {w if w is not None else 'none'}",
             f"basis already graded: {'yes' if gr == g else 'no'}", "graded algebra:"]
    lines += ["  " + x for x in text.splitlines()]
    return EXIT_OK, d, lines


def cmd_filtration(g, args):
    rep = _checked(g)
    if rep.nilindex is None:
        raise DataError("algebra is not nilpotent")
    F = annihilator_filtration(g)
    d = {"algebra": g.name, **F.to_dict()}
    lines = [f"dims V_i: {list(F.dims)}", f"quotients: {list(F.quotient_dims)}",
             f"j: {F.j_index if F.j_index is not None else 'undefined'}"]
    for i in range(1, F.nilindex + 1):
        basis = [format_form(PForm.from_vector(v)) for v in F.spaces[i].basis()]
        lines.append(f"V_{i}: " + ", ".join(basis))
    return EXIT_OK, d, lines


def cmd_bound(g, args):
    _checked(g)
    try:
        b = type_bound(g)
    except (ValueError, NotNilpotentError) as e:
        raise DataError(str(e)) from None
    excluded = b.k_max < b.n
    d = {"algebra": g.name, **b.to_dict(), "type_n_excluded": excluded}
    lines = [f"n: {b.n}", f"nilindex: {b.nilindex}", f"j: {b.j}", f"k_max: {b.k_max}",
             "type n: " + ("excluded by the bound" if excluded else "not excluded")]
    return (EXIT_FALSE if excluded else EXIT_OK), d, lines


def cmd_classify(g, args):
    _checked(g)
    try:
        v = classify(g)
    except OutOfScope as e:
        raise DataError(str(e)) from None
    d = v.to_dict()
    lines = [f"algebra: {g.name or '-'}", f"outcome: {v.outcome}", f"reason: {v.reason}"]
    if v.bound:
        b = v.bound
        lines.append(f"bound: n={b.n} nilindex={b.nilindex} j={b.j} k_max={b.k_max}")
    for p in v.profiles:
        lines.append(f"profile {tuple(p.profile)}: {p.outcome} ({p.reason})")
        if p.polynomial is not None:
            lines.append(f"  polynomial: {p.polynomial}")
            if p.polynomial.degree >= 1:
                lines.append(f"  real roots: {p.real_root_count}")
        for k, s in enumerate(p.steps, start=1):
            lines.append(f"  step {k}: {_step_text(s)}")
    if v.witness is not None:
        lines.append("witness: " + ", ".join(format_form(t) for t in v.witness))
        lines.append("J: " + "; ".join(" ".join(format_rational(x) for x in row) for row in v.J))
    return OUTCOME_CODES[v.outcome], d, lines


def _step_text(s) -> str:
    data = s.data
    if s.kind == "count":
        return f"count ({data['rule']}) at level {data['level']}: needs {data['needed']}, has {data['available']}"
    if s.kind == "branch":
        return f"branch {data['case']}: {data['conclusion']}"
    if s.kind == "linear":
        th = ", ".join(f"theta{x}" for x in data["thetas"])
        return (f"linear {th} on V_{data['nil']}: minor det {data['minor_det']}, "
                f"top rank {data['top_rank']} ({data.get('conclusion', '')})")
    if s.kind == "univariate":
        eqs = ", ".join(str(e) for e in data["equations"])
        return f"univariate relations [{eqs}], gcd {data['gcd']}"
    return s.kind


def cmd_witness(g, args):
    _checked(g)
    if not args.theta:
        raise UsageError("witness needs --theta expressions")
    thetas = _forms(args.theta, g.dim)
    try:
        rep = verify_witness(g, thetas)
    except ValueError as e:
        raise DataError(str(e)) from None
    d = {"algebra": g.name, "thetas": [format_form(t) for t in thetas], **rep.to_dict()}
    lines = [f"{stage}: {'ok' if ok else 'FAIL'}" for stage, ok in rep.stages.items()]
    lines.append("verdict: " + ("valid" if rep.ok else f"invalid at {rep.failed_stage}"))
    return (EXIT_OK if rep.ok else EXIT_FALSE), d, lines


def cmd_catalog(args):
    if args.list or not args.catalog:
        if not args.list:
            raise UsageError("catalog needs --list or --catalog NAME")
        items = [{"name": e.name, "params": list(e.params), "ranges": e.ranges,
                  "description": e.description} for e in ENTRIES.values()]
        lines = [f"{e.name:10} {' '.join('--' + p for p in e.params) or '-':16} {e.ranges:32} {e.description}"
                 for e in ENTRIES.values()]
        return EXIT_OK, {"entries": items}, lines
    g = load_algebra(args)
    text = format_algebra(g)
    return EXIT_OK, {"algebra": g.name, "file": text}, text.splitlines()


def cmd_courant(g, args):
    _checked(g)
    if not args.u or not args.v:
        raise UsageError("courant needs --u and --v")
    try:
        u, v = parse_generalized(args.u, g.dim), parse_generalized(args.v, g.dim)
    except ParseError as e:
        raise DataError(f"col {e.col}: {e.message}") from None
    br = courant(g, u, v)
    pr = pairing(u, v)
    d = {"bracket": _gv_text(br), "pairing": format_complex(pr)}
    return EXIT_OK, d, [f"[u, v] = {_gv_text(br)}", f"<u, v> = {format_complex(pr)}"]


def cmd_spinor(g, args):
    rep = _checked(g)
    if g.dim > args.max_dim:
        raise DataError(f"dimension {g.dim} exceeds --max-dim {args.max_dim}")
    if rep.nilindex is None:
        raise DataError("algebra is not nilpotent")
    if g.dim % 2:
        raise DataError("odd dimension")
    thetas = _forms(args.theta, g.dim)
    B = _forms([args.B], g.dim, "--B")[0] if args.B else None
    w = _forms([args.omega], g.dim, "--omega")[0] if args.omega else None
    for f, flag in ((B, "--B"), (w, "--omega")):
        if f is not None and f.terms and f.degree != 2:
            raise DataError(f"{flag} must be a 2-form")
        if f is not None and any(getattr(c, "im", 0) for c in f.terms.values()):
            raise DataError(f"{flag} must be real")
    rho = spinor_from_data(thetas, B, w, g.dim)
    if not rho:
        d = {"spinor": "0", "pure": False}
        return EXIT_FALSE, d, ["rho = 0"]
    L = annihilator(g, rho)
    nondeg = cond_nondegenerate(g, thetas, w, len(thetas)) if len(thetas) <= g.dim // 2 else False
    integ = integrability(g, rho)
    d = {"spinor": str(rho), "k": len(thetas), "annihilator_dim": L.dim, "pure": L.pure,
         "isotropic": L.is_isotropic(), "transverse": L.transverse(), "nondegenerate": nondeg,
         "closed": integ.closed, "integrable": integ.closed or integ.solution is not None}
    lines = [f"rho = {rho}", f"annihilator dim: {L.dim} (pure: {'yes' if L.pure else 'no'})",
             f"isotropic: {'yes' if d['isotropic'] else 'no'}",
             f"L meets conj(L) in 0: {'yes' if d['transverse'] else 'no'}",
             f"nondegenerate: {'yes' if nondeg else 'no'}",
             f"d rho = 0: {'yes' if integ.closed else 'no'}"]
    if not integ.closed:
        lines.append(f"d rho = v . rho solvable: {'yes' if integ.solution is not None else 'no'}")
    if L.pure:
        line = spinor_line_from_L(g, L, max_dim=args.max_dim)
        ok = line.projectively_equal(rho)
        d["line_round_trip"] = ok
        lines.append(f"spinor line round trip: {'yes' if ok else 'no'}")
    good = L.pure and L.transverse() and (integ.closed or integ.solution is not None)
    if good:
        d["type"] = len(thetas)
        lines.append(f"generalized complex structure of type {len(thetas)}")
    return (EXIT_OK if good else EXIT_FALSE), d, lines


COMMANDS = {"validate": cmd_validate, "series": cmd_series, "grade": cmd_grade,
            "filtration": cmd_filtration, "bound": cmd_bound, "classify": cmd_classify,
            "witness": cmd_witness, "courant": cmd_courant, "spinor": cmd_spinor}


def _jsonify(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "catalog":
            code, report, lines = cmd_catalog(args)
        else:
            g = load_algebra(args)
            code, report, lines = COMMANDS[args.verb](g, args)
    except UsageError as e:
        print(f"gcsnil: usage error: {e}", file=err)
        return EXIT_USAGE
    except DataError as e:
        print(f"gcsnil: data error: {e}", file=err)
        return EXIT_DATA
    if args.format == "json":
        report = {"schema": 1, "verb": args.verb, **report}
        out.write(json.dumps(report, sort_keys=True, indent=2, default=_jsonify) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
