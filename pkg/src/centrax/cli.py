"""``centrax`` command line.

Exit status: 0 for success or a true verdict, 1 for a false verdict (the
report carries a witness), 2 for usage, validation, file, parse and cap
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures
from .algebra import FiniteAlgebra, Homomorphism, algebra_to_dict, product
from .caps import Caps
from .central import (
    analyze_homomorphism,
    central_elements,
    check_dp,
    formula_R_counterexample,
    lexdfc_counterexample,
    rexdfc_counterexample,
)
from .congruence import (
    all_congruences,
    cg,
    check_zero_one,
    congruence_to_dict,
    maltsev_witness,
)
from .errors import CapExceeded, CentraxError
from .factor import check_fhp, decompose, factor_pairs
from .free import synthesize
from .io import dump_json, homomorphism_to_dict, load_algebra, load_homomorphism
from .transfer import codisjointness_report, pushout_quotient, stability_pushout_check, verify_pushout

EVIDENCE_NOTE = "finite evidence only; no variety-level claim"


class Report(dict):
    """Report payload plus the verdict that decides the exit status."""

    def __init__(self, ok=True, /, **fields):
        super().__init__(fields)
        self.ok = ok


# -- element tokens ---------------------------------------------------------


def split_top(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses: ``"(0,1),(1,1)"`` -> two tokens."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return [t for t in out if t]


def resolve_tuple(A: FiniteAlgebra, token: str) -> tuple[int, ...]:
    """An element name or index, or ``one``/``zero`` for the designated tuples."""
    token = token.strip()
    if A.display is not None and token in A.display:
        return (A.display.index(token),)
    if token in ("one", "1", "1⃗"):
        return tuple(A.one)
    if token in ("zero", "0", "0⃗"):
        return tuple(A.zero)
    return (A.element(token.lstrip("#")),)


def parse_pairs(A: FiniteAlgebra, text: str) -> list[tuple[int, int]]:
    """``"a,b;c,d"`` -> element pairs; designated tuples pair up coordinatewise."""
    pairs = []
    for chunk in split_top(text, ";"):
        toks = split_top(chunk)
        if len(toks) != 2:
            raise CentraxError(f"expected two elements in {chunk!r}")
        x, y = resolve_tuple(A, toks[0]), resolve_tuple(A, toks[1])
        if len(x) != len(y):
            raise CentraxError(f"tuples of different lengths in {chunk!r}")
        pairs.extend(zip(x, y))
    return pairs


# -- verbs ------------------------------------------------------------------


def _blocks(A, theta):
    return ["{" + ",".join(A.label(x) for x in b) + "}" for b in theta.blocks()]


def cmd_congruences(args, caps):
    A = load_algebra(args.algebra)
    cons = all_congruences(A, caps)
    return Report(
        algebra=A.name,
        size=A.size,
        count=len(cons),
        congruences=[
            dict(congruence_to_dict(t, A.name), blocks=" ".join(_blocks(A, t))) for t in cons
        ],
    )


def cmd_factors(args, caps):
    A = load_algebra(args.algebra)
    pairs = factor_pairs(A, caps)
    return Report(
        algebra=A.name,
        count=len(pairs),
        pairs=[
            {
                "theta": congruence_to_dict(p.theta, A.name),
                "delta": congruence_to_dict(p.delta, A.name),
                "sizes": [p.theta.num_blocks, p.delta.num_blocks],
            }
            for p in pairs
        ],
    )


def cmd_centrals(args, caps):
    A = load_algebra(args.algebra)
    Z = central_elements(A, caps)
    out = Z.to_dict()
    return Report(boolean_algebra=f"2^{out['atoms']}", **out)


def cmd_decompose(args, caps):
    A = load_algebra(args.algebra)
    pairs = factor_pairs(A, caps)
    if args.index is not None:
        if not 0 <= args.index < len(pairs):
            raise CentraxError(f"pair index {args.index} out of range 0..{len(pairs) - 1}")
        chosen = [pairs[args.index]]
    else:
        chosen = [p for p in pairs if not (p.theta.is_identity() or p.delta.is_identity())]
    out = []
    for p in chosen:
        d = decompose(A, p, caps)
        out.append(
            {
                "theta": congruence_to_dict(p.theta, A.name),
                "delta": congruence_to_dict(p.delta, A.name),
                "factor_sizes": [d.left.size, d.right.size],
                "map": {A.label(x): d.product.label(d.iso(x)) for x in range(A.size)},
            }
        )
    return Report(algebra=A.name, directly_indecomposable=not out and A.size > 1, decompositions=out)


def cmd_check(args, caps):
    prop = args.property
    if prop == "fhp":
        if len(args.inputs) != 2:
            raise CentraxError("check fhp takes two algebra files")
        A, B = (load_algebra(x) for x in args.inputs)
        rep = check_fhp(A, B, caps)
        P = product([A, B], caps=caps)
        return Report(rep.verdict, property="fhp", note=EVIDENCE_NOTE, **rep.to_dict(P))
    if len(args.inputs) != 1:
        raise CentraxError(f"check {prop} takes one input file")
    src = args.inputs[0]
    if prop == "stability":
        f = load_homomorphism(src)
        rep = stability_pushout_check(f, caps)
        return Report(rep.stable, property="stability", note=EVIDENCE_NOTE, **rep.to_dict())
    A = load_algebra(src)
    if prop == "zero-one":
        ok = check_zero_one(A)
        theta = cg(A, list(zip(A.zero, A.one)))
        return Report(ok, property="zero-one", algebra=A.name, holds=ok, theta=congruence_to_dict(theta, A.name))
    if prop == "dp":
        rep = check_dp(A, caps)
        return Report(rep.holds, property="dp", algebra=A.name, **rep.to_dict(A))
    if prop in ("rexdfc", "lexdfc"):
        finder = rexdfc_counterexample if prop == "rexdfc" else lexdfc_counterexample
        Z = central_elements(A, caps)
        e = finder(Z)
        rep = Report(e is None, property=prop, algebra=A.name, holds=e is None, centrals=len(Z))
        if e is not None:
            c = Z[e]
            which = c.theta1 if prop == "rexdfc" else c.theta0
            ends = A.one if prop == "rexdfc" else A.zero
            rep["witness"] = A.labels(e)
            rep["factor_congruence"] = congruence_to_dict(which, A.name)
            rep["principal"] = congruence_to_dict(cg(A, list(zip(ends, e))), A.name)
        return rep
    raise CentraxError(f"unknown property {prop!r}")


def cmd_analyze_hom(args, caps):
    f = load_homomorphism(args.hom)
    rep = analyze_homomorphism(f, caps=caps)
    out = rep.to_dict()
    w = out["witnesses"]
    if "complementary" in w:
        witness = "(" + ",".join(w["complementary"]["pair"]) + ")"
    elif "central" in w:
        witness = w["central"]["e"]
    else:
        witness = None
    return Report(rep.preserves_complementary, witness=witness, **out)


def cmd_synthesize_r(args, caps):
    gen = load_algebra(args.algebra)
    syn = synthesize(gen, caps)
    out = syn.to_dict()
    checked = []
    bad = None
    family = [gen] + [B for B in fixtures.algebras().values() if B.signature == gen.signature and B.size <= args.verify_size]
    seen = set()
    for A in family:
        for B in family:
            key = (A.name, B.name)
            if key in seen or A.size * B.size > caps.product:
                continue
            seen.add(key)
            cx = formula_R_counterexample(syn.formula, A, B, caps)
            checked.append(f"{A.name}x{B.name}")
            if cx is not None and bad is None:
                bad = {"product": f"{A.name}x{B.name}", "pair": [str(cx[0]), str(cx[1])]}
    out["formula_sexpr"] = syn.formula.to_sexpr()
    out["verified_products"] = len(checked)
    out["counterexample"] = bad
    return Report(bad is None, note=EVIDENCE_NOTE, **out)


def cmd_pushout(args, caps):
    f = load_homomorphism(args.hom)
    S = parse_pairs(f.dom, args.collapse) if args.collapse else []
    if args.cocone:
        g = load_homomorphism(args.cocone)
        sq, h = pushout_quotient(f, S, cocone=g)
    else:
        sq, h = pushout_quotient(f, S), None
    ver = verify_pushout(sq, caps)
    out = sq.to_dict()
    out["universal_property"] = ver.summary()
    if h is not None:
        out["cocone_factorisation"] = list(h.map)
    return Report(sq.commutes() and ver.holds, **out)


def cmd_fixture(args, caps):
    params = {}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise CentraxError(f"bad parameter {item!r}, expected key=value")
        params[key] = value
    if args.name == "random" and args.seed is not None:
        params.setdefault("seed", args.seed)
    obj = fixtures.build(args.name, **params)
    data = homomorphism_to_dict(obj) if isinstance(obj, Homomorphism) else algebra_to_dict(obj)
    if args.output:
        dump_json(data, args.output)
        return Report(written=args.output, fixture=args.name)
    return Report(_raw=data)


def cmd_witness(args, caps):
    A = load_algebra(args.algebra)
    (a, b), = parse_pairs(A, args.pair)
    gens = parse_pairs(A, args.gens)
    c = tuple(x for x, _ in gens)
    d = tuple(y for _, y in gens)
    if not cg(A, gens).relates(a, b):
        return Report(False, algebra=A.name, member=False, pair=[A.label(a), A.label(b)])
    chain = maltsev_witness(A, a, b, c, d, caps)
    return Report(
        algebra=A.name, member=True, k=chain.k, valid=chain.validate(A), chain=chain.to_dict(A)
    )


def cmd_codisjoint(args, caps):
    A, B = (load_algebra(x) for x in args.inputs)
    rep = codisjointness_report(A, B)
    return Report(rep.holds, note=EVIDENCE_NOTE, **rep.to_dict())


# -- rendering --------------------------------------------------------------


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict) and set(v) == {"base", "rep"}:
        return " ".join(str(x) for x in v["rep"])
    return str(v)


def render_text(report: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in report.items():
        if isinstance(value, dict) and set(value) != {"base", "rep"}:
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and any(isinstance(x, (dict, list)) for x in value):
            lines.append(f"{pad}{key}:")
            for item in value:
                if isinstance(item, dict):
                    body = render_text(item, indent + 2).lstrip()
                    lines.append(f"{pad}  - {body}")
                else:
                    lines.append(f"{pad}  - {_fmt(item)}")
        else:
            lines.append(f"{pad}{key}: {_fmt(value)}")
    return "\n".join(l for l in lines if l)


def emit(report: Report, fmt: str, out=None):
    out = out or sys.stdout
    if "_raw" in report:
        print(json.dumps(report["_raw"], indent=2), file=out)
        return
    if fmt == "json":
        print(json.dumps(dict(report, ok=report.ok), indent=2), file=out)
    else:
        print(render_text(report), file=out)


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--cap", default=argparse.SUPPRESS, help="cap override: N or key=value,...")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="centrax",
        description="Congruences, factor congruences and central elements of finite algebras.",
        parents=[common],
    )
    sub = p.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    verb("congruences", cmd_congruences, "list Con(A)").add_argument("algebra")
    verb("factors", cmd_factors, "list factor-congruence pairs").add_argument("algebra")
    verb("centrals", cmd_centrals, "central elements and their Boolean algebra").add_argument("algebra")
    sp = verb("decompose", cmd_decompose, "direct decompositions from factor pairs")
    sp.add_argument("algebra")
    sp.add_argument("--index", type=int, help="decompose along factor pair number INDEX only")
    sp = verb("check", cmd_check, "check a property")
    sp.add_argument("property", choices=("dp", "rexdfc", "lexdfc", "fhp", "stability", "zero-one"))
    sp.add_argument("inputs", nargs="+")
    verb("analyze-hom", cmd_analyze_hom, "preservation of central elements").add_argument("hom")
    sp = verb("synthesize-r", cmd_synthesize_r, "synthesize the existential (R) formula")
    sp.add_argument("algebra")
    sp.add_argument("--verify-size", type=int, default=4, help="verify on fixture products with factors up to this size")
    sp = verb("pushout", cmd_pushout, "push a quotient out along a homomorphism")
    sp.add_argument("hom")
    sp.add_argument("--collapse", default="", help='pairs to identify, e.g. "1,(0,1)" or "a,b;c,d"')
    sp.add_argument("--cocone", help="homomorphism file g: dom -> C constant on the collapsed pairs")
    sp = verb("fixture", cmd_fixture, "write a fixture algebra or homomorphism as JSON")
    sp.add_argument("name")
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("-o", "--output")
    sp = verb("witness", cmd_witness, "Maltsev chain for a pair in a generated congruence")
    sp.add_argument("algebra")
    sp.add_argument("--pair", required=True, help='"a,b"')
    sp.add_argument("--gens", required=True, help='generating pairs "c,d;c2,d2" (one/zero allowed)')
    sp = verb("codisjoint", cmd_codisjoint, "pushout of the two product projections")
    sp.add_argument("inputs", nargs=2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "text")
    try:
        caps = Caps.from_env()
        if getattr(args, "cap", None) is not None:
            caps = caps.updated(args.cap)
        if not hasattr(args, "seed"):
            args.seed = None
        report = args.func(args, caps)
    except (CentraxError, FileNotFoundError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        kind = "cap exceeded" if isinstance(exc, CapExceeded) else "error"
        print(f"centrax: {kind}: {msg}", file=sys.stderr)
        return 2
    emit(report, fmt)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
