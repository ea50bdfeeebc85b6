"""Command-line front end.

Subcommands: ``group show``, ``hilbert fg``, ``hilbert generic``, ``codim``,
``richword`` and ``fit``.  Exit status is 0 on success, 1 on a domain error
and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .codimension import codim_table
from .errors import DomainError
from .generic_algebra import (
    EXACT,
    PROBABILISTIC,
    choose_mode,
    component_dimension_generic,
    load_algebra,
)
from .groups import abelianization_map, commutator_subgroup, make_group, read_cocycle
from .lattice_gf import (
    DEFAULT_SAMPLES,
    compositions,
    default_box,
    dp_series,
    hilbert_gf_component,
    hilbert_gf_total,
)
from .product_sets import (
    GradingTuple,
    product_set,
    rich_word,
    table_for,
    word_multidegree,
)
from .ratfun import format_number, rational_fit

FORMAT_VERSION = "1"


def _csv(xs):
    return ",".join(str(x) for x in xs)


def _ratio(q):
    return f"{q.numerator}/{q.denominator}"


def _parse_tuple(G, text):
    tokens = [tok for tok in text.split(",") if tok.strip()]
    if not tokens:
        raise DomainError("empty grading tuple")
    return GradingTuple(G, tuple(G.parse_element(tok) for tok in tokens))


def _header(out, config):
    out.write(f"# gradedpi {__version__} format {FORMAT_VERSION}\n")
    out.write("# config " + " ".join(f"{k}={v}" for k, v in config.items()) + "\n")


def _emit_json(out, payload):
    out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _closed_form_lines(form):
    num = " ".join(f"{_csv(e)}:{format_number(c)}" for e, c in form.numerator.sorted_terms())
    den = " ".join(f"{_csv(v)}:{e}" for v, e in form.denominator.items())
    return [f"closed-form\t{form}", f"numerator\t{num or '0'}", f"denominator\t{den}"]


# -- subcommands -----------------------------------------------------------------

def cmd_group_show(args, out):
    G = make_group(args.group)
    Gp = commutator_subgroup(G)
    ab = abelianization_map(G)
    config = {"group": args.group}
    if args.cocycle:
        read_cocycle(args.cocycle, G)
        config["cocycle"] = args.cocycle
    rows = [
        {"index": g, "label": G.labels[g], "order": G.element_order(g), "coset": ab[g],
         "in_commutator": g in Gp}
        for g in G.elements
    ]
    if args.json:
        payload = {"config": config, "tool": __version__, "format": FORMAT_VERSION,
                   "order": G.order, "commutator_order": Gp.order, "elements": rows}
        if args.cocycle:
            payload["cocycle_valid"] = True
        _emit_json(out, payload)
        return
    _header(out, config)
    out.write(f"# order {G.order} commutator_order {Gp.order}\n")
    if args.cocycle:
        out.write("# cocycle valid\n")
    out.write("index\tlabel\torder\tcoset\tin_commutator\n")
    for row in rows:
        out.write(f"{row['index']}\t{row['label']}\t{row['order']}\t{row['coset']}\t"
                  f"{int(row['in_commutator'])}\n")


def cmd_hilbert_fg(args, out):
    G = make_group(args.group)
    omega = _parse_tuple(G, args.tuple)
    g = G.parse_element(args.component) if args.component is not None else None
    box = args.box if args.box is not None else default_box(G)
    config = {"group": args.group, "tuple": _csv(omega.degrees),
              "component": "all" if g is None else g, "box": box, "terms": args.terms,
              "samples": args.samples, "seed": args.seed}

    result = None
    if args.closed_form:
        if g is None:
            result = hilbert_gf_total(omega, box, args.samples, args.seed)
        else:
            result = hilbert_gf_component(omega, g, box, args.samples, args.seed,
                                          terms=max(args.terms, 30), guard=args.guard)

    tab = table_for(omega)

    def coefficient(A):
        return tab.size(A) if g is None else (tab.mask(A) >> g) & 1

    if args.multi:
        rows = [(A, coefficient(A)) for n in range(args.terms) for A in compositions(n, omega.rank)]
    else:
        rows = list(enumerate(dp_series(omega, args.terms - 1, g))) if args.terms > 0 else []

    if args.json:
        payload = {"config": config, "tool": __version__, "format": FORMAT_VERSION}
        if args.multi:
            payload["coefficients"] = [{"A": list(A), "value": v} for A, v in rows]
        else:
            payload["coefficients"] = [{"n": n, "value": v} for n, v in rows]
        if result is not None:
            payload["status"] = result.status
            payload["reports"] = [rep.to_json() for rep in result.reports]
            payload["closed_form"] = result.closed_form.to_json() if result.closed_form else None
            if result.closed_form is None:
                payload["fitted"] = result.fitted.to_json() if result.fitted else None
        _emit_json(out, payload)
        return

    _header(out, config)
    if result is not None:
        out.write(f"# status {result.status}\n")
        for rep in result.reports:
            out.write(f"# {rep.label}: minimals={rep.minimals} shell_failures={rep.shell_failures}"
                      f"/{rep.shell_points} sample_mismatches={rep.sample_mismatches}"
                      f"/{rep.samples} {rep.status}\n")
        if result.closed_form is not None:
            for line in _closed_form_lines(result.closed_form):
                out.write(line + "\n")
        else:
            out.write(f"fitted\t{result.fitted if result.fitted else 'no fit'}\n")
    out.write("A\tcoefficient\n" if args.multi else "n\tcoefficient\n")
    for key, v in rows:
        out.write(f"{_csv(key) if args.multi else key}\t{v}\n")


def cmd_hilbert_generic(args, out):
    group = make_group(args.group) if args.group else None
    spec = load_algebra(args.algebra, group)
    G = spec.group
    omega = _parse_tuple(G, args.tuple)
    g = G.parse_element(args.component) if args.component is not None else None
    config = {"algebra": args.algebra, "group": G.name, "tuple": _csv(omega.degrees),
              "component": "all" if g is None else g, "terms": args.terms,
              "mode": args.mode or "auto", "seed": args.seed}
    rows = []
    for n in range(args.terms):
        modes = set()
        total = 0
        for A in compositions(n, omega.rank):
            mode = choose_mode(A, args.mode)
            modes.add(mode)
            total += component_dimension_generic(spec, omega, A, g, mode, args.seed)
        label = PROBABILISTIC if PROBABILISTIC in modes else EXACT
        rows.append((n, total, label))
    fit = None
    if args.fit:
        fit = rational_fit([v for _, v, _ in rows], args.guard)

    if args.json:
        payload = {"config": config, "tool": __version__, "format": FORMAT_VERSION,
                   "coefficients": [{"n": n, "value": v, "mode": m} for n, v, m in rows]}
        if args.fit:
            payload["fit"] = fit.to_json() if fit else None
        _emit_json(out, payload)
        return
    _header(out, config)
    if any(m == PROBABILISTIC for _, _, m in rows):
        out.write("# probabilistic rows are lower bounds, exact with high probability\n")
    out.write("n\tcoefficient\tmode\n")
    for n, v, m in rows:
        out.write(f"{n}\t{v}\t{m}\n")
    if args.fit:
        out.write(f"fit\t{fit if fit else 'no fit'}\n")


def cmd_codim(args, out):
    G = make_group(args.group)
    table = codim_table(G, args.max_n)
    config = {"group": args.group, "max_n": args.max_n}
    if args.json:
        _emit_json(out, {"config": config, "tool": __version__, "format": FORMAT_VERSION, "rows": [
            {"n": r.n, "c_n": r.value, "lower": r.lower, "upper": r.upper,
             "ratio": _ratio(r.ratio), "exp_estimate_display": float(f"{r.exp_estimate:.6g}")}
            for r in table]})
        return
    _header(out, config)
    out.write("n\tc_n\tlower\tupper\tratio\texp_estimate\n")
    for r in table:
        out.write(f"{r.n}\t{r.value}\t{r.lower}\t{r.upper}\t{_ratio(r.ratio)}\t{r.exp_estimate:.6g}\n")


def cmd_richword(args, out):
    G = make_group(args.group)
    omega = _parse_tuple(G, args.tuple)
    z = G.parse_element(args.target)
    word = rich_word(omega, z)
    A = word_multidegree(word, omega.rank)
    ps = product_set(omega, A)
    config = {"group": args.group, "tuple": _csv(omega.degrees), "target": z}
    if args.json:
        _emit_json(out, {"config": config, "tool": __version__, "format": FORMAT_VERSION,
                         "word": list(word), "multidegree": list(A),
                         "product_set": list(ps.elements), "coset_label": ps.coset_label})
        return
    _header(out, config)
    out.write(f"word\t{_csv(word)}\n")
    out.write(f"multidegree\t{_csv(A)}\n")
    out.write(f"product_set\t{_csv(ps.elements)}\n")
    out.write(f"labels\t{' '.join(G.labels[x] for x in ps.elements)}\n")


def _read_sequence(path):
    """Coefficients separated by commas, spaces or newlines; '#' starts a comment."""
    values = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0]
        for tok in line.replace(",", " ").split():
            try:
                values.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"{path}: cannot parse coefficient {tok!r}") from None
    return values


def cmd_fit(args, out):
    values = _read_sequence(args.input)
    fit = rational_fit(values, args.guard)
    config = {"input": args.input, "guard": args.guard, "terms": len(values)}
    if args.json:
        _emit_json(out, {"config": config, "tool": __version__, "format": FORMAT_VERSION,
                         "fit": fit.to_json() if fit else None,
                         "display": str(fit) if fit else None})
        return
    out.write(f"{fit if fit else 'no fit'}\n")


# -- parser ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="gradedpi", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version",
                   version=f"gradedpi {__version__} (format {FORMAT_VERSION})")
    sub = p.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="inspect a group").add_subparsers(dest="action", required=True)
    show = grp.add_parser("show", help="print the canonical element ordering")
    show.add_argument("--group", required=True)
    show.add_argument("--cocycle", help="validate a cocycle file against the group")
    show.add_argument("--json", action="store_true")
    show.set_defaults(func=cmd_group_show)

    hil = sub.add_parser("hilbert", help="Hilbert series").add_subparsers(dest="kind", required=True)
    fg = hil.add_parser("fg", help="relatively free algebra of the group algebra")
    fg.add_argument("--group", required=True)
    fg.add_argument("--tuple", required=True)
    fg.add_argument("--component")
    fg.add_argument("--box", type=int)
    fg.add_argument("--terms", type=int, default=10)
    fg.add_argument("--closed-form", action="store_true")
    fg.add_argument("--multi", action="store_true", help="tabulate by multidegree")
    fg.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    fg.add_argument("--guard", type=int, default=8)
    fg.add_argument("--seed", type=int, default=0)
    fg.add_argument("--json", action="store_true")
    fg.set_defaults(func=cmd_hilbert_fg)

    gen = hil.add_parser("generic", help="finite-dimensional graded algebra from a file")
    gen.add_argument("--algebra", required=True)
    gen.add_argument("--group", help="group spec when the file has none")
    gen.add_argument("--tuple", required=True)
    gen.add_argument("--terms", type=int, default=6)
    gen.add_argument("--component")
    mode = gen.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const=EXACT)
    mode.add_argument("--probabilistic", dest="mode", action="store_const", const=PROBABILISTIC)
    gen.add_argument("--fit", action="store_true")
    gen.add_argument("--guard", type=int, default=5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--json", action="store_true")
    gen.set_defaults(func=cmd_hilbert_generic)

    cod = sub.add_parser("codim", help="graded codimensions of FG")
    cod.add_argument("--group", required=True)
    cod.add_argument("--max-n", type=int, required=True)
    cod.add_argument("--json", action="store_true")
    cod.set_defaults(func=cmd_codim)

    rw = sub.add_parser("richword", help="word realizing a full commutator coset")
    rw.add_argument("--group", required=True)
    rw.add_argument("--tuple", required=True)
    rw.add_argument("--target", required=True)
    rw.add_argument("--json", action="store_true")
    rw.set_defaults(func=cmd_richword)

    fit = sub.add_parser("fit", help="fit a rational function to a coefficient list")
    fit.add_argument("--input", required=True)
    fit.add_argument("--guard", type=int, default=5)
    fit.add_argument("--json", action="store_true")
    fit.set_defaults(func=cmd_fit)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
