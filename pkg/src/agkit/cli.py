"""``agkit`` command-line entry point.

Exit codes: 0 on success (and for ``verify-all`` only when every check
passes), 1 when a computation fails, 2 when the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .config import load_config


class InputError(ValueError):
    """Raised for malformed arguments; reported as a usage error."""


# -- argument decoding --------------------------------------------------------


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"expected comma-separated rationals, got {text!r}") from None


def _names(text: str | None) -> list[str] | None:
    if not text:
        return None
    return [t for t in re.split(r"[,\s]+", text) if t]


def parse_complex(text: str) -> complex:
    """Accept ``1.5i``, ``0.3+0.2i``, ``-i``, ``2`` and Python's ``j`` spelling."""
    s = text.strip().replace(" ", "").replace("i", "j")
    s = re.sub(r"(^|[+-])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def _json_arg(text: str) -> Any:
    """Inline JSON, or the path of a JSON file."""
    p = Path(text)
    try:
        if not text.lstrip().startswith(("[", "{")) and p.exists():
            return json.loads(p.read_text())
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _polys(names, texts: Sequence[str], weights=None, min_vars: int = 0):
    from .exact.poly import PolyRing, ring_for

    try:
        ring = ring_for(names, texts, weights)
        if ring.nvars < min_vars and not names:
            ring = PolyRing(min_vars, weights)
        return ring, [ring.parse(t) for t in texts]
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from None


def _out(v: Any) -> Any:
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, float) and v == float("-inf"):
        return "-inf"
    if isinstance(v, dict):
        return {str(k): _out(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_out(x) for x in v]
    if hasattr(v, "to_str"):
        return str(v)
    return v


# -- subcommands -----------------------------------------------------------


def cmd_hilbert(a, cfg):
    from .hilbert import GradedQuotient, hilbert_data, hilbert_series

    weights = _ints(a.weights) if a.weights else None
    ring, gens = _polys(_names(a.vars), a.gens, weights)
    q = GradedQuotient(ring, gens)
    if not q.standard_grading:
        s = hilbert_series(q)
        return {"series": {"num": list(s.numerator), "weights": list(s.weights)}, "values": s.expand(a.terms)}
    d = hilbert_data(q)
    return {
        "series": {"num": d.series.numerator_coeffs(), "pow": d.series.denominator_pow},
        "polynomial": list(d.polynomial),
        "dimension": d.dimension,
        "stableFrom": d.stable_from,
        "values": list(d.values[: a.terms]),
    }


def cmd_bezout(a, cfg):
    from .hilbert import bezout_check

    ring, (f, g) = _polys(_names(a.vars), [a.f, a.g], min_vars=3)
    r = bezout_check(f, g)
    out = {"product": r.product, "agrees": r.agrees, "hilbertConstant": r.hilbert_constant}
    if r.diagnostic:
        out["diagnostic"] = r.diagnostic
    return out


def cmd_mult(a, cfg):
    from .localmult import local_multiplicity

    ring, (f, g) = _polys(_names(a.vars), [a.f, a.g], min_vars=2)
    point = _rationals(a.point)
    if len(point) != ring.nvars:
        raise InputError(f"point needs {ring.nvars} coordinates")
    r = local_multiplicity(f, g, point)
    return {"multiplicity": r.value, "stabilizedAt": r.stabilized_at}


def cmd_molien(a, cfg):
    from .hilbert import DiagonalGroup, molien_series

    if a.elements:
        elems = _json_arg(a.elements)
        if not isinstance(elems, list) or not all(isinstance(e, list) for e in elems):
            raise InputError("--elements must be a list of exponent vectors")
        g = DiagonalGroup.generated(a.modulus, elems)
    elif a.exponents:
        g = DiagonalGroup.cyclic(a.modulus, _ints(a.exponents))
    else:
        raise InputError("give --elements or --exponents")
    r = molien_series(g, a.terms)
    return {"order": g.order(), "num": list(r.numerator), "den": list(r.denominator), "coefficients": [r.series[i] for i in range(a.terms)]}


def cmd_groebner(a, cfg):
    from .ideal import MonomialOrder, buchberger

    names, gens, order = _names(a.vars), list(a.gens or []), a.order
    if a.input:
        req = _json_arg(a.input)
        names = req.get("vars", names)
        gens = req.get("gens", gens)
        order = req.get("order", order)
    if not gens:
        raise InputError("no generators given")
    texts = gens + ([a.member] if a.member else [])
    ring, polys = _polys(names, texts)
    try:
        mo = MonomialOrder.for_ring(ring, order)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    gb = buchberger(polys[: len(gens)], mo, ring=ring)
    out = {"basis": [str(p) for p in gb.polys], "order": mo.kind}
    if a.member:
        out["member"] = gb.contains(polys[-1])
        out["normalForm"] = str(gb.normal_form(polys[-1]))
    return out


def cmd_radical(a, cfg):
    from .ideal import in_radical

    ring, polys = _polys(_names(a.vars), [a.f] + list(a.gens))
    return {"member": in_radical(polys[0], polys[1:], a.order)}


def _index_key(key: str) -> tuple[int, ...]:
    """``"13"`` or ``"1_3"`` or ``"1,3"`` to (1, 3)."""
    if re.search(r"[_,\s]", key):
        return tuple(int(c) for c in re.findall(r"\d+", key))
    return tuple(int(c) for c in key)


def cmd_pluecker(a, cfg):
    from itertools import combinations

    from .pluecker import ExtElement, is_decomposable, pluecker_relations, relation_rank

    rels = pluecker_relations(a.k, a.n)
    out = {"relations": [str(r) for r in rels], "count": len(rels), "rank": relation_rank(rels)}
    if a.test:
        data = _json_arg(a.test)
        idxs = list(combinations(range(1, a.n + 1), a.k))
        if isinstance(data, dict):
            terms = {_index_key(k): Fraction(v) for k, v in data.items()}
        elif isinstance(data, list) and len(data) == len(idxs):
            terms = {i: Fraction(v) for i, v in zip(idxs, data)}
        else:
            raise InputError(f"--test needs {len(idxs)} coordinates in lexicographic order or an index map")
        out["decomposable"] = is_decomposable(ExtElement(a.n, a.k, terms))
    return out


def cmd_chern(a, cfg):
    from .charclasses import count_lines, total_chern_sym

    if a.preset:
        return {"count": count_lines(a.preset)}
    if a.construction:
        expr = total_chern_sym(a.rank, a.construction, a.degree)
        return {"construction": a.construction, "rank": a.rank, "classes": [str(expr.part(d)) for d in range(a.degree + 1)]}
    raise InputError("give --preset or --construction")


def cmd_hrr(a, cfg):
    from .charclasses import SurfaceNumbers, hrr_euler_char

    numbers = None
    if a.numbers:
        vals = _rationals(a.numbers)
        if len(vals) != 3:
            raise InputError("--numbers takes D^2,D.K,chi(O)")
        numbers = SurfaceNumbers(*vals)
    try:
        value = hrr_euler_char(a.space, a.bundle, numbers)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {"space": a.space, "bundle": a.bundle, "chi": value}


def cmd_rh(a, cfg):
    from .charclasses import canonical_degree, riemann_hurwitz_check

    ram = _ints(a.ram) if a.ram else []
    ok = riemann_hurwitz_check(a.gx, a.gy, a.deg, ram)
    return {"valid": ok, "lhs": canonical_degree(a.gx), "rhs": a.deg * canonical_degree(a.gy) + sum(m - 1 for m in ram)}


def _lattice(text):
    from .toric import Sublattice

    if not text:
        return None
    d = _json_arg(text)
    try:
        return Sublattice(int(d["den"]), tuple(int(x) for x in d["extra"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"lattice needs 'den' and 'extra': {exc}") from None


def _cone(text, lattice_text=None):
    from .toric import Cone

    if text is None:
        raise InputError("--cone is required")
    gens = _json_arg(text)
    return Cone(gens, _lattice(lattice_text))


FAN_PRESETS = {"cp2": "cp2_fan", "octant": "octant_fan", "blowup": "blowup_fan", "c3-minus-axis": "c3_minus_axis_fan"}


def _fan(text):
    from . import toric

    if text is None:
        raise InputError("a fan (preset name or JSON) is required")
    if text in FAN_PRESETS:
        return getattr(toric, FAN_PRESETS[text])()
    d = _json_arg(text)
    if isinstance(d, list):
        d = {"cones": d}
    lattice = _lattice(json.dumps(d["lattice"])) if d.get("lattice") else None
    return toric.Fan(d["cones"], lattice)


def _vecs(vs):
    return [[_out(x) for x in v] for v in vs]


def cmd_toric(a, cfg):
    from .toric import dual_cone, fan_is_valid, hilbert_basis, morphism_compatible, relation_lattice, resolve_2d

    if a.action == "dual":
        c = _cone(a.cone, a.lattice)
        return {"dual": _vecs(dual_cone(c.standard()).generators)}
    if a.action == "hilbert-basis":
        hb = hilbert_basis(_cone(a.cone, a.lattice))
        rel = relation_lattice(hb)
        return {"basis": _vecs(hb), "relations": list(rel.binomials)}
    if a.action == "resolve":
        def one(r):
            return {"rays": _vecs(r.rays), "inserted": _vecs(r.inserted), "selfIntersections": r.self_intersections()}

        if a.cone is None and a.fan is not None:
            cones = [c for c in _fan(a.fan).cones if len(c.generators) == 2]
            return {"cones": [one(resolve_2d(c)) for c in cones]}
        return one(resolve_2d(_cone(a.cone, a.lattice)))
    if a.action == "check-fan":
        return {"valid": fan_is_valid(_fan(a.fan))}
    if a.action == "check-map":
        matrix = _json_arg(a.matrix)
        return {"compatible": morphism_compatible(_fan(a.source), _fan(a.target), matrix)}
    raise InputError(f"unknown toric action {a.action}")


def cmd_elliptic(a, cfg):
    from .elliptic import EllipticParams, Lattice, cubic_relation_residual, weierstrass_p, weierstrass_p_prime

    L = Lattice.from_tau(parse_complex(a.tau))
    R = a.radius or cfg.lattice_radius
    if a.what == "params":
        prm = EllipticParams.of(L, R, cfg)
        return {"g2": prm.g2, "g3": prm.g3, "radius": R}
    if a.z is None:
        raise InputError("--z is required")
    z = parse_complex(a.z)
    if a.what == "p":
        return {"value": weierstrass_p(z, L, R, cfg), "radius": R}
    if a.what == "dp":
        return {"value": weierstrass_p_prime(z, L, R, cfg), "radius": R}
    return {"residual": cubic_relation_residual(z, L, R, cfg=cfg), "radius": R}


def cmd_theta(a, cfg):
    from .elliptic import theta, theta_identity_residuals

    tau, z = parse_complex(a.tau), parse_complex(a.z)
    if a.check_identities:
        res = theta_identity_residuals(z, tau, cfg)
        return {"residuals": res, "tolerance": cfg.identity_tol, "passed": all(v < cfg.identity_tol for v in res.values())}
    return {"value": theta(z, tau, a.form, cfg)}


def cmd_modular(a, cfg):
    from .elliptic import eisenstein_lattice, eisenstein_q, j_invariant_q

    terms = a.terms or cfg.q_terms
    if a.what == "j":
        return {f"q^{n}": c for n, c in j_invariant_q(terms).coefficients().items()}
    if a.what in ("e4", "e6"):
        return {f"q^{n}": c for n, c in eisenstein_q(int(a.what[1]), terms).coefficients().items()}
    tau = parse_complex(a.tau or "i")
    R = a.radius or cfg.eisenstein_radius
    return {"value": eisenstein_lattice(int(a.what[1]), tau, R), "radius": R}


def cmd_verify_all(a, cfg):
    from .verify import verify_all

    only = _ints(a.only) if a.only else None
    return verify_all(cfg, extended=a.extended, only=only)


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--config", default=argparse.SUPPRESS, help="key = value config file")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")

    p = argparse.ArgumentParser(prog="agkit", description="Exact algebraic geometry computations and elliptic numerics.")
    p.add_argument("--version", action="version", version=f"agkit {__version__}")
    p.add_argument("--json", action="store_true", default=False, help="machine-readable output")
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("hilbert", cmd_hilbert, "Hilbert function, polynomial and series of a graded quotient")
    sp.add_argument("--vars", help="variable names, comma separated")
    sp.add_argument("--gens", nargs="*", default=[], help="homogeneous generators")
    sp.add_argument("--weights", help="positive integer weights")
    sp.add_argument("--terms", type=int, default=10, help="number of Hilbert function values to print")

    sp = add("bezout", cmd_bezout, "compare the Hilbert constant of (f, g) with deg f * deg g")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--vars")

    sp = add("mult", cmd_mult, "local intersection multiplicity of two affine plane curves")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--point", default="0,0")
    sp.add_argument("--vars")

    sp = add("molien", cmd_molien, "Molien series of a diagonal abelian group")
    sp.add_argument("--modulus", type=int, required=True)
    sp.add_argument("--elements", help="JSON list of exponent vectors; the generated group is used")
    sp.add_argument("--exponents", help="exponents of a single cyclic generator")
    sp.add_argument("--terms", type=int, default=13)

    sp = add("groebner", cmd_groebner, "reduced Groebner basis and ideal membership")
    sp.add_argument("--vars")
    sp.add_argument("--gens", nargs="*")
    sp.add_argument("--order", default="grevlex", choices=["grevlex", "lex", "wgrevlex"])
    sp.add_argument("--member", help="polynomial to test for membership")
    sp.add_argument("--input", help='JSON {"vars": [...], "gens": [...], "order": "..."} or a path to one')

    sp = add("radical", cmd_radical, "radical membership by the Rabinowitz trick")
    sp.add_argument("--f", required=True)
    sp.add_argument("--gens", nargs="+", required=True)
    sp.add_argument("--vars")
    sp.add_argument("--order", default="lex", choices=["grevlex", "lex"])

    sp = add("pluecker", cmd_pluecker, "Pluecker relations of Gr(k, n)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--test", help="coordinates to test for decomposability (JSON or path)")

    sp = add("chern", cmd_chern, "Chern classes of constructions and line counts")
    sp.add_argument("--preset", choices=["four-lines", "cubic-surface", "quintic-lines"])
    sp.add_argument("--construction", help="sym(k), lambda(k), identity, dual or tensor-line")
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--degree", type=int, default=4)

    sp = add("hrr", cmd_hrr, "Euler characteristic by Hirzebruch-Riemann-Roch")
    sp.add_argument("--space", required=True, help="CPn or surface")
    sp.add_argument("--bundle", default="O", help="line bundle O(k)")
    sp.add_argument("--numbers", help="surface invariants D^2,D.K,chi(O)")

    sp = add("rh", cmd_rh, "Riemann-Hurwitz consistency check")
    sp.add_argument("--gx", type=int, required=True)
    sp.add_argument("--gy", type=int, required=True)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--ram", default="", help="ramification indices, comma separated")

    sp = add("toric", cmd_toric, "cones, fans and two-dimensional resolutions")
    sp.add_argument("action", choices=["dual", "hilbert-basis", "resolve", "check-fan", "check-map"])
    sp.add_argument("--cone", help="JSON list of generators")
    sp.add_argument("--lattice", help='JSON {"den": n, "extra": [a, b]}')
    sp.add_argument("--fan", help="fan JSON, a path, or a preset name")
    sp.add_argument("--source")
    sp.add_argument("--target")
    sp.add_argument("--matrix", help="JSON integer matrix, target rank by source rank")

    sp = add("elliptic", cmd_elliptic, "Weierstrass function on the lattice Z + Z tau")
    sp.add_argument("what", choices=["p", "dp", "params", "cubic"])
    sp.add_argument("--tau", required=True)
    sp.add_argument("--z")
    sp.add_argument("--radius", type=float)

    sp = add("theta", cmd_theta, "odd Jacobi theta function")
    sp.add_argument("--tau", default="1.5i")
    sp.add_argument("--z", default="0.3+0.2i")
    sp.add_argument("--form", default="product", choices=["product", "series"])
    sp.add_argument("--check-identities", action="store_true")

    sp = add("modular", cmd_modular, "q-expansions and lattice Eisenstein sums")
    sp.add_argument("what", choices=["j", "e4", "e6", "g4", "g6"])
    sp.add_argument("--terms", type=int)
    sp.add_argument("--tau")
    sp.add_argument("--radius", type=int)

    sp = add("verify-all", cmd_verify_all, "run the acceptance checks")
    sp.add_argument("--extended", action="store_true", help="add seeded randomized property checks")
    sp.add_argument("--only", help="comma separated check ids")
    return p


# -- output -----------------------------------------------------------------


def _human(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_human(v, indent + 1))
        elif isinstance(v, list) and v and all(isinstance(x, str) for x in v):
            lines.append(f"{pad}{k}:")
            lines.extend(f"{pad}  {x}" for x in v)
        else:
            lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, (list, bool)) or v is None else v}")
    return lines


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg = cfg.with_overrides(seed=args.seed)
    except (OSError, ValueError) as exc:
        parser.error(f"bad config: {exc}")
    as_json = args.json or cfg.output == "json"
    try:
        result = args.fn(args, cfg)
    except InputError as exc:
        parser.error(str(exc))
    except Exception as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc), "command": args.command}}
        print(json.dumps(err))
        return 1

    from .verify import RunReport

    if isinstance(result, RunReport):
        print(json.dumps(result.to_dict()) if as_json else "\n".join(result.lines()))
        return 0 if result.passed else 1
    data = _out(result)
    print(json.dumps(data) if as_json else "\n".join(_human(data)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
