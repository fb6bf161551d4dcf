"""Claims manifests: a line-oriented list of divisors and assertions.

Example::

    config standard24
    divisor D1 = E1 + C11 + F1 + C12 + E2 + C22 + F2 + C21
    assert selfint(D1) == 0
    assert kodaira(D1) == I8
    assume E and F are not isogenous

``parse_manifest`` turns text into a :class:`ClaimManifest`,
``format_manifest`` prints it back in canonical form and ``run_manifest``
evaluates every claim independently into a :class:`Report`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Callable

from . import blowup, conjugacy, elliptic, fibration, lattice, translations
from .curves import UnknownCurveError, build_standard_configuration, parse_curve
from .elliptic import INFINITY, format_rational

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

DEFAULT_DEPTH = 32


class ManifestError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line

    def __str__(self) -> str:
        msg = super().__str__()
        return f"line {self.line}: {msg}" if self.line is not None else msg


# values -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op>==|>=)|(?P<num>-?\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[\[\]{}(),=*]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected input at {text[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else (None, None)

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value or 'token'}, found {tok[1]!r}")
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def value(self) -> Any:
        kind, tok = self.peek()
        if kind == "num":
            self.i += 1
            q = Fraction(tok)
            return int(q) if q.denominator == 1 and "/" not in tok else q
        if kind == "name":
            self.i += 1
            return INFINITY if tok == "inf" else _Name(tok)
        if tok in ("[", "{", "("):
            close = {"[": "]", "{": "}", "(": ")"}[tok]
            self.i += 1
            items = []
            while self.peek()[1] != close:
                items.append(self.value())
                if self.peek()[1] == ",":
                    self.i += 1
                elif self.peek()[1] != close:
                    raise ValueError(f"expected ',' or {close!r}, found {self.peek()[1]!r}")
            self.i += 1
            if tok == "[":
                if self.peek()[1] == "*":
                    self.i += 1
                    n = self.value()
                    if not isinstance(n, int) or n < 0:
                        raise ValueError("list repetition count must be a nonnegative integer")
                    return _Repeat(items, n)
                return items
            if tok == "{":
                return frozenset(items)
            return tuple(items)
        raise ValueError(f"unexpected token {tok!r}")

    def call_args(self) -> tuple[list, dict]:
        self.take("(")
        positional: list = []
        keywords: dict = {}
        while self.peek()[1] != ")":
            if self.peek()[0] == "name" and self.peek(1)[1] == "=":
                key = self.take()[1]
                self.take("=")
                keywords[key] = self.value()
            else:
                positional.append(self.value())
            if self.peek()[1] == ",":
                self.i += 1
            elif self.peek()[1] != ")":
                raise ValueError(f"expected ',' or ')', found {self.peek()[1]!r}")
        self.take(")")
        return positional, keywords


class _Name(str):
    """A bare identifier in a claim (curve, divisor or keyword)."""


@dataclass
class _Repeat:
    items: list
    count: int


def _flatten(values: list) -> list:
    out = []
    for v in values:
        if isinstance(v, _Repeat):
            out.extend(v.items * v.count)
        else:
            out.append(v)
    return out


def _rat(v) -> Fraction:
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return Fraction(v)
    raise ValueError(f"expected a rational, got {format_value(v)!r}")


def _int(v) -> int:
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    raise ValueError(f"expected an integer, got {format_value(v)!r}")


def _sort_key(v):
    if v is INFINITY:
        return (1, ())
    if isinstance(v, tuple):
        return (0, tuple(_sort_key(x) for x in v))
    return (0, (Fraction(v),))


def format_value(v) -> str:
    if v is INFINITY:
        return "inf"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return format_rational(v)
    if isinstance(v, str):
        return str(v)
    if isinstance(v, elliptic.AffinePoint):
        return f"({format_rational(v.x)},{format_rational(v.y)})"
    if isinstance(v, tuple):
        return "(" + ",".join(format_value(x) for x in v) + ")"
    if isinstance(v, list):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(format_value(x) for x in sorted(v, key=_sort_key)) + "}"
    return str(v)


def _point(v):
    if v is INFINITY:
        return INFINITY
    if isinstance(v, tuple) and len(v) == 2:
        return elliptic.point(_rat(v[0]), _rat(v[1]))
    raise ValueError(f"expected a point (x,y) or inf, got {format_value(v)!r}")


def _point_value(p) -> Any:
    return INFINITY if p is INFINITY else (p.x, p.y)


def _normalise_points(values) -> frozenset:
    return frozenset(_point_value(_point(v)) for v in values)


def _rational_set(values) -> frozenset:
    return frozenset(INFINITY if v is INFINITY else _rat(v) for v in values)


# claims -------------------------------------------------------------------

@dataclass
class Claim:
    kind: str
    args: dict
    op: str | None = None
    expected: Any = None
    line: int | None = field(default=None, compare=False)

    def text(self) -> str:
        return _KINDS[self.kind].format(self)


@dataclass
class ClaimManifest:
    config: str = "standard24"
    divisors: dict[str, lattice.DivisorClass] = field(default_factory=dict)
    claims: list[Claim] = field(default_factory=list)


@dataclass
class _Kind:
    name: str
    build: Callable[[list, dict], dict]
    ops: tuple[str | None, ...]
    expected: Callable[[str], Any] | None
    evaluate: Callable[["_Context", Claim], tuple[Any, bool]]
    format_call: Callable[[dict], str]
    format_expected: Callable[[Any], str] = format_value
    names: Callable[[dict], list[str]] = lambda args: []

    def format(self, claim: Claim) -> str:
        head = f"{self.name}({self.format_call(claim.args)})"
        if claim.op is None:
            return head
        if claim.op in ("valid", "invalid"):
            return f"{head} {claim.op}"
        return f"{head} {claim.op} {self.format_expected(claim.expected)}"


@dataclass
class _Context:
    manifest: ClaimManifest
    depth: int

    def __post_init__(self) -> None:
        self.cfg = build_standard_configuration()

    def divisor(self, name: str) -> lattice.DivisorClass:
        if name in self.manifest.divisors:
            return self.manifest.divisors[name]
        return lattice.DivisorClass.curve(parse_curve(name))


def _value_expected(text: str):
    p = _Parser(text)
    v = p.value()
    if not p.at_end():
        raise ValueError(f"trailing input after expected value: {text!r}")
    return v


def _int_expected(text: str) -> int:
    return _int(_value_expected(text))


def _tag_expected(text: str) -> str:
    tag = text.strip()
    fibration.euler_of_type(tag)
    return tag


def _affine_expected(text: str) -> translations.AffineMap:
    return translations.parse_affine(text)


_CANON_TERM = re.compile(r"^(?:(\d+)\*)?(EP'?|EQ\d+|ALL_Q)$")


def _canonical_expected(text: str) -> str:
    terms = [t.strip().replace(" ", "") for t in text.split("+")]
    for t in terms:
        if not _CANON_TERM.match(t):
            raise ValueError(f"malformed canonical-class term {t!r}")
    return " + ".join(terms)


def _expand_canonical(expr: str, k: int) -> dict[str, int]:
    out: dict[str, int] = {}
    for t in expr.split(" + "):
        m = _CANON_TERM.match(t)
        mult = int(m.group(1)) if m.group(1) else 1
        labels = [f"EQ{i}" for i in range(1, k + 1)] if m.group(2) == "ALL_Q" else [m.group(2)]
        for label in labels:
            out[label] = out.get(label, 0) + mult
    return out


def _only(pos: list, kw: dict, n_pos: int, keys: tuple[str, ...] = (), optional: tuple[str, ...] = ()):
    if len(pos) != n_pos:
        raise ValueError(f"expected {n_pos} positional argument(s), got {len(pos)}")
    missing = [k for k in keys if k not in kw]
    if missing:
        raise ValueError(f"missing argument(s) {', '.join(missing)}")
    extra = [k for k in kw if k not in keys + optional]
    if extra:
        raise ValueError(f"unexpected argument(s) {', '.join(extra)}")


def _name_arg(v) -> str:
    if not isinstance(v, _Name):
        raise ValueError(f"expected a name, got {format_value(v)!r}")
    return str(v)


# builders: (positional, keywords) -> canonical args dict

def _b_name(pos, kw):
    _only(pos, kw, 1)
    return {"name": _name_arg(pos[0])}


def _b_pair(pos, kw):
    _only(pos, kw, 2)
    return {"a": _name_arg(pos[0]), "b": _name_arg(pos[1])}


def _b_fiber(pos, kw):
    _only(pos, kw, 1, ("section",))
    return {"name": _name_arg(pos[0]), "section": _name_arg(kw["section"])}


def _b_rank(pos, kw):
    _only(pos, kw, len(pos))
    if not pos:
        raise ValueError("rank needs at least one argument")
    return {"names": [_name_arg(v) for v in pos]}


def _b_genus(pos, kw):
    _only(pos, kw, 0, ("selfint",), ("kd",))
    return {"selfint": _int(kw["selfint"]), "kd": _int(kw.get("kd", 0))}


def _b_curveselfint(pos, kw):
    _only(pos, kw, 0, ("genus",), ("kd",))
    return {"genus": _int(kw["genus"]), "kd": _int(kw.get("kd", 0))}


def _b_hurwitz(pos, kw):
    _only(pos, kw, 0, ("deg", "profiles"), ("base",))
    profiles = kw["profiles"]
    if isinstance(profiles, _Repeat):
        profiles = [profiles]
    if not isinstance(profiles, list):
        raise ValueError("profiles must be a list of lists")
    # inside a profile list, [2,1]*8 means eight copies of the profile [2,1]
    profiles = [
        p for item in profiles
        for p in ([item.items] * item.count if isinstance(item, _Repeat) else [item])
    ]
    if not all(isinstance(p, list) for p in profiles):
        raise ValueError("each profile must be a list")
    return {
        "deg": _int(kw["deg"]),
        "base": _int(kw.get("base", 0)),
        "profiles": [[_int(e) for e in p] for p in profiles],
    }


def _b_eulersolutions(pos, kw):
    _only(pos, kw, 0, ("known", "total"))
    known = kw["known"]
    if not isinstance(known, list):
        raise ValueError("known must be a list")
    return {"known": [_int(v) for v in _flatten(known)], "total": _int(kw["total"])}


def _b_k(pos, kw):
    _only(pos, kw, 0, ("k",))
    k = _int(kw["k"])
    if k < 0:
        raise ValueError("k must be >= 0")
    return {"k": k}


def _b_conjfam(pos, kw):
    _only(pos, kw, 0, ("n",))
    return {"n": _int(kw["n"])}


def _b_conjfamchain(pos, kw):
    _only(pos, kw, 0, ("max",))
    return {"max": _int(kw["max"])}


def _b_sectionmap(pos, kw):
    _only(pos, kw, 1, ("u",))
    kind = _name_arg(pos[0])
    if kind not in ("additive", "multiplicative"):
        raise ValueError(f"fibre kind must be additive or multiplicative, got {kind!r}")
    return {"kind": kind, "u": _rat(kw["u"])}


def _b_fingen(pos, kw):
    _only(pos, kw, 1)
    if not isinstance(pos[0], list):
        raise ValueError("fingen takes a list of rationals")
    return {"gens": [_rat(v) for v in _flatten(pos[0])]}


def _b_notfg(pos, kw):
    _only(pos, kw, 1, ("base",), ("num", "depth"))
    if _name_arg(pos[0]) != "dyadic":
        raise ValueError("notfg expects the 'dyadic' family")
    args = {"base": _int(kw["base"]), "num": _rat(kw.get("num", 1))}
    if "depth" in kw:
        args["depth"] = _int(kw["depth"])
    return args


def _b_qpoints(pos, kw):
    _only(pos, kw, 1)
    if not isinstance(pos[0], list):
        raise ValueError("qpoints takes a list")
    return {"points": [INFINITY if v is INFINITY else _rat(v) for v in _flatten(pos[0])]}


def _b_scalarstab(pos, kw):
    return _b_qpoints(pos, kw)


def _b_inducedscalar(pos, kw):
    _only(pos, kw, 0, ("a1", "a2"))
    return {"a1": _rat(kw["a1"]), "a2": _rat(kw["a2"])}


def _kset(v, key):
    if not isinstance(v, frozenset):
        raise ValueError(f"{key} must be a set {{...}}")
    return frozenset(_rat(x) for x in v)


def _b_classes(pos, kw):
    _only(pos, kw, 0, ("K1", "K2", "ratio", "range"))
    return {
        "K1": _kset(kw["K1"], "K1"),
        "K2": _kset(kw["K2"], "K2"),
        "ratio": _rat(kw["ratio"]),
        "range": _int(kw["range"]),
    }


def _b_offsets(pos, kw):
    _only(pos, kw, 0, ("K1", "K2", "ratio"))
    return {"K1": _kset(kw["K1"], "K1"), "K2": _kset(kw["K2"], "K2"), "ratio": _rat(kw["ratio"])}


def _b_roots(pos, kw):
    _only(pos, kw, len(pos), ("roots",))
    roots = kw["roots"]
    if not isinstance(roots, list) or len(roots) != 3:
        raise ValueError("roots must be a list of three rationals")
    return {"roots": [_rat(r) for r in roots], "points": [_point_value(_point(p)) for p in pos]}


def _b_ecadd(pos, kw):
    args = _b_roots(pos, kw)
    if len(args["points"]) != 2:
        raise ValueError("ecadd takes two points")
    return args


def _b_roots_only(pos, kw):
    args = _b_roots(pos, kw)
    if args["points"]:
        raise ValueError("unexpected positional arguments")
    return args


# formatters

def _f_kw(*keys):
    def fmt(args):
        return ", ".join(f"{k}={format_value(args[k])}" for k in keys if k in args)
    return fmt


def _f_roots(args):
    parts = [format_value(p) for p in args["points"]]
    parts.append(f"roots={format_value(args['roots'])}")
    return ", ".join(parts)


# evaluators: return (computed value, passed)

def _e_selfint(ctx, c):
    v = lattice.self_intersection(ctx.cfg, ctx.divisor(c.args["name"]))
    return v, v == c.expected


def _e_pair(ctx, c):
    v = lattice.pair(ctx.cfg, ctx.divisor(c.args["a"]), ctx.divisor(c.args["b"]))
    return v, v == c.expected


def _e_nef(ctx, c):
    check = lattice.is_nef_on_configuration(ctx.cfg, ctx.divisor(c.args["name"]))
    want = True if c.expected is None else c.expected
    shown = "nef" if check else f"not nef, witness ({check.witness[0]}, {check.witness[1]})"
    return shown, bool(check) == want


def _e_fiber(ctx, c):
    fibration.check_fiber_candidate(ctx.cfg, ctx.divisor(c.args["name"]), c.args["section"])
    return "fibre with section", True


def _e_kodaira(ctx, c):
    f = fibration.classify_kodaira(ctx.cfg, ctx.divisor(c.args["name"]))
    return f.type_tag, f.type_tag == c.expected


def _e_euler(ctx, c):
    f = fibration.classify_kodaira(ctx.cfg, ctx.divisor(c.args["name"]))
    graph_euler = fibration.euler_number_from_graph(f.graph)
    if graph_euler != f.euler:
        return f"table {f.euler} != graph {graph_euler}", False
    return f.euler, f.euler == c.expected


def _e_rr(ctx, c):
    v = lattice.riemann_roch_lower_bound(ctx.cfg, ctx.divisor(c.args["name"]))
    return v, v == c.expected


def _e_rank(ctx, c):
    names = c.args["names"]
    classes = []
    for n in names:
        if n == "all24":
            classes.extend(lattice.DivisorClass.curve(r) for r in ctx.cfg.curves)
        else:
            classes.append(ctx.divisor(n))
    v = lattice.lattice_rank(ctx.cfg, classes)
    return v, v == c.expected


def _e_genus(ctx, c):
    g = lattice.adjunction_genus(c.args["selfint"], c.args["kd"])
    if not lattice.is_curve_genus(g):
        return f"{format_rational(g)} (not a curve class)", False
    return int(g), g == c.expected


def _e_curveselfint(ctx, c):
    v = lattice.self_intersection_from_genus(c.args["genus"], c.args["kd"])
    return v, v == c.expected


def _e_hurwitz(ctx, c):
    g = fibration.hurwitz_genus(c.args["deg"], c.args["base"], c.args["profiles"])
    return g if g.denominator != 1 else int(g), g == c.expected


def _e_eulersolutions(ctx, c):
    sols = fibration.euler_constraint_solutions(c.args["known"], c.args["total"])
    expected = c.expected if isinstance(c.expected, list) else [c.expected]
    return list(sols), sorted(sols) == sorted(tuple(_int(x) for x in e) for e in expected)


def _e_canonical(ctx, c):
    k = c.args["k"]
    cc = blowup.canonical_class(blowup.default_chain(k))
    computed = {label.replace("_", ""): m for label, m in cc.terms}
    return str(cc), computed == _expand_canonical(c.expected, k)


def _e_ksq(ctx, c):
    v = blowup.exceptional_self_intersections(blowup.default_chain(c.args["k"])).k_squared
    return v, v == c.expected


def _e_epsq(ctx, c):
    v = blowup.exceptional_self_intersections(blowup.default_chain(c.args["k"])).e_p
    return v, v == c.expected


def _e_conjfam(ctx, c):
    f = translations.conjugate_family(c.args["n"])
    return str(f), f == c.expected


def _e_conjfamchain(ctx, c):
    top = c.args["max"]
    bad = [
        n for n in range(1, top + 1)
        if translations.conjugate_chain(n) != translations.AffineMap(1, Fraction(1, 2**n))
    ]
    if bad:
        return f"mismatch at n={bad[0]}", False
    return f"x -> x + 1/2^n for n=1..{top}", True


def _e_sectionmap(ctx, c):
    f = translations.induced_section_map(c.args["kind"], c.args["u"])
    return str(f), f == c.expected


def _e_fingen(ctx, c):
    g = translations.finite_generation_of_rational_subgroup(c.args["gens"])
    return g, g == _rat(c.expected)


def _e_notfg(ctx, c):
    depth = c.args.get("depth", ctx.depth)
    fam = translations.DyadicFamilySpec(c.args["num"], c.args["base"])
    cert = translations.certify_not_finitely_generated(fam, depth)
    shown = (
        f"depth {depth}: witness denominators up to {cert.witness[-1].denominator}, "
        f"{sum(ch.ok for ch in cert.prefix_checks)}/{len(cert.prefix_checks)} prefix exclusions"
    )
    return shown, cert.valid


def _e_qpoints(ctx, c):
    report = blowup.validate_q_points(c.args["points"])
    shown = "valid" if report.ok else "invalid: " + "; ".join(report.failures)
    return shown, report.ok == (c.op == "valid")


def _e_scalarstab(ctx, c):
    v = blowup.scalar_stabilizer(c.args["points"])
    return v, v == _rational_set(c.expected)


def _e_inducedscalar(ctx, c):
    v = blowup.induced_scalar_on_ep(blowup.TangentAction(c.args["a1"], c.args["a2"]))
    return v, v == _rat(c.expected)


def _instance(args) -> conjugacy.SeparationInstance:
    return conjugacy.SeparationInstance(args["K1"], args["K2"], args["ratio"])


def _e_classes(ctx, c):
    v = conjugacy.class_count_lower_bound(_instance(c.args), c.args["range"])
    want = _int(c.expected)
    return v, (v >= want) if c.op == ">=" else (v == want)


def _e_offsets(ctx, c):
    v = conjugacy.admissible_offsets(_instance(c.args))
    return v, v == frozenset(_int(x) for x in c.expected)


def _curve_from(args) -> elliptic.WeierstrassCurve:
    return elliptic.WeierstrassCurve(*args["roots"])


def _e_twotorsion(ctx, c):
    pts = elliptic.two_torsion(_curve_from(c.args))
    v = frozenset(_point_value(p) for p in pts)
    return v, v == _normalise_points(c.expected)


def _e_branchpoints(ctx, c):
    v = elliptic.quotient_branch_points(_curve_from(c.args))
    return v, v == _rational_set(c.expected)


def _e_ecadd(ctx, c):
    curve = _curve_from(c.args)
    p, q = (_point(v) for v in c.args["points"])
    r = elliptic.add(curve, p, q)
    return _point_value(r), _point_value(r) == _point_value(_point(c.expected))


def _names_name(args):
    return [args["name"]]


def _names_fiber(args):
    return [args["name"], args["section"]]


def _names_pair(args):
    return [args["a"], args["b"]]


def _names_rank(args):
    return [n for n in args["names"] if n != "all24"]


_KINDS: dict[str, _Kind] = {}


def _register(name, build, ops, expected, evaluate, format_call, format_expected=format_value, names=None):
    _KINDS[name] = _Kind(
        name, build, ops, expected, evaluate, format_call, format_expected,
        names or (lambda args: []),
    )


_f_name = lambda a: a["name"]
_register("selfint", _b_name, ("==",), _int_expected, _e_selfint, _f_name, names=_names_name)
_register("pair", _b_pair, ("==",), _int_expected, _e_pair, lambda a: f"{a['a']}, {a['b']}", names=_names_pair)
_register("nef", _b_name, (None, "=="), lambda t: {"true": True, "false": False}[t.strip()], _e_nef, _f_name,
          format_expected=format_value, names=_names_name)
_register("fiber", _b_fiber, (None,), None, _e_fiber, lambda a: f"{a['name']}, section={a['section']}",
          names=_names_fiber)
_register("kodaira", _b_name, ("==",), _tag_expected, _e_kodaira, _f_name, format_expected=str, names=_names_name)
_register("euler", _b_name, ("==",), _int_expected, _e_euler, _f_name, names=_names_name)
_register("rr", _b_name, ("==",), _int_expected, _e_rr, _f_name, names=_names_name)
_register("rank", _b_rank, ("==",), _int_expected, _e_rank, lambda a: ", ".join(a["names"]), names=_names_rank)
_register("genus", _b_genus, ("==",), _int_expected, _e_genus,
          lambda a: f"selfint={a['selfint']}" + (f", kd={a['kd']}" if a["kd"] else ""))
_register("curveselfint", _b_curveselfint, ("==",), _int_expected, _e_curveselfint,
          lambda a: f"genus={a['genus']}" + (f", kd={a['kd']}" if a["kd"] else ""))
_register("hurwitz", _b_hurwitz, ("==",), _int_expected, _e_hurwitz,
          lambda a: f"deg={a['deg']}" + (f", base={a['base']}" if a["base"] else "")
          + f", profiles={format_value(a['profiles'])}")
_register("eulersolutions", _b_eulersolutions, ("==",), _value_expected, _e_eulersolutions,
          _f_kw("known", "total"))
_register("canonical", _b_k, ("==",), _canonical_expected, _e_canonical, _f_kw("k"), format_expected=str)
_register("ksq", _b_k, ("==",), _int_expected, _e_ksq, _f_kw("k"))
_register("epsq", _b_k, ("==",), _int_expected, _e_epsq, _f_kw("k"))
_register("conjfam", _b_conjfam, ("==",), _affine_expected, _e_conjfam, _f_kw("n"),
          format_expected=translations.format_affine)
_register("conjfamchain", _b_conjfamchain, (None,), None, _e_conjfamchain, _f_kw("max"))
_register("sectionmap", _b_sectionmap, ("==",), _affine_expected, _e_sectionmap,
          lambda a: f"{a['kind']}, u={format_value(a['u'])}", format_expected=translations.format_affine)
_register("fingen", _b_fingen, ("==",), _value_expected, _e_fingen, lambda a: format_value(a["gens"]))
_register("notfg", _b_notfg, (None,), None, _e_notfg,
          lambda a: "dyadic base=" + format_value(a["base"])
          + (f", num={format_value(a['num'])}" if a["num"] != 1 else "")
          + (f", depth={a['depth']}" if "depth" in a else ""))
_register("qpoints", _b_qpoints, ("valid", "invalid"), None, _e_qpoints, lambda a: format_value(a["points"]))
_register("scalarstab", _b_scalarstab, ("==",), _value_expected, _e_scalarstab, lambda a: format_value(a["points"]))
_register("inducedscalar", _b_inducedscalar, ("==",), _value_expected, _e_inducedscalar, _f_kw("a1", "a2"))
_register("classes", _b_classes, (">=", "=="), _int_expected, _e_classes, _f_kw("K1", "K2", "ratio", "range"))
_register("offsets", _b_offsets, ("==",), _value_expected, _e_offsets, _f_kw("K1", "K2", "ratio"))
_register("twotorsion", _b_roots_only, ("==",), _value_expected, _e_twotorsion, _f_roots)
_register("branchpoints", _b_roots_only, ("==",), _value_expected, _e_branchpoints, _f_roots)
_register("ecadd", _b_ecadd, ("==",), _value_expected, _e_ecadd, _f_roots)

ASSUME = "assume"


# parsing ------------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_DIVISOR_LINE = re.compile(rf"^divisor\s+({_NAME})\s*=\s*(.+)$")
_CALL_HEAD = re.compile(rf"^({_NAME})\s*\(")
_SEPARATION = re.compile(r"^separation\s+(.*?)\s*(>=|==)\s*(\S+)$")
_SEP_FIELD = re.compile(r"(K1|K2|ratio|range)=(\{[^}]*\}|\S+)")
_RESERVED = {"all24", "inf", "C"}


def _split_call(body: str) -> tuple[str, str, str]:
    """Split ``name(args) rest`` at the matching close parenthesis."""
    m = _CALL_HEAD.match(body)
    if not m:
        raise ValueError(f"expected a claim of the form name(...), got {body!r}")
    depth = 0
    for i in range(m.end() - 1, len(body)):
        if body[i] in "([{":
            depth += 1
        elif body[i] in ")]}":
            depth -= 1
            if depth == 0:
                return m.group(1), body[m.end() - 1:i + 1], body[i + 1:].strip()
    raise ValueError("unbalanced parentheses")


def _normalise_separation(body: str) -> str:
    m = _SEPARATION.match(body)
    if not m:
        raise ValueError("malformed separation claim")
    fields = dict(_SEP_FIELD.findall(m.group(1)))
    missing = {"K1", "K2", "ratio", "range"} - set(fields)
    if missing:
        raise ValueError(f"separation claim missing {', '.join(sorted(missing))}")
    args = ", ".join(f"{k}={fields[k]}" for k in ("K1", "K2", "ratio", "range"))
    return f"classes({args}) {m.group(2)} {m.group(3)}"


def _parse_claim(body: str, line: int) -> Claim:
    if body.startswith("separation"):
        body = _normalise_separation(body)
    name, call, rest = _split_call(body)
    if name not in _KINDS:
        raise ValueError(f"unknown claim {name!r}")
    kind = _KINDS[name]
    if name == "notfg":
        call = re.sub(r"^\(\s*dyadic\s+(?=[A-Za-z])", "(dyadic, ", call)
    p = _Parser(call)
    pos, kw = p.call_args()
    if not p.at_end():
        raise ValueError("trailing input inside call")
    args = kind.build(pos, kw)
    if not rest:
        if None not in kind.ops:
            raise ValueError(f"{name} claim needs a comparison")
        return Claim(name, args, None, None, line)
    if rest in ("valid", "invalid"):
        if rest not in kind.ops:
            raise ValueError(f"{name} claim cannot end in {rest!r}")
        return Claim(name, args, rest, None, line)
    m = re.match(r"^(==|>=)\s*(.+)$", rest)
    if not m or m.group(1) not in kind.ops:
        raise ValueError(f"bad comparison {rest!r} for {name}")
    return Claim(name, args, m.group(1), kind.expected(m.group(2)), line)


def parse_manifest(text: str) -> ClaimManifest:
    """Parse a claims manifest; raises :class:`ManifestError` with the line number."""
    manifest = ClaimManifest()
    seen_config = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("config"):
                parts = line.split()
                if len(parts) != 2 or parts[1] != "standard24":
                    raise ValueError(f"unsupported configuration {line!r}")
                if seen_config:
                    raise ValueError("config given twice")
                seen_config = True
            elif line.startswith("divisor"):
                m = _DIVISOR_LINE.match(line)
                if not m:
                    raise ValueError("malformed divisor definition")
                name = m.group(1)
                if name in manifest.divisors:
                    raise ValueError(f"divisor {name!r} defined twice")
                if name in _RESERVED or _is_curve(name):
                    raise ValueError(f"divisor name {name!r} clashes with a curve or keyword")
                d = lattice.parse_divisor_terms(m.group(2))
                d.label = name
                manifest.divisors[name] = d
            elif line.startswith("assume"):
                statement = line[len("assume"):].strip()
                if not statement:
                    raise ValueError("empty assumption")
                manifest.claims.append(Claim(ASSUME, {"statement": " ".join(statement.split())}, line=lineno))
            elif line.startswith("assert"):
                claim = _parse_claim(line[len("assert"):].strip(), lineno)
                for n in _KINDS[claim.kind].names(claim.args):
                    if n not in manifest.divisors and not _is_curve(n):
                        raise ValueError(f"undefined name {n!r}")
                manifest.claims.append(claim)
            else:
                raise ValueError(f"unrecognised statement {line!r}")
        except UnknownCurveError as exc:
            raise ManifestError(str(exc), lineno) from exc
        except ManifestError:
            raise
        except (ValueError, KeyError, ZeroDivisionError) as exc:
            raise ManifestError(str(exc), lineno) from exc
    return manifest


def _is_curve(name: str) -> bool:
    try:
        parse_curve(name)
    except UnknownCurveError:
        return False
    return True


def claim_text(claim: Claim) -> str:
    if claim.kind == ASSUME:
        return f"assume {claim.args['statement']}"
    return "assert " + claim.text()


def format_manifest(manifest: ClaimManifest) -> str:
    lines = [f"config {manifest.config}"]
    for name, d in manifest.divisors.items():
        lines.append(f"divisor {name} = {lattice.format_terms(d)}")
    lines.extend(claim_text(c) for c in manifest.claims)
    return "\n".join(lines) + "\n"


# evaluation ---------------------------------------------------------------

PASS, FAIL, ASSUMED = "PASS", "FAIL", "ASSUMED"


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    status: str
    computed: str
    expected: str


@dataclass
class Report:
    results: list[ClaimResult]

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.results)

    @property
    def exit_status(self) -> int:
        return EXIT_FAIL if self.count(FAIL) else EXIT_OK

    @property
    def ok(self) -> bool:
        return self.exit_status == EXIT_OK

    def summary(self) -> str:
        return (
            f"{len(self.results)} claims: {self.count(PASS)} PASS, "
            f"{self.count(FAIL)} FAIL, {self.count(ASSUMED)} ASSUMED"
        )

    def format_text(self) -> str:
        width = max((len(r.claim) for r in self.results), default=0)
        lines = []
        for r in self.results:
            if r.status == ASSUMED:
                lines.append(f"{r.status:<8}{r.claim}")
            else:
                lines.append(f"{r.status:<8}{r.claim:<{width}}  computed={r.computed}  expected={r.expected}")
        lines.append(self.summary())
        return "\n".join(lines)

    def format_machine(self) -> str:
        return "\n".join(
            "\t".join((r.status, r.claim, r.computed, r.expected)) for r in self.results
        )


def _expected_text(claim: Claim) -> str:
    kind = _KINDS[claim.kind]
    if claim.op is None:
        return "holds"
    if claim.op in ("valid", "invalid"):
        return claim.op
    shown = kind.format_expected(claim.expected)
    return shown if claim.op == "==" else f"{claim.op} {shown}"


def evaluate_claim(claim: Claim, ctx: _Context) -> ClaimResult:
    text = claim_text(claim)
    if claim.kind == ASSUME:
        return ClaimResult(text, ASSUMED, "", "")
    try:
        computed, ok = _KINDS[claim.kind].evaluate(ctx, claim)
        shown = format_value(computed)
    except (ValueError, ArithmeticError, AssertionError, KeyError) as exc:
        tag = getattr(exc, "tag", type(exc).__name__)
        ok, shown = False, f"error[{tag}]: {exc}"
    return ClaimResult(text, PASS if ok else FAIL, shown, _expected_text(claim))


def run_manifest(manifest: ClaimManifest, depth: int = DEFAULT_DEPTH) -> Report:
    ctx = _Context(manifest, depth)
    return Report([evaluate_claim(c, ctx) for c in manifest.claims])


def golden_manifest_names() -> list[str]:
    files = resources.files(__package__).joinpath("manifests")
    return sorted(p.name[:-len(".claims")] for p in files.iterdir() if p.name.endswith(".claims"))


def golden_manifest_text(name: str) -> str:
    path = resources.files(__package__).joinpath("manifests", f"{name}.claims")
    if not path.is_file():
        raise KeyError(f"no golden manifest named {name!r}")
    return path.read_text(encoding="utf-8")
