"""JSON encoding of every core object, plus a small expression parser.

Every document is an object with ``kind``, ``version`` and ``field``
(``{"q": q, "modulus": [...] | null}``).  Elements of F_q are integers whose
base-p digits are the coordinates against the field modulus; polynomials in T
are coefficient arrays indexed by degree.  See ``schema/qmf.schema.json``.

Expressions may also be given as text, e.g. ``"E^2*h - (T+1)*pi^-1*D(1, g)"``;
``D(n, x)`` is the normalized hyperderivative and ``Dn(n, x)`` the plain one.
"""

from __future__ import annotations

import ast
import json
from .binomial import NvhReport, NvhWitness
from .eexp import EExpansion
from .errors import UsageError
from .fields import GF, FqPoly, RatFunc, get_field
from .matrix import Matrix2
from .qmod import AssocPoly
from .scalars import CoeffScalar, ZRat
from .series import USeries
from .symbolic import PI, Expr, PiAtom, Sym, hyper, hyper_normalized

VERSION = 1


# ---------------------------------------------------------------------------
# leaves


def field_doc(F: GF) -> dict:
    return {"q": F.q, "modulus": None if F.prime else list(F.modulus)}


def field_of(doc: dict) -> GF:
    f = doc.get("field")
    if f is None:
        raise UsageError("document has no field")
    return get_field(int(f["q"]), f.get("modulus"))


def k_doc(x: RatFunc) -> dict:
    return {"num": list(x.n), "den": list(x.d)}


def k_of(F: GF, d) -> RatFunc:
    if isinstance(d, int):
        return RatFunc.const(F, d % F.q)
    if isinstance(d, list):
        return RatFunc(F, d)
    return RatFunc(F, d["num"], d.get("den", [1]))


def scalar_doc(c: CoeffScalar) -> dict:
    return {str(e): k_doc(v) for e, v in sorted(c.t.items())}


def scalar_of(F: GF, d: dict) -> CoeffScalar:
    return CoeffScalar(F, {int(e): k_of(F, v) for e, v in d.items()})


def zrat_doc(f: ZRat) -> dict:
    return {"num": [k_doc(x) for x in f.n], "den": [k_doc(x) for x in f.d]}


def zrat_of(F: GF, d: dict) -> ZRat:
    num = [k_of(F, x) for x in d["num"]]
    den = [k_of(F, x) for x in d.get("den", [[1]])]
    return ZRat(F, num, den)


def matrix_doc(g: Matrix2) -> list:
    return [k_doc(x) for x in g.entries()]


def matrix_of(F: GF, d: list) -> Matrix2:
    return Matrix2(F, *(k_of(F, x) for x in d))


# ---------------------------------------------------------------------------
# atoms and expressions


def atom_doc(a) -> dict:
    from .formal import Dp, Form, StabE, Up

    if isinstance(a, PiAtom):
        return {"pi": True}
    if isinstance(a, Sym):
        return {"sym": a.base, "order": a.order, "shift": None if a.shift is None else matrix_doc(a.shift)}
    if isinstance(a, Form):
        return {"form": a.name, "k": a.k, "m": a.m, "level": a.level}
    if isinstance(a, StabE):
        return {"Ep": True}
    if isinstance(a, Dp):
        return {"dp": atom_doc(a.inner)}
    if isinstance(a, Up):
        return {"up": mono_doc(a.mono)}
    raise UsageError(f"cannot serialize atom {a!r}")


def atom_of(F: GF, d: dict):
    from .formal import Dp, Form, StabE, Up

    if d.get("pi"):
        return PI
    if "sym" in d:
        sh = d.get("shift")
        return Sym(d["sym"], int(d.get("order", 0)), None if sh is None else matrix_of(F, sh))
    if "form" in d:
        return Form(d["form"], int(d["k"]), int(d["m"]), d.get("level", "m"))
    if d.get("Ep"):
        return StabE()
    if "dp" in d:
        return Dp(atom_of(F, d["dp"]))
    if "up" in d:
        return Up(mono_of(F, d["up"]))
    raise UsageError(f"unknown atom {d}")


def mono_doc(m: tuple) -> list:
    return [[atom_doc(a), e] for a, e in m]


def mono_of(F: GF, d: list) -> tuple:
    pairs = [(atom_of(F, a), int(e)) for a, e in d]
    return tuple(sorted(pairs, key=lambda t: t[0].sort_key()))


def expr_body(f: Expr) -> dict:
    terms = [{"mono": mono_doc(m), "coeff": zrat_doc(c)} for m, c in f.t.items()]
    terms.sort(key=lambda t: json.dumps(t, sort_keys=True))
    return {"terms": terms, "text": str(f)}


def expr_of(F: GF, d) -> Expr:
    if isinstance(d, str):
        return parse_expr(F, d)
    if isinstance(d, (int, float)):
        return Expr.const(F, int(d))
    if "terms" not in d and "text" in d:
        return parse_expr(F, d["text"])
    acc = Expr.zero(F)
    for t in d["terms"]:
        acc = acc + Expr.raw(F, {mono_of(F, t["mono"]): zrat_of(F, t["coeff"])})
    return acc


# ---------------------------------------------------------------------------
# expression parser


_NAMES = {"g", "h", "E"}


def parse_expr(F: GF, text: str) -> Expr:
    """Parse arithmetic in g, h, E, Ep, pi, T (or t), z, integers, D(n, x) and form("f", k, m)."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as e:
        raise UsageError(f"cannot parse expression {text!r}: {e.msg}") from None
    try:
        return _ev(F, tree.body)
    except ZeroDivisionError as e:
        raise UsageError(f"cannot evaluate {text!r}: {e}") from None


def _ev(F: GF, node) -> Expr:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Expr.const(F, node.value)
    if isinstance(node, ast.Name):
        n = node.id
        if n in _NAMES:
            return Expr.sym(F, n)
        if n == "pi":
            return Expr.pi(F)
        if n in ("T", "t"):
            return Expr.const(F, RatFunc.T(F))
        if n == "z":
            return Expr.zfun(ZRat.z(F))
        if n == "Ep":
            from .formal import StabE
            return Expr.atom(F, StabE())
        raise UsageError(f"unknown name {n!r}")
    if isinstance(node, ast.UnaryOp):
        v = _ev(F, node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = _int(node.right)
            return _ev(F, node.left) ** e
        a, b = _ev(F, node.left), _ev(F, node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in ("D", "Dn"):
        if len(node.args) != 2:
            raise UsageError("D takes (n, expr)")
        n = _int(node.args[0])
        x = _ev(F, node.args[1])
        return hyper_normalized(x, n) if node.func.id == "D" else hyper(x, n)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "form":
        from .formal import Form
        a = node.args
        if len(a) not in (3, 4) or not (isinstance(a[0], ast.Constant) and isinstance(a[0].value, str)):
            raise UsageError('form takes ("name", k, m[, "m" | "mp"])')
        level = a[3].value if len(a) == 4 else "m"
        return Expr.atom(F, Form(a[0].value, _int(a[1]), _int(a[2]), level))
    raise UsageError(f"unsupported syntax: {ast.dump(node)}")


def _int(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int(node.operand)
    raise UsageError("exponents and derivative orders must be integer literals")


def parse_poly(F: GF, text: str) -> tuple:
    """A polynomial in T (or t) from text such as "t^2+2"; parentheses allowed."""
    e = parse_expr(F, text.strip())
    if not e.is_scalar() or not e.is_z_free() or any(m for m in e.t):
        raise UsageError(f"{text!r} is not a polynomial in T")
    v = e.t[()].const_value() if e.t else RatFunc.const(F, 0)
    if not v.is_poly():
        raise UsageError(f"{text!r} is not a polynomial in T")
    return v.n


# ---------------------------------------------------------------------------
# documents


def _wrap(kind: str, F: GF, body: dict) -> dict:
    return {"kind": kind, "version": VERSION, "field": field_doc(F), **body}


def to_doc(x) -> dict:
    from .hecke import Counterexample, RepSet
    from .structure import DerDecomposition

    if isinstance(x, Expr):
        return _wrap("Expr", x.F, expr_body(x))
    if isinstance(x, AssocPoly):
        return _wrap("AssocPoly", x.F, {"k": x.k, "m": x.m, "coeffs": [expr_body(c) for c in x.c]})
    if isinstance(x, EExpansion):
        return _wrap("EExpansion", x.F, {"k": x.k, "m": x.m, "coeffs": [expr_body(c) for c in x.c]})
    if isinstance(x, USeries):
        return _wrap("USeries", x.F, {"val": x.val, "prec": x.prec, "coeffs": [scalar_doc(c) for c in x.c],
                                      "text": str(x)})
    if isinstance(x, CoeffScalar):
        return _wrap("CoeffScalar", x.F, {"terms": scalar_doc(x)})
    if isinstance(x, RatFunc):
        return _wrap("RatFunc", x.F, k_doc(x))
    if isinstance(x, FqPoly):
        return _wrap("FqPoly", x.F, {"coeffs": list(x.c)})
    if isinstance(x, ZRat):
        return _wrap("ZRat", x.F, zrat_doc(x))
    if isinstance(x, Matrix2):
        return _wrap("Matrix2", x.F, {"entries": matrix_doc(x)})
    if isinstance(x, DerDecomposition):
        F = (x.parts[0] if x.parts else x.alpha).F
        return _wrap("DerDecomposition", F, {
            "k": x.k, "m": x.m, "l": x.l,
            "parts": [expr_body(c) for c in x.parts],
            "alpha": None if x.alpha is None else expr_body(x.alpha),
            "null": [[i, expr_body(c)] for i, c in x.null]})
    if isinstance(x, RepSet):
        F = x.eta.F
        return _wrap("RepSet", F, {"mats": [matrix_doc(g) for g in x.mats], "eta": matrix_doc(x.eta),
                                   "level": list(x.level), "type": x.kind})
    if isinstance(x, Counterexample):
        F = x.value.F
        return _wrap("Counterexample", F, {
            "value": k_doc(x.value), "pi_exponent": -1, "brute": k_doc(x.brute),
            "denominator": k_doc(x.denominator), "numerator": k_doc(x.numerator),
            "cofactor": k_doc(x.cofactor), "nonzero": x.nonzero, "shape_ok": x.shape_ok,
            "text": f"({x.value}) * pi^-1"})
    raise UsageError(f"cannot serialize {type(x).__name__}")


def nvh_doc(rep: NvhReport, F: GF | None = None) -> dict:
    F = F or get_field(rep.q)
    return _wrap("NvhReport", F, {
        "holds": rep.holds, "k": rep.k, "l": rep.l, "m": rep.m, "q": rep.q,
        "witnesses": [{"index": w.index, "binomial": w.binomial, "dimension": w.dimension} for w in rep.witnesses]})


def from_doc(doc: dict):
    from .hecke import Counterexample, RepSet
    from .structure import DerDecomposition

    kind = doc.get("kind")
    v = doc.get("version", VERSION)
    if v > VERSION:
        raise UsageError(f"document version {v} is newer than supported {VERSION}")
    F = field_of(doc)
    if kind == "Expr":
        return expr_of(F, doc)
    if kind in ("AssocPoly", "EExpansion"):
        cs = [expr_of(F, c) for c in doc["coeffs"]]
        cls = AssocPoly if kind == "AssocPoly" else EExpansion
        if cls is EExpansion:
            return EExpansion(F, int(doc["k"]), int(doc["m"]), cs, check=doc.get("check", True))
        return AssocPoly(F, int(doc["k"]), int(doc["m"]), cs)
    if kind == "Function":
        f = expr_of(F, doc["expr"])
        return AssocPoly.of_expr(f, int(doc["k"]), int(doc["m"]))
    if kind == "USeries":
        return USeries.raw(F, [scalar_of(F, c) for c in doc["coeffs"]], int(doc["val"]), int(doc["prec"]))
    if kind == "CoeffScalar":
        return scalar_of(F, doc["terms"])
    if kind == "RatFunc":
        return k_of(F, doc)
    if kind == "FqPoly":
        return FqPoly(F, doc["coeffs"])
    if kind == "ZRat":
        return zrat_of(F, doc)
    if kind == "Matrix2":
        return matrix_of(F, doc["entries"])
    if kind == "NvhReport":
        return NvhReport(doc["holds"], tuple(NvhWitness(w["index"], w["binomial"], w["dimension"])
                                             for w in doc["witnesses"]),
                         doc["k"], doc["l"], doc["m"], doc["q"])
    if kind == "DerDecomposition":
        return DerDecomposition(doc["k"], doc["m"], doc["l"], tuple(expr_of(F, c) for c in doc["parts"]),
                                None if doc.get("alpha") is None else expr_of(F, doc["alpha"]),
                                tuple((int(i), expr_of(F, c)) for i, c in doc.get("null", [])))
    if kind == "RepSet":
        return RepSet(tuple(matrix_of(F, g) for g in doc["mats"]), matrix_of(F, doc["eta"]),
                      tuple(doc["level"]), doc["type"])
    if kind == "Counterexample":
        return Counterexample(k_of(F, doc["value"]), k_of(F, doc["brute"]), k_of(F, doc["denominator"]),
                              k_of(F, doc["numerator"]), k_of(F, doc["cofactor"]))
    raise UsageError(f"unknown kind {kind!r}")


def dumps(x, **kw) -> str:
    doc = x if isinstance(x, dict) else to_doc(x)
    return json.dumps(doc, sort_keys=True, **kw)


def loads(s: str):
    return from_doc(json.loads(s))


def same(a, b) -> bool:
    """Structural equality used by the round-trip property."""
    from .hecke import RepSet
    from .structure import DerDecomposition

    if type(a) is not type(b) and not (isinstance(a, ZRat) and isinstance(b, ZRat)):
        return False
    if isinstance(a, (AssocPoly, EExpansion)):
        return a.k == b.k and a.m == b.m and a.c == b.c
    if isinstance(a, USeries):
        return a.val == b.val and a.prec == b.prec and a.c == b.c
    if isinstance(a, CoeffScalar):
        return a.t == b.t
    if isinstance(a, DerDecomposition):
        return (a.k, a.m, a.l, a.parts, a.alpha, a.null) == (b.k, b.m, b.l, b.parts, b.alpha, b.null)
    if isinstance(a, RepSet):
        return a.mats == b.mats and a.eta == b.eta and a.level == b.level and a.kind == b.kind
    return a == b
