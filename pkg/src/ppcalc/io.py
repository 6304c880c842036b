"""JSON (de)serialisation for algebras, modules, formulas and functor data.

Referenced objects (an algebra inside a module file, say) may be inline
JSON objects or string paths resolved relative to the referring file.
Fields are written as "q" for the rationals and "fp:P" for prime fields;
rational scalars as ints or "a/b" strings.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .algebra import Algebra, QuiverSpec, algebra_from_quiver, validate_algebra
from .controlled import EmbeddingData
from .formulas import PpFormula, PpPair
from .interp import InterpData
from .linalg import GF, QQ, FieldSpec, Mat
from .modules import Bimodule, FDModule, validate_module

__all__ = [
    "ParseError",
    "field_to_str",
    "field_from_str",
    "algebra_to_json",
    "load_algebra",
    "quiver_from_json",
    "module_to_json",
    "load_module",
    "bimodule_to_json",
    "load_bimodule",
    "formula_to_json",
    "load_formula",
    "pair_to_json",
    "load_pair",
    "interp_to_json",
    "load_interp",
    "load_embedding",
    "read_json",
    "dumps",
]


class ParseError(ValueError):
    pass


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}")


def _resolve(ref, base_dir: str):
    if isinstance(ref, str):
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        return read_json(path), os.path.dirname(path)
    if isinstance(ref, dict):
        return ref, base_dir
    raise ParseError(f"expected an object or a path, got {type(ref).__name__}")


def field_to_str(field: FieldSpec) -> str:
    return "q" if not field.is_prime_field else f"fp:{field.p}"


def field_from_str(s: str) -> FieldSpec:
    if s == "q":
        return QQ
    if s.startswith("fp:"):
        try:
            return GF(int(s[3:]))
        except ValueError as exc:
            raise ParseError(f"bad field spec {s!r}: {exc}")
    raise ParseError(f"bad field spec {s!r} (expected 'q' or 'fp:P')")


def _scalar_out(field, x):
    if field.is_prime_field:
        return int(x)
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _scalar_in(field, v):
    if isinstance(v, str):
        try:
            num, den = v.split("/")
            return Fraction(int(num), int(den))
        except ValueError as exc:
            raise ParseError(f"bad scalar {v!r}: {exc}")
    return v


def _vec_out(field, m: Mat):
    return [_scalar_out(field, x) for x in m.to_rows()[0]]


def _mat_out(field, m: Mat):
    return [[_scalar_out(field, x) for x in row] for row in m.to_rows()]


def _mat_in(field, rows) -> Mat:
    return Mat.from_rows(field, [[_scalar_in(field, x) for x in row] for row in rows])


# -- algebras ---------------------------------------------------------------


def quiver_from_json(obj) -> QuiverSpec:
    try:
        return QuiverSpec(
            obj["vertices"],
            [tuple(a) for a in obj["arrows"]],
            relations=[
                [(term[0], list(term[1])) for term in rel]
                for rel in obj.get("relations", [])
            ],
            cap=obj.get("cap", 2),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad quiver: {exc}")


def algebra_to_json(a: Algebra):
    out = {
        "field": field_to_str(a.field),
        "basis": list(a.labels),
        "one": _vec_out(a.field, a.one),
        "mul": [[_vec_out(a.field, a.mul[i][j]) for j in range(a.dim)] for i in range(a.dim)],
    }
    if a.quiver is not None:
        out["quiver"] = {
            "vertices": a.quiver.n_vertices,
            "arrows": [list(arr) for arr in a.quiver.arrows],
            "relations": [
                [[coeff, list(word)] for coeff, word in rel]
                for rel in a.quiver.relations
            ],
            "cap": a.quiver.cap,
        }
    return out


def load_algebra(ref, base_dir: str = ".", field: FieldSpec = None) -> Algebra:
    obj, base_dir = _resolve(ref, base_dir)
    if "vertices" in obj:  # a quiver file; the field comes from the caller
        if field is None:
            raise ParseError("a quiver file needs an explicit --field")
        return algebra_from_quiver(quiver_from_json(obj), field)
    try:
        f = field_from_str(obj["field"])
        labels = list(obj["basis"])
        one = _mat_in(f, [obj["one"]])
        mul = [[_mat_in(f, [row]) for row in block] for block in obj["mul"]]
        if "quiver" in obj:
            built = algebra_from_quiver(quiver_from_json(obj["quiver"]), f)
            if built.labels != labels or built.one != one or built.mul != mul:
                raise ParseError("algebra data disagrees with its quiver presentation")
            return built
        a = Algebra(f, labels, one, mul)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad algebra: {exc}")
    report = validate_algebra(a)
    if not report.ok:
        raise ParseError(f"algebra fails validation: {report.problems[0]}")
    return a


# -- modules ----------------------------------------------------------------


def module_to_json(m: FDModule, algebra_ref=None):
    a = m.algebra
    return {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(a),
        "dim": m.dim,
        "action": {a.labels[l]: _mat_out(a.field, m.action[l]) for l in range(a.dim)},
    }


def load_module(ref, base_dir: str = ".", algebra: Algebra = None) -> FDModule:
    obj, base_dir = _resolve(ref, base_dir)
    try:
        a = algebra if algebra is not None else load_algebra(obj["algebra"], base_dir)
        dim = obj["dim"]
        action = [_mat_in(a.field, obj["action"][lab]) for lab in a.labels]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad module: {exc}")
    m = FDModule(a, dim, action)
    report = validate_module(m)
    if not report.ok:
        raise ParseError(f"module fails validation: {report.problems[0]}")
    return m


def bimodule_to_json(b: Bimodule, left_ref=None, right_ref=None):
    return {
        "left_algebra": left_ref if left_ref is not None else algebra_to_json(b.S),
        "algebra": right_ref if right_ref is not None else algebra_to_json(b.R),
        "dim": b.dim,
        "left_action": {
            b.S.labels[l]: _mat_out(b.field, b.left_action[l]) for l in range(b.S.dim)
        },
        "action": {
            b.R.labels[l]: _mat_out(b.field, b.right_action[l]) for l in range(b.R.dim)
        },
        "generators": [_vec_out(b.field, g) for g in b.generators],
    }


def load_bimodule(ref, base_dir: str = ".") -> Bimodule:
    obj, base_dir = _resolve(ref, base_dir)
    try:
        s = load_algebra(obj["left_algebra"], base_dir)
        r = load_algebra(obj["algebra"], base_dir)
        dim = obj["dim"]
        left = [_mat_in(s.field, obj["left_action"][lab]) for lab in s.labels]
        right = [_mat_in(r.field, obj["action"][lab]) for lab in r.labels]
        gens = [_mat_in(r.field, [g]) for g in obj["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad bimodule: {exc}")
    return Bimodule(s, r, dim, left, right, gens)


# -- formulas ---------------------------------------------------------------


def formula_to_json(phi: PpFormula, algebra_ref=None):
    a = phi.algebra
    return {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(a),
        "free": phi.n,
        "bound": phi.c,
        "matrix": [
            [_vec_out(a.field, phi.entry(i, j).coeffs) for j in range(phi.e)]
            for i in range(phi.n + phi.c)
        ],
    }


def load_formula(ref, base_dir: str = ".", algebra: Algebra = None) -> PpFormula:
    obj, base_dir = _resolve(ref, base_dir)
    try:
        a = algebra if algebra is not None else load_algebra(obj["algebra"], base_dir)
        n, c = obj["free"], obj["bound"]
        matrix = obj["matrix"]
        e = len(matrix[0]) if matrix else 0
        entries = {}
        for i, row in enumerate(matrix):
            for j, coeffs in enumerate(row):
                entries[(i, j)] = a.element([_scalar_in(a.field, x) for x in coeffs])
        return PpFormula(a, n, c, e, entries)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad formula: {exc}")


def pair_to_json(pair: PpPair, algebra_ref=None):
    return {
        "top": formula_to_json(pair.top, algebra_ref),
        "bottom": formula_to_json(pair.bottom, algebra_ref),
    }


def load_pair(ref, base_dir: str = ".", algebra: Algebra = None) -> PpPair:
    obj, base_dir = _resolve(ref, base_dir)
    try:
        top = load_formula(obj["top"], base_dir, algebra)
        bottom = load_formula(obj["bottom"], base_dir, algebra or top.algebra)
    except KeyError as exc:
        raise ParseError(f"bad pair: missing {exc}")
    return PpPair(top, bottom)


# -- interpretation and embedding data --------------------------------------


def interp_to_json(data: InterpData, r_ref=None, s_ref=None):
    return {
        "R": r_ref if r_ref is not None else algebra_to_json(data.R),
        "S": s_ref if s_ref is not None else algebra_to_json(data.S),
        "m": data.m,
        "phi": formula_to_json(data.phi, r_ref),
        "psi": formula_to_json(data.psi, r_ref),
        "rho": {
            data.S.labels[k]: formula_to_json(data.rhos[k], r_ref)
            for k in range(data.S.dim)
        },
    }


def load_interp(ref, base_dir: str = ".") -> InterpData:
    obj, base_dir = _resolve(ref, base_dir)
    try:
        r = load_algebra(obj["R"], base_dir)
        s = load_algebra(obj["S"], base_dir)
        m = obj["m"]
        phi = load_formula(obj["phi"], base_dir, r)
        psi = load_formula(obj["psi"], base_dir, r)
        rhos = [load_formula(obj["rho"][lab], base_dir, r) for lab in s.labels]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad interpretation data: {exc}")
    return InterpData(r, s, m, PpPair(phi, psi), rhos)


def load_embedding(ref, base_dir: str = ".") -> EmbeddingData:
    obj, base_dir = _resolve(ref, base_dir)
    try:
        bim = load_bimodule(obj["bimodule"], base_dir)
        control = None
        if obj.get("control") is not None:
            control = load_module(obj["control"], base_dir, algebra=bim.R)
    except KeyError as exc:
        raise ParseError(f"bad embedding data: missing {exc}")
    return EmbeddingData(bim, control)
