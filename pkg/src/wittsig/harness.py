"""Fixture loading, the direct-versus-formula crosscheck and corpus runs.

A fixture is one JSON document::

    {
      "name": "...",
      "complex":    {"vertices": n, "facets": [[...], ...],
                     "orientation": [+-1, ...], "filtration": [level, ...]},
      "action":     {"order": N, "vertex_perm": [...]},
      "fixed_data": {"order": N, "ambient_dim": n, "components": [...]},
      "expected":   {...}
    }

Every block except ``name`` is optional.  ``filtration`` lists the closed
levels X_{n-2}, X_{n-3}, ..., each as a list of simplices (vertex lists)
whose closure is the level; omitted trailing levels are empty.
``orientation`` signs refer to the facets in the order listed.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .charclass import FixedComponentData, FixedDataError, component_from_json, evaluate_formula
from .cyclotomic import Cyclotomic, embed_complex, lcm
from .ih import homology_basis, ih_ranks, witt_check
from .pairing import PairingError, g_signature_direct, signature
from .simplicial import (
    CyclicAction,
    InvalidComplexError,
    SimplicialPseudomanifold,
    fixed_subcomplex,
    pseudomanifold_from_listing,
    validate_action,
)

__all__ = [
    "FixtureError",
    "Fixture",
    "CrosscheckReport",
    "load_fixture",
    "parse_fixture",
    "run_crosscheck",
    "run_fixture",
    "corpus_paths",
    "run_corpus",
    "dumps",
]


class FixtureError(ValueError):
    """Schema or invariant violation; messages carry JSON pointers."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass
class Fixture:
    name: str
    space: SimplicialPseudomanifold | None = None
    action: CyclicAction | None = None
    components: list = field(default_factory=list)
    fixed_order: int | None = None
    ambient_dim: int | None = None
    expected: dict = field(default_factory=dict)
    has_fixed_data: bool = False


def dumps(obj) -> str:
    """Deterministic JSON rendering."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _need(d, key, ptr, kind, problems):
    if not isinstance(d, dict) or key not in d:
        problems.append(f"{ptr}/{key}: missing")
        return None
    v = d[key]
    if kind is int and (not isinstance(v, int) or isinstance(v, bool)):
        problems.append(f"{ptr}/{key}: expected an integer")
        return None
    if kind is list and not isinstance(v, list):
        problems.append(f"{ptr}/{key}: expected a list")
        return None
    if kind is dict and not isinstance(v, dict):
        problems.append(f"{ptr}/{key}: expected an object")
        return None
    return v


def _parse_complex(c: dict) -> SimplicialPseudomanifold:
    problems = []
    n = _need(c, "vertices", "/complex", int, problems)
    facets = _need(c, "facets", "/complex", list, problems)
    if problems:
        raise FixtureError(problems)
    for i, f in enumerate(facets):
        if not isinstance(f, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            problems.append(f"/complex/facets/{i}: expected a list of vertex indices")
    orient = c.get("orientation")
    if orient is not None and (not isinstance(orient, list) or any(o not in (1, -1) for o in orient)):
        problems.append("/complex/orientation: expected a list of +1/-1")
    filt = c.get("filtration") or []
    if not isinstance(filt, list):
        problems.append("/complex/filtration: expected a list of levels")
        filt = []
    for i, lev in enumerate(filt):
        if not isinstance(lev, list) or not all(isinstance(s, list) for s in lev):
            problems.append(f"/complex/filtration/{i}: expected a list of simplices")
    if problems:
        raise FixtureError(problems)
    try:
        return pseudomanifold_from_listing(n, [tuple(f) for f in facets], orient, [[tuple(s) for s in lev] for lev in filt])
    except InvalidComplexError as exc:
        raise FixtureError([f"/complex: {v}" for v in exc.violations]) from exc


def parse_fixture(doc: dict, source: str = "<fixture>") -> Fixture:
    if not isinstance(doc, dict):
        raise FixtureError(f"{source}: top level must be an object")
    problems = []
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        problems.append("/name: missing or not a string")
    if problems:
        raise FixtureError(problems)
    fx = Fixture(name=name, expected=dict(doc.get("expected") or {}))
    if "complex" in doc:
        fx.space = _parse_complex(doc["complex"])
    if "action" in doc:
        if fx.space is None:
            raise FixtureError("/action: an action needs a complex")
        a = doc["action"]
        order = _need(a, "order", "/action", int, problems)
        perm = _need(a, "vertex_perm", "/action", list, problems)
        if problems:
            raise FixtureError(problems)
        try:
            fx.action = validate_action(fx.space, order, perm)
        except InvalidComplexError as exc:
            raise FixtureError([f"/action: {v}" for v in exc.violations]) from exc
    if "fixed_data" in doc:
        fd = doc["fixed_data"]
        order = _need(fd, "order", "/fixed_data", int, problems)
        amb = _need(fd, "ambient_dim", "/fixed_data", int, problems)
        comps = _need(fd, "components", "/fixed_data", list, problems)
        if problems:
            raise FixtureError(problems)
        if fx.action is not None and order != fx.action.order:
            problems.append(f"/fixed_data/order: order mismatch ({order} vs action order {fx.action.order})")
        if fx.space is not None and amb != fx.space.dim:
            problems.append(f"/fixed_data/ambient_dim: {amb} differs from the complex dimension {fx.space.dim}")
        parsed = []
        for i, comp in enumerate(comps):
            try:
                c = component_from_json(comp, amb)
            except (FixedDataError, KeyError, TypeError, ValueError) as exc:
                problems.append(f"/fixed_data/components/{i}: {exc}")
                continue
            for rec in c.normal:
                if order % rec.angle_den:
                    problems.append(f"/fixed_data/components/{i}: angle denominator {rec.angle_den} does not divide order {order}")
            parsed.append(c)
        if problems:
            raise FixtureError(problems)
        fx.components, fx.fixed_order, fx.ambient_dim = parsed, order, amb
        fx.has_fixed_data = True
    return fx


def load_fixture(path) -> Fixture:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FixtureError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_fixture(doc, str(path))


# ---------------------------------------------------------------------------
# crosscheck


def _conjugated(components) -> list:
    out = []
    for c in components:
        recs = [type(r)(r.angle_num, r.angle_den, r.rank, r.chern, not r.conjugate) if not r.is_minus_one else r for r in c.normal]
        out.append(FixedComponentData(c.name, c.dim, c.presentation, c.l_class, recs))
    return out


def _difference(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    m = lcm(a.order, b.order)
    return a.lift(m) - b.lift(m)


def _float_abs(c: Cyclotomic, precision: int) -> float:
    re, im = embed_complex(c, precision)
    return float(abs(re) + abs(im))


@dataclass
class CrosscheckReport:
    name: str
    direct: Cyclotomic | None
    formula: Cyclotomic
    residual: Cyclotomic | None
    passed: bool
    inverse_direct: Cyclotomic | None = None
    inverse_formula: Cyclotomic | None = None
    inverse_passed: bool = True
    validators: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "formula": self.formula.to_json(),
            "pass": self.passed,
            "validators": self.validators,
        }
        if self.direct is not None:
            out["direct"] = self.direct.to_json()
            out["residual"] = self.residual.to_json()
            out["residual_abs"] = _float_abs(self.residual, 256)
        if self.inverse_formula is not None:
            out["inverse"] = {
                "formula": self.inverse_formula.to_json(),
                "direct": self.inverse_direct.to_json() if self.inverse_direct is not None else None,
                "pass": self.inverse_passed,
            }
        return out


def _validators(fx: Fixture) -> dict:
    out = {"declared_components_even_dimensional": all(c.dim % 2 == 0 for c in fx.components)}
    if fx.space is not None and fx.action is not None:
        comps = fixed_subcomplex(fx.space, fx.action)
        out["fixed_components_even_dimensional"] = all(c.is_even_dimensional for c in comps)
        out["fixed_component_dims"] = sorted(c.dim for c in comps)
        out["declared_component_dims_match"] = sorted(c.dim for c in comps) == sorted(c.dim for c in fx.components)
        witt = []
        for c in comps:
            if c.dim >= 2:
                witt.append(witt_check(c.as_pseudomanifold()).is_witt)
            else:
                witt.append(True)
        out["fixed_components_witt"] = all(witt)
    return out


def run_crosscheck(fx: Fixture) -> CrosscheckReport:
    if not fx.has_fixed_data:
        raise FixtureError(f"{fx.name}: crosscheck needs fixed_data")
    order = fx.fixed_order
    formula = evaluate_formula(fx.components, order)
    inv_formula = evaluate_formula(_conjugated(fx.components), order)
    conj_ok = _difference(inv_formula, formula.conj()).is_zero()
    direct = residual = inv_direct = None
    if fx.action is not None:
        direct = g_signature_direct(fx.space, fx.action).value
        residual = _difference(direct, formula)
        passed = residual.is_zero()
        inv_direct = g_signature_direct(fx.space, fx.action, -1).value
        inv_ok = _difference(inv_direct, direct.conj()).is_zero() and _difference(inv_direct, inv_formula).is_zero()
    elif "formula" in fx.expected:
        exp = Cyclotomic.from_json(fx.expected["formula"])
        residual = None
        passed = _difference(exp, formula).is_zero()
        inv_ok = True
    else:
        raise FixtureError(f"{fx.name}: crosscheck needs an action or an expected formula value")
    validators = _validators(fx)
    ok = passed and all(v for k, v in validators.items() if isinstance(v, bool))
    return CrosscheckReport(fx.name, direct, formula, residual, ok, inv_direct, inv_formula, inv_ok and conj_ok, validators)


# ---------------------------------------------------------------------------
# per-fixture run driven by the expected block


def _check(results: dict, key: str, got, want) -> None:
    results["checks"][key] = {"got": got, "expected": want, "pass": got == want}


def _cyc_equal(a: Cyclotomic, b: Cyclotomic) -> bool:
    return _difference(a, b).is_zero()


def run_fixture(fx: Fixture) -> dict:
    """Compute every quantity named in the fixture's expected block and compare."""
    exp = fx.expected
    res: dict = {"name": fx.name, "checks": {}}
    X = fx.space
    if X is not None:
        res["dim"] = X.dim
        res["f_vector"] = [X.complex.count(d) for d in range(X.dim + 1)]
    if "homology_ranks" in exp:
        got = [homology_basis(X, i).rank for i in range(X.dim + 1)]
        _check(res, "homology_ranks", got, exp["homology_ranks"])
    if "ih_ranks" in exp:
        _check(res, "ih_ranks", ih_ranks(X, "lower"), exp["ih_ranks"])
    if "ih_ranks_upper" in exp:
        _check(res, "ih_ranks_upper", ih_ranks(X, "upper"), exp["ih_ranks_upper"])
    if "is_witt" in exp or "witness_ranks" in exp:
        w = witt_check(X)
        res["witt"] = w.to_json()
        if "is_witt" in exp:
            _check(res, "is_witt", w.is_witt, exp["is_witt"])
        if "witness_ranks" in exp:
            _check(res, "witness_ranks", sorted(x["middle_rank"] for x in w.witnesses), exp["witness_ranks"])
    if "signature" in exp:
        _check(res, "signature", signature(X), exp["signature"])
    if "sign_identity" in exp:
        ident = validate_action(X, 1, {v: v for v in X.complex.vertices})
        v = g_signature_direct(X, ident).value
        res["checks"]["sign_identity"] = {"got": v.to_json(), "expected": exp["sign_identity"], "pass": v == exp["sign_identity"]}
    if "fixed_component_dims" in exp:
        _check(res, "fixed_component_dims", sorted(c.dim for c in fixed_subcomplex(X, fx.action)), exp["fixed_component_dims"])
    if "sign_g" in exp:
        rep = g_signature_direct(X, fx.action)
        want = Cyclotomic.from_json(exp["sign_g"])
        res["direct"] = rep.to_json()
        res["checks"]["sign_g"] = {"got": rep.value.to_json(), "expected": want.to_json(), "pass": _cyc_equal(rep.value, want)}
    if "formula" in exp:
        val = evaluate_formula(fx.components, fx.fixed_order)
        want = Cyclotomic.from_json(exp["formula"])
        res["checks"]["formula"] = {"got": val.to_json(), "expected": want.to_json(), "pass": _cyc_equal(val, want)}
    if exp.get("crosscheck"):
        rep = run_crosscheck(fx)
        res["crosscheck"] = rep.to_json()
        res["checks"]["crosscheck"] = {"got": rep.passed and rep.inverse_passed, "expected": True, "pass": rep.passed and rep.inverse_passed}
    res["pass"] = all(c["pass"] for c in res["checks"].values())
    return res


def corpus_paths() -> list[Path]:
    root = resources.files("wittsig") / "corpus"
    return sorted((Path(str(p)) for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)


def _run_path(p) -> dict:
    fx = load_fixture(p)
    try:
        return run_fixture(fx)
    except (PairingError, FixtureError) as exc:
        return {"name": fx.name, "error": str(exc), "pass": False, "checks": {}}


def run_corpus(paths=None, jobs: int = 1) -> dict:
    """Run fixtures independently; the report is ordered by fixture name whatever ``jobs`` is."""
    paths = list(paths) if paths is not None else corpus_paths()
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_path, paths))
    else:
        results = [_run_path(p) for p in paths]
    results.sort(key=lambda r: r["name"])
    return {"fixtures": results, "pass": all(r["pass"] for r in results), "count": len(results)}
