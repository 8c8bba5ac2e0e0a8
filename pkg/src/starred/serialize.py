"""JSON documents for polynomials and verification reports."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

from .ambient import AmbientPoly
from .core.combinatorics import Signature
from .core.hbar import HRational
from .core.scalars import GaussianRational
from .reduced import ReducedPoly

__all__ = ["DocumentError", "to_document", "from_document", "dumps", "loads", "validate_report"]


class DocumentError(ValueError):
    """Malformed polynomial document."""


@lru_cache(maxsize=None)
def _schema(name):
    return json.loads(resources.files("starred").joinpath("schemas", name).read_text())


def _scalar_str(c: GaussianRational) -> str:
    return str(c)


def to_document(f) -> dict:
    if isinstance(f, AmbientPoly):
        basis = "ambient"
    elif isinstance(f, ReducedPoly):
        basis = "fundamental"
    else:
        raise TypeError(f"cannot serialize {type(f).__name__}")
    symbolic = f.is_symbolic()
    terms = []
    for (P, Q), c in f.items():
        t = {"P": list(P), "Q": list(Q)}
        if symbolic:
            num, den = HRational.coerce(c).expanded()
            t["num"] = [_scalar_str(x) for x in num]
            t["den"] = [_scalar_str(x) for x in den]
        else:
            t["re"] = str(c.re)
            t["im"] = str(c.im)
        terms.append(t)
    return {
        "n": f.sig.n,
        "s": f.sig.s,
        "basis": basis,
        "coeff_mode": "hbar_rational" if symbolic else "gaussian",
        "terms": terms,
    }


def _parse_scalar(x) -> GaussianRational:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DocumentError(f"coefficients must be 'p/q' strings, got {x!r}")
    try:
        return GaussianRational.parse(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad coefficient {x!r}: {exc}") from None


def from_document(doc: dict):
    try:
        jsonschema.validate(doc, _schema("poly_document.json"))
    except jsonschema.ValidationError as exc:
        raise DocumentError(f"invalid polynomial document: {exc.message}") from None
    try:
        sig = Signature(doc["n"], doc["s"])
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    mode = doc.get("coeff_mode", "gaussian")
    cls = AmbientPoly if doc["basis"] == "ambient" else ReducedPoly
    L = sig.n + (1 if cls is AmbientPoly else 0)
    terms = []
    for t in doc["terms"]:
        P, Q = tuple(t["P"]), tuple(t["Q"])
        if len(P) != L or len(Q) != L:
            raise DocumentError(f"{doc['basis']} keys need length {L}, got {list(P)}, {list(Q)}")
        if mode == "hbar_rational" and "num" in t:
            num = [_parse_scalar(x) for x in t["num"]]
            den = [_parse_scalar(x) for x in t.get("den", ["1"])]
            try:
                c = HRational.from_expanded(num, den)
            except (ValueError, ZeroDivisionError) as exc:
                raise DocumentError(f"bad rational coefficient: {exc}") from None
        else:
            c = GaussianRational(_parse_scalar(t.get("re", "0")).re, _parse_scalar(t.get("im", "0")).re)
        terms.append(((P, Q), c))
    return cls(sig, terms)


def dumps(f) -> str:
    return json.dumps(to_document(f), indent=2)


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if isinstance(data, list):
        return [from_document(d) for d in data]
    return from_document(data)


def validate_report(report: dict) -> None:
    jsonschema.validate(report, _schema("verify_report.json"))
