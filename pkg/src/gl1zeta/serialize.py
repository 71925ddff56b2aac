"""JSON codecs for the package's value types, plus CSV shell tables.

The wire formats are pinned by the schema documents in gl1zeta/schemas/;
CLI inputs are validated against them before any computation starts.
"""

from __future__ import annotations

import csv
import importlib.resources
import json
from fractions import Fraction

import jsonschema

from .arch import ArchChar, ArchSeed
from .characters import MultChar, char_from_json, char_to_json
from .defaults import DEFAULT_PREC
from .padic import PAdicElt
from .ratfunc import RationalFunc, rf_from_json, rf_to_json
from .stepfn import (MultStepFunction, MultTerm, StepFunction, StepTerm)


class InputFormatError(ValueError):
    """Input does not match its schema; carries a machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


_SCHEMA_CACHE: dict[str, dict] = {}


def load_schema(name: str) -> dict:
    if name not in _SCHEMA_CACHE:
        ref = importlib.resources.files("gl1zeta.schemas").joinpath(name + ".json")
        _SCHEMA_CACHE[name] = json.loads(ref.read_text())
    return _SCHEMA_CACHE[name]


def validate(obj, schema_name: str) -> None:
    try:
        jsonschema.validate(obj, load_schema(schema_name))
    except jsonschema.ValidationError as exc:
        raise InputFormatError("schema/" + schema_name, exc.message) from exc


# -- p-adic scalars ---------------------------------------------------------

def padic_to_json(x: PAdicElt | None) -> dict | None:
    if x is None:
        return None
    return {"p": x.p, "val": x.val, "unit": x.unit, "prec": x.prec}


def padic_from_json(obj, p: int | None = None) -> PAdicElt | None:
    if obj is None:
        return None
    if isinstance(obj, str):
        # rational literal like "4/9"
        if p is None:
            raise InputFormatError("padic/missing-p", "rational literal needs p")
        return PAdicElt.from_rational(p, Fraction(obj), DEFAULT_PREC)
    return PAdicElt(int(obj["p"]), int(obj["val"]), int(obj["unit"]),
                    int(obj.get("prec", DEFAULT_PREC)))


# -- functions --------------------------------------------------------------

def step_to_json(f: StepFunction) -> dict:
    return {"model": "step", "p": f.p,
            "terms": [{"coeff": [t.coeff.real, t.coeff.imag],
                       "twist": padic_to_json(t.twist),
                       "center": padic_to_json(t.center),
                       "rad": t.rad} for t in f.terms]}


def step_from_json(obj: dict) -> StepFunction:
    validate(obj, "step_function")
    p = int(obj["p"])
    terms = [StepTerm(complex(t["coeff"][0], t["coeff"][1]),
                      padic_from_json(t.get("twist"), p),
                      padic_from_json(t.get("center"), p),
                      int(t["rad"])) for t in obj["terms"]]
    return StepFunction(p, terms)


def mult_to_json(f: MultStepFunction) -> dict:
    return {"model": "mult", "p": f.p,
            "terms": [{"coeff": [t.coeff.real, t.coeff.imag],
                       "rep": padic_to_json(t.rep),
                       "k": t.k} for t in f.terms]}


def mult_from_json(obj: dict) -> MultStepFunction:
    validate(obj, "mult_step_function")
    p = int(obj["p"])
    terms = [MultTerm(complex(t["coeff"][0], t["coeff"][1]),
                      padic_from_json(t["rep"], p),
                      int(t["k"])) for t in obj["terms"]]
    return MultStepFunction(p, terms)


def function_from_json(obj: dict):
    model = obj.get("model")
    if model == "step":
        return step_from_json(obj)
    if model == "mult":
        return mult_from_json(obj)
    raise InputFormatError("function/model", "model must be 'step' or 'mult'")


# -- characters and pi parameters ------------------------------------------

def multchar_from_json(obj: dict) -> MultChar:
    validate(obj, "character")
    try:
        return char_from_json(obj)
    except ValueError as exc:
        raise InputFormatError("character/invalid", str(exc)) from exc


multchar_to_json = char_to_json


def pi_from_json(obj: dict, p: int | None = None):
    """{"kind": "satake", "alpha": [[re,im],...]} |
    {"kind": "gl1", "chi": {...}} | {"kind": "chars", "chis": [{...}]}"""
    validate(obj, "pi_params")
    kind = obj["kind"]
    if kind == "satake":
        return [complex(a[0], a[1]) for a in obj["alpha"]]
    if kind == "gl1":
        return [multchar_from_json(obj["chi"])]
    return [multchar_from_json(c) for c in obj["chis"]]


def pi_to_json(params) -> dict:
    if all(isinstance(c, MultChar) for c in params):
        if len(params) == 1:
            return {"kind": "gl1", "chi": char_to_json(params[0])}
        return {"kind": "chars", "chis": [char_to_json(c) for c in params]}
    return {"kind": "satake",
            "alpha": [[complex(a).real, complex(a).imag] for a in params]}


# -- Archimedean ------------------------------------------------------------

def arch_char_from_json(obj: dict) -> ArchChar:
    validate(obj, "arch_char")
    return ArchChar(obj.get("place", "real"), int(obj["eps"]),
                    float(obj.get("t", 0.0)))


def arch_seed_from_json(obj: dict) -> ArchSeed:
    place = obj.get("place", "real")
    if place == "real":
        poly = tuple(complex(c[0], c[1]) for c in obj.get("poly", [[1, 0]]))
        return ArchSeed("real", poly)
    coeff = obj.get("coeff", [1, 0])
    return ArchSeed("complex", (complex(coeff[0], coeff[1]),),
                    hol=int(obj.get("hol", 0)), antihol=int(obj.get("antihol", 0)))


# -- deterministic emission --------------------------------------------------

def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      allow_nan=False) + "\n"


def write_shell_csv(path: str, rows, level: int) -> None:
    """Shell-value table: m, coset representative (exact rational lift),
    re, im."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "rep", "re", "im"])
        for m, rep, v in rows:
            lift = rep.lift() if isinstance(rep, PAdicElt) else Fraction(rep)
            w.writerow([m, str(lift), repr(v.real), repr(v.imag)])


def rf_json(a: RationalFunc) -> dict:
    return rf_to_json(a)


def rf_parse(obj: dict) -> RationalFunc:
    validate(obj, "rational_func")
    return rf_from_json(obj)
