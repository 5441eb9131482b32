"""Instance descriptions (JSON) and the report documents built from them.

An instance names a CM field, a CM type (or all of them) and a prime::

    {
      "field": {"kind": "cyclotomic", "conductor": 8, "subgroup_H": [1]},
      "cm_type": {"induced": {"subfield_H": [1, 5], "subfield_type": [1, 5]}},
      "prime": {"p": 3}
    }

Explicit fields give permutation generators by name and refer to elements
by words in those names (``"xy^3"``); cyclotomic fields use residues mod n.
Subgroups (``subgroup_H``, ``H``, ``D``, ``I``, ``subfield_H``) are the
subgroups *generated* by the listed elements.
"""

from __future__ import annotations

import functools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from sympy import primerange

from .cm import (
    CMFieldData,
    CMTypeLift,
    enumerate_cm_types,
    induced_type,
    is_primitive,
    validate_cm_field,
    validate_cm_type,
)
from .cyclotomic import UnitGroupModN, decomposition_and_inertia, unit_group
from .errors import (
    DimensionTooLargeForEnumeration,
    ScanRequiresCyclotomic,
    SpecError,
    ValidationError,
)
from .groups import Subgroup, cyclic_subgroups, group_from_generators, subgroup_generated
from .newton import (
    MIXED,
    ORDINARY,
    SUPERSINGULAR,
    Evaluation,
    NewtonPolygon,
    PrimeContext,
    SplittingReport,
    evaluate,
    prime_context,
)

MAX_SCAN_BOUND = 1_000_000
MAX_CENSUS_DIMENSION = 10
CLASSES = (ORDINARY, SUPERSINGULAR, MIXED)


def frac(x: Fraction) -> str:
    """``num/den``, also for integers (``0/1``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def slope_summary(poly: NewtonPolygon) -> str:
    return ", ".join(f"{s} ×{m}" for s, m in poly.slope_multiset())


@dataclass(frozen=True, eq=False)
class Instance:
    """A parsed instance: the field plus resolved types and prime data."""
    spec: dict
    field: CMFieldData
    unit: Optional[UnitGroupModN]
    types: tuple[CMTypeLift, ...]
    prime: Optional[PrimeContext]
    p: Optional[int]

    @property
    def G(self):
        return self.field.G

    def label(self, a: int) -> str:
        return self.G.label(a)

    def labels(self, elems) -> list[str]:
        return [self.G.label(a) for a in elems]


def _require(d: Any, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise SpecError(where, ValidationError(f"missing key {key!r}"))
    return d[key]


def _element(fld_or_group, unit, name):
    if unit is not None:
        try:
            return unit.element(int(name))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{name!r} is not a residue") from exc
    return fld_or_group.parse(name)


def _subgroup(G, unit, names) -> Subgroup:
    if not isinstance(names, list):
        raise ValidationError("expected a list of elements")
    return subgroup_generated(G, [_element(G, unit, x) for x in names])


def build_field(spec: dict) -> tuple[CMFieldData, Optional[UnitGroupModN]]:
    fs = _require(spec, "field", "field")
    kind = fs.get("kind") if isinstance(fs, dict) else None
    try:
        if kind == "cyclotomic":
            unit = unit_group(int(_require(fs, "conductor", "field")))
            H = _subgroup(unit.group, unit, fs.get("subgroup_H", [1]))
            return validate_cm_field(unit.group, H, unit.conjugation), unit
        if kind == "explicit":
            gens = _require(fs, "generators", "field")
            if not isinstance(gens, dict) or not gens:
                raise ValidationError("generators must be a non-empty object of name -> permutation")
            perms = list(gens.values())
            degree = len(perms[0])
            G = group_from_generators(degree, perms, names=list(gens), name=fs.get("name", ""))
            H = _subgroup(G, None, _require(fs, "H", "field"))
            return validate_cm_field(G, H, G.parse(_require(fs, "conjugation", "field"))), None
        raise ValidationError(f"unknown field kind {kind!r}")
    except SpecError:
        raise
    except ValidationError as exc:
        raise SpecError("field", exc) from exc


def build_types(spec: dict, fld: CMFieldData, unit) -> tuple[CMTypeLift, ...]:
    ts = _require(spec, "cm_type", "cm_type")
    G = fld.G
    try:
        if not isinstance(ts, dict) or len(ts) != 1:
            raise ValidationError("cm_type needs exactly one of 'explicit', 'induced', 'all'")
        if "explicit" in ts:
            members = [_element(G, unit, x) for x in ts["explicit"]]
            return (validate_cm_type(fld, members),)
        if "induced" in ts:
            ind = ts["induced"]
            H_sub = _subgroup(G, unit, _require(ind, "subfield_H", "cm_type"))
            sub = [_element(G, unit, x) for x in _require(ind, "subfield_type", "cm_type")]
            return (induced_type(fld, H_sub, sub),)
        if ts.get("all") is True:
            return tuple(enumerate_cm_types(fld))
        raise ValidationError(f"unrecognised cm_type {ts!r}")
    except SpecError:
        raise
    except ValidationError as exc:
        raise SpecError("cm_type", exc) from exc


def build_prime(ps: Any, fld: CMFieldData, unit) -> tuple[PrimeContext, Optional[int]]:
    try:
        if not isinstance(ps, dict):
            raise ValidationError("prime must be an object")
        if "p" in ps:
            if unit is None:
                raise ValidationError("'p' is only available for cyclotomic fields; give D (and I)")
            p = int(ps["p"])
            D, I = decomposition_and_inertia(unit, p)
            return prime_context(fld, D, I), p
        D = _subgroup(fld.G, unit, _require(ps, "D", "prime"))
        I = _subgroup(fld.G, unit, ps["I"]) if ps.get("I") is not None else None
        return prime_context(fld, D, I), None
    except SpecError:
        raise
    except ValidationError as exc:
        raise SpecError("prime", exc) from exc


def load_instance(spec: dict, need_prime: bool = True) -> Instance:
    if not isinstance(spec, dict):
        raise SpecError("spec", ValidationError("instance must be a JSON object"))
    fld, unit = build_field(spec)
    types = build_types(spec, fld, unit)
    pc, p = None, None
    if need_prime:
        pc, p = build_prime(_require(spec, "prime", "prime"), fld, unit)
    return Instance(spec, fld, unit, types, pc, p)


def read_spec(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError("spec", ValidationError(f"invalid JSON: {exc}")) from exc


# -- reports ------------------------------------------------------------------

def _splitting_doc(inst: Instance, rep: SplittingReport) -> dict:
    places = []
    for v in rep.places:
        places.append({
            "coset": inst.labels(v.coset.members),
            "e": v.e,
            "f": v.f,
            "behavior": v.behavior,
            "above": [{
                "coset": inst.labels(w.coset.members),
                "e": w.e,
                "f": w.f,
                "slope": frac(w.slope) if w.slope is not None else None,
            } for w in v.above],
        })
    return {"g": rep.g, "places": places}


def _evaluation_doc(inst: Instance, t: CMTypeLift, ev: Evaluation) -> dict:
    poly = ev.polygon
    return {
        "cm_type": inst.labels(t.members),
        "primitive": is_primitive(t),
        "slopes": [{
            "slope": frac(b.slope),
            "multiplicity": b.multiplicity,
            "coset": inst.labels(b.coset.members),
        } for b in poly.blocks],
        "slope_summary": slope_summary(poly),
        "vertices": [[x, frac(y)] for x, y in poly.vertices()],
        "classification": ev.classification,
        "splitting": _splitting_doc(inst, ev.splitting),
        "criteria": {name: {
            "hypothesis": r.hypothesis,
            "conclusion": r.conclusion,
            "satisfied": r.satisfied,
        } for name, r in ev.criteria.results},
    }


def field_doc(inst: Instance) -> dict:
    fld = inst.field
    doc = {"kind": inst.spec["field"]["kind"]}
    if inst.unit is not None:
        doc["conductor"] = inst.unit.n
    doc.update({
        "group_order": fld.G.order,
        "g": fld.g,
        "H": inst.labels(fld.H.members),
        "H_plus": inst.labels(fld.H_plus.members),
        "conjugation": inst.label(fld.c),
    })
    return doc


def run_instance(spec: dict) -> tuple[dict, list[tuple[CMTypeLift, Evaluation]]]:
    """Evaluate every CM type of the instance at its prime.

    Returns the JSON-ready report document and the raw evaluations (for
    plotting).
    """
    inst = load_instance(spec)
    evaluations = [(t, evaluate(t, inst.prime)) for t in inst.types]
    prime = {"D": inst.labels(inst.prime.D.members), "I": inst.labels(inst.prime.I.members)}
    if inst.p is not None:
        prime = {"p": inst.p, **prime}
    doc = {
        "field": field_doc(inst),
        "prime": prime,
        "results": [_evaluation_doc(inst, t, ev) for t, ev in evaluations],
    }
    return doc, evaluations


def dump_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_report(text: str) -> dict:
    return json.loads(text)


# -- prime scan ------------------------------------------------------------------

SCAN_HEADER = ("p", "p_mod_n", "D_order", "I_order", "classification", "splitting")


@dataclass
class ScanResult:
    conductor: int
    bound: int
    rows: list[tuple]

    def counts(self) -> dict[str, int]:
        out = {k: 0 for k in CLASSES}
        for row in self.rows:
            out[row[4]] += 1
        return out

    def densities(self) -> dict[str, float]:
        total = len(self.rows)
        return {k: (v / total if total else 0.0) for k, v in self.counts().items()}


def _splitting_summary(rep: SplittingReport) -> str:
    return " ".join(f"{v.behavior}(e={v.e};f={v.f})" for v in rep.places)


@functools.lru_cache(maxsize=8)
def _scan_setup(conductor: int, H_res: tuple, type_res: tuple):
    unit = unit_group(conductor)
    H = unit.subgroup(H_res)
    fld = validate_cm_field(unit.group, H, unit.conjugation)
    t = validate_cm_type(fld, [unit.element(r) for r in type_res])
    return unit, fld, t


def _scan_chunk(args) -> list[tuple]:
    conductor, H_res, type_res, primes = args
    unit, fld, t = _scan_setup(conductor, H_res, type_res)
    rows = []
    for p in primes:
        D, I = decomposition_and_inertia(unit, p)
        ev = evaluate(t, prime_context(fld, D, I))
        rows.append((p, p % conductor, D.order, I.order, ev.classification,
                     _splitting_summary(ev.splitting)))
    return rows


def _chunks(items: list, size: int):
    for i in range(0, len(items), size):
        yield items[i:i + size]


def scan_primes(spec: dict, bound: int, jobs: int = 1) -> ScanResult:
    """Classify the reduction at every prime ``p <= bound``."""
    fs = spec.get("field") if isinstance(spec, dict) else None
    if not isinstance(fs, dict) or fs.get("kind") != "cyclotomic":
        raise ScanRequiresCyclotomic("scan needs a cyclotomic field")
    if not 0 <= bound <= MAX_SCAN_BOUND:
        raise SpecError("bound", ValidationError(f"bound must lie in 0..{MAX_SCAN_BOUND}"))
    inst = load_instance(spec, need_prime=False)
    if len(inst.types) != 1:
        raise SpecError("cm_type", ValidationError("scan needs a single CM type"))
    unit = inst.unit
    H_res = tuple(unit.residues_of(inst.field.H))
    type_res = tuple(sorted(unit.residue(a) for a in inst.types[0].members))
    primes = list(primerange(2, bound + 1))
    tasks = [(unit.n, H_res, type_res, chunk) for chunk in _chunks(primes, 2000)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, tasks))
    else:
        parts = [_scan_chunk(task) for task in tasks]
    rows = [row for part in parts for row in part]
    return ScanResult(unit.n, bound, rows)


def scan_doc(res: ScanResult) -> dict:
    return {
        "conductor": res.conductor,
        "bound": res.bound,
        "columns": list(SCAN_HEADER),
        "rows": [list(r) for r in res.rows],
        "counts": res.counts(),
        "densities": res.densities(),
    }


# -- census ------------------------------------------------------------------------

CENSUS_HEADER = ("type_index", "cm_type", "primitive", "D", "D_order", "classification", "slopes")


def census(spec: dict) -> list[tuple]:
    """Every CM type against every cyclic decomposition group (unramified).

    Conjugate decomposition groups are kept apart: conjugating ``D`` by an
    element outside the left stabilizer of the type can change the polygon.
    """
    fld, unit = build_field(spec)
    if fld.g > MAX_CENSUS_DIMENSION:
        raise DimensionTooLargeForEnumeration(f"census needs g <= {MAX_CENSUS_DIMENSION}, got {fld.g}")
    G = fld.G
    types = enumerate_cm_types(fld)
    subgroups = cyclic_subgroups(G)
    rows = []
    for k, t in enumerate(types):
        prim = is_primitive(t)
        for D in subgroups:
            ev = evaluate(t, prime_context(fld, D))
            rows.append((k, " ".join(G.label(a) for a in t.members), prim,
                         " ".join(G.label(a) for a in D.members), D.order,
                         ev.classification, slope_summary(ev.polygon)))
    return rows
