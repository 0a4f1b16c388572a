"""Ingestion of cuspidal-pair datasets (Uch-derived data imported as JSON)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import jsonschema

from ..arith import nu_cyclotomic_value, nu_ell
from ..levi import LeviPoset, levi_defect


class DatasetError(ValueError):
    pass


_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

SCHEMA = {
    "type": "object",
    "required": ["ambient_id", "pairs"],
    "additionalProperties": False,
    "properties": {
        "ambient_id": {"type": "string"},
        "e": {"type": "integer", "minimum": 1},
        "uch_count": {"type": "integer", "minimum": 0},
        "comment": {"type": "string"},
        "pairs": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["levi_class", "label"],
                "additionalProperties": False,
                "properties": {
                    "levi_class": {"type": "string", "pattern": "^(G|min|O[0-9]+)$"},
                    "label": {"type": "string", "minLength": 1},
                    "defect_shift": {"type": "integer", "minimum": 0},
                    "degree_poly": {
                        "type": "object",
                        "required": ["scalar_num", "scalar_den", "x_power", "cyclo"],
                        "additionalProperties": False,
                        "properties": {
                            "scalar_num": {"type": "integer"},
                            "scalar_den": {"type": "integer", "minimum": 1},
                            "x_power": {"type": "integer", "minimum": 0},
                            "cyclo": {"type": "array", "items": {
                                "type": "array", "minItems": 2, "maxItems": 2,
                                "items": {"type": "integer", "minimum": 1}}},
                        },
                    },
                    "action": {
                        "oneOf": [
                            {"const": "trivial"},
                            {"type": "object", "required": ["generators"], "additionalProperties": False,
                             "properties": {"generators": {"type": "array", "items": {
                                 "type": "object", "required": ["matrix", "image"],
                                 "additionalProperties": False,
                                 "properties": {"matrix": _MATRIX, "image": {"type": "string"}}}}}},
                        ]
                    },
                },
            },
        },
    },
}


@dataclass(frozen=True)
class DegreePoly:
    scalar: Fraction
    x_power: int
    cyclo: tuple[tuple[int, int], ...]

    def valuation(self, q: int, ell: int) -> int:
        """nu_ell(Deg(q)) by literal evaluation of every Phi_m(q)."""
        if self.scalar == 0:
            raise DatasetError("degree polynomial is zero")
        return nu_ell(self.scalar, ell) + sum(mult * nu_cyclotomic_value(m, q, ell) for m, mult in self.cyclo)


@dataclass(frozen=True)
class CuspidalRecord:
    orbit: int                  # index into poset.orbits
    label: str
    defect_shift: int
    degree_poly: DegreePoly | None
    generators: tuple[tuple[int, str], ...]    # (W element index, image label); empty = trivial


@dataclass(frozen=True)
class CuspidalDataset:
    ambient_id: str
    uch_count: int | None
    records: tuple[CuspidalRecord, ...]


def resolve_levi_class(poset: LeviPoset, name: str) -> int:
    if name == "G":
        return poset.orbit_of(poset.top)
    if name == "min":
        return poset.orbit_of(poset.minimal[0])
    k = int(name[1:])
    if k >= len(poset.orbits):
        raise DatasetError(f"unresolvable Levi class {name!r}")
    return k


def ingest_cuspidal_dataset(path: str | Path, poset: LeviPoset) -> CuspidalDataset:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DatasetError(f"cannot read dataset: {exc}") from exc
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise DatasetError(f"schema violation: {exc.message}") from exc
    coset, zeta = poset.coset, poset.zeta
    if data["ambient_id"] != coset.name:
        raise DatasetError(f"dataset is for {data['ambient_id']!r}, not {coset.name!r}")
    if "e" in data and data["e"] != zeta.e:
        raise DatasetError(f"dataset is for e={data['e']}, run has e={zeta.e}")
    records = []
    seen = set()
    for rec in data["pairs"]:
        orbit = resolve_levi_class(poset, rec["levi_class"])
        if (orbit, rec["label"]) in seen:
            raise DatasetError(f"duplicate pair {rec['levi_class']}/{rec['label']}")
        seen.add((orbit, rec["label"]))
        base = poset.orbits[orbit][0]
        poly = None
        if "degree_poly" in rec:
            dp = rec["degree_poly"]
            poly = DegreePoly(Fraction(dp["scalar_num"], dp["scalar_den"]), dp["x_power"],
                              tuple((m, k) for m, k in dp["cyclo"]))
        computed = None
        if poly is not None:
            computed = levi_defect(poset, base) - poly.valuation(zeta.q, zeta.ell)
        shift = rec.get("defect_shift", computed)
        if shift is None:
            raise DatasetError(f"pair {rec['levi_class']}/{rec['label']}: need defect_shift or degree_poly")
        if computed is not None and computed != shift:
            raise DatasetError(f"defect mismatch for {rec['levi_class']}/{rec['label']}: "
                               f"declared {shift}, degree polynomial gives {computed}")
        gens = ()
        action = rec.get("action", "trivial")
        if action != "trivial":
            gl = []
            for g in action["generators"]:
                m = tuple(tuple(r) for r in g["matrix"])
                if m not in coset.index:
                    raise DatasetError("action generator is not an element of W")
                gl.append((coset.index[m], g["image"]))
            gens = tuple(gl)
        records.append(CuspidalRecord(orbit, rec["label"], shift, poly, gens))
    return CuspidalDataset(data["ambient_id"], data.get("uch_count"), tuple(records))
