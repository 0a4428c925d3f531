"""Catalog files, result records, and fixture serialization.

All JSON is written with sorted keys and explicit separators so that
identical inputs produce byte-identical files.  Matrices are stored as
arrays of arrays of decimal integer strings.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .intmat import IntMatrix
from .abgrp import FgAbelianGroup
from .gammamod import GammaModule
from .rootdata import (
    ReductiveDatum,
    character_group,
    from_catalog,
    mu_dual,
    pi1,
    validate,
)
from .tres import SESData

SCHEMA_VERSION = 1


class CatalogError(ValueError):
    """Schema violation or failed self-test, with a field diagnostic."""


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def invariants_json(g: FgAbelianGroup) -> dict:
    rank, torsion = g.invariants()
    return {"rank": rank, "torsion": list(torsion)}


def module_invariants_json(m: GammaModule) -> dict:
    return invariants_json(m.group)


@dataclass(frozen=True)
class CatalogEntry:
    spec: str
    expected_character: dict
    expected_mu_dual: dict
    expected_pi1: dict
    provenance: str

    def datum(self) -> ReductiveDatum:
        return from_catalog(self.spec)


@dataclass(frozen=True)
class CatalogFile:
    schema_version: int
    entries: tuple[CatalogEntry, ...]

    def specs(self) -> list[str]:
        return [e.spec for e in self.entries]


def default_catalog_path() -> str:
    env = os.environ.get("REDINV_CATALOG")
    if env:
        return env
    return str(resources.files("redinv").joinpath("data/catalog.json"))


def _require(cond: bool, field: str, msg: str) -> None:
    if not cond:
        raise CatalogError(f"{field}: {msg}")


def _check_invariant_dict(obj, field: str) -> dict:
    _require(isinstance(obj, dict), field, "expected an object")
    _require(isinstance(obj.get("rank"), int) and obj["rank"] >= 0, field,
             "rank must be a nonnegative integer")
    tor = obj.get("torsion")
    _require(isinstance(tor, list) and all(isinstance(d, int) and d > 1 for d in tor),
             field, "torsion must be a list of integers > 1")
    for a, b in zip(tor, tor[1:]):
        _require(b % a == 0, field, "torsion must form a divisibility chain")
    return {"rank": obj["rank"], "torsion": list(tor)}


def load_catalog(path: Optional[str] = None, self_test: bool = True) -> CatalogFile:
    path = path or default_catalog_path()
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    _require(isinstance(raw, dict), "(root)", "expected an object")
    _require(raw.get("schemaVersion") == SCHEMA_VERSION, "schemaVersion",
             f"expected {SCHEMA_VERSION}")
    entries_raw = raw.get("entries")
    _require(isinstance(entries_raw, list) and entries_raw, "entries",
             "expected a nonempty list")
    entries = []
    for k, e in enumerate(entries_raw):
        field = f"entries[{k}]"
        _require(isinstance(e, dict), field, "expected an object")
        _require(isinstance(e.get("spec"), str), f"{field}.spec", "expected a string")
        exp = e.get("expected")
        _require(isinstance(exp, dict), f"{field}.expected", "expected an object")
        entry = CatalogEntry(
            spec=e["spec"],
            expected_character=_check_invariant_dict(
                exp.get("characterGroup"), f"{field}.expected.characterGroup"),
            expected_mu_dual=_check_invariant_dict(
                exp.get("muDual"), f"{field}.expected.muDual"),
            expected_pi1=_check_invariant_dict(
                exp.get("pi1"), f"{field}.expected.pi1"),
            provenance=str(e.get("provenance", "")),
        )
        entries.append(entry)
    catalog = CatalogFile(SCHEMA_VERSION, tuple(entries))
    if self_test:
        verify_catalog(catalog)
    return catalog


def verify_catalog(catalog: CatalogFile) -> None:
    for entry in catalog.entries:
        d = entry.datum()
        rep = validate(d)
        _require(rep.valid, entry.spec, f"datum invalid: {rep.failures()}")
        got = {
            "characterGroup": invariants_json(character_group(d).group),
            "muDual": invariants_json(mu_dual(d).group),
            "pi1": invariants_json(pi1(d).group),
        }
        want = {
            "characterGroup": entry.expected_character,
            "muDual": entry.expected_mu_dual,
            "pi1": entry.expected_pi1,
        }
        _require(got == want, entry.spec,
                 f"recomputed invariants {got} differ from stored {want}")


def catalog_to_json(catalog: CatalogFile) -> str:
    return _dump({
        "schemaVersion": catalog.schema_version,
        "entries": [
            {
                "spec": e.spec,
                "expected": {
                    "characterGroup": e.expected_character,
                    "muDual": e.expected_mu_dual,
                    "pi1": e.expected_pi1,
                },
                "provenance": e.provenance,
            }
            for e in catalog.entries
        ],
    })


def save_catalog(catalog: CatalogFile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(catalog_to_json(catalog))


def build_catalog(specs: list[str], provenance: str) -> CatalogFile:
    """Compute expected invariants for the given group specs."""
    entries = []
    for spec in specs:
        d = from_catalog(spec)
        entries.append(CatalogEntry(
            spec=spec,
            expected_character=invariants_json(character_group(d).group),
            expected_mu_dual=invariants_json(mu_dual(d).group),
            expected_pi1=invariants_json(pi1(d).group),
            provenance=provenance,
        ))
    return CatalogFile(SCHEMA_VERSION, tuple(entries))


@dataclass(frozen=True)
class ResultRecord:
    command: str
    input_digest: str
    outputs: dict
    verdicts: dict

    def to_json(self) -> str:
        return _dump({
            "command": self.command,
            "inputDigest": self.input_digest,
            "outputs": self.outputs,
            "verdicts": self.verdicts,
        })

    @staticmethod
    def from_json(text: str) -> "ResultRecord":
        obj = json.loads(text)
        return ResultRecord(
            command=obj["command"],
            input_digest=obj["inputDigest"],
            outputs=obj["outputs"],
            verdicts=obj["verdicts"],
        )


def input_digest(payload) -> str:
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()


def write_result(record: ResultRecord, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(record.to_json())


def read_result(path: str) -> ResultRecord:
    with open(path, "r", encoding="utf-8") as fh:
        return ResultRecord.from_json(fh.read())


# --- SES fixture serialization ---------------------------------------------

def ses_to_json(s: SESData) -> str:
    return _dump({
        "g1": s.g1.name,
        "g2": s.g2.name,
        "g3": s.g3.name,
        "x3ToX2": s.x3_to_x2.to_json(),
        "x2ToX1": s.x2_to_x1.to_json(),
        "part1": list(s.part1),
        "part3": list(s.part3),
    })


def ses_from_json(text: str) -> SESData:
    obj = json.loads(text)
    g1 = from_catalog(obj["g1"])
    g2 = from_catalog(obj["g2"])
    g3 = from_catalog(obj["g3"])
    return SESData(
        g1, g2, g3,
        IntMatrix.from_json(obj["x3ToX2"], cols=g2.datum.rank),
        IntMatrix.from_json(obj["x2ToX1"], cols=g1.datum.rank),
        tuple(obj["part1"]),
        tuple(obj["part3"]),
    )


def load_ses(path: str) -> SESData:
    with open(path, "r", encoding="utf-8") as fh:
        return ses_from_json(fh.read())


def save_ses(s: SESData, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(ses_to_json(s))
