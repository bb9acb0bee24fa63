"""Existence tests for standard and irreducible SO(3) structures.

For a general oriented 5-manifold the irreducible structure exists iff the
tangent bundle splits off a trivial 2-plane bundle and p1 is divisible by 5.
For products ``S x S^1`` with ``S`` a closed oriented 4-manifold both
conditions reduce to the Euler characteristic and signature of ``S``:

* the splitting is obstructed only by ``<w4(TS), S> = chi(S) mod 2``;
* ``<p1, S> = 3 sigma(S)`` by the Hirzebruch signature theorem.

Only the free part of H^4 is seen by these pairings; torsion is ignored.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import LookupFailure

CATALOG_ENV_VAR = "SO3FIVE_CATALOG"


@dataclass(frozen=True)
class SurfaceInvariants:
    name: str
    euler: int
    signature: int
    provenance: str = ""

    def reversed(self) -> SurfaceInvariants:
        """Same manifold with the opposite orientation."""
        name = self.name[1:] if self.name.startswith("-") else "-" + self.name
        return SurfaceInvariants(name, self.euler, -self.signature, self.provenance)


@dataclass(frozen=True)
class BundleData:
    splits_off_trivial_2plane: bool
    p1_pairing: int


@dataclass(frozen=True)
class Reason:
    criterion: str
    value: int
    passed: bool

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "value": self.value, "pass": self.passed}


@dataclass(frozen=True)
class StructureVerdict:
    surface: SurfaceInvariants
    standard_exists: bool
    irreducible_exists: bool
    reasons: tuple[Reason, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "surface": self.surface.name,
            "euler": self.surface.euler,
            "signature": self.surface.signature,
            "standard_exists": self.standard_exists,
            "irreducible_exists": self.irreducible_exists,
            "reasons": [r.to_dict() for r in self.reasons],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def standard_exists(s: SurfaceInvariants) -> tuple[bool, list[Reason]]:
    """Standard structure on ``S x S^1``: a 2-frame exists iff chi(S) is even."""
    w4 = s.euler % 2
    ok = w4 == 0
    return ok, [Reason("w4 pairing <w4(TS),S> = chi mod 2", w4, ok)]


def p1_pairing(s: SurfaceInvariants) -> int:
    return 3 * s.signature


def irreducible_exists(s: SurfaceInvariants) -> StructureVerdict:
    std, reasons = standard_exists(s)
    p1 = p1_pairing(s)
    residue = p1 % 5
    # 3 is a unit mod 5, so divisibility of p1 and of sigma agree
    assert (residue == 0) == (s.signature % 5 == 0)
    reasons = reasons + [
        Reason("p1 pairing <p1,S> = 3*sigma", p1, True),
        Reason("p1 pairing mod 5", residue, residue == 0),
    ]
    irr = std and residue == 0
    return StructureVerdict(s, std, irr, tuple(reasons))


def theorem_criterion(b: BundleData) -> bool:
    """Irreducible structure exists iff TM splits off a trivial 2-plane and 5 | p1."""
    return b.splits_off_trivial_2plane and b.p1_pairing % 5 == 0


def product_bundle_data(s: SurfaceInvariants) -> BundleData:
    """Bundle data of ``S x S^1`` as seen on the 4-cycle ``S``."""
    return BundleData(s.euler % 2 == 0, p1_pairing(s))


def connected_sum(a: SurfaceInvariants, b: SurfaceInvariants) -> SurfaceInvariants:
    return SurfaceInvariants(
        f"{a.name}#{b.name}",
        a.euler + b.euler - 2,
        a.signature + b.signature,
        "connected sum: chi(A)+chi(B)-2, sigma(A)+sigma(B)",
    )


# catalog --------------------------------------------------------------------


def _default_catalog_text() -> str:
    return resources.files("so3five").joinpath("data/catalog.jsonl").read_text(encoding="utf-8")


def parse_catalog(text: str) -> list[SurfaceInvariants]:
    out = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rec = json.loads(line)
        for key in ("name", "euler", "signature", "provenance"):
            if key not in rec:
                raise ValueError(f"catalog line {lineno}: missing field {key!r}")
        if not isinstance(rec["euler"], int) or not isinstance(rec["signature"], int):
            raise ValueError(f"catalog line {lineno}: euler and signature must be integers")
        betti = rec.get("betti")
        if betti is not None:
            alt = sum((-1) ** i * b for i, b in enumerate(betti))
            if alt != rec["euler"]:
                raise ValueError(
                    f"catalog line {lineno}: Betti numbers give chi = {alt}, entry says {rec['euler']}"
                )
        if rec["name"] in seen:
            raise ValueError(f"catalog line {lineno}: duplicate name {rec['name']!r}")
        seen.add(rec["name"])
        out.append(SurfaceInvariants(rec["name"], rec["euler"], rec["signature"], rec["provenance"]))
    return out


def catalog(path: str | os.PathLike | None = None) -> list[SurfaceInvariants]:
    """Load the surface catalog: explicit path, then $SO3FIVE_CATALOG, then the bundled file."""
    if path is None:
        path = os.environ.get(CATALOG_ENV_VAR) or None
    if path is None:
        return parse_catalog(_default_catalog_text())
    return parse_catalog(Path(path).read_text(encoding="utf-8"))


def lookup(name: str, entries: list[SurfaceInvariants] | None = None) -> SurfaceInvariants:
    entries = catalog() if entries is None else entries
    for s in entries:
        if s.name == name:
            return s
    names = ", ".join(s.name for s in entries)
    raise LookupFailure(f"unknown surface {name!r}; catalog has: {names}")
