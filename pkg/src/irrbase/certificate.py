"""Chain certificates: serialized strictly descending chains of subgroups.

A certificate presents each subgroup in the chain as the intersection of
conjugates of a distinguished subgroup H of the ambient symmetric or
alternating group, with the conjugating permutations as explicit witnesses.
Level 0 is H itself (witness set {identity}); claimed orders must strictly
decrease and end at 1.  An independent verifier can recompute every level
from H and the witnesses alone.

JSON schema (all points and cycle strings 1-based, orders decimal strings):

    {
      "degree": int,
      "ambient": "S" | "A",
      "subgroup": {"family": "agl"|"wreath"|"natural"|"explicit",
                   "params": {...},
                   "generators": [cycle-string, ...]},
      "levels": [{"conjugators": [cycle-string, ...], "order": "..."}, ...],
      "claimed_length": int
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .perm import parse_cycles, print_cycles


class CertificateFormatError(ValueError):
    """Raised when certificate JSON is malformed or violates the schema."""


@dataclass
class CertLevel:
    conjugators: list  # list[Permutation]
    order: int


@dataclass
class ChainCertificate:
    degree: int
    ambient: str  # "S" or "A"
    family: str  # "agl" | "wreath" | "natural" | "explicit"
    params: dict
    generators: list  # generators of H, list[Permutation]
    levels: list  # list[CertLevel]
    claimed_length: int

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "ambient": self.ambient,
            "subgroup": {
                "family": self.family,
                "params": dict(sorted(self.params.items())),
                "generators": [print_cycles(g) for g in self.generators],
            },
            "levels": [
                {
                    "conjugators": [print_cycles(x) for x in lvl.conjugators],
                    "order": str(lvl.order),
                }
                for lvl in self.levels
            ],
            "claimed_length": self.claimed_length,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "ChainCertificate":
        try:
            degree = data["degree"]
            ambient = data["ambient"]
            sub = data["subgroup"]
            family = sub["family"]
            params = sub["params"]
            gen_strs = sub["generators"]
            level_data = data["levels"]
            claimed = data["claimed_length"]
        except (KeyError, TypeError) as e:
            raise CertificateFormatError(f"missing or malformed field: {e}") from None
        if not isinstance(degree, int) or degree < 1:
            raise CertificateFormatError(f"bad degree {degree!r}")
        if ambient not in ("S", "A"):
            raise CertificateFormatError(f"bad ambient {ambient!r}, expected 'S' or 'A'")
        if family not in ("agl", "wreath", "natural", "explicit"):
            raise CertificateFormatError(f"unknown subgroup family {family!r}")
        if not isinstance(claimed, int):
            raise CertificateFormatError("claimed_length must be an integer")
        generators = [parse_cycles(s, degree) for s in gen_strs]
        levels = []
        for i, lv in enumerate(level_data):
            try:
                conj_strs = lv["conjugators"]
                order = int(lv["order"])
            except (KeyError, TypeError, ValueError) as e:
                raise CertificateFormatError(f"level {i}: {e}") from None
            levels.append(
                CertLevel([parse_cycles(s, degree) for s in conj_strs], order)
            )
        return cls(
            degree=degree,
            ambient=ambient,
            family=family,
            params=params,
            generators=generators,
            levels=levels,
            claimed_length=claimed,
        )

    @classmethod
    def from_json(cls, text: str) -> "ChainCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise CertificateFormatError(f"invalid JSON: {e}") from None
        return cls.from_dict(data)
