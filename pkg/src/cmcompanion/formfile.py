"""JSON form files (schema_version 1).

Coefficients are stored as ``[n, value]`` where value is a decimal string
for rational integers, a pair of decimal strings ``[x, y]`` for x + y*omega,
or ``{"residue": [[...], ...]}`` with one coefficient vector per Galois ring
when the expansion lives in a residue system.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classgroup import ClassGroup, class_group
from .heckechar import Nebentypus, finite_type_from_values, hecke_char_new
from .qexpansion import QExpansion
from .quadfield import Ideal, QuadField, QuadInt
from .residue import GRElement, ResidueValue, residue_system_from_description

SCHEMA_VERSION = 1


class FormFileError(ValueError):
    pass


def _ideal_json(I):
    return [I.a, I.b, I.s]


def _ideal(K, v):
    a, b, s = v
    return Ideal(K, a, b, s)


@dataclass(frozen=True)
class FormFile:
    disc: int
    weight: int
    level: int
    bound: int
    coeffs: tuple  # ((n, encoded value), ...)
    nebentypus: dict
    modulus_norm: int = 1
    finite_type: dict | None = None
    infinity_exponent: int | None = None
    anchors: tuple = ()
    residue: dict | None = None
    schema_version: int = SCHEMA_VERSION

    def to_json(self):
        out = {
            "schema_version": self.schema_version,
            "disc": self.disc,
            "weight": self.weight,
            "level": self.level,
            "modulus_norm": self.modulus_norm,
            "finite_type": self.finite_type,
            "infinity_exponent": self.infinity_exponent,
            "anchors": list(self.anchors),
            "nebentypus": self.nebentypus,
            "residue": self.residue,
            "bound": self.bound,
            "coeffs": [[n, _coeff_json(v)] for n, v in self.coeffs],
        }
        return out

    def dumps(self):
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data):
        if data.get("schema_version") != SCHEMA_VERSION:
            raise FormFileError(f"unsupported schema_version {data.get('schema_version')!r}")
        try:
            coeffs = tuple((int(n), _freeze(v)) for n, v in data["coeffs"])
            ff = cls(
                disc=int(data["disc"]), weight=int(data["weight"]), level=int(data["level"]),
                bound=int(data["bound"]), coeffs=coeffs, nebentypus=data["nebentypus"],
                modulus_norm=int(data.get("modulus_norm", 1)),
                finite_type=data.get("finite_type"),
                infinity_exponent=data.get("infinity_exponent"),
                anchors=tuple(data.get("anchors") or ()),
                residue=data.get("residue"),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise FormFileError(f"malformed form file: {e}") from e
        if [n for n, _ in coeffs] != list(range(1, ff.bound + 1)):
            raise FormFileError("coefficients must be listed for n = 1 .. bound")
        return ff

    @classmethod
    def loads(cls, text):
        return cls.from_json(json.loads(text))

    # -- reconstruction --

    @property
    def K(self):
        return QuadField.from_disc(self.disc)

    def residue_system(self):
        if self.residue is None:
            return None
        return residue_system_from_description(self.K, self.residue)

    def expansion(self, character=None):
        system = self.residue_system()
        K = self.K
        coeffs = tuple(_decode(K, system, v) for _, v in self.coeffs)
        neb = Nebentypus(self.nebentypus["modulus"], self.nebentypus["order"],
                         tuple((m, k) for m, k in self.nebentypus["values"]))
        return QExpansion(self.weight, self.level, self.disc, neb, coeffs, character, system)

    def has_character(self):
        return self.finite_type is not None and self.infinity_exponent is not None

    def character(self):
        if not self.has_character():
            raise FormFileError("form file carries no character metadata")
        K = self.K
        fd = self.finite_type
        ft = finite_type_from_values(
            K, _ideal(K, fd["modulus"]),
            [(K(int(x), int(y)), k) for (x, y), k in zip(fd["generators"], fd["images"])],
            fd["order"])
        if self.anchors:
            reps = [_ideal(K, a["rep"]) for a in self.anchors]
            cg = ClassGroup.from_reps(K, ft.modulus, reps, [a["order"] for a in self.anchors])
        else:
            cg = class_group(K, ft.modulus)
            if cg.reps:
                raise FormFileError("class number > 1 but no anchors recorded")
        return hecke_char_new(K, ft, self.infinity_exponent, cg, [a["d"] for a in self.anchors])


def _freeze(v):
    if isinstance(v, list):
        return tuple(v)
    if isinstance(v, dict):
        return ("residue", tuple(tuple(int(c) for c in part) for part in v["residue"]))
    return v


def _encode(a):
    if isinstance(a, ResidueValue):
        return ("residue", tuple(tuple(x.coeffs) for x in a.parts))
    if isinstance(a, QuadInt):
        return (str(a.x), str(a.y))
    if isinstance(a, int):
        return str(a)
    raise TypeError(f"cannot serialize coefficient {a!r}")


def _decode(K, system, v):
    if isinstance(v, str):
        return int(v)
    if v[0] == "residue":
        if system is None:
            raise FormFileError("residue coefficient without a residue description")
        parts = tuple(GRElement(c.ring, tuple(coords)) for c, coords in zip(system.components, v[1]))
        return ResidueValue(system, parts)
    x, y = v
    return K(int(x), int(y))


def _coeff_json(v):
    if isinstance(v, tuple) and v and v[0] == "residue":
        return {"residue": [list(p) for p in v[1]]}
    if isinstance(v, tuple):
        return list(v)
    return v


def from_expansion(F, character=None):
    """FormFile for F; character metadata is taken from ``character`` or F.character."""
    psi = character if character is not None else F.character
    neb = F.nebentypus
    ft = anchors = u = None
    mnorm = 1
    if psi is not None:
        f = psi.finite_type
        ft = {"modulus": _ideal_json(f.modulus), "order": f.order,
              "generators": [[g.x, g.y] for g in f.generators], "images": list(f.images)}
        anchors = tuple({"rep": _ideal_json(a.rep), "order": a.order, "gen": [a.gen.x, a.gen.y],
                         "radicand": {"chi_exp": a.chi_exp, "chi_order": a.chi_order, "u": a.u},
                         "d": a.d} for a in psi.anchors)
        u = psi.u
        mnorm = psi.modulus.norm()
    return FormFile(
        disc=F.disc, weight=F.weight, level=F.level, bound=F.bound,
        coeffs=tuple((n, _encode(a)) for n, a in enumerate(F.coeffs, 1)),
        nebentypus={"modulus": neb.modulus, "order": neb.order,
                    "conductor": neb.conductor(), "values": [list(v) for v in neb.values]},
        modulus_norm=mnorm, finite_type=ft, infinity_exponent=u, anchors=anchors or (),
        residue=F.ring.describe() if F.ring is not None else None,
    )


def write_form(path, F, character=None):
    ff = from_expansion(F, character)
    with open(path, "w") as fh:
        fh.write(ff.dumps())
    return ff


def read_form(path):
    with open(path) as fh:
        try:
            return FormFile.loads(fh.read())
        except json.JSONDecodeError as e:
            raise FormFileError(f"{path}: not valid JSON ({e})") from e
