"""Named example algebras.

Finite presets are tensor products built by :mod:`.tensor` and shipped as
JSON documents under ``data/``; symbolic presets are Schouten algebras with
a Poisson differential and are built on demand.
"""

from __future__ import annotations

import json
from importlib import resources

from ..dgla import load_dgla
from . import schouten, tensor

FINITE = {
    "heisenberg_xi": "Heisenberg (p | q, c) with Lambda[xi], d xi = 1; degrees 0..2",
    "sl2_xi12": "sl2 with Lambda[xi1, xi2], d xi2 = xi1, modulo xi2^2 and xi1 xi2; degrees 0..2",
    "sl2_lie2": "sl2 with Lambda[xi, zeta], d zeta = 1; degrees 0..2 (the Lie 2-algebra case)",
    "sl2_xi_eta": "sl2 with Lambda[xi] and eta^2 = 0, |eta| = 2, d xi = 1; degrees 0..3",
    "aff_xi_eta2": "aff(1) with Lambda[xi] and eta^3 = 0; degrees 0..5",
    "sl2_classical": "sl2 with Lambda[xi], d xi = 1; degrees 0..1",
    "abelian_line": "one-dimensional abelian algebra in degree 1",
}

SYMBOLIC = {
    "poisson_symplectic": (schouten.symplectic_plane, "P = theta1 theta2 on Q^2"),
    "poisson_sl2": (schouten.lie_poisson_sl2, "linear Poisson structure on sl2^*"),
    "poisson_so3": (schouten.lie_poisson_so3, "P = x3 t1 t2 + x1 t2 t3 + x2 t3 t1 on Q^3"),
}

# the designated degree-{1, 2} preset for the Lie 2-algebra checks
LIE2_PRESET = "sl2_lie2"


class UnknownPreset(KeyError):
    def __str__(self):
        return f"unknown preset {self.args[0]!r}; available: {', '.join(names())}"


def names():
    return sorted(FINITE) + sorted(SYMBOLIC)


def describe(name: str) -> str:
    if name in FINITE:
        return FINITE[name]
    if name in SYMBOLIC:
        return SYMBOLIC[name][1]
    raise UnknownPreset(name)


def document_text(name: str) -> str:
    if name not in FINITE:
        raise UnknownPreset(name)
    return resources.files(__package__).joinpath("data", f"{name}.json").read_text()


def load_preset(name: str):
    if name in FINITE:
        return load_dgla(json.loads(document_text(name)))
    if name in SYMBOLIC:
        return SYMBOLIC[name][0]()
    raise UnknownPreset(name)


def build_finite(name: str):
    """Regenerate a finite preset from its tensor description."""
    if name not in FINITE:
        raise UnknownPreset(name)
    return tensor.make_tensor_dgla(tensor.FINITE_SPECS[name]())
