"""Bundled root data and characters.

Presets resolve by name to JSON documents shipped with the package:

* ``sl3`` -- the A2 Cartan matrix on its coroot lattice, sigma = 2,
  with the square character tau(alpha_i^v) = sigma^2;
* ``affine-sl2`` -- the affine matrix [[2,-2],[-2,2]] realized on the
  rank-3 lattice Z alpha^v + Z c + Z d (node 0 is the affine node,
  alpha_0 = delta - alpha, alpha_0^v = c - alpha^v), with
  tau(alpha^v) = sigma^2, tau(c) = tau(d) = 1;
* ``rank2-even`` -- a right-angled rank-2 datum, A = [[2,-2],[-4,2]]
  (infinite dihedral Weyl group, a_01 a_10 > 4), square character;
* ``case1`` ... ``case7`` -- characters on the coroot lattice of
  [[2,-2],[-2,2]] realizing the seven rank-2 stabilizer patterns
  (W_tau, W_(tau), R_tau); see the stabilizer-analysis module.

Character values are exact rationals; generic values are 5/7, 3/11,
7/5 (no positive coroot evaluates to 1, -1, sigma^2 or sigma^-2 under
them, which the preset audit test checks in-ball).
"""

import json
from importlib import resources

from .laurent import Character
from .rootdata import RootDatum

PRESET_NAMES = ("sl3", "affine-sl2", "rank2-even",
                "case1", "case2", "case3", "case4", "case5", "case6", "case7")


def load_preset(name):
    """The raw JSON document of a preset."""
    if name not in PRESET_NAMES:
        raise KeyError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    path = resources.files("kmhecke").joinpath("presets", f"{name}.json")
    return json.loads(path.read_text())


def datum_from_doc(doc):
    return RootDatum.from_json(doc)


def tau_from_doc(doc):
    """The bundled character of a preset document ({"tau": [...]})"""
    return Character(doc["tau"])


def load(name, tau_override=None, sigma_override=None):
    """(RootDatum, Character) for a preset, with optional overrides.

    tau_override: iterable of Fraction strings, one per Y-basis vector.
    sigma_override: a single Fraction string applied to every node.
    """
    doc = load_preset(name)
    if sigma_override is not None:
        doc["sigma"] = {k: str(sigma_override) for k in doc["sigma"]}
        doc.pop("sigmaPrime", None)
    datum = datum_from_doc(doc)
    tau = Character(tau_override) if tau_override is not None else tau_from_doc(doc)
    if len(tau.values) != datum.rank_y:
        raise ValueError(f"tau has {len(tau.values)} values, rankY = {datum.rank_y}")
    return datum, tau
