"""Committed per-field fixture files for the Picard backend.

Fixtures are keyed by the component defining polynomial (and q, which fixes
the conjugation), hold integer data only, and are schema-versioned. The
fixture backend reconstructs ComponentData without any search."""

from __future__ import annotations

import json
import os

from .etale import AlgElem, EtaleAlgebra
from .intpoly import IntPoly
from .lattices import Lattice, Order
from .picard import FIXTURE_SCHEMA_VERSION, ComponentData

DEFAULT_DIR = os.path.join(os.path.dirname(os.path.dirname(
    os.path.dirname(os.path.abspath(__file__)))), "fixtures")


def fixture_key(poly: IntPoly, q: int) -> str:
    coeffs = "_".join(str(c).replace("-", "m") for c in poly.coeffs)
    return f"field_q{q}_{coeffs}.json"


def _elem_json(e: AlgElem):
    return {"num": list(e.num), "den": e.den}


def _elem_from_json(alg: EtaleAlgebra, d) -> AlgElem:
    return AlgElem(alg, d["num"], d["den"]).normalized()


def _lat_json(L: Lattice):
    return {"den": L.den, "basis": [list(r) for r in L.basis]}


def _lat_from_json(alg: EtaleAlgebra, d) -> Lattice:
    return Lattice(alg, d["basis"], d["den"])


def save_component_fixture(cd: ComponentData, q: int, path: str | None = None) -> str:
    path = path or DEFAULT_DIR
    os.makedirs(path, exist_ok=True)
    data = {
        "schema_version": FIXTURE_SCHEMA_VERSION,
        "q": q,
        "poly": list(cd.poly.coeffs),
        "disc": cd.disc,
        "maximal_order": _lat_json(cd.maximal.lattice),
        "torsion_order": cd.torsion_order,
        "torsion_gen": _elem_json(cd.torsion_gen),
        "fundamental_units": [_elem_json(u) for u in cd.fundamental_units],
        "class_invariants": cd.cl_invariants,
        "class_gens": [_lat_json(I) for I in cd.cl_gens],
        "class_gen_orders": cd.cl_gen_orders,
        "class_rel_gens": [_elem_json(a) for a in cd.cl_rel_gens],
    }
    fname = os.path.join(path, fixture_key(cd.poly, q))
    with open(fname, "w") as fh:
        json.dump(data, fh, sort_keys=True, indent=1)
        fh.write("\n")
    return fname


class FixtureMissing(RuntimeError):
    pass


def load_component_fixture(poly: IntPoly, q: int,
                           path: str | None = None) -> ComponentData:
    path = path or DEFAULT_DIR
    fname = os.path.join(path, fixture_key(poly, q))
    if not os.path.exists(fname):
        raise FixtureMissing(f"no fixture for {poly!r} (q={q}) at {fname}")
    with open(fname) as fh:
        data = json.load(fh)
    if data.get("schema_version") != FIXTURE_SCHEMA_VERSION:
        raise RuntimeError(f"fixture schema mismatch in {fname}")
    assert data["poly"] == list(poly.coeffs)
    alg = EtaleAlgebra(poly)
    O = Order(_lat_from_json(alg, data["maximal_order"]))
    cd = ComponentData(
        poly=poly, alg=alg, maximal=O, disc=data["disc"],
        torsion_order=data["torsion_order"],
        torsion_gen=_elem_from_json(alg, data["torsion_gen"]),
        fundamental_units=[_elem_from_json(alg, u)
                           for u in data["fundamental_units"]],
        cl_invariants=list(data["class_invariants"]),
        cl_gens=[_lat_from_json(alg, d) for d in data["class_gens"]],
        cl_gen_orders=list(data["class_gen_orders"]),
        cl_rel_gens=[_elem_from_json(alg, d) for d in data["class_rel_gens"]],
        backend="fixture",
    )
    # cheap re-validation: units really are units, relation generators match
    for u in [cd.torsion_gen] + cd.fundamental_units:
        assert abs(u.norm()) == 1, "fixture unit is not a unit"
    for I, d, a in zip(cd.cl_gens, cd.cl_gen_orders, cd.cl_rel_gens):
        P = I
        for _ in range(d - 1):
            P = P.mul(I)
        assert P == O.lattice.mul_elem(a), "fixture class relation mismatch"
    return cd
