"""JSON document schemas used by the command-line front end.

Five schemas: measure, jacobi, matrix, moments, report.  Complex numbers
are stored as {"re": ..., "im": ...} pairs of decimal floats whose text
form round-trips double precision exactly; serialization is canonical
(sorted keys, fixed separators) so identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import ValidationError
from .jacobi import JacobiParams
from .measures import BiradialMeasure, PlanarAtomicMeasure

__all__ = [
    "complex_to_obj",
    "obj_to_complex",
    "dumps",
    "loads",
    "measure_to_doc",
    "doc_to_planar",
    "jacobi_to_doc",
    "doc_to_jacobi",
    "matrix_to_doc",
    "doc_to_matrix",
    "moments_to_doc",
    "doc_to_moments",
    "report_doc",
]

SCHEMAS = ("measure", "jacobi", "matrix", "moments", "report")


def complex_to_obj(z: complex) -> dict[str, float]:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def obj_to_complex(obj: Any) -> complex:
    if isinstance(obj, dict):
        try:
            return complex(float(obj["re"]), float(obj.get("im", 0.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad complex value {obj!r}") from exc
    if isinstance(obj, (int, float)):
        return complex(obj)
    raise ValidationError(f"bad complex value {obj!r}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "schema" not in doc:
        raise ValidationError("document must be a JSON object with a 'schema' field")
    if doc["schema"] not in SCHEMAS:
        raise ValidationError(f"unknown schema {doc['schema']!r}")
    return doc


def _expect(doc: dict, schema: str) -> dict:
    if doc.get("schema") != schema:
        raise ValidationError(f"expected a {schema!r} document, got {doc.get('schema')!r}")
    return doc


def measure_to_doc(rho) -> dict:
    doc: dict[str, Any] = {
        "schema": "measure",
        "atoms": [
            {"point": complex_to_obj(p), "weight": float(w)}
            for p, w in zip(rho.points, rho.weights)
        ],
    }
    if isinstance(rho, BiradialMeasure):
        doc["pair_count"] = rho.pair_count
    return doc


def doc_to_planar(doc: dict) -> PlanarAtomicMeasure:
    _expect(doc, "measure")
    atoms = doc.get("atoms")
    if not isinstance(atoms, list) or not atoms:
        raise ValidationError("measure document needs a nonempty 'atoms' list")
    points = []
    weights = []
    for a in atoms:
        if not isinstance(a, dict) or "point" not in a or "weight" not in a:
            raise ValidationError(f"bad atom {a!r}")
        points.append(obj_to_complex(a["point"]))
        weights.append(float(a["weight"]))
    return PlanarAtomicMeasure(points, weights)


def jacobi_to_doc(params: JacobiParams) -> dict:
    return {
        "schema": "jacobi",
        "alphas": [complex_to_obj(a) for a in params.alphas],
        "betas": [float(b) for b in params.betas],
    }


def doc_to_jacobi(doc: dict) -> JacobiParams:
    _expect(doc, "jacobi")
    alphas = doc.get("alphas")
    betas = doc.get("betas", [])
    if not isinstance(alphas, list) or not alphas or not isinstance(betas, list):
        raise ValidationError("jacobi document needs 'alphas' and 'betas' lists")
    return JacobiParams([obj_to_complex(a) for a in alphas], [float(b) for b in betas])


def matrix_to_doc(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=complex)
    return {
        "schema": "matrix",
        "rows": [[complex_to_obj(z) for z in row] for row in M],
    }


def doc_to_matrix(doc: dict) -> np.ndarray:
    _expect(doc, "matrix")
    rows = doc.get("rows")
    if not isinstance(rows, list) or not rows:
        raise ValidationError("matrix document needs a nonempty 'rows' list")
    try:
        M = np.array([[obj_to_complex(z) for z in row] for row in rows], dtype=complex)
    except ValidationError:
        raise
    except Exception as exc:
        raise ValidationError(f"bad matrix rows: {exc}") from exc
    if M.ndim != 2:
        raise ValidationError("matrix rows must have equal lengths")
    return M


def moments_to_doc(m) -> dict:
    values = m.m if hasattr(m, "m") else m
    return {"schema": "moments", "moments": [complex_to_obj(z) for z in values]}


def doc_to_moments(doc: dict) -> np.ndarray:
    _expect(doc, "moments")
    vals = doc.get("moments")
    if not isinstance(vals, list) or not vals:
        raise ValidationError("moments document needs a nonempty 'moments' list")
    return np.array([obj_to_complex(z) for z in vals], dtype=complex)


def report_doc(command: str, ok: bool, **payload: Any) -> dict:
    doc: dict[str, Any] = {"schema": "report", "command": command, "ok": bool(ok)}
    doc.update(payload)
    return doc
