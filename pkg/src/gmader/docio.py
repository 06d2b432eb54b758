"""JSON document format for instances and reports.

One UTF-8 JSON file carries a whole instance: the coefficient field, the
two algebras, the two modules, the two pairing tensors, and optionally an
embedded map sequence.  Scalars are strings ("3/4" over Q, decimal
integers over a prime field) so that round-trips are exact.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional

from .linalg import Field, Matrix, field_from_spec
from .algebra import FinDimAlgebra
from .gma import Bimodule, Gma, MoritaContext, build_gma
from .mapseq import MapSequence

INSTANCE_SCHEMA_VERSION = "gma-instance/1"
REPORT_SCHEMA_VERSION = "gma-report/1"


class DocumentError(ValueError):
    pass


def _vec_json(field: Field, v) -> list:
    return [field.format(x) for x in v]


def _vec_parse(field: Field, data, n: int, what: str) -> tuple:
    if not isinstance(data, list) or len(data) != n:
        raise DocumentError(f"{what}: expected a list of {n} scalars")
    try:
        return tuple(field.parse(str(x)) for x in data)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{what}: bad scalar ({exc})")


def matrix_json(field: Field, mat: Matrix) -> list:
    return [_vec_json(field, row) for row in mat.data]


def matrix_parse(field: Field, data, rows: int, cols: int, what: str) -> Matrix:
    if not isinstance(data, list) or len(data) != rows:
        raise DocumentError(f"{what}: expected {rows} rows")
    return Matrix(field, [_vec_parse(field, row, cols, what) for row in data],
                  cols=cols)


def _algebra_json(field: Field, alg: FinDimAlgebra) -> dict:
    return {
        "labels": list(alg.labels),
        "unit": _vec_json(field, alg.unit),
        "tensor": [[_vec_json(field, cell) for cell in row] for row in alg.tensor],
    }


def _algebra_parse(field: Field, data, what: str) -> FinDimAlgebra:
    labels = data.get("labels")
    if not isinstance(labels, list) or not labels:
        raise DocumentError(f"{what}: missing labels")
    dim = len(labels)
    unit = _vec_parse(field, data.get("unit"), dim, f"{what}.unit")
    tensor = data.get("tensor")
    if not isinstance(tensor, list) or len(tensor) != dim:
        raise DocumentError(f"{what}: tensor must have {dim} rows")
    parsed = []
    for i, row in enumerate(tensor):
        if not isinstance(row, list) or len(row) != dim:
            raise DocumentError(f"{what}: tensor row {i} must have {dim} cells")
        parsed.append([_vec_parse(field, cell, dim, f"{what}.tensor[{i}]")
                       for cell in row])
    return FinDimAlgebra(field, labels, unit, parsed)


def _bimodule_json(field: Field, mod: Bimodule) -> dict:
    return {
        "labels": list(mod.labels),
        "left": [[_vec_json(field, cell) for cell in row] for row in mod.left],
        "right": [[_vec_json(field, cell) for cell in row] for row in mod.right],
    }


def _bimodule_parse(field: Field, data, left_dim: int, right_dim: int,
                    what: str) -> Bimodule:
    labels = data.get("labels", [])
    if not isinstance(labels, list):
        raise DocumentError(f"{what}: labels must be a list")
    dim = len(labels)
    left = data.get("left")
    right = data.get("right")
    if not isinstance(left, list) or len(left) != left_dim:
        raise DocumentError(f"{what}: left action needs {left_dim} rows")
    if not isinstance(right, list) or len(right) != dim:
        raise DocumentError(f"{what}: right action needs {dim} rows")
    left_p = [[_vec_parse(field, cell, dim, f"{what}.left")
               for cell in row] for row in left]
    right_p = [[_vec_parse(field, cell, dim, f"{what}.right")
                for cell in row] for row in right]
    for row in left:
        if len(row) != dim:
            raise DocumentError(f"{what}: left action rows need {dim} cells")
    for row in right:
        if len(row) != right_dim:
            raise DocumentError(f"{what}: right action rows need {right_dim} cells")
    return Bimodule(field, labels, left_p, right_p)


def context_to_document(ctx: MoritaContext, sequence: Optional[MapSequence] = None,
                        sequence_kind: Optional[str] = None,
                        fixture: Optional[str] = None,
                        meta: Optional[dict] = None) -> dict:
    field = ctx.field
    doc = {
        "schema_version": INSTANCE_SCHEMA_VERSION,
        "field": field.spec(),
        "algebra_a": _algebra_json(field, ctx.A),
        "algebra_b": _algebra_json(field, ctx.B),
        "module_m": _bimodule_json(field, ctx.M),
        "module_n": _bimodule_json(field, ctx.N),
        "pairing_phi": [[_vec_json(field, cell) for cell in row]
                        for row in ctx.phi],
        "pairing_psi": [[_vec_json(field, cell) for cell in row]
                        for row in ctx.psi],
    }
    if sequence is not None:
        doc["sequence"] = {
            "order": sequence.order,
            "kind": sequence_kind or ("tau" if sequence.is_tau else "raw"),
            "maps": [matrix_json(field, m) for m in sequence.mats],
        }
    if fixture:
        doc["fixture"] = fixture
    if meta:
        doc["meta"] = meta
    return doc


def gma_to_document(gma: Gma, **kwargs) -> dict:
    return context_to_document(gma.ctx, **kwargs)


def document_to_context(doc: dict):
    if doc.get("schema_version") != INSTANCE_SCHEMA_VERSION:
        raise DocumentError(
            f"unsupported schema_version {doc.get('schema_version')!r}")
    spec = doc.get("field")
    if not isinstance(spec, dict):
        raise DocumentError("missing field spec")
    try:
        field = field_from_spec(spec)
    except ValueError as exc:
        raise DocumentError(str(exc))
    if field.char == 2:
        raise DocumentError("characteristic 2 is not supported")
    alg_a = _algebra_parse(field, doc.get("algebra_a", {}), "algebra_a")
    alg_b = _algebra_parse(field, doc.get("algebra_b", {}), "algebra_b")
    mod_m = _bimodule_parse(field, doc.get("module_m", {}), alg_a.dim,
                            alg_b.dim, "module_m")
    mod_n = _bimodule_parse(field, doc.get("module_n", {}), alg_b.dim,
                            alg_a.dim, "module_n")
    phi_data = doc.get("pairing_phi")
    psi_data = doc.get("pairing_psi")
    if not isinstance(phi_data, list) or len(phi_data) != mod_m.dim:
        raise DocumentError("pairing_phi has the wrong shape")
    if not isinstance(psi_data, list) or len(psi_data) != mod_n.dim:
        raise DocumentError("pairing_psi has the wrong shape")
    phi = []
    for i, row in enumerate(phi_data):
        if not isinstance(row, list) or len(row) != mod_n.dim:
            raise DocumentError(f"pairing_phi row {i} has the wrong length")
        phi.append([_vec_parse(field, cell, alg_a.dim, "pairing_phi")
                    for cell in row])
    psi = []
    for j, row in enumerate(psi_data):
        if not isinstance(row, list) or len(row) != mod_m.dim:
            raise DocumentError(f"pairing_psi row {j} has the wrong length")
        psi.append([_vec_parse(field, cell, alg_b.dim, "pairing_psi")
                    for cell in row])
    return MoritaContext(alg_a, alg_b, mod_m, mod_n, phi, psi)


def document_to_gma(doc: dict, check: bool = True) -> Gma:
    return build_gma(document_to_context(doc), check=check)


def document_sequence(doc: dict, gma: Gma) -> Optional[MapSequence]:
    data = doc.get("sequence")
    if data is None:
        return None
    order = data.get("order")
    maps = data.get("maps")
    kind = data.get("kind", "raw")
    if not isinstance(order, int) or order < 0:
        raise DocumentError("sequence.order must be a non-negative integer")
    if not isinstance(maps, list) or len(maps) != order + 1:
        raise DocumentError("sequence.maps must list orders 0..K")
    field = gma.field
    mats = [matrix_parse(field, m, gma.dim, gma.dim, f"sequence.maps[{k}]")
            for k, m in enumerate(maps)]
    try:
        return MapSequence(gma, mats, is_tau=(kind == "tau"))
    except ValueError as exc:
        raise DocumentError(f"bad embedded sequence: {exc}")


def sequence_kind(doc: dict) -> Optional[str]:
    data = doc.get("sequence")
    return None if data is None else data.get("kind", "raw")


def canonical_bytes(doc: dict) -> bytes:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def instance_digest(doc: dict) -> str:
    return "sha256:" + hashlib.sha256(canonical_bytes(doc)).hexdigest()


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}")


def save_document(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")
