"""JSON codecs for the artifact's file formats.

Output is canonical: sorted keys, compact separators, zero entries omitted,
so byte-for-byte comparisons of round-tripped files are meaningful.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .classify import ClassificationReport
from .derivation import DerivedPoset, PairMark
from .errors import ValidationError
from .linalg import QQ, ExactMatrix, FieldSpec, GF
from .poset import Poset, build_poset
from .reps import MatrixRep
from .tits import DimensionVector


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- posets ------------------------------------------------------------------


def _covers(p: Poset) -> list[list[str]]:
    out = []
    for a, b in p.relation_pairs():
        if not any(p.lt(a, c) and p.lt(c, b) for c in p.elements):
            out.append([a, b])
    out.sort(key=lambda ab: (p.index(ab[0]), p.index(ab[1])))
    return out


def poset_to_json(p: Poset) -> dict:
    return {"elements": list(p.elements), "relations": _covers(p)}


def poset_from_json(obj) -> Poset:
    if not isinstance(obj, dict) or "elements" not in obj:
        raise ValidationError("poset JSON must be an object with an 'elements' list")
    elements = obj["elements"]
    relations = obj.get("relations", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ValidationError("poset elements must be a list of strings")
    if not isinstance(relations, list) or not all(
        isinstance(r, (list, tuple)) and len(r) == 2 for r in relations
    ):
        raise ValidationError("poset relations must be a list of [a, b] pairs")
    return build_poset(elements, [tuple(r) for r in relations])


# -- dimension vectors ----------------------------------------------------------


def dimension_to_json(d: DimensionVector) -> dict:
    out = {a: v for a, v in d.values.items()}
    if d.d0:
        out["0"] = d.d0
    return out


def dimension_from_json(obj, p: Poset) -> DimensionVector:
    if not isinstance(obj, dict):
        raise ValidationError("dimension JSON must be an object")
    d0 = 0
    values = {}
    for k, v in obj.items():
        if not isinstance(v, int) or v < 0:
            raise ValidationError(f"dimension entry {k!r} must be a non-negative integer")
        if k == "0":
            d0 = v
        else:
            p.check_element(k)
            values[k] = v
    return DimensionVector(d0, values)


# -- fields and matrices -----------------------------------------------------------


def field_to_json(f: FieldSpec):
    return {"p": f.p} if f.is_prime_field else "Q"


def field_from_json(obj) -> FieldSpec:
    if obj == "Q" or obj == "q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"p"}:
        if not isinstance(obj["p"], int):
            raise ValidationError("field characteristic must be an integer")
        return GF(obj["p"])
    raise ValidationError("field JSON must be {'p': prime} or 'Q'")


def parse_field_flag(text: str) -> FieldSpec:
    if text.upper() == "Q":
        return QQ
    try:
        return GF(int(text))
    except ValueError as exc:
        raise ValidationError(f"--field must be a prime or Q, got {text!r}") from exc


def _entry_to_json(x, f: FieldSpec):
    if f.is_prime_field:
        return int(x)
    frac = Fraction(x)
    return int(frac) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


def matrix_to_json(m: ExactMatrix) -> list:
    return [[_entry_to_json(x, m.field) for x in row] for row in m.data]


def rep_to_json(u: MatrixRep) -> dict:
    blocks = {}
    degenerate = {}
    for a, m in u.blocks.items():
        if m.cols == 0:
            continue
        if u.d0 == 0:
            degenerate[a] = m.cols
        else:
            blocks[a] = matrix_to_json(m)
    out = {"field": field_to_json(u.field), "d0": u.d0, "blocks": blocks}
    if degenerate:
        out["block_cols"] = degenerate
    return out


def rep_from_json(obj, p: Poset) -> MatrixRep:
    if not isinstance(obj, dict) or "d0" not in obj:
        raise ValidationError("representation JSON must carry 'field', 'd0', 'blocks'")
    f = field_from_json(obj.get("field", {"p": 2}))
    d0 = obj["d0"]
    if not isinstance(d0, int) or d0 < 0:
        raise ValidationError("'d0' must be a non-negative integer")
    blocks = {}
    for a, rows in (obj.get("blocks") or {}).items():
        p.check_element(a)
        if not isinstance(rows, list) or len(rows) != d0:
            raise ValidationError(f"block {a!r} must have {d0} rows")
        blocks[a] = ExactMatrix.from_rows(f, rows) if rows else ExactMatrix.zeros(f, 0, 0)
    for a, cols in (obj.get("block_cols") or {}).items():
        p.check_element(a)
        if d0 != 0:
            raise ValidationError("'block_cols' only describes zero-row blocks")
        blocks[a] = ExactMatrix.zeros(f, 0, cols)
    return MatrixRep(p, f, d0, blocks)


# -- derived posets -------------------------------------------------------------------


def derived_to_json(ctx: DerivedPoset) -> dict:
    return {
        "base": poset_to_json(ctx.base),
        "pivot": ctx.pivot,
        "derived": poset_to_json(ctx.result),
        "pairs": [
            {
                "element": pm.label,
                "members": list(pm.members),
                "prime": pm.prime,
                "second": pm.second,
            }
            for pm in ctx.pairs
        ],
    }


def derived_from_json(obj) -> DerivedPoset:
    if not isinstance(obj, dict) or "base" not in obj or "pivot" not in obj:
        raise ValidationError("derived-poset JSON must carry base, pivot, derived, pairs")
    base = poset_from_json(obj["base"])
    result = poset_from_json(obj["derived"])
    pairs = []
    for entry in obj.get("pairs", []):
        members = tuple(entry["members"])
        pairs.append(PairMark(entry["element"], members, entry["prime"], entry["second"]))
    provenance = {}
    pair_labels = {pm.label: pm for pm in pairs}
    for x in result.elements:
        if x in pair_labels:
            provenance[x] = ("pair", pair_labels[x].members)
        else:
            base.check_element(x)
            provenance[x] = ("element", x)
    return DerivedPoset(base, obj["pivot"], tuple(pairs), result, provenance)


# -- reports -----------------------------------------------------------------------


def witness_to_json(witness) -> dict | None:
    if witness is None:
        return None
    crit, emb = witness
    return {
        "kind": crit.kind,
        "c0": crit.c0,
        "values": dict(crit.assignment),
        "image": dict(emb.image_map),
    }


def report_to_json(r: ClassificationReport) -> dict:
    return {
        "dimension": dimension_to_json(r.dimension),
        "finite_type": r.finite_type,
        "witness": witness_to_json(r.witness),
        "is_root": r.is_root,
        "indecomposable": rep_to_json(r.indecomposable) if r.indecomposable else None,
        "end_dim": r.end_dim,
        "iso_class_counts": dict(r.iso_class_counts),
        "notes": list(r.notes),
        "ok": r.ok,
    }
