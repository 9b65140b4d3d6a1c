"""Structure bundles: a JSON document format for every structure kind.

Scalars are strings ("3", "-1/2"); under ``Fp:p`` a rational string is
reduced mod p on parsing. Canonical serialization sorts keys, renders
scalars in lowest terms and lists sparse table entries in index order, so
``serialize(parse(x))`` is a fixed point and digests are stable.

Layout::

    {"format": "quadmod-bundle", "version": 1, "kind": ..., "field": "Q" | "Fp:7",
     "meta": {"name": ...}, "payload": {...}}

Sparse tables are lists ``[i, j, k, "c"]`` (algebra products, actions,
bilinear maps); matrices are dense ``{"shape": [rows, cols], "rows": [[...]]}``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .exactalg import Action, AlgMorphism, Bilinear, Field, FinAlgebra, LinMap, parse_field
from .simplicial import TruncSimplicialAlgebra
from .structures import CrossedModule, CrossedSquare, PreCrossedModule, QuadraticModule, TwoCrossedModule

FORMAT = "quadmod-bundle"
VERSION = 1
KINDS = ("algebra", "simplicial", "crossed_module", "two_crossed", "crossed_square", "quadratic")


class BundleError(ValueError):
    """Malformed bundle; ``path`` locates the offending field."""

    def __init__(self, message: str, path: str = "", line: int | None = None):
        where = path or "document"
        if line is not None:
            where += f" (line {line})"
        super().__init__(f"{where}: {message}")
        self.path, self.line = path, line


@dataclass
class StructureBundle:
    kind: str
    field: Field
    structure: Any
    meta: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.meta.get("name", "")


# -- encoding ----------------------------------------------------------------


def _enc_alg(A: FinAlgebra) -> dict:
    F = A.field
    mul = [[i, j, k, F.render(c)] for i in range(A.dim) for j in range(A.dim) for k, c in A.mul[i][j]]
    return {"dim": A.dim, "labels": list(A.labels), "name": A.name, "mul": mul}


def _enc_mat(F: Field, f: LinMap) -> dict:
    return {"shape": [f.target_dim, f.source_dim], "rows": [[F.render(a) for a in r] for r in f.rows]}


def _enc_sparse3(F: Field, table) -> list:
    return [[i, j, k, F.render(c)]
            for i, row in enumerate(table) for j, v in enumerate(row) for k, c in enumerate(v) if c]


def _enc_action(act: Action) -> dict:
    F = act.carrier.field
    return {"shape": [act.carrier.dim, act.actor.dim], "table": _enc_sparse3(F, act.table)}


def _enc_bilinear(b: Bilinear) -> dict:
    return {"shape": [b.left_dim, b.right_dim, b.target_dim], "table": _enc_sparse3(b.field, b.table)}


def kind_of(obj) -> str:
    if isinstance(obj, FinAlgebra):
        return "algebra"
    if isinstance(obj, TruncSimplicialAlgebra):
        return "simplicial"
    if isinstance(obj, PreCrossedModule):
        return "crossed_module"
    if isinstance(obj, TwoCrossedModule):
        return "two_crossed"
    if isinstance(obj, CrossedSquare):
        return "crossed_square"
    if isinstance(obj, QuadraticModule):
        return "quadratic"
    raise TypeError(f"no bundle kind for {type(obj).__name__}")


def encode_payload(obj) -> dict:
    kind = kind_of(obj)
    F = obj.field
    m = lambda f: _enc_mat(F, f.map if isinstance(f, AlgMorphism) else f)  # noqa: E731
    if kind == "algebra":
        return {"algebra": _enc_alg(obj)}
    if kind == "simplicial":
        return {
            "levels": [_enc_alg(A) for A in obj.levels],
            "faces": {f"{n},{i}": m(f) for (n, i), f in sorted(obj.faces.items())},
            "degeneracies": {f"{n},{i}": m(s) for (n, i), s in sorted(obj.degens.items())},
        }
    if kind == "crossed_module":
        return {"algebras": {"C": _enc_alg(obj.C), "R": _enc_alg(obj.R)},
                "maps": {"boundary": m(obj.boundary)},
                "actions": {"action": _enc_action(obj.action)}}
    if kind == "two_crossed":
        actions = {"act1": _enc_action(obj.act1), "act2": _enc_action(obj.act2)}
        if obj.act12 is not None:
            actions["act12"] = _enc_action(obj.act12)
        return {"algebras": {"C2": _enc_alg(obj.C2), "C1": _enc_alg(obj.C1), "C0": _enc_alg(obj.C0)},
                "maps": {"d2": m(obj.d2), "d1": m(obj.d1)},
                "actions": actions,
                "bilinear": {"lifting": _enc_bilinear(obj.lifting)}}
    if kind == "crossed_square":
        return {"algebras": {k: _enc_alg(getattr(obj, k)) for k in ("L", "M", "N", "R")},
                "maps": {k: m(getattr(obj, k)) for k in ("lam", "lam_p", "mu", "nu")},
                "actions": {k: _enc_action(getattr(obj, k)) for k in ("actL", "actM", "actN")},
                "bilinear": {"h": _enc_bilinear(obj.h)}}
    # quadratic
    return {"algebras": {k: _enc_alg(getattr(obj, k)) for k in ("L", "M", "N")},
            "maps": {"delta": m(obj.delta), "boundary": m(obj.boundary)},
            "actions": {"actL": _enc_action(obj.actL), "actM": _enc_action(obj.actM)},
            "bilinear": {"omega": _enc_bilinear(obj.omega)}}


def to_document(bundle: StructureBundle) -> dict:
    return {
        "format": FORMAT,
        "version": VERSION,
        "kind": bundle.kind,
        "field": bundle.field.spec(),
        "meta": dict(bundle.meta),
        "payload": encode_payload(bundle.structure),
    }


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def serialize_bundle(bundle: StructureBundle) -> str:
    return dumps(to_document(bundle))


def make_bundle(obj, name: str = "", **meta) -> StructureBundle:
    meta = {k: v for k, v in meta.items() if v is not None}
    nm = name or getattr(obj, "name", "") or ""
    if nm:
        meta["name"] = nm
    return StructureBundle(kind_of(obj), obj.field, obj, meta)


def digest(obj) -> str:
    """SHA-256 over kind, field and payload (metadata excluded)."""
    if isinstance(obj, StructureBundle):
        obj = obj.structure
    doc = {"kind": kind_of(obj), "field": obj.field.spec(), "payload": encode_payload(obj)}
    return hashlib.sha256(dumps(doc).encode()).hexdigest()


# -- decoding ----------------------------------------------------------------


def _get(d, key, path, typ=None):
    if not isinstance(d, dict) or key not in d:
        raise BundleError(f"missing field '{key}'", path)
    v = d[key]
    if typ is not None and not isinstance(v, typ):
        raise BundleError(f"expected {typ.__name__ if isinstance(typ, type) else typ}", f"{path}.{key}")
    return v


def _scalar(F: Field, s, path):
    if not isinstance(s, str):
        raise BundleError("scalars must be strings", path)
    try:
        return F(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise BundleError(f"bad scalar {s!r}: {exc}", path) from None


def _index(v, bound, path):
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < bound:
        raise BundleError(f"index {v!r} out of range 0..{bound - 1}", path)
    return v


def _dec_alg(F: Field, d, path) -> FinAlgebra:
    dim = _get(d, "dim", path, int)
    if dim < 0:
        raise BundleError("negative dimension", f"{path}.dim")
    labels = d.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        raise BundleError(f"expected {dim} labels", f"{path}.labels")
    entries = _get(d, "mul", path, list)
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for n, e in enumerate(entries):
        p = f"{path}.mul[{n}]"
        if not isinstance(e, list) or len(e) != 4:
            raise BundleError("entry must be [i, j, k, scalar]", p)
        i, j, k = (_index(x, dim, p) for x in e[:3])
        table[i][j][k] = F.norm(table[i][j].get(k, F.zero) + _scalar(F, e[3], p))
    mul = [[tuple(sorted(c.items())) for c in row] for row in table]
    return FinAlgebra(F, dim, mul, labels, d.get("name", ""))


def _dec_mat(F: Field, d, path, shape) -> LinMap:
    got = _get(d, "shape", path, list)
    if list(got) != list(shape):
        raise BundleError(f"dimension mismatch: shape {got}, expected {list(shape)}", path)
    rows = _get(d, "rows", path, list)
    t, s = shape
    if len(rows) != t or any(not isinstance(r, list) or len(r) != s for r in rows):
        raise BundleError(f"dimension mismatch: rows do not form a {t}x{s} matrix", path)
    vals = [[_scalar(F, a, f"{path}.rows[{i}][{j}]") for j, a in enumerate(r)] for i, r in enumerate(rows)]
    return LinMap.from_rows(F, vals, s)


def _dec_sparse3(F: Field, d, path, shape, declared=None):
    got = _get(d, "shape", path, list)
    if list(got) != list(declared or shape):
        raise BundleError(f"dimension mismatch: shape {got}, expected {list(shape)}", path)
    a, b, c = shape
    table = [[[F.zero] * c for _ in range(b)] for _ in range(a)]
    for n, e in enumerate(_get(d, "table", path, list)):
        p = f"{path}.table[{n}]"
        if not isinstance(e, list) or len(e) != 4:
            raise BundleError("entry must be [i, j, k, scalar]", p)
        i, j, k = _index(e[0], a, p), _index(e[1], b, p), _index(e[2], c, p)
        table[i][j][k] = F.norm(table[i][j][k] + _scalar(F, e[3], p))
    return table


def _dec_action(F, d, path, carrier: FinAlgebra, actor: FinAlgebra) -> Action:
    shape = (carrier.dim, actor.dim, carrier.dim)
    return Action(carrier, actor, _dec_sparse3(F, d, path, shape, shape[:2]))


def _dec_bilinear(F, d, path, left: int, right: int, target: int) -> Bilinear:
    return Bilinear(F, left, right, target, _dec_sparse3(F, d, path, (left, right, target)))


def _algebras(F, payload, names):
    algs = _get(payload, "algebras", "payload", dict)
    return {n: _dec_alg(F, _get(algs, n, "payload.algebras"), f"payload.algebras.{n}") for n in names}


def _morph(F, payload, key, src: FinAlgebra, tgt: FinAlgebra) -> AlgMorphism:
    maps = _get(payload, "maps", "payload", dict)
    return AlgMorphism(src, tgt, _dec_mat(F, _get(maps, key, "payload.maps"), f"payload.maps.{key}",
                                          (tgt.dim, src.dim)))


def _act(F, payload, key, carrier, actor, optional=False):
    acts = _get(payload, "actions", "payload", dict)
    if optional and key not in acts:
        return None
    return _dec_action(F, _get(acts, key, "payload.actions"), f"payload.actions.{key}", carrier, actor)


def _bil(F, payload, key, left, right, target):
    bil = _get(payload, "bilinear", "payload", dict)
    return _dec_bilinear(F, _get(bil, key, "payload.bilinear"), f"payload.bilinear.{key}", left, right, target)


def decode_payload(kind: str, F: Field, payload: dict, name: str = ""):
    if kind == "algebra":
        return _dec_alg(F, _get(payload, "algebra", "payload"), "payload.algebra")
    if kind == "simplicial":
        levels = [_dec_alg(F, A, f"payload.levels[{n}]")
                  for n, A in enumerate(_get(payload, "levels", "payload", list))]
        N = len(levels) - 1
        faces, degens = {}, {}
        fd = _get(payload, "faces", "payload", dict)
        dd = _get(payload, "degeneracies", "payload", dict)
        for n in range(1, N + 1):
            for i in range(n + 1):
                key = f"{n},{i}"
                faces[(n, i)] = _dec_mat(F, _get(fd, key, "payload.faces"), f"payload.faces.{key}",
                                         (levels[n - 1].dim, levels[n].dim))
        for n in range(N):
            for i in range(n + 1):
                key = f"{n},{i}"
                degens[(n, i)] = _dec_mat(F, _get(dd, key, "payload.degeneracies"),
                                          f"payload.degeneracies.{key}", (levels[n + 1].dim, levels[n].dim))
        extra = set(fd) - {f"{n},{i}" for n, i in faces} | set(dd) - {f"{n},{i}" for n, i in degens}
        if extra:
            raise BundleError(f"unexpected entries {sorted(extra)}", "payload")
        try:
            return TruncSimplicialAlgebra(tuple(levels), faces, degens, name)
        except ValueError as exc:
            raise BundleError(str(exc), "payload") from None
    if kind == "crossed_module":
        a = _algebras(F, payload, ("C", "R"))
        return CrossedModule(a["C"], a["R"], _morph(F, payload, "boundary", a["C"], a["R"]),
                             _act(F, payload, "action", a["C"], a["R"]), name)
    if kind == "two_crossed":
        a = _algebras(F, payload, ("C2", "C1", "C0"))
        C2, C1, C0 = a["C2"], a["C1"], a["C0"]
        return TwoCrossedModule(C2, C1, C0, _morph(F, payload, "d2", C2, C1), _morph(F, payload, "d1", C1, C0),
                                _act(F, payload, "act1", C1, C0), _act(F, payload, "act2", C2, C0),
                                _bil(F, payload, "lifting", C1.dim, C1.dim, C2.dim),
                                _act(F, payload, "act12", C2, C1, optional=True), name)
    if kind == "crossed_square":
        a = _algebras(F, payload, ("L", "M", "N", "R"))
        L, M, N, R = a["L"], a["M"], a["N"], a["R"]
        return CrossedSquare(L, M, N, R, _morph(F, payload, "lam", L, M), _morph(F, payload, "lam_p", L, N),
                             _morph(F, payload, "mu", M, R), _morph(F, payload, "nu", N, R),
                             _act(F, payload, "actL", L, R), _act(F, payload, "actM", M, R),
                             _act(F, payload, "actN", N, R), _bil(F, payload, "h", M.dim, N.dim, L.dim), name)
    if kind == "quadratic":
        a = _algebras(F, payload, ("L", "M", "N"))
        L, M, N = a["L"], a["M"], a["N"]
        bil = _get(_get(payload, "bilinear", "payload", dict), "omega", "payload.bilinear", dict)
        shape = _get(bil, "shape", "payload.bilinear.omega", list)
        if len(shape) != 3 or shape[0] != shape[1] or shape[2] != L.dim:
            raise BundleError(f"dimension mismatch: omega shape {shape} must be [c, c, dim L]",
                              "payload.bilinear.omega")
        return QuadraticModule(L, M, N, _morph(F, payload, "delta", L, M), _morph(F, payload, "boundary", M, N),
                               _act(F, payload, "actL", L, N), _act(F, payload, "actM", M, N),
                               _bil(F, payload, "omega", shape[0], shape[0], L.dim), name)
    raise BundleError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "kind")


def parse_document(doc: dict, field_override: Field | None = None) -> StructureBundle:
    if not isinstance(doc, dict):
        raise BundleError("top level must be an object")
    if doc.get("format", FORMAT) != FORMAT:
        raise BundleError(f"unknown format {doc.get('format')!r}", "format")
    kind = _get(doc, "kind", "", str)
    if kind not in KINDS:
        raise BundleError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "kind")
    if field_override is not None:
        F = field_override
    else:
        try:
            F = parse_field(_get(doc, "field", "", str))
        except ValueError as exc:
            raise BundleError(str(exc), "field") from None
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise BundleError("meta must be an object", "meta")
    payload = _get(doc, "payload", "", dict)
    try:
        obj = decode_payload(kind, F, payload, meta.get("name", ""))
    except BundleError:
        raise
    except ValueError as exc:
        raise BundleError(str(exc), "payload") from None
    return StructureBundle(kind, F, obj, dict(meta))


def parse_bundle(text: str, field_override: Field | None = None) -> StructureBundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleError(exc.msg, f"column {exc.colno}", exc.lineno) from None
    return parse_document(doc, field_override)


def canonical(text: str) -> str:
    return serialize_bundle(parse_bundle(text))


def read_bundle(path, field_override: Field | None = None) -> StructureBundle:
    with open(path, encoding="utf-8") as fh:
        return parse_bundle(fh.read(), field_override)


def write_bundle(bundle: StructureBundle, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_bundle(bundle))
