"""JSON documents for algebras, elements, morphisms and congruences.

Elements are encoded as integer indices (finite tables), sorted integer
lists (finite sets), ``{"coord": value}`` maps (direct sums), lists of
component encodings (products) and term strings (free algebras).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ..builtins import (BUILTIN_MORPHISMS, builtin_morphism, coordinatewise_morphism, setminus_morphism,
                        strong_projection)
from ..category import ProductEMV, mediating_morphism
from ..congruence import Congruence, generate_congruence, partition
from ..emv import (DirectSumEMV, FinSetBooleanEMV, FinSuppVector, Pomonoid, TableEMV, UElem,
                   UnitizedMV, unitize)
from ..errors import EMVError, InvalidInput
from ..free import FreeElement, FreeMV, LiftTarget, free_lift, mk_free_mv, weakly_free_lift
from ..morphism import (EMVMorphism, Entry, StrongEMVHom, compose, identity_morphism,
                        morphism_from_strong_hom, restrict_morphism)
from ..mv import FiniteMVAlgebra, mk_boolean, mk_chain, mk_product


class DocError(InvalidInput):
    """A document that does not decode; ``path`` locates the offending field."""

    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


def load(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocError(path, f"cannot read ({e.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocError(path, f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def dump(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _field(doc, key, path, kind=None, default=...):
    if not isinstance(doc, dict):
        raise DocError(path, "expected an object")
    if key not in doc:
        if default is not ...:
            return default
        raise DocError(f"{path}.{key}", "missing field")
    v = doc[key]
    if kind is not None and not isinstance(v, kind) or isinstance(v, bool) and kind is int:
        raise DocError(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return v


def _kind(doc, path) -> str:
    return _field(doc, "kind", path, str)


# ---------------------------------------------------------------- algebras

MV_KINDS = ("chain", "boolean", "product")


def _decode_mv(doc, path) -> FiniteMVAlgebra:
    kind = _kind(doc, path)
    try:
        if kind == "chain":
            return mk_chain(_field(doc, "n", path, int))
        if kind == "boolean":
            return mk_boolean(_field(doc, "atoms", path, int))
        if kind == "product":
            fs = _field(doc, "factors", path, list)
            if not fs:
                raise DocError(f"{path}.factors", "empty factor list")
            return mk_product([_decode_mv(f, f"{path}.factors[{i}]") for i, f in enumerate(fs)])
        if kind == "table" and "neg" in doc:
            oplus = _field(doc, "oplus", path, list)
            neg = _field(doc, "neg", path, list)
            n = len(neg)
            if len(oplus) != n or any(not isinstance(r, list) or len(r) != n for r in oplus):
                raise DocError(f"{path}.oplus", f"expected a {n}x{n} table")
            if any(not isinstance(v, int) or not 0 <= v < n for r in oplus + [neg] for v in r):
                raise DocError(path, f"table entries must be integers in 0..{n - 1}")
            labels = _field(doc, "labels", path, list, None)
            return FiniteMVAlgebra(oplus, neg, _field(doc, "zero", path, int), _field(doc, "one", path, int),
                                   labels)
    except DocError:
        raise
    except EMVError as e:
        raise DocError(path, str(e)) from None
    raise DocError(f"{path}.kind", f"expected an MV-algebra kind, got {kind!r}")


def _encode_mv(M: FiniteMVAlgebra) -> dict:
    o = M.origin
    if o and o[0] == "chain":
        return {"kind": "chain", "n": o[1]}
    if o and o[0] == "boolean":
        return {"kind": "boolean", "atoms": o[1]}
    if o and o[0] == "product":
        return {"kind": "product", "factors": [_encode_mv(f) for f in o[1]]}
    doc = {"kind": "table", "oplus": [list(r) for r in M.oplus], "neg": list(M.neg), "zero": M.zero,
           "one": M.one}
    if M.labels is not None:
        doc["labels"] = list(M.labels)
    return doc


def is_mv_doc(doc) -> bool:
    return isinstance(doc, dict) and (doc.get("kind") in MV_KINDS or doc.get("kind") == "table" and "neg" in doc)


def decode_algebra(doc, path: str = "$"):
    """An EMV-algebra backend (or a Pomonoid for ``pomonoid`` documents)."""
    kind = _kind(doc, path)
    if is_mv_doc(doc):
        return TableEMV.from_mv(_decode_mv(doc, path))
    try:
        if kind == "table":
            tabs = [_field(doc, k, path, list) for k in ("join", "meet", "oplus")]
            return TableEMV(*tabs, _field(doc, "zero", path, int), _field(doc, "labels", path, list, None))
        if kind == "direct_sum":
            pat = _field(doc, "pattern", path, list)
            if not pat:
                raise DocError(f"{path}.pattern", "empty pattern")
            return DirectSumEMV([_decode_mv(f, f"{path}.pattern[{i}]") for i, f in enumerate(pat)],
                                _field(doc, "repeat", path, bool, True))
        if kind == "finset_boolean":
            return FinSetBooleanEMV()
        if kind == "emv_product":
            fs = _field(doc, "factors", path, list)
            return ProductEMV([decode_algebra(f, f"{path}.factors[{i}]") for i, f in enumerate(fs)])
        if kind == "unitization":
            base = decode_algebra(_field(doc, "base", path, dict), f"{path}.base")
            if not isinstance(base, DirectSumEMV):
                raise DocError(f"{path}.base", "unitization needs a direct_sum base")
            return unitize(base)[0]
        if kind == "free":
            gens = _field(doc, "generators", path, list)
            return mk_free_mv(gens)
        if kind == "pomonoid":
            return Pomonoid.from_tables(_field(doc, "plus", path, list), _field(doc, "leq", path, list),
                                        _field(doc, "zero", path, int), _field(doc, "labels", path, list, None))
    except DocError:
        raise
    except (EMVError, TypeError, ValueError, IndexError) as e:
        raise DocError(path, str(e)) from None
    raise DocError(f"{path}.kind", f"unknown algebra kind {kind!r}")


def encode_algebra(M) -> dict:
    if isinstance(M, TableEMV):
        if M.origin and M.origin[0] == "mv":
            return _encode_mv(M.origin[1])
        doc = {"kind": "table", "join": [list(r) for r in M.join_t], "meet": [list(r) for r in M.meet_t],
               "oplus": [list(r) for r in M.oplus_t], "zero": M.zero}
        if M.labels is not None:
            doc["labels"] = list(M.labels)
        return doc
    if isinstance(M, DirectSumEMV):
        return {"kind": "direct_sum", "pattern": [_encode_mv(F) for F in M.pattern], "repeat": M.repeat}
    if isinstance(M, FinSetBooleanEMV):
        return {"kind": "finset_boolean"}
    if isinstance(M, ProductEMV):
        return {"kind": "emv_product", "factors": [encode_algebra(F) for F in M.factors]}
    if isinstance(M, UnitizedMV):
        return {"kind": "unitization", "base": encode_algebra(M.base)}
    if isinstance(M, FreeMV):
        return {"kind": "free", "generators": list(M.generators)}
    if isinstance(M, Pomonoid) and M.tables is not None:
        plus, leq, labels = M.tables
        doc = {"kind": "pomonoid", "plus": [list(r) for r in plus], "leq": [list(r) for r in leq],
               "zero": M.zero}
        if labels:
            doc["labels"] = list(labels)
        return doc
    raise InvalidInput(f"no document encoding for {M!r}")


# ---------------------------------------------------------------- elements


def encode_element(M, x) -> Any:
    if isinstance(M, ProductEMV):
        return [encode_element(F, v) for F, v in zip(M.factors, x)]
    return jsonable(x)


def jsonable(x) -> Any:
    """Plain JSON for elements and witness values of every backend."""
    if isinstance(x, FinSuppVector):
        return {str(i): v for i, v in x}
    if isinstance(x, UElem):
        return {"high": x.high, "vec": jsonable(x.vec)}
    if isinstance(x, frozenset):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, FreeElement):
        return x.algebra.show(x)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        if all(isinstance(k, str) for k in x):
            return {k: jsonable(v) for k, v in sorted(x.items())}
        # element-keyed maps become sorted [key, value] pairs
        pairs = [[jsonable(k), jsonable(v)] for k, v in x.items()]
        return sorted(pairs, key=lambda kv: json.dumps(kv, sort_keys=True))
    if isinstance(x, (bool, int, str, float)) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    return repr(x)


def decode_element(M, v, path: str = "$"):
    """Decode ``v`` as an element of ``M``; table algebras also accept their labels (e.g. "1/2")."""
    try:
        if isinstance(M, TableEMV):
            if isinstance(v, str):
                if M.labels and v in M.labels:
                    return M.labels.index(v)
                raise DocError(path, f"no element labelled {v!r}")
            x = v
        elif isinstance(M, DirectSumEMV):
            if not isinstance(v, dict):
                raise DocError(path, "direct-sum elements are {coordinate: value} maps")
            x = M.vec({int(k): int(val) for k, val in v.items()})
        elif isinstance(M, FinSetBooleanEMV):
            if not isinstance(v, list) or any(not isinstance(i, int) or i < 1 for i in v):
                raise DocError(path, "finite-set elements are lists of positive integers")
            x = frozenset(v)
        elif isinstance(M, ProductEMV):
            if not isinstance(v, list) or len(v) != len(M.factors):
                raise DocError(path, f"expected a list of {len(M.factors)} components")
            x = tuple(decode_element(F, c, f"{path}[{i}]") for i, (F, c) in enumerate(zip(M.factors, v)))
        elif isinstance(M, UnitizedMV):
            x = UElem(bool(_field(v, "high", path, bool)), decode_element(M.base, _field(v, "vec", path), path))
        elif isinstance(M, FreeMV):
            if not isinstance(v, str):
                raise DocError(path, "free-algebra elements are term strings")
            x = M.element(v)
        else:
            x = v
    except DocError:
        raise
    except (EMVError, TypeError, ValueError) as e:
        raise DocError(path, str(e)) from None
    if not M.contains(x):
        raise DocError(path, f"{v!r} is not an element of {M!r}")
    return x


def _key_in(k):
    return tuple(_key_in(v) for v in k) if isinstance(k, list) else k


def _key_out(k):
    if isinstance(k, tuple):
        return [_key_out(v) for v in k]
    if isinstance(k, (int, str)) and not isinstance(k, bool):
        return k
    return jsonable(k)


# ---------------------------------------------------------------- morphisms

BUILTINS = ("identity", "setminus", "strong_restrict", "projection", "coordinatewise")


def _table_map(S, T, pairs, path):
    if not isinstance(pairs, list):
        raise DocError(path, "expected a list of [x, f(x)] pairs")
    table = {}
    for n, p in enumerate(pairs):
        if not isinstance(p, list) or len(p) != 2:
            raise DocError(f"{path}[{n}]", "expected a pair [x, f(x)]")
        x = decode_element(S, p[0], f"{path}[{n}][0]")
        if x in table:
            raise DocError(f"{path}[{n}]", "repeated argument")
        table[x] = decode_element(T, p[1], f"{path}[{n}][1]")
    return table


def _entry_fn(table, where):
    def fn(x):
        try:
            return table[x]
        except KeyError:
            raise InvalidInput(f"{where}: no value given at {x!r}") from None
    return fn


def _decode_family(doc, path) -> EMVMorphism:
    S = decode_algebra(_field(doc, "source", path, dict), f"{path}.source")
    T = decode_algebra(_field(doc, "target", path, dict), f"{path}.target")
    ents = _field(doc, "entries", path, list)
    out = []
    for n, e in enumerate(ents):
        p = f"{path}.entries[{n}]"
        a = decode_element(S, _field(e, "a", p), f"{p}.a")
        table = _table_map(S, T, _field(e, "map", p, list), f"{p}.map")
        below = S.below(a)
        missing = [x for x in below if x not in table]
        if missing:
            raise DocError(f"{p}.map", f"no value for {jsonable(missing[0])!r} in [0, a]")
        if any(x not in below for x in table):
            raise DocError(f"{p}.map", "argument outside [0, a]")
        key = _key_in(e["key"]) if "key" in e else n
        out.append(Entry(key, a, _entry_fn(table, p)))
    if not out:
        raise DocError(f"{path}.entries", "a morphism needs at least one entry")
    try:
        return EMVMorphism(S, T, out, name=_field(doc, "name", path, str, "family"))
    except EMVError as e:
        raise DocError(path, str(e)) from None


def encode_family(f: EMVMorphism, level: int) -> dict:
    """Explicit entries; only for families whose entries live on finite intervals."""
    if not f.finite or not f.source.finite_intervals():
        raise InvalidInput(f"{f.name or 'morphism'} is not a finite family")
    S, T = f.source, f.target
    ents = []
    for n, e in enumerate(f.entries(level)):
        d = {"a": encode_element(S, e.a), "map": [[encode_element(S, x), encode_element(T, e(x))]
                                                  for x in S.below(e.a)]}
        if e.key != n:
            d["key"] = _key_out(e.key)
        ents.append(d)
    doc = {"kind": "family", "source": encode_algebra(S), "target": encode_algebra(T), "entries": ents}
    if f.name and f.name != "family":
        doc["name"] = f.name
    return doc


def _decode_builtin(doc, path, level) -> EMVMorphism:
    name = _field(doc, "name", path, str)
    if name == "identity":
        return identity_morphism(decode_algebra(_field(doc, "source", path, dict), f"{path}.source"))
    if name == "setminus":
        src = doc.get("source", {"kind": "finset_boolean"})
        S = decode_algebra(src, f"{path}.source")
        if not isinstance(S, FinSetBooleanEMV):
            raise DocError(f"{path}.source", "setminus acts on finset_boolean")
        return setminus_morphism(S)
    if name == "strong_restrict":
        S = decode_algebra(_field(doc, "source", path, dict), f"{path}.source")
        T = decode_algebra(doc["target"], f"{path}.target") if "target" in doc else S
        if "map" in doc:
            if not S.is_exhaustive(0):
                raise DocError(f"{path}.map", "explicit maps need a finite source")
            table = _table_map(S, T, doc["map"], f"{path}.map")
            if set(table) != set(S.elements(0)):
                raise DocError(f"{path}.map", "the map must be total")
            h = StrongEMVHom(S, T, _entry_fn(table, f"{path}.map"), name="h")
        elif S == T:
            h = StrongEMVHom(S, T, lambda x: x, name="id")
        else:
            raise DocError(f"{path}.map", "missing field (needed when source and target differ)")
        H = morphism_from_strong_hom(h, level)
        if "keys" not in doc:
            return H
        K = [decode_element(S, k, f"{path}.keys[{n}]") for n, k in enumerate(_field(doc, "keys", path, list))]
        return restrict_morphism(H, K, level)
    if name == "projection":
        S = decode_algebra(_field(doc, "source", path, dict), f"{path}.source")
        if isinstance(S, ProductEMV):
            i = _field(doc, "index", path, int)
            if not 0 <= i < len(S.factors):
                raise DocError(f"{path}.index", "no such factor")
            return S.projection(i)
        if isinstance(S, DirectSumEMV):
            keep = _field(doc, "keep", path, list)
            return morphism_from_strong_hom(strong_projection(S, keep), level)
        raise DocError(f"{path}.source", "projection needs an emv_product or direct_sum source")
    if name == "coordinatewise":
        S = decode_algebra(_field(doc, "source", path, dict), f"{path}.source")
        T = decode_algebra(doc["target"], f"{path}.target") if "target" in doc else S
        if not isinstance(S, DirectSumEMV) or not isinstance(T, DirectSumEMV):
            raise DocError(path, "coordinatewise acts between direct sums")
        return coordinatewise_morphism(S, T, _field(doc, "homs", path, list))
    if name in BUILTIN_MORPHISMS:
        return builtin_morphism(name)
    raise DocError(f"{path}.name", f"unknown builtin {name!r}; known: {list(BUILTINS) + sorted(BUILTIN_MORPHISMS)}")


def decode_morphism(doc, path: str = "$", level: int = 4) -> EMVMorphism:
    """Decode a morphism document; the canonical document is kept in ``meta["doc"]``."""
    kind = _kind(doc, path)
    try:
        if kind == "family":
            f = _decode_family(doc, path)
        elif kind == "builtin":
            f = _decode_builtin(doc, path, level)
        elif kind == "composite":
            outer = decode_morphism(_field(doc, "outer", path, dict), f"{path}.outer", level)
            inner = decode_morphism(_field(doc, "inner", path, dict), f"{path}.inner", level)
            f = compose(outer, inner, level)
        elif kind == "mediating":
            M = decode_algebra(_field(doc, "source", path, dict), f"{path}.source")
            fs = [decode_morphism(c, f"{path}.components[{i}]", level)
                  for i, c in enumerate(_field(doc, "components", path, list))]
            f = mediating_morphism(M, fs, level)
        elif kind in ("free_lift", "weakly_free_lift"):
            F = mk_free_mv(_field(doc, "generators", path, list))
            M = decode_algebra(_field(doc, "target", path, dict), f"{path}.target")
            asg = _field(doc, "assign", path, dict)
            f_ = {g: decode_element(M, v, f"{path}.assign.{g}") for g, v in asg.items()}
            if kind == "free_lift":
                f = free_lift(F, LiftTarget(M, f_), level)
            else:
                f = weakly_free_lift(F, M, f_, level)
        else:
            raise DocError(f"{path}.kind", f"unknown morphism kind {kind!r}")
    except DocError:
        raise
    except InvalidInput as e:
        raise DocError(path, str(e)) from None
    f.meta["doc"] = doc
    return f


def encode_morphism(f: EMVMorphism, level: int) -> dict:
    if "doc" in f.meta:
        return f.meta["doc"]
    return encode_family(f, level)


# ---------------------------------------------------------------- congruences


def decode_congruence(doc, M, path: str = "$", level: int = 4) -> Congruence:
    kind = _kind(doc, path)
    if kind == "partition":
        blocks = _field(doc, "blocks", path, list)
        return partition(M, [[decode_element(M, x, f"{path}.blocks[{i}][{j}]") for j, x in enumerate(b)]
                             for i, b in enumerate(blocks)])
    if kind == "generated":
        pairs = _field(doc, "pairs", path, list)
        seeds = []
        for n, p in enumerate(pairs):
            if not isinstance(p, list) or len(p) != 2:
                raise DocError(f"{path}.pairs[{n}]", "expected a pair")
            seeds.append((decode_element(M, p[0], f"{path}.pairs[{n}][0]"),
                          decode_element(M, p[1], f"{path}.pairs[{n}][1]")))
        return generate_congruence(M, seeds, level)
    raise DocError(f"{path}.kind", f"unknown congruence kind {kind!r}")


def encode_partition(M, theta: Congruence, level: int) -> dict:
    return {"kind": "partition", "blocks": [[encode_element(M, x) for x in b] for b in theta.blocks(level)]}
