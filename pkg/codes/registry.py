"""
Construction registry: generator descriptors and CLI parameters -> codes.

Every generator-backed code serializes as {"construction": name, "params": {...}};
the builders below turn such a descriptor back into a live code.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from codes.code_model import (
    CODE_FILE_VERSION,
    KIND_LPC,
    KINDS,
    CodeParameterError,
    LpcCode,
    UnionCode,
    explicit_code,
)
from codes.cpecc_rs import build_cpecc
from codes.mds_cpc import build_linear_cpc, build_rs_cpc
from codes.recursive_cpc import build_lpc_union, build_recursive, outer_parallel_classes
from config.settings import log
from cooling.construction4 import build_construction4, build_leaf231_lpc
from cooling.spread_cooling import build_spread_cooling
from field.finite_field import FieldParameterError
from mapping.domination_map import MappingError, lpc_from_cooling, mapping_from_document


class CodeFileError(ValueError):
    """A code document is malformed or violates a code invariant."""


Builder = Callable[[Dict[str, Any], Optional[Path]], LpcCode]


def _need(params: Dict[str, Any], *names: str) -> list:
    missing = [n for n in names if n not in params]
    if missing:
        raise CodeFileError(f"construction parameters missing: {', '.join(missing)}")
    return [params[n] for n in names]


def _inner_document(value: Any, base_dir: Optional[Path]) -> Dict[str, Any]:
    """Inner codes come inline or as a path to a code file."""
    if isinstance(value, dict):
        return value
    if isinstance(value, str):
        p = Path(value)
        if not p.is_absolute() and base_dir is not None and not p.exists():
            p = base_dir / p
        if not p.exists():
            raise CodeFileError(f"inner code file not found: {value}")
        return json.loads(p.read_text(encoding="utf-8-sig"))
    raise CodeFileError("inner code must be a code document or a path to one")


def _mds_cpc(params, base_dir):
    q, w = _need(params, "q", "w")
    return build_rs_cpc(int(q), int(w)).to_code()


def _linear_cpc(params, base_dir):
    q, w, generator = _need(params, "q", "w", "generator")
    if isinstance(generator, str):
        generator = _inner_document(generator, base_dir)
        generator = generator.get("generator", generator) if isinstance(generator, dict) else generator
    return build_linear_cpc(generator, int(w), int(q)).to_code()


def _cpecc(params, base_dir):
    q, w, e = _need(params, "q", "w", "e")
    return build_cpecc(int(q), int(w), int(e)).to_code()


def _recursive_cpc(params, base_dir):
    q, inner = _need(params, "q", "inner")
    inner_code = code_from_document(_inner_document(inner, base_dir), base_dir)
    return build_recursive(int(q), inner_code).to_code()


def _lpc_union(params, base_dir):
    n, t, w, q = _need(params, "n", "t", "w", "q")
    return build_lpc_union(int(n), int(t), int(w), int(q)).to_code()


def _outer_classes(params, base_dir):
    q, n, w = _need(params, "q", "n", "w")
    return outer_parallel_classes(int(q), int(n), int(w)).to_code()


def _union(params, base_dir):
    (components,) = _need(params, "components")
    return UnionCode([code_from_document(c, base_dir) for c in components]).to_code(params.get("kind", KIND_LPC))


def _spread_cooling(params, base_dir):
    n, t = _need(params, "n", "t")
    return build_spread_cooling(int(n), int(t))


def _construction4(params, base_dir):
    w, t, alpha, beta = _need(params, "w", "t", "alpha", "beta")
    return build_construction4(int(w), int(t), int(alpha), int(beta))


def _leaf231_lpc(params, base_dir):
    w, t = _need(params, "w", "t")
    return build_leaf231_lpc(int(w), int(t))


def _dominated(params, base_dir):
    cooling, mapping = _need(params, "cooling", "mapping")
    cooling_code = code_from_document(_inner_document(cooling, base_dir), base_dir)
    if isinstance(mapping, str):
        mapping = _inner_document(mapping, base_dir)
    return lpc_from_cooling(cooling_code, mapping_from_document(mapping))


CONSTRUCTIONS: Dict[str, Builder] = {
    "mds_cpc": _mds_cpc,
    "linear_cpc": _linear_cpc,
    "cpecc": _cpecc,
    "recursive_cpc": _recursive_cpc,
    "lpc_union": _lpc_union,
    "outer_classes": _outer_classes,
    "union": _union,
    "spread_cooling": _spread_cooling,
    "construction4": _construction4,
    "leaf231_lpc": _leaf231_lpc,
    "dominated": _dominated,
}


def build_code(construction: str, params: Dict[str, Any], base_dir: Optional[Path] = None) -> LpcCode:
    builder = CONSTRUCTIONS.get(construction)
    if builder is None:
        raise CodeFileError(f"unknown construction {construction!r}; known: {', '.join(sorted(CONSTRUCTIONS))}")
    try:
        code = builder(params, base_dir)
    except (CodeParameterError, FieldParameterError, MappingError) as exc:
        raise CodeFileError(f"{construction}: {exc}") from exc
    log("STORE", f"built {construction} n={code.n} t={code.t} w={code.w} size={code.size}")
    return code


def code_from_document(doc: Dict[str, Any], base_dir: Optional[Path] = None) -> LpcCode:
    """Inverse of ``code_document``; generator codes must reproduce the declared (n, t, w)."""
    if not isinstance(doc, dict):
        raise CodeFileError("code document must be a JSON object")
    version = doc.get("version", CODE_FILE_VERSION)
    if version != CODE_FILE_VERSION:
        raise CodeFileError(f"unsupported code file version {version}; expected {CODE_FILE_VERSION}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise CodeFileError(f"unknown code kind {kind!r}; expected one of {list(KINDS)}")
    try:
        n, t, w = (int(doc[k]) for k in ("n", "t", "w"))
        e = None if doc.get("e") is None else int(doc["e"])
    except KeyError as exc:
        raise CodeFileError(f"code document missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise CodeFileError(f"code document fields n, t, w and e must be integers: {exc}") from exc
    has_sets, has_gen = "codesets" in doc, "generator" in doc
    if has_sets == has_gen:
        raise CodeFileError("code document needs exactly one of 'codesets' and 'generator'")
    if has_sets:
        try:
            return explicit_code(n, t, w, kind, doc["codesets"], e=e)
        except (CodeParameterError, TypeError) as exc:
            raise CodeFileError(f"invalid code: {exc}") from exc

    gen = doc["generator"]
    if not isinstance(gen, dict) or "construction" not in gen:
        raise CodeFileError("generator must be an object with 'construction' and 'params'")
    params = dict(gen.get("params", {}))
    if gen["construction"] == "union":
        params.setdefault("kind", kind)
    code = build_code(gen["construction"], params, base_dir)
    if (code.n, code.t, code.w) != (n, t, w):
        raise CodeFileError(
            f"generator {gen['construction']} yields (n,t,w)=({code.n},{code.t},{code.w}), "
            f"file declares ({n},{t},{w})"
        )
    if code.kind != kind:
        raise CodeFileError(f"generator {gen['construction']} yields kind {code.kind!r}, file declares {kind!r}")
    return code


__all__ = ["CodeFileError", "CONSTRUCTIONS", "build_code", "code_from_document"]
