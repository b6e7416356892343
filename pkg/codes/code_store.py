from __future__ import annotations

import json
from pathlib import Path
from typing import Dict

from codes.code_model import LpcCode, code_document
from codes.registry import CodeFileError, code_from_document
from config.settings import log


def read_document(path: str | Path) -> Dict:
    p = Path(path)
    if not p.exists():
        raise CodeFileError(f"Code file not found: {path}")
    try:
        return json.loads(p.read_text(encoding="utf-8-sig"))
    except json.JSONDecodeError as exc:
        raise CodeFileError(f"Code file is not valid JSON: {path}: {exc}") from exc


def load_code(path: str | Path) -> LpcCode:
    p = Path(path)
    code = code_from_document(read_document(p), base_dir=p.parent)
    log("STORE", f"loaded {code.construction} code from {p}")
    return code


def save_code(code: LpcCode, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(code_document(code), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    log("STORE", f"saved {code.construction} code to {p}")
    return p


__all__ = ["CodeFileError", "read_document", "load_code", "save_code"]
