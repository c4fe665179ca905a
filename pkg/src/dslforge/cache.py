"""On-disk cache of computed kernel bases.

Files are named <space>-<weight>-<schema_version>.json and store a
SubspaceBasis; bumping the schema version (which also encodes the pivot
rule) invalidates old entries.  The directory defaults to
~/.cache/dslforge and is overridden by DSLFORGE_CACHE_DIR.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .spaces import (
    SCHEMA_VERSION,
    ConstraintMatrix,
    SpaceId,
    SubspaceBasis,
    compile_constraints,
    rational_kernel,
)

ENV_VAR = "DSLFORGE_CACHE_DIR"


def cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "dslforge"


def _entry_path(space: SpaceId, k: int) -> Path:
    return cache_dir() / f"{space.key}-{k}-{SCHEMA_VERSION}.json"


def load_basis(space: SpaceId, k: int) -> SubspaceBasis | None:
    path = _entry_path(space, k)
    if not path.is_file():
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if data.get("schema") != SCHEMA_VERSION:
            return None
        return SubspaceBasis.from_json_dict(data)
    except (ValueError, KeyError):
        return None


def store_basis(basis: SubspaceBasis) -> Path:
    path = _entry_path(basis.space, basis.weight)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(basis.to_json_dict(), fh)
    os.replace(tmp, path)
    return path


def get_basis(space: SpaceId, k: int, use_cache: bool = True) -> SubspaceBasis:
    """Load the basis from cache or compile, solve, and store it."""
    if use_cache:
        hit = load_basis(space, k)
        if hit is not None:
            return hit
    matrix: ConstraintMatrix = compile_constraints(space, k)
    basis = rational_kernel(matrix)
    if use_cache:
        store_basis(basis)
    return basis


def clear_cache() -> int:
    """Remove all cache entries; returns the number of files removed."""
    base = cache_dir()
    if not base.is_dir():
        return 0
    count = 0
    for path in base.glob("*.json"):
        path.unlink()
        count += 1
    return count


def list_entries() -> list[str]:
    base = cache_dir()
    if not base.is_dir():
        return []
    return sorted(p.name for p in base.glob("*.json"))
