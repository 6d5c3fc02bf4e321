"""Reading and writing algebra and homomorphism files."""

from __future__ import annotations

import json
from pathlib import Path

from . import fixtures
from .algebra import FiniteAlgebra, Homomorphism, algebra_to_dict, validate_algebra, validate_homomorphism
from .errors import ValidationError


def _read_json(path: Path):
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise FileNotFoundError(f"no such file: {path}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None


def fixture_algebra(name: str) -> FiniteAlgebra | None:
    catalog = fixtures.algebras()
    if name in catalog:
        return catalog[name]
    if name in fixtures.BUILDERS:
        obj = fixtures.build(name)
        if isinstance(obj, FiniteAlgebra):
            return obj
    return None


def load_algebra(source) -> FiniteAlgebra:
    """Algebra from a path, a parsed dict or a fixture name."""
    if isinstance(source, FiniteAlgebra):
        return source
    if isinstance(source, dict):
        return validate_algebra(source)
    path = Path(source)
    if path.exists():
        return validate_algebra(_read_json(path))
    A = fixture_algebra(str(source))
    if A is not None:
        return A
    raise FileNotFoundError(f"no such file or fixture: {source}")


def _resolve_end(ref, base: Path | None) -> FiniteAlgebra:
    if isinstance(ref, dict):
        return validate_algebra(ref)
    if not isinstance(ref, str):
        raise ValidationError(f"bad algebra reference {ref!r}")
    candidates = [Path(ref)]
    if base is not None:
        candidates += [base / ref, base / f"{ref}.json"]
    for c in candidates:
        if c.is_file():
            return validate_algebra(_read_json(c))
    A = fixture_algebra(ref)
    if A is not None:
        return A
    raise FileNotFoundError(f"cannot resolve algebra {ref!r} (tried files and fixtures)")


def load_homomorphism(source) -> Homomorphism:
    """Homomorphism from a path, a parsed dict or a fixture name.

    ``dom`` and ``cod`` may be embedded algebra objects, file paths, names of
    sibling ``<name>.json`` files, or fixture names.
    """
    if isinstance(source, Homomorphism):
        return source
    base = None
    if isinstance(source, dict):
        raw = source
    else:
        path = Path(source)
        if path.exists():
            raw = _read_json(path)
            base = path.parent
        else:
            homs = fixtures.homomorphisms()
            if str(source) in homs:
                return homs[str(source)]
            raise FileNotFoundError(f"no such file or fixture: {source}")
    if not isinstance(raw, dict):
        raise ValidationError("homomorphism description must be an object")
    for key in ("dom", "cod", "map"):
        if key not in raw:
            raise ValidationError(f"missing field {key!r}")
    A = _resolve_end(raw["dom"], base)
    B = _resolve_end(raw["cod"], base)
    return validate_homomorphism(A, B, raw["map"], name=str(raw.get("name", "")))


def homomorphism_to_dict(f: Homomorphism, embed: bool = True) -> dict:
    return {
        "name": f.name,
        "dom": algebra_to_dict(f.dom) if embed else f.dom.name,
        "cod": algebra_to_dict(f.cod) if embed else f.cod.name,
        "map": list(f.map),
    }


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
