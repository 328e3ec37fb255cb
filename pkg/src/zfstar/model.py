"""
Finite ZF* Structures

A structure interprets the ZF* language over a finite domain of named
elements. Each element is either a set or a physical thing (PT); the
structure stores the membership relation and the parthood relation
extensionally, exactly as given, without closing parthood under
reflexivity or transitivity (those are axioms to check, not storage rules).

Structural invariants (reported by validate):
    - element names are unique and nonempty
    - every membership pair's container is a set (PTs have no members)
    - both endpoints of every parthood pair are PTs
    - every pair component names a declared element

Model File Format:
    A single UTF-8 JSON object with exactly these keys:

        {"elements": ["alpha", "beta", "s1"],
         "sets": ["s1"],
         "membership": [["alpha", "s1"], ["beta", "s1"]],
         "parthood": [["alpha", "alpha"], ["beta", "beta"], ["beta", "alpha"]]}

    Element order is the canonical iteration order of every operation.
    Pair order is preserved by save.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, List, Tuple, Union

logger = logging.getLogger(os.getenv("LOGGER_NAME", "ZFSTAR"))

MODEL_KEYS = ("elements", "sets", "membership", "parthood")

Pair = Tuple[str, str]


class ModelError(ValueError):
    """Malformed model input or a query the structure cannot answer; carries any invariant violations."""

    def __init__(self, message: str, violations: List[str] = None):
        self.violations = list(violations or [])
        if self.violations:
            message = f"{message}: " + "; ".join(self.violations)
        super().__init__(message)


@dataclass(frozen=True)
class Structure:
    """Finite two-sorted interpretation: elements tagged set or PT, membership and parthood pairs."""
    elements: Tuple[str, ...]
    sets: Tuple[str, ...] = ()
    membership: Tuple[Pair, ...] = ()
    parthood: Tuple[Pair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "sets", tuple(self.sets))
        object.__setattr__(self, "membership", tuple(tuple(p) for p in self.membership))
        object.__setattr__(self, "parthood", tuple(tuple(p) for p in self.parthood))

    @cached_property
    def set_tags(self) -> FrozenSet[str]:
        return frozenset(self.sets)

    @cached_property
    def declared(self) -> FrozenSet[str]:
        return frozenset(self.elements)

    @cached_property
    def pts(self) -> Tuple[str, ...]:
        return tuple(e for e in self.elements if e not in self.set_tags)

    @cached_property
    def set_elements(self) -> Tuple[str, ...]:
        return tuple(e for e in self.elements if e in self.set_tags)

    @cached_property
    def member_pairs(self) -> FrozenSet[Pair]:
        return frozenset(self.membership)

    @cached_property
    def part_pairs(self) -> FrozenSet[Pair]:
        return frozenset(self.parthood)

    @cached_property
    def member_sets(self) -> Dict[str, FrozenSet[str]]:
        """element -> frozenset of its members (empty for PTs)."""
        collected: Dict[str, set] = {e: set() for e in self.elements}
        for member, container in self.membership:
            collected.setdefault(container, set()).add(member)
        return {e: frozenset(ms) for e, ms in collected.items()}

    @cached_property
    def part_sets(self) -> Dict[str, FrozenSet[str]]:
        """element -> frozenset of its parts (empty for sets)."""
        collected: Dict[str, set] = {e: set() for e in self.elements}
        for part, whole in self.parthood:
            collected.setdefault(whole, set()).add(part)
        return {e: frozenset(ps) for e, ps in collected.items()}

    @property
    def size(self) -> int:
        return len(self.elements)

    def declares(self, name: str) -> bool:
        return name in self.declared

    def is_set(self, name: str) -> bool:
        return name in self.set_tags

    def is_pt(self, name: str) -> bool:
        return name in self.declared and name not in self.set_tags

    def to_dict(self) -> Dict[str, list]:
        return {
            "elements": list(self.elements),
            "sets": list(self.sets),
            "membership": [list(p) for p in self.membership],
            "parthood": [list(p) for p in self.parthood],
        }


def validate(s: Structure) -> List[str]:
    """Every structural-invariant violation in s; an empty list means the structure is valid."""
    violations: List[str] = []

    seen = set()
    for name in s.elements:
        if not isinstance(name, str) or not name:
            violations.append(f"element name is empty or not a string: {name!r}")
            continue
        if name in seen:
            violations.append(f"duplicate element name: {name}")
        seen.add(name)

    for name in s.sets:
        if name not in s.declared:
            violations.append(f"set tag names undeclared element: {name}")

    for member, container in s.membership:
        undeclared = [x for x in (member, container) if x not in s.declared]
        for x in undeclared:
            violations.append(f"membership pair ({member}, {container}) names undeclared element {x}")
        if container in s.declared and container not in s.set_tags:
            violations.append(f"membership pair ({member}, {container}): container not a set")

    for part, whole in s.parthood:
        for x in (part, whole):
            if x not in s.declared:
                violations.append(f"parthood pair ({part}, {whole}) names undeclared element {x}")
            elif x in s.set_tags:
                violations.append(f"parthood pair ({part}, {whole}): parthood endpoint is a set ({x})")

    return violations


def require_valid(s: Structure) -> Structure:
    violations = validate(s)
    if violations:
        raise ModelError("invalid structure", violations)
    return s


def _pairs(raw, key: str) -> Tuple[Pair, ...]:
    if not isinstance(raw, list):
        raise ModelError(f"malformed model file: '{key}' must be a list of pairs")
    pairs = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
            raise ModelError(f"malformed model file: '{key}' entry {item!r} is not a pair of names")
        pairs.append((item[0], item[1]))
    return tuple(pairs)


def _names(raw, key: str) -> Tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise ModelError(f"malformed model file: '{key}' must be a list of names")
    return tuple(raw)


def load(text: str) -> Structure:
    """Parse and validate a model file."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError(f"malformed model file: {e}") from e
    if not isinstance(data, dict):
        raise ModelError("malformed model file: top level must be a JSON object")

    unknown = sorted(set(data) - set(MODEL_KEYS))
    missing = [k for k in MODEL_KEYS if k not in data]
    if unknown:
        raise ModelError(f"malformed model file: unknown key(s) {', '.join(unknown)}")
    if missing:
        raise ModelError(f"malformed model file: missing key(s) {', '.join(missing)}")

    s = Structure(
        elements=_names(data["elements"], "elements"),
        sets=_names(data["sets"], "sets"),
        membership=_pairs(data["membership"], "membership"),
        parthood=_pairs(data["parthood"], "parthood"),
    )
    require_valid(s)
    logger.debug(f"Loaded structure with {len(s.set_elements)} set(s) and {len(s.pts)} PT(s)")
    return s


def save(s: Structure) -> str:
    return json.dumps(s.to_dict(), indent=2) + "\n"


def load_file(path: Union[str, Path]) -> Structure:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ModelError(f"cannot read model file {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise ModelError(f"malformed model file {path}: not UTF-8 ({e})") from e
    return load(text)


def save_file(s: Structure, path: Union[str, Path]) -> None:
    Path(path).write_text(save(s), encoding="utf-8")
    logger.info(f"Wrote structure to {path}")


def _require_declared(s: Structure, e: str) -> None:
    if not s.declares(e):
        raise ModelError(f"undeclared element: {e}")


def require_pt(s: Structure, e: str) -> None:
    _require_declared(s, e)
    if s.is_set(e):
        raise ModelError(f"{e} is a set; expected a PT")


def require_set(s: Structure, e: str) -> None:
    _require_declared(s, e)
    if not s.is_set(e):
        raise ModelError(f"{e} is a PT; expected a set")


def parts(s: Structure, e: str) -> List[str]:
    """All parts of PT e, in declaration order."""
    require_pt(s, e)
    found = s.part_sets[e]
    return [x for x in s.elements if x in found]


def members(s: Structure, e: str) -> List[str]:
    """All members of e in declaration order; always empty for a PT."""
    _require_declared(s, e)
    found = s.member_sets[e]
    return [x for x in s.elements if x in found]
