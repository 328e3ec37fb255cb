"""
Finite Model Finder

Exhaustive enumeration of ZF* structures over the canonical element names
e1..en, filtered by a chosen set of finitely checkable axioms, and search
for the smallest model or countermodel of a closed formula.

Enumeration Order:
    1. Tagging: a binary counter over the elements, bit i set when e(i+1)
       is a set, so the all-PT tagging comes first.
    2. Membership: every subset of the legal pairs (m, c) with c a set,
       as a binary counter over the pairs in lexicographic order.
    3. Parthood: likewise over the pairs (p, w) of PTs.

The search space grows as 2^(n^2) per relation, so sizes are capped at
SIZE_CEILING and anything from SIZE_WARNING up is logged as expensive.
When reflexivity of parthood is imposed, only parthood relations that
already contain the diagonal are generated; the output sequence is the same
as generating everything and filtering.

Candidate checking may be spread over worker processes, one task per
tagging. Results come back through an order-preserving map, so the emitted
sequence is identical to the single-process one.
"""

import itertools
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

try:
    from .formula import (
        AXIOM_GROUPS, FINITELY_CHECKABLE, Formula, Not, axiom_sentence, constants, free_vars, resolve_axioms,
    )
    from .model import Structure
    from .semantics import Evaluator
    from .structured_events import StructuredEventLogger
except ImportError:
    from formula import (
        AXIOM_GROUPS, FINITELY_CHECKABLE, Formula, Not, axiom_sentence, constants, free_vars, resolve_axioms,
    )
    from model import Structure
    from semantics import Evaluator
    from structured_events import StructuredEventLogger

logger = logging.getLogger(os.getenv("LOGGER_NAME", "ZFSTAR"))

SIZE_CEILING = 5
SIZE_WARNING = 4
DEFAULT_MAX_SIZE = 3


class SearchError(ValueError):
    pass


class SearchMode(Enum):
    MODEL = "model"
    COUNTER = "counter"
    COUNT = "count"


@dataclass(frozen=True)
class SearchSpec:
    """What to search for: size bound, imposed axioms, target and mode."""
    max_size: int = DEFAULT_MAX_SIZE
    axioms: Tuple[str, ...] = AXIOM_GROUPS["pt"]
    target: Optional[Formula] = None
    mode: SearchMode = SearchMode.MODEL
    symmetry: bool = False
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "axioms", resolve_axioms(self.axioms))
        object.__setattr__(self, "mode", SearchMode(self.mode))
        _check_size(self.max_size)
        if self.workers < 1:
            raise SearchError(f"workers must be at least 1, got {self.workers}")
        if self.mode is not SearchMode.COUNT:
            if self.target is None:
                raise SearchError(f"mode {self.mode.value} needs a target formula")
            open_vars = free_vars(self.target)
            if open_vars:
                raise SearchError(f"target formula must be closed; free variables: {', '.join(sorted(open_vars))}")
            named = constants(self.target)
            if named:
                # generated structures only declare e1..en
                raise SearchError(f"target formula names constant(s) {', '.join(sorted(named))}; "
                                  f"searched structures declare only e1..e{self.max_size}")


@dataclass(frozen=True)
class SearchOutcome:
    mode: SearchMode
    structure: Optional[Structure] = None
    size: Optional[int] = None
    count: Optional[int] = None
    isomorphism_classes: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.structure is not None or self.mode is SearchMode.COUNT


def _check_size(size: int) -> None:
    if size < 1:
        raise SearchError(f"domain size must be at least 1, got {size}")
    if size > SIZE_CEILING:
        raise SearchError(f"domain size {size} exceeds the ceiling of {SIZE_CEILING}")


def element_names(size: int) -> Tuple[str, ...]:
    return tuple(f"e{i}" for i in range(1, size + 1))


def _subsets(slots: Sequence[Tuple[str, str]]) -> Iterator[Tuple[Tuple[str, str], ...]]:
    """Binary counter over slots; slot i is bit i."""
    for bits in range(1 << len(slots)):
        yield tuple(slot for i, slot in enumerate(slots) if bits >> i & 1)


def _tagging_candidates(size: int, mask: int, reflexive: bool) -> Iterator[Structure]:
    names = element_names(size)
    sets = tuple(n for i, n in enumerate(names) if mask >> i & 1)
    pts = tuple(n for i, n in enumerate(names) if not mask >> i & 1)
    member_slots = [(m, c) for m in names for c in names if c in sets]
    part_slots = [(p, w) for p in pts for w in pts]
    diagonal = frozenset((p, p) for p in pts) if reflexive else frozenset()
    free_slots = [pair for pair in part_slots if pair not in diagonal]
    for membership in _subsets(member_slots):
        for chosen in _subsets(free_slots):
            chosen = frozenset(chosen) | diagonal
            parthood = tuple(pair for pair in part_slots if pair in chosen)
            yield Structure(names, sets, membership, parthood)


def _check_tagging(task: Tuple[int, int, Tuple[str, ...]]) -> List[Structure]:
    """Worker entry point: every structure of one tagging that satisfies the axioms."""
    size, mask, axioms = task
    return list(_satisfying(size, mask, axioms))


def _satisfying(size: int, mask: int, axioms: Tuple[str, ...]) -> Iterator[Structure]:
    sentences = [axiom_sentence(name) for name in axioms]
    reflexive = "reflexivity_part" in axioms
    for s in _tagging_candidates(size, mask, reflexive):
        ev = Evaluator(s)
        if all(ev.holds(sentence, {}) for sentence in sentences):
            yield s


def canonical_key(s: Structure) -> Tuple:
    """Smallest encoding of s over all renamings of its elements; equal keys mean isomorphic structures."""
    index = {name: i for i, name in enumerate(s.elements)}
    n = len(s.elements)
    best = None
    for perm in itertools.permutations(range(n)):
        tags = tuple(sorted(perm[index[e]] for e in s.sets))
        membership = tuple(sorted((perm[index[m]], perm[index[c]]) for m, c in s.membership))
        parthood = tuple(sorted((perm[index[p]], perm[index[w]]) for p, w in s.parthood))
        key = (tags, membership, parthood)
        if best is None or key < best:
            best = key
    return (n,) + best


def _imposed(axioms: Iterable[str]) -> Tuple[str, ...]:
    names = resolve_axioms(axioms)
    unusable = [name for name in names if name not in FINITELY_CHECKABLE]
    if unusable:
        raise SearchError(f"axiom(s) without finite models cannot be imposed: {', '.join(unusable)}")
    return names


def enumerate_structures(size: int, axioms: Iterable[str] = (), symmetry: bool = False,
                         workers: int = 1) -> Iterator[Structure]:
    """
    Every structure of the given size satisfying the axioms, in canonical order.

    With symmetry, only the first structure of each isomorphism class is emitted.
    """
    _check_size(size)
    names = _imposed(axioms)
    if size >= SIZE_WARNING:
        logger.warning(f"Enumerating size {size}: the candidate space is very large")

    masks = range(1 << size)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = pool.map(_check_tagging, [(size, mask, names) for mask in masks])
            stream = itertools.chain.from_iterable(batches)
            yield from _deduplicated(stream) if symmetry else stream
        return

    stream = itertools.chain.from_iterable(_satisfying(size, mask, names) for mask in masks)
    yield from _deduplicated(stream) if symmetry else stream


def _deduplicated(stream: Iterable[Structure]) -> Iterator[Structure]:
    seen = set()
    for s in stream:
        key = canonical_key(s)
        if key not in seen:
            seen.add(key)
            yield s


def count_models(size: int, axioms: Iterable[str] = (), workers: int = 1) -> int:
    return sum(1 for _ in enumerate_structures(size, axioms, workers=workers))


def count_isomorphism_classes(size: int, axioms: Iterable[str] = (), workers: int = 1) -> int:
    return sum(1 for _ in enumerate_structures(size, axioms, symmetry=True, workers=workers))


def _smallest(spec: SearchSpec, target: Formula) -> Optional[Structure]:
    for size in range(1, spec.max_size + 1):
        for s in enumerate_structures(size, spec.axioms, workers=spec.workers):
            if Evaluator(s).holds(target, {}):
                logger.info(f"Found structure of size {size}")
                return s
        logger.debug(f"No structure of size {size}")
    return None


def find_model(spec: SearchSpec) -> Optional[Structure]:
    """Smallest structure (by size, then enumeration order) satisfying the axioms and the target."""
    if spec.target is None:
        raise SearchError("find_model needs a target formula")
    return _smallest(spec, spec.target)


def find_countermodel(spec: SearchSpec) -> Optional[Structure]:
    """Smallest structure satisfying the axioms in which the target is false."""
    if spec.target is None:
        raise SearchError("find_countermodel needs a target formula")
    return _smallest(spec, Not(spec.target))


def run_search(spec: SearchSpec, structured_logger: Optional[StructuredEventLogger] = None) -> SearchOutcome:
    """Dispatch on the spec's mode; count mode counts structures of exactly max_size elements."""
    start = time.monotonic()
    if spec.mode is SearchMode.COUNT:
        structures = list(enumerate_structures(spec.max_size, spec.axioms, workers=spec.workers))
        classes = None
        if spec.symmetry:
            classes = len({canonical_key(s) for s in structures})
        outcome = SearchOutcome(spec.mode, count=len(structures), size=spec.max_size, isomorphism_classes=classes)
    else:
        finder = find_model if spec.mode is SearchMode.MODEL else find_countermodel
        found = finder(spec)
        outcome = SearchOutcome(spec.mode, structure=found, size=found.size if found else None)

    duration_ms = int((time.monotonic() - start) * 1000)
    if structured_logger:
        structured_logger.log_model_search(spec.mode.value, spec.max_size, spec.axioms, outcome.found,
                                           size=outcome.size, count=outcome.count, duration_ms=duration_ms)
    return outcome
