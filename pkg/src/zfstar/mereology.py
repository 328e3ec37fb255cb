"""
Parthood Calculus and Cantorian Classification

Executable operations over finite ZF* structures for the part of the
theory that deals with physical things:

    - axiom checking with falsifying witnesses (parthood axioms and the
      finitely checkable set axioms)
    - disjointness, indiscernibility and the indiscernibility partition
    - physical sums of sets of PTs and irreducible parts
    - Cantorian verdicts: whether the parts of a PT form a set, the cardinal
      of a Cantorian PT, and the classical/quantal verdict of a PT with
      respect to a property of its parts

A PT is Cantorian when some set has exactly its parts as members. Because
parthood is reflexive, a PT counts among its own parts, so a whole made of
n constituents has cardinal n + 1. A non-Cantorian PT has no cardinal at
all; that is a verdict, not an error, and is returned as ``None``.
"""

import logging
import os
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Iterable, List, Optional, Set, Tuple

try:
    from .formula import (
        AXIOM_GROUPS, FINITELY_CHECKABLE, Formula, Macro, Predicate, Var,
        axiom_sentence, free_vars, render, render_predicate, resolve_axioms,
    )
    from .model import Structure, parts, require_pt, require_set, require_valid
    from .semantics import Evaluator, evaluate, falsifying_witness
    from .structured_events import StructuredEventLogger
except ImportError:
    from formula import (
        AXIOM_GROUPS, FINITELY_CHECKABLE, Formula, Macro, Predicate, Var,
        axiom_sentence, free_vars, render, render_predicate, resolve_axioms,
    )
    from model import Structure, parts, require_pt, require_set, require_valid
    from semantics import Evaluator, evaluate, falsifying_witness
    from structured_events import StructuredEventLogger

logger = logging.getLogger(os.getenv("LOGGER_NAME", "ZFSTAR"))

DEFAULT_AXIOMS = AXIOM_GROUPS["pt"]


class MereologyError(ValueError):
    pass


class AxiomVerdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_CHECKABLE = "not-finitely-checkable"


@dataclass(frozen=True)
class AxiomEntry:
    """
    Verdict for one axiom.

    For a failure, ``witness`` binds the universally quantified variables
    of the axiom to elements and ``falsified`` is the subformula that is
    false under that binding.
    """
    axiom: str
    verdict: AxiomVerdict
    witness: Optional[Dict[str, str]] = None
    falsified: Optional[Formula] = None

    def to_dict(self) -> Dict:
        return {
            "axiom": self.axiom,
            "verdict": self.verdict.value,
            "witness": dict(self.witness) if self.witness is not None else None,
            "falsified": render(self.falsified) if self.falsified is not None else None,
        }


@dataclass(frozen=True)
class AxiomReport:
    entries: Tuple[AxiomEntry, ...]

    @property
    def passed(self) -> bool:
        """No axiom failed; not-finitely-checkable entries do not count against."""
        return all(e.verdict is not AxiomVerdict.FAIL for e in self.entries)

    @property
    def failures(self) -> List[AxiomEntry]:
        return [e for e in self.entries if e.verdict is AxiomVerdict.FAIL]

    def entry(self, axiom: str) -> AxiomEntry:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def to_dict(self) -> Dict:
        return {"passed": self.passed, "axioms": [e.to_dict() for e in self.entries]}


def check_axioms(s: Structure, axioms: Iterable[str] = DEFAULT_AXIOMS,
                 structured_logger: Optional[StructuredEventLogger] = None) -> AxiomReport:
    """
    Check each named axiom (or group) against s.

    Axioms without finite models are reported as not-finitely-checkable
    and never evaluated.

    Raises:
        ModelError: s violates a structural invariant
        UnknownAxiomError: an axiom name is not known
    """
    require_valid(s)
    entries = []
    for name in resolve_axioms(axioms):
        if name not in FINITELY_CHECKABLE:
            entry = AxiomEntry(name, AxiomVerdict.NOT_CHECKABLE)
        else:
            sentence = axiom_sentence(name)
            if evaluate(s, sentence):
                entry = AxiomEntry(name, AxiomVerdict.PASS)
            else:
                witness, falsified = falsifying_witness(s, sentence)
                entry = AxiomEntry(name, AxiomVerdict.FAIL, witness, falsified)
                logger.debug(f"Axiom {name} fails with witness {witness}")
        entries.append(entry)
        if structured_logger:
            structured_logger.log_axiom_check(name, entry.verdict.value, entry.witness, s.size)
    return AxiomReport(tuple(entries))


# ---------------------------------------------------------------------------
# Disjointness, indiscernibility, sums, irreducible parts
# ---------------------------------------------------------------------------

def _macro_holds(s: Structure, name: str, *args: str) -> bool:
    params = [f"arg{i}" for i in range(len(args))]
    return evaluate(s, Macro(name, tuple(Var(p) for p in params)), dict(zip(params, args)))


def disjoint(s: Structure, a: str, b: str) -> bool:
    require_pt(s, a)
    require_pt(s, b)
    return _macro_holds(s, "Disj", a, b)


def indiscernible(s: Structure, a: str, b: str) -> bool:
    require_pt(s, a)
    require_pt(s, b)
    return _macro_holds(s, "Ind", a, b)


def indiscernibility_relation(s: Structure) -> Set[Tuple[str, str]]:
    ev = Evaluator(s)
    return {(a, b) for a in s.pts for b in s.pts if ev.indiscernible(a, b)}


def indiscernibility_classes(s: Structure) -> List[Tuple[str, ...]]:
    """
    Partition the PTs by indiscernibility, classes and members in declaration order.

    Raises:
        MereologyError: reflexivity or transitivity of parthood fails, so
            indiscernibility is not an equivalence
    """
    report = check_axioms(s, ("reflexivity_part", "transitivity_part"))
    for failure in report.failures:
        raise MereologyError(
            f"indiscernibility is not an equivalence: axiom {failure.axiom} fails "
            f"(witness {failure.witness})")
    ev = Evaluator(s)
    classes: List[Tuple[str, ...]] = []
    assigned: Set[str] = set()
    for a in s.pts:
        if a in assigned:
            continue
        cls = tuple(b for b in s.pts if ev.indiscernible(a, b))
        assigned.update(cls)
        classes.append(cls)
    return classes


def sums(s: Structure, x: str) -> List[str]:
    """
    Every PT that is a sum of the set x.

    When x has a member that is a set the sum condition is vacuous and every
    PT is returned.
    """
    require_set(s, x)
    return [a for a in s.pts if _macro_holds(s, "Sum", x, a)]


def irreducible_parts(s: Structure, b: str) -> List[str]:
    """Parts of b all of whose parts are indiscernible from them. May be empty."""
    require_pt(s, b)
    return [a for a in s.pts if _macro_holds(s, "Irr", a, b)]


def totality_of_pts(s: Structure) -> List[str]:
    """Sets whose members are exactly the PTs of s. Reported only; nothing is asserted about it."""
    every_pt = frozenset(s.pts)
    return [y for y in s.set_elements if s.member_sets[y] == every_pt]


# ---------------------------------------------------------------------------
# Cantorian verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CantorianVerdict:
    subject: str
    witnesses: Tuple[str, ...]

    @property
    def positive(self) -> bool:
        return bool(self.witnesses)

    @property
    def witness(self) -> Optional[str]:
        return self.witnesses[0] if self.witnesses else None

    @property
    def unique(self) -> bool:
        return len(self.witnesses) == 1


def _collecting_sets(s: Structure, selected: Iterable[str]) -> Tuple[str, ...]:
    target = frozenset(selected)
    return tuple(y for y in s.set_elements if s.member_sets[y] == target)


def is_cantorian(s: Structure, a: str) -> CantorianVerdict:
    """
    Whether some set has exactly the parts of a as its members.

    All collecting sets are returned. When Extensionality holds there is at
    most one; more than one under Extensionality is logged as an error.
    """
    require_pt(s, a)
    witnesses = _collecting_sets(s, parts(s, a))
    verdict = CantorianVerdict(a, witnesses)
    if len(witnesses) > 1 and evaluate(s, axiom_sentence("extensionality")):
        logger.error(f"Cantorian witness of {a} is not unique under extensionality: {witnesses}")
    return verdict


def cardinal(s: Structure, a: str) -> Optional[int]:
    """Number of members of the set collecting the parts of a, or None when a is not Cantorian."""
    verdict = is_cantorian(s, a)
    if not verdict.positive:
        return None
    return len(s.member_sets[verdict.witness])


class Classification(Enum):
    CLASSICAL = "cantorian/classical"
    QUANTAL = "non-cantorian/quantal"


@dataclass(frozen=True)
class ClassificationReport:
    """
    Verdict of classify.

    Without a predicate this is the plain Cantorian verdict and a positive
    verdict carries the cardinal. With a predicate the verdict says whether
    the parts satisfying it form a set (classical) or not (quantal).
    """
    subject: str
    verdict: Classification
    predicate: Optional[str] = None
    witness: Optional[str] = None
    cardinal: Optional[int] = None
    selected: Tuple[str, ...] = ()
    interpretation: Optional[str] = None

    @property
    def positive(self) -> bool:
        return self.verdict is Classification.CLASSICAL

    @property
    def label(self) -> str:
        if self.predicate is None:
            return "cantorian" if self.positive else "non-cantorian"
        return "classical" if self.positive else "quantal"

    def summary(self) -> str:
        if self.predicate is None:
            if self.positive:
                text = f"{self.subject}: cantorian (witness {self.witness}), cardinal {self.cardinal}"
            else:
                text = f"{self.subject}: non-cantorian, cardinal undefined"
        else:
            text = f"{self.subject}: {self.label} with respect to {self.predicate}"
            if self.positive:
                text += f" (witness {self.witness})"
        if self.interpretation:
            text += f" [{self.interpretation}]"
        return text

    def to_dict(self) -> Dict:
        return {
            "subject": self.subject,
            "predicate": self.predicate,
            "verdict": self.label,
            "positive": self.positive,
            "witness": self.witness,
            "cardinal": self.cardinal,
            "selected": list(self.selected),
            "interpretation": self.interpretation,
        }

    def annotate(self, interpretation: str) -> "ClassificationReport":
        return replace(self, interpretation=interpretation)


def classify(s: Structure, a: str, predicate: Optional[Predicate] = None,
             structured_logger: Optional[StructuredEventLogger] = None) -> ClassificationReport:
    """
    Classical or quantal verdict for PT a, optionally with respect to a predicate on its parts.

    Args:
        s: a valid structure
        a: the PT under examination
        predicate: ``b: F`` selecting parts; F must have b as its only free variable

    Raises:
        MereologyError: the predicate has the wrong free variables
        ModelError: a is not a PT of s
    """
    require_pt(s, a)
    if predicate is None:
        verdict = is_cantorian(s, a)
        selected = tuple(parts(s, a))
        report = ClassificationReport(
            subject=a,
            verdict=Classification.CLASSICAL if verdict.positive else Classification.QUANTAL,
            witness=verdict.witness,
            cardinal=len(s.member_sets[verdict.witness]) if verdict.positive else None,
            selected=selected,
        )
    else:
        fv = free_vars(predicate.body)
        if fv != {predicate.var}:
            raise MereologyError(
                f"predicate must have exactly one free variable {predicate.var}; found {sorted(fv) or 'none'}")
        ev = Evaluator(s)
        evaluate(s, predicate.body, {predicate.var: a})  # rejects undeclared constants
        selected = tuple(b for b in parts(s, a) if ev.holds(predicate.body, {predicate.var: b}))
        witnesses = _collecting_sets(s, selected)
        report = ClassificationReport(
            subject=a,
            verdict=Classification.CLASSICAL if witnesses else Classification.QUANTAL,
            predicate=render_predicate(predicate),
            witness=witnesses[0] if witnesses else None,
            selected=selected,
        )
    if structured_logger:
        structured_logger.log_classification(a, report.positive, report.predicate, report.witness, report.cardinal)
    return report
