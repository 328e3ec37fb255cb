"""
Tarskian satisfaction for ZF* formulas in finite structures.

Quantifiers range over the whole domain (sets and PTs alike); sorted
quantification is already desugared by the parser. Atoms whose arguments
have the wrong sort are simply false: ``x in p`` with a PT container and
``a <: b`` with a set endpoint have no pair in the relation, so no special
casing is needed.

Macros are evaluated natively against the relations instead of through
their expansions. The two are required to agree everywhere, and the test
suite compares them over exhaustively enumerated structures.
"""

import logging
import os
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

try:
    from .formula import (
        And, Const, Equal, Exists, ForAll, Formula, Iff, Implies, Macro, Member, Not, Or, Part, SetPred, Term, Var,
        constants, free_vars,
    )
    from .model import Structure
except ImportError:
    from formula import (
        And, Const, Equal, Exists, ForAll, Formula, Iff, Implies, Macro, Member, Not, Or, Part, SetPred, Term, Var,
        constants, free_vars,
    )
    from model import Structure

logger = logging.getLogger(os.getenv("LOGGER_NAME", "ZFSTAR"))

Environment = Mapping[str, str]


class EvaluationError(ValueError):
    pass


class Evaluator:
    """Structural-recursion evaluator bound to one structure. Performs no input checks; see evaluate()."""

    def __init__(self, s: Structure):
        self.s = s
        self.members = s.member_sets
        self.parts = s.part_sets

    def value(self, t: Term, env: Environment) -> str:
        if isinstance(t, Const):
            return t.name
        try:
            return env[t.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {t.name}") from None

    def holds(self, f: Formula, env: Environment) -> bool:
        s = self.s
        if isinstance(f, Equal):
            return self.value(f.left, env) == self.value(f.right, env)
        if isinstance(f, Member):
            return (self.value(f.element, env), self.value(f.container, env)) in s.member_pairs
        if isinstance(f, Part):
            return (self.value(f.part, env), self.value(f.whole, env)) in s.part_pairs
        if isinstance(f, SetPred):
            return self.value(f.term, env) in s.set_tags
        if isinstance(f, Not):
            return not self.holds(f.body, env)
        if isinstance(f, And):
            return self.holds(f.left, env) and self.holds(f.right, env)
        if isinstance(f, Or):
            return self.holds(f.left, env) or self.holds(f.right, env)
        if isinstance(f, Implies):
            return not self.holds(f.left, env) or self.holds(f.right, env)
        if isinstance(f, Iff):
            return self.holds(f.left, env) == self.holds(f.right, env)
        if isinstance(f, ForAll):
            return all(self.holds(f.body, {**env, f.var: d}) for d in s.elements)
        if isinstance(f, Exists):
            return any(self.holds(f.body, {**env, f.var: d}) for d in s.elements)
        return self.macro(f, env)

    # -- defined predicates -------------------------------------------------

    def disjoint(self, a: str, b: str) -> bool:
        return not (self.parts[a] & self.parts[b] & frozenset(self.s.pts))

    def indiscernible(self, a: str, b: str) -> bool:
        return (a, b) in self.s.part_pairs and (b, a) in self.s.part_pairs

    def is_sum(self, x: str, a: str) -> bool:
        s = self.s
        if x not in s.set_tags or any(m in s.set_tags for m in self.members[x]):
            return True
        pt_members = [b for b in s.pts if (b, x) in s.member_pairs]
        return all(
            self.disjoint(g, a) == all(self.disjoint(b, g) for b in pt_members)
            for g in s.pts
        )

    def irreducible(self, a: str, b: str) -> bool:
        if (a, b) not in self.s.part_pairs:
            return False
        return all((a, g) in self.s.part_pairs for g in self.parts[a] if g not in self.s.set_tags)

    def collected(self, target: FrozenSet[str]) -> bool:
        """Some element (set or not) has exactly ``target`` as its members."""
        return any(ms == target for ms in self.members.values())

    def selected_parts(self, m: Macro, env: Environment, whole: str) -> FrozenSet[str]:
        return frozenset(b for b in self.parts[whole] if self.holds(m.body, {**env, m.binder: b}))

    def macro(self, m: Macro, env: Environment) -> bool:
        args = [self.value(t, env) for t in m.args]
        name = m.name
        if name == "T":
            return args[0] not in self.s.set_tags
        if name == "Disj":
            return self.disjoint(*args)
        if name == "Ind":
            return self.indiscernible(*args)
        if name == "Sum":
            return self.is_sum(*args)
        if name == "Cant":
            return self.collected(self.parts[args[0]])
        if name == "Card":
            a, z = args
            return self.members[z] == self.parts[a]
        if name == "Irr":
            return self.irreducible(*args)
        if name == "SetOf":
            selected = frozenset(d for d in self.s.elements if self.holds(m.body, {**env, m.binder: d}))
            return self.members[args[0]] == selected
        found = self.collected(self.selected_parts(m, env, args[0]))
        return not found if name == "QP" else found


def _check_constants(s: Structure, f: Formula) -> None:
    undeclared = sorted(c for c in constants(f) if not s.declares(c))
    if undeclared:
        raise EvaluationError(f"undeclared constant(s): {', '.join(undeclared)}")


def _check_inputs(s: Structure, f: Formula, env: Environment) -> None:
    for var, element in env.items():
        if not s.declares(element):
            raise EvaluationError(f"environment binds {var} to undeclared element {element!r}")
    unbound = sorted(free_vars(f) - set(env))
    if unbound:
        raise EvaluationError(f"unbound free variable(s): {', '.join(unbound)}")
    _check_constants(s, f)


def evaluate(s: Structure, f: Formula, env: Optional[Environment] = None) -> bool:
    """
    Classical two-valued satisfaction of f in s under env.

    Raises:
        EvaluationError: a free variable of f is unbound, env names an
            undeclared element, or f mentions an undeclared constant
    """
    env = dict(env or {})
    _check_inputs(s, f, env)
    return Evaluator(s).holds(f, env)


def satisfying_assignments(s: Structure, f: Formula, var: str) -> List[str]:
    """Every element d, in declaration order, with f true under {var: d}."""
    fv = free_vars(f)
    if fv != {var}:
        raise EvaluationError(f"expected exactly one free variable {var}; found {sorted(fv) or 'none'}")
    if not s.elements:
        _check_constants(s, f)
        return []
    _check_inputs(s, f, {var: s.elements[0]})
    ev = Evaluator(s)
    return [d for d in s.elements if ev.holds(f, {var: d})]


def falsifying_witness(s: Structure, f: Formula, env: Optional[Environment] = None) -> Tuple[Dict[str, str], Formula]:
    """
    Follow the universal structure of a false formula down to a falsified subformula.

    Descends through ForAll (binding the first falsifying element), through
    an Implies whose antecedent holds, and into the false conjunct of an And.
    The returned subformula evaluates to False under the returned environment.
    """
    env = dict(env or {})
    ev = Evaluator(s)
    node = f
    while True:
        if isinstance(node, ForAll):
            for d in s.elements:
                extended = {**env, node.var: d}
                if not ev.holds(node.body, extended):
                    env, node = extended, node.body
                    break
            else:
                return env, node
        elif isinstance(node, Implies) and ev.holds(node.left, env):
            node = node.right
        elif isinstance(node, And) and not ev.holds(node.left, env):
            node = node.left
        elif isinstance(node, And) and not ev.holds(node.right, env):
            node = node.right
        else:
            return env, node
