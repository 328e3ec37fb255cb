"""
Unit Tests for the Parthood Calculus and Cantorian Classification

This test module validates axiom checking, disjointness, indiscernibility,
sums, irreducible parts, Cantorian verdicts, cardinals and classification,
both on handcrafted structures and exhaustively over small enumerated ones.

Test Coverage:
    - Axiom verdicts, falsifying witnesses, not-finitely-checkable axioms
    - Mutation detection, at least 20 mutations per kind over enumerated
      structures: reflexive pairs, transitive pairs, pairs a sum depends on
      (every parthood preorder on three PTs with a collecting set), and
      duplicated sets
    - Disjointness and indiscernibility, including sort errors
    - Indiscernibility partition and its precondition
    - Sums (including the vacuous case) and their agreement with the
      existence-of-sums axiom
    - Irreducible parts, including an empty result
    - Cantorian verdicts, uniqueness under extensionality, cardinals
    - Classification with and without a predicate, report invariants
    - Structured event emission

Test Suites:
    - TestAxiomChecking - verdicts and witnesses
    - TestMutationDetection - single mutations of axiom-satisfying structures
    - TestDisjointnessAndIndiscernibility - pairwise relations and classes
    - TestSums - physical sums
    - TestIrreducibleParts - irreducible parts
    - TestCantorian - is_cantorian and cardinal
    - TestClassify - classification reports
    - TestExhaustiveLaws - laws over enumerated structures of size <= 3
"""

import itertools
import unittest
from unittest.mock import Mock

try:
    from .finder import enumerate_structures
    from .formula import parse, parse_predicate
    from .mereology import (
        AxiomVerdict, Classification, MereologyError, cardinal, check_axioms, classify, disjoint, indiscernible,
        indiscernibility_classes, indiscernibility_relation, irreducible_parts, is_cantorian, sums, totality_of_pts,
    )
    from .model import ModelError, Structure, members, parts
    from .semantics import evaluate
except ImportError:
    from finder import enumerate_structures
    from formula import parse, parse_predicate
    from mereology import (
        AxiomVerdict, Classification, MereologyError, cardinal, check_axioms, classify, disjoint, indiscernible,
        indiscernibility_classes, indiscernibility_relation, irreducible_parts, is_cantorian, sums, totality_of_pts,
    )
    from model import ModelError, Structure, members, parts
    from semantics import evaluate


PT_AXIOMS = ("reflexivity_part", "transitivity_part", "existence_of_sums")

# alpha made of two photons, with a set collecting all three parts.
PHOTONS = Structure(
    elements=("alpha", "beta1", "beta2", "s1"),
    sets=("s1",),
    membership=(("alpha", "s1"), ("beta1", "s1"), ("beta2", "s1")),
    parthood=(("alpha", "alpha"), ("beta1", "beta1"), ("beta2", "beta2"), ("beta1", "alpha"), ("beta2", "alpha")),
)

PHOTONS_WITHOUT_SET = Structure(
    elements=("alpha", "beta1", "beta2"),
    parthood=PHOTONS.parthood,
)

# The set s = {beta1, beta2} whose only sum is alpha.
SUMMED = Structure(
    elements=("alpha", "beta1", "beta2", "s"),
    sets=("s",),
    membership=(("beta1", "s"), ("beta2", "s")),
    parthood=PHOTONS.parthood,
)


def _without_pair(s, pair):
    return Structure(s.elements, s.sets, s.membership, tuple(p for p in s.parthood if p != pair))


def _with_duplicate_set(s, original, name="duplicate"):
    copied = tuple((m, name) for m in members(s, original))
    return Structure(s.elements + (name,), s.sets + (name,), s.membership + copied, s.parthood)


def _with_set(s, collected, name="s"):
    return Structure(s.elements + (name,), s.sets + (name,), s.membership + tuple((m, name) for m in collected),
                     s.parthood)


def _structures(max_size, axioms=()):
    for size in range(1, max_size + 1):
        yield from enumerate_structures(size, axioms)


class TestAxiomChecking(unittest.TestCase):
    """Axiom verdicts and witnesses."""

    def test_reflexive_singleton_passes(self):
        s = Structure(("alpha",), (), (), (("alpha", "alpha"),))
        report = check_axioms(s)
        self.assertTrue(report.passed)
        self.assertEqual([e.axiom for e in report.entries], list(PT_AXIOMS))
        self.assertTrue(all(e.verdict is AxiomVerdict.PASS for e in report.entries))

    def test_singleton_without_parthood_fails_reflexivity(self):
        report = check_axioms(Structure(("alpha",)))
        self.assertFalse(report.passed)
        entry = report.entry("reflexivity_part")
        self.assertIs(entry.verdict, AxiomVerdict.FAIL)
        self.assertEqual(entry.witness, {"a": "alpha"})
        self.assertIs(report.entry("transitivity_part").verdict, AxiomVerdict.PASS)

    def test_extensional_duplicates_fail(self):
        s = Structure(("p", "s1", "s2"), ("s1", "s2"), (("p", "s1"), ("p", "s2")), (("p", "p"),))
        entry = check_axioms(s, ["extensionality"]).entry("extensionality")
        self.assertIs(entry.verdict, AxiomVerdict.FAIL)
        self.assertEqual(entry.witness, {"x": "s1", "y": "s2"})

    def test_not_finitely_checkable(self):
        report = check_axioms(Structure(("p",), (), (), (("p", "p"),)), ["infinity", "choice", "power_set"])
        self.assertTrue(report.passed)
        for entry in report.entries:
            self.assertIs(entry.verdict, AxiomVerdict.NOT_CHECKABLE)
            self.assertIsNone(entry.witness)

    def test_groups(self):
        report = check_axioms(PHOTONS, "pt+sets")
        self.assertEqual(len(report.entries), 6)
        self.assertIs(report.entry("empty_set").verdict, AxiomVerdict.FAIL)

    def test_invalid_structure_rejected(self):
        with self.assertRaises(ModelError):
            check_axioms(Structure(("a", "a")))

    def test_report_dict(self):
        data = check_axioms(Structure(("alpha",))).to_dict()
        self.assertFalse(data["passed"])
        self.assertEqual(data["axioms"][0],
                         {"axiom": "reflexivity_part", "verdict": "fail", "witness": {"a": "alpha"},
                          "falsified": "a <: a"})

    def test_structured_logger_receives_each_verdict(self):
        slog = Mock()
        check_axioms(PHOTONS, PT_AXIOMS, structured_logger=slog)
        self.assertEqual(slog.log_axiom_check.call_count, 3)


class TestMutationDetection(unittest.TestCase):
    """Single mutations of axiom-satisfying structures are flagged with a correct witness."""

    @classmethod
    def setUpClass(cls):
        cls.models = list(enumerate_structures(3, PT_AXIOMS))

    def test_removing_a_reflexive_pair(self):
        checked = 0
        for s in self.models:
            if not s.pts:
                continue
            p = s.pts[0]
            report = check_axioms(_without_pair(s, (p, p)), PT_AXIOMS)
            entry = report.entry("reflexivity_part")
            self.assertIs(entry.verdict, AxiomVerdict.FAIL)
            self.assertEqual(entry.witness, {"a": p})
            checked += 1
            if checked == 20:
                break
        self.assertEqual(checked, 20)

    def test_removing_a_transitive_pair(self):
        checked = 0
        for s in self.models:
            pairs = s.part_pairs
            for a, b in s.parthood:
                if a == b:
                    continue
                for c in s.pts:
                    if c in (a, b) or (b, c) not in pairs or (a, c) not in pairs:
                        continue
                    mutated = _without_pair(s, (a, c))
                    entry = check_axioms(mutated, PT_AXIOMS).entry("transitivity_part")
                    self.assertIs(entry.verdict, AxiomVerdict.FAIL)
                    w = entry.witness
                    self.assertIn((w["a"], w["b"]), mutated.part_pairs)
                    self.assertIn((w["b"], w["g"]), mutated.part_pairs)
                    self.assertNotIn((w["a"], w["g"]), mutated.part_pairs)
                    checked += 1
        self.assertGreaterEqual(checked, 20)

    def test_removing_the_pair_a_sum_depends_on(self):
        self.assertTrue(check_axioms(SUMMED, PT_AXIOMS).passed)
        mutated = _without_pair(SUMMED, ("beta1", "alpha"))
        report = check_axioms(mutated, PT_AXIOMS)
        entry = report.entry("existence_of_sums")
        self.assertIs(entry.verdict, AxiomVerdict.FAIL)
        self.assertEqual(entry.witness, {"x": "s"})
        self.assertEqual(sums(mutated, "s"), [])
        self.assertIs(report.entry("reflexivity_part").verdict, AxiomVerdict.PASS)
        self.assertIs(report.entry("transitivity_part").verdict, AxiomVerdict.PASS)

    def test_removing_a_pair_that_destroys_a_sum(self):
        # Every parthood preorder on three PTs, with one set collecting two or more of them.
        checked = 0
        for base in self.models:
            if base.set_elements:
                continue
            for size in (2, 3):
                for collected in itertools.combinations(base.pts, size):
                    s = _with_set(base, collected)
                    if not sums(s, "s"):
                        continue
                    self.assertTrue(check_axioms(s, ["existence_of_sums"]).passed)
                    for pair in s.parthood:
                        mutated = _without_pair(s, pair)
                        if sums(mutated, "s"):
                            continue
                        entry = check_axioms(mutated, PT_AXIOMS).entry("existence_of_sums")
                        self.assertIs(entry.verdict, AxiomVerdict.FAIL)
                        self.assertEqual(entry.witness, {"x": "s"})
                        checked += 1
        self.assertGreaterEqual(checked, 20)

    def test_duplicating_a_set(self):
        checked = 0
        for s in self.models:
            if not s.set_elements or not check_axioms(s, ["extensionality"]).passed:
                continue
            mutated = _with_duplicate_set(s, s.set_elements[0])
            entry = check_axioms(mutated, ["extensionality"]).entry("extensionality")
            self.assertIs(entry.verdict, AxiomVerdict.FAIL)
            x, y = entry.witness["x"], entry.witness["y"]
            self.assertNotEqual(x, y)
            self.assertEqual(mutated.member_sets[x], mutated.member_sets[y])
            self.assertEqual({x, y}, {s.set_elements[0], "duplicate"})
            checked += 1
            if checked == 20:
                break
        self.assertEqual(checked, 20)


class TestDisjointnessAndIndiscernibility(unittest.TestCase):
    """Pairwise relations and the indiscernibility partition."""

    def test_reflexive_pts_with_no_shared_part_are_disjoint(self):
        self.assertTrue(disjoint(PHOTONS, "beta1", "beta2"))
        self.assertFalse(disjoint(PHOTONS, "beta1", "alpha"))

    def test_pt_is_not_disjoint_from_itself(self):
        self.assertFalse(disjoint(PHOTONS, "alpha", "alpha"))

    def test_mutual_parthood_is_indiscernible(self):
        s = Structure(("a", "b"), (), (), (("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")))
        self.assertTrue(indiscernible(s, "a", "b"))
        self.assertEqual(indiscernibility_classes(s), [("a", "b")])

    def test_set_argument_rejected(self):
        with self.assertRaises(ModelError):
            disjoint(PHOTONS, "s1", "alpha")
        with self.assertRaises(ModelError):
            indiscernible(PHOTONS, "alpha", "s1")

    def test_photon_classes_are_singletons(self):
        self.assertEqual(indiscernibility_classes(PHOTONS), [("alpha",), ("beta1",), ("beta2",)])

    def test_chain_of_mutual_pairs_is_one_class(self):
        pts = ("a", "b", "c")
        s = Structure(pts, (), (), tuple((x, y) for x in pts for y in pts))
        self.assertEqual(indiscernibility_classes(s), [("a", "b", "c")])

    def test_classes_need_reflexivity(self):
        with self.assertRaises(MereologyError) as ctx:
            indiscernibility_classes(Structure(("a",)))
        self.assertIn("reflexivity_part", str(ctx.exception))

    def test_classes_need_transitivity(self):
        s = Structure(("a", "b", "c"), (), (),
                      (("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")))
        with self.assertRaises(MereologyError) as ctx:
            indiscernibility_classes(s)
        self.assertIn("transitivity_part", str(ctx.exception))


class TestSums(unittest.TestCase):
    """Physical sums."""

    def test_whole_is_the_sum_of_its_photons(self):
        self.assertEqual(sums(SUMMED, "s"), ["alpha"])

    def test_set_member_makes_every_pt_a_sum(self):
        s = Structure(("p", "q", "inner", "outer"), ("inner", "outer"), (("inner", "outer"), ("p", "outer")),
                      (("p", "p"), ("q", "q")))
        self.assertEqual(sums(s, "outer"), ["p", "q"])

    def test_sums_of_pt_rejected(self):
        with self.assertRaises(ModelError):
            sums(SUMMED, "alpha")


class TestIrreducibleParts(unittest.TestCase):
    """Irreducible parts."""

    def test_photons_are_irreducible(self):
        self.assertEqual(irreducible_parts(PHOTONS, "alpha"), ["beta1", "beta2"])
        self.assertEqual(irreducible_parts(PHOTONS, "beta1"), ["beta1"])

    def test_may_be_empty(self):
        cycle = Structure(("a", "b", "c"), (), (),
                          (("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c"), ("c", "a")))
        self.assertEqual(irreducible_parts(cycle, "c"), [])

    def test_indiscernible_parts(self):
        s = Structure(("b", "b2"), (), (), (("b", "b"), ("b2", "b2"), ("b", "b2"), ("b2", "b")))
        self.assertEqual(irreducible_parts(s, "b"), ["b", "b2"])

    def test_set_rejected(self):
        with self.assertRaises(ModelError):
            irreducible_parts(PHOTONS, "s1")


class TestCantorian(unittest.TestCase):
    """is_cantorian and cardinal."""

    def test_photon_structure_is_cantorian(self):
        verdict = is_cantorian(PHOTONS, "alpha")
        self.assertTrue(verdict.positive)
        self.assertEqual(verdict.witness, "s1")
        self.assertTrue(verdict.unique)
        self.assertEqual(cardinal(PHOTONS, "alpha"), 3)

    def test_without_the_set_is_not_cantorian(self):
        self.assertFalse(is_cantorian(PHOTONS_WITHOUT_SET, "alpha").positive)
        self.assertIsNone(cardinal(PHOTONS_WITHOUT_SET, "alpha"))

    def test_bare_reflexive_pt(self):
        s = Structure(("alpha",), (), (), (("alpha", "alpha"),))
        self.assertFalse(is_cantorian(s, "alpha").positive)

    def test_singleton_cardinal(self):
        s = Structure(("alpha", "s"), ("s",), (("alpha", "s"),), (("alpha", "alpha"),))
        self.assertEqual(cardinal(s, "alpha"), 1)

    def test_set_subject_rejected(self):
        with self.assertRaises(ModelError):
            is_cantorian(PHOTONS, "s1")

    def test_every_witness_reported_without_extensionality(self):
        s = _with_duplicate_set(PHOTONS, "s1", "s2")
        verdict = is_cantorian(s, "alpha")
        self.assertEqual(verdict.witnesses, ("s1", "s2"))
        self.assertFalse(verdict.unique)

    def test_totality_of_pts_is_reported(self):
        self.assertEqual(totality_of_pts(PHOTONS), ["s1"])
        self.assertEqual(totality_of_pts(PHOTONS_WITHOUT_SET), [])


class TestClassify(unittest.TestCase):
    """Classification reports."""

    def test_plain_cantorian(self):
        report = classify(PHOTONS, "alpha")
        self.assertIs(report.verdict, Classification.CLASSICAL)
        self.assertEqual(report.cardinal, 3)
        self.assertEqual(report.summary(), "alpha: cantorian (witness s1), cardinal 3")

    def test_plain_non_cantorian(self):
        report = classify(PHOTONS_WITHOUT_SET, "alpha")
        self.assertEqual(report.label, "non-cantorian")
        self.assertIsNone(report.witness)
        self.assertIsNone(report.cardinal)
        self.assertEqual(report.summary(), "alpha: non-cantorian, cardinal undefined")

    def test_trivial_predicate_reduces_to_cantorian(self):
        report = classify(PHOTONS, "alpha", parse_predicate("b: b = b"))
        self.assertEqual(report.label, "classical")
        self.assertEqual(report.witness, "s1")
        self.assertIsNone(report.cardinal)

    def test_non_cantorian_whole_is_quantal(self):
        report = classify(PHOTONS_WITHOUT_SET, "alpha", parse_predicate("b: T(b)"))
        self.assertIs(report.verdict, Classification.QUANTAL)
        self.assertEqual(report.summary(), "alpha: quantal with respect to b: T(b)")

    def test_only_sets_collect_for_classification(self):
        # Nothing is selected; the PTs have no members, but classification looks at sets only.
        report = classify(PHOTONS, "alpha", parse_predicate("b: Set(b)"))
        self.assertEqual(report.selected, ())
        self.assertIs(report.verdict, Classification.QUANTAL)
        self.assertTrue(evaluate(PHOTONS, parse("CantF[b: Set(b)]('alpha')")))

    def test_predicate_selecting_a_collected_subset(self):
        s = Structure(PHOTONS.elements + ("s2",), PHOTONS.sets + ("s2",),
                      PHOTONS.membership + (("beta1", "s2"),), PHOTONS.parthood)
        report = classify(s, "alpha", parse_predicate("b: b = 'beta1'"))
        self.assertTrue(report.positive)
        self.assertEqual(report.witness, "s2")
        self.assertEqual(report.selected, ("beta1",))
        self.assertEqual(report.summary(), "alpha: classical with respect to b: b = 'beta1' (witness s2)")

    def test_predicate_with_extra_free_variable(self):
        with self.assertRaises(MereologyError):
            classify(PHOTONS, "alpha", parse_predicate("b: b <: c"))

    def test_predicate_without_its_variable(self):
        with self.assertRaises(MereologyError):
            classify(PHOTONS, "alpha", parse_predicate("b: Set('s1')"))

    def test_annotation(self):
        report = classify(PHOTONS, "alpha").annotate("definite particle number")
        self.assertTrue(report.summary().endswith(" [definite particle number]"))
        self.assertEqual(report.to_dict()["interpretation"], "definite particle number")

    def test_structured_logger(self):
        slog = Mock()
        classify(PHOTONS, "alpha", structured_logger=slog)
        slog.log_classification.assert_called_once_with("alpha", True, None, "s1", 3)


class TestExhaustiveLaws(unittest.TestCase):
    """Laws over every enumerated structure of size <= 3."""

    def test_indiscernibility_is_an_equivalence(self):
        for s in _structures(3, ("reflexivity_part", "transitivity_part")):
            relation = indiscernibility_relation(s)
            pts = s.pts
            for a in pts:
                self.assertIn((a, a), relation)
                for b in pts:
                    self.assertEqual((a, b) in relation, (b, a) in relation)
                    for c in pts:
                        if (a, b) in relation and (b, c) in relation:
                            self.assertIn((a, c), relation)
            classes = indiscernibility_classes(s)
            flattened = [a for cls in classes for a in cls]
            self.assertEqual(sorted(flattened), sorted(pts))
            for cls in classes:
                for a in cls:
                    for b in pts:
                        self.assertEqual(b in cls, (a, b) in relation)

    def test_cantorian_witness_unique_under_extensionality(self):
        for s in _structures(3, ("extensionality",)):
            for a in s.pts:
                verdict = is_cantorian(s, a)
                if verdict.positive:
                    self.assertTrue(verdict.unique, msg=f"{s} {a}")

    def test_cardinal_defined_iff_cantorian(self):
        for s in _structures(3):
            for a in s.pts:
                verdict = is_cantorian(s, a)
                n = cardinal(s, a)
                if verdict.positive:
                    self.assertEqual(n, len(parts(s, a)))
                else:
                    self.assertIsNone(n)

    def test_trivial_predicate_agrees_with_cantorian(self):
        trivial = parse_predicate("b: b = b")
        for s in _structures(3):
            for a in s.pts:
                self.assertEqual(classify(s, a, trivial).positive, is_cantorian(s, a).positive)

    def test_report_invariants(self):
        for s in _structures(2):
            for a in s.pts:
                report = classify(s, a)
                self.assertEqual(report.witness is not None, report.positive)
                self.assertEqual(report.cardinal is not None, report.positive)
                if report.positive:
                    self.assertEqual(report.cardinal, len(s.member_sets[report.witness]))

    def test_no_pt_is_disjoint_from_itself_under_reflexivity(self):
        for s in _structures(3, ("reflexivity_part",)):
            for a in s.pts:
                self.assertFalse(disjoint(s, a, a))

    def test_sums_agree_with_existence_axiom(self):
        for s in _structures(3):
            entry = check_axioms(s, ["existence_of_sums"]).entry("existence_of_sums")
            pt_only = [x for x in s.set_elements
                       if s.member_sets[x] and all(s.is_pt(m) for m in s.member_sets[x])]
            every_set_has_a_sum = all(sums(s, x) for x in pt_only)
            self.assertEqual(entry.verdict is AxiomVerdict.PASS, every_set_has_a_sum, msg=str(s))
            if entry.verdict is AxiomVerdict.FAIL:
                self.assertIn(entry.witness["x"], pt_only)
                self.assertEqual(sums(s, entry.witness["x"]), [])


if __name__ == '__main__':
    unittest.main()
