"""
Unit Tests for Finite ZF* Structures

This test module validates the Structure type, the structural invariants
reported by validate, the JSON model file format and the element queries.

Test Coverage:
    - Sorting of elements into sets and PTs, in declaration order
    - Every structural-invariant violation and its message
    - Model file loading: unknown keys, missing keys, malformed pairs, bad JSON
    - save/load preserving element and pair order, on generated structures
    - validate reporting every single-step mutation of a valid structure
    - Files that are not UTF-8
    - parts/members queries and their errors on sets, PTs and undeclared names
    - File helpers on a temporary directory

Test Suites:
    - TestStructure - derived views of a structure
    - TestValidation - invariant violations
    - TestModelFile - JSON load/save
    - TestQueries - parts and members
"""

import json
import os
import tempfile
import unittest

from hypothesis import given, settings, strategies as st

try:
    from .model import ModelError, Structure, load, load_file, members, parts, require_valid, save, save_file, validate
except ImportError:
    from model import ModelError, Structure, load, load_file, members, parts, require_valid, save, save_file, validate


ALPHA_WITH_PARTS = Structure(
    elements=("alpha", "beta", "s1"),
    sets=("s1",),
    membership=(("alpha", "s1"), ("beta", "s1")),
    parthood=(("alpha", "alpha"), ("beta", "beta"), ("beta", "alpha")),
)

MODEL_TEXT = """{
  "elements": ["alpha", "beta", "s1"],
  "sets": ["s1"],
  "membership": [["alpha", "s1"], ["beta", "s1"]],
  "parthood": [["alpha", "alpha"], ["beta", "beta"], ["beta", "alpha"]]
}
"""


@st.composite
def valid_structures(draw, max_elements=5):
    """Structures satisfying every invariant; names come from a-h so 'zz' is never declared."""
    names = draw(st.lists(st.text(alphabet="abcdefgh", min_size=1, max_size=3),
                          max_size=max_elements, unique=True))
    tags = draw(st.lists(st.booleans(), min_size=len(names), max_size=len(names)))
    sets = [x for x, tagged in zip(names, tags) if tagged]
    pts = [x for x, tagged in zip(names, tags) if not tagged]
    membership = []
    if sets:
        membership = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(sets)), unique=True))
    parthood = []
    if pts:
        parthood = draw(st.lists(st.tuples(st.sampled_from(pts), st.sampled_from(pts)), unique=True))
    return Structure(names, sets, membership, parthood)


def _single_mutations(s):
    """(label, mutated structure, violation validate must report) for each applicable one-step mutation."""
    names, sets, pts = s.elements, s.set_elements, s.pts
    out = [("tag an undeclared name", Structure(names, sets + ("zz",), s.membership, s.parthood),
            "set tag names undeclared element: zz")]
    if names:
        n = names[0]
        out.append(("duplicate a name", Structure(names + (n,), sets, s.membership, s.parthood),
                    f"duplicate element name: {n}"))
    if sets:
        c = sets[0]
        out.append(("undeclared member", Structure(names, sets, s.membership + (("zz", c),), s.parthood),
                    f"membership pair (zz, {c}) names undeclared element zz"))
        out.append(("set as a part", Structure(names, sets, s.membership, s.parthood + ((c, c),)),
                    f"parthood pair ({c}, {c}): parthood endpoint is a set ({c})"))
    if pts:
        p = pts[0]
        out.append(("PT as a container", Structure(names, sets, s.membership + ((names[0], p),), s.parthood),
                    f"membership pair ({names[0]}, {p}): container not a set"))
        out.append(("undeclared whole", Structure(names, sets, s.membership, s.parthood + ((p, "zz"),)),
                    f"parthood pair ({p}, zz) names undeclared element zz"))
    if s.parthood:
        part, whole = s.parthood[0]
        out.append(("retag a part as a set", Structure(names, sets + (part,), s.membership, s.parthood),
                    f"parthood pair ({part}, {whole}): parthood endpoint is a set ({part})"))
    if s.membership:
        member, container = s.membership[0]
        untagged = tuple(x for x in sets if x != container)
        out.append(("retag a container as a PT", Structure(names, untagged, s.membership, s.parthood),
                    f"membership pair ({member}, {container}): container not a set"))
    return out


class TestStructure(unittest.TestCase):
    """Derived views of a structure."""

    def test_sorts(self):
        self.assertEqual(ALPHA_WITH_PARTS.pts, ("alpha", "beta"))
        self.assertEqual(ALPHA_WITH_PARTS.set_elements, ("s1",))
        self.assertTrue(ALPHA_WITH_PARTS.is_set("s1"))
        self.assertTrue(ALPHA_WITH_PARTS.is_pt("beta"))
        self.assertFalse(ALPHA_WITH_PARTS.is_pt("gamma"))
        self.assertEqual(ALPHA_WITH_PARTS.size, 3)

    def test_lists_are_frozen_to_tuples(self):
        s = Structure(["a"], [], [], [["a", "a"]])
        self.assertEqual(s.elements, ("a",))
        self.assertEqual(s.parthood, (("a", "a"),))
        self.assertEqual(s, Structure(("a",), (), (), (("a", "a"),)))
        self.assertEqual(hash(s), hash(Structure(("a",), (), (), (("a", "a"),))))

    def test_relation_views(self):
        self.assertEqual(ALPHA_WITH_PARTS.member_sets["s1"], frozenset({"alpha", "beta"}))
        self.assertEqual(ALPHA_WITH_PARTS.member_sets["alpha"], frozenset())
        self.assertEqual(ALPHA_WITH_PARTS.part_sets["alpha"], frozenset({"alpha", "beta"}))
        self.assertIn(("beta", "alpha"), ALPHA_WITH_PARTS.part_pairs)

    def test_to_dict(self):
        self.assertEqual(ALPHA_WITH_PARTS.to_dict(), json.loads(MODEL_TEXT))


class TestValidation(unittest.TestCase):
    """Structural invariants."""

    def test_valid_structure(self):
        self.assertEqual(validate(ALPHA_WITH_PARTS), [])
        self.assertIs(require_valid(ALPHA_WITH_PARTS), ALPHA_WITH_PARTS)

    def test_empty_structure_is_valid(self):
        self.assertEqual(validate(Structure(())), [])

    def test_duplicate_name(self):
        violations = validate(Structure(("a", "a")))
        self.assertEqual(violations, ["duplicate element name: a"])

    def test_empty_name(self):
        violations = validate(Structure(("",)))
        self.assertEqual(len(violations), 1)
        self.assertIn("empty", violations[0])

    def test_pt_cannot_have_members(self):
        violations = validate(Structure(("a", "b"), (), (("a", "b"),)))
        self.assertEqual(violations, ["membership pair (a, b): container not a set"])

    def test_parthood_between_pts_only(self):
        violations = validate(Structure(("a", "s"), ("s",), (), (("a", "s"),)))
        self.assertEqual(violations, ["parthood pair (a, s): parthood endpoint is a set (s)"])

    def test_undeclared_names(self):
        s = Structure(("a", "s"), ("s", "t"), (("x", "s"),), (("a", "y"),))
        violations = validate(s)
        self.assertIn("set tag names undeclared element: t", violations)
        self.assertIn("membership pair (x, s) names undeclared element x", violations)
        self.assertIn("parthood pair (a, y) names undeclared element y", violations)
        self.assertEqual(len(violations), 3)

    def test_require_valid_carries_violations(self):
        with self.assertRaises(ModelError) as ctx:
            require_valid(Structure(("a", "a")))
        self.assertEqual(ctx.exception.violations, ["duplicate element name: a"])
        self.assertIn("duplicate element name: a", str(ctx.exception))

    def test_parthood_is_not_closed_on_storage(self):
        s = Structure(("a", "b"), (), (), (("a", "b"),))
        self.assertEqual(validate(s), [])
        self.assertNotIn(("a", "a"), s.part_pairs)

    @settings(max_examples=200, deadline=None)
    @given(valid_structures())
    def test_generated_structures_are_valid(self, s):
        self.assertEqual(validate(s), [])

    @settings(max_examples=200, deadline=None)
    @given(valid_structures())
    def test_every_single_mutation_is_reported(self, s):
        for label, mutated, expected in _single_mutations(s):
            self.assertIn(expected, validate(mutated), label)


class TestModelFile(unittest.TestCase):
    """JSON model files."""

    def test_load(self):
        self.assertEqual(load(MODEL_TEXT), ALPHA_WITH_PARTS)

    @settings(max_examples=200, deadline=None)
    @given(valid_structures())
    def test_save_load_round_trip(self, s):
        self.assertEqual(load(save(s)), s)

    def test_save_is_loadable_and_ordered(self):
        text = save(ALPHA_WITH_PARTS)
        self.assertTrue(text.endswith("\n"))
        self.assertEqual(load(text), ALPHA_WITH_PARTS)
        self.assertEqual(json.loads(text)["parthood"], [["alpha", "alpha"], ["beta", "beta"], ["beta", "alpha"]])

    def test_unknown_key(self):
        data = json.loads(MODEL_TEXT)
        data["colour"] = "blue"
        with self.assertRaises(ModelError) as ctx:
            load(json.dumps(data))
        self.assertIn("unknown key(s) colour", str(ctx.exception))

    def test_missing_key(self):
        data = json.loads(MODEL_TEXT)
        del data["parthood"]
        with self.assertRaises(ModelError) as ctx:
            load(json.dumps(data))
        self.assertIn("missing key(s) parthood", str(ctx.exception))

    def test_malformed_pair(self):
        data = json.loads(MODEL_TEXT)
        data["membership"] = [["alpha"]]
        with self.assertRaises(ModelError):
            load(json.dumps(data))

    def test_bad_json(self):
        with self.assertRaises(ModelError):
            load("{not json")

    def test_not_an_object(self):
        with self.assertRaises(ModelError):
            load("[]")

    def test_load_rejects_invariant_violations(self):
        data = json.loads(MODEL_TEXT)
        data["parthood"].append(["s1", "alpha"])
        with self.assertRaises(ModelError) as ctx:
            load(json.dumps(data))
        self.assertEqual(ctx.exception.violations, ["parthood pair (s1, alpha): parthood endpoint is a set (s1)"])

    def test_file_helpers(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "model.json")
            save_file(ALPHA_WITH_PARTS, path)
            self.assertEqual(load_file(path), ALPHA_WITH_PARTS)

    def test_file_that_is_not_utf8(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "model.json")
            with open(path, "wb") as fh:
                fh.write(b'{"elements": ["\xff"], "sets": [], "membership": [], "parthood": []}')
            with self.assertRaises(ModelError) as ctx:
                load_file(path)
        self.assertIn("not UTF-8", str(ctx.exception))

    def test_missing_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(ModelError):
                load_file(os.path.join(tmp, "absent.json"))


class TestQueries(unittest.TestCase):
    """parts and members."""

    def test_parts_in_declaration_order(self):
        self.assertEqual(parts(ALPHA_WITH_PARTS, "alpha"), ["alpha", "beta"])
        self.assertEqual(parts(ALPHA_WITH_PARTS, "beta"), ["beta"])

    def test_parts_of_set_is_an_error(self):
        with self.assertRaises(ModelError):
            parts(ALPHA_WITH_PARTS, "s1")

    def test_members(self):
        self.assertEqual(members(ALPHA_WITH_PARTS, "s1"), ["alpha", "beta"])
        self.assertEqual(members(ALPHA_WITH_PARTS, "alpha"), [])

    def test_undeclared_element(self):
        with self.assertRaises(ModelError):
            members(ALPHA_WITH_PARTS, "gamma")
        with self.assertRaises(ModelError):
            parts(ALPHA_WITH_PARTS, "gamma")


if __name__ == '__main__':
    unittest.main()
