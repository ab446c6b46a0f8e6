# test_verifiers.py
"""
Unit tests for the set predicates, witnesses, column helpers and certificate text
"""

import unittest
import sys
import os

from hypothesis import given, settings, strategies as st

# Add the app directory to the path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from graph_core import make_cycle, product_instance
from verifiers import (
    CertificateParseError, ColumnProfile, ContractError, FailureReason, ParamKind, Verdict, VertexSet,
    column_profile, doubleton_dominates_column, dominated_mask, format_certificate, format_vertex,
    is_12_set, is_2_dominating, is_dominating, is_independent, is_secure_dominating, neighbour_columns,
    parse_certificate, private_neighbors, satisfies, verify,
)


def _column(g, i):
    return VertexSet.from_coords(g, [(i, j) for j in range(1, g.coords.m + 1)])


class TestVertexSet(unittest.TestCase):
    """Bit-vector subsets"""

    def test_from_ids_and_back(self):
        s = VertexSet.from_ids(10, [7, 2, 5])
        self.assertEqual(s.ids(), [2, 5, 7])
        self.assertEqual(len(s), 3)
        self.assertIn(5, s)
        self.assertNotIn(6, s)
        self.assertNotIn(12, s)

    def test_ids_outside_capacity(self):
        with self.assertRaises(ContractError):
            VertexSet.from_ids(4, [4])
        with self.assertRaises(ContractError):
            VertexSet(3, 0b1000)

    def test_coords_round_trip(self):
        g = product_instance("path-clique", 4, 3)
        s = VertexSet.from_coords(g, [(2, 3), (1, 1)])
        self.assertEqual(s.ids(), [0, 5])
        self.assertEqual(s.to_coords(g), [(1, 1), (2, 3)])

    def test_coords_need_product_instance(self):
        with self.assertRaises(ContractError):
            VertexSet.from_coords(make_cycle(4), [(1, 1)])

    def test_sort_key_is_lexicographic(self):
        self.assertLess(VertexSet.from_ids(6, [0, 5]).sort_key(), VertexSet.from_ids(6, [1, 2]).sort_key())


class TestVerdict(unittest.TestCase):
    """Verdict invariants"""

    def test_passing_verdict_has_no_witness(self):
        with self.assertRaises(ContractError):
            Verdict(True, failure_witness=Verdict.failure(0, FailureReason.UNDOMINATED).failure_witness)

    def test_failing_verdict_needs_witness(self):
        with self.assertRaises(ContractError):
            Verdict(False)


class TestPredicates(unittest.TestCase):
    """Predicates on small product instances"""

    def setUp(self):
        self.p33 = product_instance("path-clique", 3, 3)
        self.p34 = product_instance("path-clique", 3, 4)

    def test_middle_column_dominates(self):
        s = _column(self.p33, 2)
        self.assertTrue(is_dominating(self.p33, s).ok)
        self.assertTrue(verify(self.p33, ParamKind.IDOM, s).ok)
        self.assertTrue(is_12_set(self.p33, s).ok)
        self.assertTrue(is_2_dominating(self.p33, s).ok)

    def test_undominated_witness(self):
        s = VertexSet.from_coords(self.p33, [(2, 1), (2, 2)])
        verdict = is_dominating(self.p33, s)
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.failure_witness.vertex, self.p33.coords.index(2, 3))
        self.assertEqual(verdict.failure_witness.reason, FailureReason.UNDOMINATED)

    def test_full_column_overdominates_when_m_is_4(self):
        verdict = is_12_set(self.p34, _column(self.p34, 2))
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.failure_witness.vertex, 0)
        self.assertEqual(verdict.failure_witness.reason, FailureReason.OVERDOMINATED)

    def test_underdominated_witness(self):
        s = VertexSet.from_coords(self.p33, [(2, 1), (2, 2)])
        verdict = is_2_dominating(self.p33, s)
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.failure_witness.vertex, 0)
        self.assertEqual(verdict.failure_witness.reason, FailureReason.UNDERDOMINATED)

    def test_independent_dominating_checks_domination_first(self):
        s = VertexSet.from_coords(self.p33, [(1, 1), (2, 2)])
        verdict = verify(self.p33, ParamKind.IDOM, s)
        self.assertEqual(verdict.failure_witness.reason, FailureReason.UNDOMINATED)
        self.assertEqual(verdict.failure_witness.vertex, 1)

    def test_adjacent_witness(self):
        s = VertexSet(self.p33.vertex_count, _column(self.p33, 2).bits | 1)
        self.assertTrue(is_dominating(self.p33, s).ok)
        verdict = is_independent(self.p33, s)
        self.assertEqual(verdict.failure_witness.vertex, 0)
        self.assertEqual(verdict.failure_witness.reason, FailureReason.ADJACENT)

    def test_secure_defender_map(self):
        verdict = is_secure_dominating(self.p33, _column(self.p33, 2))
        self.assertTrue(verdict.ok)
        self.assertEqual(verdict.defender_map[0], self.p33.coords.index(2, 2))
        self.assertEqual(len(verdict.defender_map), 6)

    def test_secure_dominating_on_p3_k4(self):
        s = VertexSet.from_coords(self.p34, [(2, 1), (2, 2), (2, 3), (3, 1)])
        self.assertTrue(verify(self.p34, ParamKind.SDOM, s).ok)

    def test_undefended_witness(self):
        g = product_instance("path-clique", 2, 3)
        s = VertexSet.from_coords(g, [(1, 1), (2, 1)])
        self.assertTrue(is_dominating(g, s).ok)
        verdict = is_secure_dominating(g, s)
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.failure_witness.vertex, 1)
        self.assertEqual(verdict.failure_witness.reason, FailureReason.UNDEFENDED)

    def test_secure_failure_reports_domination_first(self):
        s = VertexSet.from_coords(self.p33, [(2, 1)])
        self.assertEqual(is_secure_dominating(self.p33, s).failure_witness.reason, FailureReason.UNDOMINATED)

    def test_capacity_mismatch(self):
        with self.assertRaises(ContractError):
            is_dominating(self.p33, VertexSet(4, 0))

    def test_private_neighbors(self):
        s = _column(self.p33, 2)
        v = self.p33.coords.index(2, 1)
        self.assertEqual(private_neighbors(self.p33, s, v).ids(), [v])
        with self.assertRaises(ContractError):
            private_neighbors(self.p33, s, 0)

    @given(st.integers(0, (1 << 12) - 1), st.sampled_from(list(ParamKind)))
    @settings(max_examples=200)
    def test_mask_predicate_matches_verdict(self, bits, kind):
        g = product_instance("cycle-clique", 4, 3)
        self.assertEqual(satisfies(g, kind, bits), verify(g, kind, VertexSet(12, bits)).ok)

    @given(st.sampled_from(["path-clique", "cycle-clique"]), st.integers(2, 6), st.integers(2, 4), st.data())
    @settings(max_examples=300, deadline=None)
    def test_two_domination_implies_secure_implies_domination(self, family, n, m, data):
        g = product_instance(family, n, m)
        flags = data.draw(st.lists(st.booleans(), min_size=g.vertex_count, max_size=g.vertex_count))
        s = VertexSet.from_ids(g.vertex_count, [v for v, chosen in enumerate(flags) if chosen])
        if is_2_dominating(g, s).ok:
            self.assertTrue(is_secure_dominating(g, s).ok)
        if is_secure_dominating(g, s).ok:
            self.assertTrue(is_dominating(g, s).ok)

    @given(st.sampled_from(["path-clique", "cycle-clique"]), st.integers(2, 6), st.integers(2, 4), st.data())
    @settings(max_examples=300, deadline=None)
    def test_defender_swaps_stay_dominating(self, family, n, m, data):
        g = product_instance(family, n, m)
        flags = data.draw(st.lists(st.booleans(), min_size=g.vertex_count, max_size=g.vertex_count))
        s = VertexSet.from_ids(g.vertex_count, [v for v, chosen in enumerate(flags) if chosen])
        verdict = is_secure_dominating(g, s)
        if not verdict.ok:
            return
        self.assertEqual(set(verdict.defender_map), set(range(g.vertex_count)) - set(s.ids()))
        for w, v in verdict.defender_map.items():
            self.assertIn(v, s)
            self.assertTrue(g.adjacency[w] >> v & 1)
            swapped = VertexSet(g.vertex_count, (s.bits & ~(1 << v)) | (1 << w))
            self.assertTrue(is_dominating(g, swapped).ok, (family, n, m, s.ids(), w, v))


class TestColumns(unittest.TestCase):
    """Column profiles and the doubleton characterization"""

    def test_profile_on_cycle(self):
        g = product_instance("cycle-clique", 6, 5)
        s = VertexSet.from_coords(g, [(1, 1), (2, 1), (4, 3), (5, 3)])
        profile = column_profile(g, s)
        self.assertEqual(profile.d, (1, 1, 0, 1, 1, 0))
        self.assertEqual(profile.total, 4)
        self.assertEqual(profile.triple_sum(1), 2)
        self.assertEqual(profile.value(7), 1)

    def test_profile_on_path_reads_zero_outside(self):
        profile = ColumnProfile((2, 0, 1), cyclic=False)
        self.assertEqual(profile.value(0), 0)
        self.assertEqual(profile.triple_sum(1), 2)
        self.assertEqual(profile.triple_sum(3), 1)

    def test_triple_sum_counts_distinct_columns(self):
        self.assertEqual(ColumnProfile((1, 2), cyclic=True).triple_sum(1), 3)

    def test_neighbour_columns(self):
        self.assertEqual(neighbour_columns(product_instance("cycle-clique", 6, 3), 1), [2, 6])
        self.assertEqual(neighbour_columns(product_instance("path-clique", 6, 3), 1), [2])
        self.assertEqual(neighbour_columns(product_instance("cycle-clique", 2, 3), 1), [2])

    def test_doubleton_cases(self):
        g = product_instance("path-clique", 4, 3)
        c = g.coords
        self.assertTrue(doubleton_dominates_column(g, c.index(2, 1), c.index(1, 1), 2))
        self.assertFalse(doubleton_dominates_column(g, c.index(2, 1), c.index(1, 2), 2))
        self.assertTrue(doubleton_dominates_column(g, c.index(1, 1), c.index(3, 2), 2))
        self.assertFalse(doubleton_dominates_column(g, c.index(1, 1), c.index(3, 1), 2))
        self.assertFalse(doubleton_dominates_column(g, c.index(2, 1), c.index(2, 2), 2))
        self.assertFalse(doubleton_dominates_column(g, c.index(4, 1), c.index(1, 2), 2))
        self.assertFalse(doubleton_dominates_column(g, c.index(1, 1), c.index(1, 1), 2))

    def test_doubleton_contract(self):
        with self.assertRaises(ContractError):
            doubleton_dominates_column(product_instance("path-clique", 4, 2), 0, 3, 2)
        with self.assertRaises(ContractError):
            doubleton_dominates_column(product_instance("path-clique", 4, 3), 0, 3, 5)

    @given(st.sampled_from(["path-clique", "cycle-clique"]), st.integers(2, 6), st.integers(3, 5), st.data())
    @settings(max_examples=150)
    def test_doubleton_matches_domination(self, family, n, m, data):
        g = product_instance(family, n, m)
        a = data.draw(st.integers(0, g.vertex_count - 1))
        b = data.draw(st.integers(0, g.vertex_count - 1).filter(lambda x: x != a))
        i = data.draw(st.integers(1, n))
        column = g.coords.column_mask(i)
        dominated = dominated_mask(g, (1 << a) | (1 << b)) & column == column
        self.assertEqual(doubleton_dominates_column(g, a, b, i), dominated)


class TestCertificateText(unittest.TestCase):
    """Certificate parsing and formatting"""

    def setUp(self):
        self.g = product_instance("path-clique", 3, 3)

    def test_parse_accepts_parentheses_and_comments(self):
        s = parse_certificate("(1 3)\n# comment\n\n2, 3\n", self.g)
        self.assertEqual(s.ids(), [2, 5])

    def test_parse_raw_ids_on_plain_graphs(self):
        s = parse_certificate("0\n2\n", make_cycle(4))
        self.assertEqual(s.ids(), [0, 2])

    def test_parse_errors(self):
        cases = [("1\n", 1), ("1 1\n4 1\n", 2), ("1 1\n1 1\n", 2), ("a b\n", 1), ("1 2 3\n", 1)]
        for text, line in cases:
            with self.assertRaises(CertificateParseError) as ctx:
                parse_certificate(text, self.g)
            self.assertEqual(ctx.exception.line_number, line)

    def test_format(self):
        s = VertexSet.from_coords(self.g, [(3, 1), (1, 2)])
        self.assertEqual(format_certificate(self.g, s), "1 2\n3 1\n")
        self.assertEqual(format_certificate(self.g, s, parenthesized=True), "(1 2)\n(3 1)\n")
        self.assertEqual(format_vertex(self.g, 5), "(2 3)")
        self.assertEqual(format_certificate(make_cycle(4), VertexSet.from_ids(4, [3, 1])), "1\n3\n")

    def test_format_then_parse(self):
        s = VertexSet.from_coords(self.g, [(3, 1), (1, 2), (2, 3)])
        self.assertEqual(parse_certificate(format_certificate(self.g, s), self.g), s)


if __name__ == '__main__':
    unittest.main()
