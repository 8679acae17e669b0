"""Reducibility decisions, shells, reconstruction, switching components."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nquasigroups import analysis as A
from nquasigroups import constructions as C
from nquasigroups import core

import randgen


def z_add(k, n=2):
    return core.from_function(n, k, lambda *x: sum(x) % k)


class TestIsReducibleWrt:
    def test_group_sum(self):
        t = z_add(5, 3)
        assert A.is_reducible_wrt(t, A.Split(frozenset({1, 2})))

    def test_irreducible_all_splits(self):
        t = C.build_irreducible(3, 4)
        for S in ({1, 2}, {1, 3}, {2, 3}):
            assert not A.is_reducible_wrt(t, A.Split(frozenset(S)))

    def test_superposed_fixture(self):
        q = C.fixture("Q52")
        t = core.superpose(q, 2, q)
        assert A.is_reducible_wrt(t, A.Split(frozenset({2, 3})))

    def test_witness_partition(self):
        t = z_add(3, 3)
        ok, wit = A.is_reducible_wrt(t, A.Split(frozenset({1, 2})),
                                     return_witness=True)
        assert ok
        # witness labels S-tuples by g-fiber; fibers of (x1+x2) mod 3
        labels = dict(zip(itertools.product(range(3), repeat=2), wit))
        for a, b in labels:
            for c, d in labels:
                same = (a + b) % 3 == (c + d) % 3
                assert (labels[(a, b)] == labels[(c, d)]) == same

    def test_accepts_axis_iterable(self):
        t = z_add(4, 3)
        assert A.is_reducible_wrt(t, (1, 3))

    def test_split_size_bounds(self):
        t = z_add(4, 3)
        with pytest.raises(A.AnalysisError):
            A.is_reducible_wrt(t, (1,))
        with pytest.raises(A.AnalysisError):
            A.is_reducible_wrt(t, (1, 2, 3))

    @given(st.integers(2, 4), st.integers(0, 10 ** 5), st.integers(0, 10 ** 5),
           st.integers(1, 3))
    @settings(max_examples=20, deadline=None)
    def test_literal_superpositions_detected(self, k, s1, s2, pos):
        outer = core.superpose(randgen.random_binary(k, s1), 1,
                               randgen.random_binary(k, s2))
        pos = min(pos, outer.arity)
        inner = randgen.random_binary(k, s1 ^ s2)
        t = core.superpose(outer, pos, inner)
        assert A.is_reducible_wrt(t, A.Split(frozenset({pos, pos + 1})))


class TestFindReductions:
    def test_group_sum_all_ten(self):
        t = z_add(5, 4)
        found = A.find_reductions(t)
        assert len(found) == 10
        assert [s.axes for s in found] == sorted(
            (s.axes for s in found),
            key=lambda axes: sum(1 << (a - 1) for a in axes))

    def test_irreducible_empty(self):
        assert A.find_reductions(C.build_irreducible(4, 4)) == []

    def test_contains_construction_split(self):
        g = randgen.random_binary(4, 7)
        h = randgen.random_binary(4, 8)
        t = core.superpose(g, 2, h)
        axes = {s.axes for s in A.find_reductions(t)}
        assert (2, 3) in axes

    def test_binary_rejected(self):
        with pytest.raises(A.AnalysisError):
            A.find_reductions(C.fixture("Q42"))

    def test_product_with_group_stays_irreducible(self):
        t = core.direct_product(C.build_irreducible(3, 4), z_add(2, 3))
        assert A.find_reductions(t) == []


class TestFindSubquasigroups:
    def test_fixture_01(self):
        assert (0, 1) in A.find_subquasigroups(C.fixture("Q72"))

    def test_z5_only_zero(self):
        assert A.find_subquasigroups(z_add(5)) == [(0,)]

    def test_closed_builder_block(self):
        assert (0, 1, 2) in A.find_subquasigroups(C.build_closed(3, 6, 3))

    def test_ordering_and_properness(self):
        subs = A.find_subquasigroups(C.fixture("Q62"))
        assert all(0 < len(om) < 6 for om in subs)
        assert subs == sorted(subs, key=lambda om: (len(om), om))

    def test_restrictions_validate(self):
        q = C.build_closed(2, 8, 4)
        for om in A.find_subquasigroups(q):
            assert core.is_valid(core.restrict_to_symbols(q, om))


class TestExtractShell:
    def test_entry_count_2_5(self):
        sh = A.extract_shell(C.fixture("Q52"), (0, 0))
        assert len(sh.entries) == 9

    def test_entry_count_4_4_offcenter(self):
        t = C.build_closed(4, 4, 2)
        sh = A.extract_shell(t, (2, 2, 2, 2))
        assert len(sh.entries) == 175

    def test_xor_shell(self):
        sh = A.extract_shell(core.from_rows([[0, 1], [1, 0]]), (0, 0))
        assert sh.entries == {(0, 0): 0, (0, 1): 1, (1, 0): 1}

    def test_entries_match_table(self):
        q = C.fixture("Q62")
        sh = A.extract_shell(q, (3, 1))
        for cell, v in sh.entries.items():
            assert cell[0] == 3 or cell[1] == 1
            assert core.evaluate(q, cell) == v

    def test_json_roundtrip(self):
        t = C.build_closed(3, 4, 2)
        sh = A.extract_shell(t, (1, 2, 3))
        back = A.shell_from_json_obj(A.shell_to_json_obj(sh))
        assert back.arity == sh.arity and back.basepoint == sh.basepoint
        assert back.entries == sh.entries


class TestReconstructWithSplit:
    def test_fixture_roundtrip_n3(self):
        q = C.fixture("Q52")
        t = core.superpose(q, 2, q)
        sh = A.extract_shell(t, (0, 0, 0))
        r = A.reconstruct_with_split(sh, A.Split(frozenset({2, 3})))
        assert r.values == t.values

    def test_closed_roundtrip_n4(self):
        t = C.build_closed(4, 4, 2)
        sh = A.extract_shell(t, (0, 0, 0, 0))
        r = A.reconstruct_with_split(sh, A.Split(frozenset({3, 4})))
        assert r.values == t.values

    def test_wrong_split_on_counterexample(self):
        q, f, loop = C.build_shell_counterexample()
        sh = A.extract_shell(q, (0, 0, 0))
        try:
            t = A.reconstruct_with_split(sh, A.Split(frozenset({2, 3})))
        except A.ReconstructionError:
            return
        assert t.values != q.values

    def test_probe_choice_immaterial(self):
        t, split = randgen.random_reducible(4, 4, 3)
        sh = A.extract_shell(t, (0, 0, 0, 0))
        S = A.Split(frozenset(split))
        tables = {A.reconstruct_with_split(sh, S, probe=p).values
                  for p in split}
        assert tables == {t.values}

    def test_nonzero_basepoint(self):
        t, split = randgen.random_reducible(4, 5, 21)
        sh = A.extract_shell(t, (4, 1, 0, 2))
        r = A.reconstruct_with_split(sh, A.Split(frozenset(split)))
        assert r.values == t.values


class TestReconstruct:
    def test_unique_n4(self):
        t = C.build_closed(4, 5, 2)
        sh = A.extract_shell(t, (0, 0, 0, 0))
        assert A.reconstruct(sh).values == t.values

    def test_counterexample_ambiguity(self):
        q, f, loop = C.build_shell_counterexample()
        sh = A.extract_shell(q, (0, 0, 0))
        cands = A.reconstruct(sh)
        vals = {c.values for c in cands}
        assert len(vals) >= 2
        assert q.values in vals and f.values in vals

    def test_irreducible_shell_fails_n4(self):
        t = C.build_irreducible(4, 4)
        sh = A.extract_shell(t, (0, 0, 0, 0))
        with pytest.raises(A.ReconstructionError):
            A.reconstruct(sh)

    def test_low_arity_rejected(self):
        sh = A.extract_shell(C.fixture("Q42"), (0, 0))
        with pytest.raises(A.AnalysisError):
            A.reconstruct(sh)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_roundtrips_with_random_basepoints(self, seed):
        import random
        rng = random.Random(seed + 1000)
        t, _ = randgen.random_reducible(4, 4, seed)
        for _ in range(3):
            bp = tuple(rng.randrange(4) for _ in range(4))
            sh = A.extract_shell(t, bp)
            assert A.reconstruct(sh).values == t.values


class TestFindComponents:
    def test_q52_named_components(self):
        comps = A.find_components(C.fixture("Q52"), 0, 1)
        got = [sorted(c.coords for c in comp.cells) for comp in comps]
        assert got == [
            [(0, 0), (0, 1), (1, 0), (1, 1)],
            [(2, 2), (2, 3), (3, 3), (3, 4), (4, 2), (4, 4)]]

    def test_xor_single_component(self):
        comps = A.find_components(core.from_rows([[0, 1], [1, 0]]), 0, 1)
        assert [len(c.cells) for c in comps] == [4]

    def test_inverted_ptq7_pattern(self):
        g = core.inverse_along(C.build_ptq(7), 1)
        comps = A.find_components(g, 0, 1)
        assert sorted(len(c.cells) for c in comps) == [4, 4, 6]

    def test_same_symbol_rejected(self):
        with pytest.raises(A.AnalysisError):
            A.find_components(C.fixture("Q42"), 1, 1)

    def test_partition_and_validity_random(self):
        for seed in range(6):
            k = 4 + seed % 4
            t = randgen.random_binary(k, seed)
            a, b = seed % k, (seed + 1) % k
            comps = A.find_components(t, a, b)
            covered = set()
            for comp in comps:
                cells = {c.coords for c in comp.cells}
                assert not (cells & covered)
                covered |= cells
                assert core.is_valid(A.switch_component(t, comp))
            want = {t.coords(i) for i, v in enumerate(t.values) if v in (a, b)}
            assert covered == want

    def test_cycle_oracle_random(self):
        # binary case: component sizes = twice the cycle lengths of
        # (column of b by row) composed with inverse of (column of a by row)
        for seed in range(8):
            k = 4 + seed % 4
            t = randgen.random_binary(k, seed * 17 + 1)
            a, b = 0, 1 + seed % (k - 1)
            if a == b:
                continue
            rows = [list(r) for r in t.rows()]
            col_a = {r: rows[r].index(a) for r in range(k)}
            col_b = {r: rows[r].index(b) for r in range(k)}
            row_of_col_a = {c: r for r, c in col_a.items()}
            perm = {r: row_of_col_a[col_b[r]] for r in range(k)}
            sizes = []
            seen = set()
            for r in range(k):
                if r in seen:
                    continue
                length = 0
                while r not in seen:
                    seen.add(r)
                    r = perm[r]
                    length += 1
                sizes.append(2 * length)
            got = sorted(len(c.cells) for c in A.find_components(t, a, b))
            assert got == sorted(sizes)

    def test_minimality_small_components(self):
        # no nonempty proper subset of a small component flips validly
        for seed in range(4):
            t = randgen.random_binary(5, seed + 40)
            comps = A.find_components(t, 0, 1)
            for comp in comps:
                cells = sorted(c.coords for c in comp.cells)
                if len(cells) > 8:
                    continue
                for r in range(1, len(cells)):
                    for subset in itertools.combinations(cells, r):
                        vals = list(t.values)
                        for coords in subset:
                            i = t.index(coords)
                            vals[i] = 1 - vals[i]
                        cand = core.QTable(t.arity, t.order, tuple(vals))
                        assert not core.is_valid(cand), (comp, subset)


class TestSwitchComponent:
    def test_q52_first_component(self):
        q = C.fixture("Q52")
        comps = A.find_components(q, 0, 1)
        sw = A.switch_component(q, comps[0])
        rows = [list(r) for r in sw.rows()]
        assert rows[0][:2] == [1, 0] and rows[1][:2] == [0, 1]

    def test_involution(self):
        q = C.fixture("Q52")
        comp = A.find_components(q, 0, 1)[1]
        assert A.switch_component(A.switch_component(q, comp), comp).values \
            == q.values

    def test_independent_switches_distinct(self):
        q = C.fixture("Q52")
        c0, c1 = A.find_components(q, 0, 1)
        tabs = {q.values,
                A.switch_component(q, c0).values,
                A.switch_component(q, c1).values,
                A.switch_component(A.switch_component(q, c0), c1).values}
        assert len(tabs) == 4

    def test_not_a_component_rejected(self):
        q = C.fixture("Q52")
        fake = A.component_from_tuples([(0, 0), (0, 1)], 0, 1)
        with pytest.raises(A.AnalysisError):
            A.switch_component(q, fake)

    def test_wrong_table_rejected(self):
        comp = A.find_components(C.fixture("Q52"), 0, 1)[0]
        other = z_add(5)
        with pytest.raises(A.AnalysisError):
            A.switch_component(other, comp)
