import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcor import _kernels
from mcor.matcher import (
    db_support,
    dbi_match,
    dbi_occurrences,
    dbi_support,
    oracle_all_occurrences,
    oracle_max_nonoverlapping,
    oracle_support,
)
from mcor.seqdb import GapConstraint, IndexedDatabase, Pattern, SequenceDatabase, build_index

from conftest import RUNNING, pat

EX3_ALL = [(1, 2), (1, 4), (5, 6), (5, 8), (11, 14), (13, 14), (13, 16)]
EX2_SEQ = "aabbaaba"


def test_dbi_support_examples(running_seq_idx):
    assert dbi_support(running_seq_idx, pat("ad")) == 4
    assert dbi_support(running_seq_idx, pat("adc")) == 3
    assert dbi_support(build_index(EX2_SEQ), pat("aba", 0, 1)) == 3


@pytest.mark.parametrize("item", "abcdz")
def test_single_item_support_is_count(item):
    assert dbi_support(build_index(RUNNING), pat(item)) == RUNNING.count(item)


def test_dbi_occurrences_examples(running_seq_idx):
    assert dbi_occurrences(running_seq_idx, pat("adc")) == [(1, 4, 7), (5, 6, 9), (11, 14, 15)]
    assert dbi_occurrences(running_seq_idx, pat("ad")) == [(1, 2), (5, 6), (11, 14), (13, 16)]
    assert dbi_occurrences(running_seq_idx, pat("zd")) == []
    assert dbi_occurrences(running_seq_idx, pat("dz")) == []


def test_too_far_candidate_is_reused(running_seq_idx):
    # position 7 is too far from node 2 but must stay available for node 4
    occs, stats = dbi_match(running_seq_idx, pat("adc"))
    assert occs[0] == (1, 4, 7)
    assert stats.peeked >= 1


def test_oracle_all_occurrences_examples():
    assert oracle_all_occurrences(RUNNING, pat("ad")) == EX3_ALL
    ex2 = oracle_all_occurrences(EX2_SEQ, pat("aba", 0, 1))
    assert {(1, 3, 5), (2, 4, 6), (6, 7, 8)} <= set(ex2)
    assert oracle_all_occurrences("ab", pat("abc")) == []


def test_oracle_max_nonoverlapping_examples():
    assert oracle_max_nonoverlapping(EX3_ALL) == 4
    assert oracle_max_nonoverlapping([]) == 0
    assert oracle_max_nonoverlapping(oracle_all_occurrences(EX2_SEQ, pat("aba", 0, 1))) == 3


def test_oracle_max_nonoverlapping_reuses_positions_across_indices():
    # <1,2> and <2,3> share position 2 but at different indices
    assert oracle_max_nonoverlapping([(1, 2), (2, 3)]) == 2
    assert oracle_max_nonoverlapping([(1, 2), (1, 3), (2, 3)]) == 2


def test_db_support(running_idx):
    assert db_support(running_idx, pat("ad")) == 4
    assert db_support(IndexedDatabase.build(SequenceDatabase()), pat("ad")) == 0
    twice = IndexedDatabase.build(SequenceDatabase.from_strings([RUNNING, RUNNING]))
    assert db_support(twice, pat("ad")) == 8
    assert db_support(running_idx, pat("ax")) == 0


# -- properties ------------------------------------------------------------------

@st.composite
def instances(draw, max_n=20, max_m=4, max_b=3):
    h = draw(st.sampled_from([2, 3, 4]))
    al = "abcd"[:h]
    s = draw(st.text(alphabet=al, max_size=max_n))
    b = draw(st.integers(0, max_b))
    a = draw(st.integers(0, b))
    items = draw(st.lists(st.sampled_from(al), min_size=1, max_size=max_m))
    return s, Pattern(tuple(items), GapConstraint(a, b))


@settings(max_examples=400, deadline=None)
@given(instances())
def test_dbi_equals_oracle(inst):
    s, p = inst
    assert dbi_support(build_index(s), p) == oracle_support(s, p)


@settings(max_examples=300, deadline=None)
@given(instances())
def test_witnesses_are_valid_and_nonoverlapping(inst):
    s, p = inst
    occs, stats = dbi_match(build_index(s), p)
    assert len(occs) == stats.support == dbi_support(build_index(s), p)
    for occ in occs:
        assert all(s[pos - 1] == it for pos, it in zip(occ, p.items))
        for x, y in zip(occ, occ[1:]):
            assert p.gap.a <= y - x - 1 <= p.gap.b
    # each position is used at most once per pattern index
    for j in range(len(p)):
        col = [o[j] for o in occs]
        assert len(col) == len(set(col))
    assert [o[0] for o in occs] == sorted(o[0] for o in occs)


@settings(max_examples=300, deadline=None)
@given(instances(), st.sampled_from("abcd"))
def test_support_anti_monotone(inst, y):
    s, p = inst
    idx = build_index(s)
    assert dbi_support(idx, p.extend(y)) <= dbi_support(idx, p)


@settings(max_examples=300, deadline=None)
@given(instances(max_n=40, max_m=6, max_b=5))
def test_visits_bounded_by_index_sizes(inst):
    s, p = inst
    idx = build_index(s)
    _, stats = dbi_match(idx, p)
    level_sizes = sum(len(idx[it]) for it in p.items)
    assert stats.consumed <= level_sizes <= len(p) * len(s)
    assert stats.peeked <= stats.consumed


@settings(max_examples=200, deadline=None)
@given(st.lists(st.text(alphabet="abc", max_size=15), max_size=4), instances())
def test_python_and_jit_kernels_agree(rows, inst):
    if _kernels.jit_kernels is None:
        pytest.skip("numba unavailable")
    _, p = inst
    idx = IndexedDatabase.build(SequenceDatabase.from_strings(rows), alphabet="abcd")
    code = idx.encode(p.items)
    args = (idx.positions, idx.offsets, code, p.gap.a, p.gap.b)
    py, jit = _kernels.python_kernels, _kernels.jit_kernels
    assert py.db_support(*args) == jit.db_support(*args)
    assert py.seq_supports(*args).tolist() == jit.seq_supports(*args).tolist()
    codes = np.arange(4, dtype=np.int64)
    assert np.array_equal(py.pair_supports(idx.positions, idx.offsets, codes, p.gap.a, p.gap.b),
                          jit.pair_supports(idx.positions, idx.offsets, codes, p.gap.a, p.gap.b))


@pytest.mark.parametrize("flag,want", [("python", "python"), ("numba", "numba"), ("", "numba")])
def test_backend_env_flag(flag, want):
    import os
    import subprocess
    import sys

    env = dict(os.environ, MCOR_BACKEND=flag)
    out = subprocess.run([sys.executable, "-c", "from mcor import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == want
