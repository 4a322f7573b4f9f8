from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hwmodules.enveloping import (
    format_monomial,
    format_normal_form,
    is_sorted,
    level_basis,
    monomial_weight,
    parse_monomial,
    parse_normal_form,
    pbw_basis,
    straighten,
    virg_basis,
)
from hwmodules.errors import DomainError
from hwmodules.liealg import Heisenberg, HeisenbergVirasoro, HigherRankVirasoro, Symbol, Virasoro
from hwmodules.oracles import bipartition_count, partition_count, partitions
from hwmodules.scalars import QuadInt

VIR, HV, HEIS, VIRG = Virasoro(), HeisenbergVirasoro(), Heisenberg(), HigherRankVirasoro()


def e(k):
    return Symbol("e", k)


def test_level_three():
    got = {format_monomial(m, VIR) for m in pbw_basis(VIR, -3)}
    assert got == {"e-3", "e-2.e-1", "e-1.e-1.e-1"}


def test_level_zero():
    for spec in (VIR, HV, HEIS):
        assert pbw_basis(spec, 0) == [()]


def test_hv_level_two():
    assert len(pbw_basis(HV, -2)) == 5


def test_positive_level_rejected():
    with pytest.raises(DomainError):
        pbw_basis(VIR, 1)


def test_partition_oracle():
    assert [partition_count(n) for n in range(1, 7)] == [1, 2, 3, 5, 7, 11]
    assert len(set(partitions(8))) == partition_count(8) == 22


@pytest.mark.parametrize("n", range(13))
def test_virasoro_counts(n):
    assert len(level_basis(VIR, n)) == partition_count(n)


@pytest.mark.parametrize("n", range(8))
def test_hv_counts(n):
    assert len(level_basis(HV, n)) == bipartition_count(n)


def test_straighten_examples():
    assert straighten((e(1), e(-1)), VIR) == {(e(-1), e(1)): 1, (e(0),): -2}
    assert straighten((e(-2),), VIR) == {(e(-2),): 1}
    assert straighten((e(-1), e(-2)), VIR) == {(e(-2), e(-1)): 1, (e(-3),): -1}
    assert format_normal_form(straighten((e(1), e(-1)), VIR), VIR) == "1*e-1.e1 - 2*e0"


def test_monomial_weight_examples():
    assert monomial_weight((e(-2), e(-1)), VIR) == -3
    assert monomial_weight((), VIR) == 0
    x = Symbol("e", QuadInt(1, -1))
    assert monomial_weight((x, x), VIRG) == QuadInt(2, -2)


def test_virg_basis_is_truncated():
    basis, truncated = virg_basis(VIRG, QuadInt(1, -1), depth_cap=2, box=3)
    assert truncated
    assert (Symbol("e", QuadInt(1, -1)),) in basis
    assert all(monomial_weight(m, VIRG) == QuadInt(1, -1) for m in basis)


def words(spec):
    sym = st.integers(-4, 4).flatmap(lambda d: st.sampled_from(spec.symbols_of_degree(d)))
    return st.lists(sym, max_size=6).map(tuple)


@pytest.mark.parametrize("spec", [VIR, HV, HEIS], ids=lambda s: s.tag)
@given(data=st.data())
def test_confluence(spec, data):
    w = data.draw(words(spec))
    left = straighten(w, spec, "leftmost")
    assert left == straighten(w, spec, "rightmost", cache=False)
    for m in left:
        assert is_sorted(m, spec)
        assert monomial_weight(m, spec) == monomial_weight(w, spec)


@pytest.mark.parametrize("spec", [VIR, HV], ids=lambda s: s.tag)
@given(data=st.data())
def test_idempotent_on_sorted(spec, data):
    w = tuple(sorted(data.draw(words(spec)), key=spec.order_key))
    assert straighten(w, spec) == {w: 1}


@given(words(HV))
def test_normal_form_text_round_trip(w):
    nf = straighten(w, HV)
    assert parse_normal_form(format_normal_form(nf, HV), HV) == nf


@given(st.integers(0, 6))
def test_monomial_text_round_trip(n):
    for m in level_basis(HV, n):
        assert parse_monomial(format_monomial(m, HV), HV) == m
