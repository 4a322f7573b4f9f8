from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hwmodules.checks import module_families, random_verma_vector
from hwmodules.errors import DomainError, SpecMismatchError
from hwmodules.liealg import Heisenberg, HeisenbergVirasoro, Symbol, Virasoro, bracket
from hwmodules.modules import (
    HighestWeight,
    SequenceIndex,
    heisenberg_module_new,
    k0_new,
    sl2_irrep,
    verma_new,
    weight_components,
)
from hwmodules.scalars import QuadInt

VIR, HV = Virasoro(), HeisenbergVirasoro()


def e(k):
    return Symbol("e", k)


def z(k):
    return Symbol("z", k)


def seq(text):
    return SequenceIndex.parse(text)


@pytest.fixture
def m0():
    return verma_new(VIR, {"e0": 0, "c": 0})


def test_verma_examples(m0):
    v = m0.generator
    assert not m0.act(e(1), v)
    lam = Fraction(7, 3)
    m = verma_new(VIR, {"e0": lam, "c": 1})
    assert m.act(e(1), m.parse_vector("e-1")) == -2 * lam * m.generator
    assert not m.act(e(2), m.parse_vector("e-1"))


def test_hw_must_be_total():
    with pytest.raises(DomainError):
        HighestWeight(VIR, {"e0": 1})
    with pytest.raises(SpecMismatchError):
        verma_new(Heisenberg(), {"z0": 1})


def test_heisenberg_examples():
    m = heisenberg_module_new(2)
    v = m.basis_vector(seq("(2*,...)"))
    assert m.act(z(0), v) == v
    assert m.act(z(1), m.basis_vector(seq("(3,2*,...)"))) == v
    assert not m.act(z(1), m.basis_vector(seq("(1,2*,...)")))
    assert m.act(z(-1), v) == -2 * m.basis_vector(seq("(3,2*,...)"))


def test_tails():
    one = heisenberg_module_new(1)
    for i in range(1, 10):
        assert not one.act(z(i), one.tail_vector)
    three = heisenberg_module_new(3)
    v = three.tail_vector
    for _ in range(3):
        assert v
        v = three.act(z(5), v)
    assert not v
    with pytest.raises(DomainError):
        heisenberg_module_new(0)


def test_sequence_index():
    s = seq("(3,1,2*,...)")
    assert str(s) == "(3,1,2*,...)"
    assert s[1] == 3 and s[2] == 1 and s[40] == 2
    assert seq("(1,2,2*,...)") == seq("(1,2*,...)")
    with pytest.raises(ValueError):
        seq("(1,2,...)")


def test_k0_examples():
    k = k0_new()
    spec = k.spec
    for x in (QuadInt(1, 0), QuadInt(0, 1), QuadInt(-1, 1)):
        v = k.basis_vector((Symbol("e", -x),))
        assert not k.act(Symbol("e", x), v)
    y = QuadInt(1, -1)  # -(sqrt2 - 1)
    assert k.index_weight((Symbol("e", y),)) == QuadInt(1, -1)
    assert k.index_weight((Symbol("e", y),)).sign() < 0
    assert not k.act(e(QuadInt(1, 0)), k.basis_vector((Symbol("e", y),)))
    with pytest.raises(DomainError):
        k.basis_vector(())
    assert spec.in_group(QuadInt(3, -2))


def test_weight_components(m0):
    v = m0.parse_vector("e-1 + e-2")
    comps = weight_components(v)
    assert set(comps) == {-1, -2}
    assert comps[-1] == m0.parse_vector("e-1")
    assert weight_components(m0.zero()) == {}


def test_vector_round_trip():
    m = verma_new(HV, {"e0": "1/2", "z0": "1+1*i", "c1": 1, "c2": 0, "c3": 2})
    v = random_verma_vector(m, random.Random(3), 3, 5)
    assert m.parse_vector(str(v)) == v
    assert m.vector_from_json(v.to_json()) == v


def test_sl2_irrep():
    m = sl2_irrep(2)
    s = m.spec
    assert m.dimension == 3
    assert not m.act(s.symbol("e"), m.basis_vector("v0"))
    assert m.act(s.symbol("h"), m.basis_vector("v1")) == 0 * m.basis_vector("v1")


@pytest.mark.parametrize("family", range(len(module_families(random.Random(0)))))
@given(st.integers(0, 2 ** 32))
def test_module_axiom(family, seed):
    rnd = random.Random(seed)
    name, m, vec, sym = module_families(rnd)[family]
    x, y, v = sym(), sym(), vec(m)
    lhs = m.act(x, m.act(y, v)) - m.act(y, m.act(x, v))
    assert lhs == m.act(bracket(x, y, m.spec), v), name


@given(st.lists(st.integers(1, 5), max_size=8), st.integers(1, 12), st.integers(1, 3))
def test_local_nilpotency(entries, i, tail):
    m = heisenberg_module_new(tail)
    idx = m.index(entries)
    v = m.basis_vector(idx)
    for _ in range(idx[i]):
        assert v
        v = m.act(z(i), v)
    assert not v
