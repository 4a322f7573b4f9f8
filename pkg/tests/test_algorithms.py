from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hwmodules import algorithms as alg
from hwmodules.checks import random_fd_vector, random_hw, random_verma_vector
from hwmodules.errors import BudgetExceeded, DomainError, SpecMismatchError
from hwmodules.liealg import Heisenberg, HeisenbergVirasoro, Symbol, Virasoro, sl2
from hwmodules.linalg import determinant, nullspace, rank
from hwmodules.modules import SequenceIndex, adjoint_module, heisenberg_module_new, k0_new, sl2_irrep, verma_new
from hwmodules.oracles import gram_by_straightening, leibniz_determinant
from hwmodules.scalars import QuadInt, Scalar

from .strategies import fractions

VIR, HV, HEIS = Virasoro(), HeisenbergVirasoro(), Heisenberg()


def e(k):
    return Symbol("e", k)


def z(k):
    return Symbol("z", k)


def vir(lam, c=1):
    return verma_new(VIR, {"e0": lam, "c": c})


# nilpotency ---------------------------------------------------------------


def test_nilpotency_examples():
    m = heisenberg_module_new(2)
    assert alg.nilpotency_index(z(2), m.tail_vector).index == 2
    mv = vir(3)
    assert alg.nilpotency_index(e(1), mv.generator).index == 1
    assert alg.nilpotency_index(e(1), mv.parse_vector("e-1")).index == 2


def test_nilpotency_exceeded():
    mv = vir(1)
    rep = alg.nilpotency_index(e(-1), mv.generator, cap=5)
    assert rep.exceeded and rep.index is None and len(rep.trail) == 6
    with pytest.raises(DomainError):
        alg.nilpotency_index(e(1), mv.generator, cap=0)


def test_string_top_budget():
    with pytest.raises(BudgetExceeded):
        alg.string_top(e(-1), vir(1).generator, cap=4)


# extraction ---------------------------------------------------------------


def test_fd_examples():
    s = sl2()
    ad = adjoint_module(s)
    res = alg.extract_singular_fd(ad.basis_vector("f"))
    assert res.vector == -2 * ad.basis_vector("e")
    assert alg.extract_singular_fd(ad.basis_vector("e")).vector == ad.basis_vector("e")
    v2 = sl2_irrep(2)
    res = alg.extract_singular_fd(v2.basis_vector("v2"))
    assert set(res.vector.terms) == {"v0"}
    assert res.stages == [(s.symbol("e"), 2)]


def test_virasoro_examples():
    m = vir(0, Fraction(5, 2))
    start = m.parse_vector("e-1")
    assert alg.extract_singular_virasoro(start).vector == start
    m = vir(Fraction(7, 3), 3)
    res = alg.extract_singular_virasoro(m.parse_vector("e-1"))
    assert set(res.vector.terms) == {()}
    with pytest.raises(SpecMismatchError):
        alg.extract_singular_virasoro(heisenberg_module_new(2).tail_vector)
    with pytest.raises(DomainError):
        alg.extract_singular_virasoro(m.zero())


def test_hv_examples():
    m = verma_new(HV, {"e0": 1, "z0": 1, "c1": 1, "c2": 1, "c3": 1})
    res = alg.extract_singular_hv(m.parse_vector("z-1"))
    assert set(res.vector.terms) == {()}
    assert alg.extract_singular_hv(m.generator).vector == m.generator
    with pytest.raises(DomainError):
        alg.extract_singular_hv(m.zero())


@given(st.integers(0, 2 ** 32))
def test_virasoro_extraction_random(seed):
    rng = random.Random(seed)
    m = verma_new(VIR, random_hw(VIR, rng))
    res = alg.extract_singular_virasoro(random_verma_vector(m, rng))
    assert res.verify()
    assert not m.act(e(1), res.vector) and not m.act(e(2), res.vector)


@given(st.integers(0, 2 ** 32))
def test_hv_extraction_random(seed):
    rng = random.Random(seed)
    m = verma_new(HV, random_hw(HV, rng))
    res = alg.extract_singular_hv(random_verma_vector(m, rng, 3))
    for s in (e(1), e(2), z(1)):
        assert not m.act(s, res.vector)


@given(st.integers(0, 8), st.integers(0, 2 ** 32))
def test_fd_extraction_random(n, seed):
    m = sl2_irrep(n)
    res = alg.extract_singular_fd(random_fd_vector(m, random.Random(seed)))
    assert res.vector and not m.act(m.spec.symbol("e"), res.vector)


# Shapovalov -----------------------------------------------------------------


def test_gram_examples():
    m = vir(Fraction(7, 3), 3)
    assert alg.shapovalov_gram(m, 0).entries == [[1]]
    g1 = alg.shapovalov_gram(m, 1)
    assert g1.entries == [[Fraction(-14, 3)]]
    assert alg.gram_determinant(g1) == Fraction(-14, 3)
    assert alg.gram_determinant(alg.shapovalov_gram(vir(0), 1)) == 0


@given(fractions(), fractions(), st.integers(0, 3))
def test_gram_matches_straightening(lam, c, level):
    m = vir(lam, c)
    g = alg.shapovalov_gram(m, level)
    assert g.is_symmetric()
    assert g.entries == gram_by_straightening(VIR, m.hw, g.basis)


def test_level_two_determinant_formula():
    # e_i = -L_i turns the bracket into the usual one, so h = -e0 in the Kac determinant
    for lam, c in [(Fraction(1, 3), 2), (Fraction(-5, 2), Fraction(1, 7)), (2, -3)]:
        g = alg.shapovalov_gram(vir(lam, c), 2)
        h = -Fraction(lam)
        expected = 2 * h * (16 * h * h + 2 * h * (Fraction(c) - 5) + Fraction(c))
        assert alg.gram_determinant(g) == expected


@given(st.integers(0, 2 ** 32), st.integers(0, 3))
def test_hv_gram_twisted_symmetry(seed, level):
    rng = random.Random(seed)
    hw = random_hw(HV, rng)
    g = alg.shapovalov_gram(verma_new(HV, hw), level)
    flipped = dict(hw.values)
    flipped[HV.C2] = -flipped[HV.C2]
    gt = alg.shapovalov_gram(verma_new(HV, flipped), level)
    n = g.size
    assert all(g.entries[a][b] == gt.entries[b][a] for a in range(n) for b in range(n))
    assert g.entries == gram_by_straightening(HV, hw, g.basis)


def test_hv_gram_symmetric_without_c2():
    m = verma_new(HV, {"e0": 2, "z0": "1/3", "c1": 5, "c2": 0, "c3": -1})
    for level in range(4):
        assert alg.shapovalov_gram(m, level).is_symmetric()


def test_gram_serialisation():
    m = verma_new(HV, {"e0": "1+1*i", "z0": 2, "c1": 1, "c2": "1*i", "c3": 1})
    g = alg.shapovalov_gram(m, 2)
    assert alg.GramMatrix.from_json_obj(HV, g.to_json_obj()) == g
    assert alg.GramMatrix.from_csv(HV, 2, g.to_csv()) == g


def test_gram_rejects():
    with pytest.raises(DomainError):
        alg.shapovalov_gram(vir(1), -1)
    with pytest.raises(SpecMismatchError):
        alg.shapovalov_gram(k0_new(), 1)


# linear algebra ------------------------------------------------------------


square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fractions(-5, 5), min_size=n, max_size=n),
                                                      min_size=n, max_size=n))


@given(square)
def test_bareiss_matches_leibniz(mat):
    assert determinant(mat) == leibniz_determinant(mat)
    assert determinant(mat, Scalar(1)) == leibniz_determinant(mat, Scalar(1))


@given(square)
def test_nullspace(mat):
    n = len(mat)
    rows = [{j: x for j, x in enumerate(r) if x} for r in mat]
    basis = nullspace(rows, list(range(n)))
    assert len(basis) + rank(rows, list(range(n))) == n
    for vec in basis:
        assert all(sum(r.get(j, 0) * x for j, x in vec.items()) == 0 for r in rows)


# simplicity -----------------------------------------------------------------


def test_simplicity_examples():
    m = heisenberg_module_new(2)
    u = m.parse_vector("(1,2*,...) + (2*,...)")
    cert = alg.simplicity_witness(u)
    assert cert.steps == [(1, 1, 1)]
    assert cert.terminal == SequenceIndex([1], 2)
    assert alg.replay_certificate(cert)
    single = alg.simplicity_witness(m.tail_vector)
    assert single.steps == []
    cert = alg.simplicity_witness(m.parse_vector("(1,2*,...) + (3,2*,...) + (2,1,2*,...)"))
    assert len(cert.steps) <= 2 and alg.replay_certificate(cert)


def test_tampered_certificate_fails():
    m = heisenberg_module_new(2)
    cert = alg.simplicity_witness(m.parse_vector("(1,2*,...) + (3,2*,...) + (2,1,2*,...)"))
    cert.steps[0] = (cert.steps[0][0], cert.steps[0][1] + 1, cert.steps[0][2])
    assert not alg.replay_certificate(cert)


@given(st.lists(st.tuples(st.lists(st.integers(1, 4), max_size=5), fractions(-5, 5).filter(bool)),
                min_size=1, max_size=6), st.integers(1, 3))
def test_simplicity_random(terms, tail):
    m = heisenberg_module_new(tail)
    u = m.zero()
    for entries, c in terms:
        u = u + c * m.basis_vector(m.index(entries))
    if not u:
        return
    cert = alg.simplicity_witness(u)
    counts = [len(u)] + [n for _, _, n in cert.steps]
    assert counts[-1] == 1
    assert all(a > b for a, b in zip(counts, counts[1:]))
    assert alg.replay_certificate(cert)


# falsification -------------------------------------------------------------


def test_probe_finds_verma_singular_vector():
    m = vir(0, 0)
    found = alg.highest_weight_probe(m, alg.verma_region(VIR, 2), VIR.positive_generators(3))
    assert found is not None and set(found.terms) == {(e(-1),)}


def test_probe_heisenberg():
    m = heisenberg_module_new(2)
    region = alg.heisenberg_region(m, 3, 4)
    assert alg.highest_weight_probe(m, region, HEIS.positive_generators(5)) is None
    # a probe that misses z_5 sees a false positive at the boundary
    assert alg.highest_weight_probe(m, region, HEIS.positive_generators(4)) is not None


def test_probe_k0_small_box_false_positive():
    m = k0_new()
    found = alg.highest_weight_probe(m, alg.k0_region(m, 1, 3), alg.k0_probe_generators(m, 3))
    assert found is not None


def test_small_support_examples():
    m = k0_new()
    half = dict(alg.small_support_explorer(m, 2, Fraction(1, 2)))
    assert QuadInt(-3, 2) in half
    assert (Symbol("e", QuadInt(-3, 2)),) in half.values()
    one = dict(alg.small_support_explorer(m, 1, 1))
    assert QuadInt(1, -1) in one
    assert alg.small_support_explorer(m, 1, Fraction(1, 10 ** 6), box=1) == []
    with pytest.raises(DomainError):
        alg.small_support_explorer(m, 1, 0)


def test_small_support_sorted_and_exact():
    m = k0_new()
    found = alg.small_support_explorer(m, 2, Fraction(1, 5))
    weights = [mu for mu, _ in found]
    assert weights == sorted(weights, reverse=True)
    for mu, _ in found:
        assert mu.sign() < 0 and (QuadInt(1, 0) + 5 * mu).sign() > 0
