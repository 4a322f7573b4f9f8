from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hwmodules.errors import SpecMismatchError, ValidationError
from hwmodules.liealg import (
    AlgebraElement,
    FiniteDim,
    Heisenberg,
    HeisenbergVirasoro,
    HigherRankVirasoro,
    Part,
    Symbol,
    Virasoro,
    algebra_by_name,
    bracket,
    jacobi_probe,
    sl2,
    sl3,
    triangular_part,
    weight_of,
)
from hwmodules.scalars import QuadInt

VIR, HV, HEIS, VIRG = Virasoro(), HeisenbergVirasoro(), Heisenberg(), HigherRankVirasoro()


def el(spec, text):
    return AlgebraElement.parse(spec, text)


def test_virasoro_example():
    assert str(bracket(Symbol("e", 2), Symbol("e", -2), VIR)) == "-4*e0 + 1/2*c"


def test_self_bracket_zero():
    assert not bracket(Symbol("e", 1), Symbol("e", 1), VIR)


def test_hv_example():
    assert str(bracket(Symbol("e", 1), Symbol("z", -1), HV)) == "-1*z0 - 1*i*c2"


def test_heisenberg_example():
    assert str(bracket(Symbol("z", 1), Symbol("z", -1), HEIS)) == "-1*z0"


def test_virg_example():
    x = bracket(Symbol("e", QuadInt(1, 0)), Symbol("e", QuadInt(0, 1)), VIRG)
    assert str(x) == "(-1+1*sqrt2)*e(1,1)"


def test_virg_central_term():
    x = Symbol("e", QuadInt(0, 1))
    out = bracket(x, Symbol("e", QuadInt(0, -1)), VIRG)
    # -2x e_0 + (x^3 - x)/12 c with x = sqrt2
    assert str(out) == "-2*sqrt2*e(0,0) + 1/12*sqrt2*c"
    assert out.terms[VIRG.C].a == 0 and out.terms[VIRG.C].b == Fraction(1, 12)
    assert AlgebraElement.parse(VIRG, str(out)) == out


def test_weights_and_parts():
    assert weight_of(Symbol("e", 5)) == 5
    assert weight_of(HV.C2) == 0
    assert weight_of(Symbol("z", -3)) == -3
    assert triangular_part(Symbol("e", -1)) is Part.MINUS
    assert triangular_part(Symbol("e", 0)) is Part.CARTAN
    assert triangular_part(Symbol("z", 2)) is Part.PLUS


@pytest.mark.parametrize("spec,triple", [
    (VIR, ("e1", "e2", "e-3")),
    (HV, ("e1", "z1", "z-2")),
    (HEIS, ("z1", "z2", "z-3")),
])
def test_jacobi_examples(spec, triple):
    x, y, z = (spec.parse_symbol(t) for t in triple)
    assert not jacobi_probe(x, y, z, spec)


def test_mismatch_rejected():
    with pytest.raises(SpecMismatchError):
        bracket(Symbol("z", 1), Symbol("z", -1), VIR)
    with pytest.raises(ValueError):
        VIR.parse_symbol("c1")


def test_symbol_text_round_trip():
    for spec in (VIR, HV, HEIS, VIRG, sl2(), sl3()):
        for s in list(spec.cartan_basis()) + (spec.basis if hasattr(spec, "basis") else []):
            assert spec.parse_symbol(spec.format_symbol(s)) == s
    assert VIRG.parse_symbol("e(-3,2)") == Symbol("e", QuadInt(-3, 2))


def test_algebra_by_name():
    assert algebra_by_name("virasoro") == VIR
    with pytest.raises(ValueError):
        algebra_by_name("e8")


degrees = st.integers(-10, 10)


def sym(spec):
    return degrees.flatmap(lambda d: st.sampled_from(spec.symbols_of_degree(d)))


@pytest.mark.parametrize("spec", [VIR, HV, HEIS], ids=lambda s: s.tag)
@given(data=st.data())
def test_antisymmetry_and_jacobi(spec, data):
    x, y, z = (data.draw(sym(spec)) for _ in range(3))
    assert bracket(x, y, spec) == -bracket(y, x, spec)
    assert not jacobi_probe(x, y, z, spec)


virg_syms = st.builds(lambda a, b: Symbol("e", QuadInt(a, b)), st.integers(-4, 4), st.integers(-4, 4))


@given(virg_syms, virg_syms, virg_syms)
def test_virg_jacobi(x, y, z):
    assert not jacobi_probe(x, y, z, VIRG)
    assert bracket(x, y, VIRG) == -bracket(y, x, VIRG)


@given(st.data())
def test_element_text_round_trip(data):
    spec = data.draw(st.sampled_from([VIR, HV, HEIS]))
    x = bracket(data.draw(sym(spec)), data.draw(sym(spec)), spec)
    assert el(spec, str(x)) == x if x else str(x) == "0"


def test_hv_omega_twist():
    # omega is not an anti-involution on HV: the c2 term changes sign
    a, b = Symbol("e", 1), Symbol("z", -1)
    lhs = bracket(HV.omega(b), HV.omega(a), HV)
    rhs = bracket(a, b, HV)
    assert lhs.terms[Symbol("z", 0)] == rhs.terms[Symbol("z", 0)]
    assert lhs.terms[HV.C2] == -rhs.terms[HV.C2]


def test_sl3_structure():
    s = sl3()
    assert str(bracket(s.symbol("e1"), s.symbol("e2"), s)) in ("1*e3", "-1*e3")
    assert len(s.basis) == 8


def test_fd_validation():
    with pytest.raises(ValidationError):
        FiniteDim("bad", {"a": 1, "b": -1, "h": 0}, {("a", "b"): {"h": 1}})
    s = sl2()
    with pytest.raises(ValidationError):
        FiniteDim("sl2", s.degrees, s.table, filtration=[("e",), ()], designated=["f"])
