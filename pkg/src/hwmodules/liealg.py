"""Basis symbols, gradings and structure constants of the supported Lie algebras.

Every algebra is an :class:`AlgebraSpec`.  Basis vectors are :class:`Symbol`
tuples ``(kind, degree, key)``:

* ``e``/``z`` with an integer degree, or a :class:`QuadInt` degree for the
  higher rank Virasoro algebra,
* ``c`` for central elements (``key`` is the index 1..3),
* ``x`` for basis vectors of a finite-dimensional algebra (``key`` is the name).

The grading decides the triangular decomposition: negative degree is the
lowering part, zero the Cartan part and positive the raising part.
"""
from __future__ import annotations

import re
from enum import IntEnum
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .errors import DomainError, SpecMismatchError, ValidationError
from .scalars import (
    I,
    QuadInt,
    QuadRational,
    Scalar,
    format_combination,
    parse_combination,
    parse_quad_int,
)

__all__ = [
    "Symbol",
    "Part",
    "AlgebraSpec",
    "Virasoro",
    "HeisenbergVirasoro",
    "Heisenberg",
    "HigherRankVirasoro",
    "FiniteDim",
    "AlgebraElement",
    "bracket",
    "weight_of",
    "triangular_part",
    "jacobi_probe",
    "sl2",
    "sl3",
    "algebra_by_name",
]


class Symbol(NamedTuple):
    kind: str
    degree: object
    key: object = 0

    def __str__(self):
        if self.kind == "c":
            return f"c{self.key}"
        if self.kind == "x":
            return str(self.key)
        if isinstance(self.degree, QuadInt):
            return f"{self.kind}({self.degree.a},{self.degree.b})"
        return f"{self.kind}{self.degree}"


class Part(IntEnum):
    MINUS = 0
    CARTAN = 1
    PLUS = 2

    def __str__(self):
        return self.name.capitalize()


def _sign(d) -> int:
    if isinstance(d, QuadInt):
        return d.sign()
    return (d > 0) - (d < 0)


def weight_of(s: Symbol):
    """Degree of a basis symbol; central symbols have degree zero."""
    return s.degree


def triangular_part(s: Symbol) -> Part:
    return Part(_sign(s.degree) + 1)


_KIND_RANK = {"e": 0, "z": 1, "x": 2, "c": 3}


class AlgebraSpec:
    """Common machinery; subclasses supply membership, brackets and text syntax."""

    tag = "abstract"
    field = Scalar

    def __init__(self):
        self._bracket_cache: dict = {}
        self._key_cache: dict = {}

    # identity ---------------------------------------------------------------
    def _identity(self):
        return (self.tag,)

    def __eq__(self, other):
        return isinstance(other, AlgebraSpec) and self._identity() == other._identity()

    def __hash__(self):
        return hash(self._identity())

    def __repr__(self):
        return f"{type(self).__name__}()"

    # coefficients -----------------------------------------------------------
    def coef(self, x):
        return self.field.coerce(x)

    @property
    def zero(self):
        return self.field(0)

    @property
    def one(self):
        return self.field(1)

    @property
    def zero_degree(self):
        return 0

    # symbols ----------------------------------------------------------------
    def contains(self, s) -> bool:
        raise NotImplementedError

    def check(self, s: Symbol) -> Symbol:
        if not isinstance(s, Symbol) or not self.contains(s):
            raise SpecMismatchError(f"{s!r} is not a basis symbol of {self.tag}")
        return s

    def cartan_basis(self) -> tuple:
        raise NotImplementedError

    def lowering_kinds(self) -> tuple:
        """Kinds of the generators spanning each nonzero degree, in PBW order."""
        raise NotImplementedError

    def symbols_of_degree(self, d) -> list:
        if d == self.zero_degree:
            return list(self.cartan_basis())
        return [Symbol(k, d) for k in self.lowering_kinds()]

    def positive_generators(self, probe: int) -> list:
        """Raising basis symbols of degree 1..probe (integer-graded algebras)."""
        out = []
        for d in range(1, probe + 1):
            out.extend(self.symbols_of_degree(d))
        return out

    def order_key(self, s: Symbol):
        k = self._key_cache.get(s)
        if k is None:
            k = (triangular_part(s), s.degree, _KIND_RANK[s.kind], s.key)
            self._key_cache[s] = k
        return k

    def format_symbol(self, s: Symbol) -> str:
        return str(s)

    def parse_symbol(self, text: str) -> Symbol:
        t = text.strip()
        m = re.fullmatch(r"([ez])([+-]?\d+)", t)
        if m:
            s = Symbol(m.group(1), int(m.group(2)))
        else:
            m = re.fullmatch(r"c([1-3]?)", t)
            if not m:
                raise ValueError(f"not a symbol: {text!r}")
            s = Symbol("c", 0, int(m.group(1) or 1))
        if not self.contains(s):
            raise ValueError(f"{text!r} is not a symbol of {self.tag}")
        return s

    def omega(self, s: Symbol) -> Symbol:
        """Transpose partner: degree d goes to degree -d, centrals are fixed."""
        if s.kind == "c":
            return s
        return Symbol(s.kind, -s.degree, s.key)

    # brackets -----------------------------------------------------------------
    def _bracket(self, x: Symbol, y: Symbol) -> dict:
        raise NotImplementedError

    def bracket_symbols(self, x: Symbol, y: Symbol) -> dict:
        """``[x, y]`` as a dict ``Symbol -> coefficient`` without zero entries."""
        key = (x, y)
        out = self._bracket_cache.get(key)
        if out is None:
            self.check(x)
            self.check(y)
            out = {s: c for s, c in self._bracket(x, y).items() if c}
            self._bracket_cache[key] = out
        return out


class Virasoro(AlgebraSpec):
    """``[e_i, e_j] = (j-i) e_{i+j} + delta_{i,-j} (i^3-i)/12 c``."""

    tag = "virasoro"
    C = Symbol("c", 0, 1)

    def contains(self, s):
        if s.kind == "e":
            return type(s.degree) is int and s.key == 0
        return s == self.C

    def cartan_basis(self):
        return (Symbol("e", 0), self.C)

    def lowering_kinds(self):
        return ("e",)

    def format_symbol(self, s):
        return "c" if s == self.C else str(s)

    def parse_symbol(self, text):
        if text.strip() == "c1":
            raise ValueError("the Virasoro central element is written 'c'")
        return super().parse_symbol(text)

    def _bracket(self, x, y):
        if x.kind == "c" or y.kind == "c":
            return {}
        i, j = x.degree, y.degree
        out = {Symbol("e", i + j): Scalar(j - i)}
        if i == -j:
            out[self.C] = Scalar(Fraction(i ** 3 - i, 12))
        return out


class HeisenbergVirasoro(AlgebraSpec):
    """Heisenberg-Virasoro algebra with centrals c1, c2, c3."""

    tag = "hv"
    C1, C2, C3 = Symbol("c", 0, 1), Symbol("c", 0, 2), Symbol("c", 0, 3)

    def contains(self, s):
        if s.kind in ("e", "z"):
            return type(s.degree) is int and s.key == 0
        return s.kind == "c" and s.degree == 0 and s.key in (1, 2, 3)

    def cartan_basis(self):
        return (Symbol("e", 0), Symbol("z", 0), self.C1, self.C2, self.C3)

    def lowering_kinds(self):
        return ("e", "z")

    def parse_symbol(self, text):
        if text.strip() == "c":
            raise ValueError("Heisenberg-Virasoro centrals are written c1, c2, c3")
        return super().parse_symbol(text)

    def _bracket(self, x, y):
        if x.kind == "c" or y.kind == "c":
            return {}
        i, j = x.degree, y.degree
        if x.kind == "e" and y.kind == "e":
            out = {Symbol("e", i + j): Scalar(j - i)}
            if i == -j:
                out[self.C1] = Scalar(Fraction(j ** 3 - j, 12))
            return out
        if x.kind == "e" and y.kind == "z":
            out = {Symbol("z", i + j): Scalar(j)}
            if i == -j:
                out[self.C2] = -I * (j * j)
            return out
        if x.kind == "z" and y.kind == "e":
            return {s: -c for s, c in self._bracket(y, x).items()}
        # z, z
        if i == -j:
            return {self.C3: Scalar(j)}
        return {}


class Heisenberg(AlgebraSpec):
    """``[z_i, z_j] = j delta_{i,-j} z_0``; ``z_0`` is central."""

    tag = "heisenberg"
    Z0 = Symbol("z", 0)

    def contains(self, s):
        return s.kind == "z" and type(s.degree) is int and s.key == 0

    def cartan_basis(self):
        return (self.Z0,)

    def lowering_kinds(self):
        return ("z",)

    def parse_symbol(self, text):
        m = re.fullmatch(r"z([+-]?\d+)", text.strip())
        if not m:
            raise ValueError(f"{text!r} is not a symbol of {self.tag}")
        return Symbol("z", int(m.group(1)))

    def omega(self, s):
        return Symbol("z", -s.degree)

    def _bracket(self, x, y):
        i, j = x.degree, y.degree
        if i == -j and j != 0:
            return {self.Z0: Scalar(j)}
        return {}


class HigherRankVirasoro(AlgebraSpec):
    """Virasoro-type algebra indexed by a rank-2 subgroup G of Z + Z*sqrt2.

    Brackets follow the Virasoro formula with degrees in G; coefficients live
    in Q(sqrt2).
    """

    tag = "virg"
    field = QuadRational

    def __init__(self, generators=(QuadInt(1, 0), QuadInt(0, 1))):
        super().__init__()
        g1, g2 = (g if isinstance(g, QuadInt) else parse_quad_int(str(g)) for g in generators)
        det = g1.a * g2.b - g1.b * g2.a
        if det == 0:
            raise ValidationError("generators of G must be Z-independent")
        self.generators = (g1, g2)
        self._det = det
        self.C = Symbol("c", QuadInt(0, 0), 1)

    def _identity(self):
        return (self.tag, self.generators)

    def __repr__(self):
        g1, g2 = self.generators
        return f"HigherRankVirasoro(({g1!r}, {g2!r}))"

    @property
    def zero_degree(self):
        return QuadInt(0, 0)

    def in_group(self, d: QuadInt) -> bool:
        g1, g2 = self.generators
        # solve m*g1 + n*g2 = d over the integers (Cramer's rule)
        m_num = d.a * g2.b - d.b * g2.a
        n_num = g1.a * d.b - g1.b * d.a
        return m_num % self._det == 0 and n_num % self._det == 0

    def contains(self, s):
        if not isinstance(s.degree, QuadInt):
            return False
        if s.kind == "e":
            return s.key == 0 and self.in_group(s.degree)
        return s == self.C

    def cartan_basis(self):
        return (Symbol("e", QuadInt(0, 0)), self.C)

    def lowering_kinds(self):
        return ("e",)

    def positive_generators(self, probe):
        raise DomainError("raising generators of a dense grading need an explicit coefficient box")

    def format_symbol(self, s):
        return "c" if s == self.C else str(s)

    def parse_symbol(self, text):
        t = text.strip().replace(" ", "")
        if t == "c":
            return self.C
        m = re.fullmatch(r"e\(([+-]?\d+),([+-]?\d+)\)", t)
        if m:
            s = Symbol("e", QuadInt(int(m.group(1)), int(m.group(2))))
        else:
            m = re.fullmatch(r"e([+-]?\d+)", t)
            if not m:
                raise ValueError(f"not a symbol: {text!r}")
            s = Symbol("e", QuadInt(int(m.group(1)), 0))
        if not self.contains(s):
            raise ValueError(f"{text!r} is not a symbol of {self.tag}")
        return s

    def _bracket(self, x, y):
        if x.kind == "c" or y.kind == "c":
            return {}
        i, j = x.degree, y.degree
        out = {Symbol("e", i + j): QuadRational(j.a - i.a, j.b - i.b)}
        if i == -j:
            qi = i.to_field()
            out[self.C] = (qi * qi * qi - qi) / 12
        return out


class FiniteDim(AlgebraSpec):
    """Finite-dimensional algebra given by a structure-constant table.

    ``degrees`` maps basis names to integer degrees (the triangular
    decomposition); ``table[(a, b)]`` is ``{name: coefficient}``.
    ``filtration`` lists name sets ``n_0 = n_+ ⊃ n_1 ⊃ ... ⊃ n_d = {}`` and
    ``designated[k]`` is the basis vector spanning ``n_k`` modulo ``n_{k+1}``.
    """

    tag = "fd"

    def __init__(self, name, degrees, table, filtration=None, designated=None, matrices=None):
        super().__init__()
        self.name = name
        self.degrees = dict(degrees)
        self.names = tuple(degrees)
        self._sym = {n: Symbol("x", d, n) for n, d in self.degrees.items()}
        self.table = {}
        for (a, b), val in table.items():
            self.table[(a, b)] = {n: Scalar.coerce(Fraction(c) if not isinstance(c, Scalar) else c)
                                  for n, c in val.items() if c}
        self.defining_matrices = matrices
        self._validate_table()
        self.filtration = [tuple(f) for f in (filtration or [])]
        self.designated = list(designated or [])
        if filtration is not None:
            self._validate_filtration()

    def _identity(self):
        return (self.tag, self.name)

    def __repr__(self):
        return f"FiniteDim({self.name!r})"

    def symbol(self, name: str) -> Symbol:
        try:
            return self._sym[name]
        except KeyError:
            raise ValueError(f"{name!r} is not a basis vector of {self.name}") from None

    @property
    def basis(self):
        return [self._sym[n] for n in self.names]

    def contains(self, s):
        return s.kind == "x" and self._sym.get(s.key) == s

    def cartan_basis(self):
        return tuple(s for s in self.basis if s.degree == 0)

    def symbols_of_degree(self, d):
        return [s for s in self.basis if s.degree == d]

    def positive_generators(self, probe):
        return [s for s in self.basis if 0 < s.degree <= probe]

    def parse_symbol(self, text):
        return self.symbol(text.strip())

    def omega(self, s):
        raise DomainError("no transpose map is fixed for finite-dimensional algebras")

    def _bracket(self, x, y):
        return {self._sym[n]: c for n, c in self.table.get((x.key, y.key), {}).items()}

    # validation -------------------------------------------------------------
    def _validate_table(self):
        for a, b in product(self.names, repeat=2):
            ab = self.table.get((a, b), {})
            ba = self.table.get((b, a), {})
            if any(ab.get(n, 0) + ba.get(n, 0) for n in set(ab) | set(ba)):
                raise ValidationError(f"table is not antisymmetric at ({a}, {b})")
            for n in ab:
                if self.degrees[n] != self.degrees[a] + self.degrees[b]:
                    raise ValidationError(f"[{a},{b}] breaks the grading")
        for x, y, z in product(self.basis, repeat=3):
            if jacobi_probe(x, y, z, self):
                raise ValidationError(f"Jacobi identity fails on ({x}, {y}, {z})")

    def _validate_filtration(self):
        f = self.filtration
        plus = {n for n in self.names if self.degrees[n] > 0}
        if not f or set(f[0]) != plus or f[-1]:
            raise ValidationError("filtration must start at n_+ and end at 0")
        if len(self.designated) != len(f) - 1:
            raise ValidationError("one designated vector per filtration step is required")
        cartan = [n for n in self.names if self.degrees[n] == 0]
        for k in range(1, len(f)):
            big, small = set(f[k - 1]), set(f[k])
            if not small < big or len(big) != len(small) + 1:
                raise ValidationError(f"n_{k} must have codimension 1 in n_{k - 1}")
            if big - small != {self.designated[k - 1]}:
                raise ValidationError(f"designated vector of step {k} is not in n_{k - 1} minus n_{k}")
            for a, b in product(big | set(cartan), small):
                if not set(self.table.get((a, b), {})) <= small:
                    raise ValidationError(f"n_{k} is not an ideal of n_{k - 1} stable under the Cartan part")


# --------------------------------------------------------------------------
# elements


class AlgebraElement:
    """Sparse linear combination of basis symbols of one algebra."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms=None):
        self.spec = spec
        clean = {}
        for s, c in (terms or {}).items():
            spec.check(s)
            c = spec.coef(c)
            if c:
                clean[s] = c
        self.terms = clean

    @classmethod
    def of(cls, spec, s: Symbol | str, coef=1):
        if isinstance(s, str):
            s = spec.parse_symbol(s)
        return cls(spec, {s: coef})

    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        if other.spec != self.spec:
            raise SpecMismatchError(f"cannot combine elements of {self.spec.tag} and {other.spec.tag}")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, self.spec.zero) + c
        return AlgebraElement(self.spec, out)

    def __neg__(self):
        return AlgebraElement(self.spec, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        k = self.spec.coef(k)
        return AlgebraElement(self.spec, {s: k * c for s, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (_KIND_RANK[kv[0].kind], kv[0].degree, kv[0].key))

    def __str__(self):
        return format_combination((c, self.spec.format_symbol(s)) for s, c in self.sorted_items())

    def __repr__(self):
        return f"AlgebraElement({self.spec.tag}: {self})"

    @classmethod
    def parse(cls, spec, text: str):
        items = parse_combination(text, spec.parse_symbol, _coef_parser(spec))
        out = {}
        for c, s in items:
            out[s] = out.get(s, spec.zero) + c
        return cls(spec, out)


def _coef_parser(spec):
    if spec.field is QuadRational:
        from .scalars import parse_quad_rational

        return parse_quad_rational
    from .scalars import parse_scalar

    return parse_scalar


def _as_element(x, spec):
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, Symbol):
        return AlgebraElement(spec, {x: 1})
    raise TypeError(f"expected AlgebraElement or Symbol, got {type(x).__name__}")


def bracket(x, y, spec: AlgebraSpec | None = None) -> AlgebraElement:
    """Bilinear extension of the structure constants of ``spec``."""
    if spec is None:
        spec = next((v.spec for v in (x, y) if isinstance(v, AlgebraElement)), None)
        if spec is None:
            raise TypeError("spec is required when bracketing bare symbols")
    x, y = _as_element(x, spec), _as_element(y, spec)
    if x.spec != spec or y.spec != spec:
        raise SpecMismatchError("bracket arguments belong to different algebras")
    out: dict = {}
    zero = spec.zero
    for sx, cx in x.terms.items():
        for sy, cy in y.terms.items():
            for s, c in spec.bracket_symbols(sx, sy).items():
                out[s] = out.get(s, zero) + cx * cy * c
    return AlgebraElement(spec, out)


def jacobi_probe(x, y, z, spec: AlgebraSpec) -> AlgebraElement:
    """``[x,[y,z]] + [y,[z,x]] + [z,[x,y]]``; zero for a Lie algebra."""
    return (
        bracket(x, bracket(y, z, spec), spec)
        + bracket(y, bracket(z, x, spec), spec)
        + bracket(z, bracket(x, y, spec), spec)
    )


# --------------------------------------------------------------------------
# sl_n


def _elementary(n, i, j):
    m = [[Fraction(0)] * n for _ in range(n)]
    m[i][j] = Fraction(1)
    return m


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _commutator(a, b):
    ab, ba = _matmul(a, b), _matmul(b, a)
    return [[ab[i][j] - ba[i][j] for j in range(len(a))] for i in range(len(a))]


def _sl_data(n, names):
    """Chevalley basis of sl_n: ``names[(i, j)]`` for E_ij, ``names[k]`` for h_k."""
    mats, degrees = {}, {}
    for (i, j), nm in ((k, v) for k, v in names.items() if isinstance(k, tuple)):
        mats[nm] = _elementary(n, i, j)
        degrees[nm] = j - i
    for k in range(n - 1):
        h = _elementary(n, k, k)
        h[k + 1][k + 1] = Fraction(-1)
        mats[names[k]] = h
        degrees[names[k]] = 0
    by_pos = {k: v for k, v in names.items() if isinstance(k, tuple)}

    def coords(m):
        out = {}
        for (i, j), nm in by_pos.items():
            if m[i][j]:
                out[nm] = m[i][j]
        running = Fraction(0)
        for k in range(n - 1):
            running += m[k][k]
            if running:
                out[names[k]] = running
        return out

    table = {}
    for a, b in product(mats, repeat=2):
        val = coords(_commutator(mats[a], mats[b]))
        if val:
            table[(a, b)] = val
    order = sorted(mats, key=lambda nm: (degrees[nm], nm))
    return {nm: degrees[nm] for nm in order}, table, mats


def sl2() -> FiniteDim:
    """sl2 with basis f, h, e: ``[h,e] = 2e``, ``[h,f] = -2f``, ``[e,f] = h``."""
    degrees, table, mats = _sl_data(2, {(0, 1): "e", (1, 0): "f", 0: "h"})
    return FiniteDim("sl2", degrees, table, filtration=[("e",), ()], designated=["e"], matrices=mats)


def sl3() -> FiniteDim:
    names = {(0, 1): "e1", (1, 2): "e2", (0, 2): "e3",
             (1, 0): "f1", (2, 1): "f2", (2, 0): "f3", 0: "h1", 1: "h2"}
    degrees, table, mats = _sl_data(3, names)
    return FiniteDim(
        "sl3", degrees, table,
        filtration=[("e1", "e2", "e3"), ("e2", "e3"), ("e3",), ()],
        designated=["e1", "e2", "e3"],
        matrices=mats,
    )


_FACTORIES = {
    "virasoro": Virasoro,
    "hv": HeisenbergVirasoro,
    "heisenberg": Heisenberg,
    "virg": HigherRankVirasoro,
    "sl2": sl2,
    "sl3": sl3,
}


def algebra_by_name(name: str) -> AlgebraSpec:
    try:
        return _FACTORIES[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; choose from {sorted(_FACTORIES)}") from None
