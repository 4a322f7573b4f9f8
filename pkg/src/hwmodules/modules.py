"""Modules: Verma modules, the submodule K(0) over a dense grading, the
Heisenberg modules V_e built on eventually constant sequences, and
finite-dimensional modules given by matrices.

All modules share one small interface: ``act(symbol, vector)``,
``index_weight(index)`` and text conversion of basis indices.  Vectors are
:class:`Vector` instances bound to their host module.
"""
from __future__ import annotations

import json
import re
import threading
from itertools import product

from .enveloping import format_monomial, monomial_weight, parse_monomial
from .errors import ConsistencyError, DomainError, SpecMismatchError, ValidationError
from .liealg import (
    AlgebraElement,
    AlgebraSpec,
    FiniteDim,
    Heisenberg,
    HeisenbergVirasoro,
    HigherRankVirasoro,
    Part,
    Symbol,
    Virasoro,
    _coef_parser,
    triangular_part,
)
from .scalars import Scalar, format_combination, parse_combination

__all__ = [
    "Vector",
    "Module",
    "HighestWeight",
    "VermaModule",
    "K0Module",
    "SequenceIndex",
    "HeisenbergModule",
    "FDModule",
    "verma_new",
    "k0_new",
    "heisenberg_module_new",
    "weight_components",
    "sl2_irrep",
    "adjoint_module",
    "defining_module",
]


class Vector:
    """Finite linear combination of basis indices of ``host``."""

    __slots__ = ("host", "terms")

    def __init__(self, host: "Module", terms=None):
        self.host = host
        zero = host.spec.zero
        clean = {}
        for idx, c in (terms or {}).items():
            c = host.spec.coef(c)
            if c:
                clean[idx] = clean.get(idx, zero) + c
        self.terms = {k: c for k, c in clean.items() if c}

    def _check(self, other):
        if not isinstance(other, Vector):
            return False
        if other.host is not self.host and other.host != self.host:
            raise SpecMismatchError("vectors live in different modules")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        zero = self.host.spec.zero
        for k, c in other.terms.items():
            out[k] = out.get(k, zero) + c
        return Vector(self.host, out)

    def __neg__(self):
        return Vector(self.host, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        k = self.host.spec.coef(k)
        return Vector(self.host, {i: k * c for i, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Vector):
            return NotImplemented
        return self.host == other.host and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, idx):
        return self.terms.get(idx, self.host.spec.zero)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: self.host.index_sort_key(kv[0]))

    def __str__(self):
        h = self.host
        return format_combination((c, h.format_index(i)) for i, c in self.sorted_items())

    def __repr__(self):
        return f"Vector({self})"

    def to_json_obj(self) -> dict:
        return {self.host.format_index(i): str(c) for i, c in self.sorted_items()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


class Module:
    """Base class; subclasses implement ``_act_basis`` and index handling."""

    spec: AlgebraSpec

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self._cache: dict = {}
        self._lock = threading.Lock()

    # vectors ------------------------------------------------------------------
    def vector(self, terms=None) -> Vector:
        return Vector(self, terms)

    def basis_vector(self, idx, coef=1) -> Vector:
        self.check_index(idx)
        return Vector(self, {idx: coef})

    def zero(self) -> Vector:
        return Vector(self)

    def check_index(self, idx):
        pass

    def index_weight(self, idx):
        raise NotImplementedError

    def index_sort_key(self, idx):
        return idx

    def format_index(self, idx) -> str:
        return str(idx)

    def parse_index(self, text: str):
        raise NotImplementedError

    def parse_vector(self, text: str) -> Vector:
        """Parse ``coef*index + ...`` text or a JSON object ``{index: scalar}``."""
        t = text.strip()
        coef = _coef_parser(self.spec)
        if t.startswith("{"):
            items = [(coef(v), self.parse_index(k)) for k, v in json.loads(t).items()]
        else:
            items = parse_combination(t, self.parse_index, coef)
        out: dict = {}
        for c, idx in items:
            self.check_index(idx)
            out[idx] = out.get(idx, self.spec.zero) + c
        return Vector(self, out)

    def vector_from_json(self, obj) -> Vector:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return self.parse_vector(json.dumps(obj))

    # action -------------------------------------------------------------------
    def _act_basis(self, s: Symbol, idx) -> dict:
        raise NotImplementedError

    def act_basis(self, s: Symbol, idx) -> dict:
        key = (s, idx)
        out = self._cache.get(key)
        if out is None:
            out = self._act_basis(s, idx)
            with self._lock:
                self._cache.setdefault(key, out)
        return out

    def act(self, s, v: Vector) -> Vector:
        """Action of a basis symbol (or an :class:`AlgebraElement`) on ``v``."""
        if isinstance(s, AlgebraElement):
            if s.spec != self.spec:
                raise SpecMismatchError("element and module belong to different algebras")
            total = self.zero()
            for sym, c in s.terms.items():
                total = total + c * self.act(sym, v)
            return total
        if isinstance(s, str):
            s = self.spec.parse_symbol(s)
        self.spec.check(s)
        if v.host is not self and v.host != self:
            raise SpecMismatchError("vector does not belong to this module")
        zero = self.spec.zero
        out: dict = {}
        for idx, c in v.terms.items():
            for j, d in self.act_basis(s, idx).items():
                out[j] = out.get(j, zero) + c * d
        return Vector(self, out)

    def act_word(self, word, v: Vector) -> Vector:
        """Apply ``word`` (rightmost factor first)."""
        for s in reversed(tuple(word)):
            v = self.act(s, v)
        return v


def weight_components(v: Vector) -> dict:
    """Split ``v`` into homogeneous components keyed by weight."""
    host = v.host
    groups: dict = {}
    for idx, c in v.terms.items():
        groups.setdefault(host.index_weight(idx), {})[idx] = c
    return {w: Vector(host, t) for w, t in groups.items()}


# --------------------------------------------------------------------------
# Verma modules


class HighestWeight:
    """Values of the Cartan basis symbols on the highest weight vector."""

    def __init__(self, spec: AlgebraSpec, values):
        self.spec = spec
        vals = {}
        for k, c in dict(values).items():
            s = spec.parse_symbol(k) if isinstance(k, str) else spec.check(k)
            if triangular_part(s) is not Part.CARTAN:
                raise DomainError(f"{spec.format_symbol(s)} is not in the Cartan part")
            vals[s] = _coef_parser(spec)(c) if isinstance(c, str) else spec.coef(c)
        missing = [spec.format_symbol(s) for s in spec.cartan_basis() if s not in vals]
        if missing:
            raise DomainError(f"highest weight is missing values for {', '.join(missing)}")
        self.values = vals

    @classmethod
    def zero(cls, spec):
        return cls(spec, {s: 0 for s in spec.cartan_basis()})

    def __getitem__(self, s):
        return self.values[s]

    def __eq__(self, other):
        return isinstance(other, HighestWeight) and self.spec == other.spec and self.values == other.values

    def __hash__(self):
        return hash((self.spec, frozenset(self.values.items())))

    def __str__(self):
        return " ".join(f"{self.spec.format_symbol(s)}={c}" for s, c in self.values.items())


class VermaModule(Module):
    """Verma module M(hw); basis indices are sorted lowering monomials, ``()`` is the generator."""

    def __init__(self, spec: AlgebraSpec, hw: HighestWeight):
        super().__init__(spec)
        if hw.spec != spec:
            raise SpecMismatchError("highest weight belongs to another algebra")
        self.hw = hw
        self._minus_key = spec.order_key

    def __eq__(self, other):
        return type(other) is type(self) and self.spec == other.spec and self.hw == other.hw

    def __hash__(self):
        return hash((type(self).__name__, self.spec, self.hw))

    def __repr__(self):
        return f"{type(self).__name__}({self.spec.tag}, {self.hw})"

    @property
    def generator(self) -> Vector:
        return Vector(self, {(): 1})

    def check_index(self, idx):
        if not isinstance(idx, tuple) or any(triangular_part(s) is not Part.MINUS for s in idx):
            raise DomainError(f"{idx!r} is not a lowering monomial")

    def index_weight(self, idx):
        return monomial_weight(idx, self.spec)

    def index_sort_key(self, idx):
        return (len(idx), [self.spec.order_key(s) for s in idx])

    def format_index(self, idx):
        return format_monomial(idx, self.spec, empty="v")

    def parse_index(self, text):
        return parse_monomial(text, self.spec)

    def _act_basis(self, s, m):
        spec = self.spec
        part = triangular_part(s)
        if not m:
            if part is Part.PLUS:
                return {}
            if part is Part.CARTAN:
                val = self.hw[s]
                return {(): val} if val else {}
            return {(s,): spec.one}
        key = spec.order_key
        if part is Part.MINUS and key(s) <= key(m[0]):
            return {(s,) + m: spec.one}
        # s y rest v = y (s rest v) + [s, y] rest v
        y, rest = m[0], m[1:]
        zero = spec.zero
        out: dict = {}
        for mono, c in self.act_basis(s, rest).items():
            for mono2, d in self.act_basis(y, mono).items():
                out[mono2] = out.get(mono2, zero) + c * d
        for t, c in spec.bracket_symbols(s, y).items():
            for mono2, d in self.act_basis(t, rest).items():
                out[mono2] = out.get(mono2, zero) + c * d
        return {k: c for k, c in out.items() if c}


def verma_new(spec: AlgebraSpec, hw) -> VermaModule:
    if not isinstance(spec, (Virasoro, HeisenbergVirasoro, HigherRankVirasoro)):
        raise SpecMismatchError(f"Verma modules are built for Virasoro-type algebras, not {spec.tag}")
    if not isinstance(hw, HighestWeight):
        hw = HighestWeight(spec, hw)
    return VermaModule(spec, hw)


class K0Module(VermaModule):
    """Kernel of M(0) -> L(0) over a dense grading: span of nonempty monomials."""

    def __init__(self, spec: HigherRankVirasoro):
        super().__init__(spec, HighestWeight.zero(spec))

    def __repr__(self):
        return f"K0Module({self.spec!r})"

    @property
    def generator(self):
        raise DomainError("K(0) does not contain the highest weight vector of M(0)")

    def check_index(self, idx):
        super().check_index(idx)
        if idx == ():
            raise DomainError("the highest weight line is not part of K(0)")

    def act_basis(self, s, idx):
        out = super().act_basis(s, idx)
        if () in out:
            raise ConsistencyError("action left K(0): nonzero component on the highest weight line")
        return out


def k0_new(generators=None) -> K0Module:
    spec = HigherRankVirasoro() if generators is None else HigherRankVirasoro(generators)
    return K0Module(spec)


# --------------------------------------------------------------------------
# Heisenberg modules V_e


class SequenceIndex:
    """Eventually constant sequence ``(eps_1, eps_2, ...)`` of positive integers.

    Stored as the entries up to the horizon plus the constant ``default``
    taken beyond it; trailing entries equal to ``default`` are dropped.
    """

    __slots__ = ("entries", "default")

    def __init__(self, entries=(), default: int = 2):
        entries = list(entries)
        if default < 1 or any(e < 1 for e in entries):
            raise DomainError("sequence entries must be positive integers")
        while entries and entries[-1] == default:
            entries.pop()
        object.__setattr__(self, "entries", tuple(entries))
        object.__setattr__(self, "default", default)

    def __setattr__(self, name, value):
        raise AttributeError("SequenceIndex is immutable")

    @property
    def horizon(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        if i < 1:
            raise IndexError("positions start at 1")
        return self.entries[i - 1] if i <= len(self.entries) else self.default

    def with_entry(self, i: int, value: int) -> "SequenceIndex":
        ent = list(self.entries) + [self.default] * max(0, i - len(self.entries))
        ent[i - 1] = value
        return SequenceIndex(ent, self.default)

    def __eq__(self, other):
        return isinstance(other, SequenceIndex) and self.entries == other.entries and self.default == other.default

    def __hash__(self):
        return hash((self.entries, self.default))

    def __lt__(self, other):
        return (self.default, self.entries) < (other.default, other.entries)

    def __str__(self):
        return "(" + "".join(f"{e}," for e in self.entries) + f"{self.default}*,...)"

    def __repr__(self):
        return f"SequenceIndex({self})"

    @classmethod
    def parse(cls, text: str) -> "SequenceIndex":
        t = text.strip().replace(" ", "")
        m = re.fullmatch(r"\(((?:\d+,)*)(\d+)\*,\.\.\.\)", t)
        if not m:
            raise ValueError(f"not a sequence index: {text!r}")
        entries = [int(x) for x in m.group(1).split(",") if x]
        return cls(entries, int(m.group(2)))


class HeisenbergModule(Module):
    """Module V_e over the Heisenberg algebra with basis ``v_eps``, eps eventually equal to e.

    ``z_0`` acts as the identity; for ``i > 0``, ``z_i`` lowers entry ``i``
    (killing the vector when the entry is 1) and ``z_{-i}`` raises entry
    ``i`` with coefficient ``-i * eps_i``.
    """

    def __init__(self, default: int = 2, exceptions=None):
        super().__init__(Heisenberg())
        exceptions = dict(exceptions or {})
        if default < 1 or any(v < 1 for v in exceptions.values()):
            raise DomainError("tail values must be at least 1")
        if any(i < 1 for i in exceptions):
            raise DomainError("tail positions start at 1")
        self.default = default
        horizon = max(exceptions, default=0)
        self.tail = SequenceIndex([exceptions.get(i, default) for i in range(1, horizon + 1)], default)

    def __eq__(self, other):
        return isinstance(other, HeisenbergModule) and self.tail == other.tail

    def __hash__(self):
        return hash(("V", self.tail))

    def __repr__(self):
        return f"HeisenbergModule(tail={self.tail})"

    @property
    def tail_vector(self) -> Vector:
        return Vector(self, {self.tail: 1})

    def index(self, entries) -> SequenceIndex:
        return SequenceIndex(entries, self.default)

    def check_index(self, idx):
        if not isinstance(idx, SequenceIndex) or idx.default != self.default:
            raise DomainError(f"{idx!r} is not eventually equal to the tail of this module")

    def index_weight(self, idx):
        h = max(idx.horizon, self.tail.horizon)
        return -sum(i * (idx[i] - self.tail[i]) for i in range(1, h + 1))

    def index_sort_key(self, idx):
        return (idx.horizon, idx.entries)

    def format_index(self, idx):
        return str(idx)

    def parse_index(self, text):
        idx = SequenceIndex.parse(text)
        self.check_index(idx)
        return idx

    def _act_basis(self, s, eps):
        i = s.degree
        one = self.spec.one
        if i == 0:
            return {eps: one}
        if i > 0:
            if eps[i] == 1:
                return {}
            return {eps.with_entry(i, eps[i] - 1): one}
        j = -i
        return {eps.with_entry(j, eps[j] + 1): Scalar(i * eps[j])}


def heisenberg_module_new(tail=2, exceptions=None) -> HeisenbergModule:
    """``tail`` is the constant default; ``exceptions`` maps positions to other tail values."""
    return HeisenbergModule(tail, exceptions)


# --------------------------------------------------------------------------
# finite-dimensional modules


class FDModule(Module):
    """Module over a :class:`FiniteDim` algebra given by exact action matrices.

    ``action[name]`` maps each basis label to ``{label: coefficient}`` (the
    image column).  ``weights`` optionally assigns a grading degree to each
    label.  All bracket relations are checked on construction.
    """

    def __init__(self, spec: FiniteDim, labels, action, weights=None, name="module"):
        super().__init__(spec)
        self.labels = tuple(labels)
        self.name = name
        self._pos = {lab: k for k, lab in enumerate(self.labels)}
        self.action = {}
        for nm in spec.names:
            cols = action.get(nm, {})
            self.action[nm] = {
                lab: {r: Scalar.coerce(c) for r, c in cols.get(lab, {}).items() if c} for lab in self.labels
            }
        self.weights = dict(weights) if weights is not None else None
        self._validate()

    def __repr__(self):
        return f"FDModule({self.spec.name}, {self.name}, dim={self.dimension})"

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def _validate(self):
        for x, y in product(self.spec.basis, repeat=2):
            lhs_target = self.spec.bracket_symbols(x, y)
            for lab in self.labels:
                v = self.basis_vector(lab)
                lhs = self.act(x, self.act(y, v)) - self.act(y, self.act(x, v))
                rhs = self.zero()
                for s, c in lhs_target.items():
                    rhs = rhs + c * self.act(s, v)
                if lhs != rhs:
                    raise ValidationError(f"matrices violate [{x}, {y}] on {lab}")

    def check_index(self, idx):
        if idx not in self._pos:
            raise DomainError(f"{idx!r} is not a basis label of {self.name}")

    def index_weight(self, idx):
        return 0 if self.weights is None else self.weights[idx]

    def index_sort_key(self, idx):
        return self._pos[idx]

    def parse_index(self, text):
        t = text.strip()
        self.check_index(t)
        return t

    def _act_basis(self, s, lab):
        return self.action[s.key][lab]


def sl2_irrep(n: int, spec: FiniteDim | None = None) -> FDModule:
    """Simple sl2-module of dimension ``n + 1`` with basis ``v0`` (highest) .. ``vn``."""
    from .liealg import sl2

    spec = spec or sl2()
    labels = [f"v{k}" for k in range(n + 1)]
    e, f, h = {}, {}, {}
    for k in range(n + 1):
        h[labels[k]] = {labels[k]: n - 2 * k}
        f[labels[k]] = {labels[k + 1]: k + 1} if k < n else {}
        e[labels[k]] = {labels[k - 1]: n - k + 1} if k > 0 else {}
    weights = {labels[k]: -k for k in range(n + 1)}
    return FDModule(spec, labels, {"e": e, "f": f, "h": h}, weights, name=f"V({n})")


def adjoint_module(spec: FiniteDim) -> FDModule:
    action = {}
    for x in spec.names:
        action[x] = {y: dict(spec.table.get((x, y), {})) for y in spec.names}
    return FDModule(spec, spec.names, action, weights=dict(spec.degrees), name="adjoint")


def defining_module(spec: FiniteDim) -> FDModule:
    """Natural representation of sl_n by its defining matrices."""
    mats = spec.defining_matrices
    if mats is None:
        raise DomainError(f"{spec.name} has no defining matrices")
    n = len(next(iter(mats.values())))
    labels = [f"u{k + 1}" for k in range(n)]
    action = {}
    for nm, m in mats.items():
        action[nm] = {labels[j]: {labels[i]: m[i][j] for i in range(n) if m[i][j]} for j in range(n)}
    weights = {labels[k]: -k for k in range(n)}
    return FDModule(spec, labels, action, weights, name="defining")
