"""Certificate-producing procedures on modules.

* nilpotency probes and string tops,
* singular vector extraction for finite-dimensional, Virasoro and
  Heisenberg-Virasoro modules,
* Shapovalov Gram matrices and their determinants,
* simplicity witnesses for the Heisenberg modules V_e,
* exact highest weight falsification on finite regions,
* the small-support explorer for K(0).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg
from .enveloping import (
    format_monomial,
    level_basis,
    monomial_weight,
    parse_monomial,
    virg_monomials,
    virg_raising_symbols,
)
from .errors import BudgetExceeded, ConsistencyError, DomainError, SpecMismatchError, ValidationError
from .liealg import (
    FiniteDim,
    HeisenbergVirasoro,
    Symbol,
    Virasoro,
)
from .modules import FDModule, HeisenbergModule, K0Module, Module, SequenceIndex, Vector, VermaModule
from .scalars import QuadInt, Scalar, parse_scalar

__all__ = [
    "DEFAULT_CAP",
    "DEFAULT_PROBE",
    "NilpotencyReport",
    "SingularVectorResult",
    "GramMatrix",
    "SimplicityCertificate",
    "nilpotency_index",
    "string_top",
    "extract_singular_fd",
    "extract_singular_virasoro",
    "extract_singular_hv",
    "shapovalov_gram",
    "gram_determinant",
    "simplicity_witness",
    "replay_certificate",
    "highest_weight_probe",
    "verma_region",
    "k0_region",
    "k0_probe_generators",
    "heisenberg_region",
    "small_support_explorer",
]

DEFAULT_CAP = 64
DEFAULT_PROBE = 4


# --------------------------------------------------------------------------
# nilpotency


@dataclass
class NilpotencyReport:
    generator: Symbol
    start: Vector
    index: int | None
    cap: int
    trail: list = field(default_factory=list)

    @property
    def exceeded(self) -> bool:
        return self.index is None

    def to_json_obj(self):
        spec = self.start.host.spec
        return {
            "generator": spec.format_symbol(self.generator),
            "start": self.start.to_json_obj(),
            "index": self.index,
            "exceeded": self.exceeded,
            "cap": self.cap,
            "trail": self.trail,
        }


def nilpotency_index(s: Symbol, v: Vector, cap: int = DEFAULT_CAP) -> NilpotencyReport:
    """Smallest ``m <= cap`` with ``s^m v = 0``; ``index`` is None when the cap is hit.

    ``trail`` records the term count of ``s^k v`` for ``k = 0 .. m``.
    """
    if cap < 1:
        raise DomainError("cap must be at least 1")
    host = v.host
    cur = v
    trail = [len(cur)]
    for m in range(cap + 1):
        if not cur:
            return NilpotencyReport(s, v, m, cap, trail)
        if m == cap:
            break
        cur = host.act(s, cur)
        trail.append(len(cur))
    return NilpotencyReport(s, v, None, cap, trail)


def string_top(s: Symbol, v: Vector, cap: int = DEFAULT_CAP) -> tuple[Vector, int]:
    """Return ``(s^m v, m)`` with ``m`` maximal such that ``s^m v != 0``."""
    if not v:
        raise DomainError("string top of the zero vector")
    host = v.host
    cur = v
    for m in range(cap + 1):
        nxt = host.act(s, cur)
        if not nxt:
            return cur, m
        cur = nxt
    raise BudgetExceeded(f"{host.spec.format_symbol(s)}-string exceeded cap {cap}", cap)


def _string_length(s, v, cap):
    """Smallest ``k`` with ``s^k v = 0``."""
    rep = nilpotency_index(s, v, cap) if v else None
    if rep is None:
        return 0
    if rep.exceeded:
        raise BudgetExceeded(f"{v.host.spec.format_symbol(s)}-string exceeded cap {cap}", cap)
    return rep.index


# --------------------------------------------------------------------------
# singular vectors


@dataclass
class SingularVectorResult:
    vector: Vector
    verified_generators: list
    budget_used: int
    stages: list = field(default_factory=list)

    def verify(self) -> bool:
        host = self.vector.host
        return bool(self.vector) and all(not host.act(s, self.vector) for s in self.verified_generators)

    def to_json_obj(self):
        spec = self.vector.host.spec
        return {
            "vector": self.vector.to_json_obj(),
            "verified_generators": [spec.format_symbol(s) for s in self.verified_generators],
            "budget_used": self.budget_used,
            "stages": [[spec.format_symbol(s), m] for s, m in self.stages],
        }


class _Tracker:
    def __init__(self, cap):
        self.cap = cap
        self.used = 0
        self.stages = []

    def top(self, s, v):
        out, m = string_top(s, v, self.cap)
        self.used += m + 1
        self.stages.append((s, m))
        return out


def _finish(v, generators, tracker):
    res = SingularVectorResult(v, list(generators), tracker.used, tracker.stages)
    if not res.verify():
        raise ConsistencyError("extracted vector is not annihilated by the raising generators")
    return res


def extract_singular_fd(start: Vector, filtration=None, designated=None) -> SingularVectorResult:
    """Walk the filtration of n_+ backwards, taking string tops of the designated vectors."""
    host = start.host
    if not isinstance(host, FDModule):
        raise SpecMismatchError("extract_singular_fd needs a finite-dimensional module")
    spec: FiniteDim = host.spec
    if not start:
        raise DomainError("start vector must be nonzero")
    if filtration is not None:
        # validate by building a throwaway spec with the same table
        FiniteDim(spec.name, spec.degrees, {k: dict(v) for k, v in spec.table.items()},
                  filtration=filtration, designated=designated)
        chain = list(designated)
    else:
        if not spec.filtration:
            raise ValidationError(f"{spec.name} has no filtration of n_+")
        chain = spec.designated
    tracker = _Tracker(host.dimension + 1)
    v = start
    for name in reversed(chain):
        v = tracker.top(spec.symbol(name), v)
    return _finish(v, spec.positive_generators(max(spec.degrees.values())), tracker)


def _virasoro_stage(v, tracker):
    """Vector killed by every e_i, i >= 1 (finite check happens at the end)."""
    e1 = Symbol("e", 1)
    v = tracker.top(e1, v)
    w = v.host.act(Symbol("e", 2), v)
    # e_1^k e_2 v is a nonzero multiple of e_{2+k} v
    k = _string_length(e1, w, tracker.cap)
    tracker.used += k
    n = max(2, k + 1)
    u = v
    for m in range(n, 0, -1):
        u = tracker.top(Symbol("e", m), u)
    return u


def _check_host(start, spec_type, name):
    host = start.host
    if not isinstance(host.spec, spec_type):
        raise SpecMismatchError(f"{name} needs a module over the {spec_type.tag} algebra, got {host.spec.tag}")
    if not start:
        raise DomainError("start vector must be nonzero")
    return host


def extract_singular_virasoro(start: Vector, probe: int = DEFAULT_PROBE, cap: int = DEFAULT_CAP) -> SingularVectorResult:
    """Singular vector in the submodule generated by ``start`` (Virasoro modules)."""
    host = _check_host(start, Virasoro, "extract_singular_virasoro")
    if probe < 2:
        raise DomainError("probe must be at least 2")
    tracker = _Tracker(cap)
    u = _virasoro_stage(start, tracker)
    return _finish(u, host.spec.positive_generators(probe), tracker)


def extract_singular_hv(start: Vector, probe: int = DEFAULT_PROBE, cap: int = DEFAULT_CAP) -> SingularVectorResult:
    """As :func:`extract_singular_virasoro`, then descend along the z-filtration."""
    host = _check_host(start, HeisenbergVirasoro, "extract_singular_hv")
    if probe < 2:
        raise DomainError("probe must be at least 2")
    tracker = _Tracker(cap)
    v = _virasoro_stage(start, tracker)
    x = host.act(Symbol("z", 1), v)
    if x:
        # e_1^k z_1 v is a nonzero multiple of z_{k+1} v, so z_i v = 0 for i > k
        k = _string_length(Symbol("e", 1), x, cap)
        tracker.used += k
        for j in range(k, 0, -1):
            v = tracker.top(Symbol("z", j), v)
    gens = sorted(set(host.spec.positive_generators(probe)) | {Symbol("z", 1)}, key=host.spec.order_key)
    return _finish(v, gens, tracker)


# --------------------------------------------------------------------------
# Shapovalov form


@dataclass
class GramMatrix:
    spec: object
    level: int
    basis: list
    entries: list

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[a][b] == self.entries[b][a] for a in range(n) for b in range(a + 1, n))

    def labels(self):
        return [format_monomial(m, self.spec, empty="v") for m in self.basis]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.entries:
            w.writerow([str(x) for x in row])
        return buf.getvalue()

    def to_json_obj(self):
        return {
            "level": self.level,
            "basis": self.labels(),
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json_obj(cls, spec, obj):
        basis = [parse_monomial(t, spec) for t in obj["basis"]]
        entries = [[parse_scalar(x) for x in row] for row in obj["entries"]]
        return cls(spec, obj["level"], basis, entries)

    @classmethod
    def from_csv(cls, spec, level, text):
        entries = [[parse_scalar(x) for x in row] for row in csv.reader(io.StringIO(text)) if row]
        return cls(spec, level, level_basis(spec, level), entries)

    def __eq__(self, other):
        return (isinstance(other, GramMatrix) and self.spec == other.spec and self.level == other.level
                and self.basis == other.basis and self.entries == other.entries)


def shapovalov_gram(m: VermaModule, level: int) -> GramMatrix:
    """``G[a][b]`` = coefficient of v in ``omega(u_a) u_b v``.

    ``omega`` sends a generator of degree d to its degree -d partner and
    reverses products; centrals are fixed.
    """
    if level < 0:
        raise DomainError("level must be non-negative")
    if not isinstance(m.spec, (Virasoro, HeisenbergVirasoro)):
        raise SpecMismatchError("Gram matrices are computed for Virasoro and Heisenberg-Virasoro Verma modules")
    spec = m.spec
    basis = level_basis(spec, level)
    entries = []
    for ua in basis:
        row = []
        for ub in basis:
            vec = m.basis_vector(ub)
            # omega(y1 ... yk) = omega(yk) ... omega(y1): omega(y1) acts first
            for s in ua:
                vec = m.act(spec.omega(s), vec)
            row.append(vec.coefficient(()))
        entries.append(row)
    return GramMatrix(spec, level, basis, entries)


def gram_determinant(g: GramMatrix):
    one = g.spec.one if g.spec is not None else Scalar(1)
    return linalg.determinant(g.entries, one)


# --------------------------------------------------------------------------
# simplicity witnesses on V_e


@dataclass
class SimplicityCertificate:
    start: Vector
    steps: list  # (position i, power k, term count after applying z_i^k)
    terminal: SequenceIndex
    terminal_coefficient: object

    def to_json_obj(self):
        return {
            "start": self.start.to_json_obj(),
            "steps": [{"position": i, "power": k, "terms": n} for i, k, n in self.steps],
            "terminal": str(self.terminal),
            "terminal_coefficient": str(self.terminal_coefficient),
        }


def simplicity_witness(u: Vector) -> SimplicityCertificate:
    """Reduce ``u`` to a single basis vector by powers of raising generators.

    Each step picks the first position ``i`` where two surviving indices
    differ and applies ``z_i^k`` with ``k`` the smallest entry at ``i``; the
    terms with that entry die and the others survive, so the count drops.
    """
    host = u.host
    if not isinstance(host, HeisenbergModule):
        raise SpecMismatchError("simplicity witnesses are defined for the modules V_e")
    if not u:
        raise DomainError("cannot certify the zero vector")
    cur = u
    steps = []
    while len(cur) > 1:
        idxs = list(cur.terms)
        h = max(x.horizon for x in idxs)
        i = next(p for p in range(1, h + 1) if len({x[p] for x in idxs}) > 1)
        k = min(x[i] for x in idxs)
        z = Symbol("z", i)
        for _ in range(k):
            cur = host.act(z, cur)
        prev = steps[-1][2] if steps else len(u)
        if not cur or len(cur) >= prev:
            raise ConsistencyError("reduction step did not shrink the vector")
        steps.append((i, k, len(cur)))
    (terminal, coef), = cur.terms.items()
    return SimplicityCertificate(u, steps, terminal, coef)


def replay_certificate(cert: SimplicityCertificate) -> bool:
    """Re-apply the steps through the module action and compare every recorded count."""
    host = cert.start.host
    cur = cert.start
    prev = len(cur)
    for i, k, n in cert.steps:
        for _ in range(k):
            cur = host.act(Symbol("z", i), cur)
        if not cur or len(cur) != n or n >= prev:
            return False
        prev = n
    return len(cur) == 1 and cur.coefficient(cert.terminal) == cert.terminal_coefficient


# --------------------------------------------------------------------------
# highest weight falsification


def highest_weight_probe(m: Module, region, generators) -> Vector | None:
    """Nonzero vector in span(region) killed by every symbol in ``generators``, or None.

    The action preserves the grading, so the kernel is computed separately on
    each weight slice of the region by exact elimination.
    """
    slices: dict = {}
    for idx in region:
        m.check_index(idx)
        slices.setdefault(m.index_weight(idx), []).append(idx)
    for weight in sorted(slices, key=_sort_weight, reverse=True):
        cols = slices[weight]
        rows: dict = {}
        for s in generators:
            for col in cols:
                for tgt, c in m.act_basis(s, col).items():
                    rows.setdefault((s, tgt), {})[col] = c
        kernel = linalg.nullspace(list(rows.values()), cols)
        if kernel:
            return Vector(m, kernel[0])
    return None


def _sort_weight(w):
    return w if not isinstance(w, QuadInt) else (w.approx(), w.a, w.b)


def verma_region(spec, max_level: int, include_top: bool = False) -> list:
    start = 0 if include_top else 1
    out = []
    for n in range(start, max_level + 1):
        out.extend(level_basis(spec, n))
    return out


def k0_region(m: K0Module, depth: int, box: int) -> list:
    """Nonempty monomials of at most ``depth`` factors with degree coordinates bounded by ``box``."""
    return virg_monomials(m.spec, depth, box)


def k0_probe_generators(m: K0Module, box: int) -> list:
    """Raising symbols ``e_x``, ``x > 0`` in G, with coordinates bounded by ``box``."""
    return virg_raising_symbols(m.spec, box)


def heisenberg_region(m: HeisenbergModule, max_entry: int, horizon: int) -> list:
    """Indices whose first ``horizon`` entries lie in ``1..max_entry`` and agree with the tail after."""
    return [m.index(list(entries)) for entries in product(range(1, max_entry + 1), repeat=horizon)]


# --------------------------------------------------------------------------
# small supports in K(0)


def small_support_explorer(m: K0Module, depth: int, threshold, box: int = 3) -> list:
    """Weights ``mu`` of monomials with at most ``depth`` boxed factors and ``0 < |mu| < threshold``.

    Returns ``[(mu, witness monomial)]`` ordered from the weight closest to
    zero outward; every comparison is exact.
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise DomainError("threshold must be positive")
    p, q = threshold.numerator, threshold.denominator
    found: dict = {}
    for mono in virg_monomials(m.spec, depth, box):
        mu = monomial_weight(mono, m.spec)
        # |mu| < p/q  <=>  p + q*mu > 0 for negative mu
        if mu.sign() < 0 and QuadInt(p + q * mu.a, q * mu.b).sign() > 0:
            found.setdefault(mu, mono)
    return sorted(found.items(), key=lambda kv: kv[0], reverse=True)
