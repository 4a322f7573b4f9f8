"""Named property suites, runnable from the CLI (``check --suite NAME``).

Each suite returns a list of :class:`CheckResult`.  Randomness comes from a
:class:`random.Random` seeded by the caller, so a fixed seed reproduces the
same cases.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import algorithms as alg
from .enveloping import is_sorted, level_basis, monomial_weight, pbw_basis, straighten
from .liealg import (
    Heisenberg,
    HeisenbergVirasoro,
    HigherRankVirasoro,
    Symbol,
    Virasoro,
    bracket,
    jacobi_probe,
    sl2,
    sl3,
)
from .modules import (
    HighestWeight,
    adjoint_module,
    heisenberg_module_new,
    k0_new,
    sl2_irrep,
    verma_new,
    weight_components,
)
from .oracles import bipartition_count, gram_by_straightening, leibniz_determinant, partition_count
from .scalars import QuadInt, Scalar, quad_sign

DEFAULT_SEED = 20110401

__all__ = ["CheckResult", "SUITES", "run_suite", "DEFAULT_SEED"]


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.suite}/{self.name}: {self.detail}"


# --------------------------------------------------------------------------
# random generators


def random_rational(rng, size=20, allow_zero=True):
    while True:
        q = Fraction(rng.randint(-size, size), rng.randint(1, size))
        if q or allow_zero:
            return q


def random_scalar(rng, size=20):
    return Scalar(random_rational(rng, size), random_rational(rng, size) if rng.random() < 0.5 else 0)


def random_symbol(spec, rng, lo=-10, hi=10):
    if isinstance(spec, HigherRankVirasoro):
        while True:
            d = QuadInt(rng.randint(-4, 4), rng.randint(-4, 4))
            if lo <= d.approx() <= hi:
                break
        if d == 0 and rng.random() < 0.3:
            return spec.C
        return Symbol("e", d)
    if hasattr(spec, "basis"):
        return rng.choice(spec.basis)
    d = rng.randint(lo, hi)
    return rng.choice(spec.symbols_of_degree(d))


def random_hw(spec, rng, size=20):
    return HighestWeight(spec, {s: random_scalar(rng, size) if isinstance(spec, HeisenbergVirasoro)
                                else random_rational(rng, size) for s in spec.cartan_basis()})


def _nonzero(draw):
    # repeated indices can cancel; draw again rather than return 0
    while True:
        v = draw()
        if v:
            return v


def random_verma_vector(m, rng, max_level=4, terms=3, include_top=True):
    lo = 0 if include_top else 1

    def draw():
        out = m.zero()
        for _ in range(rng.randint(1, terms)):
            basis = level_basis(m.spec, rng.randint(lo, max_level))
            out = out + random_rational(rng, 5, allow_zero=False) * m.basis_vector(rng.choice(basis))
        return out

    return _nonzero(draw)


def random_k0_vector(m, rng, terms=3, box=3):
    from .enveloping import virg_monomials

    monos = virg_monomials(m.spec, 2, box)

    def draw():
        out = m.zero()
        for _ in range(rng.randint(1, terms)):
            out = out + random_rational(rng, 5, allow_zero=False) * m.basis_vector(rng.choice(monos))
        return out

    return _nonzero(draw)


def random_sequence(m, rng, horizon=6, max_entry=4):
    h = rng.randint(0, horizon)
    return m.index([rng.randint(1, max_entry) for _ in range(h)])


def random_heis_vector(m, rng, terms=4, horizon=6, max_entry=4):
    def draw():
        out = m.zero()
        for _ in range(rng.randint(1, terms)):
            idx = random_sequence(m, rng, horizon, max_entry)
            out = out + random_rational(rng, 5, allow_zero=False) * m.basis_vector(idx)
        return out

    return _nonzero(draw)


def random_fd_vector(m, rng):
    out = m.zero()
    for lab in m.labels:
        if rng.random() < 0.6:
            out = out + random_rational(rng, 5) * m.basis_vector(lab)
    return out or m.basis_vector(rng.choice(m.labels))


# --------------------------------------------------------------------------
# suites


def _timed(suite, name, fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(suite, name, ok, detail, time.perf_counter() - t0)


def suite_scalars(rng, scale=1.0):
    n = max(1, int(300 * scale))

    def field_axioms():
        for _ in range(n):
            x, y, z = (random_scalar(rng) for _ in range(3))
            if (x + y) + z != x + (y + z) or (x * y) * z != x * (y * z) or x * (y + z) != x * y + x * z:
                return False, f"axiom fails at {x}, {y}, {z}"
            if x and x * (1 / x) != 1:
                return False, f"inverse fails at {x}"
        return True, f"{n} triples"

    def signs():
        for _ in range(n * 3):
            v = QuadInt(rng.randint(-10 ** 6, 10 ** 6), rng.randint(-10 ** 6, 10 ** 6))
            w = QuadInt(rng.randint(-10 ** 6, 10 ** 6), rng.randint(-10 ** 6, 10 ** 6))
            if quad_sign(v) != -quad_sign(-v):
                return False, f"antisymmetry fails at {v}"
            if quad_sign(v) == 1 and quad_sign(w) == 1 and quad_sign(v + w) != 1:
                return False, f"positivity fails at {v}, {w}"
        return True, f"{n * 3} pairs"

    return [_timed("scalars", "field-axioms", field_axioms), _timed("scalars", "quad-sign", signs)]


def _algebras():
    return [Virasoro(), HeisenbergVirasoro(), Heisenberg(), HigherRankVirasoro(), sl2(), sl3()]


def suite_brackets(rng, scale=1.0):
    n = max(1, int(1000 * scale))
    out = []
    for spec in _algebras():
        name = getattr(spec, "name", spec.tag)

        def antisym(spec=spec):
            for _ in range(n):
                x, y = random_symbol(spec, rng), random_symbol(spec, rng)
                if bracket(x, y, spec) != -bracket(y, x, spec):
                    return False, f"[{x},{y}]"
            return True, f"{n} pairs"

        def jacobi(spec=spec):
            for _ in range(n):
                x, y, z = (random_symbol(spec, rng) for _ in range(3))
                if jacobi_probe(x, y, z, spec):
                    return False, f"({x},{y},{z})"
            return True, f"{n} triples"

        def grading(spec=spec):
            for _ in range(n):
                x, y = random_symbol(spec, rng), random_symbol(spec, rng)
                for s in bracket(x, y, spec).terms:
                    if s.degree != x.degree + y.degree:
                        return False, f"[{x},{y}] contains {s}"
            return True, f"{n} pairs"

        out += [_timed("brackets", f"{name}-antisymmetry", antisym),
                _timed("brackets", f"{name}-jacobi", jacobi),
                _timed("brackets", f"{name}-grading", grading)]
    return out


def suite_straightening(rng, scale=1.0):
    n = max(1, int(200 * scale))
    out = []
    for spec in (Virasoro(), HeisenbergVirasoro(), Heisenberg()):

        def confluence(spec=spec):
            for _ in range(n):
                w = tuple(random_symbol(spec, rng, -4, 4) for _ in range(rng.randint(0, 6)))
                left = straighten(w, spec, "leftmost")
                right = straighten(w, spec, "rightmost", cache=False)
                if left != right:
                    return False, f"strategies disagree on {w}"
                deg = monomial_weight(w, spec)
                if any(monomial_weight(u, spec) != deg or not is_sorted(u, spec) for u in left):
                    return False, f"inhomogeneous or unsorted output for {w}"
            return True, f"{n} words"

        def idempotence(spec=spec):
            for _ in range(n):
                w = tuple(sorted((random_symbol(spec, rng, -4, 4) for _ in range(rng.randint(0, 6))),
                                 key=spec.order_key))
                if straighten(w, spec) != {w: spec.one}:
                    return False, f"sorted word {w} changed"
            return True, f"{n} sorted words"

        out += [_timed("straightening", f"{spec.tag}-confluence", confluence),
                _timed("straightening", f"{spec.tag}-idempotence", idempotence)]

    def counting():
        vir, hv = Virasoro(), HeisenbergVirasoro()
        for k in range(13):
            if len(pbw_basis(vir, -k)) != partition_count(k):
                return False, f"Virasoro level {k}"
            if k <= 8 and len(pbw_basis(hv, -k)) != bipartition_count(k):
                return False, f"HV level {k}"
        return True, "p(n) for n <= 12, bipartitions for n <= 8"

    out.append(_timed("straightening", "pbw-counting", counting))
    return out


def module_families(rng):
    """``(name, module, random vector, random symbol)`` for every family in the module axiom suite."""
    vir, hv, heis = Virasoro(), HeisenbergVirasoro(), Heisenberg()
    fams = [
        ("verma-virasoro", verma_new(vir, random_hw(vir, rng)), lambda m: random_verma_vector(m, rng),
         lambda: random_symbol(vir, rng, -6, 6)),
        ("verma-hv", verma_new(hv, random_hw(hv, rng)), lambda m: random_verma_vector(m, rng, 3),
         lambda: random_symbol(hv, rng, -6, 6)),
    ]
    for t in (1, 2, 3):
        fams.append((f"heisenberg-tail{t}", heisenberg_module_new(t), lambda m: random_heis_vector(m, rng),
                     lambda: random_symbol(heis, rng, -6, 6)))
    k0 = k0_new()
    fams.append(("k0", k0, lambda m: random_k0_vector(m, rng), lambda: random_symbol(k0.spec, rng, -6, 6)))
    s = sl2()
    for mod in (adjoint_module(s), sl2_irrep(4, s)):
        fams.append((f"sl2-{mod.name}", mod, lambda m: random_fd_vector(m, rng), lambda: random_symbol(s, rng)))
    return fams


def suite_modules(rng, scale=1.0):
    n = max(1, int(500 * scale))
    out = []
    for name, m, vec, sym in module_families(rng):

        def axiom(m=m, vec=vec, sym=sym):
            for _ in range(n):
                x, y, v = sym(), sym(), vec(m)
                lhs = m.act(x, m.act(y, v)) - m.act(y, m.act(x, v))
                if lhs != m.act(bracket(x, y, m.spec), v):
                    return False, f"fails for X={x}, Y={y}, v={v}"
            return True, f"{n} triples"

        def grading(m=m, vec=vec, sym=sym):
            for _ in range(max(1, n // 5)):
                x, v = sym(), vec(m)
                for idx in v.terms:
                    for j in m.act(x, m.basis_vector(idx)).terms:
                        if m.index_weight(j) != m.index_weight(idx) + x.degree:
                            return False, f"{x} on {m.format_index(idx)}"
            return True, f"{max(1, n // 5)} cases"

        out += [_timed("modules", f"{name}-axiom", axiom), _timed("modules", f"{name}-grading", grading)]

    def k0_closure():
        k0 = k0_new()
        from .enveloping import virg_raising_symbols

        raising = virg_raising_symbols(k0.spec, 3)
        for _ in range(max(1, n // 5)):
            u = random_k0_vector(k0, rng)
            for s in rng.sample(raising, 5):
                comps = weight_components(k0.act(s, u))
                if QuadInt(0, 0) in comps:
                    return False, f"{s} on {u}"
        return True, "no component on the top line"

    def verma_dims():
        for k in range(9):
            if len(level_basis(Virasoro(), k)) != partition_count(k):
                return False, f"Virasoro level {k}"
            if len(level_basis(HeisenbergVirasoro(), k)) != bipartition_count(k):
                return False, f"HV level {k}"
        return True, "levels 0..8"

    out += [_timed("modules", "k0-closure", k0_closure), _timed("modules", "verma-dimensions", verma_dims)]
    return out


def suite_nilpotency(rng, scale=1.0):
    n = max(1, int(50 * scale))

    def run():
        for _ in range(n):
            m = heisenberg_module_new(rng.randint(1, 3))
            eps = random_sequence(m, rng, horizon=12, max_entry=5)
            for i in range(1, 13):
                rep = alg.nilpotency_index(Symbol("z", i), m.basis_vector(eps))
                if rep.exceeded or rep.index != eps[i]:
                    return False, f"z{i} on {eps}: {rep.index}"
        return True, f"{n} sequences, i = 1..12"

    return [_timed("nilpotency", "heisenberg-local-nilpotency", run)]


def suite_simplicity(rng, scale=1.0):
    n = max(1, int(100 * scale))

    def run():
        for _ in range(n):
            m = heisenberg_module_new(rng.randint(1, 3))
            u = m.zero()
            for _ in range(rng.randint(1, 6)):
                u = u + random_rational(rng, 5, allow_zero=False) * m.basis_vector(random_sequence(m, rng, 5, 4))
            if not u:
                continue
            cert = alg.simplicity_witness(u)
            counts = [len(u)] + [c for _, _, c in cert.steps]
            if counts[-1] != 1 or any(a <= b for a, b in zip(counts, counts[1:])):
                return False, f"bad counts {counts}"
            if not alg.replay_certificate(cert):
                return False, f"replay failed for {u}"
        return True, f"{n} combinations"

    return [_timed("simplicity", "heisenberg-witness", run)]


def suite_extraction(rng, scale=1.0):
    n = max(1, int(50 * scale))

    def virasoro():
        vir = Virasoro()
        for _ in range(n):
            m = verma_new(vir, random_hw(vir, rng))
            v = random_verma_vector(m, rng)
            res = alg.extract_singular_virasoro(v)
            if not res.verify() or any(m.act(Symbol("e", k), res.vector) for k in (1, 2)):
                return False, f"failed from {v}"
        m = verma_new(vir, {"e0": 0, "c": random_rational(rng)})
        start = m.parse_vector("e-1")
        if alg.extract_singular_virasoro(start).vector != start:
            return False, "e-1 v at e0 = 0 is not returned unchanged"
        return True, f"{n} random starts"

    def hv():
        spec = HeisenbergVirasoro()
        for _ in range(n):
            m = verma_new(spec, random_hw(spec, rng))
            v = random_verma_vector(m, rng, 3)
            res = alg.extract_singular_hv(v)
            if not res.verify() or any(m.act(Symbol(k, d), res.vector) for k, d in (("e", 1), ("e", 2), ("z", 1))):
                return False, f"failed from {v}"
        return True, f"{n} random starts"

    def fd():
        s = sl2()
        mods = [sl2_irrep(k, s) for k in range(9)] + [adjoint_module(s)]
        e = s.symbol("e")
        for mod in mods:
            for _ in range(max(1, n // 5)):
                res = alg.extract_singular_fd(random_fd_vector(mod, rng))
                if not res.vector or mod.act(e, res.vector):
                    return False, f"{mod.name}"
        return True, "sl2 modules of dimension <= 9"

    return [_timed("extraction", "virasoro", virasoro), _timed("extraction", "heisenberg-virasoro", hv),
            _timed("extraction", "sl2", fd)]


def suite_shapovalov(rng, scale=1.0):
    n = max(1, int(20 * scale))
    vir, hv = Virasoro(), HeisenbergVirasoro()

    def symmetric():
        for level in range(5):
            m = verma_new(vir, random_hw(vir, rng))
            if not alg.shapovalov_gram(m, level).is_symmetric():
                return False, f"Virasoro level {level}"
            vals = {s: random_scalar(rng) for s in hv.cartan_basis()}
            vals[hv.C2] = Scalar(0)
            if not alg.shapovalov_gram(verma_new(hv, vals), min(level, 3)).is_symmetric():
                return False, f"HV level {level}"
        return True, "levels 0..4"

    def oracle():
        for level in range(4):
            for spec in (vir, hv):
                m = verma_new(spec, random_hw(spec, rng))
                g = alg.shapovalov_gram(m, level)
                if g.entries != gram_by_straightening(spec, m.hw, g.basis):
                    return False, f"{spec.tag} level {level}"
        m = verma_new(vir, random_hw(vir, rng))
        if alg.shapovalov_gram(m, 1).entries != [[-2 * m.hw[Symbol("e", 0)]]]:
            return False, "level 1 is not [-2 h]"
        return True, "levels 0..3 agree with full straightening"

    def generic():
        for _ in range(n):
            m = verma_new(vir, {"e0": random_rational(rng, 10 ** 12, False), "c": random_rational(rng, 10 ** 12)})
            for level in range(1, 5):
                g = alg.shapovalov_gram(m, level)
                d = alg.gram_determinant(g)
                if not d:
                    return False, f"vanishing determinant at {m.hw}, level {level}"
                if level <= 3 and d != leibniz_determinant(g.entries, Scalar(1)):
                    return False, "Bareiss and Leibniz disagree"
        m0 = verma_new(vir, {"e0": 0, "c": random_rational(rng)})
        if alg.gram_determinant(alg.shapovalov_gram(m0, 1)):
            return False, "level 1 determinant nonzero at e0 = 0"
        return True, f"{n} generic weights, levels 1..4"

    return [_timed("shapovalov", "symmetry", symmetric), _timed("shapovalov", "oracle", oracle),
            _timed("shapovalov", "determinants", generic)]


def suite_falsification(rng, scale=1.0):
    def k0():
        m = k0_new()
        res = alg.highest_weight_probe(m, alg.k0_region(m, 2, 3), alg.k0_probe_generators(m, 7))
        return res is None, "no highest weight vector in the depth-2 region" if res is None else f"found {res}"

    def heis():
        # tail 1 is excluded: there the all-ones vector is a vacuum
        for t in (2, 3):
            m = heisenberg_module_new(t)
            res = alg.highest_weight_probe(m, alg.heisenberg_region(m, 3, 4), Heisenberg().positive_generators(5))
            if res is not None:
                return False, f"tail {t}: found {res}"
        return True, "entries <= 3, horizon <= 4"

    def explorer():
        found = dict(alg.small_support_explorer(k0_new(), 2, Fraction(1, 5)))
        target = QuadInt(-3, 2)
        return target in found, f"{len(found)} weights below 1/5 in absolute value"

    return [_timed("falsification", "k0", k0), _timed("falsification", "heisenberg", heis),
            _timed("falsification", "small-support", explorer)]


SUITES = {
    "scalars": suite_scalars,
    "brackets": suite_brackets,
    "straightening": suite_straightening,
    "modules": suite_modules,
    "nilpotency": suite_nilpotency,
    "simplicity": suite_simplicity,
    "extraction": suite_extraction,
    "shapovalov": suite_shapovalov,
    "falsification": suite_falsification,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, scale: float = 1.0) -> list:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, seed, scale))
        return out
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {['all', *SUITES]}") from None
    return fn(random.Random(f"{seed}:{name}"), scale)
