"""Words in the enveloping algebra, PBW monomials and straightening.

A word is a tuple of :class:`~hwmodules.liealg.Symbol`; the rightmost factor
acts first.  A word is *sorted* when its factors are non-decreasing in
``spec.order_key``: lowering block (degree ascending), Cartan block, raising
block.  Straightening rewrites ``x y -> y x + [x, y]`` until every word is sorted.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import DomainError
from .liealg import AlgebraSpec, HigherRankVirasoro, Part, Symbol, triangular_part
from .scalars import QuadInt, format_combination, parse_combination

__all__ = [
    "is_sorted",
    "straighten",
    "pbw_basis",
    "level_basis",
    "virg_basis",
    "monomial_weight",
    "format_monomial",
    "parse_monomial",
    "format_normal_form",
    "parse_word",
]


def is_sorted(word, spec: AlgebraSpec) -> bool:
    key = spec.order_key
    return all(key(a) <= key(b) for a, b in zip(word, word[1:]))


def _find_inversion(word, spec, leftmost):
    key = spec.order_key
    rng = range(len(word) - 1) if leftmost else range(len(word) - 2, -1, -1)
    for i in rng:
        if key(word[i]) > key(word[i + 1]):
            return i
    return -1


@lru_cache(maxsize=None)
def _normal(spec: AlgebraSpec, word: tuple, leftmost: bool) -> dict:
    i = _find_inversion(word, spec, leftmost)
    if i < 0:
        return {word: spec.one}
    x, y = word[i], word[i + 1]
    head, tail = word[:i], word[i + 2:]
    out = dict(_normal(spec, head + (y, x) + tail, leftmost))
    zero = spec.zero
    for s, c in spec.bracket_symbols(x, y).items():
        for w, d in _normal(spec, head + (s,) + tail, leftmost).items():
            out[w] = out.get(w, zero) + c * d
    return {w: c for w, c in out.items() if c}


def _normal_uncached(spec, word, leftmost):
    i = _find_inversion(word, spec, leftmost)
    if i < 0:
        return {word: spec.one}
    x, y = word[i], word[i + 1]
    head, tail = word[:i], word[i + 2:]
    out = _normal_uncached(spec, head + (y, x) + tail, leftmost)
    zero = spec.zero
    for s, c in spec.bracket_symbols(x, y).items():
        for w, d in _normal_uncached(spec, head + (s,) + tail, leftmost).items():
            out[w] = out.get(w, zero) + c * d
    return {w: c for w, c in out.items() if c}


def straighten(word, spec: AlgebraSpec, strategy: str = "leftmost", cache: bool = True) -> dict:
    """Normal-order ``word``; returns ``{sorted word: coefficient}``.

    ``strategy`` picks the adjacent inversion rewritten first (``"leftmost"``
    or ``"rightmost"``).  The result does not depend on either choice.
    """
    word = tuple(spec.check(s) for s in word)
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    leftmost = strategy == "leftmost"
    if cache:
        return dict(_normal(spec, word, leftmost))
    return _normal_uncached(spec, word, leftmost)


def monomial_weight(m, spec: AlgebraSpec | None = None):
    """Sum of factor degrees; the empty monomial has weight zero."""
    total = spec.zero_degree if spec is not None else None
    for s in m:
        total = s.degree if total is None else total + s.degree
    return 0 if total is None else total


# --------------------------------------------------------------------------
# PBW bases


def _multisets(symbols, target, max_len, total=None, zero=0):
    """Non-decreasing index sequences over ``symbols`` whose degrees sum to ``target``."""
    out = []

    def rec(start, remaining, acc):
        if remaining == zero:
            out.append(tuple(acc))
            return
        if max_len is not None and len(acc) >= max_len:
            return
        for k in range(start, len(symbols)):
            d = symbols[k].degree
            # symbols are lowering (negative degree); remaining is negative
            if d < remaining:
                continue
            acc.append(symbols[k])
            rec(k, remaining - d, acc)
            acc.pop()

    rec(0, target, [])
    return out


def _sort_basis(monos, spec):
    return sorted(monos, key=lambda m: (len(m), [spec.order_key(s) for s in m]))


def pbw_basis(spec: AlgebraSpec, level, depth_cap: int | None = None, box: int | None = None) -> list:
    """Sorted lowering monomials of total degree ``level`` (``level <= 0``).

    For integer-graded algebras the list is complete.  For the higher rank
    Virasoro algebra both ``depth_cap`` (number of factors) and ``box``
    (bound on the integer coordinates of each factor degree) are required and
    the list is a truncation; see :func:`virg_basis`.
    """
    if isinstance(spec, HigherRankVirasoro):
        if depth_cap is None or box is None:
            raise DomainError("weight spaces of a dense grading need depth_cap and box")
        return virg_basis(spec, level, depth_cap, box)[0]
    if not isinstance(level, int) or level > 0:
        raise DomainError(f"level must be a non-positive integer, got {level!r}")
    if level == 0:
        return [()]
    lowering = [s for d in range(level, 0) for s in spec.symbols_of_degree(d)
                if triangular_part(s) is Part.MINUS]
    lowering.sort(key=spec.order_key)
    return _sort_basis(_multisets(lowering, level, depth_cap), spec)


def level_basis(spec: AlgebraSpec, n: int) -> list:
    """PBW basis of the weight space ``-n`` (``n >= 0``)."""
    if n < 0:
        raise DomainError("level must be non-negative")
    return pbw_basis(spec, -n)


def virg_lowering_symbols(spec: HigherRankVirasoro, box: int) -> list:
    """Lowering symbols ``e_d`` with ``d = a + b*sqrt2 < 0`` in G and ``|a|, |b| <= box``."""
    out = []
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            d = QuadInt(a, b)
            s = Symbol("e", d)
            if d.sign() < 0 and spec.contains(s):
                out.append(s)
    out.sort(key=spec.order_key)
    return out


def virg_raising_symbols(spec: HigherRankVirasoro, box: int) -> list:
    return [Symbol("e", -s.degree) for s in reversed(virg_lowering_symbols(spec, box))]


def virg_basis(spec: HigherRankVirasoro, level: QuadInt, depth_cap: int, box: int):
    """Truncated weight-space basis for a dense grading.

    Returns ``(monomials, truncated)``.  ``truncated`` is true whenever
    monomials of this weight exist outside the cap; for a dense G that is
    every negative weight.
    """
    if isinstance(level, int):
        level = QuadInt(level, 0)
    sign = level.sign()
    if sign > 0:
        raise DomainError("level must be non-positive")
    if sign == 0:
        return [()], False
    symbols = virg_lowering_symbols(spec, box)
    monos = _multisets(symbols, level, depth_cap, zero=QuadInt(0, 0))
    # infinitely many factorizations exist in a dense group
    return _sort_basis(monos, spec), True


def virg_monomials(spec: HigherRankVirasoro, depth_cap: int, box: int) -> list:
    """All nonempty sorted lowering monomials with at most ``depth_cap`` boxed factors."""
    symbols = virg_lowering_symbols(spec, box)
    out = []
    for k in range(1, depth_cap + 1):
        out.extend(combinations_with_replacement(symbols, k))
    return _sort_basis(out, spec)


# --------------------------------------------------------------------------
# text


def format_monomial(m, spec: AlgebraSpec, empty: str = "1") -> str:
    if not m:
        return empty
    return ".".join(spec.format_symbol(s) for s in m)


def parse_word(text: str, spec: AlgebraSpec, empty=("1", "v")) -> tuple:
    t = text.strip()
    if t in empty:
        return ()
    return tuple(spec.parse_symbol(p) for p in t.split("."))


def parse_monomial(text: str, spec: AlgebraSpec, empty=("1", "v")) -> tuple:
    m = parse_word(text, spec, empty)
    if not is_sorted(m, spec) or any(triangular_part(s) is not Part.MINUS for s in m):
        raise ValueError(f"{text!r} is not a sorted lowering monomial")
    return m


def format_normal_form(nf: dict, spec: AlgebraSpec, empty: str = "1") -> str:
    items = sorted(((format_monomial(w, spec, empty), c) for w, c in nf.items() if c))
    return format_combination((c, label) for label, c in items)


def parse_normal_form(text: str, spec: AlgebraSpec) -> dict:
    from .liealg import _coef_parser

    out: dict = {}
    for c, w in parse_combination(text, lambda t: parse_word(t, spec), _coef_parser(spec)):
        out[w] = out.get(w, spec.zero) + c
    return {w: c for w, c in out.items() if c}
