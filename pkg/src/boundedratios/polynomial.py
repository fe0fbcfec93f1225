"""Sparse multivariate polynomials with integer coefficients.

Terms live in a dict mapping exponent tuples to nonzero integer coefficients.
Products of many factors go through a packed representation where each
exponent vector is a single Python int (one fixed-width digit per variable),
so multiplying monomials is a single integer addition.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class TermCapExceeded(RuntimeError):
    """A symbolic expansion grew past its term cap."""


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], int] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                if c:
                    self.terms[tuple(e)] = int(c)

    @classmethod
    def constant(cls, nvars: int, c: int = 1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {len(self.terms)} terms)"

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return product([self, other])

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        return product([self] * k, nvars=self.nvars)

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def max_exponent(self) -> int:
        return max((max(e, default=0) for e in self.terms), default=0)

    def min_coefficient(self) -> int | None:
        return min(self.terms.values(), default=None)

    def negative_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted((e, c) for e, c in self.terms.items() if c < 0)

    def evaluate(self, point: Sequence) -> int | Fraction:
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total


def _pack_base(polys: Sequence[Polynomial]) -> int:
    # widest exponent a full product can reach, per variable
    bound = 0
    for p in polys:
        bound += p.max_exponent()
    return max(2, bound + 1).bit_length()


def product(polys: Iterable[Polynomial], nvars: int | None = None,
            term_cap: int | None = None) -> Polynomial:
    """Multiply polynomials, raising TermCapExceeded past `term_cap` terms."""
    polys = list(polys)
    if not polys:
        if nvars is None:
            raise ValueError("empty product needs nvars")
        return Polynomial.constant(nvars)
    nvars = polys[0].nvars
    bits = _pack_base(polys)

    def pack(e):
        key = 0
        for k in reversed(e):
            key = (key << bits) | k
        return key

    mask = (1 << bits) - 1

    def unpack(key):
        out = []
        for _ in range(nvars):
            out.append(key & mask)
            key >>= bits
        return tuple(out)

    # multiply small factors first; keeps intermediates short
    order = sorted(polys, key=len)
    acc = {pack(e): c for e, c in order[0].terms.items()}
    for p in order[1:]:
        factor = [(pack(e), c) for e, c in p.terms.items()]
        nxt: dict[int, int] = {}
        get = nxt.get
        for ka, ca in acc.items():
            for kb, cb in factor:
                k = ka + kb
                nxt[k] = get(k, 0) + ca * cb
        acc = {k: c for k, c in nxt.items() if c}
        if term_cap is not None and len(acc) > term_cap:
            raise TermCapExceeded(f"expansion exceeded {term_cap} terms")
    return Polynomial(nvars, {unpack(k): c for k, c in acc.items()})
