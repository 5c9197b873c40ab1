"""Exact independence polynomials and their evaluation.

Polynomials carry arbitrary-precision integer coefficients, lowest degree
first.  ``Z_G(x) = sum_k i_k(G) x^k`` where ``i_k`` counts independent sets
of size ``k``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .errors import InexactDivisionError, InputError, ResourceError
from .graphs import Graph, RootedTree

DEFAULT_MAX_VERTICES = 64
BRUTE_FORCE_MAX_VERTICES = 24


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with exact integer coefficients (low to high).

    Trailing zeros are stripped, so the zero polynomial has no coefficients.
    """

    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Sequence[int]):
        coeffs = [int(c) for c in coefficients]
        if any(c != coefficients[i] for i, c in enumerate(coeffs)):
            raise InputError("coefficients must be integers")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        return Polynomial([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        return Polynomial([self[k] - other[k] for k in range(n)])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(out)

    def shift(self, k: int = 1) -> "Polynomial":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Polynomial((0,) * k + self.coefficients)

    def __divmod__(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Integer long division.

        Raises InexactDivisionError as soon as a quotient coefficient is not
        an integer; an exact division therefore never goes through fractions.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        lead = divisor.coefficients[-1]
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return ZERO, self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            top = rem[k]
            if top == 0:
                continue
            q, r = divmod(top, lead)
            if r:
                raise InexactDivisionError(
                    f"coefficient {top} of x^{k} not divisible by leading coefficient {lead}"
                )
            quot[k - dd] = q
            for j, c in enumerate(divisor.coefficients):
                rem[k - dd + j] -= q * c
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "Polynomial") -> "Polynomial":
        return divmod(self, divisor)[1]

    def __call__(self, z, prec: int | None = None) -> complex:
        return evaluate(self, z, prec)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coefficients)})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*x" + (f"^{k}" if k > 1 else ""))
        return " + ".join(terms) or "0"

    def to_json(self) -> str:
        return json.dumps({"coefficients": [str(c) for c in self.coefficients]})

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        data = json.loads(text)
        try:
            return cls([int(c) for c in data["coefficients"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad polynomial JSON: {exc}") from exc


ZERO = Polynomial([])
ONE = Polynomial([1])
X = Polynomial([0, 1])


def divides(divisor: Polynomial, p: Polynomial) -> bool:
    """True iff ``divisor`` divides ``p`` in Z[x]."""
    try:
        return divmod(p, divisor)[1].is_zero()
    except InexactDivisionError:
        return False


# -- exact computation --------------------------------------------------------

def _masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in nbrs) for nbrs in g.adjacency]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _split_components(mask: int, nbr: list[int]) -> list[int]:
    comps = []
    while mask:
        seed = mask & -mask
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= nbr[v]
            frontier = grow & mask & ~comp
            comp |= frontier
        comps.append(comp)
        mask &= ~comp
    return comps


def independence_polynomial(
    g: Graph, max_vertices: int | None = DEFAULT_MAX_VERTICES, pivot: str = "max_degree"
) -> Polynomial:
    """Z_G via Z_G = Z_{G-v} + x Z_{G-N[v]}.

    The recursion splits into connected components and memoizes on the
    induced vertex set.  ``pivot`` is ``"max_degree"`` (default) or
    ``"min_index"``; the result does not depend on it.
    """
    n = g.vertex_count
    if max_vertices is not None and n > max_vertices:
        raise ResourceError(f"{n} vertices exceeds the cap of {max_vertices}")
    if pivot not in ("max_degree", "min_index"):
        raise InputError(f"unknown pivot rule {pivot!r}")
    nbr = _masks(g)
    memo: dict[int, Polynomial] = {}

    def choose(mask: int) -> int:
        if pivot == "min_index":
            return (mask & -mask).bit_length() - 1
        return max(_bits(mask), key=lambda v: ((nbr[v] & mask).bit_count(), -v))

    def connected(mask: int) -> Polynomial:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        if mask & (mask - 1) == 0:
            result = Polynomial([1, 1])
        else:
            v = choose(mask)
            result = z(mask & ~(1 << v)) + z(mask & ~(nbr[v] | (1 << v))).shift()
        memo[mask] = result
        return result

    def z(mask: int) -> Polynomial:
        result = ONE
        for comp in _split_components(mask, nbr):
            result = result * connected(comp)
        return result

    return z((1 << n) - 1)


def tree_polynomial(tree: RootedTree) -> Polynomial:
    """Z_T of a tree by the rooted form of the deletion recursion.

    For each vertex, ``out`` is Z of its subtree with the vertex unoccupied
    and ``occ`` with it occupied.  Linear in the number of vertices, so it
    has no vertex cap.
    """
    out: dict[int, Polynomial] = {}
    occ: dict[int, Polynomial] = {}
    for v in reversed(tree.order):
        free, used = ONE, X
        for c in tree.children(v):
            free = free * (out[c] + occ[c])
            used = used * out[c]
        out[v], occ[v] = free, used
        for c in tree.children(v):
            del out[c], occ[c]
    return out[tree.root] + occ[tree.root]


def brute_force_polynomial(g: Graph) -> Polynomial:
    """Count independent sets by checking every vertex subset."""
    n = g.vertex_count
    if n > BRUTE_FORCE_MAX_VERTICES:
        raise ResourceError(f"brute force limited to {BRUTE_FORCE_MAX_VERTICES} vertices")
    subsets = np.arange(1 << n, dtype=np.int64)
    bad = np.zeros(subsets.shape, dtype=bool)
    for u, v in g.edges:
        bad |= ((subsets >> u) & 1).astype(bool) & ((subsets >> v) & 1).astype(bool)
    sizes = np.zeros(subsets.shape, dtype=np.int64)
    for v in range(n):
        sizes += (subsets >> v) & 1
    counts = np.bincount(sizes[~bad], minlength=n + 1)
    return Polynomial([int(c) for c in counts])


# -- evaluation ---------------------------------------------------------------

def evaluate(p: Polynomial, z, prec: int | None = None) -> complex:
    """Horner evaluation; with ``prec`` (bits) the arithmetic runs in mpmath."""
    if prec is None:
        z = complex(z)
        acc = 0j
        for c in reversed(p.coefficients):
            acc = acc * z + c
        return acc
    with mpmath.workprec(prec):
        z = mpmath.mpc(z)
        acc = mpmath.mpc(0)
        for c in reversed(p.coefficients):
            acc = acc * z + c
        return complex(acc)


def independent_sets(g: Graph):
    """Yield every independent set (as a tuple), the empty one included."""
    nbr = _masks(g)
    n = g.vertex_count

    def extend(start: int, chosen: list[int], blocked: int):
        yield tuple(chosen)
        for v in range(start, n):
            if not blocked >> v & 1:
                chosen.append(v)
                yield from extend(v + 1, chosen, blocked | nbr[v] | (1 << v))
                chosen.pop()

    yield from extend(0, [], 0)


def evaluate_multivariate(g: Graph, activities: Sequence[complex]) -> complex:
    """Z_G({x_v}) = sum over independent I of prod_{v in I} x_v."""
    n = g.vertex_count
    if len(activities) != n:
        raise InputError(f"{len(activities)} activities for {n} vertices")
    acts = [complex(a) for a in activities]
    if n <= BRUTE_FORCE_MAX_VERTICES:
        total = 0j
        for s in independent_sets(g):
            term = 1 + 0j
            for v in s:
                term *= acts[v]
            total += term
        return total

    nbr = _masks(g)
    memo: dict[int, complex] = {0: 1 + 0j}

    def z(mask: int) -> complex:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = max(_bits(mask), key=lambda u: (nbr[u] & mask).bit_count())
        value = z(mask & ~(1 << v)) + acts[v] * z(mask & ~(nbr[v] | (1 << v)))
        memo[mask] = value
        return value

    return z((1 << n) - 1)
