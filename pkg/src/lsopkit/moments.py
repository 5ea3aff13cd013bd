"""Discrete Laurent skew inner products and their moment systems.

A measure is a finite list of node/weight pairs (z_k, w_k).  The bilinear
form is

    <f|g> = sum_k ( f(1/z_k) g(z_k) - f(z_k) g(1/z_k) ) w_k,

which is skew (<f|f> = 0) and shift-invariant: <z^(i+k)|z^(j+k)> = <z^i|z^j>.
Two moment sequences are attached to a measure:

* skew moments   mu_n = <1|z^n> = sum_k (z_k^n - z_k^-n) w_k,
* folded moments c_i  = sum_k (z_k + 1/z_k)^i (z_k - 1/z_k) w_k,

linked through Chebyshev polynomials of the second kind:
mu_n = sum_k (-1)^k C(n-1-k, k) c_{n-1-2k}.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence

from .errors import GenerationError
from .laurent import LaurentPoly
from .modes import Scalar, is_exact

NODE_RANGE = (1.2, 5.0)
NODE_MIN_GAP = 0.1
GENERATOR_MAX_ATTEMPTS = 100
TAU_REJECT_RELATIVE = 1e-8


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite node/weight list defining the skew inner product.

    Canonical measures keep every node real with |z| > 1 (the pair {z, 1/z}
    carries the same spectral content, so one representative is stored);
    the inner-product layer itself only needs nodes to be nonzero, distinct,
    and not mutually reciprocal.  Pass strict=False to skip the distinctness
    checks when deliberately building a degenerate measure.
    """

    nodes: tuple
    weights: tuple
    strict: bool = field(default=True, compare=False)

    def __init__(self, nodes: Sequence[Scalar], weights: Sequence[Scalar], strict: bool = True):
        nodes = tuple(nodes)
        weights = tuple(weights)
        if len(nodes) != len(weights):
            raise ValueError(f"{len(nodes)} nodes but {len(weights)} weights")
        if any(z == 0 for z in nodes):
            raise ValueError("nodes must be nonzero")
        if any(w == 0 for w in weights):
            raise ValueError("weights must be nonzero")
        if strict:
            for i, zi in enumerate(nodes):
                for zj in nodes[i + 1:]:
                    if zi == zj:
                        raise ValueError(f"duplicate node {zi}")
                    if zi * zj == 1:
                        raise ValueError(f"nodes {zi} and {zj} are reciprocal")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "strict", strict)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def is_real_canonical(self) -> bool:
        """True when every node is a real scalar with |z| > 1 (eigensolver path)."""
        return all(not isinstance(z, complex) and abs(z) > 1 for z in self.nodes)

    def is_exact(self) -> bool:
        return all(is_exact(z) for z in self.nodes) and all(is_exact(w) for w in self.weights)

    def as_float(self) -> "DiscreteMeasure":
        return DiscreteMeasure([float(z) for z in self.nodes], [float(w) for w in self.weights])

    def as_rational(self) -> "DiscreteMeasure":
        return DiscreteMeasure([Fraction(z) for z in self.nodes], [Fraction(w) for w in self.weights])


def skew_inner(m: DiscreteMeasure, f: LaurentPoly, g: LaurentPoly) -> Scalar:
    """<f|g> by direct summation over the support."""
    total = 0
    for z, w in zip(m.nodes, m.weights):
        zi = 1 / z if isinstance(z, Fraction) else 1.0 / z
        total += (f(zi) * g(z) - f(z) * g(zi)) * w
    return total


def mu_moment(m: DiscreteMeasure, n: int) -> Scalar:
    """Skew moment mu_n = <1|z^n> = sum_k (z_k^n - z_k^-n) w_k."""
    total = 0
    for z, w in zip(m.nodes, m.weights):
        zi = 1 / z if isinstance(z, Fraction) else 1.0 / z
        total += (_ipow(z, n) - _ipow(zi, n)) * w
    return total


def c_moment(m: DiscreteMeasure, i: int) -> Scalar:
    """Folded moment c_i = sum_k (z_k + 1/z_k)^i (z_k - 1/z_k) w_k."""
    if i < 0:
        raise ValueError("c moments are indexed by non-negative integers")
    total = 0
    for z, w in zip(m.nodes, m.weights):
        zi = 1 / z if isinstance(z, Fraction) else 1.0 / z
        total += _ipow(z + zi, i) * (z - zi) * w
    return total


@dataclass(frozen=True)
class MomentTable:
    """Skew moments mu_n (n in Z) and folded moments c_i (i >= 0) of one measure."""

    mu: Dict[int, Scalar]
    c: Dict[int, Scalar]
    order: int

    @staticmethod
    def from_measure(m: DiscreteMeasure, order: int) -> "MomentTable":
        """Tabulate mu_n for |n| <= 4*order and c_i for i <= 4*order."""
        hi = 4 * order
        mu = {}
        for n in range(0, hi + 1):
            v = mu_moment(m, n)
            mu[n] = v
            mu[-n] = -v
        c = {i: c_moment(m, i) for i in range(hi + 1)}
        return MomentTable(mu=mu, c=c, order=order)

    def mu_at(self, n: int) -> Scalar:
        if n not in self.mu:
            raise KeyError(f"mu_{n} not tabulated (order {self.order})")
        return self.mu[n]

    def pf_entry(self, i: int, j: int) -> Scalar:
        """Moment-table entry <z^i|z^j>; depends only on j - i."""
        return self.mu_at(j - i)

    def c_list(self, count: int) -> List[Scalar]:
        return [self.c[i] for i in range(count)]


def chebyshev2_coeffs(n: int) -> List[int]:
    """Monomial coefficients [a_0..a_n] of the degree-n Chebyshev polynomial
    of the second kind, a_j x^j with a_{n-2k} = (-1)^k C(n-k,k) 2^(n-2k)."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    coeffs = [0] * (n + 1)
    for k in range(n // 2 + 1):
        coeffs[n - 2 * k] = (-1) ** k * math.comb(n - k, k) * 2 ** (n - 2 * k)
    return coeffs


def mu_from_c(c: Sequence[Scalar]) -> List[Scalar]:
    """Map folded moments c_0..c_{m-1} to skew moments mu_1..mu_m.

    mu_n = sum_{k=0}^{floor((n-1)/2)} (-1)^k C(n-1-k, k) c_{n-1-2k}.
    """
    out: List[Scalar] = []
    for n in range(1, len(c) + 1):
        acc = 0
        for k in range((n - 1) // 2 + 1):
            acc += (-1) ** k * math.comb(n - 1 - k, k) * c[n - 1 - 2 * k]
        out.append(acc)
    return out


def random_measure(seed: int, n: int, mode: str = "double") -> DiscreteMeasure:
    """Seeded admissible measure: nodes uniform in [1.2, 5.0] with pairwise
    gap >= 0.1, weights uniform in (0, 1].

    Candidates whose leading Pfaffian minors tau_1..tau_n fall below
    1e-8 x scale are rejected and resampled, up to 100 attempts.  In
    rational mode the sampled values are snapped to small exact fractions
    and the tau check is exact.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    rng = random.Random(seed)
    lo, hi = NODE_RANGE
    for _ in range(GENERATOR_MAX_ATTEMPTS):
        nodes = [rng.uniform(lo, hi) for _ in range(n)]
        weights = [1.0 - rng.random() for _ in range(n)]  # uniform in (0, 1]
        if any(abs(a - b) < NODE_MIN_GAP for i, a in enumerate(nodes) for b in nodes[:i]):
            continue
        if mode == "rational":
            nodes = [Fraction(z).limit_denominator(10**6) for z in nodes]
            weights = [Fraction(w).limit_denominator(10**6) for w in weights]
        m = DiscreteMeasure(nodes, weights)
        if _tau_positive(m, n):
            return m
    raise GenerationError(
        f"no admissible measure found for seed={seed}, order={n} "
        f"after {GENERATOR_MAX_ATTEMPTS} attempts"
    )


def _tau_positive(m: DiscreteMeasure, n: int) -> bool:
    # local import: lsop builds on this module
    from .lsop import tau_sequence

    try:
        taus = tau_sequence(m, n)
    except Exception:
        return False
    if m.is_exact():
        return all(t > 0 for t in taus[1:])
    scale = 1.0
    for k, t in enumerate(taus[1:], start=1):
        scale = max(scale, abs(float(t)))
        if float(t) <= TAU_REJECT_RELATIVE * scale:
            return False
    return True


def _ipow(z: Scalar, n: int) -> Scalar:
    if n >= 0:
        return z**n
    if isinstance(z, Fraction):
        return (Fraction(1) / z) ** (-n)
    return (1.0 / z) ** (-n)
