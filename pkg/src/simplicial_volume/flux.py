"""Flux functions: the dual certificates for fractional volume.

A flux function assigns a rational value to every oriented d-simplex, with
the opposite orientation taking the negated value.  It is *feasible* when
every oriented (d+1)-simplex on the vertex set has outward flux at most 1;
the total flux through the facets of a complex is then a lower bound on its
fractional volume.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .chains import AdmissibleComplex, Chain, canonicalize
from .errors import DimensionMismatch

__all__ = [
    "FluxFunction",
    "CertificateReport",
    "evaluate",
    "outward_flux",
    "verify_certificate",
    "recenter_flux",
    "wedge",
    "centered_flux_properties",
]

ZERO = Fraction(0)


class FluxFunction:
    """Antisymmetric rational function on oriented ``dim``-simplices.

    ``values`` is keyed by sorted vertex tuple and holds the value on the
    positively oriented simplex.  Missing keys evaluate to zero.
    """

    __slots__ = ("dim", "values")

    def __init__(self, dim: int, values: Mapping | None = None):
        vals = {}
        for simplex, v in (values or {}).items():
            key, sign = canonicalize(simplex)
            if len(key) != dim + 1:
                raise DimensionMismatch(f"flux on {len(key) - 1}-simplex {simplex}, expected {dim}")
            v = Fraction(v) * sign
            vals[key] = vals.get(key, ZERO) + v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "values", {k: v for k, v in sorted(vals.items()) if v})

    def __setattr__(self, name, value):
        raise AttributeError("FluxFunction is immutable")

    def __reduce__(self):
        return FluxFunction, (self.dim, dict(self.values))

    def __call__(self, simplex) -> Fraction:
        return evaluate(self, simplex)

    def __mul__(self, r):
        r = Fraction(r)
        return FluxFunction(self.dim, {k: r * v for k, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FluxFunction):
            return NotImplemented
        return self.dim == other.dim and self.values == other.values

    def __hash__(self):
        return hash((self.dim, tuple(self.values.items())))

    def __repr__(self):
        return f"FluxFunction(dim={self.dim}, support={len(self.values)})"

    def pair(self, c: Chain) -> Fraction:
        """Linear extension to chains: sum of coefficient times value."""
        if c.dim != self.dim:
            raise DimensionMismatch(f"pairing a {self.dim}-flux with a {c.dim}-chain")
        vals = self.values
        return sum((coeff * vals.get(key, ZERO) for key, coeff in c.items()), ZERO)


@dataclass(frozen=True)
class CertificateReport:
    feasible: bool
    worst_simplex: tuple | None
    worst_flux: Fraction
    total_over_facets: Fraction
    claimed: Fraction
    checked: int

    @property
    def certifies(self) -> bool:
        """True when the report proves ``claimed <= V_Q``."""
        return self.feasible and self.total_over_facets >= self.claimed


def evaluate(phi: FluxFunction, simplex) -> Fraction:
    key, sign = canonicalize(simplex)
    if len(key) != phi.dim + 1:
        raise DimensionMismatch(f"{len(key) - 1}-simplex given to a {phi.dim}-flux")
    v = phi.values.get(key, ZERO)
    return v if sign > 0 else -v


def outward_flux(phi: FluxFunction, simplex) -> Fraction:
    """Sum of ``phi`` over the boundary faces of an oriented (d+1)-simplex."""
    key, sign = canonicalize(simplex)
    if len(key) != phi.dim + 2:
        raise DimensionMismatch(f"{len(key) - 1}-simplex has no outward flux under a {phi.dim}-flux")
    vals = phi.values
    total = ZERO
    for i in range(len(key)):
        v = vals.get(key[:i] + key[i + 1:])
        if v:
            total += v if i % 2 == 0 else -v
    return total if sign > 0 else -total


def verify_certificate(K: AdmissibleComplex, phi: FluxFunction, claimed=0) -> CertificateReport:
    """Exhaustively check feasibility of ``phi`` on K's vertex set.

    Every one of the C(n, d+2) candidate simplices is checked in both
    orientations, i.e. its outward flux must lie in [-1, 1].
    """
    if phi.dim != K.dim:
        raise DimensionMismatch(f"{phi.dim}-flux for a {K.dim}-complex")
    claimed = Fraction(claimed)
    worst, worst_val = None, None
    checked = 0
    for key in combinations(range(K.vertex_count), K.dim + 2):
        f = outward_flux(phi, key)
        checked += 1
        for simplex, val in ((key, f), ((key[1], key[0]) + key[2:], -f)):
            if worst_val is None or val > worst_val:
                worst, worst_val = simplex, val
    if worst_val is None:
        worst_val = ZERO
    feasible = worst_val <= 1
    total = phi.pair(K.chain)
    return CertificateReport(
        feasible=feasible,
        worst_simplex=None if feasible else worst,
        worst_flux=worst_val,
        total_over_facets=total,
        claimed=claimed,
        checked=checked,
    )


def wedge(w: int, c: Chain) -> Chain:
    """Prepend vertex ``w`` to every simplex of ``c``; terms containing ``w`` vanish."""
    terms = [((w,) + key, coeff) for key, coeff in c.items() if w not in key]
    return Chain(c.dim + 1, terms)


def recenter_flux(K: AdmissibleComplex, phi0: FluxFunction, w: int) -> FluxFunction:
    """Rebuild an optimal flux so that it vanishes on simplices containing ``w``.

    The new value on a d-simplex T avoiding ``w`` is the outward flux of
    ``phi0`` through the cone ``[w, T]``; simplices through ``w`` get zero.
    """
    if phi0.dim != K.dim:
        raise DimensionMismatch(f"{phi0.dim}-flux for a {K.dim}-complex")
    if not 0 <= w < K.vertex_count:
        raise ValueError(f"vertex {w} outside 0..{K.vertex_count - 1}")
    others = [v for v in range(K.vertex_count) if v != w]
    values = {}
    for key in combinations(others, K.dim + 1):
        v = outward_flux(phi0, (w,) + key)
        if v:
            values[key] = v
    return FluxFunction(K.dim, values)


def centered_flux_properties(K: AdmissibleComplex, phi: FluxFunction, w: int, vq) -> dict[str, bool]:
    """Check the five properties of an optimal flux centred at ``w``."""
    vq = Fraction(vq)
    report = verify_certificate(K, phi, vq)
    antisymmetric = True
    for key in combinations(range(K.vertex_count), K.dim + 1):
        if K.dim >= 1:
            rev = (key[1], key[0]) + key[2:]
            if evaluate(phi, rev) != -evaluate(phi, key):
                antisymmetric = False
                break
    return {
        "antisymmetric": antisymmetric,
        "feasible": report.feasible,
        "total_equals_vq": report.total_over_facets == vq,
        "bounded": all(-1 <= v <= 1 for v in phi.values.values()),
        "vanishes_at_w": all(w not in key for key in phi.values),
    }

