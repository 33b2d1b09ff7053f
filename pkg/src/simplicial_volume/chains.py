"""Oriented simplices and chains with exact rational coefficients.

An oriented simplex is an ordered tuple of distinct vertex indices.  Two
orderings describe the same oriented simplex when they differ by an even
permutation, so every simplex is stored under its sorted vertex tuple and the
orientation is carried as a +1/-1 factor on the coefficient.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Rational

from .errors import DegenerateSimplex, DimensionMismatch, NotAdmissible

__all__ = [
    "canonicalize",
    "oriented_key",
    "OrientedSimplex",
    "Chain",
    "AdmissibleComplex",
    "AdmissibilityReport",
    "boundary",
    "one_norm",
    "check_admissible",
    "GAP_DIGRAPH",
    "HEXAGON",
    "BIPYRAMID",
]


def canonicalize(vertices) -> tuple[tuple[int, ...], int]:
    """Return ``(sorted_vertices, sign)`` for an ordered vertex tuple.

    ``sign`` is +1 when the sorting permutation is even and -1 when it is odd.
    Raises :class:`DegenerateSimplex` when a vertex repeats.
    """
    verts = tuple(int(v) for v in vertices)
    if not verts:
        raise ValueError("empty vertex tuple")
    if len(set(verts)) != len(verts):
        raise DegenerateSimplex(f"repeated vertex in {verts}")
    # parity via inversion count; tuples are short (d + 2 <= ~5)
    inversions = 0
    n = len(verts)
    for i in range(n):
        vi = verts[i]
        for j in range(i + 1, n):
            if vi > verts[j]:
                inversions += 1
    return tuple(sorted(verts)), (-1 if inversions & 1 else 1)


def oriented_key(vertices) -> tuple[int, ...]:
    """Unique representative tuple of an oriented simplex.

    Positively oriented simplices are represented by the sorted tuple, negative
    ones by the sorted tuple with its last two entries swapped.  0-simplices
    have a single orientation.
    """
    key, sign = canonicalize(vertices)
    if sign < 0:
        key = key[:-2] + (key[-1], key[-2])
    return key


@dataclass(frozen=True, order=True)
class OrientedSimplex:
    vertices: tuple[int, ...]

    def __post_init__(self):
        canonicalize(self.vertices)  # validates

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def canonical(self) -> tuple[tuple[int, ...], int]:
        return canonicalize(self.vertices)

    def reversed(self) -> "OrientedSimplex":
        v = self.vertices
        if len(v) < 2:
            raise DimensionMismatch("a 0-simplex has no opposite orientation")
        return OrientedSimplex((v[1], v[0]) + v[2:])

    def as_chain(self) -> "Chain":
        return Chain.simplex(self.vertices)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


class Chain:
    """Finite formal sum of oriented ``dim``-simplices with rational coefficients.

    Keys of :attr:`terms` are sorted vertex tuples; zero coefficients are never
    stored.  Instances are immutable and hashable.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping | Iterable = ()):
        if dim < 0:
            raise ValueError("chain dimension must be >= 0")
        acc: dict[tuple[int, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for simplex, coeff in items:
            key, sign = canonicalize(simplex)
            if len(key) != dim + 1:
                raise DimensionMismatch(
                    f"{len(key) - 1}-simplex {tuple(simplex)} in a {dim}-chain")
            c = _as_fraction(coeff)
            acc[key] = acc.get(key, 0) + (c if sign > 0 else -c)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(
            self, "_terms", {k: Fraction(v) for k, v in sorted(acc.items()) if v})
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_canonical(cls, dim, terms):
        # trusted constructor: keys already canonical, values nonzero Fractions
        self = object.__new__(cls)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", dict(sorted(terms.items())))
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def zero(cls, dim: int) -> "Chain":
        return cls._from_canonical(dim, {})

    @classmethod
    def simplex(cls, vertices, coeff=1) -> "Chain":
        return cls(len(tuple(vertices)) - 1, [(tuple(vertices), coeff)])

    def __setattr__(self, name, value):
        raise AttributeError("Chain is immutable")

    def __reduce__(self):
        return Chain._from_canonical, (self.dim, dict(self._terms))

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, vertices) -> Fraction:
        """Coefficient of the oriented simplex ``vertices`` (sign applied)."""
        key, sign = canonicalize(vertices)
        return sign * self._terms.get(key, Fraction(0))

    def __getitem__(self, vertices):
        return self.coefficient(vertices)

    def _combine(self, other: "Chain", factor) -> "Chain":
        if not isinstance(other, Chain):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot add a {self.dim}-chain and a {other.dim}-chain")
        acc = dict(self._terms)
        for k, v in other._terms.items():
            s = acc.get(k, 0) + factor * v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return Chain._from_canonical(self.dim, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Chain._from_canonical(self.dim, {k: -v for k, v in self._terms.items()})

    def __mul__(self, scalar):
        r = _as_fraction(scalar)
        if not r:
            return Chain.zero(self.dim)
        return Chain._from_canonical(self.dim, {k: r * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.dim, tuple(self._terms.items()))))
        return self._hash

    def vertices(self) -> set[int]:
        return {v for key in self._terms for v in key}

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._terms.values())

    def __repr__(self):
        if not self._terms:
            return f"Chain({self.dim}, 0)"
        parts = []
        for k, v in self._terms.items():
            parts.append(f"{v}*{list(k)}")
        return f"Chain({self.dim}, " + " + ".join(parts) + ")"


def boundary(c: Chain) -> Chain:
    """Alternating-sum boundary of a chain of dimension >= 1."""
    if c.dim < 1:
        raise DimensionMismatch("boundary needs a chain of dimension >= 1")
    acc: dict[tuple[int, ...], Fraction] = {}
    for key, coeff in c.items():
        # key is sorted, so each face is sorted and its sign is (-1)^i
        for i in range(len(key)):
            face = key[:i] + key[i + 1:]
            delta = coeff if i % 2 == 0 else -coeff
            s = acc.get(face, 0) + delta
            if s:
                acc[face] = s
            else:
                acc.pop(face, None)
    return Chain._from_canonical(c.dim - 1, acc)


def one_norm(c: Chain) -> Fraction:
    return sum((abs(v) for v in c._terms.values()), Fraction(0))


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    offending: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def check_admissible(facets) -> AdmissibilityReport:
    """Check that a facet chain (or complex) has zero boundary.

    Accepts a :class:`Chain` or an :class:`AdmissibleComplex`-like object with a
    ``chain`` attribute.  The report lists every (d-1)-simplex whose boundary
    coefficient is nonzero, keyed by sorted vertex tuple.
    """
    chain = facets.chain if hasattr(facets, "chain") else facets
    if chain.dim < 1:
        raise DimensionMismatch("admissibility is defined for dimension >= 1")
    residual = boundary(chain)
    return AdmissibilityReport(ok=not residual, offending=residual.terms)


class AdmissibleComplex:
    """An oriented pure d-complex with positive integer facet multiplicities.

    ``facets`` maps an oriented facet (see :func:`oriented_key`) to its
    multiplicity.  Opposite orientations of the same simplex may both occur
    (e.g. antiparallel edges of a digraph); they cancel in :attr:`chain`.
    """

    __slots__ = ("dim", "vertex_count", "facets", "chain")

    def __init__(self, dim: int, vertex_count: int, facets, *, check: bool = True):
        if dim < 1:
            raise DimensionMismatch("admissible complexes need dimension >= 1")
        mults: dict[tuple[int, ...], int] = {}
        items = facets.items() if isinstance(facets, Mapping) else facets
        for entry in items:
            if isinstance(entry, tuple) and len(entry) == 2 and isinstance(entry[0], (tuple, list)):
                simplex, m = entry
            else:
                simplex, m = entry, 1
            if int(m) != m or m < 1:
                raise ValueError(f"facet multiplicity must be a positive integer, got {m}")
            simplex = tuple(simplex)
            if len(simplex) != dim + 1:
                raise DimensionMismatch(f"facet {simplex} is not a {dim}-simplex")
            if any(v < 0 or v >= vertex_count for v in simplex):
                raise ValueError(f"facet {simplex} has a vertex outside 0..{vertex_count - 1}")
            key = oriented_key(simplex)
            mults[key] = mults.get(key, 0) + int(m)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "vertex_count", int(vertex_count))
        object.__setattr__(self, "facets", dict(sorted(mults.items())))
        object.__setattr__(self, "chain", Chain(dim, list(self.facets.items())))
        if check:
            report = check_admissible(self.chain)
            if not report.ok:
                raise NotAdmissible(
                    f"boundary of facet chain is nonzero on {len(report.offending)} faces",
                    report.offending)

    def __setattr__(self, name, value):
        raise AttributeError("AdmissibleComplex is immutable")

    def __reduce__(self):
        return _rebuild_complex, (self.dim, self.vertex_count, tuple(self.facets.items()))

    @classmethod
    def from_facets(cls, facets, vertex_count: int | None = None, dim: int | None = None,
                    check: bool = True) -> "AdmissibleComplex":
        """Build a complex from oriented tuples or ``(tuple, multiplicity)`` pairs."""
        entries = []
        for entry in facets:
            if isinstance(entry, tuple) and len(entry) == 2 and isinstance(entry[0], (tuple, list)):
                entries.append((tuple(entry[0]), entry[1]))
            else:
                entries.append((tuple(entry), 1))
        if not entries and (dim is None or vertex_count is None):
            raise ValueError("empty facet list needs explicit dim and vertex_count")
        if dim is None:
            dim = len(entries[0][0]) - 1
        if vertex_count is None:
            vertex_count = max(v for s, _ in entries for v in s) + 1
        return cls(dim, vertex_count, entries, check=check)

    @property
    def facet_count(self) -> int:
        return sum(self.facets.values())

    def oriented_facets(self):
        """Yield each oriented facet once per unit of multiplicity."""
        for key, m in self.facets.items():
            for _ in range(m):
                yield key

    def used_vertices(self) -> set[int]:
        return {v for key in self.facets for v in key}

    def relabel(self, perm) -> "AdmissibleComplex":
        """Apply the vertex map ``v -> perm[v]`` (a permutation of range(n))."""
        return AdmissibleComplex(
            self.dim, self.vertex_count,
            [(tuple(perm[v] for v in key), m) for key, m in self.facets.items()])

    def reversed(self) -> "AdmissibleComplex":
        """Same facets with every orientation flipped."""
        return AdmissibleComplex(
            self.dim, self.vertex_count,
            [((key[1], key[0]) + key[2:], m) for key, m in self.facets.items()])

    def __eq__(self, other):
        if not isinstance(other, AdmissibleComplex):
            return NotImplemented
        return (self.dim, self.vertex_count, self.facets) == (
            other.dim, other.vertex_count, other.facets)

    def __hash__(self):
        return hash((self.dim, self.vertex_count, tuple(self.facets.items())))

    def __repr__(self):
        return (f"AdmissibleComplex(dim={self.dim}, vertex_count={self.vertex_count}, "
                f"facets={self.facet_count})")


def _rebuild_complex(dim, vertex_count, facets):
    return AdmissibleComplex(dim, vertex_count, facets, check=False)


def all_simplices(vertex_count: int, dim: int):
    """Sorted vertex tuples of every ``dim``-simplex on ``range(vertex_count)``."""
    return combinations(range(vertex_count), dim + 1)


def _letters(word):
    return tuple(ord(ch) - ord("A") for ch in word)


# Hexagon B->C->D->E->F->G->B, spokes A->B, A->D, A->F, C->A, E->A, G->A,
# chords B->E, D->G, F->C, with A..G relabelled 0..6.
GAP_DIGRAPH = AdmissibleComplex.from_facets(
    [_letters(e) for e in (
        "BC", "CD", "DE", "EF", "FG", "GB",
        "AB", "AD", "AF", "CA", "EA", "GA",
        "BE", "DG", "FC")],
    vertex_count=7)

HEXAGON = AdmissibleComplex.from_facets([(i, (i + 1) % 6) for i in range(6)], vertex_count=6)

# A..E -> 0..4 as labelled in the worked tableau example
BIPYRAMID = AdmissibleComplex.from_facets(
    [_letters(f) for f in ("ABD", "AEB", "ADE", "BCD", "CED", "CBE")], vertex_count=5)
