"""Disjoint union and facet connected sum of admissible complexes."""
from __future__ import annotations

from collections.abc import Mapping

from .chains import AdmissibleComplex, Chain, oriented_key
from .errors import DimensionMismatch, NotAdmissible, OrientationClash

__all__ = ["VertexMap", "disjoint_union", "connected_sum", "summand_split_ok"]


class VertexMap(dict):
    """Bijection from the vertices of a facet F of K to those of a facet F' of K'."""

    def __init__(self, pairs, domain=None, codomain=None):
        super().__init__(dict(pairs) if isinstance(pairs, Mapping) else pairs)
        if len(set(self.values())) != len(self):
            raise ValueError("vertex map is not injective")
        if domain is not None and set(self) != set(domain):
            raise ValueError(f"vertex map domain {sorted(self)} is not the facet {tuple(domain)}")
        if codomain is not None and set(self.values()) != set(codomain):
            raise ValueError(f"vertex map image {sorted(self.values())} is not the facet "
                             f"{tuple(codomain)}")


def disjoint_union(K: AdmissibleComplex, K2: AdmissibleComplex) -> AdmissibleComplex:
    """Union with K2's vertices shifted by ``K.vertex_count``."""
    if K.dim != K2.dim:
        raise DimensionMismatch(f"cannot unite a {K.dim}-complex with a {K2.dim}-complex")
    off = K.vertex_count
    facets = list(K.facets.items())
    facets += [(tuple(v + off for v in key), m) for key, m in K2.facets.items()]
    return AdmissibleComplex(K.dim, K.vertex_count + K2.vertex_count, facets)


def _find_facet(K: AdmissibleComplex, F) -> tuple[int, ...]:
    key = oriented_key(F)
    if K.facets.get(key, 0) < 1:
        raise ValueError(f"{tuple(F)} is not a facet of the complex (with that orientation)")
    return key


def connected_sum(K: AdmissibleComplex, F, K2: AdmissibleComplex, F2,
                  mapping) -> AdmissibleComplex:
    """Glue K and K2 along facets F and F2 and delete one copy of each.

    ``mapping`` sends each vertex of F to the vertex of F2 it is identified
    with.  After identification F2 must be F with the opposite orientation,
    otherwise :class:`OrientationClash` is raised.  Vertices of K keep their
    labels; the remaining vertices of K2 follow in increasing order.
    """
    if K.dim != K2.dim:
        raise DimensionMismatch(f"cannot glue a {K.dim}-complex to a {K2.dim}-complex")
    F, F2 = tuple(F), tuple(F2)
    key = _find_facet(K, F)
    key2 = _find_facet(K2, F2)
    vmap = mapping if isinstance(mapping, VertexMap) else VertexMap(mapping, F, F2)
    if set(vmap) != set(F) or set(vmap.values()) != set(F2):
        raise ValueError("vertex map must pair the vertices of F with those of F'")
    back = {v2: v for v, v2 in vmap.items()}
    relabel = {}
    nxt = K.vertex_count
    for v2 in range(K2.vertex_count):
        if v2 in back:
            relabel[v2] = back[v2]
        else:
            relabel[v2] = nxt
            nxt += 1
    glued = tuple(relabel[v] for v in F2)
    if Chain.simplex(F) + Chain.simplex(glued):
        raise OrientationClash(
            f"facet {F} and the image {glued} of {F2} have the same orientation")
    facets = dict(K.facets)
    facets[key] -= 1
    merged: list = [(k, m) for k, m in facets.items() if m]
    f2 = dict(K2.facets)
    f2[key2] -= 1
    merged += [(tuple(relabel[v] for v in k), m) for k, m in f2.items() if m]
    result = AdmissibleComplex(K.dim, nxt, merged, check=False)
    from .chains import check_admissible
    report = check_admissible(result)
    if not report.ok:
        raise NotAdmissible("connected sum is not admissible", report.offending)
    return result


def summand_split_ok(alpha: Chain, first: set[int], second: set[int]) -> bool:
    """Every simplex of ``alpha`` lies in one summand up to at most one vertex.

    ``first`` and ``second`` are the vertex sets of the two summands (they may
    share glued vertices).
    """
    for key in alpha:
        outside_first = sum(1 for v in key if v not in first)
        outside_second = sum(1 for v in key if v not in second)
        if outside_first > 1 and outside_second > 1:
            return False
    return True
