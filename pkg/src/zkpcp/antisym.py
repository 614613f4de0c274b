"""Antisymmetric functions on a reversal-symmetric cube and their sum code.

A prefix point denotes its suffix subcube; all set sizes and intersections
are computed by exact product arithmetic on prefix descriptions, never by
enumerating cubes, so one side of a large/small split may be exponential.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .domains import BOT, Point, ProductSet, dedup_points, sort_points
from .field import Field
from .linalg import kernel_basis
from .rm_locator import ColKey, LocatorOutput


def require_reversal_symmetric(a: ProductSet):
    if not a.is_reversal_symmetric():
        raise ValueError("product set must satisfy A_i = A_{m-i+1}")


def cube_size(a: ProductSet, pt: Point) -> int:
    return a.suffix_size(len(pt))


def rev_cube_intersection_size(x: Point, y: Point, a: ProductSet) -> int:
    """|cube(x) intersect reverse(cube(y))|, exactly.

    For short prefixes the overlap is a free middle band; once the fixed
    coordinates meet, it is a single point or empty depending on agreement.
    """
    require_reversal_symmetric(a)
    m = a.m
    if not a.contains_prefix(x) or not a.contains_prefix(y):
        raise ValueError("points must lie in the prefix domain of the cube")
    if len(x) + len(y) < m:
        n = 1
        for j in range(len(x), m - len(y)):
            n *= len(a.factors[j])
        return n
    for i in range(m - len(y), len(x)):
        if x[i] != y[m - i - 1]:
            return 0
    return 1


def union_size(pts: Iterable[Point], a: ProductSet) -> int:
    """Total size of the disjoint cubes of a prefix-free family."""
    return sum(cube_size(a, pt) for pt in pts)


def is_prefix(x: Point, y: Point) -> bool:
    return len(x) <= len(y) and y[: len(x)] == x


def is_prefix_free(pts: Sequence[Point]) -> bool:
    pts = list(pts)
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if i != j and is_prefix(x, y):
                return False
    return True


@dataclass(frozen=True)
class PrefixFreeFamily:
    """A prefix-free cover: each input point's cube is a disjoint union of
    cubes of members of g."""

    g: tuple[Point, ...]
    lam: dict[Point, frozenset[Point]]


def prefix_free(pts: Sequence[Point], a: ProductSet) -> PrefixFreeFamily:
    """Iteratively split the shortest prefix that strictly contains another.

    Ties broken lexicographically (both for the split point and the
    conflicting child), making the output deterministic. |g| <= |pts| * m.
    """
    inputs = dedup_points(pts)
    for pt in inputs:
        if not a.contains_prefix(pt):
            raise ValueError(f"point {pt} outside the prefix domain")
    g: set[Point] = set(inputs)
    lam: dict[Point, set[Point]] = {pt: {pt} for pt in inputs}
    while True:
        conflicted = sorted(
            (x for x in g if any(y != x and is_prefix(x, y) for y in g)),
            key=lambda q: (len(q), q),
        )
        if not conflicted:
            break
        star = conflicted[0]
        children = sorted(
            (y for y in g if y != star and is_prefix(star, y)),
            key=lambda q: (len(q), q),
        )
        child = children[0]
        g.remove(star)
        added = []
        for j in range(len(star), len(child)):
            for b in a.factors[j]:
                if b != child[j]:
                    added.append(child[:j] + (b,))
        g.update(added)
        replacement = set(added) | {child}
        for pt in inputs:
            if star in lam[pt]:
                lam[pt].remove(star)
                lam[pt].update(replacement)
    g_sorted = tuple(sort_points(g))
    return PrefixFreeFamily(
        g_sorted, {pt: frozenset(lam[pt]) for pt in inputs}
    )


@dataclass(frozen=True)
class SymFamily:
    """Disjoint minimal symmetric subsets of a prefix-free family."""

    sets: tuple[tuple[Point, ...], ...]


def sym_sets(g: Sequence[Point], a: ProductSet) -> SymFamily:
    """Connected components of the reverse-overlap graph whose covered cube
    equals its own reversal image; sizes checked by exact arithmetic."""
    require_reversal_symmetric(a)
    g = sort_points(dedup_points(g))
    if not is_prefix_free(g):
        raise ValueError("input must be prefix-free")
    n = len(g)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if rev_cube_intersection_size(g[i], g[j], a) != 0:
                adj[i].append(j)
                adj[j].append(i)
    seen = [False] * n
    comps: list[list[int]] = []
    for i in range(n):
        if seen[i]:
            continue
        stack, comp = [i], []
        seen[i] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        members = [g[i] for i in comp]
        overlap = sum(
            rev_cube_intersection_size(x, y, a) for x in members for y in members
        )
        if overlap == union_size(members, a):
            out.append(tuple(members))
    return SymFamily(tuple(out))


def complement_prefixes(h: Sequence[Point], a: ProductSet) -> list[Point]:
    """Prefix-free family covering cube minus the union of the given cubes.

    Walks the prefix tree; at most m * |h| members.
    """
    hset = set(h)

    def walk(node: Point) -> list[Point]:
        if node in hset:
            return []
        if not any(is_prefix(node, x) for x in hset):
            return [node]
        out = []
        for v in a.factors[len(node)]:
            out.extend(walk(node + (v,)))
        return out

    return walk(BOT)


def enumerate_cube_points(prefixes: Iterable[Point], a: ProductSet, cap: int = 1 << 20) -> list[Point]:
    out: list[Point] = []
    for pt in prefixes:
        if len(out) + cube_size(a, pt) > cap:
            raise ValueError("cube enumeration exceeds the configured cap")
        out.extend(a.cube_of(pt))
    return out


@dataclass(frozen=True)
class AntisymLocatorOutput(LocatorOutput):
    """Locator output plus the combinatorial intermediates used by tests."""

    g: tuple[Point, ...] = ()
    families: SymFamily = field(default_factory=lambda: SymFamily(()))


def antisym_locate(fld: Field, a: ProductSet, pts: Sequence[Point]) -> AntisymLocatorOutput:
    """Locator for the sum-word encoding masked by a random antisymmetric
    function. Messages live on the cube plus the total-sum coordinate.

    Odd characteristic only: over GF(2) the antisymmetry condition
    degenerates and palindromic coordinates stop being forced, which breaks
    the minimal-symmetric basis this construction is built on.
    """
    require_reversal_symmetric(a)
    if fld.p == 2:
        raise ValueError("antisym locator requires odd characteristic")
    p = fld.p
    queries = dedup_points(pts)
    fam = prefix_free(queries, a)
    families = sym_sets(fam.g, a)
    half = a.size / 2
    small, large = [], []
    for h in families.sets:
        (small if union_size(h, a) <= half else large).append(h)

    r_list: list[Point] = [BOT]
    covers: dict[tuple[Point, ...], list[Point]] = {}
    for h in small:
        covers[h] = enumerate_cube_points(h, a)
        r_list.extend(covers[h])
    for h in large:
        comp = complement_prefixes(h, a)
        covers[h] = enumerate_cube_points(comp, a)
        r_list.extend(covers[h])
    r_list = dedup_points(r_list)

    g_list = list(fam.g)
    cols: list[ColKey] = (
        [("m", q) for q in r_list]
        + [("g", q) for q in g_list]
        + [("c", q) for q in queries]
    )
    idx = {key: j for j, key in enumerate(cols)}
    small_set = set(small)
    rows: list[np.ndarray] = []
    for h in families.sets:
        row = np.zeros(len(cols), dtype=np.int64)
        if h in small_set:
            for q in covers[h]:
                row[idx[("m", q)]] = (row[idx[("m", q)]] + 1) % p
        else:
            row[idx[("m", BOT)]] = 1
            for q in covers[h]:
                row[idx[("m", q)]] = (row[idx[("m", q)]] - 1) % p
        for q in h:
            row[idx[("g", q)]] = (row[idx[("g", q)]] - 1) % p
        rows.append(row)
    for q in queries:
        row = np.zeros(len(cols), dtype=np.int64)
        for piece in fam.lam[q]:
            row[idx[("g", piece)]] = (row[idx[("g", piece)]] + 1) % p
        row[idx[("c", q)]] = (row[idx[("c", q)]] - 1) % p
        rows.append(row)

    y = (
        np.array(rows, dtype=np.int64)
        if rows
        else np.zeros((0, len(cols)), dtype=np.int64)
    )
    keep = [j for j, (kind, _) in enumerate(cols) if kind != "g"]
    kernel = kernel_basis(y, p)
    projected = (
        kernel[:, keep] if kernel.size else np.zeros((0, len(keep)), dtype=np.int64)
    )
    z = (
        kernel_basis(projected, p)
        if projected.shape[0]
        else np.eye(len(keep), dtype=np.int64)
    )
    return AntisymLocatorOutput(
        r=tuple(r_list),
        cols=tuple(cols[j] for j in keep),
        z=z,
        meta={"prefix_free": fam},
        g=fam.g,
        families=families,
    )
