"""Constraint location for subcube sums of random low-degree extensions.

The sum-code word of a polynomial carries, for every prefix point of
F^{<=m}, the sum of the polynomial over the matching suffix subcube. Its
dual over a cube-closed set decomposes into per-arity Reed-Muller duals
plus parent-equals-sum-of-children rows; the locator builds exactly that
decomposition and projects out the auxiliary closure points.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .domains import Point, ProductSet, a_closure, dedup_points, sort_points
from .linalg import kernel_basis
from .poly import lagrange_univariate
from .rm import CodeView
from .rm_locator import ColKey, LocatorOutput, rm_locate


def flatten(
    z: dict[Point, int],
    axis: int,
    anchor: int,
    domain: Sequence[Point],
    a: ProductSet,
    p: int,
) -> dict[Point, int]:
    """Fold the length-``axis`` layer of a constraint onto its parents.

    Parents in the starred part of the domain absorb the Lagrange-weighted
    children values; everything else passes through. ``axis`` is 1-based,
    ``anchor`` must lie in A_axis.
    """
    if anchor not in a.factors[axis - 1]:
        raise ValueError("anchor must belong to the folded factor")
    dom = set(domain)
    lag = lagrange_univariate(a.factors[axis - 1], anchor, p)

    def lag_at(x: int) -> int:
        acc = 0
        for k in range(lag.size - 1, -1, -1):
            acc = (acc * x + int(lag[k])) % p
        return acc

    out: dict[Point, int] = {}
    for s in sort_points(dom):
        if len(s) == axis:
            continue
        val = z.get(s, 0) % p
        if len(s) == axis - 1:
            children = [q for q in dom if len(q) == axis and q[:-1] == s]
            if children:
                for q in children:
                    val = (val + z.get(q, 0) * lag_at(q[-1])) % p
        out[s] = val
    return out


@dataclass(frozen=True)
class SigmaLocatorOutput:
    """(R-hat, B) for the sum-code encoding; columns as in LocatorOutput."""

    rhat: tuple[Point, ...]
    cols: tuple[ColKey, ...]
    b: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def r(self) -> tuple[Point, ...]:
        return self.rhat

    @property
    def z(self) -> np.ndarray:
        return self.b

    @property
    def query_points(self) -> tuple[Point, ...]:
        return tuple(pt for kind, pt in self.cols if kind == "c")

    def kernel_contains(self, msg: dict[Point, int], beta: dict[Point, int], p: int) -> bool:
        v = np.array(
            [(msg[pt] if kind == "m" else beta[pt]) % p for kind, pt in self.cols],
            dtype=np.int64,
        )
        if self.b.shape[0] == 0:
            return True
        return not np.any((self.b @ v) % p)


def summation_rows(
    pts: Sequence[Point], a: ProductSet, designate, idx: dict[ColKey, int], p: int
) -> list[np.ndarray]:
    """Parent-minus-children rows for every starred point of the set."""
    s = set(pts)
    rows = []
    for pt in sort_points(s):
        if len(pt) >= a.m:
            continue
        kids = [pt + (v,) for v in a.factors[len(pt)]]
        if not any(k in s for k in kids):
            continue
        row = np.zeros(len(idx), dtype=np.int64)
        row[idx[designate(pt)]] = 1
        for k in kids:
            row[idx[designate(k)]] = (row[idx[designate(k)]] - 1) % p
        rows.append(row)
    return rows


def sigma_rm_locate(
    view: CodeView, a: ProductSet, pts: Sequence[Point]
) -> SigmaLocatorOutput:
    """Locator for the encoding that augments a random extension with all of
    its subcube sums over the product set.

    Closes the query set, runs the plain locator per arity (including arity
    zero, whose single coordinate is the systematic total sum), closes the
    union of message sets, ties the layers with summation rows, and projects
    the kernel onto message columns plus the original queries.
    """
    if view.zero_on is not None:
        raise ValueError("locator expects a plain code view")
    p = view.p
    queries = dedup_points(pts)
    for pt in queries:
        if len(pt) > view.m:
            raise ValueError(f"point {pt} longer than arity {view.m}")
    ihat = a_closure(queries, a)
    iset = set(ihat)

    per_arity: list[LocatorOutput] = []
    r_all: list[Point] = []
    for i in range(view.m + 1):
        layer = [q for q in ihat if len(q) == i]
        if not layer:
            continue
        view_i = CodeView(view.field, i, view.dv[:i])
        loc = rm_locate(view_i, a.prefix(i), layer)
        per_arity.append(loc)
        r_all.extend(loc.r)

    rhat = a_closure(r_all, a)
    rset = set(rhat)

    cols: list[ColKey] = [("m", q) for q in rhat] + [("c", q) for q in ihat]
    idx = {key: j for j, key in enumerate(cols)}

    def designate(q: Point) -> ColKey:
        return ("c", q) if q in iset else ("m", q)

    rows: list[np.ndarray] = []
    for loc in per_arity:
        for zrow in loc.z:
            row = np.zeros(len(cols), dtype=np.int64)
            for key, c in zip(loc.cols, zrow):
                if c:
                    kind, q = key
                    gkey = ("c", q) if kind == "c" else ("m", q)
                    row[idx[gkey]] = (row[idx[gkey]] + c) % p
            rows.append(row)
    rows.extend(summation_rows(sorted(rset | iset, key=lambda q: (len(q), q)), a, designate, idx, p))
    for q in rhat:
        if q in iset:
            row = np.zeros(len(cols), dtype=np.int64)
            row[idx[("m", q)]] = 1
            row[idx[("c", q)]] = (row[idx[("c", q)]] - 1) % p
            rows.append(row)

    z = (
        np.array(rows, dtype=np.int64)
        if rows
        else np.zeros((0, len(cols)), dtype=np.int64)
    )
    keep = [j for j, (kind, q) in enumerate(cols) if kind == "m" or q in set(queries)]
    kept_cols = [cols[j] for j in keep]
    kernel = kernel_basis(z, p)
    projected = kernel[:, keep] if kernel.size else np.zeros((0, len(keep)), dtype=np.int64)
    b = _dual_of_rows(projected, len(keep), p)
    ordered_cols = [c for c in kept_cols if c[0] == "m"] + [
        ("c", q) for q in queries
    ]
    perm = [kept_cols.index(c) for c in ordered_cols]
    b = b[:, perm] if b.size else b.reshape(0, len(perm))
    return SigmaLocatorOutput(
        rhat=tuple(rhat),
        cols=tuple(ordered_cols),
        b=b,
        meta={"per_arity": per_arity, "ihat": ihat},
    )


def _dual_of_rows(rows: np.ndarray, width: int, p: int) -> np.ndarray:
    """Basis of {z : every given row r satisfies r . z = 0}."""
    if rows.shape[0] == 0:
        return np.eye(width, dtype=np.int64)
    return kernel_basis(rows, p)
