"""Constraint location for random low-degree extensions.

A locator answers: which message positions R does a query set I depend on,
and which linear relations tie the message values at R to attainable query
answers? Output columns are tagged ("m", point) for message positions and
("c", point) for query positions; a point appearing on both sides occupies
two columns related by an explicit copy row, which is how the systematic
positions of the encoding are expressed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .domains import Point, ProductSet, dedup_points, sort_points
from .linalg import rref
from .rm import CodeView, ConstraintBasis, cd_rm, cd_zero_rm

ColKey = tuple[str, Point]


@dataclass(frozen=True)
class LocatorOutput:
    """(R, Z) with Z over the tagged columns ("m", r in R) + ("c", x in I).

    (message|_R, beta) lies in ker(Z) exactly when beta is an attainable
    restriction of the encoding to I for that message.
    """

    r: tuple[Point, ...]
    cols: tuple[ColKey, ...]
    z: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def query_points(self) -> tuple[Point, ...]:
        return tuple(pt for kind, pt in self.cols if kind == "c")

    def kernel_contains(self, msg: dict[Point, int], beta: dict[Point, int], p: int) -> bool:
        v = np.array(
            [
                (msg[pt] if kind == "m" else beta[pt]) % p
                for kind, pt in self.cols
            ],
            dtype=np.int64,
        )
        if self.z.shape[0] == 0:
            return True
        return not np.any((self.z @ v) % p)


def build_tagged_rows(
    basis: ConstraintBasis,
    msg_points: Sequence[Point],
    query_points: Sequence[Point],
    p: int,
) -> tuple[list[ColKey], np.ndarray]:
    """Lift a set-level constraint basis to tagged columns with copy rows.

    Each detector row gets its coefficient at x placed on the ("c", x) column
    when x is queried, else on ("m", x); points present on both sides get an
    extra row equating the two copies (the multiset constraint on repeated
    coordinates).
    """
    msg_points = list(msg_points)
    qset = set(query_points)
    cols: list[ColKey] = [("m", pt) for pt in msg_points] + [
        ("c", pt) for pt in query_points
    ]
    idx = {key: i for i, key in enumerate(cols)}
    rows = []
    for row in basis.z:
        out = np.zeros(len(cols), dtype=np.int64)
        for pt, c in zip(basis.domain, row):
            if c:
                key = ("c", pt) if pt in qset else ("m", pt)
                out[idx[key]] = c % p
        rows.append(out)
    for pt in msg_points:
        if pt in qset:
            out = np.zeros(len(cols), dtype=np.int64)
            out[idx[("m", pt)]] = 1
            out[idx[("c", pt)]] = (-1) % p
            rows.append(out)
    z = (
        np.array(rows, dtype=np.int64)
        if rows
        else np.zeros((0, len(cols)), dtype=np.int64)
    )
    return cols, z


def check_constraints(view: CodeView, pts: Sequence[Point], s: ProductSet) -> bool:
    """Whether pts union the product grid s is constrained w.r.t. the code.

    Equivalent, by the zero-code transfer property, to the zero-code detector
    finding a constraint on pts minus the grid. Needs d_i >= |S_i| - 1 so the
    grid itself is unconstrained.
    """
    if s.m != view.m:
        raise ValueError("product-set arity mismatch")
    for d, f in zip(view.dv, s.factors):
        if d < len(f) - 1:
            raise ValueError("need d_i >= |S_i| - 1")
    outside = [pt for pt in dedup_points(pts) if not s.contains(pt)]
    zview = CodeView(view.field, view.m, view.dv, zero_on=s)
    return not cd_zero_rm(zview, outside).is_empty()


def interpolating_set(view: CodeView, pts: Sequence[Point]) -> list[Point]:
    """The free-variable positions of the RREF'd detector output on pts.

    The result is unconstrained, and every dropped point is determined by it.
    """
    cb = cd_rm(view, pts)
    if cb.is_empty():
        return list(cb.domain)
    _, pivots = rref(cb.z, view.p)
    return [pt for j, pt in enumerate(cb.domain) if j not in pivots]


def rm_locate(view: CodeView, a: ProductSet, pts: Sequence[Point]) -> LocatorOutput:
    """Locator for the uniform low-degree-extension encoding of messages on a.

    Search runs the decision procedure at reduced degree over prefixes of the
    product set in depth-first order (factors in index order, elements in
    field-value order); grid points inside the query set are systematic and
    included directly. |R| <= |I| always.
    """
    if view.zero_on is not None:
        raise ValueError("locator expects a plain code view")
    if a.m != view.m:
        raise ValueError("product-set arity mismatch")
    for d, f in zip(view.dv, a.factors):
        if d < 2 * (len(f) - 1):
            raise ValueError("need d_i >= 2(|A_i| - 1)")
    pts = [pt for pt in dedup_points(pts)]
    for pt in pts:
        if len(pt) != view.m:
            raise ValueError(f"point {pt} is not full arity")

    dprime = tuple(d - (len(f) - 1) for d, f in zip(view.dv, a.factors))
    dview = view.with_degrees(dprime)
    # The interpolating set lives at the reduced degree: the search's
    # decision procedure runs there, and the per-level accounting needs the
    # set to be unconstrained at that degree (at the full degree it may
    # still carry reduced-degree constraints, which would flood the search).
    iprime = interpolating_set(dview, pts)
    flagged_per_level = [0] * max(view.m, 1)

    def search(prefix: Point, level: int) -> list[Point]:
        if level == view.m:
            return [prefix]
        found: list[Point] = []
        for s_val in a.factors[level]:
            grid = ProductSet(
                tuple((c,) for c in prefix)
                + ((s_val,),)
                + a.factors[level + 1 :]
            )
            if check_constraints(dview, iprime, grid):
                flagged_per_level[level] += 1
                found.extend(search(prefix + (s_val,), level + 1))
        return found

    hits = search((), 0)
    r_list = list(hits)
    for pt in pts:
        if a.contains(pt) and pt not in r_list:
            r_list.append(pt)

    dom = sort_points(set(pts) | set(r_list))
    basis = cd_rm(view, dom)
    cols, z = build_tagged_rows(basis, r_list, pts, view.p)
    return LocatorOutput(
        r=tuple(r_list),
        cols=tuple(cols),
        z=z,
        meta={"interpolating_set": iprime, "flagged_per_level": flagged_per_level},
    )
