"""Locally simulatable encodings: locator-driven conditional sampling.

An encoding spec bundles a constraint locator with a message oracle. A
session answers queries one at a time, each answer drawn from the exact
conditional distribution of the encoding given everything answered so far:
forced when some located constraint pins it, uniform otherwise. The same
row construction feeds the symbolic audit, which accumulates the rows
instead of sampling.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .antisym import antisym_locate
from .domains import Point, ProductSet, hypercube
from .field import Field
from .linalg import kernel_basis
from .rm import CodeView
from .rm_locator import ColKey, LocatorOutput
from .sigma_rm import sigma_rm_locate


class InconsistentQueryAnswers(Exception):
    """The recorded query-answer set is not consistent with any codeword."""


@dataclass(frozen=True)
class EncodingSpec:
    """A linear randomised encoding with an attached constraint locator."""

    name: str
    fld: Field
    locator: Callable[[Sequence[Point]], LocatorOutput]
    message_oracle: Optional[Callable[[Point], int]] = None

    @property
    def p(self) -> int:
        return self.fld.p


def constraint_rows_for(
    spec: EncodingSpec, pts: Sequence[Point]
) -> tuple[list[tuple[dict[Point, int], int]], tuple[Point, ...]]:
    """Locator rows for pts with message values substituted in.

    Each returned row is (coefficients over encoding points, rhs); a vector
    of answers satisfies the row when sum(coef * answer) == rhs mod p. Also
    returns the message positions that were read.
    """
    if spec.message_oracle is None:
        raise ValueError("spec has no message oracle bound")
    loc = spec.locator(pts)
    p = spec.p
    msg = {q: spec.message_oracle(q) % p for q in loc.r}
    rows = []
    for zrow in loc.z:
        coef: dict[Point, int] = {}
        rhs = 0
        for key, c in zip(loc.cols, zrow):
            c = int(c)
            if not c:
                continue
            kind, q = key
            if kind == "m":
                rhs = (rhs - c * msg[q]) % p
            else:
                coef[q] = (coef.get(q, 0) + c) % p
        coef = {q: v for q, v in coef.items() if v}
        if coef or rhs:
            rows.append((coef, int(rhs)))
    return rows, loc.r


class SimSession:
    """Stateful per-verifier simulator session for one encoding.

    The caller owns the session; answers are cached so repeated queries are
    consistent by construction. Inconsistent caller-supplied state raises
    InconsistentQueryAnswers.
    """

    def __init__(self, spec: EncodingSpec, rng):
        self.spec = spec
        self.rng = rng
        self.answers: dict[Point, int] = {}
        self.messages_read: set[Point] = set()

    def query(self, alpha: Point) -> int:
        alpha = tuple(int(c) for c in alpha)
        if alpha in self.answers:
            return self.answers[alpha]
        p = self.spec.p
        pts = list(self.answers) + [alpha]
        rows, reads = constraint_rows_for(self.spec, pts)
        self.messages_read.update(reads)
        forced: Optional[int] = None
        for coef, rhs in rows:
            c_alpha = coef.get(alpha, 0)
            rest = sum(c * self.answers[q] for q, c in coef.items() if q != alpha) % p
            if c_alpha:
                val = ((rhs - rest) * pow(c_alpha, -1, p)) % p
                if forced is None:
                    forced = val
                elif forced != val:
                    raise InconsistentQueryAnswers(
                        f"conflicting forced values at {alpha}"
                    )
            elif rest != rhs % p:
                raise InconsistentQueryAnswers(
                    f"recorded answers violate a constraint on {list(coef)}"
                )
        beta = forced if forced is not None else self.spec.fld.sample(self.rng)
        self.answers[alpha] = beta
        return beta


def identity_spec(fld: Field, name: str = "identity") -> EncodingSpec:
    """The encoding that copies its message; locator ties each query to the
    same message position."""

    def locate(pts: Sequence[Point]) -> LocatorOutput:
        from .domains import dedup_points

        queries = dedup_points(pts)
        cols: list[ColKey] = [("m", q) for q in queries] + [
            ("c", q) for q in queries
        ]
        n = len(queries)
        z = np.zeros((n, 2 * n), dtype=np.int64)
        for i in range(n):
            z[i, i] = 1
            z[i, n + i] = (-1) % fld.p
        return LocatorOutput(r=tuple(queries), cols=tuple(cols), z=z)

    return EncodingSpec(name, fld, locate)


def compose(inner: EncodingSpec, outer: EncodingSpec, name: str | None = None) -> EncodingSpec:
    """Locator composition: locate the outer queries, then locate the outer
    message positions against the inner encoding, stack, and eliminate the
    intermediate layer."""
    if inner.p != outer.p:
        raise ValueError("field mismatch between encodings")
    p = inner.p

    def locate(pts: Sequence[Point]) -> LocatorOutput:
        out_loc = outer.locator(pts)
        mid = list(out_loc.r)
        in_loc = inner.locator(mid)
        cols: list[tuple[str, Point]] = (
            [("m", q) for q in in_loc.r]
            + [("mid", q) for q in mid]
            + [("c", q) for q in out_loc.query_points]
        )
        idx = {key: j for j, key in enumerate(cols)}
        rows = []
        for zrow in out_loc.z:
            row = np.zeros(len(cols), dtype=np.int64)
            for key, c in zip(out_loc.cols, zrow):
                if c:
                    kind, q = key
                    row[idx[("mid", q) if kind == "m" else ("c", q)]] = (
                        row[idx[("mid", q) if kind == "m" else ("c", q)]] + c
                    ) % p
            rows.append(row)
        for zrow in in_loc.z:
            row = np.zeros(len(cols), dtype=np.int64)
            for key, c in zip(in_loc.cols, zrow):
                if c:
                    kind, q = key
                    row[idx[("m", q) if kind == "m" else ("mid", q)]] = (
                        row[idx[("m", q) if kind == "m" else ("mid", q)]] + c
                    ) % p
            rows.append(row)
        z_star = (
            np.array(rows, dtype=np.int64)
            if rows
            else np.zeros((0, len(cols)), dtype=np.int64)
        )
        keep = [j for j, (kind, _) in enumerate(cols) if kind != "mid"]
        kernel = kernel_basis(z_star, p)
        projected = (
            kernel[:, keep]
            if kernel.size
            else np.zeros((0, len(keep)), dtype=np.int64)
        )
        z = (
            kernel_basis(projected, p)
            if projected.shape[0]
            else np.eye(len(keep), dtype=np.int64)
        )
        kept_cols = tuple(cols[j] for j in keep)
        return LocatorOutput(r=tuple(in_loc.r), cols=kept_cols, z=z)

    return EncodingSpec(
        name or f"{outer.name}∘{inner.name}", inner.fld, locate, inner.message_oracle
    )


def sigma_rm_spec(fld: Field, m: int, dv: Sequence[int], a: ProductSet) -> EncodingSpec:
    view = CodeView(fld, m, tuple(dv))
    return EncodingSpec(
        "sigma-rm", fld, lambda pts: sigma_rm_locate(view, a, pts)
    )


def antisym_spec(
    fld: Field, a: ProductSet, message_oracle: Callable[[Point], int]
) -> EncodingSpec:
    return EncodingSpec(
        "sigma-antisym",
        fld,
        lambda pts: antisym_locate(fld, a, pts),
        message_oracle,
    )


def enc_pcp_spec(
    fld: Field,
    m: int,
    d: int,
    h: Sequence[int],
    f_eval: Callable[[Point], int],
    gamma: int,
) -> EncodingSpec:
    """The composed proof-word encoding: antisymmetric masking inside, random
    low-degree extension with subcube sums outside.

    The message oracle answers cube points from the instance polynomial and
    the empty point with the claimed total.
    """
    a = hypercube(h, m)
    if d < 2 * (len(a.factors[0]) - 1):
        raise ValueError("need d >= 2(|H| - 1)")

    def message(q: Point) -> int:
        if q == ():
            return gamma % fld.p
        return f_eval(q) % fld.p

    inner = antisym_spec(fld, a, message)
    outer = sigma_rm_spec(fld, m, (d,) * m, a)
    return compose(inner, outer, name="enc-pcp")
