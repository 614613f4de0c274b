"""The masked-sumcheck PCP: prover, verifier, simulator, #SAT front end.

The proof string has four table families: pi_sigma holds all subcube sums
of the masked instance polynomial over prefixes of F^{<=m}; pi_q and the
pi_t tables hold the mask components as full evaluation tables. The
verifier replays one random sumcheck path against interpolated univariate
slices plus axis-parallel-line degree tests. The simulator answers queries
through the composed locally-simulatable encoding for pi_sigma and exact
conditional sampling for the mask tables.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .domains import Point, hypercube, rev_point
from .encoding import EncodingSpec, enc_pcp_spec
from .field import Field, is_prime, next_prime
from .linalg import sample_affine
from .poly import (
    MultiPoly,
    lagrange_univariate,
    univariate_from_roots,
    vandermonde,
)
from .rm import CodeView, cd_rm

MAGIC = b"ZKP1"
DEFAULT_TABLE_CAP = 1 << 24


@dataclass(frozen=True)
class CnfInstance:
    """A CNF formula with a claimed model count."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    claimed_count: int = 0

    def __post_init__(self):
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")
        if self.claimed_count < 0:
            raise ValueError("claimed count must be nonnegative")

    def eval(self, assignment: Sequence[int]) -> int:
        for clause in self.clauses:
            if not any(
                (assignment[abs(l) - 1] == 1) == (l > 0) for l in clause
            ):
                return 0
        return 1

    def model_count(self) -> int:
        from itertools import product

        return sum(self.eval(bits) for bits in product((0, 1), repeat=self.num_vars))


def parse_dimacs(text: str) -> CnfInstance:
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            num_vars = int(parts[2])
            continue
        lits = [int(tok) for tok in line.split()]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        if lits:
            clauses.append(tuple(lits))
    if num_vars is None:
        raise ValueError("missing DIMACS problem line")
    return CnfInstance(num_vars, tuple(clauses))


def arithmetize(cnf: CnfInstance, p: int) -> MultiPoly:
    """Product over clauses of (1 - product over literals of (1 - lit-poly)).

    Agrees with the CNF on the Boolean cube; the degree in variable i equals
    the number of clauses mentioning it.
    """
    m = cnf.num_vars
    one = MultiPoly(p, np.ones((1,) * m, dtype=np.int64))
    acc = one
    for clause in cnf.clauses:
        miss = one
        for lit in clause:
            shape = [1] * m
            shape[abs(lit) - 1] = 2
            arr = np.zeros(shape, dtype=np.int64)
            flat = arr.reshape(2)
            if lit > 0:  # 1 - X_i
                flat[0], flat[1] = 1, (-1) % p
            else:  # X_i
                flat[0], flat[1] = 0, 1
            miss = miss.mul(MultiPoly(p, arr))
        acc = acc.mul(one.sub(miss))
    return acc


@dataclass(frozen=True)
class SumcheckParams:
    """Common input to prover and simulator: (p, m, d, H)."""

    p: int
    m: int
    d: int
    h: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError("modulus must be prime")
        h = tuple(sorted(set(self.h)))
        object.__setattr__(self, "h", h)
        if not h or any(not 0 <= x < self.p for x in h):
            raise ValueError("summation set must be nonempty field elements")
        if self.d < len(h) + 1:
            raise ValueError("need d >= |H| + 1")

    @property
    def fld(self) -> Field:
        return Field(self.p)

    @property
    def cube(self):
        return hypercube(self.h, self.m)

    def t_degree_vector(self, i: int) -> tuple[int, ...]:
        return tuple(
            self.d - len(self.h) if j == i else self.d for j in range(self.m)
        )


@dataclass(frozen=True)
class PcpParams(SumcheckParams):
    """Verifier parameters: the d+1 reading nodes of the unrolled sumcheck.

    The soundness guarantee additionally needs m*d < p/10; that floor is
    enforced where soundness is claimed (instance parameter selection), not
    here, so completeness can still be exercised on tiny fields.
    """

    nodes: tuple[int, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        nodes = self.nodes or tuple(range(self.d + 1))
        if len(set(nodes)) != self.d + 1 or any(not 0 <= x < self.p for x in nodes):
            raise ValueError("need d + 1 distinct reading nodes")
        if not set(self.h) <= set(nodes):
            raise ValueError("summation set must be contained in the nodes")
        object.__setattr__(self, "nodes", tuple(nodes))

    @property
    def meets_soundness_bound(self) -> bool:
        return self.m * self.d * 10 < self.p


@dataclass
class ProofOracle:
    """Dense proof tables: sigma[i] has shape (p,) * i; q and t_i, (p,) * m."""

    params: SumcheckParams
    sigma: list[np.ndarray]
    q: np.ndarray
    t: list[np.ndarray]

    def sigma_at(self, pt: Point) -> int:
        return int(self.sigma[len(pt)][pt]) if pt else int(self.sigma[0][()])

    def q_at(self, pt: Point) -> int:
        return int(self.q[pt])

    def t_at(self, i: int, pt: Point) -> int:
        return int(self.t[i][pt])


def _grid_eval(poly: MultiPoly, p: int) -> np.ndarray:
    """Evaluation table over the full grid F^m.

    Contractions run in float64 when the accumulator provably stays below
    2^53 (exact in IEEE double); otherwise exact int64.
    """
    c = poly.coeffs
    for axis in range(poly.m):
        v = vandermonde(range(p), c.shape[axis] - 1, p)
        moved = np.moveaxis(c, axis, 0)
        if c.shape[axis] * (p - 1) * (p - 1) < 2**53:
            prod = v.astype(np.float64) @ moved.reshape(moved.shape[0], -1).astype(
                np.float64
            )
            prod = prod.astype(np.int64) % p
            prod = prod.reshape((p,) + moved.shape[1:])
        else:
            prod = np.tensordot(v, moved, axes=(1, 0)) % p
        c = np.moveaxis(prod, 0, axis)
    return c


def _reverse_table(table: np.ndarray) -> np.ndarray:
    """Table of P(rev x) from the table of P(x)."""
    return np.transpose(table)


def _mask_table(params: SumcheckParams, q_tab: np.ndarray, t_tabs: list[np.ndarray]) -> np.ndarray:
    p = params.p
    zh = univariate_from_roots(params.h, p)
    zh_vals = np.zeros(p, dtype=np.int64)
    for x in range(p):
        acc = 0
        for k in range(zh.size - 1, -1, -1):
            acc = (acc * x + int(zh[k])) % p
        zh_vals[x] = acc
    # |accumulated| < p + m p^2, far below int64 overflow: one final reduction
    r_tab = q_tab - _reverse_table(q_tab)
    for i in range(params.m):
        shape = [1] * params.m
        shape[i] = p
        r_tab = r_tab + zh_vals.reshape(shape) * t_tabs[i]
    return r_tab % p


def _sum_tables(table: np.ndarray, params: SumcheckParams) -> list[np.ndarray]:
    """All prefix-sum layers over suffix cubes of the summation set."""
    h = list(params.h)
    layers = [None] * (params.m + 1)
    layers[params.m] = table % params.p
    for i in range(params.m - 1, -1, -1):
        nxt = layers[i + 1]
        layers[i] = nxt[..., h].sum(axis=-1) % params.p
    return layers


def prove(
    f_poly: MultiPoly | Callable[[Point], int],
    params: SumcheckParams,
    rng,
    table_cap: int = DEFAULT_TABLE_CAP,
) -> ProofOracle:
    """Sample the mask and emit the full proof tables.

    Q is uniform of individual degree d; each T_i is uniform with the degree
    in axis i reduced by |H|; the mask is Q - Q(rev) + sum Z_H(X_i) T_i.
    """
    p, m, d = params.p, params.m, params.d
    if p**m > table_cap:
        raise ValueError("dense proof tables exceed the size cap")
    fld = params.fld
    if isinstance(f_poly, MultiPoly):
        if f_poly.m != m or any(dd > d for dd in f_poly.degree_vector):
            raise ValueError("instance polynomial degree exceeds d")
        f_tab = _grid_eval(f_poly, p)
    else:
        f_tab = np.zeros((p,) * m, dtype=np.int64)
        for pt in np.ndindex(*f_tab.shape):
            f_tab[pt] = f_poly(pt) % p

    q_coeffs = fld.sample_array(rng, (d + 1,) * m)
    q_tab = _grid_eval(MultiPoly(p, q_coeffs), p)
    t_tabs = []
    for i in range(m):
        shape = tuple(dd + 1 for dd in params.t_degree_vector(i))
        t_tabs.append(_grid_eval(MultiPoly(p, fld.sample_array(rng, shape)), p))
    masked = (f_tab + _mask_table(params, q_tab, t_tabs)) % p
    return ProofOracle(params, _sum_tables(masked, params), q_tab, t_tabs)


@dataclass
class VerifyResult:
    accepted: bool
    reason: str
    queries: list[tuple[str, Point, int]] = field(default_factory=list)
    path: tuple[int, ...] = ()


@dataclass(frozen=True)
class ViewRecord:
    """A verifier's view: its coins (here, the seed of its stream) and the
    ordered query transcript. Replaying the coins reproduces the queries."""

    coins: int
    transcript: tuple[tuple[str, Point, int], ...]

    @staticmethod
    def from_session(seed: int, session: "SimulatorSession") -> "ViewRecord":
        return ViewRecord(seed, tuple(session.transcript))


from functools import lru_cache


@lru_cache(maxsize=64)
def _inverse_vandermonde_cached(nodes: tuple[int, ...], p: int) -> np.ndarray:
    from .poly import _inverse_vandermonde

    return _inverse_vandermonde(list(nodes), p)


def _fit_univariate(nodes: Sequence[int], values: Sequence[int], p: int) -> np.ndarray:
    """Coefficients of the unique polynomial through (nodes, values)."""
    vinv = _inverse_vandermonde_cached(tuple(nodes), p)
    return (vinv @ np.asarray(values, dtype=np.int64)) % p


def _horner(coeffs: np.ndarray, x: int, p: int) -> int:
    acc = 0
    for k in range(coeffs.size - 1, -1, -1):
        acc = (acc * x + int(coeffs[k])) % p
    return acc


def _interp_eval(nodes: Sequence[int], values: Sequence[int], x: int, p: int) -> int:
    return _horner(_fit_univariate(nodes, values, p), x, p)


@lru_cache(maxsize=16)
def _full_vandermonde(p: int, degree: int) -> np.ndarray:
    return vandermonde(range(p), degree, p)


def line_test_count(params: PcpParams) -> int:
    """Axis-parallel lines per table for the degree tests."""
    return math.ceil(4 * (params.m + 2) * math.log(2))


def verify(
    f_eval: Callable[[Point], int],
    params: PcpParams,
    proof: ProofOracle,
    rng,
    gamma: Optional[int] = None,
    path: Optional[tuple[int, ...]] = None,
    line_choices: Optional[list[list[tuple[int, Point]]]] = None,
) -> VerifyResult:
    """Unrolled sumcheck along one random path plus per-table line tests.

    When ``gamma`` is given, the proof's total-sum entry must match it.
    ``path`` and ``line_choices`` may be injected for exhaustive sweeps;
    they default to fresh uniform coins from rng.
    """
    p, m, d = params.p, params.m, params.d
    fld = params.fld
    log: list[tuple[str, Point, int]] = []

    def ask(oracle: str, pt: Point) -> int:
        if oracle == "sigma":
            v = proof.sigma_at(pt)
        elif oracle == "q":
            v = proof.q_at(pt)
        else:
            v = proof.t_at(int(oracle[1:]), pt)
        log.append((oracle, pt, v))
        return v

    gamma_claim = ask("sigma", ())
    if gamma is not None and gamma_claim != gamma % p:
        return VerifyResult(False, "claimed total mismatch", log)
    if path is None:
        path = tuple(fld.sample(rng) for _ in range(m))
    prev = gamma_claim
    nodes = list(params.nodes)
    h_pos = [nodes.index(a) for a in params.h]
    for i in range(m):
        vals = [ask("sigma", path[:i] + (x,)) for x in nodes]
        if sum(vals[j] for j in h_pos) % p != prev:
            return VerifyResult(False, f"sum check failed at round {i + 1}", log, path)
        prev = _interp_eval(nodes, vals, path[i], p)
    alpha = path
    r_val = (ask("q", alpha) - ask("q", rev_point(alpha))) % p
    zh = univariate_from_roots(params.h, p)
    for i in range(m):
        acc = 0
        for k in range(zh.size - 1, -1, -1):
            acc = (acc * alpha[i] + int(zh[k])) % p
        r_val = (r_val + acc * ask(f"t{i}", alpha)) % p
    if (f_eval(alpha) + r_val) % p != prev:
        return VerifyResult(False, "final consistency check failed", log, path)

    tables = [("q", (d,) * m)] + [
        (f"t{i}", params.t_degree_vector(i)) for i in range(m)
    ]
    r_lines = line_test_count(params)
    for k, (name, dv) in enumerate(tables):
        for j in range(r_lines):
            if line_choices is not None:
                axis, base = line_choices[k][j]
            else:
                axis = rng.randrange(m)
                base = tuple(fld.sample(rng) for _ in range(m))
            vals = [
                ask(name, base[:axis] + (x,) + base[axis + 1 :]) for x in range(p)
            ]
            deg = dv[axis]
            coeffs = _fit_univariate(range(deg + 1), vals[: deg + 1], p)
            expected = (_full_vandermonde(p, deg) @ coeffs) % p
            if not np.array_equal(expected, np.asarray(vals, dtype=np.int64) % p):
                return VerifyResult(
                    False, f"degree test failed on {name} axis {axis}", log, path
                )
    return VerifyResult(True, "accept", log, path)


class SimulatorSession:
    """Exact simulator for the proof oracles on a true statement.

    Every answer is drawn from the conditional distribution given the whole
    current view: the accumulated system of composed-locator rows for the
    proof word, detector rows for each mask table, and one mask-consistency
    row per table-queried point. Conditioning on the proof-word part alone
    would not be exact, because mask-table reads can pin the proof word at
    fresh points (read one full T-table line at arity one, or both
    orientations of Q plus the T values at a point), so each new value is
    solved jointly against everything already answered.
    """

    def __init__(
        self,
        params: SumcheckParams,
        f_eval: Callable[[Point], int],
        gamma: int,
        rng,
        include_mask_row: bool = True,
        check_statement: bool = True,
    ):
        self.params = params
        self.f_eval = f_eval
        self.gamma = gamma % params.p
        self.rng = rng
        self.include_mask_row = include_mask_row
        if check_statement:
            total = 0
            for pt in params.cube.points():
                total = (total + f_eval(pt)) % params.p
            if total != self.gamma:
                raise ValueError("simulator is only defined on true statements")
        self.spec: EncodingSpec = enc_pcp_spec(
            params.fld, params.m, params.d, params.h, f_eval, self.gamma
        )
        self.sig_vals: dict[Point, int] = {}
        self.q_vals: dict[Point, int] = {}
        self.t_vals: list[dict[Point, int]] = [dict() for _ in range(params.m)]
        self.activated: list[Point] = []
        self.messages_read: set[Point] = set()
        self.transcript: list[tuple[str, Point, int]] = []

    def query(self, oracle: str, pt: Point) -> int:
        pt = tuple(int(c) for c in pt)
        cached = self._cache_of(oracle)
        if pt not in cached:
            self._extend(oracle, pt)
        val = cached[pt]
        self.transcript.append((oracle, pt, val))
        return val

    def _cache_of(self, oracle: str) -> dict[Point, int]:
        if oracle == "sigma":
            return self.sig_vals
        if oracle == "q":
            return self.q_vals
        return self.t_vals[int(oracle[1:])]

    def _extend(self, oracle: str, pt: Point):
        params = self.params
        if oracle != "sigma" and len(pt) != params.m:
            raise ValueError("mask tables are indexed by full-arity points")
        sig_pts = sorted(self.sig_vals, key=lambda q: (len(q), q))
        q_pts = sorted(self.q_vals)
        t_pts = [sorted(vals) for vals in self.t_vals]
        mask_pts = list(self.activated)
        new_coords: list = []
        if pt not in self.sig_vals:
            new_coords.append(("s", pt))
        sig_pts = sorted(set(sig_pts) | {pt}, key=lambda q: (len(q), q))
        # Any full-arity point entering the view materialises its mask
        # coordinates: the pointwise mask identity entangles the proof word
        # with the tables there, and committing the latent values now (drawn
        # from their exact conditional) is just lazy sampling of the
        # prover's randomness.
        if len(pt) == params.m:
            for q in sorted({pt, rev_point(pt)} - set(self.q_vals)):
                new_coords.append(("q", q))
            q_pts = sorted(set(q_pts) | {pt, rev_point(pt)})
            for i in range(params.m):
                if pt not in self.t_vals[i]:
                    new_coords.append(("t", i, pt))
                t_pts[i] = sorted(set(t_pts[i]) | {pt})
            mask_pts.append(pt)
        rows, reads = gather_state_rows(
            params, self.f_eval, self.spec, sig_pts, q_pts, t_pts,
            mask_pts, self.include_mask_row,
        )
        self.messages_read.update(reads)
        uidx = {c: j for j, c in enumerate(new_coords)}
        a_mat = np.zeros((len(rows), len(new_coords)), dtype=np.int64)
        b_vec = np.zeros(len(rows), dtype=np.int64)
        for ri, (coef, rhs) in enumerate(rows):
            acc = rhs
            for c, v in coef.items():
                if c in uidx:
                    a_mat[ri, uidx[c]] = (a_mat[ri, uidx[c]] + v) % params.p
                else:
                    acc = (acc - v * self._value(c)) % params.p
            b_vec[ri] = acc
        sol = sample_affine(a_mat, b_vec, params.p, self.rng)
        if sol is None:
            raise RuntimeError("simulator system inconsistent; detector bug")
        for c, v in zip(new_coords, sol):
            self._store(c, int(v))
        if len(pt) == params.m and pt not in self.activated:
            self.activated.append(pt)

    def _value(self, coord) -> int:
        if coord[0] == "s":
            return self.sig_vals[coord[1]]
        if coord[0] == "q":
            return self.q_vals[coord[1]]
        return self.t_vals[coord[1]][coord[2]]

    def _store(self, coord, v: int):
        if coord[0] == "s":
            self.sig_vals[coord[1]] = v
        elif coord[0] == "q":
            self.q_vals[coord[1]] = v
        else:
            self.t_vals[coord[1]][coord[2]] = v


def gather_state_rows(
    params: SumcheckParams,
    f_eval,
    spec: EncodingSpec,
    sig_pts,
    q_pts,
    t_pts,
    mask_pts,
    include_mask_row: bool = True,
):
    """Every linear relation tying the current view coordinates together.

    Coordinates are ("s", pt), ("q", pt), ("t", i, pt). Rows: the composed
    locator's constraints on the proof word over sig_pts (message values
    substituted), per-table detector rows, and one mask-consistency row per
    point of mask_pts. Returns (rows, message positions read).
    """
    from .encoding import constraint_rows_for

    rows: list[tuple[dict, int]] = []
    reads: tuple = ()
    if sig_pts:
        sig_rows, reads = constraint_rows_for(spec, list(sig_pts))
        for coef, rhs in sig_rows:
            rows.append(({("s", q): v for q, v in coef.items()}, rhs))
    rows.extend(build_table_rows(params, q_pts, t_pts))
    if include_mask_row:
        for pt in mask_pts:
            rows.append(mask_row(params, pt, f_eval))
    return rows, reads


def build_table_rows(params: SumcheckParams, q_pts, t_pts):
    """Detector rows for each mask table over the given point sets."""
    rows = []
    fld = params.fld
    view_q = CodeView(fld, params.m, (params.d,) * params.m)
    cb = cd_rm(view_q, q_pts)
    for z in cb.z:
        coef = {("q", q): int(c) for q, c in zip(cb.domain, z) if c}
        rows.append((coef, 0))
    for i in range(params.m):
        view_t = CodeView(fld, params.m, params.t_degree_vector(i))
        cb = cd_rm(view_t, t_pts[i])
        for z in cb.z:
            coef = {("t", i, q): int(c) for q, c in zip(cb.domain, z) if c}
            rows.append((coef, 0))
    return rows


def mask_row(params: SumcheckParams, pt: Point, f_eval):
    """Q(pt) - Q(rev pt) + sum Z_H(pt_i) T_i(pt) - sigma(pt) = -F(pt)."""
    p = params.p
    zh = univariate_from_roots(params.h, p)
    coef: dict = {}
    rp = rev_point(pt)
    coef[("q", pt)] = 1
    coef[("q", rp)] = (coef.get(("q", rp), 0) - 1) % p
    for i in range(params.m):
        acc = 0
        for k in range(zh.size - 1, -1, -1):
            acc = (acc * pt[i] + int(zh[k])) % p
        if acc:
            coef[("t", i, pt)] = (coef.get(("t", i, pt), 0) + acc) % p
    coef[("s", pt)] = (-1) % p
    coef = {c: v for c, v in coef.items() if v}
    rhs = (-f_eval(pt)) % p
    return coef, rhs


def serialize_proof(proof: ProofOracle) -> bytes:
    params = proof.params
    head = [params.p, params.m, params.d, len(params.h), *params.h,
            len(params.nodes), *params.nodes]
    out = [MAGIC]
    out.append(struct.pack(f"<{len(head)}Q", *head))
    for i in range(params.m + 1):
        out.append(proof.sigma[i].reshape(-1).astype("<u8").tobytes())
    out.append(proof.q.reshape(-1).astype("<u8").tobytes())
    for tab in proof.t:
        out.append(tab.reshape(-1).astype("<u8").tobytes())
    return b"".join(out)


def deserialize_proof(blob: bytes) -> ProofOracle:
    if blob[:4] != MAGIC:
        raise ValueError("bad proof magic")
    off = 4

    def take(n: int):
        nonlocal off
        vals = struct.unpack_from(f"<{n}Q", blob, off)
        off += 8 * n
        return vals

    p, m, d = take(3)
    (hn,) = take(1)
    h = take(hn)
    (dn,) = take(1)
    nodes = take(dn)
    params = PcpParams(int(p), int(m), int(d), tuple(map(int, h)), tuple(map(int, nodes)))

    def table(shape):
        n = int(np.prod(shape)) if shape else 1
        vals = np.array(take(n), dtype=np.int64).reshape(shape)
        return vals

    sigma = [table((p,) * i) for i in range(m + 1)]
    q = table((p,) * m)
    t = [table((p,) * m) for _ in range(m)]
    if off != len(blob):
        raise ValueError("trailing bytes in proof")
    return ProofOracle(params, sigma, q, t)


@dataclass(frozen=True)
class SharpSatPcp:
    """Parameters and instance bundle for the #SAT specialisation."""

    cnf: CnfInstance
    claimed_count: int
    params: PcpParams
    poly: MultiPoly

    @property
    def gamma(self) -> int:
        return self.claimed_count % self.params.p

    def f_eval(self, pt: Point) -> int:
        return self.poly.eval(pt)

    def prove(self, rng, table_cap: int = DEFAULT_TABLE_CAP) -> ProofOracle:
        return prove(self.poly, self.params, rng, table_cap)

    def verify(self, proof: ProofOracle, rng) -> VerifyResult:
        return verify(self.f_eval, self.params, proof, rng, gamma=self.gamma)

    def simulator(self, rng, **kw) -> SimulatorSession:
        return SimulatorSession(self.params, self.f_eval, self.gamma, rng, **kw)


def pcp_for_sharp_sat(
    cnf: CnfInstance, claimed_count: int, p: Optional[int] = None
) -> SharpSatPcp:
    """Choose parameters for a CNF instance and bind the claim.

    The modulus must exceed both the soundness threshold 10 m d and 2^n so
    the claimed count cannot alias; a user-supplied smaller prime is
    rejected.
    """
    m = cnf.num_vars
    occurrences = [0] * m
    for clause in cnf.clauses:
        for lit in clause:
            occurrences[abs(lit) - 1] += 1
    d = max(3, max(occurrences, default=0))
    floor = max(10 * m * d, 2**m)
    if p is None:
        p = next_prime(floor)
    elif p <= floor or not is_prime(p):
        raise ValueError(f"modulus must be a prime above {floor}")
    params = PcpParams(p, m, d, (0, 1))
    assert params.meets_soundness_bound
    poly = arithmetize(cnf, p)
    return SharpSatPcp(cnf, claimed_count, params, poly)


def prove_shifted(bundle: SharpSatPcp, rng, table_cap: int = DEFAULT_TABLE_CAP) -> ProofOracle:
    """Honest-structure cheating prover for a wrong claimed count.

    Proves F + (claim - truth) * L where L is the product of the Lagrange
    indicators of the first summation node, so the forged word sums to the
    claim; every table stays a genuine polynomial and only the final
    consistency check can expose the shift.
    """
    params = bundle.params
    p = params.p
    truth = bundle.cnf.model_count() % p
    delta = (bundle.gamma - truth) % p
    ell = lagrange_univariate(list(params.h), params.h[0], p)
    shift = MultiPoly(p, np.ones((1,) * params.m, dtype=np.int64))
    for i in range(params.m):
        shape = [1] * params.m
        shape[i] = ell.size
        shift = shift.mul(MultiPoly(p, ell.reshape(shape)))
    forged = bundle.poly.add(shift.scale(delta))
    return prove(forged, params, rng, table_cap)
