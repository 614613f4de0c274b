"""Exact zero-knowledge audit: simulated law vs the real proof law.

The simulator's random draws are all uniform-on-affine-fiber, so for a
fixed query sequence its joint output law is uniform on an affine set; this
module replays the simulator's row construction symbolically to recover
that set, builds the real law from the explicit linear map out of the
prover's coefficient space, and compares the two distributions with exact
rational arithmetic. A total-variation distance of zero is a proof of
distribution equality for that script, not a statistical estimate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

import numpy as np

from .domains import Point, rev_point
from .encoding import EncodingSpec, enc_pcp_spec
from .linalg import AffineSystem, kernel_basis, rank, rref
from .pcp import SumcheckParams, gather_state_rows
from .poly import MultiPoly, eval_monomial, monomial_exponents, univariate_from_roots


class AuditError(Exception):
    """The simulator's chained law failed a structural invariant."""


class LinearLaw:
    """Uniform law on the solution set of an accumulated linear system.

    Coordinates are added in step batches; a step's rows may force new
    coordinates but must never further constrain old ones (that would break
    the chained-uniformity invariant), which is checked exactly.
    """

    def __init__(self, p: int):
        self.p = p
        self.coords: list = []
        self.index: dict = {}
        self.rows: list[np.ndarray] = []
        self.rhs: list[int] = []

    def ensure_coords(self, keys: Sequence) -> list:
        fresh = []
        for key in keys:
            if key not in self.index:
                self.index[key] = len(self.coords)
                self.coords.append(key)
                fresh.append(key)
        return fresh

    def _solution_dim(self, n_cols: int, rows, rhs) -> Optional[int]:
        if not rows:
            return n_cols
        a = np.zeros((len(rows), n_cols), dtype=np.int64)
        for i, r in enumerate(rows):
            a[i, : r.size] = r
        sys = AffineSystem(a, np.array(rhs, dtype=np.int64), self.p)
        return sys.dim()

    def add_step(self, new_keys: Sequence, step_rows: list[tuple[dict, int]]):
        """Install a step's coordinates and rows, checking the chain invariant."""
        n_old = len(self.coords)
        dim_old = self._solution_dim(n_old, self.rows, self.rhs)
        if dim_old is None:
            raise AuditError("accumulated system became inconsistent")
        self.ensure_coords(new_keys)
        n = len(self.coords)
        for coef, rhs in step_rows:
            row = np.zeros(n, dtype=np.int64)
            for key, c in coef.items():
                if key not in self.index:
                    raise AuditError(f"row references unknown coordinate {key}")
                row[self.index[key]] = (row[self.index[key]] + c) % self.p
            self.rows.append(row)
            self.rhs.append(int(rhs) % self.p)
        dim_new = self._solution_dim(n, self.rows, self.rhs)
        if dim_new is None:
            raise AuditError("step rows are inconsistent with the prefix law")
        # the old marginal must be preserved: project the new solution set
        off, dirs = self.marginal(self.coords[:n_old])
        proj_dim = rank(dirs, self.p) if dirs.size else 0
        if dim_old != proj_dim:
            raise AuditError("step rows constrain already-sampled coordinates")

    def marginal(self, keys: Sequence) -> tuple[np.ndarray, np.ndarray]:
        """(offset, direction rows) of the law's projection onto keys."""
        n = len(self.coords)
        cols = [self.index[k] for k in keys]
        if not self.rows:
            x0 = np.zeros(n, dtype=np.int64)
            ker = np.eye(n, dtype=np.int64)
        else:
            a = np.zeros((len(self.rows), n), dtype=np.int64)
            for i, r in enumerate(self.rows):
                a[i, : r.size] = r
            sys = AffineSystem(a, np.array(self.rhs, dtype=np.int64), self.p)
            x0 = sys.solve()
            if x0 is None:
                raise AuditError("inconsistent accumulated system")
            ker = sys.kernel()
        off = x0[cols] if n else np.zeros(len(cols), dtype=np.int64)
        dirs = ker[:, cols] if ker.size else np.zeros((0, len(cols)), dtype=np.int64)
        return off % self.p, dirs % self.p


def symbolic_simulator_law(
    params: SumcheckParams,
    f_eval: Callable[[Point], int],
    gamma: int,
    steps: Sequence[tuple[str, Point]],
    include_mask_row: bool = True,
) -> tuple[LinearLaw, list]:
    """Replay the simulator's row construction without sampling.

    Returns the accumulated law plus, per step, the coordinate key whose
    value the simulator would have returned.
    """
    p = params.p
    spec: EncodingSpec = enc_pcp_spec(
        params.fld, params.m, params.d, params.h, f_eval, gamma
    )
    law = LinearLaw(p)
    sig_pts: list[Point] = []
    q_pts: set[Point] = set()
    t_pts: list[set[Point]] = [set() for _ in range(params.m)]
    activated: list[Point] = []
    answer_keys = []

    for oracle, pt in steps:
        pt = tuple(int(c) for c in pt)
        key = (
            ("s", pt)
            if oracle == "sigma"
            else ("q", pt) if oracle == "q" else ("t", int(oracle[1:]), pt)
        )
        answer_keys.append(key)
        if oracle != "sigma" and len(pt) != params.m:
            raise ValueError("mask tables are indexed by full-arity points")
        if key in law.index:
            continue
        new_keys = []
        if pt not in sig_pts:
            new_keys.append(("s", pt))
            sig_pts = sorted(set(sig_pts) | {pt}, key=lambda q: (len(q), q))
        # mirror the sampler: full-arity points carry their mask coordinates
        if len(pt) == params.m and pt not in activated:
            new_keys.extend(("q", q) for q in sorted({pt, rev_point(pt)} - q_pts))
            q_pts |= {pt, rev_point(pt)}
            for i in range(params.m):
                if pt not in t_pts[i]:
                    new_keys.append(("t", i, pt))
                t_pts[i].add(pt)
            activated.append(pt)
        if not new_keys:
            continue
        rows, _ = gather_state_rows(
            params,
            f_eval,
            spec,
            sig_pts,
            sorted(q_pts),
            [sorted(s) for s in t_pts],
            activated,
            include_mask_row,
        )
        law.add_step(new_keys, rows)
    return law, answer_keys


def prover_coefficient_coords(params: SumcheckParams) -> list:
    coords = [("Q", e) for e in monomial_exponents((params.d,) * params.m)]
    for i in range(params.m):
        coords.extend(
            ("T", i, e) for e in monomial_exponents(params.t_degree_vector(i))
        )
    return coords


def real_law(
    params: SumcheckParams,
    f_poly: MultiPoly,
    steps: Sequence[tuple[str, Point]],
) -> tuple[np.ndarray, np.ndarray]:
    """(offset, direction rows) of the honest answers for a fixed script.

    Answers are affine in the prover's mask coefficients, which are uniform,
    so the law is uniform on offset + row span of the linear map's image.
    """
    p = params.p
    coords = prover_coefficient_coords(params)
    cidx = {c: j for j, c in enumerate(coords)}
    zh = univariate_from_roots(params.h, p)

    def zh_at(x: int) -> int:
        acc = 0
        for k in range(zh.size - 1, -1, -1):
            acc = (acc * x + int(zh[k])) % p
        return acc

    l_rows = np.zeros((len(steps), len(coords)), dtype=np.int64)
    off = np.zeros(len(steps), dtype=np.int64)
    cube = params.cube
    for si, (oracle, pt) in enumerate(steps):
        pt = tuple(int(c) for c in pt)
        if oracle == "sigma":
            tails = list(cube.suffix_points(len(pt)))
            off[si] = sum(f_poly.eval(pt + tail) for tail in tails) % p
            for e in monomial_exponents((params.d,) * params.m):
                w = 0
                for tail in tails:
                    full = pt + tail
                    w += eval_monomial(e, full, p) - eval_monomial(
                        e, rev_point(full), p
                    )
                if w % p:
                    l_rows[si, cidx[("Q", e)]] = w % p
            for i in range(params.m):
                for e in monomial_exponents(params.t_degree_vector(i)):
                    w = 0
                    for tail in tails:
                        full = pt + tail
                        w += zh_at(full[i]) * eval_monomial(e, full, p)
                    if w % p:
                        l_rows[si, cidx[("T", i, e)]] = w % p
        elif oracle == "q":
            for e in monomial_exponents((params.d,) * params.m):
                l_rows[si, cidx[("Q", e)]] = eval_monomial(e, pt, p)
        else:
            i = int(oracle[1:])
            for e in monomial_exponents(params.t_degree_vector(i)):
                l_rows[si, cidx[("T", i, e)]] = eval_monomial(e, pt, p)
    # image of the coefficient space: row space of the transposed map
    dirs, piv = rref(l_rows.T, p)
    dirs = dirs[: len(piv)]
    return off, dirs


@dataclass(frozen=True)
class ScriptStep:
    oracle: str
    point: Point


@dataclass(frozen=True)
class BranchStep:
    """Answer-dependent choice: compare an earlier answer against a value."""

    step: int
    equals: int
    then: ScriptStep
    else_: ScriptStep


Script = list  # of ScriptStep | BranchStep


def parse_script(obj: dict) -> Script:
    steps: Script = []
    for raw in obj["steps"]:
        if "if" in raw:
            cond = raw["if"]
            steps.append(
                BranchStep(
                    int(cond["step"]),
                    int(cond["equals"]),
                    ScriptStep(raw["then"]["oracle"], tuple(raw["then"]["point"])),
                    ScriptStep(raw["else"]["oracle"], tuple(raw["else"]["point"])),
                )
            )
        else:
            steps.append(ScriptStep(raw["oracle"], tuple(raw["point"])))
    return steps


def enumerate_branches(script: Script):
    """All (conditions, resolved steps) pairs for a script.

    A condition is (slot, value, truth): answer at slot == value iff truth.
    """
    paths = [([], [])]
    for step in script:
        if isinstance(step, ScriptStep):
            paths = [
                (conds, resolved + [(step.oracle, step.point)])
                for conds, resolved in paths
            ]
        else:
            nxt = []
            for conds, resolved in paths:
                if step.step >= len(resolved):
                    raise ValueError("branch references a later step")
                nxt.append(
                    (
                        conds + [(step.step, step.equals, True)],
                        resolved + [(step.then.oracle, step.then.point)],
                    )
                )
                nxt.append(
                    (
                        conds + [(step.step, step.equals, False)],
                        resolved + [(step.else_.oracle, step.else_.point)],
                    )
                )
            paths = nxt
    return paths


@dataclass
class AuditReport:
    tv: Fraction
    support_equal: bool
    branches: int
    detail: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.tv == 0


def _membership_checker(off: np.ndarray, dirs: np.ndarray, p: int):
    n = len(off)
    dual = kernel_basis(dirs, p) if dirs.size else np.eye(n, dtype=np.int64)
    target = (dual @ off) % p if dual.size else np.zeros(0, dtype=np.int64)
    dim = n - (rank(dual, p) if dual.size else 0)

    def member(ans: np.ndarray) -> bool:
        if dual.size == 0:
            return True
        return not np.any((dual @ ans - target) % p)

    return member, dim


def script_battery(params: SumcheckParams, count: int, seed: int) -> list[Script]:
    """Deterministic adaptive scripts (length <= 4) mixing all oracle families.

    The first few are fixed sensitive cases, including palindromic off-cube
    points whose mask rows bind every answered coordinate (the scripts that
    expose a simulator with the mask row dropped); the rest are seeded
    random, with equality branches on earlier answers.
    """
    import random as _random

    p, m = params.p, params.m
    rng = _random.Random(seed)
    off = p - 1  # an off-cube coordinate
    pal = (off,) * m
    scripts: list[Script] = [
        [ScriptStep("sigma", ())],
        [ScriptStep("sigma", pal)]
        + [ScriptStep(f"t{i}", pal) for i in range(m)],
        [
            ScriptStep("sigma", (off,) + (0,) * (m - 1)),
            ScriptStep("q", (off,) + (0,) * (m - 1)),
            ScriptStep("q", (0,) * (m - 1) + (off,)),
            ScriptStep("t0", (off,) + (0,) * (m - 1)),
        ],
        # tables first, proof word last: the answer is pinned backward
        # through the pointwise mask identity
        [
            ScriptStep("q", (off,) + (1,) * (m - 1)),
            ScriptStep("q", (1,) * (m - 1) + (off,)),
            ScriptStep("t0", (off,) + (1,) * (m - 1)),
            ScriptStep("sigma", (off,) + (1,) * (m - 1)),
        ],
    ]
    oracles = ["sigma", "q"] + [f"t{i}" for i in range(m)]

    def rand_point(full: bool) -> Point:
        ln = m if full else rng.randrange(0, m + 1)
        return tuple(rng.randrange(p) for _ in range(ln))

    def rand_step() -> ScriptStep:
        oracle = rng.choice(oracles)
        return ScriptStep(oracle, rand_point(full=oracle != "sigma"))

    while len(scripts) < count:
        length = rng.randrange(1, 5)
        steps: Script = [rand_step()]
        for _ in range(length - 1):
            if rng.random() < 0.3:
                steps.append(
                    BranchStep(
                        rng.randrange(len(steps)),
                        rng.randrange(p),
                        rand_step(),
                        rand_step(),
                    )
                )
            else:
                steps.append(rand_step())
        scripts.append(steps)
    return scripts


def audit_script(
    params: SumcheckParams,
    f_poly: MultiPoly,
    gamma: int,
    script: Script,
    include_mask_row: bool = True,
) -> AuditReport:
    """Compare the simulator's exact law against the real law on one script."""
    from .oracles import affine_sets_equal

    p = params.p
    branches = enumerate_branches(script)
    per_branch = []
    all_equal = True
    for conds, steps in branches:
        law, keys = symbolic_simulator_law(
            params, f_poly.eval, gamma, steps, include_mask_row
        )
        sim_off, sim_dirs = law.marginal(keys)
        re_off, re_dirs = real_law(params, f_poly, steps)
        equal = affine_sets_equal(sim_off, sim_dirs, re_off, re_dirs, p)
        all_equal = all_equal and equal
        per_branch.append((conds, sim_off, sim_dirs, re_off, re_dirs, equal))
    k = len(per_branch[0][1]) if per_branch else 0
    if all_equal:
        return AuditReport(Fraction(0), True, len(branches), per_branch)

    checkers = []
    for conds, sim_off, sim_dirs, re_off, re_dirs, _ in per_branch:
        sim_m, sim_dim = _membership_checker(sim_off, sim_dirs, p)
        re_m, re_dim = _membership_checker(re_off, re_dirs, p)
        checkers.append((conds, sim_m, sim_dim, re_m, re_dim))
    tv = Fraction(0)
    for combo in product(range(p), repeat=k):
        ans = np.array(combo, dtype=np.int64)
        for conds, sim_m, sim_dim, re_m, re_dim in checkers:
            if all((ans[j] == v) == truth for j, v, truth in conds):
                p_sim = Fraction(1, p**sim_dim) if sim_m(ans) else Fraction(0)
                p_re = Fraction(1, p**re_dim) if re_m(ans) else Fraction(0)
                tv += abs(p_sim - p_re)
                break
    return AuditReport(tv / 2, False, len(branches), per_branch)
