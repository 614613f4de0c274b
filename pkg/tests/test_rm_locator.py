import itertools
import random

import numpy as np
import pytest

from zkpcp.domains import ProductSet, hypercube
from zkpcp.field import Field
from zkpcp.oracles import pack_assignment, packed_attainable_set
from zkpcp.rm import CodeView, cd_rm
from zkpcp.rm_locator import check_constraints, interpolating_set, rm_locate


def locator_matches_bruteforce(view, a, pts):
    """Exact equivalence of kernel membership and attainability on all
    (message, answers) assignments; returns the first mismatch if any."""
    out = rm_locate(view, a, pts)
    cube = list(a.points())
    attain = set(packed_attainable_set(view, a, list(pts)).tolist())
    p = view.p
    for combo in itertools.product(range(p), repeat=len(cube) + len(pts)):
        msg = dict(zip(cube, combo[: len(cube)]))
        beta = dict(zip(pts, combo[len(cube) :]))
        want = pack_assignment(list(combo), p) in attain
        got = out.kernel_contains(msg, beta, p)
        if got != want:
            return out, msg, beta, want
    return None


def test_check_constraints_examples():
    f = Field(5)
    view = CodeView(f, 1, (2,))
    s = ProductSet(((0, 1),))
    assert not check_constraints(view, [(2,)], s)
    assert check_constraints(view, [(2,), (3,), (4,)], s)


def test_check_constraints_empty_query_cube_free():
    f = Field(5)
    for m in (1, 2):
        view = CodeView(f, m, (2,) * m)
        assert not check_constraints(view, [], hypercube((0, 1), m))


def test_check_constraints_monotone_in_grid():
    f = Field(5)
    rng = random.Random(3)
    view = CodeView(f, 1, (3,))
    for _ in range(30):
        pts = [(x,) for x in rng.sample(range(5), rng.randrange(1, 4))]
        small = tuple(sorted(rng.sample(range(5), 2)))
        big = tuple(sorted(set(small) | {rng.randrange(5)}))
        if len(big) == len(small) or 3 < len(big) - 1:
            continue
        s_small, s_big = ProductSet((small,)), ProductSet((big,))
        if check_constraints(view, pts, s_small):
            assert check_constraints(view, pts, s_big)


def test_interpolating_set_unconstrained_identity():
    f = Field(5)
    view = CodeView(f, 1, (2,))
    pts = [(0,), (4,)]
    assert interpolating_set(view, pts) == pts


def test_interpolating_set_four_points_quadratic():
    f = Field(5)
    view = CodeView(f, 1, (2,))
    pts = [(0,), (1,), (2,), (3,)]
    got = interpolating_set(view, pts)
    assert len(got) == 3
    assert set(got) <= set(pts)
    # the result is unconstrained
    assert cd_rm(view, got).is_empty()


def test_interpolating_set_empty():
    f = Field(5)
    assert interpolating_set(CodeView(f, 1, (2,)), []) == []


def test_rm_locate_systematic_point():
    f = Field(5)
    view = CodeView(f, 2, (2, 2))
    out = rm_locate(view, hypercube((0, 1), 2), [(0, 0)])
    assert out.r == ((0, 0),)
    assert out.z.shape[0] == 1
    # answer equals message value: row proportional to (1, -1)
    z = out.z[0]
    assert (z[0] + z[1]) % 5 == 0 and z[0] != 0


def test_rm_locate_single_offcube_point_free():
    f = Field(5)
    view = CodeView(f, 2, (2, 2))
    out = rm_locate(view, hypercube((0, 1), 2), [(2, 2)])
    assert out.r == ()
    assert out.z.shape[0] == 0
    assert locator_matches_bruteforce(view, hypercube((0, 1), 2), [(2, 2)]) is None


def test_rm_locate_univariate_three_evals():
    f = Field(5)
    view = CodeView(f, 1, (2,))
    a = hypercube((0, 1), 1)
    out = rm_locate(view, a, [(2,), (3,), (4,)])
    assert set(out.r) == {(0,), (1,)}
    from zkpcp.linalg import rank

    assert rank(out.z, 5) == 2
    assert locator_matches_bruteforce(view, a, [(2,), (3,), (4,)]) is None


@pytest.mark.parametrize("p", [3, 5])
def test_rm_locate_contract_sweep(p):
    rng = random.Random(100 + p)
    f = Field(p)
    cases = []
    for m in (1, 2):
        for d in (2, 3):
            dv = (d,) * m
            if p ** int(np.prod([x + 1 for x in dv])) > 2_000_000:
                continue
            pool = list(itertools.product(range(p), repeat=m))
            for _ in range(8):
                pts = rng.sample(pool, rng.randrange(1, 4))
                cases.append((m, dv, pts))
    assert cases
    for m, dv, pts in cases:
        view = CodeView(f, m, dv)
        a = hypercube((0, 1), m)
        res = locator_matches_bruteforce(view, a, pts)
        assert res is None, f"mismatch for m={m} dv={dv} I={pts}: {res[1:]}"


def test_rm_locate_locality_and_flag_bounds():
    rng = random.Random(7)
    f = Field(5)
    view = CodeView(f, 2, (2, 2))
    a = hypercube((0, 1), 2)
    pool = list(itertools.product(range(5), repeat=2))
    for _ in range(200):
        pts = rng.sample(pool, rng.randrange(1, 5))
        out = rm_locate(view, a, pts)
        assert len(out.r) <= len(pts)
        iprime = out.meta["interpolating_set"]
        for level_count in out.meta["flagged_per_level"]:
            assert level_count <= len(iprime)


def test_rm_locate_rejects_low_degree():
    f = Field(5)
    view = CodeView(f, 1, (1,))
    with pytest.raises(ValueError):
        rm_locate(view, hypercube((0, 1), 1), [(2,)])


def test_rm_locate_rejects_partial_points():
    f = Field(5)
    view = CodeView(f, 2, (2, 2))
    with pytest.raises(ValueError):
        rm_locate(view, hypercube((0, 1), 2), [(1,)])


def test_rm_locate_arity_zero():
    # Degenerate but used by the sum-code locator: single coordinate, total sum.
    f = Field(5)
    view = CodeView(f, 0, ())
    out = rm_locate(view, ProductSet(()), [()])
    assert out.r == ((),)
    assert out.z.shape[0] == 1
