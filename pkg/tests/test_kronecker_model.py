import pytest

from hallbase import finite_field_oracle as ffo
from hallbase.kronecker_model import (
    ALPHA1, ALPHA2, DELTA, DimVector, Order, PBWIndex, Root, end_dim,
    enumerate_indices, euler_form, geometric_less, orbit_dim, root_less,
    sorted_indices, weight,
)


def test_euler_form_values():
    assert euler_form(ALPHA1, ALPHA2) == 0
    assert euler_form(ALPHA2, ALPHA1) == -2
    assert euler_form(DELTA, ALPHA1) == -1
    assert euler_form(ALPHA1, DELTA) == 1
    assert euler_form(DELTA, DELTA) == 0


def test_root_order():
    assert root_less(Root.Prep(0), Root.Prep(1))
    assert root_less(Root.Prep(5), Root.Prei(0))
    assert root_less(Root.Prei(3), Root.Prei(1))
    assert not root_less(Root.Prei(1), Root.Prei(3))
    assert root_less(Root.Prep(9), Root.Imag(1))


def test_bad_roots():
    with pytest.raises(ValueError):
        Root.Imag(0)
    with pytest.raises(ValueError):
        Root("real", 1)


@pytest.mark.parametrize("c, d", [
    (PBWIndex({0: 1}, (), {0: 1}), (1, 1)),
    (PBWIndex(None, (2,)), (2, 2)),
    (PBWIndex({1: 1}, (1,)), (3, 2)),
    (PBWIndex(), (0, 0)),
])
def test_weight(c, d):
    assert weight(c) == DimVector(*d)


def test_enumerate_small_weights():
    assert set(enumerate_indices((1, 1))) == {PBWIndex(None, (1,)), PBWIndex({0: 1}, (), {0: 1})}
    assert set(enumerate_indices((2, 1))) == {
        PBWIndex({1: 1}), PBWIndex({0: 1}, (1,)), PBWIndex({0: 2}, (), {0: 1})}
    assert len(enumerate_indices((2, 2))) == 6
    assert enumerate_indices((0, 0)) == [PBWIndex()]


def _kostant_count(d1, d2):
    # independent count: multisets of positive roots with imaginary multiplicity
    # recorded as a partition
    roots = []
    for n in range(max(d1, d2) + 1):
        roots.append((n + 1, n))
        roots.append((n, n + 1))
    from hallbase.kronecker_model import partitions

    def rec(i, a, b):
        if i == len(roots):
            return len(partitions(a)) if a == b else 0
        r1, r2 = roots[i]
        total, k = 0, 0
        while k * r1 <= a and k * r2 <= b:
            total += rec(i + 1, a - k * r1, b - k * r2)
            k += 1
            if r1 == r2 == 0:
                break
        return total
    return rec(0, d1, d2)


@pytest.mark.parametrize("d", [(a, b) for a in range(5) for b in range(5)])
def test_enumeration_count_matches_partition_count(d):
    assert len(enumerate_indices(d)) == _kostant_count(*d)


def test_end_dim_examples():
    assert end_dim(PBWIndex(None, (1,))) == 1
    assert end_dim(PBWIndex({0: 1}, (), {0: 1})) == 2
    assert end_dim(PBWIndex({0: 1}, (1,))) == 3


def test_orbit_dim_examples():
    assert orbit_dim(PBWIndex(None, (1,))) == 1
    assert orbit_dim(PBWIndex({0: 1}, (), {0: 1})) == 0
    assert orbit_dim(PBWIndex({0: 2})) == 0


def test_geometric_order_examples():
    real = PBWIndex({0: 1}, (), {0: 1})
    im = PBWIndex(None, (1,))
    assert geometric_less(real, im) is Order.LESS
    assert geometric_less(im, real) is Order.GREATER
    assert geometric_less(PBWIndex(None, (2,)), PBWIndex(None, (1, 1))) is Order.LESS
    assert geometric_less(im, im) is Order.EQUAL
    with pytest.raises(ValueError):
        geometric_less(im, PBWIndex({0: 1}))


def test_sorted_indices_is_linear_extension():
    for d in [(2, 2), (3, 2), (3, 3), (4, 3)]:
        idx = sorted_indices(d)
        for i, a in enumerate(idx):
            for b in idx[:i]:
                assert geometric_less(a, b) is not Order.LESS


@pytest.mark.parametrize("d", [(1, 1), (2, 1), (2, 2), (3, 2), (2, 3)])
def test_end_dim_matches_oracle_hom(d):
    # imaginary parts placed at distinct rational points of P^1 over F_5
    orc = ffo.get_oracle(5)
    pts = [ffo.INF, (0, 1), (1, 1), (2, 1)]
    for c in enumerate_indices(d):
        prep = tuple(n for n, k in c.prep for _ in range(k))
        prei = tuple(n for n, k in c.prei for _ in range(k))
        reg = tuple(sorted((pts[i], (w,)) for i, w in enumerate(c.im)))
        lab = (prep, reg, prei)
        rep = orc.rep(lab)
        assert ffo.hom_dim(rep, rep) == end_dim(c)


def test_pbw_index_roundtrip():
    c = PBWIndex({0: 2, 3: 1}, (2, 1), {1: 1})
    assert PBWIndex.from_json(c.to_json()) == c
    assert c.shorthand() == "P0^2 * P3 * D(2,1) * I1"
