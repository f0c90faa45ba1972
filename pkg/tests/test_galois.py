import random

import pytest

from trellislab.galois import (
    GF2,
    GF3,
    FieldSpec,
    Mat,
    Subspace,
    complement,
    cross_section,
    invert,
    kernel,
    lattice,
    orthogonal,
    project,
    rref,
    solve_particular,
)

import oracles


def test_field_requires_prime():
    FieldSpec(7)
    with pytest.raises(ValueError):
        FieldSpec(6)
    with pytest.raises(ValueError):
        FieldSpec(1)


def test_mat_rejects_unreduced_entries():
    with pytest.raises(ValueError):
        Mat(GF2, 2, ((2, 0),))


def test_rref_examples():
    assert rref(Mat.from_rows(GF2, 2, [[1, 1], [0, 1]])).entries == ((1, 0), (0, 1))
    assert rref(Mat.from_rows(GF2, 3, [[1, 1, 0], [1, 1, 0]])).entries == ((1, 1, 0),)
    # over GF(3) the second row is twice the first
    assert rref(Mat.from_rows(GF3, 2, [[2, 1], [1, 2]])).entries == ((1, 2),)


def test_rref_idempotent_random():
    rng = random.Random(1)
    for _ in range(100):
        p = rng.choice((2, 3, 5))
        field = FieldSpec(p)
        n = rng.randint(1, 6)
        m = Mat.from_rows(field, n, [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, 5))])
        r = rref(m)
        assert rref(r) == r


def test_kernel_examples():
    assert kernel(Mat.from_rows(GF2, 2, [[1, 1]])) == Subspace.span(GF2, 2, [[1, 1]])
    assert kernel(Mat.identity(GF2, 3)).is_zero()
    assert kernel(Mat.from_rows(GF2, 3, [[1, 0, 1], [0, 1, 1]])) == Subspace.span(
        GF2, 3, [[1, 1, 1]]
    )


def test_kernel_matches_enumeration():
    rng = random.Random(2)
    for _ in range(40):
        p = rng.choice((2, 3))
        field = FieldSpec(p)
        n = rng.randint(1, 5)
        m = Mat.from_rows(field, n, [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, 4))])
        got = set(kernel(m).vectors())
        want = {
            v
            for v in oracles.all_vectors(p, n)
            if all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in m.entries)
        }
        assert got == want


def test_orthogonal_examples():
    s = Subspace.span(GF2, 3, [[1, 1, 1]])
    assert orthogonal(s) == Subspace.span(GF2, 3, [[1, 1, 0], [0, 1, 1]])
    assert orthogonal(Subspace.zero(GF2, 4)).is_full()
    assert orthogonal(Subspace.full(GF2, 4)).is_zero()


def test_orthogonal_involution_and_dims():
    rng = random.Random(3)
    for _ in range(60):
        p = rng.choice((2, 3, 5))
        field = FieldSpec(p)
        n = rng.randint(0, 8)
        s = Subspace.span(field, n, [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, n))])
        perp = orthogonal(s)
        assert s.dim + perp.dim == n
        assert orthogonal(perp) == s


def test_orthogonal_matches_enumeration():
    rng = random.Random(4)
    for _ in range(25):
        p = rng.choice((2, 3))
        field = FieldSpec(p)
        n = rng.randint(1, 5)
        s = Subspace.span(field, n, [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, n))])
        want = oracles.orthogonal_set(p, n, oracles.subspace_set(s))
        assert set(orthogonal(s).vectors()) == want


def test_lattice_examples():
    a = Subspace.span(GF2, 2, [[1, 0]])
    assert lattice(a, a) == (a, a)
    b = Subspace.span(GF2, 2, [[0, 1]])
    total, inter = lattice(a, b)
    assert total.is_full() and inter.is_zero()
    total, inter = lattice(
        Subspace.span(GF2, 3, [[1, 0, 1]]), Subspace.span(GF2, 3, [[0, 1, 1]])
    )
    assert total.dim == 2 and inter.dim == 0


def test_lattice_dimension_formula_and_enumeration():
    rng = random.Random(5)
    for _ in range(60):
        p = rng.choice((2, 3))
        field = FieldSpec(p)
        n = rng.randint(0, 6)
        a = Subspace.span(field, n, [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, n))])
        b = Subspace.span(field, n, [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, n))])
        total, inter = lattice(a, b)
        assert a.dim + b.dim == total.dim + inter.dim
        if n <= 4:
            sa, sb = oracles.subspace_set(a), oracles.subspace_set(b)
            assert set(inter.vectors()) == sa & sb
            stacked = list(a.basis.entries) + list(b.basis.entries)
            if stacked:
                assert oracles.subspace_set(total) == oracles.span_set(p, stacked)
            else:
                assert total.is_zero()


def test_lattice_rejects_ambient_mismatch():
    with pytest.raises(ValueError):
        lattice(Subspace.zero(GF2, 2), Subspace.zero(GF2, 3))


def test_complement_examples():
    assert complement(Subspace.zero(GF2, 2), Subspace.full(GF2, 2)).is_full()
    # the first standard unit vector is independent of (1,1) and is taken
    assert complement(
        Subspace.span(GF2, 2, [[1, 1]]), Subspace.full(GF2, 2)
    ) == Subspace.span(GF2, 2, [[1, 0]])
    full = Subspace.full(GF2, 3)
    assert complement(full, full).is_zero()


def test_complement_properties():
    rng = random.Random(6)
    for _ in range(60):
        p = rng.choice((2, 3, 5))
        field = FieldSpec(p)
        n = rng.randint(0, 6)
        w = Subspace.span(field, n, [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, n))])
        picks = [row for row in w.basis.entries if rng.random() < 0.6]
        s = Subspace.span(field, n, picks)
        c = complement(s, w)
        total, inter = lattice(c, s)
        assert inter.is_zero()
        assert total == w


def test_complement_requires_containment():
    with pytest.raises(ValueError):
        complement(Subspace.span(GF2, 2, [[1, 0]]), Subspace.span(GF2, 2, [[0, 1]]))


def test_projection_and_cross_section():
    s = Subspace.span(GF2, 3, [[1, 0, 1], [0, 1, 1]])
    assert project(s, [0, 1]).is_full()
    cs = cross_section(s, [0, 1])
    # members of s vanishing on the last coordinate: only 110 qualifies
    assert cs == Subspace.span(GF2, 2, [[1, 1]])


def test_invert_and_solve():
    m = Mat.from_rows(GF3, 2, [[1, 1], [0, 2]])
    inv = invert(m)
    assert m.times(inv) == Mat.identity(GF3, 2)
    with pytest.raises(ValueError):
        invert(Mat.from_rows(GF2, 2, [[1, 1], [1, 1]]))
    x = solve_particular(Mat.from_rows(GF2, 2, [[1, 1], [0, 1]]), [1, 1])
    assert x == (0, 1)
    assert solve_particular(Mat.from_rows(GF2, 2, [[1, 1], [1, 1]]), [1, 0]) is None


def test_subspace_coords_read_off():
    s = Subspace.span(GF3, 3, [[1, 0, 2], [0, 1, 1]])
    v = [2, 1, 2]  # 2*(1,0,2) + 1*(0,1,1)
    assert s.contains(v)
    assert s.coords(v) == (2, 1)
    assert not s.contains([1, 1, 1])
