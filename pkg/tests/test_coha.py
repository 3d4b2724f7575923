from fractions import Fraction
from random import Random

import pytest

from cohalab import (
    CohaError,
    betti_numbers,
    cup_product,
    elementary,
    enumerate_partitions,
    framing_idempotent,
    kernel_graded_piece,
    make_partition,
    monomial_symmetric,
    shuffle_product,
    slice_basis,
    tautological_monomial,
    top_degree,
    unit,
    variable,
    verify_basis,
)
from cohalab.coha import coordinates
from cohalab.linalg import rref
from cohalab.quiver import euler_form
from conftest import framed_a2, framed_loops, vertex_only


def random_sympoly(fq, d, degree, rng):
    """Random rational combination of the monomial-symmetric basis."""
    total = unit(fq, d).scale(0)
    for n in range(degree + 1):
        for sig in slice_basis(d, n):
            if rng.random() < 0.4:
                c = Fraction(rng.randint(-3, 3))
                if c:
                    total = total + monomial_symmetric(fq, d, sig).scale(c)
    return total


# -- shuffle product ---------------------------------------------------------------


def test_ones_annihilate_vertex_only():
    fq = vertex_only(1)
    assert shuffle_product(unit(fq, (1,)), unit(fq, (1,))).is_zero()


def test_x_times_one_and_back():
    fq = vertex_only(1)
    x = variable(fq, (1,), 0, 1)
    one = unit(fq, (1,))
    left = shuffle_product(x, one)
    right = shuffle_product(one, x)
    assert left.poly.const_value() == -1
    assert right.poly.const_value() == 1


def test_one_loop_ones():
    fq = framed_loops(1, 1)
    one = unit(fq, (1,))
    assert shuffle_product(one, one).poly.const_value() == 2


def test_exterior_vanishing():
    fq = vertex_only(2)
    one = unit(fq, (1,))
    power = one
    for _ in range(2):
        power = shuffle_product(power, one)
    assert power.is_zero()


def test_degree_law_homogeneous():
    rng = Random(1)
    for fq in (vertex_only(1), framed_loops(2, 1), framed_a2(1)):
        dims = [(1,)] if fq.vertex_count == 1 else [(1, 0), (0, 1), (1, 1)]
        for d in dims:
            for e in dims:
                for n1 in range(3):
                    for sig1 in slice_basis(d, n1)[:2]:
                        f = monomial_symmetric(fq, d, sig1)
                        for n2 in range(3):
                            for sig2 in slice_basis(e, n2)[:2]:
                                g = monomial_symmetric(fq, e, sig2)
                                out = shuffle_product(f, g)
                                if not out.is_zero():
                                    assert out.degree() == n1 + n2 - euler_form(
                                        fq.base, d, e
                                    )


@pytest.mark.parametrize(
    "fixture", ["vertex_only", "one_loop", "two_loop", "a2"]
)
def test_associativity_sample(fixture):
    makers = {
        "vertex_only": vertex_only(2),
        "one_loop": framed_loops(1, 1),
        "two_loop": framed_loops(2, 1),
        "a2": framed_a2(2),
    }
    fq = makers[fixture]
    rng = Random(42)
    if fq.vertex_count == 1:
        dims = [(1,), (2,)]
    else:
        dims = [(1, 0), (0, 1), (1, 1)]
    for _ in range(8):
        da, db, dc = (dims[rng.randrange(len(dims))] for _ in range(3))
        f = random_sympoly(fq, da, 2, rng)
        g = random_sympoly(fq, db, 2, rng)
        h = random_sympoly(fq, dc, 2, rng)
        lhs = shuffle_product(shuffle_product(f, g), h)
        rhs = shuffle_product(f, shuffle_product(g, h))
        assert lhs.poly == rhs.poly


def test_quiver_mismatch():
    f = unit(vertex_only(1), (1,))
    g = unit(framed_loops(1, 1), (1,))
    with pytest.raises(CohaError):
        shuffle_product(f, g)


# -- cup product and idempotents -----------------------------------------------------


def test_cup_examples(two_loop):
    e1 = elementary(two_loop, (2,), 0, 1)
    e2 = elementary(two_loop, (2,), 0, 2)
    square = cup_product(e1, e1)
    x1 = variable(two_loop, (2,), 0, 1).poly
    x2 = variable(two_loop, (2,), 0, 2).poly
    assert square.poly == (x1 + x2) * (x1 + x2)
    assert cup_product(e1, unit(two_loop, (2,))).poly == e1.poly
    assert cup_product(e1, e2).poly == (x1 + x2) * (x1 * x2)


def test_framing_idempotent(two_loop):
    fq1 = vertex_only(1)
    assert framing_idempotent(fq1, (1,)).poly == variable(fq1, (1,), 0, 1).poly
    e = framing_idempotent(two_loop, (2,))
    x1 = variable(two_loop, (2,), 0, 1).poly
    x2 = variable(two_loop, (2,), 0, 2).poly
    assert e.poly == x1 * x2
    fq0 = vertex_only(0)
    assert framing_idempotent(fq0, (2,)).poly.is_const()


# -- kernel slices and the basis theorem ----------------------------------------------


def test_kernel_point_case():
    fq = vertex_only(1)
    k = kernel_graded_piece(fq, (1,), 1)
    assert k.dim == 1 and len(k.basis) == 1
    assert verify_basis(fq, (1,), 0).quotient_dim == 1
    for n in (1, 2, 3):
        assert verify_basis(fq, (1,), n).quotient_dim == 0


def test_kernel_p1_matches_betti():
    fq = vertex_only(2)
    ranks = dict(betti_numbers(fq, (1,)))
    for n in range(4):
        r = verify_basis(fq, (1,), n)
        assert r.quotient_dim == ranks.get(2 * n, 0)


def test_kernel_d0(two_loop):
    k = kernel_graded_piece(two_loop, (0,), 0)
    assert k.dim == 0


def test_tautological_monomials_two_loop(two_loop):
    lam2 = make_partition(two_loop, (3,), [(2,)])
    t = tautological_monomial(two_loop, lam2)
    e1 = elementary(two_loop, (3,), 0, 1)
    assert t.poly == cup_product(e1, e1).poly
    assert t.degree() == 2
    lam11 = make_partition(two_loop, (3,), [(1, 1)])
    assert tautological_monomial(two_loop, lam11).poly == elementary(
        two_loop, (3,), 0, 2
    ).poly
    empty = make_partition(two_loop, (3,), [()])
    assert tautological_monomial(two_loop, empty).poly.is_const()


def test_tautological_degree_is_size(two_loop, a2):
    for fq, d in [(two_loop, (3,)), (a2, (2, 1))]:
        for lam in enumerate_partitions(fq, d):
            t = tautological_monomial(fq, lam)
            assert t.degree() == lam.size


def test_tautological_rejects_nonlabel(two_loop):
    lam = make_partition(two_loop, (3,), [(3,)])
    with pytest.raises(CohaError):
        tautological_monomial(two_loop, lam)


def test_verify_basis_grassmannian():
    fq = vertex_only(4)
    quotients = [verify_basis(fq, (2,), n) for n in range(5)]
    assert [r.quotient_dim for r in quotients] == [1, 1, 2, 1, 1]
    assert all(r.independent for r in quotients)


def test_verify_basis_two_loop_degree_two(two_loop):
    r = verify_basis(two_loop, (3,), 2)
    assert r.quotient_dim == 2 and r.partition_count == 2 and r.independent


def test_verify_basis_empty_moduli():
    fq = vertex_only(1)
    for n in range(4):
        r = verify_basis(fq, (2,), n)
        assert r.quotient_dim == 0 and r.independent


@pytest.mark.parametrize("fq", [vertex_only(2), framed_loops(2, 1)])
def test_kernel_is_left_submodule_slice(fq):
    # f * k stays in the kernel for homogeneous f and kernel generators k
    d = (1,)
    rng = Random(9)
    for kernel_degree in (1, 2):
        k1 = kernel_graded_piece(fq, d, kernel_degree)
        for row in k1.rows:
            gen = unit(fq, d).scale(0)
            for c, s in zip(row, k1.basis):
                if c:
                    gen = gen + monomial_symmetric(fq, d, s).scale(c)
            for p in (0, 1, 2):
                for sig in slice_basis((1,), p)[:2]:
                    f = monomial_symmetric(fq, (1,), sig).scale(
                        Fraction(rng.randint(1, 5))
                    )
                    prod = shuffle_product(f, gen)
                    if prod.is_zero():
                        continue
                    piece = kernel_graded_piece(fq, prod.d, prod.degree())
                    assert piece.contains(coordinates(prod, list(piece.basis)))


def test_top_degree(two_loop):
    assert top_degree(two_loop, (3,)) == 3
    assert top_degree(vertex_only(1), (2,)) == -1


def test_slice_basis_counts():
    # degree-n slice of 2 symmetric variables = partitions of n with <= 2 parts
    assert len(slice_basis((2,), 0)) == 1
    assert len(slice_basis((2,), 1)) == 1
    assert len(slice_basis((2,), 2)) == 2
    assert len(slice_basis((2,), 3)) == 2
    assert len(slice_basis((2,), 4)) == 3
    # two blocks of one variable each: compositions of n in two parts
    assert len(slice_basis((1, 1), 3)) == 4


def test_coordinates_roundtrip(two_loop):
    d = (2,)
    basis = slice_basis(d, 3)
    rows = []
    for sig in basis:
        rows.append(coordinates(monomial_symmetric(two_loop, d, sig), basis))
    assert rref(rows) == rref([tuple(Fraction(int(i == j)) for j in range(len(basis))) for i in range(len(basis))])
