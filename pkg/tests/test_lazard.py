import pytest

from cobinv.algebra_core import partitions
from cobinv.chow import make_projective_space, milnor_hypersurface, product
from cobinv.config import Config, WindowOverflow
from cobinv.lazard import (
    LatticeError, c_alpha, class_of, generator, genus, in_lattice, is_decomposable_mod2, lattice_basis,
    lattice_coords, laz_alphabet, omega, sequential_ext_gcd,
)
from cobinv.algebra_core import GradedPoly


def test_omega_values():
    assert [omega(m) for m in range(1, 9)] == [2, 3, 2, 5, 1, 7, 2, 3]


def test_sequential_ext_gcd():
    g, c = sequential_ext_gcd([6, 10, 15])
    assert g == 1
    assert 6 * c[0] + 10 * c[1] + 15 * c[2] == 1
    g, c = sequential_ext_gcd([4, 8])
    assert (g, c) == (4, [1, 0])


def test_generators_top_chern(cfg):
    for d in range(1, 9):
        assert c_alpha(generator(d, cfg).poly, (d,)) == omega(d)


def test_y1_is_minus_p1(cfg):
    y1 = generator(1, cfg)
    assert y1.coeffs == [-1, 0]
    assert y1.poly == class_of(make_projective_space(1), cfg).scale(-1)


def test_lattice_ranks(cfg):
    for d in range(1, 7):
        assert lattice_basis(d, cfg).rank() == len(partitions(d))


def test_p2_coordinates(cfg):
    x = class_of(make_projective_space(2), cfg)
    assert lattice_coords(x, 2, cfg) == {(2,): -1}
    assert not is_decomposable_mod2(x, cfg)


def test_p1_squared_decomposable(cfg):
    x = class_of(product(make_projective_space(1), make_projective_space(1)), cfg)
    assert lattice_coords(x, 2, cfg) == {(1, 1): 1}
    assert is_decomposable_mod2(x, cfg)


def test_not_in_lattice(cfg):
    b1 = GradedPoly.var(laz_alphabet(cfg), "b1")
    assert not in_lattice(b1, 1, cfg)
    with pytest.raises(LatticeError) as err:
        lattice_coords(b1, 1, cfg)
    assert err.value.degree == 1


def test_genera(cfg):
    assert genus(class_of(make_projective_space(4), cfg), "euler") == 5
    assert genus(class_of(make_projective_space(4), cfg), "psi") == 10
    assert genus(class_of(milnor_hypersurface(1, 2), cfg), "euler") == 4


def test_euler_even_in_odd_dimension(cfg):
    for X in (make_projective_space(3), milnor_hypersurface(1, 2), milnor_hypersurface(2, 2)):
        assert genus(class_of(X, cfg), "euler") % 2 == 0


def test_window():
    with pytest.raises(WindowOverflow):
        class_of(make_projective_space(5), Config(D=4))


def test_gen_laz_criterion(cfg):
    from cobinv.equivariant import xn
    for n in range(1, 9):
        c = c_alpha(xn(n).ambient_class(cfg), (n,))
        if (n + 1) & n:
            assert c % 2 == 1, n
        else:
            assert c % 4 == 2, n


def test_indecomposable_examples(cfg):
    assert not is_decomposable_mod2(class_of(make_projective_space(1), cfg), cfg)
    assert not is_decomposable_mod2(class_of(make_projective_space(2), cfg), cfg)


def test_c_alpha_of_products(cfg):
    A = class_of(make_projective_space(2), cfg)
    B = class_of(milnor_hypersurface(1, 2), cfg)
    AB = class_of(product(make_projective_space(2), milnor_hypersurface(1, 2)), cfg)
    for alpha in partitions(4):
        total = 0
        for beta in partitions(2):
            rest = list(alpha)
            try:
                for p in beta:
                    rest.remove(p)
            except ValueError:
                continue
            if sum(rest) == 2:
                total += c_alpha(A, beta) * c_alpha(B, tuple(rest))
        assert c_alpha(AB, alpha) == total
