from cobinv.algebra_core import GradedPoly
from cobinv.chow import KClass, make_projective_space
from cobinv.mring import (
    bundle_class, delta, gradings, m_alph, p_class, partial, partial_direct, v_power, va,
)


def mono(cfg, coeff=1, **exps):
    return GradedPoly.monomial(m_alph(cfg), exps, coeff)


def test_p1_class(cfg):
    assert p_class(1, cfg) == mono(cfg, -2, b1=1, v=1) + mono(cfg, 1, a1=1, v=1)


def test_delta_of_p1(cfg):
    assert delta(p_class(1, cfg), cfg) == mono(cfg, 2, v=1)


def test_partial_of_v_powers(cfg):
    for n in range(0, 4):
        assert partial(v_power(n + 1, cfg), cfg) == p_class(n, cfg)


def test_partial_two_paths(cfg):
    S = make_projective_space(1)
    h = S.chow.gen("h")
    for E in (KClass.line(S.chow, h) + KClass.trivial(S.chow, 1), KClass.line(S.chow, h * 2, 2)):
        x = bundle_class(S, E, cfg)
        assert partial(x, cfg) == partial_direct(S, E, cfg)


def test_gradings(cfg):
    S = make_projective_space(1)
    x = bundle_class(S, KClass.line(S.chow, S.chow.gen("h"), 2), cfg)
    assert gradings(x) == (3, 1)


def test_va_zero_is_v(cfg):
    assert va(0, cfg) == v_power(1, cfg)


def test_bundle_class_point(cfg):
    from cobinv.chow import point
    P = point()
    assert bundle_class(P, KClass.trivial(P.chow, 3), cfg) == v_power(3, cfg)


def test_dual_sum_in_delta_image(cfg):
    from cobinv.mring import in_delta_image, homogeneous_parts_m
    for n in (1, 2):
        S = make_projective_space(n)
        L = KClass.line(S.chow, S.chow.gen("h"))
        x = bundle_class(S, L, cfg) + bundle_class(S, L.dual(), cfg)
        for deg, part in homogeneous_parts_m(x).items():
            assert in_delta_image(part, deg, cfg)[0]
    # a single line is not enough
    S = make_projective_space(1)
    assert not in_delta_image(bundle_class(S, KClass.line(S.chow, S.chow.gen("h")), cfg), 2, cfg)[0]


def test_fdim_bounded_by_base(cfg):
    from cobinv.equivariant import pab, hij, p1xp1_swap
    for f in (pab(2, 1), hij(1, 2), p1xp1_swap()):
        for comp in f.components:
            x = bundle_class(comp.variety, comp.normal, cfg)
            assert gradings(x)[1] <= comp.dim
