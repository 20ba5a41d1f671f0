from treecohom import builtin_diagram, lie_algebra
from treecohom.exterior import (ChainVector, boundary, coboundary, delta_cap, from_operators, indices, is_harmonic,
                                laplacian, mask_of, sort_sign, wedge_sign)
from treecohom.liealg import parse_operator as op


def path2():
    return lie_algebra(builtin_diagram("path", 2))


def chain(L, *ops, coef=1):
    return from_operators(L, [op(s) for s in ops], coef)


def test_masks():
    assert indices(0b10110) == (1, 2, 4)
    assert mask_of([4, 1, 2]) == 0b10110
    assert sort_sign([2, 0, 1]) == (1, 0b111)
    assert sort_sign([1, 0]) == (-1, 0b11)
    assert sort_sign([1, 1])[0] == 0
    assert wedge_sign(0b10, 0b01) == -1
    assert wedge_sign(0b01, 0b10) == 1
    assert wedge_sign(0b11, 0b10) == 0


def test_wedge_anticommutes():
    a, b = ChainVector.monomial([0]), ChainVector.monomial([2])
    assert a.wedge(b) == -(b.wedge(a))
    assert not a.wedge(a)


def test_delta_cap():
    L = path2()
    assert delta_cap(L, L.index[op("d2")]) == chain(L, "d1", "x1*d2")
    assert not delta_cap(L, L.index[op("d1")])
    M = lie_algebra(builtin_diagram("multi_edge", 2))
    assert delta_cap(M, M.index[op("x1*d2")]) == chain(M, "d1", "x1^2*d2", coef=2)


def test_coboundary_path2():
    L = path2()
    assert coboundary(L, chain(L, "d2")) == -chain(L, "d1", "x1*d2")
    assert not coboundary(L, chain(L, "d1"))


def test_boundary_path2():
    L = path2()
    assert boundary(L, chain(L, "d1", "x1*d2")) == -chain(L, "d2")
    assert not boundary(L, chain(L, "d1", "d2"))
    for u in L.basis:
        assert not boundary(L, chain(L, str(u)))


def test_top_form_is_harmonic():
    L = path2()
    top = ChainVector({(1 << L.dim) - 1: 1})
    assert is_harmonic(L, top)
    assert is_harmonic(L, ChainVector.one())


def test_square_zero_on_monomials():
    L = lie_algebra(builtin_diagram("a", 1, 2))
    for m in range(1 << L.dim):
        v = ChainVector({m: 1})
        assert not coboundary(L, coboundary(L, v))
        assert not boundary(L, boundary(L, v))


def test_adjoint_on_monomials():
    # <D a, b> = <a, delta b> with the plain monomial inner product
    L = lie_algebra(builtin_diagram("multi_edge", 2))
    for a in range(1 << L.dim):
        Da = coboundary(L, ChainVector({a: 1}))
        for b, c in Da.terms.items():
            assert boundary(L, ChainVector({b: 1})).terms.get(a, 0) == c


def test_laplacian_of_harmonic_is_zero():
    L = path2()
    v = chain(L, "d1", "d2")
    assert is_harmonic(L, v)
    assert not laplacian(L, v)


def test_primitive():
    v = ChainVector({0b11: -4, 0b101: 6})
    assert v.primitive() == ChainVector({0b11: 2, 0b101: -3})
    assert v.leading() == 0b11
