import json

import pytest

from treecohom import builtin_diagram, lie_algebra, verify
from treecohom.laurent import LaurentPoly, one_minus, product
from treecohom.liealg import parse_operator


def L_of(*args, flavor="L0"):
    return lie_algebra(builtin_diagram(*args), flavor)


def test_euler_lhs_examples():
    assert verify.euler_lhs(L_of("path", 1)) == one_minus([-1, 1])
    want = product([one_minus([-1, 1, 0]), one_minus([0, -1, 1]), one_minus([-1, 0, 1])], 3)
    assert verify.euler_lhs(L_of("path", 2)) == want


def test_euler_rhs_path2():
    rhs = verify.euler_rhs({(0, (0, 0, 0)): 1, (1, (-1, 1, 0)): 1, (1, (0, -1, 1)): 1}, 3)
    assert rhs.terms == {(0, 0, 0): 1, (-1, 1, 0): -1, (0, -1, 1): -1}
    assert verify.euler_rhs({}, 2) == LaurentPoly(2)


def test_euler_counts_terms():
    rep = verify.check_euler(L_of("path", 2))
    assert rep and rep.witness["terms"] == 6


def test_euler_detects_wrong_table():
    L = L_of("path", 2)
    bad = {(0, (0, 0, 0)): 1, (1, (-1, 1, 0)): 1}
    assert verify.euler_lhs(L).first_difference(verify.euler_rhs(bad, 3)) is not None


def test_euler_lhs_anm():
    # the product over a(n, m) runs over 0 <= i <= n, i < j <= n + m
    n, m = 1, 2
    dim = n + m + 1
    want = product((one_minus([int(k == j) - int(k == i) for k in range(dim)])
                    for i in range(n + 1) for j in range(i + 1, n + m + 1)), dim)
    assert verify.anm_lhs(n, m) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vandermonde(n):
    rep = verify.check_vandermonde(n, with_betti=True)
    assert rep, str(rep)


def test_vandermonde_sides_n1():
    lhs, rhs = verify.vandermonde_sides(1)
    assert lhs == rhs == LaurentPoly(2, {(1, 0): 1, (0, 1): -1})
    assert len(verify.vandermonde_sides(2)[0]) == 6


@pytest.mark.parametrize("nm", [(1, 1), (2, 1), (1, 0), (1, 2)])
def test_anm_identity(nm):
    assert verify.check_anm_identity(*nm)
    assert verify.anm_rhs_from_basic(*nm) == verify.anm_rhs_from_tableaux(*nm)


def test_total_rank_examples():
    rep = verify.check_total_rank(L_of("path", 2))
    assert rep and rep.witness["total"] == 6 and rep.witness["bound"] == 2
    rep = verify.check_total_rank(L_of("path", 1))
    assert rep and rep.witness["total"] == 2
    rep = verify.check_total_rank(L_of("a", 1, 2))
    assert rep and rep.witness["total"] == 20 and rep.witness["bound"] == 4


def test_tip_witnesses():
    names = [str(u) for u in verify.tip_witnesses(builtin_diagram("multi_edge", 3))]
    assert names == ["x1^3*d2"]
    assert [str(u) for u in verify.tip_witnesses(builtin_diagram("path", 1))] == ["d1"]


def test_b2_examples():
    rep = verify.check_b2(L_of("path", 2))
    assert rep and rep.witness["b1"] == 2 and rep.witness["b2"] == 2
    rep = verify.check_b2(L_of("a", 1, 2))
    assert rep and rep.witness["b1"] == 3 and rep.witness["b2"] == 6
    assert verify.check_b2(L_of("multi_edge", 3))
    with pytest.raises(ValueError):
        verify.check_b2(L_of("path", 1))


def test_b2_in_star_counterexample():
    # in-star(2) is the five-dimensional Heisenberg algebra: b1 = 4 but b2 = 5 < C(4, 2)
    rep = verify.check_b2(L_of("in_star", 2))
    assert not rep
    assert rep.witness["violated"] == ["b2 >= C(roots+edges, 2)"]
    assert (rep.witness["b1"], rep.witness["b2"], rep.witness["pair_bound"]) == (4, 5, 6)


def test_solvable():
    rep = verify.check_solvable(builtin_diagram("multi_edge", 3))
    assert rep and rep.witness["betti"] == [1, 2, 1]
    with pytest.raises(ValueError):
        verify.check_solvable(builtin_diagram("figure1"))


def test_ad_cartan_weights():
    L = L_of("path", 2, flavor="L1")
    E = verify.ad_cartan_weights(L)
    assert E.shape == (5, 2)
    assert E[L.index[parse_operator("x1*d2")]].tolist() == [1, -1]


def test_closedform():
    rep = verify.check_closedform(1, 1)
    assert rep and rep.witness["counts"] == [1, 2, 2, 1]


def test_report_format():
    rep = verify.CheckReport("euler", False, {"exponent": [1, 0]})
    assert str(rep).startswith("FAIL euler: ")
    assert json.loads(rep.to_json()) == {"check": "euler", "pass": False, "witness": {"exponent": [1, 0]}}
    assert not rep
