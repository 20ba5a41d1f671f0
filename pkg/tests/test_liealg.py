import json

import pytest

import oracle
import structural
from treecohom import builtin_diagram, lie_algebra
from treecohom.diagram import FIGURE1
from treecohom.liealg import (ClosureError, MonomialOperator, bracket, center, is_nilpotent, natural_basis,
                              parse_operator, structure_table, weight_of)

op = parse_operator


def names(T):
    return [str(u) for u in natural_basis(T)]


def test_path2_basis():
    assert set(names(builtin_diagram("path", 2))) == {"d1", "d2", "x1*d2"}


def test_multi_edge_basis():
    for d in range(1, 5):
        got = set(names(builtin_diagram("multi_edge", d)))
        want = {"d1", "d2", "x1*d2"} | {f"x1^{k}*d2" for k in range(2, d + 1)}
        assert got == want


def test_figure1_dimension():
    basis = natural_basis(FIGURE1)
    assert len(basis) == 37
    per_node = {j: sum(1 for u in basis if u.target == j) for j in FIGURE1.nodes}
    assert per_node == {1: 1, 2: 1, 3: 3, 4: 10, 5: 11, 6: 11}


@pytest.mark.parametrize("name", ["path:4", "multi:3", "instar:3", "outstar:3", "a:2,2", "figure1[1..4]"])
def test_dimension_matches_oracle(diagrams, name):
    T = diagrams[name]
    basis = natural_basis(T)
    assert oracle.count_basis(T) == {j: sum(1 for u in basis if u.target == j) for j in T.nodes}


def test_figure1_matches_oracle():
    assert oracle.count_basis(FIGURE1) == {1: 1, 2: 1, 3: 3, 4: 10, 5: 11, 6: 11}


def test_basis_order_is_deterministic():
    T = builtin_diagram("a", 2, 1)
    assert names(T) == names(builtin_diagram("a", 2, 1))
    targets = [u.target for u in natural_basis(T)]
    assert targets == sorted(targets)


def test_brackets():
    assert bracket(op("d1"), op("x1*d2")) == [(1, op("d2"))]
    assert bracket(op("d1"), op("x1^2*d2")) == [(2, op("x1*d2"))]
    assert bracket(op("x1*d2"), op("x1*d3")) == []
    assert bracket(op("x1*d2"), op("d1")) == [(-1, op("d2"))]


def test_operator_roundtrip():
    for s in ["d3", "x1*d2", "x1^2*x3*d4"]:
        assert str(op(s)) == s
    with pytest.raises(ValueError):
        op("x1*y2")
    with pytest.raises(ValueError):
        op("x1^2")


def test_weights():
    assert weight_of(op("d2"), 2) == (-1, 0, 1)
    assert weight_of(op("x1*d2"), 2) == (0, -1, 1)
    assert weight_of(op("x1^2*d2"), 2) == (1, -2, 1)
    assert weight_of(op("x1*d1"), 2) == (0, 0, 0)


def test_center():
    L = lie_algebra(builtin_diagram("path", 2))
    assert {str(L.basis[i]) for i in center(L)} == {"d2"}
    L = lie_algebra(FIGURE1)
    assert {str(L.basis[i]) for i in center(L)} == {"d5", "d6"}
    L = lie_algebra(builtin_diagram("path", 1))
    assert {str(L.basis[i]) for i in center(L)} == {"d1"}


def test_solvable_extension():
    L = lie_algebra(builtin_diagram("path", 2), "L1")
    assert L.dim == 5
    h1, h2, u = (L.index[op(s)] for s in ("x1*d1", "x2*d2", "x1*d2"))
    assert L.bracket_indices(h1, u) == (1, u)
    assert L.bracket_indices(h2, u) == (-1, u)
    assert not is_nilpotent(L)
    with pytest.raises(ValueError):
        lie_algebra(builtin_diagram("path", 2), "L2")


def test_models_are_cached():
    T = builtin_diagram("path", 3)
    assert lie_algebra(T) is lie_algebra(builtin_diagram("path", 3))


def test_structure_on_test_diagrams(diagrams):
    for name, T in diagrams.items():
        L = lie_algebra(T)
        assert is_nilpotent(L), name
        assert structural.brackets(L) == [], name
        assert structural.center_is_tips(L) == [], name


def test_structure_figure1():
    L = lie_algebra(FIGURE1)
    assert structural.brackets(L) == []
    assert structural.center_is_tips(L) == []


def test_homoclan_restriction(diagrams):
    # brackets of ambient basis elements that land in a homo-clan sub-basis come from the sub-basis
    for T in list(diagrams.values()) + [FIGURE1]:
        L = lie_algebra(T)
        for sub, emb in structural.homoclan_subdiagrams(T):
            nodes = set(emb.values())
            inside = {i for i, u in enumerate(L.basis) if u.target in nodes}
            for (i, j), (_, k) in L.table.items():
                if k in inside:
                    assert i in inside and j in inside


def test_closure_error():
    with pytest.raises(ClosureError):
        structure_table([op("d1"), op("x1^2*d2")])


def test_json():
    L = lie_algebra(builtin_diagram("path", 2))
    doc = json.loads(L.to_json())
    assert len(doc["basis"]) == 3
    assert doc["brackets"] == [[i, j, c, k] for (i, j), (c, k) in sorted(L.table.items())]


def test_make_rejects_negative():
    with pytest.raises(ValueError):
        MonomialOperator.make({1: -1}, 2)
