import pytest
from hypothesis import given, strategies as st

from strategies import complexes, trees
from zacyclic.complex import (
    ComplexError, SimplicialComplex, cone, connected_sum, free_faces, greedy_collapse, is_tree,
    link, make_complex, relabel, remove_star, star, verify_simplicial_action, wedge,
)
from zacyclic.constructions import complete_graph, dunce_hat
from zacyclic.homology import is_z_acyclic

T = [["A", "B", "C"]]


def test_make_complex_examples():
    assert make_complex(T).f_vector == (3, 3, 1)
    assert make_complex([["A", "B"], ["B", "C"], ["A", "B", "C"]]).facets == (("A", "B", "C"),)
    K = make_complex([["A"], ["B"]])
    assert K.f_vector == (2,)
    assert K.euler_characteristic == 2


def test_malformed_input():
    with pytest.raises(ComplexError):
        make_complex([["A", "A"]])
    with pytest.raises(ComplexError):
        make_complex([["A B"]])
    with pytest.raises(ComplexError):
        make_complex([[]])


def test_star_link_triangle():
    K = make_complex(T)
    assert link(K, "A") == make_complex([["B", "C"]])
    assert remove_star(K, "A") == make_complex([["B", "C"]])
    assert star(K, "A") == K
    with pytest.raises(ComplexError):
        link(K, "Z")


def test_isolated_vertex():
    K = make_complex([["A"], ["B", "C"]])
    assert star(K, "A") == make_complex([["A"]])
    assert link(K, "A").f_vector == ()


def test_cone_examples():
    assert cone(complete_graph(5), "apex").f_vector == (6, 15, 10)
    assert cone(make_complex([["x"]]), "a") == make_complex([["a", "x"]])
    assert cone(SimplicialComplex(), "a") == make_complex([["a"]])
    with pytest.raises(ComplexError):
        cone(make_complex(T), "A")


def test_wedge_examples():
    W = wedge(make_complex(T), make_complex(T), "A", "A")
    assert W.f_vector == (5, 6, 2)
    K = make_complex(T)
    assert wedge(K, make_complex([["p"]]), "B", "p").f_vector == K.f_vector


def test_connected_sum_examples():
    S = connected_sum(make_complex(T), ("A", "B", "C"), make_complex(T), ("A", "B", "C"))
    assert S.f_vector == (3, 3, 1)
    with pytest.raises(ComplexError):
        connected_sum(make_complex(T), ("A", "B"), make_complex(T), ("A", "B", "C"))


def test_is_tree_examples():
    assert is_tree(make_complex([["a", "b"], ["b", "c"]]))
    assert not is_tree(make_complex([["a", "b"], ["b", "c"], ["a", "c"]]))
    assert not is_tree(make_complex([["a", "b"], ["c", "d"]]))
    with pytest.raises(ComplexError):
        is_tree(make_complex(T))


def test_collapse_examples():
    _, point, log = greedy_collapse(make_complex(T))
    assert point and len(log) == 3
    D = dunce_hat()
    assert free_faces(D.face_set) == []
    for strategy in ("lexicographic", "apex-first", "randomized"):
        R, point, log = greedy_collapse(D, strategy, apex="o")
        assert R == D and not point and log == []
    C = cone(complete_graph(5), "apex")
    assert greedy_collapse(C, "apex-first", apex="apex")[1]


def test_simplicial_action_examples():
    K = make_complex(T)
    ident = {v: v for v in "ABC"}
    rot = {"A": "B", "B": "C", "C": "A"}
    rot2 = {"A": "C", "B": "A", "C": "B"}
    assert verify_simplicial_action(K, [ident])
    assert verify_simplicial_action(K, [ident, rot, rot2])
    P = make_complex(T + [["C", "D"]])
    swap = {"A": "D", "D": "A", "B": "B", "C": "C"}
    assert not verify_simplicial_action(P, [{v: v for v in "ABCD"}, swap])
    with pytest.raises(ComplexError):
        verify_simplicial_action(K, [{"A": "A", "B": "A", "C": "C"}])


@given(complexes())
def test_canonical_form_idempotent(K):
    assert make_complex(K.facets) == K
    assert make_complex(list(K.face_set)) == K


@given(complexes(), st.data())
def test_star_link_decomposition(K, data):
    v = data.draw(st.sampled_from(K.vertices))
    St, Lk, R = star(K, v), link(K, v), remove_star(K, v)
    assert St.face_set | R.face_set == K.face_set
    assert St.face_set & R.face_set == Lk.face_set
    assert St == cone(Lk, v)


def cones_over_graphs():
    """Z-acyclic 2-complexes: cones over random connected graphs."""
    return complexes(max_vertices=6, max_dim=1, connected=True).map(lambda G: cone(G, "z"))


@given(cones_over_graphs(), cones_over_graphs(), st.data())
def test_wedge_preserves_acyclicity(K1, K2, data):
    v1 = data.draw(st.sampled_from(K1.vertices))
    v2 = data.draw(st.sampled_from(K2.vertices))
    W = wedge(K1, K2, v1, v2)
    assert W.euler_characteristic == K1.euler_characteristic + K2.euler_characteristic - 1
    assert is_z_acyclic(W)


@given(cones_over_graphs(), cones_over_graphs(), st.data())
def test_connected_sum_preserves_acyclicity(K1, K2, data):
    t1 = data.draw(st.sampled_from(K1.faces(2)))
    t2 = data.draw(st.sampled_from(K2.faces(2)))
    m = data.draw(st.permutations([0, 1, 2]))
    S = connected_sum(K1, t1, K2, t2, tuple(m))
    assert S.euler_characteristic == K1.euler_characteristic + K2.euler_characteristic - 1
    assert is_z_acyclic(S)


@given(trees())
def test_acyclic_graphs_are_trees_and_collapse(K):
    assert is_z_acyclic(K)
    assert is_tree(K)
    assert greedy_collapse(K)[1]


@given(complexes(max_dim=1))
def test_acyclic_iff_tree_in_dim_one(K):
    assert is_z_acyclic(K) == is_tree(K)


@given(complexes(), st.integers(0, 5))
def test_collapse_preserves_euler_characteristic(K, seed):
    R, point, log = greedy_collapse(K, "randomized", seed=seed)
    assert R.euler_characteristic == K.euler_characteristic
    assert point == (R.f_vector == (1,))


@given(complexes(), st.permutations(range(8)))
def test_relabel_action_preserves_f_vector(K, p):
    labels = [f"v{i}" for i in range(8)]
    mapping = {v: labels[p[int(v[1:])]] for v in K.vertices}
    assert relabel(K, mapping).f_vector == K.f_vector
