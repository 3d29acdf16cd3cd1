import json
import random

import pytest

from modelspace.homology import homology, smith_normal_form
from modelspace.matchings import (
    InvalidSystem,
    MatchingError,
    MatchingSystem,
    catalog,
    enumerate_single,
    enumerate_two_simplex,
    standard_matching,
)
from modelspace.quotient import (
    Face,
    FrontFaceError,
    QuotientComplex,
    boundary_block,
    build_quotient,
    components,
    cycle_class_check,
    front_face_boundary,
    spanning_tree_edges,
    vertex_equivalence,
)

from oracles import mod_p_betti, tracked_closure, universal_coefficient_betti


def classes_of(qc):
    return sorted(sorted(tuple(f) for f in fc.members) for cells in qc.cells for fc in cells)


def small_universe():
    out = [m.as_system() for n in (1, 3, 5) for m in enumerate_single(n)]
    out += list(enumerate_two_simplex(3, "same")) + list(enumerate_two_simplex(3, "opp"))
    out += [catalog(f"s1xs-{'odd' if n % 2 else 'even'}-{n}") for n in (3, 4)]
    return out


def test_exotic_three_cells():
    qc = build_quotient("M:n=3;pi=0:3,2:1")
    assert [str(c.representative) for c in qc.cells[2]] == ["0:[0,1,2]", "0:[0,1,3]"]
    assert [str(c.representative) for c in qc.cells[1]] == ["0:[0,1]", "0:[0,3]"]
    assert qc.cell_counts() == (1, 2, 2, 1)
    rows = [Face(0, (0, 1)), Face(0, (0, 3))]
    cols = [Face(0, (0, 1, 2)), Face(0, (0, 1, 3))]
    block = boundary_block(qc, 2, rows, cols)
    assert block == [[1, 2], [0, -1]]
    assert smith_normal_form(block).diagonal == [1, 1]


def test_standard_matching_is_sphere_like():
    for n in (1, 3, 5, 7):
        qc = build_quotient(standard_matching(n))
        assert qc.num_components == 1
        assert len(qc.cells[n]) == 1


def test_invalid_system_is_rejected():
    with pytest.raises(InvalidSystem):
        build_quotient(MatchingSystem(3, (1,), [((0, 0), (0, 2)), ((0, 1), (0, 3))]))


@pytest.mark.parametrize("system", small_universe(), ids=lambda s: s.descriptor())
def test_union_find_matches_tracked_closure(system):
    qc = build_quotient(system)
    classes, conflicts = tracked_closure(system)
    # identifications carry vertices in order, so no face is glued to itself non-trivially
    assert conflicts == []
    assert sorted(classes) == classes_of(qc)


@pytest.mark.parametrize("system", small_universe(), ids=lambda s: s.descriptor())
def test_boundary_squares_to_zero_and_is_representative_free(system):
    qc = build_quotient(system)
    for d in range(2, qc.n + 1):
        assert (qc.boundary[d - 1] @ qc.boundary[d]).is_zero()
    rng = random.Random(system.descriptor())
    for d in range(1, qc.n + 1):
        cols = qc.boundary[d].columns()
        for idx, fc in enumerate(qc.cells[d]):
            for member in rng.sample(fc.members, min(3, len(fc.members))):
                assert qc.chain_boundary(member) == cols[idx]


@pytest.mark.parametrize("system", small_universe(), ids=lambda s: s.descriptor())
def test_torsion_agrees_with_mod_p_ranks(system):
    qc = build_quotient(system)
    h = homology(qc)
    sizes = [len(c) for c in qc.cells]
    dense = [b.to_dense() for b in qc.boundary]
    for p in (2, 3, 5):
        assert mod_p_betti(sizes, dense, p) == universal_coefficient_betti(h, p)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_vertex_equivalence_equals_zero_cells(n):
    for m in enumerate_single(n):
        qc = build_quotient(m)
        zero = sorted(sorted(f.vertices[0] for f in fc.members) for fc in qc.cells[0])
        assert vertex_equivalence(m) == zero


def test_spanning_tree_edges():
    assert vertex_equivalence("M:n=3;pi=0:3,2:1") == [[0, 1, 2, 3]]
    assert spanning_tree_edges("M:n=3;pi=0:3,2:1") == []
    assert vertex_equivalence(standard_matching(5)) == [[0, 1], [2, 3], [4, 5]]
    assert spanning_tree_edges(standard_matching(5)) == [(1, 2), (3, 4)]
    with pytest.raises(MatchingError):
        spanning_tree_edges(standard_matching(1))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_spanning_tree_connects_vertex_classes(n):
    for m in enumerate_single(n):
        classes = vertex_equivalence(m)
        edges = spanning_tree_edges(m)
        assert len(edges) == len(classes) - 1
        where = {v: i for i, c in enumerate(classes) for v in c}
        parent = list(range(len(classes)))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for a, b in edges:
            ra, rb = find(where[a]), find(where[b])
            assert ra != rb
            parent[ra] = rb


def test_front_face_exotic_five():
    m = catalog("dim5-exotic").as_matching()
    r1 = front_face_boundary(m, 1)
    assert (r1.sign, r1.I, r1.complement) == (1, (), (0, 1, 2))
    r3 = front_face_boundary(m, 3)
    assert (r3.sign, r3.I, r3.image_I, r3.complement) == (1, (0, 4), (3, 1), (2,))
    with pytest.raises(MatchingError):
        front_face_boundary(m, 2)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_front_face_holds_for_every_matching(n):
    for m in enumerate_single(n):
        qc = build_quotient(m)
        for k in range(1, n - 1, 2):
            front_face_boundary(m, k, qc)


def test_front_face_error_type():
    assert issubclass(FrontFaceError, AssertionError)


def test_components_and_cycle_check():
    systems = list(enumerate_two_simplex(3, "same"))
    counts = [build_quotient(s).num_components for s in systems]
    assert set(counts) == {1, 2}
    split = systems[counts.index(2)]
    qc = build_quotient(split)
    comps = components(qc)
    assert len(comps) == 2
    assert all(c.num_components == 1 for c in comps)
    assert sum(c.cell_counts()[3] for c in comps) == 2
    for s in systems:
        assert cycle_class_check(build_quotient(s), s)


def test_cycle_check_detects_non_cycle():
    s = catalog("s1xs-odd-3")
    flipped = MatchingSystem(3, (1, 1), s.pairs)
    qc = build_quotient(s)
    assert cycle_class_check(qc, s)
    assert not cycle_class_check(qc, flipped)


def test_json_round_trip():
    qc = build_quotient(catalog("s1xs-even-4"))
    data = json.loads(json.dumps(qc.to_json()))
    back = QuotientComplex.from_json(data)
    assert back == qc
    assert back.face_index == qc.face_index
