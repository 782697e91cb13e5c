import numpy as np
import pytest

from fpqec.complexes import (BinaryChain, InvalidSizeError, boundary,
                             build_lattice, coboundary, complex_from_json,
                             complex_to_json, pairing, validate_chain)


@pytest.fixture(scope="module")
def torus():
    return build_lattice("Cubic3", (2, 2, 2))


def random_chain(cplx, dim, rng, density=0.3):
    n = cplx.n_cells[dim]
    sup = frozenset(np.nonzero(rng.random(n) < density)[0].tolist())
    return BinaryChain(cplx, dim, sup)


def test_cubic3_counts(torus):
    assert torus.n_cells == [8, 24, 24, 8]
    assert torus.euler_characteristic() == 0


def test_hypercubic4_counts():
    cx = build_lattice("Hypercubic4", (2, 2, 2, 2))
    assert cx.n_cells == [16, 64, 96, 64, 16]
    assert cx.euler_characteristic() == 0


def test_invalid_sizes():
    with pytest.raises(InvalidSizeError):
        build_lattice("Cubic3", (1, 2, 2))
    with pytest.raises(InvalidSizeError):
        build_lattice("ModifiedCubic3", (3, 3, 2))
    from fpqec.complexes import InvalidFamilyError
    with pytest.raises(InvalidFamilyError):
        build_lattice("NoSuchFamily", (2, 2))


def test_single_face_boundary(torus):
    f = BinaryChain(torus, 2, {0})
    assert len(boundary(f)) == 4


def test_boundary_squared_zero(torus):
    rng = np.random.default_rng(7)
    for _ in range(50):
        ch = random_chain(torus, 2, rng)
        assert not boundary(boundary(ch))


def test_boundary_linear(torus):
    rng = np.random.default_rng(8)
    a = random_chain(torus, 2, rng)
    b = random_chain(torus, 2, rng)
    assert boundary(a ^ b).support == (boundary(a) ^ boundary(b)).support


def test_three_legs_at_vertex_not_cycle(torus):
    # three edges meeting at one vertex: boundary contains that vertex
    v = 0
    star = torus.coboundary_of(0, v)[:3]
    ch = BinaryChain(torus, 1, set(star))
    viol = boundary(ch)
    assert v in viol.support


def test_vertex_coboundary_is_six_edges(torus):
    v = BinaryChain(torus, 0, {3})
    assert len(coboundary(v)) == 6


def test_coboundary_squared_zero(torus):
    rng = np.random.default_rng(9)
    for _ in range(50):
        ch = random_chain(torus, 0, rng)
        assert not coboundary(coboundary(ch))


def test_adjointness(torus):
    rng = np.random.default_rng(10)
    for _ in range(100):
        a = random_chain(torus, 0, rng)
        b = random_chain(torus, 1, rng)
        assert pairing(coboundary(a), b) == pairing(a, boundary(b))


def test_validate_chain(torus):
    assert not validate_chain(BinaryChain(torus, 1, set()), "cycle")
    # a closed axis loop on the 2-torus direction
    loop = [i for i, (b, s) in enumerate(torus.cell_key[1])
            if s == (0,) and b[1] == 0 and b[2] == 0]
    assert len(loop) == 2
    assert not validate_chain(BinaryChain(torus, 1, loop), "cycle")
    single = BinaryChain(torus, 1, {loop[0]})
    assert len(validate_chain(single, "cycle")) == 2


def test_degenerate_boundary(torus):
    ch = boundary(BinaryChain(torus, 0, {1}))
    assert ch.dim == -1 and not ch and getattr(ch, "degenerate", False)


def test_modified_cubic3_structure():
    mc = build_lattice("ModifiedCubic3", (2, 2, 2))
    diags = mc.cells_with_tag(1, "kind", "diagonal")
    gons = mc.cells_with_tag(2, "kind", "2gon")
    tris = mc.cells_with_tag(2, "kind", "tri_upper")
    assert len(diags) == 16      # one per xt/yt face
    assert len(gons) == 16       # one per spatial edge
    assert len(tris) == 16
    # every 2-gon has exactly two boundary edges, every diagonal 2 faces
    for g in gons:
        assert len(mc.boundary[2][g]) == 2
    # collapsing 2-gons and triangle pairs recovers cubic counts
    n_edges = mc.n_cells[1] - len(gons) - len(diags)
    n_faces = mc.n_cells[2] - len(gons) - len(tris)
    assert n_edges == 24 and n_faces == 24
    # 2-gons are 2-valent: each lies in exactly two volumes
    for g in gons:
        assert len(mc.coboundary_of(2, g)) == 2


def test_modified_cubic3_variant_differs():
    a = build_lattice("ModifiedCubic3", (2, 2, 2))
    b = build_lattice("ModifiedCubic3", (2, 2, 2), variant="anticheckerboard")
    assert a.n_cells == b.n_cells
    da = [a.boundary[1][i] for i in a.cells_with_tag(1, "kind", "diagonal")]
    db = [b.boundary[1][i] for i in b.cells_with_tag(1, "kind", "diagonal")]
    assert da != db


def test_triangle_prism_structure():
    tp = build_lattice("TrianglePrism3", (3, 3, 4), periodic_time=True)
    assert tp.euler_characteristic() == 0
    halves = [t for t in tp.tags[1] if t.get("kind") == "t_edge"]
    assert len(halves) == 2 * 9 * 4  # a and b per site per slab
    fused = [t for t in tp.tags[3] if t["kind"] == "fused_prism"]
    assert len(fused) == 9 * 4


def test_four_colored_triangulation():
    fc = build_lattice("FourColoredTriangulation3", (2, 2, 2))
    assert fc.euler_characteristic() == 0
    tets = fc.tags[3]
    assert all(t["colors"] == (0, 1, 2, 3) for t in tets)
    n_right = sum(t["right_handed"] for t in tets)
    assert n_right == len(tets) // 2 == 48


def test_shifted_pair_colors():
    sp = build_lattice("ShiftedPairTriangulation3", (2, 2, 2))
    cols = {t["color"] for t in sp.tags[0]}
    assert cols == {0, 1}


def test_json_roundtrip(torus):
    text = complex_to_json(torus)
    back = complex_from_json(text)
    assert back.n_cells == torus.n_cells
    assert back.boundary == torus.boundary
    assert back.euler_characteristic() == 0
