"""Builders for the spacetime lattices used by the dynamic codes.

Families
--------
Cubic3                     periodic/open cubic lattice (z is the time axis)
ModifiedCubic3             cubic with xt/yt plaquettes split into triangles
                           along checkerboard diagonals and x/y edges split
                           into 2-gon pairs
RotatedCubic3              cubic lattice presented along t = x+y+z: vertices
                           are (spatial triangular-lattice site, time level)
RotatedModifiedCubic3      rotated cubic with every face diagonal-split and
                           every edge 2-gon-split
TrianglePrism3             triangular lattice x time, prisms as volumes,
                           vertical rectangles split into triangles and each
                           6-valent t-edge split into an a/b pair (paired
                           prisms fused into a single volume)
Hypercubic4                4d hypercubic lattice
FourColoredTriangulation3  two shifted cubic lattices A/B plus connecting
                           edges; tetrahedra carry one vertex of each color
ShiftedPairTriangulation3  same lattice with 2-coloring only (A red, B green)
ModifiedHypercubic4        hypercubic with faces split into pillow pairs and
                           cubes split into three volumes along internal f,g
                           faces (the 3+1d Floquet spacetime)

All builders return a `CellComplex` whose tags carry the geometric data the
code generators need (coordinates, direction labels, colors, handedness).
Incidence is constructed so that boundary-of-boundary vanishes by local
surgery rules, and `build_lattice` re-checks this.
"""

from __future__ import annotations

import itertools

import numpy as np

from .core import CellComplex, InvalidFamilyError, InvalidSizeError


# ---------------------------------------------------------------------------
# generic product (hypercubic) complexes


def _product_complex(dims, periodic, axis_names, name):
    """Hypercubic complex on prod(dims); cells are (coords, direction subset)."""
    ndim = len(dims)
    periodic = tuple(periodic)
    ids = [{} for _ in range(ndim + 1)]
    coords = [[] for _ in range(ndim + 1)]
    for k in range(ndim + 1):
        for sub in itertools.combinations(range(ndim), k):
            for base in itertools.product(*(range(d) for d in dims)):
                if not all(periodic[a] or base[a] + 1 < dims[a] for a in sub):
                    continue
                key = (base, sub)
                ids[k][key] = len(ids[k])
                coords[k].append(key)
    bnd = [[] for _ in range(ndim + 1)]
    bnd[0] = [frozenset() for _ in coords[0]]
    for k in range(1, ndim + 1):
        for base, sub in coords[k]:
            faces = set()
            for a in sub:
                rest = tuple(x for x in sub if x != a)
                lo = (base, rest)
                shifted = list(base)
                shifted[a] = (shifted[a] + 1) % dims[a]
                hi = (tuple(shifted), rest)
                faces ^= {ids[k - 1][lo]}
                faces ^= {ids[k - 1][hi]}
            bnd[k].append(frozenset(faces))
    tags = [[{"base": base, "dirs": tuple(axis_names[a] for a in sub)}
             for base, sub in coords[k]] for k in range(ndim + 1)]
    cx = CellComplex([len(c) for c in coords], bnd, tags, periodic, name=name)
    cx.cell_index = ids
    cx.cell_key = coords
    cx.dims = tuple(dims)
    cx.axis_names = tuple(axis_names)
    return cx


def cubic3(dims, periodic=(True, True, True)):
    if any(d < 2 for d in dims):
        raise InvalidSizeError("cubic lattice needs every extent >= 2")
    return _product_complex(dims, periodic, ("x", "y", "t"), "Cubic3")


def hypercubic4(dims, periodic=(True, True, True, True)):
    if any(d < 2 for d in dims):
        raise InvalidSizeError("hypercubic lattice needs every extent >= 2")
    return _product_complex(dims, periodic, ("w", "x", "y", "z"), "Hypercubic4")


# ---------------------------------------------------------------------------
# surgery primitives (all preserve boundary-of-boundary = 0)


class _MutableComplex:
    """Edit buffer for surgeries: lists of boundary sets plus tags."""

    def __init__(self, cx: CellComplex):
        self.bnd = [[set(b) for b in level] for level in cx.boundary]
        self.tags = [[dict(t) for t in level] for level in cx.tags]
        self.periodic = cx.periodic
        self.dims = getattr(cx, "dims", None)

    def add_cell(self, k, bnd, tag):
        self.bnd[k].append(set(bnd))
        self.tags[k].append(tag)
        return len(self.bnd[k]) - 1

    def finalize(self, name):
        cx = CellComplex([len(level) for level in self.bnd],
                         [[frozenset(b) for b in level] for level in self.bnd],
                         self.tags, self.periodic, name=name)
        cx.dims = self.dims
        return cx


def _split_face(mc: _MutableComplex, face, part_a, part_b, diag_tag, tri_tags):
    """Split 2-cell `face` into two triangles sharing a new 2-valent edge.

    `part_a`/`part_b` partition the face's boundary edges between the two
    triangles.  The diagonal's endpoints are derived from the parts: the
    vertices hit an odd number of times by each part.  The face cell is
    reused as triangle 1; triangle 2 is appended; volumes containing the
    face gain triangle 2 alongside it.
    """
    assert set(part_a) | set(part_b) == mc.bnd[2][face]
    assert not set(part_a) & set(part_b)
    ends = set()
    for e in part_a:
        ends ^= set(mc.bnd[1][e])
    diag = mc.add_cell(1, ends, diag_tag)
    tri2 = mc.add_cell(2, set(part_b) | {diag}, tri_tags[1])
    mc.bnd[2][face] = set(part_a) | {diag}
    mc.tags[2][face].update(tri_tags[0])
    for vol in range(len(mc.bnd[3])):
        if face in mc.bnd[3][vol]:
            mc.bnd[3][vol].add(tri2)
    return diag, face, tri2


def _split_edge(mc: _MutableComplex, edge, faces_b, copy_tags, gon_tag):
    """Split 1-cell `edge` into two parallel copies separated by a 2-gon.

    Faces in `faces_b` switch to the new copy; the rest keep `edge`.  The
    2-gon is added to the boundary of every volume with an odd number of
    switched faces, which is exactly what keeps boundary-of-boundary zero.
    """
    copy = mc.add_cell(1, set(mc.bnd[1][edge]), copy_tags[1])
    mc.tags[1][edge].update(copy_tags[0])
    gon = mc.add_cell(2, {edge, copy}, gon_tag)
    faces_b = set(faces_b)
    for f in faces_b:
        assert edge in mc.bnd[2][f]
        mc.bnd[2][f].discard(edge)
        mc.bnd[2][f].add(copy)
    for vol in range(len(mc.bnd[3])):
        b = mc.bnd[3][vol]
        odd = len(b & faces_b) % 2
        if odd:
            b.add(gon)
    return copy, gon


# ---------------------------------------------------------------------------
# ModifiedCubic3: the stabilizer toric code spacetime


def modified_cubic3(dims, periodic=(True, True, True), variant="checkerboard"):
    """Cubic lattice with vertical plaquettes triangle-split and spatial edges
    2-gon-split, following the checkerboard rule (vertex label (x+y) mod 2).

    variant='anticheckerboard' flips the diagonal orientation.
    """
    if dims[0] % 2 or dims[1] % 2:
        raise InvalidSizeError("checkerboard split needs even spatial extents")
    base = cubic3(dims, periodic)
    mc = _MutableComplex(base)
    idx = base.cell_index
    L = dims
    flip = variant == "anticheckerboard"
    if variant not in ("checkerboard", "anticheckerboard"):
        raise InvalidFamilyError(f"unknown ModifiedCubic3 variant {variant!r}")

    def vid(x, y, t):
        return idx[0][((x % L[0], y % L[1], t % L[2]), ())]

    def eid(x, y, t, axis):
        return idx[1][((x % L[0], y % L[1], t % L[2]), (axis,))]

    def fid(x, y, t, axes):
        return idx[2][((x % L[0], y % L[1], t % L[2]), tuple(sorted(axes)))]

    def label(x, y):
        return (x + y + (1 if flip else 0)) % 2

    # split xt (axes 0,2) and yt (axes 1,2) faces along their diagonal
    tri_info = {}
    for (basec, sub), f in list(idx[2].items()):
        if 2 not in sub:
            continue
        a = sub[0]  # spatial axis of the face
        x, y, t = basec
        # face corners: v(base)@t, v+a@t, v@t+1, v+a@t+1
        shift = [0, 0]
        shift[a] = 1
        # diagonal joins the 0-labelled vertex at t+1 to the 1-labelled at t;
        # the lower triangle keeps the bottom spatial edge plus the t edge at
        # the 1-labelled corner's opposite column
        e_bot = eid(x, y, t, a)
        e_top = eid(x, y, t + 1, a)
        e_t0 = eid(x, y, t, 2)
        e_t1 = eid(x + shift[0], y + shift[1], t, 2)
        if label(x, y) == 0:
            lower, upper = {e_bot, e_t0}, {e_top, e_t1}
        else:
            lower, upper = {e_bot, e_t1}, {e_top, e_t0}
        diag, tri_lo, tri_hi = _split_face(
            mc, f, lower, upper,
            {"kind": "diagonal", "face_base": basec, "face_dirs": sub},
            ({"kind": "tri_lower"},
             {"kind": "tri_upper", "face_base": basec, "face_dirs": sub}))
        tri_info[(basec, sub)] = (tri_lo, tri_hi, diag)

    # split x and y edges: the two xy faces take different copies, paired
    # with the vertical triangles so every cube stays consistent
    for (basec, sub), e in list(idx[1].items()):
        if sub == (2,):
            continue
        a = sub[0]
        x, y, t = basec
        other = 1 - a
        sh = [0, 0]
        sh[other] = 1
        # adjacent xy faces at time t: base (x,y) and base shifted by -other
        f_own = fid(x, y, t, (0, 1))
        f_oth = fid(x - sh[0], y - sh[1], t, (0, 1))
        # vertical triangles containing this edge: lower tri of the slab above,
        # upper tri of the slab below
        key_above = ((x, y, t), tuple(sorted((a, 2))))
        part_b = {f_oth}
        if key_above in tri_info:
            part_b.add(tri_info[key_above][0])   # lower triangle uses copy b
        _split_edge(
            mc, e, part_b,
            ({"kind": "edge_copy_a", "split_of": (basec, sub)},
             {"kind": "edge_copy_b", "split_of": (basec, sub),
              "base": basec, "dirs": tuple("xyt"[i] for i in sub)}),
            {"kind": "2gon", "edge_base": basec, "edge_dirs": sub})

    cx = mc.finalize("ModifiedCubic3")
    cx.dims = tuple(dims)
    # cell lookups for the code generators: unsplit cells keep their base
    # product-complex ids; split extras are recovered from tags
    cx.cell_index = base.cell_index
    cx.diag_of_face = {}
    cx.gon_of_edge = {}
    cx.upper_tri_of_face = {}
    cx.copy_b_of_edge = {}
    for i, tag in enumerate(cx.tags[1]):
        if tag.get("kind") == "diagonal":
            cx.diag_of_face[(tag["face_base"], tag["face_dirs"])] = i
        elif tag.get("kind") == "edge_copy_b":
            cx.copy_b_of_edge[tag["split_of"]] = i
    for i, tag in enumerate(cx.tags[2]):
        if tag.get("kind") == "2gon":
            cx.gon_of_edge[(tag["edge_base"], tag["edge_dirs"])] = i
        elif tag.get("kind") == "tri_upper":
            cx.upper_tri_of_face[(tag["face_base"], tag["face_dirs"])] = i
    return cx


# ---------------------------------------------------------------------------
# rotated cubic lattices (t = x + y + z)

_TRI_STEPS = {"x": (1, 0), "y": (0, 1), "z": (-1, -1)}
_TRI_DIRS = ("x", "y", "z")


def _tri_sites(L):
    return [(i, j) for i in range(L) for j in range(L)]


def _tri_color(p):
    return (p[0] + p[1]) % 3


def rotated_cubic3(L, T_levels, periodic_time=False):
    """Cubic lattice along t = x+y+z: vertices are (site, level) with
    level = color(site) mod 3; edges advance one level, faces two, cubes three.

    With periodic_time the level axis wraps with period T_levels (which must
    be a multiple of 3 so colors stay consistent).
    """
    if L % 3:
        raise InvalidSizeError("rotated cubic lattice needs L divisible by 3")
    if T_levels < 3 or (periodic_time and T_levels % 3):
        raise InvalidSizeError("need T_levels >= 3 (multiple of 3 if periodic)")
    sites = _tri_sites(L)

    def wrap(p):
        return (p[0] % L, p[1] % L)

    def step(p, d):
        s = _TRI_STEPS[d]
        return wrap((p[0] + s[0], p[1] + s[1]))

    vid = {}
    vtags = []
    for t in range(T_levels):
        for p in sites:
            if _tri_color(p) == t % 3:
                vid[(p, t)] = len(vtags)
                vtags.append({"site": p, "level": t, "color": t % 3})

    def v(p, t):
        if periodic_time:
            t %= T_levels
        return vid.get((wrap(p), t))

    eid, etags, ebnd = {}, [], []
    for (p, t) in vid:
        for d in _TRI_DIRS:
            q = step(p, d)
            if v(q, t + 1) is None:
                continue
            eid[(p, t, d)] = len(etags)
            etags.append({"site": p, "level": t, "dir": d, "kind": "edge"})
            ebnd.append(frozenset({v(p, t), v(q, t + 1)}))

    def e(p, t, d):
        if periodic_time:
            t %= T_levels
        return eid.get((wrap(p), t, d))

    fid, ftags, fbnd = {}, [], []
    for (p, t) in vid:
        for d1, d2 in itertools.combinations(_TRI_DIRS, 2):
            q1, q2 = step(p, d1), step(p, d2)
            q12 = step(q1, d2)
            es = [e(p, t, d1), e(p, t, d2), e(q1, t + 1, d2), e(q2, t + 1, d1)]
            if any(x is None for x in es):
                continue
            fid[(p, t, d1 + d2)] = len(ftags)
            ftags.append({"site": p, "level": t, "dirs": d1 + d2, "kind": "face",
                          "far_site": q12})
            fbnd.append(frozenset(es))

    def f(p, t, dd):
        if periodic_time:
            t %= T_levels
        return fid.get((wrap(p), t, dd))

    cid, ctags, cbnd = {}, [], []
    for (p, t) in vid:
        fs = [f(p, t, "xy"), f(p, t, "xz"), f(p, t, "yz"),
              f(step(p, "z"), t + 1, "xy"), f(step(p, "y"), t + 1, "xz"),
              f(step(p, "x"), t + 1, "yz")]
        if any(x is None for x in fs):
            continue
        cid[(p, t)] = len(ctags)
        ctags.append({"site": p, "level": t, "kind": "cube"})
        cbnd.append(frozenset(fs))

    cx = CellComplex(
        [len(vtags), len(etags), len(ftags), len(ctags)],
        [[frozenset()] * len(vtags), ebnd, fbnd, cbnd],
        [vtags, etags, ftags, ctags],
        (True, True, periodic_time),
        name="RotatedCubic3")
    cx.L = L
    cx.T_levels = T_levels
    cx.vid, cx.eid, cx.fid, cx.cid = vid, eid, fid, cid
    cx.v_at, cx.e_at, cx.f_at, cx.c_at = v, e, f, (
        lambda p, t: cid.get((wrap(p), t % T_levels if periodic_time else t)))
    cx.tri_step = step
    return cx


def rotated_modified_cubic3(L, T_levels, periodic_time=False):
    """Rotated cubic lattice with every face split into two triangles along
    its time diagonal and every edge split into a 2-gon pair.

    The 2-gon of an edge separates the triangles of the faces at its own base
    site (part a) from the triangles of the faces based one step back
    (part b), realizing 2-gons perpendicular to the x+y / x+z / y+z
    directions.
    """
    base = rotated_cubic3(L, T_levels, periodic_time)
    mc = _MutableComplex(base)

    # split every face along its diagonal (temporally first -> last vertex)
    diag_of_face = {}
    tris_with_edge = {}
    for key, fidx in base.fid.items():
        p, t, dd = key
        d1, d2 = dd[0], dd[1]
        e1 = base.e_at(p, t, d1)
        e2 = base.e_at(p, t, d2)
        q1, q2 = base.tri_step(p, d1), base.tri_step(p, d2)
        e1b = base.e_at(q1, t + 1, d2)
        e2b = base.e_at(q2, t + 1, d1)
        diag, tri1, tri2 = _split_face(
            mc, fidx, {e1, e1b}, {e2, e2b},
            {"kind": "diagonal", "site": p, "level": t, "dirs": dd},
            ({"kind": "tri", "via": d1, "site": p, "level": t, "dirs": dd},
             {"kind": "tri", "via": d2, "site": p, "level": t, "dirs": dd}))
        diag_of_face[key] = diag
        for eidx, tri in ((e1, tri1), (e1b, tri1), (e2, tri2), (e2b, tri2)):
            tris_with_edge.setdefault(eidx, []).append((key, tri))

    # split every edge.  The 2-gon must separate the temporally first and
    # last of the four cubes around the edge (its coboundary is that pair),
    # which happens when part b takes the triangle of one own-base face and
    # the triangle of the crossed below-base face.
    for key, eidx in base.eid.items():
        p, t, d = key
        dmin, dmax = sorted(x for x in _TRI_DIRS if x != d)
        own = tuple(sorted(d + dmin))
        below = tuple(sorted(d + dmax))
        part_b = set()
        for fkey, tri in tris_with_edge.get(eidx, []):
            fp, ft, fdd = fkey
            if (fp, ft) == (p, t) and fdd == "".join(own):
                part_b.add(tri)
            elif (fp, ft) != (p, t) and fdd == "".join(below):
                part_b.add(tri)
        _split_edge(
            mc, eidx, part_b,
            ({"kind": "edge_copy_a"}, {"kind": "edge_copy_b", "site": p,
                                       "level": t, "dir": d}),
            {"kind": "2gon", "site": p, "level": t, "dir": d})

    cx = mc.finalize("RotatedModifiedCubic3")
    cx.L, cx.T_levels = L, T_levels
    cx.vid, cx.eid, cx.fid, cx.cid = base.vid, base.eid, base.fid, base.cid
    cx.v_at, cx.e_at, cx.f_at, cx.c_at = base.v_at, base.e_at, base.f_at, base.c_at
    cx.tri_step = base.tri_step
    cx.diag_of_face = dict(diag_of_face)
    cx.gon_of_edge = {}
    for i, tag in enumerate(cx.tags[2]):
        if tag.get("kind") == "2gon":
            cx.gon_of_edge[(tag["site"], tag["level"], tag["dir"])] = i
    return cx


# ---------------------------------------------------------------------------
# triangle prisms (subsystem toric code spacetime)

_SUBSYS_DIRS = {0: (1, 0), 60: (0, 1), 120: (-1, 1)}


def triangle_prism3(L, T_levels, periodic_time=False, split=True):
    """Triangular lattice x time.  With split=True, vertical rectangles are
    split into triangles, each 6-valent t-edge is split into an a/b pair
    (a carries the 120/180/240-degree sectors), and the prisms over the
    up/down triangle pair at each vertex are fused into a single volume.
    """
    if L < 2:
        raise InvalidSizeError("triangular lattice needs L >= 2")
    if T_levels < 1:
        raise InvalidSizeError("need at least one time level")
    sites = [(i, j) for i in range(L) for j in range(L)]

    def wrap(p):
        return (p[0] % L, p[1] % L)

    def nbr(p, ang):
        d = _SUBSYS_DIRS[ang % 360] if ang % 360 in _SUBSYS_DIRS else \
            tuple(-x for x in _SUBSYS_DIRS[(ang + 180) % 360])
        return wrap((p[0] + d[0], p[1] + d[1]))

    nlev = T_levels if periodic_time else T_levels + 1

    vid = {}
    vtags = []
    for t in range(nlev):
        for p in sites:
            vid[(p, t)] = len(vtags)
            vtags.append({"site": p, "level": t})

    def v(p, t):
        return vid[(wrap(p), t % nlev if periodic_time else t)]

    # spatial edges, three directions, at every level
    eid, etags, ebnd = {}, [], []
    for t in range(nlev):
        for p in sites:
            for ang in (0, 60, 120):
                eid[("s", p, ang, t)] = len(etags)
                etags.append({"kind": "spatial", "site": p, "angle": ang, "level": t})
                ebnd.append({v(p, t), v(nbr(p, ang), t)})

    nslab = T_levels if periodic_time else T_levels

    # t-edges split into a/b copies per slab
    for t in range(nslab):
        for p in sites:
            for half in ("a", "b"):
                eid[("t", p, half, t)] = len(etags)
                etags.append({"kind": "t_edge", "site": p, "half": half, "level": t})
                ebnd.append({v(p, t), v(p, t + 1)})

    def lev(t):
        return t % nlev if periodic_time else t

    # horizontal triangle faces:
    #   up(p)   = {p, p+60deg, p+120deg}   (sits in the 60..120 sector above p)
    #   down(p) = {p, p+0deg, p+60deg}
    # pairing: up(p) fuses with down(p - 60deg) across the t edge at p
    fid, ftags, fbnd = {}, [], []
    for t in range(nlev):
        for p in sites:
            up = [("s", p, 60, t), ("s", p, 120, t), ("s", nbr(p, 120), 0, t)]
            fid[("up", p, t)] = len(ftags)
            ftags.append({"kind": "tri", "orient": "up", "site": p, "level": t})
            fbnd.append({eid[k] for k in up})
            down = [("s", p, 0, t), ("s", nbr(p, 0), 120, t), ("s", p, 60, t)]
            fid[("down", p, t)] = len(ftags)
            ftags.append({"kind": "tri", "orient": "down", "site": p, "level": t})
            fbnd.append({eid[k] for k in down})

    _UP_SIDES = lambda bp: [(bp, 60), (bp, 120), (nbr(bp, 120), 0)]
    _DOWN_SIDES = lambda bp: [(bp, 0), (nbr(bp, 0), 120), (bp, 60)]

    # vertical rectangle faces, split into two triangles along a diagonal.
    # The X3 checks pair 120/180/240-degree sectors into the `a` t-edge copy,
    # and the diagonal runs from the b-check vertex at level t to the a-check
    # vertex at level t+1 so that single-qubit errors between the two X
    # rounds sit on single diagonal cells.
    def tcopy(ang_from_p):
        """t-edge copy bordering the rect triangle in the given sector."""
        return "a" if ang_from_p % 360 in (120, 180, 240) else "b"

    for t in range(nslab):
        for p in sites:
            for ang in (0, 60, 120):
                q = nbr(p, ang)
                # a-end: the endpoint seeing the edge in an a sector
                a_end, b_end = (p, q) if tcopy(ang) == "a" else (q, p)
                eid[("d", p, ang, t)] = len(etags)
                etags.append({"kind": "diagonal", "site": p, "angle": ang,
                              "level": t, "a_end": a_end})
                ebnd.append({v(b_end, t), v(a_end, t + 1)})

    for t in range(nslab):
        for p in sites:
            for ang in (0, 60, 120):
                q = nbr(p, ang)
                d = eid[("d", p, ang, t)]
                a_end = etags[d]["a_end"]
                b_end = q if a_end == p else p
                ang_from_a = ang if a_end == p else (ang + 180) % 360
                ang_from_b = (ang + 180) % 360 if a_end == p else ang
                # bottom-spatial triangle carries the a-end t edge
                fid[("rt_bot", p, ang, t)] = len(ftags)
                ftags.append({"kind": "rect_tri", "at": a_end, "angle": ang,
                              "level": t, "site": p})
                fbnd.append({eid[("s", p, ang, t)], d,
                             eid[("t", a_end, tcopy(ang_from_a), t)]})
                fid[("rt_top", p, ang, t)] = len(ftags)
                ftags.append({"kind": "rect_tri", "at": b_end,
                              "angle": ang, "level": t, "site": p})
                fbnd.append({eid[("s", p, ang, lev(t + 1))], d,
                             eid[("t", b_end, tcopy(ang_from_b), t)]})

    # volumes: fused prism pairs across each vertex's t-edge pair
    cid, ctags, cbnd = {}, [], []
    for t in range(nslab):
        for p in sites:
            r = wrap((p[0], p[1] - 1))  # down(r) has top vertex p
            faces = set()
            for orient, bp in (("up", p), ("down", r)):
                faces ^= {fid[(orient, bp, t)], fid[(orient, bp, lev(t + 1))]}
                sides = _UP_SIDES(bp) if orient == "up" else _DOWN_SIDES(bp)
                for sp, sang in sides:
                    faces ^= {fid[("rt_bot", sp, sang, t)],
                              fid[("rt_top", sp, sang, t)]}
            cid[("pair", p, t)] = len(ctags)
            ctags.append({"kind": "fused_prism", "site": p, "level": t})
            cbnd.append(faces)

    cx = CellComplex(
        [len(vtags), len(etags), len(ftags), len(ctags)],
        [[frozenset()] * len(vtags),
         [frozenset(b) for b in ebnd],
         [frozenset(b) for b in fbnd],
         [frozenset(b) for b in cbnd]],
        [vtags, etags, ftags, ctags],
        (True, True, periodic_time),
        name="TrianglePrism3")
    cx.L, cx.T_levels = L, T_levels
    cx.vid, cx.eid, cx.fid, cx.cid = vid, eid, fid, cid
    cx.nbr = nbr
    return cx


# ---------------------------------------------------------------------------
# build_lattice dispatcher

_FAMILIES = {}


def build_lattice(family, dims, periodic=None, **kwargs):
    """Construct a named lattice family; checks all complex invariants."""
    if family == "Cubic3":
        cx = cubic3(dims, periodic or (True, True, True))
    elif family == "ModifiedCubic3":
        cx = modified_cubic3(dims, periodic or (True, True, True), **kwargs)
    elif family == "RotatedModifiedCubic3":
        cx = rotated_modified_cubic3(dims[0], dims[-1], **kwargs)
    elif family == "RotatedCubic3":
        cx = rotated_cubic3(dims[0], dims[-1], **kwargs)
    elif family == "TrianglePrism3":
        cx = triangle_prism3(dims[0], dims[-1], **kwargs)
    elif family == "Hypercubic4":
        cx = hypercubic4(dims, periodic or (True,) * 4)
    elif family == "FourColoredTriangulation3":
        from .triangulation3d import four_colored_triangulation3
        cx = four_colored_triangulation3(dims[0], **kwargs)
    elif family == "ShiftedPairTriangulation3":
        from .triangulation3d import four_colored_triangulation3
        cx = four_colored_triangulation3(dims[0], colors=2, **kwargs)
    elif family == "ModifiedHypercubic4":
        from .triangulation3d import modified_hypercubic4
        cx = modified_hypercubic4(dims[0], dims[-1], **kwargs)
    else:
        raise InvalidFamilyError(f"unknown lattice family {family!r}")
    cx.check()
    return cx
