"""3d four-colored triangulation and the 3+1d Floquet spacetime lattice.

The spatial triangulation consists of two cubic lattices A and B shifted by
half a unit in every direction, plus the length-sqrt(3/4) edges connecting
each B vertex to the 8 corners of its A cube.  Tetrahedra are spanned by one
A edge, one linked B edge, and four connecting edges.  Vertices are
4-colorable: A vertices alternate colors 0/2 in a checkerboard, B vertices
1/3.  Each tetrahedron has one vertex of every color; handedness is the sign
of the determinant of the color-ordered vertex frame.

The spacetime lattice is a 4d hypercubic lattice traversed along
t = w+x+y+z, with every face split into a pillow pair (two 3-valent copies
bounding a pillow volume) and every cube split into three volumes along two
internal faces f and g.  Vertices project to A/B sites; faces project to
rhombi over A/B lattice edges; hypercube diagonals project to A-B edges.
"""

from __future__ import annotations

import itertools

import numpy as np

from .core import CellComplex, InvalidSizeError

_AXES4 = ("w", "x", "y", "z")
# spatial displacement (doubled, to stay integral) of each 4d unit vector
# under projection orthogonal to t = w+x+y+z:
#   xbar = (w+x-y-z)/2, ybar = (w-x+y-z)/2, zbar = (w-x-y+z)/2
_PROJ2 = {"w": (1, 1, 1), "x": (1, -1, -1), "y": (-1, 1, -1), "z": (-1, -1, 1)}


def _site_wrap(s, L):
    return tuple(c % (2 * L) for c in s)


def _is_a_site(s):
    return all(c % 2 == 0 for c in s)


def _site_color(s):
    """Color 0..3 from sublattice and checkerboard (doubled coordinates)."""
    if _is_a_site(s):
        return 0 if sum(c // 2 for c in s) % 2 == 0 else 2
    return 1 if sum((c - 1) // 2 for c in s) % 2 == 0 else 3


def spatial_sites(L):
    """All A and B sites in doubled coordinates on a torus of linear size L."""
    a = [tuple(2 * c for c in p) for p in itertools.product(range(L), repeat=3)]
    b = [tuple(2 * c + 1 for c in p) for p in itertools.product(range(L), repeat=3)]
    return a, b


def _axis_edge_key(site, ax, L):
    """Canonical key of the axis edge from `site` in the +axis direction."""
    return ("ax", _site_wrap(site, L), ax)


def _ab_edge_key(a_raw, b_raw, L):
    """Canonical key of an A-B edge given unwrapped endpoint coordinates.

    Keyed by the B endpoint and the geometric +-1 offset toward A, so that
    multi-edges on small tori stay distinct.
    """
    off = tuple(a_raw[i] - b_raw[i] for i in range(3))
    assert all(abs(o) == 1 for o in off)
    return ("ab", _site_wrap(b_raw, L), off)


def enumerate_tetrahedra(L):
    """Tetrahedra of the shifted-pair triangulation with geometric keys.

    Each tetrahedron combines an A-lattice axis edge with one of the four
    linked B-lattice axis edges.  Unwrapped coordinates are kept alongside
    so cells stay distinct on small tori.
    """
    tets = []
    a_sites, _ = spatial_sites(L)
    for a in a_sites:
        for ax in range(3):
            a2_raw = list(a)
            a2_raw[ax] += 2
            a2_raw = tuple(a2_raw)
            oth = [i for i in range(3) if i != ax]
            for bx in oth:
                third = oth[0] if oth[1] == bx else oth[1]
                for s3 in (-1, 1):
                    b1_raw = list(a)
                    b1_raw[ax] += 1
                    b1_raw[bx] -= 1
                    b1_raw[third] += s3
                    b1_raw = tuple(b1_raw)
                    b2_raw = list(b1_raw)
                    b2_raw[bx] += 2
                    b2_raw = tuple(b2_raw)
                    raw = (a, a2_raw, b1_raw, b2_raw)
                    verts = tuple(_site_wrap(v, L) for v in raw)
                    colors = [_site_color(v) for v in verts]
                    order = np.argsort(colors)
                    disp = [np.subtract(raw[j], raw[order[0]])
                            for j in order[1:]]
                    det = np.linalg.det(np.array(disp, dtype=float))
                    edge_keys = frozenset({
                        _axis_edge_key(a, ax, L),
                        ("ax", _site_wrap(b1_raw, L), bx),
                        _ab_edge_key(a, b1_raw, L),
                        _ab_edge_key(a, b2_raw, L),
                        _ab_edge_key(a2_raw, b1_raw, L),
                        _ab_edge_key(a2_raw, b2_raw, L),
                    })
                    # faces keyed by their edge-key triples
                    fk = []
                    for omit in range(4):
                        kept = [raw[j] for j in range(4) if j != omit]
                        tri_edges = []
                        for u, v in itertools.combinations(kept, 2):
                            if _is_a_site(u) == _is_a_site(v):
                                lo = u if sum(u) <= sum(v) else v
                                axd = [i for i in range(3) if u[i] != v[i]][0]
                                tri_edges.append(_axis_edge_key(lo, axd, L))
                            else:
                                aa, bb = (u, v) if _is_a_site(u) else (v, u)
                                tri_edges.append(_ab_edge_key(aa, bb, L))
                        fk.append(frozenset(tri_edges))
                    tets.append({
                        "verts": verts,
                        "raw": raw,
                        "colors": tuple(sorted(colors)),
                        "ordered": tuple(verts[j] for j in order),
                        "a_edge_key": _axis_edge_key(a, ax, L),
                        "b_edge_key": ("ax", _site_wrap(b1_raw, L), bx),
                        "edge_keys": edge_keys,
                        "face_keys": tuple(fk),
                        "right_handed": bool(det > 0),
                    })
    return tets


def four_colored_triangulation3(L, colors=4):
    """Spatial 3d triangulation with 4-colored (or 2-colored) vertices."""
    if L < 2 or L % 2:
        raise InvalidSizeError("4-coloring needs even L >= 2")
    a_sites, b_sites = spatial_sites(L)
    sites = a_sites + b_sites
    vid = {s: i for i, s in enumerate(sites)}
    vtags = [{"site": s,
              "color": _site_color(s) if colors == 4 else (0 if _is_a_site(s) else 1),
              "sublattice": "A" if _is_a_site(s) else "B"} for s in sites]

    edges = {}
    etags, ebnd = [], []
    for s in sites:
        for ax in range(3):
            key = _axis_edge_key(s, ax, L)
            u = list(s)
            u[ax] += 2
            edges[key] = len(etags)
            etags.append({"key": key, "kind": "axis", "axis": ax, "site": s})
            ebnd.append(frozenset({vid[s], vid[_site_wrap(tuple(u), L)]}))
    for b in b_sites:
        for dd in itertools.product((-1, 1), repeat=3):
            a_raw = tuple(b[i] + dd[i] for i in range(3))
            key = ("ab", b, tuple(dd[i] for i in range(3)))
            edges[key] = len(etags)
            etags.append({"key": key, "kind": "ab", "site": b, "offset": dd})
            ebnd.append(frozenset({vid[b], vid[_site_wrap(a_raw, L)]}))

    tets = enumerate_tetrahedra(L)

    faces = {}
    ftags, fbnd = [], []
    ctags, cbnd = [], []
    for t in tets:
        fs = []
        for fk in t["face_keys"]:
            if fk not in faces:
                faces[fk] = len(ftags)
                ftags.append({"edge_keys": fk})
                fbnd.append(frozenset(edges[k] for k in fk))
            fs.append(faces[fk])
        ctags.append({"verts": tuple(sorted(t["verts"])),
                      "colors": t["colors"],
                      "right_handed": t["right_handed"],
                      "a_edge_key": t["a_edge_key"],
                      "b_edge_key": t["b_edge_key"],
                      "edge_keys": t["edge_keys"]})
        cbnd.append(frozenset(fs))

    cx = CellComplex(
        [len(sites), len(etags), len(ftags), len(ctags)],
        [[frozenset()] * len(sites), ebnd, fbnd, cbnd],
        [vtags, etags, ftags, ctags],
        (True, True, True),
        name="FourColoredTriangulation3" if colors == 4 else
             "ShiftedPairTriangulation3")
    cx.L = L
    cx.vid = vid
    cx.edge_index = edges
    cx.face_index = faces
    return cx


# ---------------------------------------------------------------------------
# 3+1d spacetime: modified hypercubic lattice along t = w+x+y+z


def _proj(v4):
    """Doubled spatial projection of an integer 4-vector."""
    out = [0, 0, 0]
    for name, c in zip(_AXES4, v4):
        for i in range(3):
            out[i] += _PROJ2[name][i] * c
    return tuple(out)


class Spacetime4D:
    """Open-time modified hypercubic lattice for the 3+1d Floquet code.

    Vertices are (site, level) with level = color(site) mod 4.  Cells carry
    the pillow/f/g structure: each hypercubic face becomes two copies plus a
    pillow 3-cell, each cube becomes three volumes separated by internal
    faces f and g.  4-cells are kept whole.
    """

    P_OFFSET = 1   # cube round parity p = (level + P_OFFSET) mod 2

    def __init__(self, L, T_levels):
        if L < 2 or L % 2:
            raise InvalidSizeError("3+1d lattice needs even L >= 2")
        if T_levels < 5:
            raise InvalidSizeError("need at least 5 time levels")
        self.L = L
        self.T_levels = T_levels
        self._build()

    def _wrap(self, s):
        return _site_wrap(s, self.L)

    def _build(self):
        L, T = self.L, self.T_levels
        a_sites, b_sites = spatial_sites(L)
        sites = a_sites + b_sites
        color = {s: _site_color(s) for s in sites}

        vid, vtags = {}, []
        for t in range(T):
            for s in sites:
                if color[s] == t % 4:
                    vid[(s, t)] = len(vtags)
                    vtags.append({"site": s, "level": t, "color": t % 4})
        self.vid = vid

        def v(s, t):
            return vid.get((self._wrap(s), t))

        def stepped(s, dirs):
            out = list(s)
            for d in dirs:
                for i in range(3):
                    out[i] += _PROJ2[d][i]
            return self._wrap(tuple(out))

        # edges
        eid, etags, ebnd = {}, [], []
        for (s, t) in vid:
            for d in _AXES4:
                q = stepped(s, (d,))
                if v(q, t + 1) is None:
                    continue
                eid[(s, t, d)] = len(etags)
                etags.append({"site": s, "level": t, "dir": d})
                ebnd.append(frozenset({v(s, t), v(q, t + 1)}))
        self.eid = eid

        def e(s, t, d):
            return eid.get((self._wrap(s), t, d))

        # face copies and pillows.  A hypercubic face (s, t, {d1,d2}) has
        # boundary edges e(s,d1), e(s,d2), e(s+d1, d2)@t+1, e(s+d2, d1)@t+1.
        # Each face is doubled into copies 'i'/'o' bounding a pillow volume.
        # The copies are distributed over the four adjacent cubes so that the
        # pillow's coboundary is the temporally first and last 4-cell around
        # the face (the detection-cell structure of the T instruments): with
        # missing directions d3 < d4, copy 'i' serves the level-t cube of
        # type {d1,d2,d3} and the level-(t-1) cube of type {d1,d2,d4}.
        fid, ftags, fbnd = {}, [], []
        face_keys = []
        for (s, t) in vid:
            for d1, d2 in itertools.combinations(_AXES4, 2):
                es = [e(s, t, d1), e(s, t, d2),
                      e(stepped(s, (d1,)), t + 1, d2),
                      e(stepped(s, (d2,)), t + 1, d1)]
                if any(x is None for x in es):
                    continue
                for copy in ("i", "o"):
                    fid[(s, t, d1 + d2, copy)] = len(ftags)
                    ftags.append({"site": s, "level": t, "dirs": d1 + d2,
                                  "copy": copy, "kind": "face_copy"})
                    fbnd.append(frozenset(es))
                face_keys.append((s, t, d1 + d2))
        self.fid = fid
        self.face_keys = face_keys

        def face_copy_for(cube_dirs, cube_level, fkey):
            """Which copy of face `fkey` the given cube attaches to."""
            fs, ft, fdd = fkey
            d3 = next(d for d in _AXES4 if d not in fdd)
            at_level = cube_level == ft
            has_d3 = d3 in cube_dirs
            return "i" if (at_level == has_d3) else "o"

        self._face_copy_for = face_copy_for

        def f(s, t, dd, copy):
            return fid.get((self._wrap(s), t, dd, copy))

        # volumes: pillows + the three pieces of every cube
        vol_id, voltags, volbnd = {}, [], []

        for (s, t, dd) in face_keys:
            vol_id[("pillow", s, t, dd)] = len(voltags)
            voltags.append({"kind": "pillow", "site": s, "level": t, "dirs": dd})
            volbnd.append(frozenset({fid[(s, t, dd, "i")], fid[(s, t, dd, "o")]}))

        # cube structure: directions {a,b,c} ordered by w<x<y<z; faces
        #   i0 = ab@s, i1 = bc@s, i2 = ca@s (inputs)
        #   p=0: o0 = bc@s+a, o1 = ca@s+b, o2 = ab@s+c
        #   p=1: o0 = ca@s+b, o1 = ab@s+c, o2 = bc@s+a
        # with p the parity of the cube's round composed with the handedness
        # of the cube's projected frame (the left/right turn of the qubit
        # timeline flips with both).  Internal faces f,g split the cube into
        # vol0 {i0,o0,f}, vol1 {i1,o1,f,g}, vol2 {i2,o2,g}; timelines stay
        # swap-free: the tetrahedron on each i_k diagonal is the one on o_k.
        frame_sign = {}
        for dirs in itertools.combinations(_AXES4, 3):
            mat = np.array([_PROJ2[d] for d in dirs], dtype=float)
            frame_sign["".join(dirs)] = 1 if np.linalg.det(mat) > 0 else 0
        cube_keys = []
        self.cube_faces = {}
        for (s, t) in vid:
            for dirs in itertools.combinations(_AXES4, 3):
                a, b, c = dirs
                i0 = (self._wrap(s), t, a + b)
                i1 = (self._wrap(s), t, b + c)
                i2 = (self._wrap(s), t, "".join(sorted(c + a, key=_AXES4.index)))
                p = (t + self.P_OFFSET + frame_sign["".join(dirs)]) % 2
                if p == 0:
                    o0 = (stepped(s, (a,)), t + 1, b + c)
                    o1 = (stepped(s, (b,)), t + 1,
                          "".join(sorted(c + a, key=_AXES4.index)))
                    o2 = (stepped(s, (c,)), t + 1, a + b)
                else:
                    o0 = (stepped(s, (b,)), t + 1,
                          "".join(sorted(c + a, key=_AXES4.index)))
                    o1 = (stepped(s, (c,)), t + 1, a + b)
                    o2 = (stepped(s, (a,)), t + 1, b + c)
                ios = [i0, i1, i2, o0, o1, o2]
                if any((k[0], k[1], k[2], "i") not in fid for k in ios):
                    continue
                key = (self._wrap(s), t, "".join(dirs))
                cube_keys.append(key)
                in_faces = [fid[(k[0], k[1], k[2],
                                 face_copy_for(dirs, t, k))]
                            for k in (i0, i1, i2)]
                out_faces = [fid[(k[0], k[1], k[2],
                                  face_copy_for(dirs, t, k))]
                             for k in (o0, o1, o2)]
                fint = len(ftags)
                ftags.append({"kind": "internal_f", "cube": key})
                fbnd.append(frozenset())  # fixed below
                gint = len(ftags)
                ftags.append({"kind": "internal_g", "cube": key})
                fbnd.append(frozenset())
                # internal face boundaries: f ~ i0+o0, g ~ i2+o2 (edge sets)
                fbnd[fint] = self._face_pair_boundary(fbnd, fid, i0, o0)
                fbnd[gint] = self._face_pair_boundary(fbnd, fid, i2, o2)
                vol_id[("cube0", *key)] = len(voltags)
                voltags.append({"kind": "cube0", "cube": key})
                volbnd.append(frozenset({in_faces[0], out_faces[0], fint}))
                vol_id[("cube1", *key)] = len(voltags)
                voltags.append({"kind": "cube1", "cube": key})
                volbnd.append(frozenset({in_faces[1], out_faces[1], fint, gint}))
                vol_id[("cube2", *key)] = len(voltags)
                voltags.append({"kind": "cube2", "cube": key})
                volbnd.append(frozenset({in_faces[2], out_faces[2], gint}))
                self.cube_faces[key] = {"i": (i0, i1, i2), "o": (o0, o1, o2),
                                        "f": fint, "g": gint, "p": p}
        self.cube_keys = cube_keys
        self.vol_id = vol_id

        # 4-cells: one per hypercube; boundary = its 8 cube-pieces (3 each)
        # plus the pillows with odd attachment parity (computed from copies).
        hid, htags, hbnd = {}, [], []
        for (s, t) in vid:
            cubes = []
            ok = True
            for dirs in itertools.combinations(_AXES4, 3):
                k1 = (self._wrap(s), t, "".join(dirs))
                miss = [d for d in _AXES4 if d not in dirs][0]
                k2 = (stepped(s, (miss,)), t + 1, "".join(dirs))
                if k1 not in self.cube_faces or k2 not in self.cube_faces:
                    ok = False
                    break
                cubes.extend([k1, k2])
            if not ok:
                continue
            parts = set()
            for k in cubes:
                for piece in ("cube0", "cube1", "cube2"):
                    parts.add(vol_id[(piece, *k)])
            # pillows: the 'i' copy of a face must be covered evenly among
            # this hypercube's cube pieces plus possibly the pillow, so the
            # pillow joins exactly when an odd number of pieces grab copy 'i'.
            pillow_faces = set()
            for k in cubes:
                cf = self.cube_faces[k]
                ks, kt, kdirs = k
                for fk in cf["i"] + cf["o"]:
                    if face_copy_for(kdirs, kt, fk) == "i":
                        pillow_faces ^= {("pillow", fk[0], fk[1], fk[2])}
            for pk in pillow_faces:
                parts.add(vol_id[pk])
            hid[(self._wrap(s), t)] = len(htags)
            htags.append({"site": self._wrap(s), "level": t})
            hbnd.append(frozenset(parts))
        self.hid = hid

        self.complex = CellComplex(
            [len(vtags), len(etags), len(ftags), len(voltags), len(htags)],
            [[frozenset()] * len(vtags), ebnd, fbnd,
             volbnd, hbnd],
            [vtags, etags, ftags, voltags, htags],
            (True, True, True, False),
            name="ModifiedHypercubic4")
        self.complex.L = L
        self.complex.T_levels = T

    @staticmethod
    def _face_pair_boundary(fbnd, fid, k_in, k_out):
        """Edge set of an internal face: symmetric difference of the two
        face-copy boundaries it interpolates."""
        b_in = fbnd[fid[(k_in[0], k_in[1], k_in[2], "i")]]
        b_out = fbnd[fid[(k_out[0], k_out[1], k_out[2], "i")]]
        return frozenset(set(b_in) ^ set(b_out))


def modified_hypercubic4(L, T_levels):
    st = Spacetime4D(L, T_levels)
    return st.complex
