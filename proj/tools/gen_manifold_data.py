#!/usr/bin/env python3
"""Regenerate data/poincare_sphere.json (and data/rp3.json with argument "rp3").

The dodecahedral space is built by gluing opposite faces of a regular
dodecahedron with a one-tenth twist. Its barycentric subdivision (taken in the
quotient) is a simplicial complex; admissible edge contractions (link
condition) then shrink it while preserving the PL type.

The output is checked into the repository; the library only loads it.
"""

import itertools
import json
import math
import sys

import numpy as np

PHI = (1 + 5 ** 0.5) / 2


def dodecahedron():
    verts = []
    for s in itertools.product((-1, 1), repeat=3):
        verts.append(s)
    for a, b in itertools.product((-1, 1), repeat=2):
        verts.append((0, a / PHI, b * PHI))
        verts.append((a / PHI, b * PHI, 0))
        verts.append((a * PHI, 0, b / PHI))
    verts = np.array(verts, dtype=float)
    normals = []
    for a, b in itertools.product((-1, 1), repeat=2):
        normals.append((0, a * PHI, b))
        normals.append((a * PHI, b, 0))
        normals.append((a, 0, b * PHI))
    normals = np.array(normals, dtype=float)
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    faces = []
    for n in normals:
        d = verts @ n
        idx = [i for i in range(len(verts)) if abs(d[i] - d.max()) < 1e-9]
        assert len(idx) == 5
        c = verts[idx].mean(axis=0)
        u = verts[idx[0]] - c
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        idx.sort(key=lambda i: math.atan2((verts[i] - c) @ w, (verts[i] - c) @ u))
        faces.append(idx)
    return verts, normals, faces


def rotation(axis, angle):
    axis = axis / np.linalg.norm(axis)
    k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


class UnionFind:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def face_pairing(twist):
    """Vertex maps sending each face onto its opposite face."""
    verts, normals, faces = dodecahedron()
    maps = {}
    for fi, n in enumerate(normals):
        fj = int(np.argmin(normals @ n))
        h = verts[faces[fi][0]] @ n
        rot = rotation(n, twist)
        vmap = {}
        for v in faces[fi]:
            image = rot @ (verts[v] - 2 * h * n)
            w = int(np.argmin(np.linalg.norm(verts - image, axis=1)))
            assert np.linalg.norm(verts[w] - image) < 1e-6 and w in faces[fj]
            vmap[v] = w
        maps[fi] = (fj, vmap)
    return verts, faces, maps


def dodecahedral_space(twist):
    """Second barycentric subdivision of the dodecahedral space.

    The first subdivision, taken in the quotient, is only a Delta-complex
    (tetrahedra on either side of a glued face share their vertex sets), so
    cells are tracked by flag and subdivided once more.
    twist = pi/5 gives the Poincare homology sphere.
    """
    verts, faces, maps = face_pairing(twist)
    edges = sorted({tuple(sorted((f[i], f[(i + 1) % 5]))) for f in faces for i in range(5)})
    edge_id = {e: i for i, e in enumerate(edges)}

    # boundary flags: tuples over ('F', i), ('E', i), ('V', i)
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[max(a, b)] = min(a, b)

    flags = []
    for fi, f in enumerate(faces):
        for i in range(5):
            a, b = f[i], f[(i + 1) % 5]
            e = edge_id[tuple(sorted((a, b)))]
            for v in (a, b):
                flags.append((fi, e, v))

    def subflags(fi, e, v):
        elems = [("F", fi), ("E", e), ("V", v)]
        for k in range(1, 4):
            for s in itertools.combinations(elems, k):
                yield s

    for fi, e, v in flags:
        fj, vmap = maps[fi]
        ea, eb = edges[e]
        e2 = edge_id[tuple(sorted((vmap[ea], vmap[eb])))]
        image = {("F", fi): ("F", fj), ("E", e): ("E", e2), ("V", v): ("V", vmap[v])}
        for s in subflags(fi, e, v):
            if ("F", fi) not in s:
                continue
            union(s, tuple(image[x] for x in s))
            # the same boundary cell seen without the face is shared by all faces
        for s in subflags(fi, e, v):
            find(s)

    # cells without the face element must still be identified through any face
    changed = True
    while changed:
        changed = False
        for fi, e, v in flags:
            fj, vmap = maps[fi]
            ea, eb = edges[e]
            e2 = edge_id[tuple(sorted((vmap[ea], vmap[eb])))]
            image = {("E", e): ("E", e2), ("V", v): ("V", vmap[v])}
            for s in (((("E", e),)), ((("V", v),)), (("E", e), ("V", v))):
                t = tuple(image[x] for x in s)
                if find(s) != find(t):
                    union(s, t)
                    changed = True

    labels = {}

    def cell_key(cell):
        boundary = tuple(x for x in cell if x != ("C",))
        if ("C",) in cell:
            return ("int", boundary)
        return ("bd", find(boundary))

    def label(cell):
        key = cell_key(cell)
        if key not in labels:
            labels[key] = len(labels)
        return labels[key]

    tets = []
    for fi, e, v in flags:
        tet = (("C",), ("F", fi), ("E", e), ("V", v))
        for order in itertools.permutations(range(4)):
            chain = []
            remaining = list(tet)
            for idx in order:
                chain.append(label(tuple(x for x in tet if x in remaining)))
                remaining.remove(tet[idx])
            tets.append(tuple(sorted(chain)))
    return len(labels), tets


def closure(facets):
    simplices = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            for s in itertools.combinations(f, k):
                simplices.add(s)
    return simplices


def is_simplicial_manifold(facets):
    if len(set(facets)) != len(facets):
        return False
    for f in facets:
        if len(set(f)) != len(f):
            return False
    tri_count = {}
    for f in facets:
        for t in itertools.combinations(f, 3):
            tri_count[t] = tri_count.get(t, 0) + 1
    return all(c == 2 for c in tri_count.values())


def link(facets, simplex):
    s = set(simplex)
    return {tuple(sorted(set(f) - s)) for f in facets if s <= set(f)}


def link_closure(facets, simplex):
    return closure(link(facets, simplex))


def contract(facets, u, v):
    """Contract edge uv onto u."""
    out = []
    for f in facets:
        if u in f and v in f:
            continue
        if v in f:
            f = tuple(sorted(u if x == v else x for x in f))
        out.append(f)
    return out


def reduce_vertices(facets):
    """Greedy admissible edge contractions until none is left."""
    facets = {tuple(sorted(f)) for f in facets}
    star = {}
    for f in facets:
        for x in f:
            star.setdefault(x, set()).add(f)

    def link_faces(simplex):
        s = set(simplex)
        common = set.intersection(*(star[x] for x in simplex))
        return closure({tuple(sorted(set(f) - s)) for f in common})

    progress = True
    while progress:
        progress = False
        for u in sorted(star):
            if u not in star:
                continue
            nbrs = sorted({x for f in star[u] for x in f} - {u})
            for v in nbrs:
                if link_faces((u,)) & link_faces((v,)) != link_faces((u, v)):
                    continue
                touched = set(star[v])
                for f in touched:
                    for x in f:
                        star[x].discard(f)
                    facets.discard(f)
                    if u in f:
                        continue
                    g = tuple(sorted(u if x == v else x for x in f))
                    facets.add(g)
                    for x in g:
                        star.setdefault(x, set()).add(g)
                del star[v]
                progress = True
                break
    verts = sorted(star)
    relabel = {x: i for i, x in enumerate(verts)}
    return sorted(tuple(sorted(relabel[x] for x in f)) for f in facets)


def bistellar_shuffle(facets, rng, steps):
    """Random 2-3 / 3-2 moves, used to escape contraction dead ends."""
    facets = {tuple(sorted(f)) for f in facets}
    for _ in range(steps):
        fl = sorted(facets)
        if rng.random() < 0.5:
            tri_star = {}
            for f in fl:
                for t in itertools.combinations(f, 3):
                    tri_star.setdefault(t, []).append(f)
            t = rng.choice(sorted(tri_star))
            f1, f2 = tri_star[t]
            d = (set(f1) - set(t)).pop()
            e = (set(f2) - set(t)).pop()
            if any(d in f and e in f for f in fl):
                continue
            facets -= {f1, f2}
            for pair in itertools.combinations(t, 2):
                facets.add(tuple(sorted(pair + (d, e))))
        else:
            edge_star = {}
            for f in fl:
                for ed in itertools.combinations(f, 2):
                    edge_star.setdefault(ed, []).append(f)
            deg3 = [ed for ed, st in sorted(edge_star.items()) if len(st) == 3]
            if not deg3:
                continue
            ed = rng.choice(deg3)
            st = edge_star[ed]
            ring = sorted({x for f in st for x in f} - set(ed))
            if tuple(ring) in {t for f in fl for t in itertools.combinations(f, 3)}:
                continue
            facets -= set(st)
            for x in ed:
                facets.add(tuple(sorted(tuple(ring) + (x,))))
    return sorted(facets)


def greedy_32(facets):
    facets = {tuple(sorted(f)) for f in facets}
    progress = True
    while progress:
        progress = False
        fl = sorted(facets)
        triangles = {t for f in fl for t in itertools.combinations(f, 3)}
        edge_star = {}
        for f in fl:
            for ed in itertools.combinations(f, 2):
                edge_star.setdefault(ed, []).append(f)
        for ed, st in sorted(edge_star.items()):
            if len(st) != 3:
                continue
            ring = tuple(sorted({x for f in st for x in f} - set(ed)))
            if ring in triangles:
                continue
            facets -= set(st)
            for x in ed:
                facets.add(tuple(sorted(ring + (x,))))
            progress = True
            break
    return sorted(facets)


def search(facets, rounds, seed=1):
    import random
    rng = random.Random(seed)

    def key(fs):
        return (len({x for f in fs for x in f}), len(fs))

    best = greedy_32(reduce_vertices(facets))
    current = best
    for _ in range(rounds):
        cand = greedy_32(reduce_vertices(bistellar_shuffle(current, rng, 12)))
        if key(cand) <= key(current) or rng.random() < 0.05:
            current = cand
        if key(cand) < key(best):
            best = cand
    return best


def vertex_links_are_spheres(facets):
    verts = {x for f in facets for x in f}
    for v in verts:
        lk = [tuple(x for x in f if x != v) for f in facets if v in f]
        fv = [0, 0, 0]
        for s in closure(lk):
            fv[len(s) - 1] += 1
        if fv[0] - fv[1] + fv[2] != 2:
            return False
    return True


def f_vector(facets):
    simplices = closure(facets)
    fv = [0] * 4
    for s in simplices:
        fv[len(s) - 1] += 1
    return fv


def projective_3_space():
    """Barycentric subdivision of the boundary of the 4-dimensional
    cross-polytope modulo the antipodal map."""
    atoms = [(i, s) for i in range(4) for s in (1, -1)]
    faces = [f for k in range(1, 5) for f in itertools.combinations(atoms, k)
             if len({i for i, _ in f}) == k]

    def canon(f):
        g = tuple(sorted((i, -s) for i, s in f))
        return min(f, g)

    labels = {}
    tets = []
    for top in (f for f in faces if len(f) == 4):
        for order in itertools.permutations(top):
            chain = [canon(tuple(sorted(order[:k]))) for k in range(1, 5)]
            ids = []
            for c in chain:
                labels.setdefault(c, len(labels))
                ids.append(labels[c])
            tets.append(tuple(sorted(ids)))
    return len(labels), sorted(set(tets))


def main():
    space = sys.argv[2] if len(sys.argv) > 2 else "poincare"
    if space == "poincare":
        n, tets = dodecahedral_space(math.pi / 5)
    else:
        n, tets = projective_3_space()
    if not is_simplicial_manifold(tets):
        sys.exit("quotient subdivision is not a simplicial 3-manifold")
    print("initial", n, f_vector(tets), file=sys.stderr)
    reduced = search(tets, rounds=600, seed=1)
    assert is_simplicial_manifold(reduced) and vertex_links_are_spheres(reduced)
    fv = f_vector(reduced)
    print("reduced", fv, file=sys.stderr)
    out = {"vertices": fv[0], "facets": [list(f) for f in reduced]}
    text = json.dumps(out, separators=(",", ":"))
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    main()
