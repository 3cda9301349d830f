"""Independent brute-force oracles.

Nothing here calls into the closed-form machinery it is used to check:
label matrices are rebuilt from the textual definitions of the
constructions, consistency is a plain row filter, shattering is checked on
every column subset, and orientations are enumerated edge by edge.
"""
from __future__ import annotations

import itertools

import numpy as np


def majority_lb_matrix(r, d):
    """Rows: h*, then 1[x in T] for each d-subset T in lexicographic order. Columns: x's then y's."""
    subsets = list(itertools.combinations(range(1, r + 1), d))
    cols = r + len(subsets)
    rows = [[0] * cols]
    for t in subsets:
        rows.append([1 if i + 1 in t else 0 for i in range(r)] + [0] * len(subsets))
    return np.array(rows, dtype=np.uint8)


def majority_lb_rand_matrix(r, d, K):
    """Copy (T, j): 1 on x_i (i in T), 0 on y_T, 1 on the other y's, 1 on z_j only."""
    subsets = list(itertools.combinations(range(1, r + 1), d))
    rows = [[0] * (r + len(subsets) + K)]
    for t in subsets:
        for j in range(1, K + 1):
            row = [1 if i + 1 in t else 0 for i in range(r)]
            row += [0 if s == t else 1 for s in subsets]
            row += [1 if jj == j else 0 for jj in range(1, K + 1)]
            rows.append(row)
    return np.array(rows, dtype=np.uint8)


def oig_lb_matrix(r):
    rows = [[0] * (2 * r)]
    for i in range(r):
        row = [0] * (2 * r)
        row[i] = row[r + i] = 1
        rows.append(row)
    return np.array(rows, dtype=np.uint8)


def consistent_rows(full, points, labels):
    """Indices of the rows of a full-domain matrix agreeing with every labeled example."""
    if len(points) == 0:
        return np.arange(full.shape[0])
    sub = full[:, np.asarray(points)]
    return np.flatnonzero((sub == np.asarray(labels)[None, :]).all(axis=1))


def shatters(full, cols):
    patterns = {tuple(row) for row in full[:, list(cols)]}
    return len(patterns) == 2 ** len(cols)


def vc_brute(full):
    best = 0
    for k in range(1, full.shape[1] + 1):
        if any(shatters(full, c) for c in itertools.combinations(range(full.shape[1]), k)):
            best = k
        else:
            break
    return best


def all_orientations(edges, nv):
    """Yield (heads tuple, out-degree vector) for every orientation of an edge list."""
    for choice in itertools.product((0, 1), repeat=len(edges)):
        heads, out = [], [0] * nv
        for (u, v), c in zip(edges, choice):
            head, tail = (v, u) if c else (u, v)
            heads.append(head)
            out[tail] += 1
        yield tuple(heads), out


def min_max_outdegree_brute(edges, nv):
    if not edges:
        return 0
    return min(max(out) for _, out in all_orientations(edges, nv))


def hamming_graph(patterns):
    """Distinct patterns (sorted) and all pairs at Hamming distance one."""
    verts = sorted(set(map(tuple, patterns)))
    edges = []
    for a, b in itertools.combinations(range(len(verts)), 2):
        diff = [k for k in range(len(verts[a])) if verts[a][k] != verts[b][k]]
        if len(diff) == 1:
            edges.append((a, b, diff[0]))
    return verts, edges


def oig_rand_proba_brute(full, train_points, train_labels, test_point):
    """P(predict 1) of the uniform-over-optimal-orientations OIG predictor, from scratch."""
    pts = list(train_points) + [test_point]
    verts, edges = hamming_graph(full[:, pts])
    lab = list(train_labels)
    v0 = tuple(lab + [0]) if tuple(lab + [0]) in verts else None
    v1 = tuple(lab + [1]) if tuple(lab + [1]) in verts else None
    if v1 is None:
        return 0.0
    if v0 is None:
        return 1.0
    i0, i1 = verts.index(v0), verts.index(v1)
    pairs = [(a, b) for a, b, _ in edges]
    e = pairs.index((min(i0, i1), max(i0, i1)))
    orients = list(all_orientations(pairs, len(verts)))
    tau = min(max(out) for _, out in orients)
    best = [h for h, out in orients if max(out) == tau]
    return sum(h[e] == i1 for h in best) / len(best)
