"""Independent brute-force oracles used by the tests.

Each oracle computes an expected value by a route different from the library
code it checks: explicit binomial formulas, Lagrange inversion, coordinate
lattices, adjacency matrix powers, and non-backtracking path enumeration.
"""

from fractions import Fraction

import numpy as np

from specrad.series import QQ, Series


def binomial_series(alpha: Fraction, scale, n):
    """(1 + scale*t)^alpha via the explicit product formula for C(alpha, k)."""
    coeffs = [QQ(1)]
    c = QQ(1)
    for k in range(1, n + 1):
        c = c * (QQ(alpha.numerator, alpha.denominator) - (k - 1)) / k
        coeffs.append(c * QQ(scale) ** k)
    return Series(coeffs, n)


def geometric_series(ratio, n):
    """1/(1 - ratio*t) summed term by term."""
    coeffs = [QQ(1)]
    for _ in range(n):
        coeffs.append(coeffs[-1] * ratio)
    return Series(coeffs, n)


def lagrange_inversion(a: Series):
    """[t^n] revert(a) = (1/n) [w^(n-1)] (w / a(w))^n, computed directly."""
    n = a.trunc_order
    base = a.shift_down(1).reciprocal()      # w/a(w) as a series in w
    out = [QQ(0), QQ(0)]
    power = base
    out[1] = power.coeffs[0]
    for k in range(2, n + 1):
        power = power * base.truncate(power.trunc_order)
        out.append(power.coeffs[k - 1] / k)
    return Series(out[:n + 1], n)


def cycle_walk_matrix(k, n_max):
    """Closed-walk counts on the k-cycle via adjacency matrix powers."""
    A = np.zeros((k, k), dtype=object)
    for i in range(k):
        A[i][(i + 1) % k] += 1
        A[i][(i - 1) % k] += 1
    out = [1]
    P = np.eye(k, dtype=object)
    for _ in range(n_max):
        P = P @ A
        out.append(int(P[0][0]))
    return out


def square_lattice_ball(radius):
    """Ball of Z^2 by coordinates: adjacency dict and layer sizes."""
    pts = [(x, y) for x in range(-radius, radius + 1)
           for y in range(-radius, radius + 1) if abs(x) + abs(y) <= radius]
    pts.sort(key=lambda p: (abs(p[0]) + abs(p[1]), p))
    index = {p: i for i, p in enumerate(pts)}
    adj = [[] for _ in pts]
    for (x, y), i in index.items():
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            q = (x + dx, y + dy)
            if q in index:
                adj[i].append(index[q])
    layers = {}
    for (x, y) in pts:
        layers[abs(x) + abs(y)] = layers.get(abs(x) + abs(y), 0) + 1
    return adj, [layers[k] for k in sorted(layers)]


def closed_walks(adj, n_max, root=0):
    """Exact closed-walk counts at ``root`` on an adjacency-list graph."""
    vec = {root: 1}
    counts = [1]
    for _ in range(n_max):
        new = {}
        for v, c in vec.items():
            for w in adj[v]:
                new[w] = new.get(w, 0) + c
        vec = new
        counts.append(vec.get(root, 0))
    return counts


def reduced_circuits(adj, length, root=0):
    """Count backtrack-free closed walks of the given length at the root."""
    frontier = {(root, -1): 1}
    for _ in range(length):
        new = {}
        for (v, prev), c in frontier.items():
            for w in adj[v]:
                if w == prev:
                    continue
                key = (w, v)
                new[key] = new.get(key, 0) + c
        frontier = new
    return sum(c for (v, _), c in frontier.items() if v == root)
