"""Independent reference computations used to freeze derived expectations."""
from fractions import Fraction
from itertools import permutations


def perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def mat_inverse(m):
    """Gauss-Jordan inverse over Q, no symplectic structure used."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_vec(m, v):
    return [sum(Fraction(a) * b for a, b in zip(row, v)) for row in m]


def form(g, a, b):
    if a < g and b == a + g:
        return 1
    if a >= g and b == a - g:
        return -1
    return 0


def det(m):
    n = len(m)
    return sum(perm_sign(p) * _prod(m[i][p[i]] for i in range(n)) for p in permutations(range(n)))


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out


def decomposable_pairing(hom_vectors, coh_vectors):
    """<a_1 ^ ... ^ a_k, u_1 ^ ... ^ u_k> = det(<a_i, u_j>)."""
    return det([[sum(Fraction(a) * b for a, b in zip(h, c)) for c in coh_vectors] for h in hom_vectors])


def wedge_coords(vectors, n):
    """Coordinates of v_1 ^ ... ^ v_k in the lexicographic basis, by minors."""
    from itertools import combinations
    k = len(vectors)
    out = {}
    for cols in combinations(range(n), k):
        d = det([[v[c] for c in cols] for v in vectors])
        if d:
            out[cols] = d
    return out


def contraction_decomposable(g, vectors):
    """2 * sum_{i<j} (-1)^{i+j-1} <a_i, a_j> a_1 ^ .. omit i, j .. ^ a_k, positions 1-based."""
    k = len(vectors)
    total = {}
    for i in range(k):
        for j in range(i + 1, k):
            pair = sum(Fraction(vectors[i][a]) * vectors[j][b] * form(g, a, b)
                       for a in range(2 * g) for b in range(2 * g))
            if not pair:
                continue
            sign = (-1) ** ((i + 1) + (j + 1) - 1)
            rest = [v for n, v in enumerate(vectors) if n not in (i, j)]
            coords = wedge_coords(rest, 2 * g) if rest else {(): Fraction(1)}
            for key, c in coords.items():
                total[key] = total.get(key, 0) + 2 * sign * pair * c
    return {k: v for k, v in total.items() if v}


def alpha_literal_scalar(fluxes):
    """k = 1 real value on a pair of identity-component fluxes: iota(u, v)."""
    u, v = fluxes
    g = len(u) // 2
    return sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g))
