"""Isomorphism search between finite quandles."""

from __future__ import annotations

from .quandle import FiniteQuandle, orbits, right_translation


def _fingerprints(q: FiniteQuandle):
    n = q.size
    orbit_size = {}
    for orb in orbits(q):
        for x in orb:
            orbit_size[x] = len(orb)
    out = []
    for x in range(n):
        perm, order = right_translation(q, x)
        fixed = sum(1 for y in range(n) if perm[y] == y)
        lrow = set(q.table[x])
        out.append((orbit_size[x], order, fixed, len(lrow)))
    return out


def is_isomorphic(q1: FiniteQuandle, q2: FiniteQuandle):
    """Lexicographically least isomorphism ``q1 -> q2`` as a tuple, or None.

    Elements of ``q1`` are assigned in index order and candidate images
    tried in increasing index order, so the first complete assignment is
    the least under the image-sequence order.  Fingerprints (orbit size,
    translation order, fixed points, left-image size) only filter.
    """
    n = q1.size
    if n != q2.size:
        return None
    f1, f2 = _fingerprints(q1), _fingerprints(q2)
    if sorted(f1) != sorted(f2):
        return None
    candidates = [[b for b in range(n) if f2[b] == f1[a]] for a in range(n)]
    t1, t2 = q1.table, q2.table
    image = [-1] * n
    used = [False] * n

    def consistent(a):
        fa = image[a]
        for b in range(a + 1):
            fb = image[b]
            ab = t1[a][b]
            if ab <= a and image[ab] != t2[fa][fb]:
                return False
            ba = t1[b][a]
            if ba <= a and image[ba] != t2[fb][fa]:
                return False
        # products landing on unassigned elements must not hit used images
        for b in range(a + 1):
            for x, y in ((a, b), (b, a)):
                p = t1[x][y]
                if p > a and used[t2[image[x]][image[y]]]:
                    return False
        return True

    def extend(a):
        if a == n:
            return True
        for b in candidates[a]:
            if used[b]:
                continue
            image[a] = b
            used[b] = True
            if consistent(a) and extend(a + 1):
                return True
            used[b] = False
        image[a] = -1
        return False

    if extend(0):
        return tuple(image)
    return None


def is_homomorphism(q1: FiniteQuandle, q2: FiniteQuandle, f):
    return all(
        f[q1.table[x][y]] == q2.table[f[x]][f[y]]
        for x in range(q1.size)
        for y in range(q1.size)
    )
