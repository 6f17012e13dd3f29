"""Independent brute-force references used to freeze expected values.

Nothing here imports the code under test.
"""

from itertools import chain, combinations, combinations_with_replacement, permutations


def all_faces(facets):
    verts = sorted(set(chain.from_iterable(facets)))
    fs = [set(f) for f in facets]
    return [
        frozenset(c)
        for k in range(len(verts) + 1)
        for c in combinations(verts, k)
        if any(set(c) <= f for f in fs)
    ]


def f_vector_by_subsets(facets):
    faces = all_faces(facets)
    d = max(len(f) for f in facets)
    return tuple(sum(1 for f in faces if len(f) == k) for k in range(d + 1))


def chain_counts(facets):
    """f-vector of the order complex of the non-empty faces, by testing every subset."""
    nonempty = [f for f in all_faces(facets) if f]
    d = max(len(f) for f in facets)
    counts = [1] + [0] * d
    for k in range(1, d + 1):
        for sub in combinations(nonempty, k):
            ordered = sorted(sub, key=len)
            if all(a < b for a, b in zip(ordered, ordered[1:])):
                counts[k] += 1
    return tuple(counts)


def monomials_with_face_support(facets, degree):
    verts = sorted(set(chain.from_iterable(facets)))
    faces = set(all_faces(facets))
    return [m for m in combinations_with_replacement(verts, degree) if frozenset(m) in faces]


def rank_mod_p(rows, p):
    """Plain Gaussian elimination on lists of ints."""
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def refined_eulerian(d):
    """{(i, j): count} over all permutations of [d]."""
    out = {}
    for sigma in permutations(range(1, d + 1)):
        des = sum(1 for a, b in zip(sigma, sigma[1:]) if a > b)
        out[des, sigma[0]] = out.get((des, sigma[0]), 0) + 1
    return out


def is_compressed_order_ideal(a):
    """M-sequence test by building lex-final segments and checking closure under division."""
    if not a or a[0] != 1 or any(x < 0 for x in a):
        return False
    if len(a) == 1:
        return True
    n = a[1]
    prev = {()}
    for i in range(1, len(a)):
        monos = sorted(combinations_with_replacement(range(n), i))
        if a[i] > len(monos):
            return False
        seg = monos[len(monos) - a[i]:] if a[i] else []
        for m in seg:
            if any(m[:k] + m[k + 1:] not in prev for k in range(len(m))):
                return False
        prev = set(seg)
    return True


def is_shelling_by_definition(facets_in_order):
    """Condition (b) directly: new faces at each step have one minimal element."""
    seen = set()
    for j, f in enumerate(facets_in_order):
        members = sorted(f)
        new = [frozenset(c) for k in range(len(members) + 1) for c in combinations(members, k)
               if frozenset(c) not in seen]
        minimal = [s for s in new if not any(t < s for t in new)]
        if j > 0 and len(minimal) != 1:
            return False
        seen.update(frozenset(c) for k in range(len(members) + 1) for c in combinations(members, k))
    return True


def any_shelling_exists(facets):
    return any(is_shelling_by_definition(order) for order in permutations(facets))
