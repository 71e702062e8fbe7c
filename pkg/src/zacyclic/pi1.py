"""Fundamental groups: edge-path presentations, Tietze simplification,
abelianization, epimorphisms onto permutation groups and Todd-Coxeter.

Words are tuples of non-zero ints: ``k`` stands for generator ``k-1`` and
``-k`` for its inverse.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .complex import ComplexError, SimplicialComplex
from .homology import HomologyGroup, smith_normal_form

Word = tuple


def free_reduce(w) -> Word:
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w) -> Word:
    w = list(free_reduce(w))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def inverse(w) -> Word:
    return tuple(-x for x in reversed(w))


def _canonical_relator(w) -> Word:
    """Smallest cyclic rotation of ``w`` or of its inverse."""
    if not w:
        return w
    cands = []
    for v in (w, inverse(w)):
        cands += [v[i:] + v[:i] for i in range(len(v))]
    return min(cands, key=lambda v: (len(v), [abs(x) for x in v], v))


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.generator_count:
                    raise ValueError(f"letter {x} out of range")

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def pairs(self):
        """Relators as lists of (generator index, exponent)."""
        return [[(abs(x) - 1, 1 if x > 0 else -1) for x in r] for r in self.relators]

    def __str__(self):
        names = [_gen_name(i) for i in range(self.generator_count)]
        rels = [_spell(r, names) for r in self.relators]
        return f"< {', '.join(names)} | {', '.join(rels)} >"


def _gen_name(i):
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[i] if i < 26 else f"x{i}"


def _spell(w, names):
    return "".join(names[abs(x) - 1] + ("" if x > 0 else "^-1") for x in w) or "1"


def presentation(n: int, relators) -> Presentation:
    rels = []
    for r in relators:
        r = cyclic_reduce(r)
        if r:
            rels.append(r)
    return Presentation(n, tuple(rels))


# -- edge-path group ------------------------------------------------------------


def spanning_tree(K: SimplicialComplex, base: str) -> set:
    """BFS tree from ``base`` visiting neighbours in label order."""
    tree, seen, queue = set(), {base}, deque([base])
    nbrs = {v: [] for v in K.vertices}
    for a, b in K.faces(1):
        nbrs[a].append(b)
        nbrs[b].append(a)
    while queue:
        v = queue.popleft()
        for w in sorted(nbrs[v]):
            if w not in seen:
                seen.add(w)
                tree.add(tuple(sorted((v, w))))
                queue.append(w)
    return tree


def edge_path_presentation(K: SimplicialComplex, base: str) -> Presentation:
    """One generator per non-tree edge (oriented from smaller to larger label),
    one relator per triangle."""
    if base not in K.vertices:
        raise ComplexError(f"unknown basepoint {base!r}")
    if K.dim < 1 and len(K.vertices) > 1:
        raise ComplexError("complex is disconnected")
    if not K.is_connected():
        raise ComplexError("complex is disconnected")
    tree = spanning_tree(K, base)
    gens = {e: i + 1 for i, e in enumerate(e for e in K.faces(1) if e not in tree)}

    def letter(a, b):
        if (a, b) in gens:
            return (gens[(a, b)],)
        if (b, a) in gens:
            return (-gens[(b, a)],)
        return ()

    rels = []
    for a, b, c in K.faces(2):
        rels.append(free_reduce(letter(a, b) + letter(b, c) + letter(c, a)))
    return Presentation(len(gens), tuple(rels))


# -- Tietze transformations -----------------------------------------------------


def _substitute(w, g, expr):
    """Replace generator ``g`` (1-based) in ``w`` by the word ``expr``."""
    out = []
    inv = inverse(expr)
    for x in w:
        if x == g:
            out.extend(expr)
        elif x == -g:
            out.extend(inv)
        else:
            out.append(x)
    return cyclic_reduce(out)


def _cleanup(rels):
    seen, out = set(), []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = _canonical_relator(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
    return out


def _renumber(n, rels, gone):
    keep = [g for g in range(1, n + 1) if g != gone]
    new = {g: i + 1 for i, g in enumerate(keep)}
    return n - 1, [tuple(new[abs(x)] * (1 if x > 0 else -1) for x in r) for r in rels]


def tietze_simplify(P: Presentation, max_total_length: int = 10_000, max_passes: int = 10_000):
    """Eliminate generators that occur exactly once in some relator.

    Relators are kept freely and cyclically reduced, empty and duplicate
    relators are dropped.  Among the possible eliminations the one giving
    the smallest total length is taken (short defining relators first on
    ties).  Returns ``(presentation, budget_exhausted)``.
    """
    n = P.generator_count
    rels = _cleanup(P.relators)
    exhausted = False
    for _ in range(max_passes):
        best = None
        for ri, r in enumerate(rels):
            counts = Counter(abs(x) for x in r)
            for pos, x in enumerate(r):
                g = abs(x)
                if counts[g] != 1:
                    continue
                # r = A x B  =>  x = A^-1 B^-1 rotated: r rotated to start at x
                rot = r[pos:] + r[:pos]
                rest = rot[1:]
                expr = inverse(rest) if x > 0 else rest
                others = [rels[k] for k in range(len(rels)) if k != ri]
                occ = sum(1 for o in others for y in o if abs(y) == g)
                cost = sum(len(o) for o in others) + occ * (len(expr) - 1)
                key = (cost, len(r), ri, g)
                if best is None or key < best[0]:
                    best = (key, ri, g, expr)
        if best is None:
            break
        (cost, *_), ri, g, expr = best
        if cost > max_total_length:
            exhausted = True
            break
        others = [_substitute(rels[k], g, expr) for k in range(len(rels)) if k != ri]
        n, rels = _renumber(n, others, g)
        rels = _cleanup(rels)
    else:
        exhausted = True
    return Presentation(n, tuple(rels)), exhausted


def abelianization(P: Presentation) -> HomologyGroup:
    n = P.generator_count
    M = [[0] * n for _ in P.relators]
    for i, r in enumerate(P.relators):
        for x in r:
            M[i][abs(x) - 1] += 1 if x > 0 else -1
    if not M or n == 0:
        return HomologyGroup(n)
    d = smith_normal_form(M, transforms=False).diagonal
    return HomologyGroup(n - len(d), tuple(x for x in d if x > 1))


# -- permutation groups -------------------------------------------------------


def perm_mul(p, q):
    """``p * q``: apply ``p`` first, then ``q`` (right action)."""
    return tuple(q[i] for i in p)


def perm_inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def closure(gens, degree=None) -> list[tuple]:
    """Elements of the group generated by ``gens`` in sorted order."""
    if degree is None:
        degree = len(gens[0])
    e = tuple(range(degree))
    seen, queue = {e}, deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = perm_mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def alternating_group(n: int = 5) -> list[tuple]:
    """A_n from the 3-cycles (0 1 i)."""
    gens = []
    for i in range(2, n):
        p = list(range(n))
        p[0], p[1], p[i] = 1, i, 0
        gens.append(tuple(p))
    return closure(gens, n) if gens else [tuple(range(n))]


def eval_word(w, images, degree):
    x = tuple(range(degree))
    invs = {}
    for a in w:
        g = abs(a) - 1
        if a > 0:
            x = perm_mul(x, images[g])
        else:
            if g not in invs:
                invs[g] = perm_inv(images[g])
            x = perm_mul(x, invs[g])
    return x


def cycles(p) -> str:
    """Cycle notation on points 1..n."""
    out, seen = [], set()
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(str(j + 1))
            j = p[j]
        out.append("(" + " ".join(c) + ")")
    return "".join(out) or "()"


@dataclass(frozen=True)
class GroupHom:
    images: tuple[tuple[int, ...], ...]

    def respects(self, P: Presentation) -> bool:
        degree = len(self.images[0]) if self.images else 0
        e = tuple(range(degree))
        return all(eval_word(r, self.images, degree) == e for r in P.relators)


class SearchTooLarge(ValueError):
    pass


def find_epimorphism(P: Presentation, target_gens, max_generators: int = 8):
    """Backtracking search for a surjection onto the permutation group
    generated by ``target_gens``; relators are checked as soon as all their
    generators have images.  Returns a :class:`GroupHom` or None."""
    n = P.generator_count
    if n > max_generators:
        raise SearchTooLarge(f"{n} generators exceed the search bound {max_generators}; simplify first")
    elements = closure(list(target_gens))
    order = len(elements)
    if n == 0 or order == 1:
        return None
    degree = len(elements[0])
    e = tuple(range(degree))
    part = Counter(abs(x) - 1 for r in P.relators for x in set(r))
    gen_order = sorted(range(n), key=lambda g: (-part[g], g))
    pos = {g: i for i, g in enumerate(gen_order)}
    # relators checked at the depth where their last generator is assigned
    due = [[] for _ in range(n)]
    for r in P.relators:
        due[max(pos[abs(x) - 1] for x in r)].append(r)
    images = [None] * n

    def rec(k):
        if k == n:
            if len(closure(images)) == order:
                return GroupHom(tuple(images))
            return None
        g = gen_order[k]
        for x in elements:
            images[g] = x
            if all(eval_word(r, images, degree) == e for r in due[k]):
                res = rec(k + 1)
                if res is not None:
                    return res
        images[g] = None
        return None

    hom = rec(0)
    if hom is not None and not hom.respects(P):
        raise AssertionError("epimorphism failed independent re-verification")
    return hom


# -- coset enumeration ----------------------------------------------------------


def coset_enumeration(P: Presentation, max_cosets: int = 100_000, subgroup=()):
    """Todd-Coxeter, HLT strategy.  Returns the index of the subgroup
    generated by ``subgroup`` (the group order for the trivial subgroup), or
    the string ``"exceeded"`` if more than ``max_cosets`` cosets are needed."""
    n = P.generator_count
    ncols = 2 * n
    col = lambda x: 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1
    inv = lambda c: c ^ 1
    rels = [[col(x) for x in r] for r in P.relators]
    subs = [[col(x) for x in free_reduce(w)] for w in subgroup]
    table = [[None] * ncols]
    parent = [0]

    class Overflow(Exception):
        pass

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c, x):
        if len(table) >= max_cosets:
            raise Overflow
        d = len(table)
        table.append([None] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][inv(x)] = c
        return d

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a == b:
            return
        if b < a:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(ncols):
                f = table[e][x]
                if f is None:
                    continue
                if table[f][inv(x)] == e:
                    table[f][inv(x)] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][inv(x)] is not None:
                    merge(e1, table[f1][inv(x)], queue)
                else:
                    table[e1][x] = f1
                    table[f1][inv(x)] = e1

    def scan_and_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv(w[j])] is not None:
                b = table[b][inv(w[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv(w[i])] = f
                return
            define(f, w[i])

    try:
        for w in subs:
            scan_and_fill(0, w)
        c = 0
        while c < len(table):
            for w in rels:
                if parent[c] != c:
                    break
                scan_and_fill(c, w)
            if parent[c] == c:
                for x in range(ncols):
                    if table[c][x] is None:
                        define(c, x)
            c += 1
    except Overflow:
        return "exceeded"
    return sum(1 for c in range(len(table)) if parent[c] == c)
