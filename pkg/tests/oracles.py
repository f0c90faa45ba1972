"""Independent brute-force oracles used to pin expected values.

Everything here avoids the library's elimination/kernel/solve routines:
membership and spans are computed by explicit enumeration, behaviors by
walking branches.  Kept deliberately dumb.
"""

from __future__ import annotations

from itertools import product as iter_product


def all_vectors(p: int, n: int):
    return iter_product(range(p), repeat=n)


def span_set(p: int, vectors) -> set[tuple[int, ...]]:
    """All linear combinations of the given vectors, by enumeration."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return {()}
    n = len(vectors[0])
    out = set()
    for coeffs in iter_product(range(p), repeat=len(vectors)):
        v = [0] * n
        for c, vec in zip(coeffs, vectors):
            for i in range(n):
                v[i] = (v[i] + c * vec[i]) % p
        out.add(tuple(v))
    return out


def subspace_set(s) -> set[tuple[int, ...]]:
    """Member set of a library Subspace, via combination enumeration only."""
    if s.dim == 0:
        return {tuple([0] * s.ambient_dim)}
    return span_set(s.field.p, s.basis.entries)


def orthogonal_set(p: int, n: int, members: set[tuple[int, ...]]) -> set[tuple[int, ...]]:
    out = set()
    for v in all_vectors(p, n):
        if all(sum(a * b for a, b in zip(v, w)) % p == 0 for w in members):
            out.add(v)
    return out


def branch_set(t, i) -> set[tuple[int, ...]]:
    return subspace_set(t.constraints[i])


def enumerate_behavior(t) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All valid trajectories (symbol word, state word) by branch walking."""
    m = t.m
    sdims = t.state_dims
    adims = t.symbol_dims
    branches = [sorted(branch_set(t, i)) for i in range(m)]
    out = set()
    for s0 in all_vectors(t.field.p, sdims[0]):
        partial = [((), s0)]
        for i in range(m):
            nxt = []
            dl = sdims[i]
            da = adims[i]
            for prefix, state in partial:
                for b in branches[i]:
                    if b[:dl] != state:
                        continue
                    sym = b[dl:dl + da]
                    nxt.append((prefix + (sym, state), b[dl + da:]))
            partial = nxt
        for prefix, last in partial:
            if last != s0:
                continue
            syms = []
            states = []
            for k in range(m):
                syms.extend(prefix[2 * k])
                states.extend(prefix[2 * k + 1])
            out.add((tuple(syms), tuple(states)))
    return out


def enumerate_code(t) -> set[tuple[int, ...]]:
    return {a for a, _ in enumerate_behavior(t)}


def enumerate_fragment_paths(t, start: int, length: int):
    """All valid paths over constraints start..start+length-1 (not closed).

    Yields (symbols, states) where states has length+1 blocks
    (s_start .. s_{start+length}).
    """
    m = t.m
    sdims = t.state_dims
    adims = t.symbol_dims
    p = t.field.p
    first = all_vectors(p, sdims[start % m])
    partial = [((), s) for s in first]
    for off in range(length):
        i = (start + off) % m
        dl = sdims[i]
        da = adims[i]
        branches = sorted(branch_set(t, i))
        nxt = []
        for prefix, state in partial:
            for b in branches:
                if b[:dl] != state:
                    continue
                nxt.append((prefix + (b[dl:dl + da], state), b[dl + da:]))
        partial = nxt
    for prefix, last in partial:
        syms = []
        states = []
        for k in range(length):
            syms.extend(prefix[2 * k])
            states.extend(prefix[2 * k + 1])
        states.extend(last)
        yield tuple(syms), tuple(states)


def min_span_length(p: int, codewords: set[tuple[int, ...]], m: int) -> int:
    """Minimum circular covering-interval length over nonzero codewords."""
    best = None
    for w in codewords:
        support = [i for i, x in enumerate(w) if x]
        if not support:
            continue
        for a in range(m):
            if w[a] == 0:
                continue
            r = max((q - a) % m for q in support) + 1
            if best is None or r < best:
                best = r
    if best is None:
        raise ValueError("zero code has no spans")
    return best
