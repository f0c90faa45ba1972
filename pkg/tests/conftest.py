"""Shared fixtures: the bundled figures and a reproducible random trellis set.

The random set is size-filtered so that the brute-force path enumeration
oracles stay cheap; the filters use library dimension counts only to size
the instances, never to decide an expected value.
"""

from __future__ import annotations

import random

import pytest

from trellislab.galois import FieldSpec, Subspace
from trellislab.trellis import Trellis, dualize
from trellislab.fragments import fragment
from trellislab.trellis import Span
from trellislab.corpus import build_corpus


def random_subspace(rng: random.Random, field: FieldSpec, n: int, dim: int | None = None) -> Subspace:
    if dim is None:
        dim = rng.randint(0, n)
    rows = [[rng.randrange(field.p) for _ in range(n)] for _ in range(dim)]
    return Subspace.span(field, n, rows)


def random_trellis(rng: random.Random, p: int) -> Trellis:
    field = FieldSpec(p)
    m = rng.randint(1, 5)
    sdims = tuple(rng.randint(0, 2) for _ in range(m))
    adims = tuple(rng.choice((0, 1, 1, 1, 2)) for _ in range(m))
    constraints = []
    for i in range(m):
        amb = sdims[i] + adims[i] + sdims[(i + 1) % m]
        target = rng.randint(0, amb)
        constraints.append(random_subspace(rng, field, amb, target))
    return Trellis(field, m, adims, sdims, tuple(constraints))


def _small_enough(t: Trellis) -> bool:
    cap = 9 if t.field.p == 2 else 6
    if fragment(t, Span(0, t.m, t.m)).internal_behavior.dim > cap:
        return False
    td = dualize(t)
    if fragment(td, Span(0, t.m, t.m)).internal_behavior.dim > cap:
        return False
    return True


def make_random_set(count: int = 200, seed: int = 20130) -> list[Trellis]:
    rng = random.Random(seed)
    out: list[Trellis] = []
    toggle = 0
    while len(out) < count:
        p = 2 if toggle % 2 == 0 else 3
        toggle += 1
        t = random_trellis(rng, p)
        if _small_enough(t):
            out.append(t)
    return out


@pytest.fixture(scope="session")
def figures() -> dict[str, Trellis]:
    return build_corpus().trellises


@pytest.fixture(scope="session")
def random_set() -> list[Trellis]:
    return make_random_set()


@pytest.fixture(scope="session")
def rng() -> random.Random:
    return random.Random(4261)
