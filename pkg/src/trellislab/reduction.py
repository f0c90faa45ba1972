"""Constructive trellis transformations and reduction procedures.

Primitive surgery (trim_to / merge_to / branch_trim / branch_expand) returns
plain trellises and may change the realized code; everything wrapped in a
ReductionStep is checked to preserve the code exactly and carries enough
parameters to be replayed deterministically from a serialized record.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import combinations, product as iter_product
from math import comb

from .galois import (
    Mat,
    Subspace,
    complement,
    cross_section,
    direct_sum,
    invert,
    lattice,
    orthogonal,
    project,
    rref,
    solve_particular,
)
from .trellis import (
    Generator,
    Span,
    Trellis,
    behavior,
    dualize,
    elementary,
    is_isomorphic,
    product,
    realized_code,
    time_reversed,
)
from .analysis import global_trim_flags, local_flags, observable, controllable
from .fragments import fragment, transition_spaces, unobservable_state_space


# ---------------------------------------------------------------------------
# primitive surgery


def _restrict_block(c: Subspace, lo: int, hi: int, y: Subspace) -> Subspace:
    """Members of c whose coordinates lo..hi-1 lie in y, with that block
    re-expressed in y's basis coordinates (pivot read-off)."""
    field_ = c.field
    left = Subspace.full(field_, lo)
    right = Subspace.full(field_, c.ambient_dim - hi)
    window = direct_sum(direct_sum(left, y), right)
    _, inter = lattice(c, window)
    piv = y.pivots()
    rows = [
        list(row[:lo]) + [row[lo + q] for q in piv] + list(row[hi:])
        for row in inter.basis.entries
    ]
    return Subspace.span(field_, lo + y.dim + (c.ambient_dim - hi), rows)


def trim_to(t: Trellis, i: int, y: Subspace) -> Trellis:
    """Restrict the state space S_i to y and both adjacent constraint codes
    accordingly; the new state space uses y's canonical basis coordinates.
    The realized code is not necessarily preserved."""
    i %= t.m
    if y.ambient_dim != t.state_dims[i] or y.field != t.field:
        raise ValueError("trim subspace does not live in S_i")
    prev = (i - 1) % t.m
    sdims = list(t.state_dims)
    sdims[i] = y.dim
    constraints = list(t.constraints)
    if t.m == 1:
        da = t.symbol_dims[0]
        n = t.state_dims[0]
        c = _restrict_block(t.constraints[0], 0, n, y)
        c = _restrict_block(c, y.dim + da, y.dim + da + n, y)
        constraints[0] = c
    else:
        lo = t.state_dims[prev] + t.symbol_dims[prev]
        constraints[prev] = _restrict_block(
            t.constraints[prev], lo, lo + t.state_dims[i], y
        )
        constraints[i] = _restrict_block(t.constraints[i], 0, t.state_dims[i], y)
    return Trellis(t.field, t.m, t.symbol_dims, tuple(sdims), tuple(constraints))


def _quotient_map(y: Subspace) -> Mat:
    """Matrix of the projection S -> W along y, where W is the deterministic
    complement of y; output coordinates are W's basis coordinates."""
    field_ = y.field
    n = y.ambient_dim
    w = complement(y, Subspace.full(field_, n))
    basis = Mat.from_rows(field_, n, list(w.basis.entries) + list(y.basis.entries))
    minv = invert(basis)
    cols = list(range(w.dim))
    rows = [[minv.entries[r][c] for c in cols] for r in range(n)]
    return Mat.from_rows(field_, w.dim, rows)


def _map_block(c: Subspace, lo: int, hi: int, m: Mat) -> Subspace:
    field_ = c.field
    rows = []
    for row in c.basis.entries:
        block = row[lo:hi]
        image = [sum(block[k] * m.entries[k][j] for k in range(hi - lo)) % field_.p for j in range(m.cols)]
        rows.append(list(row[:lo]) + image + list(row[hi:]))
    return Subspace.span(field_, c.ambient_dim - (hi - lo) + m.cols, rows)


def merge_to(t: Trellis, i: int, y: Subspace) -> Trellis:
    """Replace S_i by the quotient modulo y, realized through a fixed linear
    section (the deterministic complement of y).  The realized code is not
    necessarily preserved."""
    i %= t.m
    if y.ambient_dim != t.state_dims[i] or y.field != t.field:
        raise ValueError("merge subspace does not live in S_i")
    prev = (i - 1) % t.m
    q = _quotient_map(y)
    sdims = list(t.state_dims)
    sdims[i] = q.cols
    constraints = list(t.constraints)
    if t.m == 1:
        da = t.symbol_dims[0]
        n = t.state_dims[0]
        c = _map_block(t.constraints[0], 0, n, q)
        c = _map_block(c, q.cols + da, q.cols + da + n, q)
        constraints[0] = c
    else:
        lo = t.state_dims[prev] + t.symbol_dims[prev]
        constraints[prev] = _map_block(t.constraints[prev], lo, lo + t.state_dims[i], q)
        constraints[i] = _map_block(t.constraints[i], 0, t.state_dims[i], q)
    return Trellis(t.field, t.m, t.symbol_dims, tuple(sdims), tuple(constraints))


def _branch_projection(t: Trellis, i: int) -> Subspace:
    b = behavior(t)
    nxt = (i + 1) % t.m
    cols = list(range(t.state_offset(i), t.state_offset(i) + t.state_dims[i]))
    cols += list(range(t.symbol_offset(i), t.symbol_offset(i) + t.symbol_dims[i]))
    cols += list(range(t.state_offset(nxt), t.state_offset(nxt) + t.state_dims[nxt]))
    return project(b, cols)


def branch_trim(t: Trellis, i: int) -> Trellis:
    """Replace C_i by the branches that occur on valid trajectories."""
    i %= t.m
    used = _branch_projection(t, i)
    if used == t.constraints[i]:
        raise ValueError(f"constraint {i} is already branch-trim")
    constraints = list(t.constraints)
    constraints[i] = used
    return Trellis(t.field, t.m, t.symbol_dims, t.state_dims, tuple(constraints))


def branch_expand(t: Trellis, i: int, new_branches: Subspace) -> Trellis:
    """Replace C_i by C_i + new_branches; raises if the realized code changes."""
    i %= t.m
    if new_branches.ambient_dim != t.constraints[i].ambient_dim:
        raise ValueError("new branches have the wrong ambient dimension")
    total, _ = lattice(t.constraints[i], new_branches)
    constraints = list(t.constraints)
    constraints[i] = total
    out = Trellis(t.field, t.m, t.symbol_dims, t.state_dims, tuple(constraints))
    if realized_code(out) != realized_code(t):
        raise ValueError("branch expansion changes the realized code")
    return out


# ---------------------------------------------------------------------------
# reduction steps


_AUDIT: list["ReductionStep"] | None = None


@contextmanager
def audit_steps():
    """Collect every ReductionStep constructed inside the context."""
    global _AUDIT
    previous = _AUDIT
    _AUDIT = [] if previous is None else previous
    try:
        yield _AUDIT
    finally:
        _AUDIT = previous


@dataclass(frozen=True)
class ReductionStep:
    """One applied, code-preserving transformation with replay parameters."""

    kind: str
    params: dict
    interval: tuple[int, int]
    witness: dict | None
    before_state_dims: tuple[int, ...]
    after_state_dims: tuple[int, ...]
    before_constraint_dims: tuple[int, ...]
    after_constraint_dims: tuple[int, ...]
    strict: bool
    conservative: bool
    input: Trellis = field(repr=False)
    result: Trellis = field(repr=False)
    details: dict = field(default_factory=dict, repr=False, compare=False)

    def record(self) -> dict:
        rec = {
            "kind": self.kind,
            "params": self.params,
            "interval": list(self.interval),
            "strict": self.strict,
            "conservative": self.conservative,
            "before_state_dims": list(self.before_state_dims),
            "after_state_dims": list(self.after_state_dims),
            "before_constraint_dims": list(self.before_constraint_dims),
            "after_constraint_dims": list(self.after_constraint_dims),
        }
        if self.witness is not None:
            rec["witness"] = self.witness
        return rec


def _make_step(
    kind: str,
    params: dict,
    interval: Span,
    witness: dict | None,
    before: Trellis,
    after: Trellis,
    details: dict | None = None,
) -> ReductionStep:
    if realized_code(after) != realized_code(before):
        raise RuntimeError(f"{kind} step failed to preserve the realized code")
    smaller = all(a <= b for a, b in zip(after.state_dims, before.state_dims))
    shrank = any(a < b for a, b in zip(after.state_dims, before.state_dims))
    step = ReductionStep(
        kind=kind,
        params=params,
        interval=(interval.start, interval.length),
        witness=witness,
        before_state_dims=before.state_dims,
        after_state_dims=after.state_dims,
        before_constraint_dims=before.constraint_dims(),
        after_constraint_dims=after.constraint_dims(),
        strict=smaller and shrank,
        conservative=all(
            a <= b for a, b in zip(after.constraint_dims(), before.constraint_dims())
        ),
        input=before,
        result=after,
        details=details or {},
    )
    if _AUDIT is not None:
        _AUDIT.append(step)
    return step


def _basis_rows(s: Subspace) -> list[list[int]]:
    return [list(r) for r in s.basis.entries]


def trim_step(t: Trellis, i: int, y: Subspace, note: str = "") -> ReductionStep:
    after = trim_to(t, i, y)
    params = {"time": i % t.m, "basis": _basis_rows(y)}
    if note:
        params["note"] = note
    return _make_step("trim", params, Span((i - 1) % t.m, min(2, t.m), t.m), None, t, after)


def merge_step(t: Trellis, i: int, y: Subspace, note: str = "") -> ReductionStep:
    after = merge_to(t, i, y)
    params = {"time": i % t.m, "basis": _basis_rows(y)}
    if note:
        params["note"] = note
    return _make_step("merge", params, Span((i - 1) % t.m, min(2, t.m), t.m), None, t, after)


def branch_trim_step(t: Trellis, i: int) -> ReductionStep:
    after = branch_trim(t, i)
    return _make_step("branch-trim", {"time": i % t.m}, Span(i % t.m, 1, t.m), None, t, after)


def branch_expand_step(t: Trellis, i: int, new_branches: Subspace) -> ReductionStep:
    after = branch_expand(t, i, new_branches)
    return _make_step(
        "branch-expand",
        {"time": i % t.m, "basis": _basis_rows(new_branches)},
        Span(i % t.m, 1, t.m),
        None,
        t,
        after,
    )


# ---------------------------------------------------------------------------
# unobservable trimming


def _state_block_columns(t: Trellis, i: int) -> list[int]:
    off = sum(t.state_dims[:i])
    return list(range(off, off + t.state_dims[i]))


def unobs_trim(t: Trellis, choose_index: int | None = None) -> ReductionStep:
    """Trim away one dimension of unobservable state, preserving the code.

    The witness is the canonical-basis unobservable trajectory with the
    earliest nonzero state position unless an index is requested explicitly.
    """
    su = unobservable_state_space(t)
    if su.is_zero():
        raise ValueError("trellis is observable; nothing to trim")
    if choose_index is None:
        witness = su.basis.entries[0]
        pivot = next(q for q, x in enumerate(witness) if x)
        acc = 0
        idx = 0
        for i, d in enumerate(t.state_dims):
            if acc <= pivot < acc + d:
                idx = i
                break
            acc += d
    else:
        idx = choose_index % t.m
        cols = _state_block_columns(t, idx)
        witness = None
        for cand in su.sorted_vectors():
            if any(cand[c] for c in cols):
                witness = cand
                break
        if witness is None:
            raise ValueError(f"no unobservable trajectory is nonzero at time {idx}")
    cols = _state_block_columns(t, idx)
    sigma = [witness[c] for c in cols]
    line = Subspace.span(t.field, t.state_dims[idx], [sigma])
    rest = complement(line, Subspace.full(t.field, t.state_dims[idx]))
    after = trim_to(t, idx, rest)
    step = _make_step(
        "unobs-trim",
        {"time": idx} if choose_index is None else {"time": idx, "chosen": True},
        Span((idx - 1) % t.m, min(2, t.m), t.m),
        {"state": list(sigma), "trajectory": list(witness)},
        t,
        after,
        details={"trim_basis": rest},
    )
    if not step.strict or not step.conservative:
        raise RuntimeError("unobservable trim must be strict and conservative")
    prev = (idx - 1) % t.m
    if local_flags(t, idx)[0] and t.m > 1:
        drop_in = t.constraints[prev].dim - after.constraints[prev].dim
        drop_out = t.constraints[idx].dim - after.constraints[idx].dim
        if (drop_in, drop_out) != (1, 1):
            raise RuntimeError("adjacent constraint dimensions must drop by one")
    return step


def _undual_constraint(c: Subspace, dl: int, da: int, dr: int) -> Subspace:
    from .galois import negate_columns

    return negate_columns(orthogonal(c), range(dl + da, dl + da + dr))


@dataclass(frozen=True)
class TwoReduction:
    """Mutually dual strict and conservative 2-reductions built from a
    branch-trim on the dual and its mirror expansion on the primal."""

    primal_steps: tuple[ReductionStep, ...]
    dual_steps: tuple[ReductionStep, ...]

    @property
    def primal_result(self) -> Trellis:
        return self.primal_steps[-1].result

    @property
    def dual_result(self) -> Trellis:
        return self.dual_steps[-1].result


def two_reduction_m1(t: Trellis) -> TwoReduction:
    """For an observable but not (m-1)-observable trellis: branch-trim the
    dual at its first non-branch-trim index, expand the mirror constraint on
    the primal, then trim the resulting unobservable state."""
    if not observable(t):
        raise ValueError("input must be observable")
    td = dualize(t)
    flags = global_trim_flags(td).branch_trim_at
    bad = [i for i, ok in enumerate(flags) if not ok]
    if not bad:
        raise ValueError("trellis is (m-1)-observable; no reduction here")
    i = bad[0]
    dual_bt = branch_trim_step(td, i)
    dl = t.state_dims[i]
    da = t.symbol_dims[i]
    dr = t.state_dims[(i + 1) % t.m]
    expanded = _undual_constraint(dual_bt.result.constraints[i], dl, da, dr)
    primal_exp = branch_expand_step(t, i, expanded)
    primal_trim = unobs_trim(primal_exp.result, choose_index=i)
    y = orthogonal(primal_trim.details["trim_basis"])
    dual_merge = merge_step(dual_bt.result, i, y, note="mirror of the primal trim")
    iso = is_isomorphic(dualize(primal_trim.result), dual_merge.result)
    if iso.isomorphic is False:
        raise RuntimeError("dual pair of 2-reductions failed to mirror")
    composite_strict = any(
        a < b for a, b in zip(primal_trim.result.state_dims, t.state_dims)
    )
    composite_conservative = all(
        a <= b
        for a, b in zip(primal_trim.result.constraint_dims(), t.constraint_dims())
    )
    if not (composite_strict and composite_conservative):
        raise RuntimeError("composite 2-reduction must be strict and conservative")
    return TwoReduction((primal_exp, primal_trim), (dual_bt, dual_merge))


# ---------------------------------------------------------------------------
# zero-run reductions


def condition_A(t: Trellis, j: int, tlen: int, witness_pair) -> bool:
    """No valid path from the witness end state to the zero state one step
    before the witness start."""
    m = t.m
    if tlen < 2:
        raise ValueError("condition checks need a reduction length of at least 2")
    k = (j + m - tlen) % m
    _, s_k = witness_pair
    frag = fragment(t, Span(k, tlen - 1, m))
    trans = transition_spaces(frag).full
    target = list(s_k) + [0] * t.state_dims[(j - 1) % m]
    return not trans.contains(target)


def condition_A_prime(t: Trellis, j: int, tlen: int, witness_pair) -> bool:
    """No valid path from the zero state one step after the witness end to
    the witness start state."""
    m = t.m
    if tlen < 2:
        raise ValueError("condition checks need a reduction length of at least 2")
    k = (j + m - tlen) % m
    s_j, _ = witness_pair
    frag = fragment(t, Span((k + 1) % m, tlen - 1, m))
    trans = transition_spaces(frag).full
    target = [0] * t.state_dims[(k + 1) % m] + list(s_j)
    return not trans.contains(target)


def find_zero_run_witness(t: Trellis, j: int, tlen: int):
    """Deterministic witness choice: the first unobservable boundary pair (in
    sorted vector order) satisfying Condition A, else the first satisfying
    Condition A'; None if the fragment is observable or no condition holds."""
    m = t.m
    frag = fragment(t, Span(j, m - tlen, m))
    u = transition_spaces(frag).unobservable
    if u.is_zero():
        return None
    dj = t.state_dims[j]
    pairs = [
        (tuple(v[:dj]), tuple(v[dj:]))
        for v in u.sorted_vectors()
        if any(v[:dj]) and any(v[dj:])
    ]
    for cond, name in ((condition_A, "A"), (condition_A_prime, "A-prime")):
        for pair in pairs:
            if cond(t, j, tlen, pair):
                return pair, name
    return None


def zero_run_expand(t: Trellis, j: int, tlen: int, witness_pair) -> Trellis:
    """Adjoin an all-zero-symbol path from the witness end state back to the
    witness start state through fresh one-dimensional state extensions.

    The new coordinate is prepended in every expanded state space."""
    m = t.m
    k = (j + m - tlen) % m
    s_j, s_k = witness_pair
    inner = {(k + u) % m for u in range(1, tlen)}
    sdims = list(t.state_dims)
    for i in inner:
        sdims[i] += 1
    constraints = []
    for i in range(m):
        nxt = (i + 1) % m
        c = t.constraints[i]
        dl, da, dr = t.state_dims[i], t.symbol_dims[i], t.state_dims[nxt]
        lshift = 1 if i in inner else 0
        rshift = 1 if nxt in inner else 0
        if not lshift and not rshift:
            constraints.append(c)
            continue
        amb = sdims[i] + da + sdims[nxt]
        rows = []
        for b in c.basis.entries:
            v = [0] * amb
            for q in range(dl):
                v[lshift + q] = b[q]
            for q in range(da):
                v[sdims[i] + q] = b[dl + q]
            for q in range(dr):
                v[sdims[i] + da + rshift + q] = b[dl + da + q]
            rows.append(v)
        on_arc = (i - k) % m < tlen
        if on_arc:
            v = [0] * amb
            if i == k:
                for q in range(dl):
                    v[q] = s_k[q]
            else:
                v[0] = 1
            if nxt == j:
                for q in range(dr):
                    v[sdims[i] + da + q] = s_j[q]
            else:
                v[sdims[i] + da] = 1
            rows.append(v)
        constraints.append(Subspace.span(t.field, amb, rows))
    out = Trellis(t.field, m, t.symbol_dims, tuple(sdims), tuple(constraints))
    if realized_code(out) != realized_code(t):
        raise RuntimeError("expansion changed the realized code")
    if behavior(out).dim != behavior(t).dim + 1:
        raise RuntimeError("expansion must add exactly one unobservable trajectory")
    diag = Subspace.span(t.field, 2, [[1, 1]])
    for i in inner:
        if (i + 1) % m not in inner:
            continue
        cols = [0, sdims[i] + t.symbol_dims[i]]
        mixed = project(out.constraints[i], cols)
        if not diag.contains_space(mixed):
            raise RuntimeError("adjoined coordinates leak into old branches")
    return out


def expand_step(t: Trellis, j: int, tlen: int, witness_pair) -> ReductionStep:
    after = zero_run_expand(t, j, tlen, witness_pair)
    m = t.m
    k = (j + m - tlen) % m
    return _make_step(
        "expand",
        {
            "start": j,
            "tlen": tlen,
            "witness_start": list(witness_pair[0]),
            "witness_end": list(witness_pair[1]),
        },
        Span(k, tlen, m),
        {"start_state": list(witness_pair[0]), "end_state": list(witness_pair[1])},
        t,
        after,
    )


def zero_run_reduce(
    t: Trellis, j: int, tlen: int
) -> tuple[ReductionStep, ReductionStep]:
    """The zero-run reduction: expand along an unobservable fragment witness,
    then cascade state trims.  Returns the conservative tlen-reduction and
    the strict conservative (tlen+1)-reduction, both from the given trellis.
    """
    m = t.m
    if not 2 <= tlen <= m - 1:
        raise ValueError("reduction length must be between 2 and m-1")
    from .analysis import property_report

    rep = property_report(t)
    if not rep.tpoc:
        raise ValueError("zero-run reduction requires a TPOC trellis")
    found = find_zero_run_witness(t, j, tlen)
    if found is None:
        raise ValueError(
            f"fragment [{j},{(j + m - tlen) % m}) is observable or lacks a usable witness"
        )
    witness_pair, cond = found
    if cond == "A":
        return _zero_run_a(t, j, tlen, witness_pair, cond_label="A")
    rev = time_reversed(t)
    len_frag = m - tlen
    j_rev = (m - (j + len_frag)) % m
    rev_pair = (witness_pair[1], witness_pair[0])
    cons_r, strict_r = _zero_run_a(rev, j_rev, tlen, rev_pair, cond_label="A-prime")

    def back(step: ReductionStep, phase: str) -> ReductionStep:
        start_r, len_r = step.interval
        start = (m - (start_r + len_r)) % m
        after = time_reversed(step.result)
        return _make_step(
            "zero-run",
            {
                "start": j,
                "tlen": tlen,
                "phase": phase,
                "condition": "A-prime",
            },
            Span(start, len_r, m),
            step.witness,
            t,
            after,
            details=step.details,
        )

    return back(cons_r, "conservative"), back(strict_r, "strict")


def _zero_run_a(
    t: Trellis, j: int, tlen: int, witness_pair, cond_label: str
) -> tuple[ReductionStep, ReductionStep]:
    m = t.m
    k = (j + m - tlen) % m
    s_j, s_k = witness_pair
    expanded = zero_run_expand(t, j, tlen, witness_pair)
    last = (j - 1) % m

    frag = fragment(expanded, Span(k, tlen - 1, m))
    trans = transition_spaces(frag).full
    dk = expanded.state_dims[k]
    dlast = expanded.state_dims[last]
    reach_zero = cross_section(
        trans, list(range(dk, dk + dlast))
    )
    tilde = [1] + [0] * (dlast - 1)
    if reach_zero.contains(tilde):
        raise RuntimeError("adjoined state is reachable from zero; witness unusable")
    line = Subspace.span(t.field, dlast, [tilde])
    span_sum, _ = lattice(reach_zero, line)
    z = complement(span_sum, Subspace.full(t.field, dlast))
    x, _ = lattice(reach_zero, z)
    coeffs = solve_particular(
        Mat.from_rows(t.field, dk, [row[:dk] for row in trans.basis.entries]).transpose(),
        list(s_k),
    )
    if coeffs is not None:
        p = t.field.p
        v0 = [0] * dlast
        for c, row in zip(coeffs, trans.basis.entries):
            for q in range(dlast):
                v0[q] = (v0[q] + c * row[dk + q]) % p
        if x.contains(v0):
            raise RuntimeError("condition failed: witness end state reaches the kept states")

    current = trim_to(expanded, last, x)
    idx = (j - 2) % m
    while idx != k:
        dl = current.state_dims[idx]
        left_proj = project(current.constraints[idx], list(range(dl)))
        current = trim_to(current, idx, left_proj)
        idx = (idx - 1) % m
    conservative = _make_step(
        "zero-run",
        {"start": j, "tlen": tlen, "phase": "conservative", "condition": cond_label},
        Span(k, tlen, m),
        {"start_state": list(s_j), "end_state": list(s_k)},
        t,
        current,
        details={"x_basis": x, "reachable_from_zero": reach_zero},
    )
    if any(
        a > b for a, b in zip(current.state_dims, t.state_dims)
    ):
        raise RuntimeError("conservative phase must not grow any state space")

    dkk = current.state_dims[k]
    keep = project(current.constraints[k], list(range(dkk)))
    if keep.contains(list(s_k)):
        raise RuntimeError("witness end state still has outgoing branches")
    final = trim_to(current, k, keep)
    strict = _make_step(
        "zero-run",
        {"start": j, "tlen": tlen, "phase": "strict", "condition": cond_label},
        Span((k - 1) % m, tlen + 1, m),
        {"start_state": list(s_j), "end_state": list(s_k)},
        t,
        final,
        details={"x_basis": x, "reachable_from_zero": reach_zero},
    )
    if not strict.strict or not strict.conservative:
        raise RuntimeError("zero-run must end strict and conservative")
    return conservative, strict


# ---------------------------------------------------------------------------
# span profiles and product generators


@dataclass(frozen=True)
class SpanProfile:
    """Minimum span length of a code and the per-start shortest span lengths
    (None at positions where no codeword is nonzero)."""

    chi: int
    per_position: tuple[int | None, ...]


def span_profile(code: Subspace, enumeration_cap: int = 4096) -> SpanProfile:
    m = code.ambient_dim
    if code.dim == 0:
        raise ValueError("the zero code has no spans")
    p = code.field.p
    per: list[int | None] = [None] * m
    if p ** code.dim <= enumeration_cap:
        for w in code.vectors():
            support = [q for q, x in enumerate(w) if x]
            if not support:
                continue
            for a in support:
                r = max((q - a) % m for q in support) + 1
                if per[a] is None or r < per[a]:
                    per[a] = r
    else:
        for a in range(m):
            for r in range(1, m + 1):
                window = [(a + u) % m for u in range(r)]
                cs = cross_section(code, window)
                if cs.dim and project(cs, [0]).is_full():
                    per[a] = r
                    break
    defined = [r for r in per if r is not None]
    if not defined:
        raise ValueError("the zero code has no spans")
    return SpanProfile(min(defined), tuple(per))


def shortest_span_generators(code: Subspace, start: int) -> list[tuple[int, ...]]:
    """All codewords achieving the shortest span starting at `start`,
    lexicographically sorted."""
    m = code.ambient_dim
    prof = span_profile(code)
    r = prof.per_position[start]
    if r is None:
        return []
    out = []
    for w in code.vectors():
        if not w[start]:
            continue
        support = [q for q, x in enumerate(w) if x]
        if max((q - start) % m for q in support) + 1 == r:
            out.append(w)
    return sorted(out)


def kv_trellis(code: Subspace, start_assignment) -> Trellis:
    """Product trellis from shortest-span generators at the assigned start
    positions (greedy lexicographic choice), requiring pairwise distinct
    starts and ends and linear independence."""
    m = code.ambient_dim
    starts = list(start_assignment)
    if code.dim == 0:
        raise ValueError("the zero code has no generators")
    if len(starts) != code.dim or len(set(starts)) != len(starts):
        raise ValueError("need dim-many distinct start positions")
    prof = span_profile(code)
    dual_prof = span_profile(orthogonal(code))
    if prof.chi <= 1 or dual_prof.chi <= 1:
        raise ValueError("code and dual must both have full support")
    gens = []
    ends = []
    words_at = {a: shortest_span_generators(code, a) for a in set(starts)}
    for a in starts:
        words = words_at[a]
        if not words:
            raise ValueError(f"no codeword is nonzero at position {a}")
        w = words[0]
        r = prof.per_position[a]
        gens.append(Generator(w, Span(a, r, m)))
        ends.append((a + r - 1) % m)
    if len(set(ends)) != len(ends):
        raise ValueError("shortest spans do not end at distinct positions")
    mat = Mat.from_rows(code.field, m, [g.word for g in gens])
    if rref(mat).rows != code.dim:
        raise ValueError("greedy shortest-span generators are dependent")
    dims = tuple([1] * m)
    return product([elementary(code.field, g, dims) for g in gens])


def is_kv_trellis(
    t: Trellis, subset_cap: int = 512, combo_cap: int = 512
) -> bool | None:
    """Bounded search for a shortest-span generator set whose product trellis
    is isomorphic to t.  None when the search space exceeds the caps or an
    isomorphism check was undecided."""
    if any(d != 1 for d in t.symbol_dims):
        return False
    code = realized_code(t)
    dual_code = orthogonal(code)
    if code.dim == 0 or dual_code.dim == 0:
        return False
    prof = span_profile(code)
    if any(r is None for r in prof.per_position):
        return False
    if span_profile(dual_code).chi <= 1 or prof.chi <= 1:
        return False
    m = t.m
    kdim = code.dim
    if comb(m, kdim) > subset_cap:
        return None
    words_at = {a: shortest_span_generators(code, a) for a in range(m)}
    undecided = False
    for starts in combinations(range(m), kdim):
        dims_at = [0] * m
        spans = [Span(a, prof.per_position[a], m) for a in starts]
        ends = [(a + prof.per_position[a] - 1) % m for a in starts]
        if len(set(ends)) != kdim:
            continue
        for sp in spans:
            for q in sp.interior():
                dims_at[q] += 1
        if tuple(dims_at) != t.state_dims:
            continue
        pools = [words_at[a] for a in starts]
        total = 1
        for pool in pools:
            total *= len(pool)
        if total > combo_cap:
            undecided = True
            continue
        for combo in iter_product(*pools):
            mat = Mat.from_rows(code.field, m, combo)
            if rref(mat).rows != kdim:
                continue
            cand = product(
                [
                    elementary(code.field, Generator(w, sp), t.symbol_dims)
                    for w, sp in zip(combo, spans)
                ]
            )
            iso = is_isomorphic(t, cand)
            if iso.isomorphic is True:
                return True
            if iso.isomorphic is None:
                undecided = True
    return None if undecided else False


def minimal_span_generators(code: Subspace, cut: int) -> list[Generator]:
    """A generator basis whose spans are non-circular on the axis cut open at
    `cut`, with pairwise distinct start and end positions."""
    m = code.ambient_dim
    p = code.field.p
    order = [(cut + u) % m for u in range(m)]
    rotated = rref(Mat.from_rows(code.field, m, [[row[c] for c in order] for row in code.basis.entries]))
    rows = [list(r) for r in rotated.entries]

    def ends(row):
        return max(q for q, x in enumerate(row) if x)

    changed = True
    while changed:
        changed = False
        by_end: dict[int, int] = {}
        for idx, row in enumerate(rows):
            e = ends(row)
            if e in by_end:
                other = by_end[e]
                a, b = sorted((idx, other), key=lambda r: next(q for q, x in enumerate(rows[r]) if x))
                fac = (rows[a][e] * pow(rows[b][e], p - 2, p)) % p
                rows[a] = [(x - fac * y) % p for x, y in zip(rows[a], rows[b])]
                changed = True
                break
            by_end[e] = idx
    gens = []
    for row in rows:
        s = next(q for q, x in enumerate(row) if x)
        e = ends(row)
        word = [0] * m
        for q, x in enumerate(row):
            word[order[q]] = x
        gens.append(Generator(tuple(word), Span(order[s], e - s + 1, m)))
    return gens


def conventional_trellis(code: Subspace, cut: int) -> Trellis:
    """Minimal conventional trellis with the cycle cut open at `cut` (the
    state space there is trivial), built as a product of span generators."""
    gens = minimal_span_generators(code, cut)
    dims = tuple([1] * code.ambient_dim)
    return product([elementary(code.field, g, dims) for g in gens])


# ---------------------------------------------------------------------------
# t-irreducibility and the driver


@dataclass(frozen=True)
class IrreducibilityDecision:
    tparam: int
    verdict: str  # "irreducible" | "reducible" | "sufficient-only"
    chi: int
    chi_dual: int
    certificate: dict | None
    steps: tuple[ReductionStep, ...]
    note: str = ""


def t_irreducibility(t: Trellis, tparam: int) -> IrreducibilityDecision:
    """Decide t-irreducibility through interval observability, constructing
    the dictated reduction when the trellis is reducible inside the span
    window; outside the window only the sufficient condition is reported."""
    from .analysis import property_report
    from .fragments import t_observability_profile

    rep = property_report(t)
    if not rep.tpoc:
        raise ValueError("t-irreducibility analysis requires a TPOC trellis")
    m = t.m
    if not 1 <= tparam <= m - 1:
        raise ValueError("t parameter out of range")
    code = realized_code(t)
    chi = span_profile(code).chi
    chi_dual = span_profile(orthogonal(code)).chi
    memory = t_observability_profile(t)
    obs = memory.observable[m - tparam]
    ctr = memory.controllable[m - tparam]
    certificate = {
        "observable": {k: v for k, v in memory.observable.items()},
        "controllable": {k: v for k, v in memory.controllable.items()},
    }
    in_window = tparam == 1 or min(chi, chi_dual) > tparam
    if obs and ctr:
        verdict = "irreducible" if in_window else "sufficient-only"
        note = "" if in_window else "span window exceeded; only the sufficient condition applies"
        return IrreducibilityDecision(tparam, verdict, chi, chi_dual, certificate, (), note)
    if not in_window:
        return IrreducibilityDecision(
            tparam,
            "sufficient-only",
            chi,
            chi_dual,
            certificate,
            (),
            "interval observability fails but the span window is exceeded; no verdict",
        )
    if tparam == 1:
        two = two_reduction_m1(t if not memory.observable[m - 1] else dualize(t))
        return IrreducibilityDecision(
            tparam, "reducible", chi, chi_dual, certificate, two.primal_steps,
            "strict and conservative 2-reduction constructed",
        )
    finer_obs = memory.observable[m - tparam + 1]
    finer_ctr = memory.controllable[m - tparam + 1]
    if not finer_obs or not finer_ctr:
        work, label = (t, "primal") if not finer_obs else (dualize(t), "dual")
        if tparam == 2:
            steps = two_reduction_m1(work).primal_steps
        else:
            j = _first_unobservable_start(work, m - tparam + 1)
            _, strict = zero_run_reduce(work, j, tparam - 1)
            steps = (strict,)
        note = f"strict conservative {tparam}-reduction on the {label} side"
    else:
        work, label = (t, "primal") if not obs else (dualize(t), "dual")
        j = _first_unobservable_start(work, m - tparam)
        cons, strict = zero_run_reduce(work, j, tparam)
        steps = (cons, strict)
        note = (
            f"non-strict conservative {tparam}-reduction and strict "
            f"({tparam + 1})-reduction on the {label} side"
        )
    return IrreducibilityDecision(
        tparam, "reducible", chi, chi_dual, certificate, steps, note
    )


def _first_unobservable_start(t: Trellis, length: int) -> int:
    for j in range(t.m):
        u = transition_spaces(fragment(t, Span(j, length, t.m))).unobservable
        if not u.is_zero():
            return j
    raise ValueError(f"no unobservable fragment of length {length}")


@dataclass(frozen=True)
class ReductionReport:
    initial: Trellis
    final: Trellis
    steps: tuple[ReductionStep, ...]
    status: str  # "reduced" | "no-applicable-method" | "fixpoint"

    def records(self) -> list[dict]:
        return [s.record() for s in self.steps]


def _next_driver_steps(t: Trellis) -> tuple[ReductionStep, ...] | None:
    """One round of the cheapest applicable repair, or None at a fixpoint."""
    m = t.m
    for i in range(m):
        trim_ok, proper_ok = local_flags(t, i)
        if not trim_ok:
            prev = (i - 1) % m
            lo = t.state_dims[prev] + t.symbol_dims[prev]
            p_in = project(t.constraints[prev], list(range(lo, lo + t.state_dims[i])))
            p_out = project(t.constraints[i], list(range(t.state_dims[i])))
            _, inter = lattice(p_in, p_out)
            return (trim_step(t, i, inter, note="restore local trimness"),)
        if not proper_ok:
            prev = (i - 1) % m
            lo = t.state_dims[prev] + t.symbol_dims[prev]
            c_in = cross_section(t.constraints[prev], list(range(lo, lo + t.state_dims[i])))
            c_out = cross_section(t.constraints[i], list(range(t.state_dims[i])))
            total, _ = lattice(c_in, c_out)
            return (merge_step(t, i, total, note="restore local properness"),)
    if not observable(t):
        return (unobs_trim(t),)
    if not controllable(t):
        td = dualize(t)
        su = unobservable_state_space(td)
        witness = su.basis.entries[0]
        pivot = next(q for q, x in enumerate(witness) if x)
        acc = 0
        idx = 0
        for i, d in enumerate(t.state_dims):
            if acc <= pivot < acc + d:
                idx = i
                break
            acc += d
        cols = _state_block_columns(td, idx)
        sigma = [witness[c] for c in cols]
        line = Subspace.span(t.field, t.state_dims[idx], [sigma])
        rest = complement(line, Subspace.full(t.field, t.state_dims[idx]))
        return (merge_step(t, idx, orthogonal(rest), note="dual unobservable run"),)
    gt = global_trim_flags(t)
    for i in range(m):
        if not gt.state_trim_at[i]:
            used = project(behavior(t), _behavior_state_cols(t, i))
            return (trim_step(t, i, used, note="remove unused states"),)
    gtd = global_trim_flags(dualize(t))
    for i in range(m):
        if not gtd.state_trim_at[i]:
            used = project(behavior(dualize(t)), _behavior_state_cols(t, i))
            return (merge_step(t, i, orthogonal(used), note="merge unreachable dual states"),)
    for i in range(m):
        if not gt.branch_trim_at[i]:
            return (branch_trim_step(t, i),)
    if not gtd.branch_trim:
        two = two_reduction_m1(t)
        return two.primal_steps
    for tlen in range(2, m):
        for j in range(m):
            found = find_zero_run_witness(t, j, tlen)
            if found is not None:
                _, strict = zero_run_reduce(t, j, tlen)
                return (strict,)
            found_dual = find_zero_run_witness(dualize(t), j, tlen)
            if found_dual is not None:
                _, strict = zero_run_reduce(dualize(t), j, tlen)
                dual_result = dualize(strict.result)
                mirrored = _make_step(
                    "zero-run",
                    dict(strict.params, side="dual"),
                    Span(strict.interval[0], strict.interval[1], m),
                    strict.witness,
                    t,
                    dual_result,
                    details=strict.details,
                )
                return (mirrored,)
    return None


def _behavior_state_cols(t: Trellis, i: int) -> list[int]:
    off = t.state_offset(i)
    return list(range(off, off + t.state_dims[i]))


def reduce_driver(t: Trellis, max_rounds: int = 200) -> ReductionReport:
    """Apply the constructive toolbox until no method applies.

    Every strict step lowers the total state dimension and the non-strict
    steps lower total constraint dimension at fixed state profile, so the
    loop terminates."""
    steps: list[ReductionStep] = []
    current = t
    for _ in range(max_rounds):
        batch = _next_driver_steps(current)
        if batch is None:
            break
        steps.extend(batch)
        current = batch[-1].result
    else:
        raise RuntimeError("reduction driver failed to reach a fixpoint")
    if realized_code(current) != realized_code(t):
        raise RuntimeError("driver broke code preservation")
    status = "no-applicable-method" if not steps else "reduced"
    return ReductionReport(t, current, tuple(steps), status)


# ---------------------------------------------------------------------------
# replay


def apply_step(t: Trellis, record: dict) -> Trellis:
    """Re-apply one serialized step record; the transformations are
    deterministic, so replay reproduces results exactly."""
    kind = record["kind"]
    params = record["params"]
    field_ = t.field
    if kind == "trim":
        y = Subspace.span(field_, t.state_dims[params["time"]], params["basis"])
        step = trim_step(t, params["time"], y)
        return step.result
    if kind == "merge":
        y = Subspace.span(field_, t.state_dims[params["time"]], params["basis"])
        step = merge_step(t, params["time"], y)
        return step.result
    if kind == "branch-trim":
        return branch_trim_step(t, params["time"]).result
    if kind == "branch-expand":
        amb = t.constraints[params["time"]].ambient_dim
        nb = Subspace.span(field_, amb, params["basis"])
        return branch_expand_step(t, params["time"], nb).result
    if kind == "unobs-trim":
        idx = params["time"] if params.get("chosen") else None
        return unobs_trim(t, choose_index=idx).result
    if kind == "expand":
        pair = (tuple(params["witness_start"]), tuple(params["witness_end"]))
        return expand_step(t, params["start"], params["tlen"], pair).result
    if kind == "zero-run":
        work = dualize(t) if params.get("side") == "dual" else t
        cons, strict = zero_run_reduce(work, params["start"], params["tlen"])
        out = (strict if params["phase"] == "strict" else cons).result
        return dualize(out) if params.get("side") == "dual" else out
    raise ValueError(f"unknown step kind {kind!r}")


def replay(t: Trellis, records) -> Trellis:
    current = t
    for rec in records:
        current = apply_step(current, rec)
    return current
