"""Local and global trellis property predicates.

Controllability is deliberately computed twice, by the total-dimension test
and by observability of the dual, and the two verdicts are cross-asserted;
a disagreement is a bug in the linear algebra, not a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .galois import Subspace, cross_section, project
from .trellis import Trellis, behavior, dualize, realized_code
from .fragments import unobservable_state_space


def _branch_columns(t: Trellis, i: int) -> list[int]:
    nxt = (i + 1) % t.m
    cols = list(range(t.state_offset(i), t.state_offset(i) + t.state_dims[i]))
    cols += list(range(t.symbol_offset(i), t.symbol_offset(i) + t.symbol_dims[i]))
    cols += list(range(t.state_offset(nxt), t.state_offset(nxt) + t.state_dims[nxt]))
    return cols


def _state_columns(t: Trellis, i: int) -> list[int]:
    return list(range(t.state_offset(i), t.state_offset(i) + t.state_dims[i]))


def local_flags(t: Trellis, i: int) -> tuple[bool, bool]:
    """(trim at S_i, proper at S_i): both adjacent constraints project onto
    S_i, and neither has a branch supported on S_i alone."""
    prev = (i - 1) % t.m
    c_in = t.constraints[prev]
    c_out = t.constraints[i]
    din_l = t.state_dims[prev] + t.symbol_dims[prev]
    in_cols = list(range(din_l, din_l + t.state_dims[i]))
    out_cols = list(range(t.state_dims[i]))
    trim = project(c_in, in_cols).is_full() and project(c_out, out_cols).is_full()
    proper = cross_section(c_in, in_cols).is_zero() and cross_section(c_out, out_cols).is_zero()
    return trim, proper


@dataclass(frozen=True)
class GlobalTrim:
    state_trim_at: tuple[bool, ...]
    branch_trim_at: tuple[bool, ...]

    @property
    def state_trim(self) -> bool:
        return all(self.state_trim_at)

    @property
    def branch_trim(self) -> bool:
        return all(self.branch_trim_at)


def global_trim_flags(t: Trellis) -> GlobalTrim:
    """Whether every state (resp. branch) lies on a valid trajectory."""
    b = behavior(t)
    state_at = tuple(
        project(b, _state_columns(t, i)).is_full() for i in range(t.m)
    )
    branch_at = tuple(
        project(b, _branch_columns(t, i)) == t.constraints[i] for i in range(t.m)
    )
    return GlobalTrim(state_at, branch_at)


def observable(t: Trellis) -> bool:
    """One trajectory per codeword; equivalently the unobservable state
    configuration space is trivial."""
    return behavior(t).dim == realized_code(t).dim


@dataclass(frozen=True)
class ControlAudit:
    total_constraint_dim: int
    behavior_dim: int
    total_state_dim: int

    @property
    def controllable(self) -> bool:
        return self.total_constraint_dim == self.behavior_dim + self.total_state_dim


def controllable(t: Trellis) -> bool:
    return controllability_audit(t).controllable


def controllability_audit(t: Trellis) -> ControlAudit:
    """Dimension test for controllability, cross-checked against dual
    observability."""
    audit = ControlAudit(
        total_constraint_dim=sum(c.dim for c in t.constraints),
        behavior_dim=behavior(t).dim,
        total_state_dim=t.state_total(),
    )
    if audit.controllable != observable(dualize(t)):
        raise RuntimeError(
            "controllability dimension test disagrees with dual observability"
        )
    return audit


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    component_count: int
    isolated_states: tuple[tuple[int, tuple[int, ...]], ...]


def connected(t: Trellis) -> Connectivity:
    """Connectivity of the trellis diagram on states incident to at least one
    branch; states incident to none are reported on the side instead of
    breaking connectivity."""
    index: dict[tuple[int, tuple[int, ...]], int] = {}
    vertices: list[tuple[int, tuple[int, ...]]] = []
    for i in range(t.m):
        for v in Subspace.full(t.field, t.state_dims[i]).vectors():
            index[(i, v)] = len(vertices)
            vertices.append((i, v))
    parent = list(range(len(vertices)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    used = set()
    for i in range(t.m):
        nxt = (i + 1) % t.m
        dl = t.state_dims[i]
        da = t.symbol_dims[i]
        for br in t.constraints[i].vectors():
            a = index[(i, br[:dl])]
            b = index[(nxt, br[dl + da:])]
            union(a, b)
            used.add(a)
            used.add(b)
    roots = {find(x) for x in used}
    isolated = tuple(
        vertices[x] for x in range(len(vertices)) if x not in used
    )
    return Connectivity(len(roots) <= 1, len(roots), isolated)


def merge_trim_status(t: Trellis) -> tuple[bool, bool]:
    """(nontrimmable, nonmergeable): a trellis is non-trimmable exactly when
    observable and state-trim; nonmergeable is the dual statement."""
    nontrimmable = observable(t) and global_trim_flags(t).state_trim
    td = dualize(t)
    nonmergeable = observable(td) and global_trim_flags(td).state_trim
    return nontrimmable, nonmergeable


@dataclass(frozen=True)
class PropertyReport:
    trim_at: tuple[bool, ...]
    proper_at: tuple[bool, ...]
    state_trim_at: tuple[bool, ...]
    branch_trim_at: tuple[bool, ...]
    trim: bool
    proper: bool
    state_trim: bool
    branch_trim: bool
    observable: bool
    controllable: bool
    connected: bool
    nontrimmable: bool
    nonmergeable: bool
    unobservable_state_space: Subspace
    behavior_dim: int
    code_dim: int

    @property
    def tpoc(self) -> bool:
        return self.trim and self.proper and self.observable and self.controllable

    @property
    def reduced(self) -> bool:
        return self.state_trim and self.branch_trim


def property_report(t: Trellis) -> PropertyReport:
    local = [local_flags(t, i) for i in range(t.m)]
    gt = global_trim_flags(t)
    nontrim, nomerge = merge_trim_status(t)
    return PropertyReport(
        trim_at=tuple(f[0] for f in local),
        proper_at=tuple(f[1] for f in local),
        state_trim_at=gt.state_trim_at,
        branch_trim_at=gt.branch_trim_at,
        trim=all(f[0] for f in local),
        proper=all(f[1] for f in local),
        state_trim=gt.state_trim,
        branch_trim=gt.branch_trim,
        observable=observable(t),
        controllable=controllable(t),
        connected=connected(t).connected,
        nontrimmable=nontrim,
        nonmergeable=nomerge,
        unobservable_state_space=unobservable_state_space(t),
        behavior_dim=behavior(t).dim,
        code_dim=realized_code(t).dim,
    )


@dataclass(frozen=True)
class ChainReport:
    """Membership in the nested trellis classes for a given t parameter.

    `kv` is None when the bounded generator search gave up; minimality is
    never decided here.
    """

    tparam: int
    chi: int
    chi_dual: int
    tsb_poc: bool
    ntsb_poc: bool
    irreducible_class: bool
    within_chi_window: bool
    kv: bool | None
    minimal: None = None


def classify_chain(t: Trellis, tparam: int) -> ChainReport:
    from .fragments import t_observability_profile
    from .reduction import is_kv_trellis, span_profile

    code = realized_code(t)
    dual_code = realized_code(dualize(t))
    prof_c = span_profile(code)
    prof_d = span_profile(dual_code)
    if prof_c.chi <= 1 or prof_d.chi <= 1:
        raise ValueError("chain classification needs full support on both sides")
    rep = property_report(t)
    tsb = rep.state_trim and rep.branch_trim and rep.proper and rep.observable and rep.controllable
    ntsb = tsb and rep.nonmergeable
    memory = t_observability_profile(t)
    irr_class = (
        tsb
        and memory.observable[t.m - tparam]
        and memory.controllable[t.m - tparam]
    )
    return ChainReport(
        tparam=tparam,
        chi=prof_c.chi,
        chi_dual=prof_d.chi,
        tsb_poc=tsb,
        ntsb_poc=ntsb,
        irreducible_class=irr_class,
        within_chi_window=min(prof_c.chi, prof_d.chi) > tparam > 1,
        kv=is_kv_trellis(t),
    )
