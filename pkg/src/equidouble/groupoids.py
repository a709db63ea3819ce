"""Action groupoids M//G: cardinality, inertia, simple representations.

A representation of M//G assigns a vector space to each point and a linear
map to each morphism (m, g): m -> g.m. Simples are induced from irreducibles
of orbit stabilizers; characters live on the inertia pairs (m, g) with
g.m = m and are orthonormal under the groupoid pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .chartable import CharacterTable, IrreducibleRep, character_table, irrep_matrices
from .errors import UsageError
from .groups import FiniteGroup
from .linalg import ExactMatrix
from .scalars import Scalar, scalar_eq


class GroupAction:
    """Left action of a finite group on points {0..num_points-1}."""

    def __init__(self, group: FiniteGroup, num_points: int, act: Sequence[Sequence[int]]):
        assert num_points >= 0
        self.group = group
        self.num_points = num_points
        self.act = tuple(tuple(row) for row in act)
        if len(self.act) != group.order:
            raise UsageError("action table must have one row per group element")
        for g in range(group.order):
            row = self.act[g]
            if len(row) != num_points or sorted(row) != list(range(num_points)):
                raise UsageError(f"action row {g} is not a permutation of the points")
        for m in range(num_points):
            if self.act[0][m] != m:
                raise UsageError("identity must act trivially")
        for g in range(group.order):
            for h in range(group.order):
                gh = group.mul(g, h)
                for m in range(num_points):
                    if self.act[g][self.act[h][m]] != self.act[gh][m]:
                        raise UsageError(f"action not compatible at (g,h,m)=({g},{h},{m})")

    def apply(self, g: int, m: int) -> int:
        return self.act[g][m]

    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.num_points
        out = []
        for m in range(self.num_points):
            if seen[m]:
                continue
            orb = sorted({self.act[g][m] for g in range(self.group.order)})
            for x in orb:
                seen[x] = True
            out.append(tuple(orb))
        return out

    def stabilizer(self, m: int) -> tuple[int, ...]:
        return tuple(g for g in range(self.group.order) if self.act[g][m] == m)

    def transversal(self, orbit: Sequence[int]) -> dict[int, int]:
        """For each point of the orbit, the smallest group element moving the
        orbit representative (its smallest point) there."""
        rep = min(orbit)
        out = {}
        for m in orbit:
            out[m] = next(g for g in range(self.group.order) if self.act[g][rep] == m)
        return out

    def __repr__(self) -> str:
        return f"GroupAction({self.num_points} points, |G|={self.group.order})"


def trivial_action(group: FiniteGroup, num_points: int = 1) -> GroupAction:
    return GroupAction(group, num_points, [list(range(num_points))] * group.order)


def conjugation_action(group: FiniteGroup) -> GroupAction:
    act = [[group.conj(g, m) for m in range(group.order)] for g in range(group.order)]
    return GroupAction(group, group.order, act)


def action_via_hom(
    points_group: FiniteGroup, acting: FiniteGroup, images: Sequence[int]
) -> GroupAction:
    """acting acts on the elements of points_group by conjugation through the
    given homomorphism images (acting element g conjugates by images[g])."""
    act = [
        [points_group.conj(images[g], m) for m in range(points_group.order)]
        for g in range(acting.order)
    ]
    return GroupAction(acting, points_group.order, act)


def groupoid_cardinality(action: GroupAction) -> Fraction:
    """Sum of 1/|stabilizer| over orbit representatives; equals |M|/|G|."""
    total = Fraction(0)
    for orb in action.orbits():
        total += Fraction(1, len(action.stabilizer(orb[0])))
    assert total == Fraction(action.num_points, action.group.order)
    return total


@dataclass(frozen=True)
class InertiaData:
    """Pairs (m, g) with g.m = m, plus the conjugation-style action on them."""

    base: GroupAction
    pairs: tuple[tuple[int, int], ...]
    pair_index: dict[tuple[int, int], int]
    action: GroupAction


def inertia(action: GroupAction) -> InertiaData:
    g = action.group
    pairs = [
        (m, x) for m in range(action.num_points) for x in range(g.order)
        if action.act[x][m] == m
    ]
    pairs.sort()
    index = {p: i for i, p in enumerate(pairs)}
    act_rows = []
    for h in range(g.order):
        row = []
        for (m, x) in pairs:
            row.append(index[(action.act[h][m], g.conj(h, x))])
        act_rows.append(row)
    return InertiaData(action, tuple(pairs), index, GroupAction(g, len(pairs), act_rows))


class GroupoidSimple:
    """A simple representation of M//G: an orbit plus a stabilizer irreducible,
    realized with explicit matrices via a fixed transversal."""

    def __init__(
        self,
        action: GroupAction,
        orbit: tuple[int, ...],
        stab_group: FiniteGroup,
        stab_embed: tuple[int, ...],
        stab_table: CharacterTable,
        row: int,
        rep: Optional[IrreducibleRep] = None,
    ):
        self.action = action
        self.orbit = orbit
        self.base_point = orbit[0]
        self.stab_group = stab_group
        self.stab_embed = stab_embed
        self._stab_index = {e: i for i, e in enumerate(stab_embed)}
        self.stab_table = stab_table
        self.row = row
        self.stab_degree = stab_table.degrees[row]
        self.total_dim = len(orbit) * self.stab_degree
        self.transversal = action.transversal(orbit)
        self._rep = rep

    def rep(self) -> IrreducibleRep:
        if self._rep is None:
            self._rep = irrep_matrices(self.stab_group, self.stab_table, self.row)
        return self._rep

    def _stab_conj(self, m: int, g: int) -> int:
        """Index in the stabilizer group of t_{g.m}^{-1} g t_m."""
        grp = self.action.group
        m2 = self.action.act[g][m]
        s = grp.mul(grp.inv[self.transversal[m2]], grp.mul(g, self.transversal[m]))
        assert s in self._stab_index, "transversal conjugate left the stabilizer"
        return self._stab_index[s]

    def character_at(self, m: int, g: int) -> Scalar:
        """Trace of the morphism (m, g) on its block; requires g.m = m."""
        assert self.action.act[g][m] == m, "character only defined on inertia pairs"
        if m not in self.transversal:
            return Fraction(0)
        return self.stab_table.rows[self.row][
            self.stab_table.conjugacy.class_of[self._stab_conj(m, g)]
        ]

    def character_vector(self, inert: InertiaData) -> list[Scalar]:
        return [self.character_at(m, g) for (m, g) in inert.pairs]

    def total_matrix(self, g: int) -> ExactMatrix:
        """Matrix of g on the sum of the orbit blocks (points ascending)."""
        d = self.stab_degree
        rep = self.rep()
        pos = {m: i for i, m in enumerate(self.orbit)}
        out = ExactMatrix.zeros(self.total_dim, self.total_dim)
        for m in self.orbit:
            m2 = self.action.act[g][m]
            block = rep.matrix(self._stab_conj(m, g))
            r0, c0 = pos[m2] * d, pos[m] * d
            for i in range(d):
                for j in range(d):
                    out[r0 + i, c0 + j] = block[i, j]
        return out

    def __repr__(self) -> str:
        return (
            f"GroupoidSimple(orbit={self.orbit}, stab_degree={self.stab_degree}, "
            f"total_dim={self.total_dim})"
        )


def simple_objects(action: GroupAction, with_matrices: bool = False) -> list[GroupoidSimple]:
    """All simples: orbits by smallest point, stabilizer irreducibles in table
    order. Their number equals the number of inertia orbits (checked)."""
    out: list[GroupoidSimple] = []
    for orbit in action.orbits():
        stab_elems = action.stabilizer(orbit[0])
        stab_group, embed = action.group.subgroup(stab_elems)
        table = character_table(stab_group)
        for row in range(len(table.rows)):
            simple = GroupoidSimple(action, orbit, stab_group, embed, table, row)
            if with_matrices:
                simple.rep()
            out.append(simple)
    inert = inertia(action)
    assert len(out) == len(inert.action.orbits()), "simple count != inertia orbit count"
    total = sum(s.total_dim ** 2 for s in out)
    assert total == action.num_points * action.group.order, "sum of squared dims"
    return out


def regular_character(inert: InertiaData) -> list[Scalar]:
    """chi(m, g) = |G| when g = 1 and 0 otherwise."""
    n = inert.base.group.order
    return [Fraction(n) if g == 0 else Fraction(0) for (_m, g) in inert.pairs]


def character_pairing(
    inert: InertiaData, f: Sequence[Scalar], f2: Sequence[Scalar]
) -> Scalar:
    """(1/|G|) sum over inertia pairs of f(m, g^{-1}) f2(m, g)."""
    grp = inert.base.group
    acc: Scalar = Fraction(0)
    for i, (m, g) in enumerate(inert.pairs):
        j = inert.pair_index[(m, grp.inv[g])]
        acc = acc + f[j] * f2[i]
    return acc * Fraction(1, grp.order)


def decompose_character(
    action: GroupAction, values: Sequence[Scalar]
) -> list[tuple[GroupoidSimple, Scalar]]:
    """Multiplicities of each simple in a character given on inertia pairs."""
    inert = inertia(action)
    out = []
    for s in simple_objects(action):
        mult = character_pairing(inert, list(values), s.character_vector(inert))
        out.append((s, mult))
    # the pairing with the input reproduced from multiplicities must match
    recon = [Fraction(0)] * len(inert.pairs)
    for s, mult in out:
        vec = s.character_vector(inert)
        recon = [r + mult * v for r, v in zip(recon, vec)]
    assert all(scalar_eq(a, b) for a, b in zip(recon, values)), "decomposition mismatch"
    return out
