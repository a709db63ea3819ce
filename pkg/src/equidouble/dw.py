"""Counting invariants of flat bundles over presented spaces.

A space enters through a presentation of its fundamental group (generators
and relator words). Bundles with finite structure group G are then the
group homomorphisms from that presentation into G, the gauge groupoid is
the conjugation action on the homomorphism set, and the partition-function
invariant is the homomorphism count divided by |G|.

The twisted variants fix a homomorphism to the quotient J of an extension
1 -> G -> H -> J -> 1 and count lifts to H (bundle picture) or nonabelian
1-cocycles on a cover nerve (local-data picture).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import ResourceError, UsageError
from .groupoids import GroupAction
from .groups import FiniteGroup, GroupExtension, WeakAction

GENERATOR_BOUND = 4
DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator count plus relator words.

    Relator letters are signed 1-based generator indices, so the word
    (1, 2, -1, -2) is the commutator of the first two generators.
    """

    generators: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.generators < 0:
            raise UsageError("generator count must be nonnegative")
        for rel in self.relations:
            for letter in rel:
                if letter == 0 or abs(letter) > self.generators:
                    raise UsageError(f"relator letter {letter} out of range for {self.generators} generators")


def evaluate_word(group: FiniteGroup, images: Sequence[int], word: Iterable[int]) -> int:
    """Image of a relator word under the given generator assignments."""
    out = 0
    for letter in word:
        x = images[abs(letter) - 1]
        out = group.mul(out, x if letter > 0 else group.inv[x])
    return out


def _relations_by_depth(pres: Presentation) -> list[list[tuple[int, ...]]]:
    """Bucket relators by the largest generator they mention, so each can be
    checked as soon as that generator receives an image."""
    buckets: list[list[tuple[int, ...]]] = [[] for _ in range(pres.generators + 1)]
    for rel in pres.relations:
        depth = max((abs(letter) for letter in rel), default=0)
        buckets[depth].append(rel)
    return buckets


def _require_budget(pres: Presentation, fiber_size: int, budget: int) -> None:
    size = fiber_size ** pres.generators
    if pres.generators <= GENERATOR_BOUND or size <= budget:
        return
    raise ResourceError(
        f"homomorphism search space {fiber_size}^{pres.generators} = {size} exceeds budget {budget}"
    )


def _iter_assignments(
    group: FiniteGroup,
    candidates: Sequence[Sequence[int]],
    buckets: Sequence[Sequence[tuple[int, ...]]],
) -> Iterator[tuple[int, ...]]:
    """Depth-first search over per-generator candidate images. A relator is
    checked at the first depth where all its letters have images, pruning
    failed branches before deeper generators are assigned."""
    n = len(candidates)
    images: list[int] = []

    def extend() -> Iterator[tuple[int, ...]]:
        depth = len(images)
        if depth == n:
            yield tuple(images)
            return
        for x in candidates[depth]:
            images.append(x)
            if all(evaluate_word(group, images, rel) == 0 for rel in buckets[depth + 1]):
                yield from extend()
            images.pop()

    if all(evaluate_word(group, (), rel) == 0 for rel in buckets[0]):
        yield from extend()


def _iter_homs(pres: Presentation, group: FiniteGroup, budget: int) -> Iterator[tuple[int, ...]]:
    _require_budget(pres, group.order, budget)
    candidates = [range(group.order)] * pres.generators
    return _iter_assignments(group, candidates, _relations_by_depth(pres))


def count_homs(pres: Presentation, group: FiniteGroup, budget: int = DEFAULT_BUDGET) -> int:
    """Number of homomorphisms from the presented group into `group`."""
    return sum(1 for _ in _iter_homs(pres, group, budget))


def homomorphisms(pres: Presentation, group: FiniteGroup, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All homomorphisms as generator-image tuples, in lexicographic order."""
    return list(_iter_homs(pres, group, budget))


def dw_invariant(pres: Presentation, group: FiniteGroup, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Partition function: homomorphism count weighted by 1/|G|.

    Equals the cardinality of the gauge groupoid Hom//G.
    """
    return Fraction(count_homs(pres, group, budget), group.order)


def _conjugation_on_tuples(
    group: FiniteGroup,
    points: Sequence[tuple[int, ...]],
    conjugate: Callable[[int, int], int],
) -> GroupAction:
    index = {pt: i for i, pt in enumerate(points)}
    act = []
    for g in range(group.order):
        row = []
        for pt in points:
            moved = tuple(conjugate(g, x) for x in pt)
            row.append(index[moved])
        act.append(row)
    return GroupAction(group, len(points), act)


def hom_groupoid(
    pres: Presentation, group: FiniteGroup, budget: int = DEFAULT_BUDGET
) -> tuple[GroupAction, tuple[tuple[int, ...], ...]]:
    """Gauge groupoid Hom(pres, group)//group: the conjugation action on the
    homomorphism set. Returns the action and the homomorphism tuples its
    points stand for."""
    points = tuple(_iter_homs(pres, group, budget))
    action = _conjugation_on_tuples(group, points, group.conj)
    return action, points


def surface_presentation(genus: int) -> Presentation:
    """Fundamental group of the closed orientable surface of the given genus:
    2g generators with the single product-of-commutators relator."""
    if genus < 0:
        raise UsageError("genus must be nonnegative")
    if genus == 0:
        return Presentation(0, ())
    word: list[int] = []
    for i in range(genus):
        a = 2 * i + 1
        b = 2 * i + 2
        word.extend([a, b, -a, -b])
    return Presentation(2 * genus, (tuple(word),))


def surface_state_dim(genus: int, group: FiniteGroup, budget: int = DEFAULT_BUDGET) -> int:
    """Dimension of the state space the theory assigns to a closed surface:
    the number of gauge orbits of surface-group homomorphisms."""
    action, _ = hom_groupoid(surface_presentation(genus), group, budget)
    return len(action.orbits())


@dataclass(frozen=True)
class TwistHom:
    """A homomorphism from a presented group to the quotient group J,
    recorded by generator images and validated on every relator."""

    presentation: Presentation
    j_group: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.presentation.generators:
            raise UsageError("one J-image per generator required")
        for j in self.images:
            if not 0 <= j < self.j_group.order:
                raise UsageError(f"J-image {j} out of range")
        for rel in self.presentation.relations:
            if evaluate_word(self.j_group, self.images, rel) != 0:
                raise UsageError(f"relator {rel} does not map to the identity in J")


def twisted_bundle_groupoid(
    twist: TwistHom, ext: GroupExtension, budget: int = DEFAULT_BUDGET
) -> tuple[GroupAction, tuple[tuple[int, ...], ...]]:
    """Groupoid of H-lifts of the fixed J-holonomy: generator images in H
    projecting to the prescribed J-images and killing every relator, with
    the kernel G acting by conjugation through its inclusion.

    For the circle presentation with image j this is the sector groupoid
    H_j//G on the fiber over j.
    """
    if twist.j_group is not ext.J and twist.j_group.table != ext.J.table:
        raise UsageError("twist homomorphism must land in the extension quotient")
    pres = twist.presentation
    h_group = ext.H
    _require_budget(pres, ext.G.order, budget)
    candidates = [ext.fiber(j) for j in twist.images]
    points = tuple(_iter_assignments(h_group, candidates, _relations_by_depth(pres)))

    def conj_through_incl(g: int, h: int) -> int:
        return h_group.conj(ext.incl(g), h)

    action = _conjugation_on_tuples(ext.G, points, conj_through_incl)
    return action, points


@dataclass(frozen=True)
class CoverNerve:
    """Combinatorial nerve of an open cover carrying a J-valued 1-cocycle.

    Edges are ordered pairs (a, b) with a < b of overlapping patches, each
    labeled by a J-element j_ab; triangles (a, b, c) with a < b < c record
    triple overlaps, on which the labels must compose: j_ab * j_bc = j_ac.
    """

    j_group: FiniteGroup
    vertices: int
    edges: tuple[tuple[int, int], ...]
    jlabels: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        if len(self.jlabels) != len(self.edges):
            raise UsageError("one J-label per edge required")
        seen = set()
        for (a, b) in self.edges:
            if not (0 <= a < b < self.vertices):
                raise UsageError(f"edge ({a},{b}) must satisfy 0 <= a < b < vertices")
            if (a, b) in seen:
                raise UsageError(f"duplicate edge ({a},{b})")
            seen.add((a, b))
        for j in self.jlabels:
            if not 0 <= j < self.j_group.order:
                raise UsageError(f"J-label {j} out of range")
        for (a, b, c) in self.triangles:
            if not (a < b < c):
                raise UsageError("triangle vertices must be strictly increasing")
            jab = self.jlabel(a, b)
            jbc = self.jlabel(b, c)
            jac = self.jlabel(a, c)
            if self.j_group.mul(jab, jbc) != jac:
                raise UsageError(f"J-labels do not compose on triangle ({a},{b},{c})")

    def edge_index(self, a: int, b: int) -> int:
        assert a < b
        return self.edges.index((a, b))

    def jlabel(self, a: int, b: int) -> int:
        idx = self.edge_index(a, b)
        return self.jlabels[idx]


def circle_nerve(j_group: FiniteGroup, monodromy: int) -> CoverNerve:
    """Three arcs covering the circle: pairwise overlaps but no triple ones.
    The labels are arranged so the holonomy around the circle is the given
    J-element."""
    inv = j_group.inv[monodromy]
    return CoverNerve(j_group, 3, ((0, 1), (1, 2), (0, 2)), (0, 0, inv), ())


@dataclass(frozen=True)
class CechClasses:
    """Twisted nonabelian 1-cocycles on a nerve, up to coboundary."""

    count: int
    representatives: tuple[tuple[int, ...], ...]


def twisted_cech_h1(nerve: CoverNerve, wa: WeakAction, budget: int = DEFAULT_BUDGET) -> CechClasses:
    """Enumerate G-valued 1-cochains g_ab on the nerve edges satisfying the
    twisted cocycle relation on every triangle,

        g_ab * rho_{j_ab}(g_bc) * c[j_ab][j_bc] = g_ac,

    and quotient by the twisted coboundary action of G-valued 0-cochains k,

        g_ab  ->  k_a * g_ab * rho_{j_ab}(k_b)^{-1}.
    """
    if wa.J.table != nerve.j_group.table:
        raise UsageError("nerve J-labels must live in the weak action's J")
    group = wa.G
    n_edges = len(nerve.edges)
    size = group.order ** n_edges
    if size > budget:
        raise ResourceError(f"cocycle search space {group.order}^{n_edges} = {size} exceeds budget {budget}")

    tri_edges = [
        (nerve.edge_index(a, b), nerve.edge_index(b, c), nerve.edge_index(a, c))
        for (a, b, c) in nerve.triangles
    ]
    tri_labels = [(nerve.jlabel(a, b), nerve.jlabel(b, c)) for (a, b, c) in nerve.triangles]

    def is_cocycle(cochain: tuple[int, ...]) -> bool:
        for (eab, ebc, eac), (jab, jbc) in zip(tri_edges, tri_labels):
            lhs = group.mul(cochain[eab], wa.rho[jab](cochain[ebc]))
            lhs = group.mul(lhs, wa.c[jab][jbc])
            if lhs != cochain[eac]:
                return False
        return True

    cocycles = [z for z in itertools.product(range(group.order), repeat=n_edges) if is_cocycle(z)]
    cocycle_set = set(cocycles)

    def coboundary(k: tuple[int, ...], cochain: tuple[int, ...]) -> tuple[int, ...]:
        out = []
        for idx, (a, b) in enumerate(nerve.edges):
            jab = nerve.jlabels[idx]
            moved = group.mul(k[a], cochain[idx])
            moved = group.mul(moved, group.inv[wa.rho[jab](k[b])])
            out.append(moved)
        return tuple(out)

    reps: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for z in cocycles:
        if z in seen:
            continue
        reps.append(z)
        stack = [z]
        seen.add(z)
        while stack:
            cur = stack.pop()
            for k in itertools.product(range(group.order), repeat=nerve.vertices):
                nxt = coboundary(k, cur)
                assert nxt in cocycle_set
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return CechClasses(len(reps), tuple(reps))


_NAMED_PRESENTATIONS = {
    "S3sphere": Presentation(0, ()),
    "S2xS1": Presentation(1, ()),
    "circle": Presentation(1, ()),
    "T2": Presentation(2, ((1, 2, -1, -2),)),
    "T3": Presentation(3, ((1, 2, -1, -2), (1, 3, -1, -3), (2, 3, -2, -3))),
}


def presentation_names() -> list[str]:
    return sorted(_NAMED_PRESENTATIONS) + ["Sigma_g"]


def presentation_by_name(name: str) -> Presentation:
    """Builtin presentations; "Sigma_<g>" gives the genus-g surface group."""
    if name in _NAMED_PRESENTATIONS:
        return _NAMED_PRESENTATIONS[name]
    if name.startswith("Sigma_"):
        suffix = name[len("Sigma_"):]
        if suffix.isdigit():
            return surface_presentation(int(suffix))
    raise UsageError(f"unknown presentation {name!r}")
