"""Graded modules over the double of an extension, and the categorical layer:
fusion, sector action, braiding, twist, diagram checkers, S-matrix.

A module carries an H-grading (one H-element per basis vector) and one exact
matrix per G-element; the compatibility g.V_h <= V_{g h g^{-1}} (through the
inclusion of G into H) is the defining block condition. Simple modules come
from the conjugation groupoid H//G: one for each G-orbit in H and each
irreducible of the orbit's stabilizer.

All structural identifications (associativity of the fused basis, compatibility
of the sector action with fusion, duals of shifted modules) are identities on
the chosen bases, so diagrams are compared as plain matrix composites.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .doubles import SectorDouble, sector_double
from .errors import ResourceError, UsageError
from .groupoids import GroupoidSimple, simple_objects
from .groups import FiniteGroup, GroupExtension, extension_from_subgroup
from .linalg import ExactMatrix, mat_rank_det_kernel
from .scalars import Scalar, scalar_eq, scalar_is_zero

ZERO = Fraction(0)
ONE = Fraction(1)


def _kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    out = ExactMatrix.zeros(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            c = a[i, j]
            if scalar_is_zero(c):
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    out[i * b.rows + k, j * b.cols + l] = c * b[k, l]
    return out


def _mats_equal(a: ExactMatrix, b: ExactMatrix) -> bool:
    if a.rows != b.rows or a.cols != b.cols:
        return False
    if a.data == b.data:
        return True
    return all(scalar_eq(x, y) for x, y in zip(a.data, b.data))


class GradedModule:
    """An H-graded G-module attached to an extension 1 -> G -> H -> J -> 1."""

    def __init__(
        self,
        ext: GroupExtension,
        grades: Sequence[int],
        matrices: Sequence[ExactMatrix],
        name: str = "",
    ):
        self.ext = ext
        self.grades = tuple(grades)
        self.matrices = tuple(matrices)
        self.dim = len(self.grades)
        self.name = name
        if len(self.matrices) != ext.G.order:
            raise UsageError("one matrix per G-element required")
        ident = self.matrices[0]
        for r in range(self.dim):
            for c in range(self.dim):
                expect = ONE if r == c else ZERO
                if not scalar_eq(ident[r, c], expect):
                    raise UsageError("identity of G must act as the identity matrix")
        H = ext.H
        for g in range(ext.G.order):
            mat = self.matrices[g]
            if mat.rows != self.dim or mat.cols != self.dim:
                raise UsageError("action matrices must be square of the module dimension")
            hg = ext.incl(g)
            for r in range(self.dim):
                for c in range(self.dim):
                    if not scalar_is_zero(mat[r, c]) and self.grades[r] != H.conj(hg, self.grades[c]):
                        raise UsageError(f"action of g={g} violates the grade-conjugation block condition")

    def act(self, g: int) -> ExactMatrix:
        return self.matrices[g]

    def degree(self) -> Optional[int]:
        """The common sector of all grades, or None when mixed."""
        if self.dim == 0:
            return 0
        j = self.ext.proj(self.grades[0])
        if all(self.ext.proj(h) == j for h in self.grades):
            return j
        return None

    def validate_action(self) -> bool:
        """Full multiplicativity check rho(g)rho(g') = rho(gg')."""
        G = self.ext.G
        for g in range(G.order):
            for g2 in range(G.order):
                if not _mats_equal(self.matrices[g] @ self.matrices[g2], self.matrices[G.mul(g, g2)]):
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedModule):
            return NotImplemented
        return (
            self.ext is other.ext
            and self.grades == other.grades
            and all(_mats_equal(a, b) for a, b in zip(self.matrices, other.matrices))
        )

    def __repr__(self) -> str:
        return f"GradedModule({self.name or self.dim}, grades={self.grades})"


def unit_module(ext: GroupExtension) -> GradedModule:
    return GradedModule(ext, (0,), tuple(ExactMatrix.identity(1) for _ in range(ext.G.order)), name="1")


class ModuleMap:
    """A grading-preserving linear map between graded modules."""

    def __init__(self, source: GradedModule, target: GradedModule, matrix: ExactMatrix):
        if source.ext is not target.ext:
            raise UsageError("module map requires a common extension")
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise UsageError("module map matrix has wrong shape")
        for r in range(matrix.rows):
            for c in range(matrix.cols):
                if not scalar_is_zero(matrix[r, c]) and target.grades[r] != source.grades[c]:
                    raise UsageError("module map does not preserve the grading")
        self.source = source
        self.target = target
        self.matrix = matrix

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """Composite source -> self.target = other.source -> other.target."""
        if not (self.target == other.source):
            raise UsageError("composition mismatch: target differs from next source")
        return ModuleMap(self.source, other.target, other.matrix @ self.matrix)

    def intertwines(self) -> bool:
        for g in range(self.source.ext.G.order):
            if not _mats_equal(self.matrix @ self.source.act(g), self.target.act(g) @ self.matrix):
                return False
        return True

    def is_invertible(self) -> bool:
        if self.matrix.rows != self.matrix.cols:
            return False
        return not scalar_is_zero(mat_rank_det_kernel(self.matrix).det)

    def equals(self, other: "ModuleMap") -> bool:
        return (
            self.source == other.source
            and self.target == other.target
            and _mats_equal(self.matrix, other.matrix)
        )


def identity_map(v: GradedModule) -> ModuleMap:
    return ModuleMap(v, v, ExactMatrix.identity(v.dim))


def tensor_map(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    return ModuleMap(fuse(f.source, g.source), fuse(f.target, g.target), _kron(f.matrix, g.matrix))


def fuse(v: GradedModule, w: GradedModule) -> GradedModule:
    """Tensor product: grades multiply in H, G acts diagonally."""
    if v.ext is not w.ext:
        raise UsageError("fusion requires a common extension")
    H = v.ext.H
    grades = tuple(H.mul(a, b) for a in v.grades for b in w.grades)
    mats = tuple(_kron(v.act(g), w.act(g)) for g in range(v.ext.G.order))
    return GradedModule(v.ext, grades, mats, name=f"({v.name})*({w.name})")


def j_act(x: int, v: GradedModule) -> GradedModule:
    """Sector shift: grades conjugate by s(x^{-1})^{-1}, the G-action twists
    by conjugation with s(x^{-1})."""
    ext = v.ext
    H, J = ext.H, ext.J
    s = ext.section[J.inv[x]]
    s_inv = H.inv[s]
    grades = tuple(H.conj(s_inv, h) for h in v.grades)
    mats = tuple(v.act(ext.g_of(H.conj(s, ext.incl(g)))) for g in range(ext.G.order))
    return GradedModule(ext, grades, mats, name=f"{J.labels[x]}.({v.name})")


def j_act_map(x: int, f: ModuleMap) -> ModuleMap:
    """Sector shift of a morphism (same matrix, shifted modules)."""
    return ModuleMap(j_act(x, f.source), j_act(x, f.target), f.matrix)


def dual_module(v: GradedModule) -> GradedModule:
    """Dual space: grades invert, G acts by inverse transpose."""
    ext = v.ext
    grades = tuple(ext.H.inv[h] for h in v.grades)
    mats = tuple(v.act(ext.G.inv[g]).transpose() for g in range(ext.G.order))
    return GradedModule(ext, grades, mats, name=f"({v.name})^")


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual_module(f.target), dual_module(f.source), f.matrix.transpose())


def degree_split(v: GradedModule) -> dict[int, tuple[GradedModule, tuple[int, ...]]]:
    """Decompose along sectors: for each occurring sector j, the submodule
    spanned by the basis vectors graded in H_j, with their original indices."""
    ext = v.ext
    buckets: dict[int, list[int]] = {}
    for k, h in enumerate(v.grades):
        buckets.setdefault(ext.proj(h), []).append(k)
    out: dict[int, tuple[GradedModule, tuple[int, ...]]] = {}
    for j, idxs in sorted(buckets.items()):
        grades = tuple(v.grades[k] for k in idxs)
        mats = []
        for g in range(ext.G.order):
            big = v.act(g)
            sub = ExactMatrix.zeros(len(idxs), len(idxs))
            for r, kr in enumerate(idxs):
                for c, kc in enumerate(idxs):
                    sub[r, c] = big[kr, kc]
            mats.append(sub)
        out[j] = (GradedModule(ext, grades, tuple(mats), name=f"{v.name}|{j}"), tuple(idxs))
    return out


def _require_homogeneous(v: GradedModule, what: str) -> int:
    j = v.degree()
    if j is None:
        raise UsageError(f"{what} requires a homogeneous module; split by degree first")
    return j


def braid(v: GradedModule, w: GradedModule) -> ModuleMap:
    """Braiding V (x) W -> (j.W) (x) V for V homogeneous of sector j:
    v (x) w maps to (s(j^{-1})h).w (x) v on v of grade h."""
    j = _require_homogeneous(v, "braiding")
    ext = v.ext
    H = ext.H
    s = ext.section[ext.J.inv[j]]
    source = fuse(v, w)
    target = fuse(j_act(j, w), v)
    mat = ExactMatrix.zeros(target.dim, source.dim)
    for r in range(v.dim):
        u = ext.g_of(H.mul(s, v.grades[r]))
        act = w.act(u)
        for s_out in range(w.dim):
            for s_in in range(w.dim):
                c = act[s_out, s_in]
                if not scalar_is_zero(c):
                    mat[s_out * v.dim + r, r * w.dim + s_in] = c
    return ModuleMap(source, target, mat)


def twist(v: GradedModule) -> ModuleMap:
    """Twist V -> j.V for V homogeneous of sector j: v of grade h maps to
    (s(j^{-1})h).v."""
    j = _require_homogeneous(v, "twist")
    ext = v.ext
    H = ext.H
    s = ext.section[ext.J.inv[j]]
    target = j_act(j, v)
    mat = ExactMatrix.zeros(v.dim, v.dim)
    for c in range(v.dim):
        u = ext.g_of(H.mul(s, v.grades[c]))
        act = v.act(u)
        for r in range(v.dim):
            if not scalar_is_zero(act[r, c]):
                mat[r, c] = act[r, c]
    return ModuleMap(v, target, mat)


def compositor(i: int, j: int, v: GradedModule) -> ModuleMap:
    """The canonical map i.(j.V) -> (ij).V, acting by the inverse of the
    section defect s(j^{-1})s(i^{-1})s(j^{-1}i^{-1})^{-1}."""
    ext = v.ext
    H, J = ext.H, ext.J
    i_inv, j_inv = J.inv[i], J.inv[j]
    defect = H.mul(H.mul(ext.section[j_inv], ext.section[i_inv]), H.inv[ext.section[J.mul(j_inv, i_inv)]])
    g = ext.g_of(H.inv[defect])
    source = j_act(i, j_act(j, v))
    target = j_act(J.mul(i, j), v)
    return ModuleMap(source, target, v.act(g))


def double_action(sd: SectorDouble, v: GradedModule, idx: int) -> ExactMatrix:
    """Action of the double's basis element delta_h (x) g: apply g, keep the
    rows graded by h."""
    h, g = sd.label_of(idx)
    mat = v.act(g)
    out = ExactMatrix.zeros(v.dim, v.dim)
    for r in range(v.dim):
        if v.grades[r] != h:
            continue
        for c in range(v.dim):
            out[r, c] = mat[r, c]
    return out


def r_action_map(sd: SectorDouble, v: GradedModule, w: GradedModule) -> ModuleMap:
    """Flip composed with the action of the graded R-matrix on V (x) W; by
    construction a map V (x) W -> (j.W) (x) V for V homogeneous of sector j."""
    j = _require_homogeneous(v, "R-matrix action")
    source = fuse(v, w)
    target = fuse(j_act(j, w), v)
    mat = ExactMatrix.zeros(target.dim, source.dim)
    for ten in sd.r_sector.values():
        for (a1, a2), coef in ten.items():
            m1 = double_action(sd, v, a1)
            m2 = double_action(sd, w, a2)
            for r_out in range(v.dim):
                for r_in in range(v.dim):
                    c1 = m1[r_out, r_in]
                    if scalar_is_zero(c1):
                        continue
                    for s_out in range(w.dim):
                        for s_in in range(w.dim):
                            c2 = m2[s_out, s_in]
                            if scalar_is_zero(c2):
                                continue
                            row = s_out * v.dim + r_out
                            col = r_in * w.dim + s_in
                            mat[row, col] = mat[row, col] + coef * c1 * c2
    return ModuleMap(source, target, mat)


def simples_of_double(ext: GroupExtension) -> list[GradedModule]:
    """Complete list of simple graded modules: one per G-orbit in H and
    stabilizer irreducible, ordered by smallest orbit element then character
    row. Basis: orbit points ascending, each carrying the irreducible's slots."""
    simples = simple_objects(_conj_groupoid(ext))
    out = []
    for s in simples:
        out.append(_module_from_groupoid_simple(ext, s))
    return out


def _conj_groupoid(ext: GroupExtension):
    from .groupoids import GroupAction

    H, G = ext.H, ext.G
    rows = []
    for g in range(G.order):
        hg = ext.incl(g)
        rows.append([H.conj(hg, m) for m in range(H.order)])
    return GroupAction(G, H.order, rows)


def _module_from_groupoid_simple(ext: GroupExtension, s: GroupoidSimple) -> GradedModule:
    d = s.stab_degree
    grades = tuple(m for m in s.orbit for _ in range(d))
    mats = tuple(s.total_matrix(g) for g in range(ext.G.order))
    name = f"[{s.orbit[0]}]x{s.row}"
    return GradedModule(ext, grades, mats, name=name)


# -- S-matrix -----------------------------------------------------------------


@dataclass
class SMatrix:
    """Unnormalized matrix of double-braiding traces between the simples of
    the double of a single group (orbit label, character row)."""

    labels: tuple[tuple[int, int], ...]
    matrix: ExactMatrix
    group_order: int

    def is_invertible(self) -> bool:
        return not scalar_is_zero(mat_rank_det_kernel(self.matrix).det)

    def is_symmetric(self) -> bool:
        return _mats_equal(self.matrix, self.matrix.transpose())


S_MATRIX_ORDER_BOUND = 24


def trivial_extension(h_group: FiniteGroup) -> GroupExtension:
    return extension_from_subgroup(h_group, list(range(h_group.order)), name=f"{h_group.order}-triv")


def s_matrix(h_group: FiniteGroup) -> SMatrix:
    """Traces of double braidings between all simples of the double of the
    group, computed from the explicit braiding maps."""
    if h_group.order > S_MATRIX_ORDER_BOUND:
        raise ResourceError(f"group order {h_group.order} exceeds the S-matrix bound {S_MATRIX_ORDER_BOUND}")
    ext = trivial_extension(h_group)
    gsimples = simple_objects(_conj_groupoid(ext))
    modules = [_module_from_groupoid_simple(ext, s) for s in gsimples]
    labels = tuple((s.orbit[0], s.row) for s in gsimples)
    n = len(modules)
    mat = ExactMatrix.zeros(n, n)
    for a in range(n):
        for b in range(n):
            forward = braid(modules[a], modules[b])
            backward = braid(modules[b], modules[a])
            mat[a, b] = (backward.matrix @ forward.matrix).trace()
    return SMatrix(labels, mat, h_group.order)


def s_matrix_character_formula(h_group: FiniteGroup) -> SMatrix:
    """Independent S-matrix from conjugacy data alone: sum the two groupoid
    characters over commuting pairs drawn from the two orbits."""
    if h_group.order > S_MATRIX_ORDER_BOUND:
        raise ResourceError(f"group order {h_group.order} exceeds the S-matrix bound {S_MATRIX_ORDER_BOUND}")
    ext = trivial_extension(h_group)
    gsimples = simple_objects(_conj_groupoid(ext))
    labels = tuple((s.orbit[0], s.row) for s in gsimples)
    n = len(gsimples)
    mat = ExactMatrix.zeros(n, n)
    for a in range(n):
        for b in range(n):
            acc: Scalar = Fraction(0)
            for x in gsimples[a].orbit:
                for y in gsimples[b].orbit:
                    if h_group.mul(x, y) != h_group.mul(y, x):
                        continue
                    acc = acc + gsimples[a].character_at(x, ext.g_of(y)) * gsimples[b].character_at(y, ext.g_of(x))
            mat[a, b] = acc
    return SMatrix(labels, mat, h_group.order)


@dataclass
class ModularityVerdict:
    """Invertibility of the S-matrix of the double of H, and the equivalent
    claim for the graded category of the extension (they agree by the
    crossed-product identification, which is checked alongside)."""

    orbifold_modular: bool
    j_modular_claim: bool
    identification_checked: bool


def modularity_verdict(ext: GroupExtension) -> ModularityVerdict:
    from .orbifold import psi_check

    invertible = s_matrix(ext.H).is_invertible()
    identified = psi_check(ext).all_passed
    return ModularityVerdict(
        orbifold_modular=invertible,
        j_modular_claim=invertible,
        identification_checked=identified,
    )


# -- diagram checks -----------------------------------------------------------


@dataclass
class DiagramReport:
    """Outcome of the categorical coherence checks on a sample of modules."""

    counts: dict[str, int] = field(default_factory=dict)
    failures: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)

    def record(self, diagram: str, labels: tuple[str, ...], ok: bool) -> None:
        self.counts[diagram] = self.counts.get(diagram, 0) + 1
        if not ok:
            self.failures.append((diagram, labels))

    @property
    def all_passed(self) -> bool:
        return not self.failures


def hexagon_one_holds(u: GradedModule, v: GradedModule, w: GradedModule) -> bool:
    """c_{U,V(x)W} equals (id (x) c_{U,W}) after (c_{U,V} (x) id)."""
    i = _require_homogeneous(u, "hexagon")
    lhs = braid(u, fuse(v, w))
    rhs = tensor_map(braid(u, v), identity_map(w)).then(
        tensor_map(identity_map(j_act(i, v)), braid(u, w))
    )
    return _mats_equal(lhs.matrix, rhs.matrix)


def hexagon_two_holds(u: GradedModule, v: GradedModule, w: GradedModule) -> bool:
    """c_{U(x)V,W} equals the compositor-corrected two-step braiding."""
    i = _require_homogeneous(u, "hexagon")
    j = _require_homogeneous(v, "hexagon")
    lhs = braid(fuse(u, v), w)
    rhs = (
        tensor_map(identity_map(u), braid(v, w))
        .then(tensor_map(braid(u, j_act(j, w)), identity_map(v)))
        .then(tensor_map(compositor(i, j, w), identity_map(fuse(u, v))))
    )
    return _mats_equal(lhs.matrix, rhs.matrix)


def action_braiding_holds(i: int, u: GradedModule, v: GradedModule) -> bool:
    """The sector shift of the braiding matches the braiding of the shifted
    modules, up to compositors."""
    j = _require_homogeneous(u, "action-braiding")
    J = u.ext.J
    lhs = j_act_map(i, braid(u, v)).then(
        tensor_map(compositor(i, j, v), identity_map(j_act(i, u)))
    )
    iji = J.mul(J.mul(i, j), J.inv[i])
    rhs = braid(j_act(i, u), j_act(i, v)).then(
        tensor_map(compositor(iji, i, v), identity_map(j_act(i, u)))
    )
    return lhs.equals(rhs)


def twist_product_holds(u: GradedModule, v: GradedModule) -> bool:
    """The twist of a product factors through the two twists, two braidings
    and two compositors."""
    i = _require_homogeneous(u, "twist diagram")
    j = _require_homogeneous(v, "twist diagram")
    J = u.ext.J
    ij = J.mul(i, j)
    iji = J.mul(ij, J.inv[i])
    lhs = twist(fuse(u, v))
    rhs = (
        tensor_map(twist(u), twist(v))
        .then(braid(j_act(i, u), j_act(j, v)))
        .then(tensor_map(compositor(i, j, v), identity_map(j_act(i, u))))
        .then(braid(j_act(ij, v), j_act(i, u)))
        .then(tensor_map(compositor(iji, i, u), identity_map(j_act(ij, v))))
    )
    return lhs.equals(rhs)


def twist_duality_holds(v: GradedModule) -> bool:
    """The dual of the twist equals the twist of the shifted dual followed by
    the compositor down to the plain dual."""
    j = _require_homogeneous(v, "twist diagram")
    J = v.ext.J
    dv = dual_module(v)
    lhs = dual_map(twist(v))
    rhs = twist(j_act(j, dv)).then(compositor(J.inv[j], j, dv))
    return lhs.equals(rhs)


def twist_action_holds(i: int, v: GradedModule) -> bool:
    """Shifting the twist and twisting the shift agree through compositors."""
    j = _require_homogeneous(v, "twist diagram")
    J = v.ext.J
    iji = J.mul(J.mul(i, j), J.inv[i])
    lhs = j_act_map(i, twist(v)).then(compositor(i, j, v))
    rhs = twist(j_act(i, v)).then(compositor(iji, i, v))
    return lhs.equals(rhs)


def check_equivariant_diagrams(
    ext: GroupExtension, sample: Optional[Sequence[GradedModule]] = None
) -> DiagramReport:
    """Run every categorical coherence check on all (ordered) tuples drawn
    from the sample (default: all simples): the two braiding hexagons, the
    action-braiding square, the twist-product diagram, the twist-duality and
    twist-action diagrams, and agreement of the braiding with the R-matrix
    action."""
    mods = list(sample) if sample is not None else simples_of_double(ext)
    for v in mods:
        if v.degree() is None:
            raise UsageError("diagram checks need homogeneous sample modules")
    sd = sector_double(ext)
    report = DiagramReport()
    names = [m.name for m in mods]
    n_j = ext.J.order
    for a, u in enumerate(mods):
        for b, v in enumerate(mods):
            for c, w in enumerate(mods):
                labels = (names[a], names[b], names[c])
                report.record("hexagon-one", labels, hexagon_one_holds(u, v, w))
                report.record("hexagon-two", labels, hexagon_two_holds(u, v, w))
    for i in range(n_j):
        for a, u in enumerate(mods):
            for b, v in enumerate(mods):
                labels = (ext.J.labels[i], names[a], names[b])
                report.record("action-braiding", labels, action_braiding_holds(i, u, v))
    for a, u in enumerate(mods):
        for b, v in enumerate(mods):
            labels = (names[a], names[b])
            report.record("twist-product", labels, twist_product_holds(u, v))
            report.record(
                "braid-equals-r-action",
                labels,
                braid(u, v).equals(r_action_map(sd, u, v)),
            )
    for i in range(n_j):
        for a, v in enumerate(mods):
            report.record("twist-action", (ext.J.labels[i], names[a]), twist_action_holds(i, v))
    for a, v in enumerate(mods):
        report.record("twist-duality", (names[a],), twist_duality_holds(v))
    return report
