"""Exact character tables by the modular (Dixon) method, plus explicit
matrices for each irreducible representation.

The table is computed as common eigenvectors of class-sum matrices over a
prime field F_p with p = 1 mod exponent(G), then lifted to Q(zeta_e) by a
discrete Fourier transform over the cyclic group generated by each class
representative. Matrices for an irreducible come from a left ideal of the
group algebra cut out by a rank-compatible pair (subgroup, linear character).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .errors import ResourceError
from .groups import ConjugacyData, FiniteGroup
from .linalg import ExactMatrix, solve
from .scalars import (
    Cyclotomic,
    Scalar,
    cyclotomic_conjugate,
    is_prime,
    scalar_eq,
    scalar_is_zero,
)

# -- prime-field dense helpers (plain int lists, entries reduced mod p) ------


def _kernel_fp(a: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right kernel of a over F_p."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [row[:] for row in a]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(cols):
        pr = next((i for i in range(r, rows) if m[i][col] % p), -1)
        if pr < 0:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][col], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append((r, col))
        r += 1
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(cols):
        if free in pivot_cols:
            continue
        v = [0] * cols
        v[free] = 1
        for ri, col in pivots:
            v[col] = (-m[ri][free]) % p
        basis.append(v)
    return basis


def _solve_in_span_fp(
    basis: list[list[int]], targets: list[list[int]], p: int
) -> list[list[int]]:
    """Coordinates of each target in span(basis); result[i][j] = coeff of
    basis[i] in targets[j]. Asserts the targets do lie in the span."""
    k = len(basis[0])
    m = len(basis)
    t = len(targets)
    aug = [[basis[i][r] for i in range(m)] + [targets[j][r] for j in range(t)] for r in range(k)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(m):
        pr = next((i for i in range(r, k) if aug[i][col] % p), -1)
        assert pr >= 0, "basis vectors are dependent"
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][col], p - 2, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(k):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, k):
        assert all(x % p == 0 for x in aug[i][m:]), "target not in span"
    coords = [[0] * t for _ in range(m)]
    for ri, col in pivots:
        for j in range(t):
            coords[col][j] = aug[ri][m + j] % p
    return coords


def _charpoly_fp(a: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial det(xI - a) over F_p, ascending coefficients.

    Similarity-reduces to upper Hessenberg form, then uses the leading-minor
    recurrence; only divides by field elements, so any p works.
    """
    n = len(a)
    h = [[x % p for x in row] for row in a]
    for j in range(n - 2):
        pr = next((r for r in range(j + 1, n) if h[r][j]), -1)
        if pr < 0:
            continue
        if pr != j + 1:
            h[j + 1], h[pr] = h[pr], h[j + 1]
            for row in h:
                row[j + 1], row[pr] = row[pr], row[j + 1]
        inv = pow(h[j + 1][j], p - 2, p)
        for r in range(j + 2, n):
            f = h[r][j] * inv % p
            if f:
                hj1 = h[j + 1]
                h[r] = [(x - f * y) % p for x, y in zip(h[r], hj1)]
                for rr in range(n):
                    h[rr][j + 1] = (h[rr][j + 1] + f * h[rr][r]) % p
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        d = h[k - 1][k - 1]
        prev = polys[k - 1]
        # (x - d) * prev
        cur = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % p
            cur[i] = (cur[i] - d * c) % p
        run = 1
        for i in range(k - 2, -1, -1):
            run = run * h[i + 1][i] % p
            if run == 0:
                break
            coeff = h[i][k - 1] * run % p
            if coeff:
                pi = polys[i]
                for m, c in enumerate(pi):
                    cur[m] = (cur[m] - coeff * c) % p
        polys.append(cur)
    return polys[n]


def _poly_roots_fp(coeffs: list[int], p: int) -> list[int]:
    """All roots in F_p by direct scan (p stays small for our group sizes)."""
    roots = []
    for lam in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * lam + c) % p
        if acc == 0:
            roots.append(lam)
    return roots


def _find_dixon_prime(group_order: int, exponent: int) -> int:
    """Smallest p = 1 mod e with p prime, p not dividing |G|, p > 2 sqrt|G|."""
    bound = isqrt(4 * group_order)
    p = exponent + 1
    while True:
        if p > bound and is_prime(p) and group_order % p != 0:
            return p
        p += exponent
        assert p < 10 ** 9, "prime search runaway"


def _root_of_unity_fp(p: int, e: int) -> int:
    """An element of exact multiplicative order e in F_p (requires e | p-1)."""
    assert (p - 1) % e == 0
    n = p - 1
    factors = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in factors):
            return pow(g, n // e, p)
    raise AssertionError("no generator found")


# -- the table ---------------------------------------------------------------


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters as rows over conjugacy classes.

    rows[r][l] is the value on the class with representative
    conjugacy.representatives[l]; rows are sorted by (degree, entries) with
    the trivial character first.
    """

    group: FiniteGroup
    conjugacy: ConjugacyData
    rows: tuple[tuple[Scalar, ...], ...]
    degrees: tuple[int, ...]
    conductor: int

    def value(self, r: int, element: int) -> Scalar:
        return self.rows[r][self.conjugacy.class_of[element]]

    def num_irreducibles(self) -> int:
        return len(self.rows)


_TABLE_CACHE: dict[tuple, CharacterTable] = {}


def character_table(g: FiniteGroup) -> CharacterTable:
    key = g.table
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    out = _character_table_uncached(g)
    _TABLE_CACHE[key] = out
    return out


def _character_table_uncached(g: FiniteGroup) -> CharacterTable:
    cd = g.conjugacy()
    k = len(cd.classes)
    n = g.order
    e = g.exponent()
    if k == 1:
        return CharacterTable(g, cd, ((Fraction(1),),), (1,), 1)

    p = _find_dixon_prime(n, e)
    omega = _root_of_unity_fp(p, e)

    # class-sum matrices: M_i[j][l] = #{x in C_i : x^{-1} z_l in C_j}
    class_mats = []
    for i in range(k):
        m = [[0] * k for _ in range(k)]
        for l in range(k):
            z = cd.representatives[l]
            for x in cd.classes[i]:
                j = cd.class_of[g.mul(g.inv[x], z)]
                m[j][l] += 1
        class_mats.append(m)

    # split F_p^k into common eigenlines of the class-sum matrices; an
    # eigenspace that is still multi-dimensional is kept whole and refined
    # by the next class matrix
    spaces: list[list[list[int]]] = [[[1 if r == c else 0 for c in range(k)] for r in range(k)]]
    for mat in class_mats[1:]:
        if all(len(b) == 1 for b in spaces):
            break
        next_spaces: list[list[list[int]]] = []
        for basis in spaces:
            if len(basis) == 1:
                next_spaces.append(basis)
                continue
            images = []
            for v in basis:
                images.append([sum(mat[j][l] * v[l] for l in range(k)) % p for j in range(k)])
            restricted = _solve_in_span_fp(basis, images, p)
            m = len(basis)
            for lam in _poly_roots_fp(_charpoly_fp(restricted, p), p):
                shifted = [
                    [(restricted[i][j] - (lam if i == j else 0)) % p for j in range(m)]
                    for i in range(m)
                ]
                eig = [
                    [sum(kv[i] * basis[i][r] for i in range(m)) % p for r in range(k)]
                    for kv in _kernel_fp(shifted, p)
                ]
                assert eig, "charpoly root with empty eigenspace"
                next_spaces.append(eig)
        spaces = next_spaces
    assert all(len(b) == 1 for b in spaces), "class matrices failed to split"
    assert len(spaces) == k, f"expected {k} eigenlines, got {len(spaces)}"

    h_sizes = [len(c) for c in cd.classes]
    inv_class = [cd.class_of[g.inv[cd.representatives[l]]] for l in range(k)]

    rows: list[tuple[Scalar, ...]] = []
    degrees: list[int] = []
    seen_lines = set()
    for (v,) in spaces:
        assert v[0] % p != 0, "eigenvector vanishes on the identity class"
        scale = pow(v[0], p - 2, p)
        v = [x * scale % p for x in v]
        line = tuple(v)
        assert line not in seen_lines, "duplicate eigenline"
        seen_lines.add(line)
        s = 0
        for l in range(k):
            s = (s + v[l] * v[inv_class[l]] * pow(h_sizes[l], p - 2, p)) % p
        d_sq = n * pow(s, p - 2, p) % p
        degree = next(
            (d for d in range(1, isqrt(n) + 1) if d * d % p == d_sq), None
        )
        assert degree is not None, "no integer degree matches mod p"
        chi_fp = [degree * v[l] * pow(h_sizes[l], p - 2, p) % p for l in range(k)]

        row: list[Scalar] = []
        e_inv = pow(e, p - 2, p)
        omega_inv = pow(omega, p - 2, p)
        for l in range(k):
            z = cd.representatives[l]
            # chi values along the cyclic group generated by z
            powers = []
            y = 0
            for _s in range(e):
                powers.append(chi_fp[cd.class_of[y]])
                y = g.mul(y, z)
            mults = []
            for t in range(e):
                acc = 0
                step = pow(omega_inv, t, p)
                ws = 1
                for s_idx in range(e):
                    acc = (acc + powers[s_idx] * ws) % p
                    ws = ws * step % p
                mults.append(acc * e_inv % p)
            assert all(m <= degree for m in mults), "eigenvalue multiplicity too large"
            assert sum(mults) == degree, "multiplicities do not sum to the degree"
            val: Scalar = Fraction(0)
            for t, m_t in enumerate(mults):
                if m_t:
                    val = val + Fraction(m_t) * Cyclotomic.zeta(e, t)
            row.append(val)
        rows.append(tuple(row))
        degrees.append(degree)

    order_key = []
    for r, row in enumerate(rows):
        not_trivial = 0 if all(scalar_eq(x, 1) for x in row) else 1
        entry_keys = tuple(_scalar_key(x) for x in row)
        order_key.append((degrees[r], not_trivial, entry_keys, r))
    order_key.sort(key=lambda t: (t[0], t[1], t[2]))
    perm = [t[3] for t in order_key]
    rows = [rows[i] for i in perm]
    degrees = [degrees[i] for i in perm]

    assert sum(d * d for d in degrees) == n, "degrees fail sum-of-squares"
    for r in range(k):
        for s in range(r, k):
            acc: Scalar = Fraction(0)
            for l in range(k):
                acc = acc + Fraction(h_sizes[l]) * rows[r][l] * cyclotomic_conjugate(rows[s][l])
            want = Fraction(n) if r == s else Fraction(0)
            assert scalar_eq(acc, want), f"row orthogonality fails at ({r},{s})"
    assert scalar_eq(rows[0][0], 1) and all(scalar_eq(x, 1) for x in rows[0]), (
        "first row is not the trivial character"
    )

    return CharacterTable(g, cd, tuple(rows), tuple(degrees), e)


def _scalar_key(x: Scalar):
    if isinstance(x, Cyclotomic):
        return (x.n,) + x.sort_key()
    q = Fraction(x)
    return (1, (q.numerator, q.denominator))


# -- explicit matrices -------------------------------------------------------


@dataclass(frozen=True)
class IrreducibleRep:
    """Matrices of one irreducible representation, indexed by group element."""

    group: FiniteGroup
    degree: int
    mats: tuple[ExactMatrix, ...]

    def matrix(self, element: int) -> ExactMatrix:
        return self.mats[element]

    def character(self) -> tuple[Scalar, ...]:
        cd = self.group.conjugacy()
        return tuple(self.mats[r].trace() for r in cd.representatives)


def _algebra_mul(
    g: FiniteGroup, a: list[Scalar], b_support: Sequence[tuple[int, Scalar]]
) -> list[Scalar]:
    """Group algebra product a * b where b is given by its sparse support."""
    out: list[Scalar] = [Fraction(0)] * g.order
    for x, ax in enumerate(a):
        if scalar_is_zero(ax):
            continue
        for y, by in b_support:
            z = g.mul(x, y)
            out[z] = out[z] + ax * by
    return out


def _left_translate(g: FiniteGroup, s: int, vec: list[Scalar]) -> list[Scalar]:
    out: list[Scalar] = [Fraction(0)] * g.order
    for x, cx in enumerate(vec):
        if not scalar_is_zero(cx):
            out[g.mul(s, x)] = cx
    return out


def irrep_matrices(g: FiniteGroup, table: Optional[CharacterTable], row: int) -> IrreducibleRep:
    """Exact matrices for the row-th irreducible of g.

    Realizes the representation on a left ideal K[G] e f where e is the
    central idempotent of the character and f averages a linear character of
    a subgroup that restricts with multiplicity exactly one.
    """
    if table is None:
        table = character_table(g)
    assert table.group is g or table.group.table == g.table
    cd = table.conjugacy
    chi = table.rows[row]
    d = table.degrees[row]
    n = g.order

    def chi_at(x: int) -> Scalar:
        return chi[cd.class_of[x]]

    if d == 1:
        mats = tuple(ExactMatrix(1, 1, [chi_at(x)]) for x in range(n))
        return IrreducibleRep(g, 1, mats)

    pair = _multiplicity_one_pair(g, table, row)
    if pair is None:
        raise ResourceError(
            f"no subgroup with a multiplicity-one linear character found for row {row}"
        )
    elems, embed_sub, psi_vals = pair

    # f = e_chi * f_psi
    e_coeffs: list[Scalar] = [Fraction(d, n) * chi_at(g.inv[x]) for x in range(n)]
    support = [
        (t, Fraction(1, len(elems)) * psi_vals[i]) for i, t in enumerate(elems)
    ]
    f = _algebra_mul(g, e_coeffs, support)

    # greedy basis of the left ideal from translates x*f
    basis: list[list[Scalar]] = []
    reduced: list[tuple[int, list[Scalar]]] = []  # (pivot coordinate, echelon form)
    for x in range(n):
        cand = _left_translate(g, x, f)
        work = list(cand)
        for piv, ech in reduced:
            if not scalar_is_zero(work[piv]):
                factor = work[piv] / ech[piv]
                work = [w - factor * z for w, z in zip(work, ech)]
        piv = next((i for i, w in enumerate(work) if not scalar_is_zero(w)), -1)
        if piv >= 0:
            basis.append(cand)
            reduced.append((piv, work))
            if len(basis) == d:
                break
    assert len(basis) == d, f"left ideal has rank {len(basis)}, expected {d}"
    pivot_rows = sorted(piv for piv, _ in reduced)
    bmat_piv = ExactMatrix.from_rows([[basis[j][r] for j in range(d)] for r in pivot_rows])

    mats: list[ExactMatrix] = []
    for s in range(n):
        mapped = [_left_translate(g, s, b) for b in basis]
        target_piv = ExactMatrix.from_rows(
            [[mapped[j][r] for j in range(d)] for r in pivot_rows]
        )
        x = solve(bmat_piv, target_piv)
        # verify on all coordinates, not only the pivot rows
        for r in range(n):
            for j in range(d):
                acc: Scalar = Fraction(0)
                for m in range(d):
                    acc = acc + basis[m][r] * x[m, j]
                assert scalar_eq(acc, mapped[j][r]), "translate left the ideal"
        mats.append(x)

    for z in range(n):
        assert scalar_eq(mats[z].trace(), chi_at(z)), f"trace mismatch at element {z}"
    for a in g.generating_set():
        for b in range(n):
            assert mats[a] @ mats[b] == mats[g.mul(a, b)], "not multiplicative"
    return IrreducibleRep(g, d, tuple(mats))


def _multiplicity_one_pair(
    g: FiniteGroup, table: CharacterTable, row: int
) -> Optional[tuple[tuple[int, ...], FiniteGroup, list[Scalar]]]:
    """Find (subgroup elements, subgroup, linear character values) with
    <Res chi, psi> = 1; cyclic subgroups first, then two-generated ones."""
    cd = table.conjugacy
    chi = table.rows[row]
    seen: set[tuple[int, ...]] = set()
    candidates: list[tuple[int, ...]] = []
    for a in range(g.order):
        t = g.closure([a])
        if t not in seen:
            seen.add(t)
            candidates.append(t)
    for a in range(g.order):
        for b in range(a + 1, g.order):
            t = g.closure([a, b])
            if len(t) < g.order and t not in seen:
                seen.add(t)
                candidates.append(t)
    candidates.sort(key=lambda t: (-len(t), t))
    for elems in candidates:
        if len(elems) == g.order:
            continue
        sub, embed = g.subgroup(elems)
        sub_table = character_table(sub)
        sub_cd = sub_table.conjugacy
        for r, deg in enumerate(sub_table.degrees):
            if deg != 1:
                continue
            acc: Scalar = Fraction(0)
            for i, t_elem in enumerate(embed):
                # psi(t^{-1}) read off the subgroup table exactly
                psi_inv = sub_table.rows[r][sub_cd.class_of[sub.inv[i]]]
                acc = acc + chi[cd.class_of[t_elem]] * psi_inv
            if scalar_eq(acc, Fraction(len(elems))):
                psi_vals = [
                    sub_table.rows[r][sub_cd.class_of[sub.inv[i]]] for i in range(sub.order)
                ]
                return embed, sub, psi_vals
    return None
