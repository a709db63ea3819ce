"""Finite-dimensional Hopf algebras with a distinguished basis, kept sparse.

Structure maps are tables over basis indices: products and antipodes are
sparse vectors, coproducts sparse 2-tensors. The verifier suite checks the
(quasitriangular, ribbon) axioms either on every basis tuple or on a seeded
random sample, and reports which mode ran.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .scalars import Scalar, scalar_eq, scalar_is_zero

SparseVec = dict[int, Scalar]
SparseTen = dict[tuple[int, int], Scalar]
SparseTen3 = dict[tuple[int, int, int], Scalar]


def v_clean(v: SparseVec) -> SparseVec:
    return {i: c for i, c in v.items() if not scalar_is_zero(c)}

def v_add(a: SparseVec, b: SparseVec) -> SparseVec:
    out = dict(a)
    for i, c in b.items():
        out[i] = out.get(i, Fraction(0)) + c
    return v_clean(out)

def v_scale(s: Scalar, a: SparseVec) -> SparseVec:
    if scalar_is_zero(s):
        return {}
    return {i: s * c for i, c in a.items()}

def v_eq(a: SparseVec, b: SparseVec) -> bool:
    keys = set(a) | set(b)
    return all(scalar_eq(a.get(k, Fraction(0)), b.get(k, Fraction(0))) for k in keys)

def t_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, Fraction(0)) + c
    return {k: c for k, c in out.items() if not scalar_is_zero(c)}

def t_eq(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(scalar_eq(a.get(k, Fraction(0)), b.get(k, Fraction(0))) for k in keys)


class TableHopf:
    """Hopf algebra defined by explicit sparse structure tables."""

    def __init__(
        self,
        dim: int,
        labels: Sequence[str],
        unit: SparseVec,
        mul_table: dict[tuple[int, int], SparseVec],
        comul_table: dict[int, SparseTen],
        counit_table: Sequence[Scalar],
        antipode_table: dict[int, SparseVec],
        name: str = "",
    ):
        assert len(labels) == dim and len(counit_table) == dim
        self.dim = dim
        self.labels = tuple(labels)
        self.unit = v_clean(unit)
        self._mul = {k: v_clean(v) for k, v in mul_table.items()}
        self._comul = {i: {k: c for k, c in t.items() if not scalar_is_zero(c)} for i, t in comul_table.items()}
        self._counit = tuple(counit_table)
        self._antipode = {i: v_clean(v) for i, v in antipode_table.items()}
        self.name = name

    def mul_basis(self, i: int, j: int) -> SparseVec:
        return self._mul.get((i, j), {})

    def comul_basis(self, i: int) -> SparseTen:
        return self._comul.get(i, {})

    def counit_basis(self, i: int) -> Scalar:
        return self._counit[i]

    def antipode_basis(self, i: int) -> SparseVec:
        return self._antipode.get(i, {})

    # -- linear extensions -------------------------------------------

    def mul_vec(self, a: SparseVec, b: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, ca in a.items():
            if scalar_is_zero(ca):
                continue
            for j, cb in b.items():
                prod = self.mul_basis(i, j)
                if not prod:
                    continue
                c = ca * cb
                for k, ck in prod.items():
                    out[k] = out.get(k, Fraction(0)) + c * ck
        return v_clean(out)

    def comul_vec(self, a: SparseVec) -> SparseTen:
        out: SparseTen = {}
        for i, c in a.items():
            for (x, y), d in self.comul_basis(i).items():
                out[(x, y)] = out.get((x, y), Fraction(0)) + c * d
        return {k: v for k, v in out.items() if not scalar_is_zero(v)}

    def counit_vec(self, a: SparseVec) -> Scalar:
        acc: Scalar = Fraction(0)
        for i, c in a.items():
            acc = acc + c * self._counit[i]
        return acc

    def antipode_vec(self, a: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, c in a.items():
            for k, d in self.antipode_basis(i).items():
                out[k] = out.get(k, Fraction(0)) + c * d
        return v_clean(out)

    def ten_mul(self, a: SparseTen, b: SparseTen) -> SparseTen:
        """Componentwise product on H (tensor) H."""
        out: SparseTen = {}
        for (i1, i2), ca in a.items():
            for (j1, j2), cb in b.items():
                p1 = self.mul_basis(i1, j1)
                if not p1:
                    continue
                p2 = self.mul_basis(i2, j2)
                if not p2:
                    continue
                c = ca * cb
                for k1, c1 in p1.items():
                    for k2, c2 in p2.items():
                        key = (k1, k2)
                        out[key] = out.get(key, Fraction(0)) + c * c1 * c2
        return {k: v for k, v in out.items() if not scalar_is_zero(v)}

    def ten3_mul(self, a: SparseTen3, b: SparseTen3) -> SparseTen3:
        out: SparseTen3 = {}
        for (i1, i2, i3), ca in a.items():
            for (j1, j2, j3), cb in b.items():
                p1 = self.mul_basis(i1, j1)
                if not p1:
                    continue
                p2 = self.mul_basis(i2, j2)
                if not p2:
                    continue
                p3 = self.mul_basis(i3, j3)
                if not p3:
                    continue
                c = ca * cb
                for k1, c1 in p1.items():
                    for k2, c2 in p2.items():
                        cc = c * c1 * c2
                        for k3, c3 in p3.items():
                            key = (k1, k2, k3)
                            out[key] = out.get(key, Fraction(0)) + cc * c3
        return {k: v for k, v in out.items() if not scalar_is_zero(v)}

    def flip_ten(self, a: SparseTen) -> SparseTen:
        return {(j, i): c for (i, j), c in a.items()}

    def __repr__(self) -> str:
        return f"TableHopf({self.name or self.dim})"


@dataclass
class RibbonData:
    """Quasitriangular + ribbon structure attached to a TableHopf."""

    hopf: TableHopf
    r_matrix: SparseTen
    r_inverse: SparseTen
    ribbon: SparseVec
    ribbon_inverse: SparseVec


# -- verification -------------------------------------------------------------


@dataclass
class VerifyReport:
    """Outcome of an axiom suite; checks maps name -> bool."""

    mode: str
    checks: dict[str, bool] = field(default_factory=dict)

    def all_passed(self) -> bool:
        return all(self.checks.values())

    def failing(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def _tuples(dim: int, arity: int, sampled: bool, samples: int, seed: int):
    if not sampled:
        if arity == 1:
            return [(i,) for i in range(dim)]
        if arity == 2:
            return [(i, j) for i in range(dim) for j in range(dim)]
        return [(i, j, k) for i in range(dim) for j in range(dim) for k in range(dim)]
    rng = random.Random(seed)
    return [tuple(rng.randrange(dim) for _ in range(arity)) for _ in range(samples)]


def verify_hopf(
    h: TableHopf, *, sampled: bool = False, samples: int = 4000, seed: int = 0
) -> VerifyReport:
    """Bialgebra + antipode axioms, on all basis tuples or a seeded sample."""
    rep = VerifyReport(mode="sampled" if sampled else "full")

    ok = True
    for (i,) in _tuples(h.dim, 1, sampled, samples, seed):
        e = {i: Fraction(1)}
        if not (v_eq(h.mul_vec(h.unit, e), e) and v_eq(h.mul_vec(e, h.unit), e)):
            ok = False
            break
    rep.checks["unit"] = ok

    ok = True
    for (i, j, k) in _tuples(h.dim, 3, sampled, samples, seed + 1):
        ei, ej, ek = {i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}
        lhs = h.mul_vec(h.mul_vec(ei, ej), ek)
        rhs = h.mul_vec(ei, h.mul_vec(ej, ek))
        if not v_eq(lhs, rhs):
            ok = False
            break
    rep.checks["associativity"] = ok

    ok = True
    for (i,) in _tuples(h.dim, 1, sampled, samples, seed + 2):
        delta = h.comul_basis(i)
        left: SparseTen3 = {}
        right: SparseTen3 = {}
        for (x, y), c in delta.items():
            for (a, b), d in h.comul_basis(x).items():
                left[(a, b, y)] = left.get((a, b, y), Fraction(0)) + c * d
            for (a, b), d in h.comul_basis(y).items():
                right[(x, a, b)] = right.get((x, a, b), Fraction(0)) + c * d
        if not t_eq(left, right):
            ok = False
            break
    rep.checks["coassociativity"] = ok

    ok = True
    for (i,) in _tuples(h.dim, 1, sampled, samples, seed + 3):
        delta = h.comul_basis(i)
        left_v: SparseVec = {}
        right_v: SparseVec = {}
        for (x, y), c in delta.items():
            left_v[y] = left_v.get(y, Fraction(0)) + c * h.counit_basis(x)
            right_v[x] = right_v.get(x, Fraction(0)) + c * h.counit_basis(y)
        e = {i: Fraction(1)}
        if not (v_eq(v_clean(left_v), e) and v_eq(v_clean(right_v), e)):
            ok = False
            break
    rep.checks["counit"] = ok

    ok = True
    for (i, j) in _tuples(h.dim, 2, sampled, samples, seed + 4):
        prod = h.mul_basis(i, j)
        lhs: SparseTen = {}
        for k, c in prod.items():
            lhs = t_add(lhs, {key: c * d for key, d in h.comul_basis(k).items()})
        rhs = h.ten_mul(h.comul_basis(i), h.comul_basis(j))
        if not t_eq(lhs, rhs):
            ok = False
            break
    rep.checks["comultiplication_multiplicative"] = ok

    ok = True
    for (i,) in _tuples(h.dim, 1, sampled, samples, seed + 5):
        delta = h.comul_basis(i)
        left_v = {}
        right_v = {}
        for (x, y), c in delta.items():
            left_v = v_add(left_v, v_scale(c, h.mul_vec(h.antipode_basis(x), {y: Fraction(1)})))
            right_v = v_add(right_v, v_scale(c, h.mul_vec({x: Fraction(1)}, h.antipode_basis(y))))
        want = v_scale(h.counit_basis(i), h.unit)
        if not (v_eq(left_v, want) and v_eq(right_v, want)):
            ok = False
            break
    rep.checks["antipode"] = ok

    ok = True
    if not scalar_eq(h.counit_vec(h.unit), 1):
        ok = False
    unit_delta = h.comul_vec(h.unit)
    unit_ten = {(i, j): ci * cj for i, ci in h.unit.items() for j, cj in h.unit.items()}
    if not t_eq(unit_delta, {k: v for k, v in unit_ten.items() if not scalar_is_zero(v)}):
        ok = False
    rep.checks["unit_comultiplication"] = ok

    return rep


def _embed13(h: TableHopf, r: SparseTen) -> SparseTen3:
    out: SparseTen3 = {}
    for (i, k), c in r.items():
        for j, cj in h.unit.items():
            out[(i, j, k)] = out.get((i, j, k), Fraction(0)) + c * cj
    return out


def _embed12(h: TableHopf, r: SparseTen) -> SparseTen3:
    out: SparseTen3 = {}
    for (i, j), c in r.items():
        for k, ck in h.unit.items():
            out[(i, j, k)] = out.get((i, j, k), Fraction(0)) + c * ck
    return out


def _embed23(h: TableHopf, r: SparseTen) -> SparseTen3:
    out: SparseTen3 = {}
    for (j, k), c in r.items():
        for i, ci in h.unit.items():
            out[(i, j, k)] = out.get((i, j, k), Fraction(0)) + c * ci
    return out


def verify_quasitriangular(
    rd: RibbonData, *, sampled: bool = False, samples: int = 400, seed: int = 0
) -> VerifyReport:
    h = rd.hopf
    rep = VerifyReport(mode="sampled" if sampled else "full")
    r, rinv = rd.r_matrix, rd.r_inverse

    unit_ten = {
        (i, j): ci * cj for i, ci in h.unit.items() for j, cj in h.unit.items()
    }
    rep.checks["r_invertible"] = t_eq(h.ten_mul(r, rinv), unit_ten) and t_eq(
        h.ten_mul(rinv, r), unit_ten
    )

    ok = True
    for (i,) in _tuples(h.dim, 1, sampled, samples, seed):
        delta = h.comul_basis(i)
        flipped = h.flip_ten(delta)
        if not t_eq(h.ten_mul(r, delta), h.ten_mul(flipped, r)):
            ok = False
            break
    rep.checks["r_intertwines_coproducts"] = ok

    lhs: SparseTen3 = {}
    for (x, y), c in r.items():
        for (a, b), d in h.comul_basis(x).items():
            lhs[(a, b, y)] = lhs.get((a, b, y), Fraction(0)) + c * d
    rhs = h.ten3_mul(_embed13(h, r), _embed23(h, r))
    rep.checks["hexagon_coproduct_left"] = t_eq(lhs, rhs)

    lhs = {}
    for (x, y), c in r.items():
        for (a, b), d in h.comul_basis(y).items():
            lhs[(x, a, b)] = lhs.get((x, a, b), Fraction(0)) + c * d
    rhs = h.ten3_mul(_embed13(h, r), _embed12(h, r))
    rep.checks["hexagon_coproduct_right"] = t_eq(lhs, rhs)

    return rep


def verify_ribbon(
    rd: RibbonData, *, sampled: bool = False, samples: int = 400, seed: int = 0
) -> VerifyReport:
    h = rd.hopf
    rep = VerifyReport(mode="sampled" if sampled else "full")
    nu, nu_inv = rd.ribbon, rd.ribbon_inverse

    rep.checks["ribbon_invertible"] = v_eq(h.mul_vec(nu, nu_inv), h.unit) and v_eq(
        h.mul_vec(nu_inv, nu), h.unit
    )

    ok = True
    for (i,) in _tuples(h.dim, 1, sampled, samples, seed):
        e = {i: Fraction(1)}
        if not v_eq(h.mul_vec(nu, e), h.mul_vec(e, nu)):
            ok = False
            break
    rep.checks["ribbon_central"] = ok

    rep.checks["ribbon_antipode_fixed"] = v_eq(h.antipode_vec(nu), nu)
    rep.checks["ribbon_counit_one"] = scalar_eq(h.counit_vec(nu), 1)

    # Delta(nu) * (R21 R) = nu (tensor) nu
    r21r = h.ten_mul(h.flip_ten(rd.r_matrix), rd.r_matrix)
    lhs = h.ten_mul(h.comul_vec(nu), r21r)
    rhs = {
        (i, j): ci * cj for i, ci in nu.items() for j, cj in nu.items()
    }
    rep.checks["ribbon_coproduct"] = t_eq(lhs, {k: v for k, v in rhs.items() if not scalar_is_zero(v)})

    return rep


def verify_all_axioms(
    rd: RibbonData, *, sampled: bool = False, samples: int = 4000, seed: int = 0
) -> VerifyReport:
    """Union of the Hopf, quasitriangular and ribbon suites."""
    out = VerifyReport(mode="sampled" if sampled else "full")
    for part in (
        verify_hopf(rd.hopf, sampled=sampled, samples=samples, seed=seed),
        verify_quasitriangular(rd, sampled=sampled, samples=max(samples // 10, 1), seed=seed),
        verify_ribbon(rd, sampled=sampled, samples=max(samples // 10, 1), seed=seed),
    ):
        out.checks.update(part.checks)
    return out
