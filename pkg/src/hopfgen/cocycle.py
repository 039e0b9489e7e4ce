"""Two-cocycles on a Hopf algebra and the two twists they induce.

A cocycle is stored densely as a basis matrix of exact scalars.  From it
we build the twisted comodule algebra (new product on the u-basis, old
coaction) and the cotwisted Hopf algebra (new product, old coalgebra,
antipode re-solved).  Inverses are convolution inverses, computed by a
linear solve except on group algebras where the system is diagonal.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .arith import Scalar, scalar_from_strings, scalar_to_strings
from .errors import NotInvertible, RangeError, UnsupportedFamily
from .hopf import HopfAlgebra, _canonical_terms, structure_equal
from .linalg import solve_unique
from .report import Report


class TwoCocycle:
    """A normalized bilinear form on basis pairs, with its convolution
    inverse cached once computed."""

    __slots__ = ("hopf", "values", "_inverse")

    def __init__(
        self,
        hopf: HopfAlgebra,
        values: list[list[Scalar]],
        inverse_values: list[list[Scalar]] | None = None,
        check: bool = True,
    ):
        dim = hopf.dim
        if len(values) != dim or any(len(row) != dim for row in values):
            raise RangeError("cocycle matrix must be dim x dim")
        self.hopf = hopf
        self.values = [list(row) for row in values]
        self._inverse = None
        rep = verify_normalization(hopf, self.values)
        if not rep.ok:
            raise RangeError("; ".join(c.details for c in rep.failures()))
        if check:
            rep = verify_cocycle_condition(hopf, self)
            if not rep.ok:
                raise RangeError("; ".join(c.details for c in rep.failures()))
        if inverse_values is not None:
            _check_convolution_pair(hopf, self.values, inverse_values)
            self._inverse = [list(row) for row in inverse_values]

    def __call__(self, i: int, j: int) -> Scalar:
        return self.values[i][j]

    @property
    def inverse_values(self) -> list[list[Scalar]]:
        if self._inverse is None:
            self._inverse = convolution_inverse(self.hopf, self)
        return self._inverse

    def inverse(self, i: int, j: int) -> Scalar:
        return self.inverse_values[i][j]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "values": [[scalar_to_strings(v) for v in row] for row in self.values],
        }

    @classmethod
    def from_json(cls, hopf: HopfAlgebra, data: dict, check: bool = True) -> "TwoCocycle":
        field = hopf.field
        values = [
            [scalar_from_strings(field, v) for v in row] for row in data["values"]
        ]
        return cls(hopf, values, check=check)


def _values_of(alpha) -> list[list[Scalar]]:
    return alpha.values if isinstance(alpha, TwoCocycle) else alpha


def trivial_cocycle(hopf: HopfAlgebra) -> TwoCocycle:
    """counit tensor counit; self-inverse by the counit axiom, so neither
    the condition check nor a solve is needed."""
    values = [
        [hopf.counit[i] * hopf.counit[j] for j in range(hopf.dim)]
        for i in range(hopf.dim)
    ]
    return TwoCocycle(hopf, values, inverse_values=values, check=False)


def verify_normalization(hopf: HopfAlgebra, values) -> Report:
    rep = Report(title="cocycle-normalization")
    vals = _values_of(values)
    u = hopf.unit_index
    bad = next(
        (
            i
            for i in range(hopf.dim)
            if vals[i][u] != hopf.counit[i] or vals[u][i] != hopf.counit[i]
        ),
        None,
    )
    rep.add(
        "normalized",
        bad is None,
        "" if bad is None else f"fails at basis element {hopf.labels[bad]}",
    )
    return rep


def verify_cocycle_condition(hopf: HopfAlgebra, alpha) -> Report:
    """Exhaustive check of the associativity-style constraint on basis
    triples, plus normalization."""
    rep = verify_normalization(hopf, alpha)
    vals = _values_of(alpha)
    dim = hopf.dim
    zero = hopf.field.zero
    bad = None
    for x in range(dim):
        dx = hopf.comult[x]
        for y in range(dim):
            dy = hopf.comult[y]
            for z in range(dim):
                dz = hopf.comult[z]
                lhs = zero
                for x1, x2, cx in dx:
                    for y1, y2, cy in dy:
                        a = vals[x1][y1]
                        if a.is_zero:
                            continue
                        c = cx * cy * a
                        for k, cm in hopf.mult.get((x2, y2), ()):
                            v = vals[k][z]
                            if not v.is_zero:
                                lhs = lhs + c * cm * v
                rhs = zero
                for y1, y2, cy in dy:
                    for z1, z2, cz in dz:
                        a = vals[y1][z1]
                        if a.is_zero:
                            continue
                        c = cy * cz * a
                        for k, cm in hopf.mult.get((y2, z2), ()):
                            v = vals[x][k]
                            if not v.is_zero:
                                rhs = rhs + c * cm * v
                if lhs != rhs:
                    bad = (x, y, z)
                    break
            if bad:
                break
        if bad:
            break
    rep.add(
        "cocycle-condition",
        bad is None,
        ""
        if bad is None
        else "fails at ({}, {}, {})".format(*(hopf.labels[i] for i in bad)),
    )
    return rep


def _convolve(hopf: HopfAlgebra, a, b, x: int, y: int) -> Scalar:
    out = hopf.field.zero
    for x1, x2, cx in hopf.comult[x]:
        for y1, y2, cy in hopf.comult[y]:
            va = a[x1][y1]
            if va.is_zero:
                continue
            vb = b[x2][y2]
            if vb.is_zero:
                continue
            out = out + cx * cy * va * vb
    return out


def _check_convolution_pair(hopf, a, b) -> None:
    for x in range(hopf.dim):
        for y in range(hopf.dim):
            want = hopf.counit[x] * hopf.counit[y]
            if _convolve(hopf, a, b, x, y) != want:
                raise NotInvertible(
                    f"convolution identity fails at ({hopf.labels[x]}, {hopf.labels[y]})"
                )
            if _convolve(hopf, b, a, x, y) != want:
                raise NotInvertible(
                    f"reverse convolution identity fails at ({hopf.labels[x]}, {hopf.labels[y]})"
                )


def convolution_inverse(hopf: HopfAlgebra, alpha) -> list[list[Scalar]]:
    """Solve sum alpha(x1,y1) beta(x2,y2) = counit(x)counit(y); checked
    two-sided before returning."""
    vals = _values_of(alpha)
    dim = hopf.dim
    field = hopf.field
    if len(hopf.grouplikes) == dim:
        # group algebra case: comult is diagonal, so the system is too
        inv = []
        for x in range(dim):
            row = []
            for y in range(dim):
                v = vals[x][y]
                if v.is_zero:
                    raise NotInvertible(
                        f"value at ({hopf.labels[x]}, {hopf.labels[y]}) is zero"
                    )
                row.append(field.one / v)
            inv.append(row)
        _check_convolution_pair(hopf, vals, inv)
        return inv
    rows = []
    rhs = []
    for x in range(dim):
        for y in range(dim):
            row: dict[int, Scalar] = {}
            for x1, x2, cx in hopf.comult[x]:
                for y1, y2, cy in hopf.comult[y]:
                    va = vals[x1][y1]
                    if va.is_zero:
                        continue
                    key = x2 * dim + y2
                    cur = row.get(key)
                    v = cx * cy * va
                    row[key] = v if cur is None else cur + v
            rows.append({k: v for k, v in row.items() if not v.is_zero})
            rhs.append(hopf.counit[x] * hopf.counit[y])
    flat = solve_unique(rows, rhs, dim * dim, field)
    inv = [[flat[x * dim + y] for y in range(dim)] for x in range(dim)]
    _check_convolution_pair(hopf, vals, inv)
    return inv


def is_lazy(hopf: HopfAlgebra, alpha) -> bool:
    """True iff twisting from the left and from the right agree on every
    basis pair."""
    vals = _values_of(alpha)
    for x in range(hopf.dim):
        dx = hopf.comult[x]
        for y in range(hopf.dim):
            dy = hopf.comult[y]
            left: dict[int, Scalar] = {}
            right: dict[int, Scalar] = {}
            for x1, x2, cx in dx:
                for y1, y2, cy in dy:
                    c = cx * cy
                    va = vals[x1][y1]
                    if not va.is_zero:
                        for k, cm in hopf.mult.get((x2, y2), ()):
                            cur = left.get(k)
                            v = c * va * cm
                            left[k] = v if cur is None else cur + v
                    vb = vals[x2][y2]
                    if not vb.is_zero:
                        for k, cm in hopf.mult.get((x1, y1), ()):
                            cur = right.get(k)
                            v = c * vb * cm
                            right[k] = v if cur is None else cur + v
            left = {k: v for k, v in left.items() if not v.is_zero}
            right = {k: v for k, v in right.items() if not v.is_zero}
            if left != right:
                return False
    return True


class TwistedAlgebra:
    """The comodule algebra on the u-basis: twisted product, original
    coaction, coinvariants reduced to the unit line."""

    __slots__ = ("hopf", "mult", "unit_index", "labels")

    def __init__(self, hopf: HopfAlgebra, mult, unit_index: int):
        self.hopf = hopf
        self.mult = mult
        self.unit_index = unit_index
        self.labels = [f"u[{lbl}]" for lbl in hopf.labels]

    @property
    def dim(self) -> int:
        return self.hopf.dim

    def multiply_dicts(self, a: dict[int, Scalar], b: dict[int, Scalar]) -> dict[int, Scalar]:
        out: dict[int, Scalar] = {}
        for i, ci in a.items():
            for j, cj in b.items():
                terms = self.mult.get((i, j))
                if not terms:
                    continue
                cij = ci * cj
                for k, c in terms:
                    cur = out.get(k)
                    v = cij * c
                    out[k] = v if cur is None else cur + v
        return {k: c for k, c in out.items() if not c.is_zero}

    def coaction(self, a: dict[int, Scalar]) -> dict[tuple[int, int], Scalar]:
        return self.hopf.comult_dict(a)

    def is_coinvariant(self, a: dict[int, Scalar]) -> bool:
        want = {(i, self.hopf.unit_index): c for i, c in a.items() if not c.is_zero}
        return self.coaction(a) == want

    def coinvariants(self) -> list[dict[int, Scalar]]:
        from .linalg import nullspace

        hopf = self.hopf
        dim = hopf.dim
        rows: dict[int, dict[int, Scalar]] = {}
        for i in range(dim):
            for j, k, c in hopf.comult[i]:
                key = j * dim + k
                row = rows.setdefault(key, {})
                cur = row.get(i)
                row[i] = c if cur is None else cur + c
        for i in range(dim):
            key = i * dim + hopf.unit_index
            row = rows.setdefault(key, {})
            cur = row.get(i)
            one = hopf.field.one
            row[i] = -one if cur is None else cur - one
        cleaned = [
            {i: c for i, c in row.items() if not c.is_zero} for row in rows.values()
        ]
        return nullspace(dim, [r for r in cleaned if r], hopf.field)


def twisted_algebra(hopf: HopfAlgebra, alpha, verify: bool = True) -> TwistedAlgebra:
    """Product u_x u_y = alpha(x1, y1) u_{x2 y2} on the u-basis."""
    vals = _values_of(alpha)
    dim = hopf.dim
    mult: dict[tuple[int, int], tuple] = {}
    for i in range(dim):
        di = hopf.comult[i]
        for j in range(dim):
            acc: dict[int, Scalar] = {}
            for i1, i2, ci in di:
                for j1, j2, cj in hopf.comult[j]:
                    a = vals[i1][j1]
                    if a.is_zero:
                        continue
                    c = ci * cj * a
                    for k, cm in hopf.mult.get((i2, j2), ()):
                        cur = acc.get(k)
                        v = c * cm
                        acc[k] = v if cur is None else cur + v
            terms = _canonical_terms(acc.items())
            if terms:
                mult[(i, j)] = terms
    out = TwistedAlgebra(hopf, mult, hopf.unit_index)
    if verify:
        one = hopf.field.one
        for i in range(dim):
            u = out.multiply_dicts({hopf.unit_index: one}, {i: one})
            v = out.multiply_dicts({i: one}, {hopf.unit_index: one})
            if u != {i: one} or v != {i: one}:
                raise NotInvertible("twisted product is not unital")
        for i in range(dim):
            bi = {i: one}
            for j in range(dim):
                ij = out.multiply_dicts(bi, {j: one})
                for k in range(dim):
                    lhs = out.multiply_dicts(ij, {k: one})
                    rhs = out.multiply_dicts(
                        bi, out.multiply_dicts({j: one}, {k: one})
                    )
                    if lhs != rhs:
                        raise NotInvertible(
                            "twisted product is not associative at "
                            f"({hopf.labels[i]}, {hopf.labels[j]}, {hopf.labels[k]})"
                        )
    return out


def cotwist_hopf(hopf: HopfAlgebra, alpha) -> HopfAlgebra:
    """Two-sided twist: same coalgebra, product conjugated by the cocycle
    and its convolution inverse; antipode re-solved from the tables."""
    if isinstance(alpha, TwoCocycle):
        vals, inv = alpha.values, alpha.inverse_values
    else:
        vals = alpha
        inv = convolution_inverse(hopf, alpha)
    dim = hopf.dim
    mult: dict[tuple[int, int], tuple] = {}
    for i in range(dim):
        di = hopf.comult[i]
        for j in range(dim):
            dj = hopf.comult[j]
            stage: dict[tuple[int, int], Scalar] = {}
            for i1, ir, ci in di:
                for j1, jr, cj in dj:
                    a = vals[i1][j1]
                    if a.is_zero:
                        continue
                    key = (ir, jr)
                    cur = stage.get(key)
                    v = ci * cj * a
                    stage[key] = v if cur is None else cur + v
            acc: dict[int, Scalar] = {}
            for (ir, jr), c in stage.items():
                if c.is_zero:
                    continue
                for i2, i3, ci in hopf.comult[ir]:
                    for j2, j3, cj in hopf.comult[jr]:
                        b = inv[i3][j3]
                        if b.is_zero:
                            continue
                        coeff = c * ci * cj * b
                        for k, cm in hopf.mult.get((i2, j2), ()):
                            cur = acc.get(k)
                            v = coeff * cm
                            acc[k] = v if cur is None else cur + v
            terms = _canonical_terms(acc.items())
            if terms:
                mult[(i, j)] = terms
    out = HopfAlgebra(
        hopf.field,
        list(hopf.labels),
        mult,
        hopf.comult,
        hopf.counit,
        hopf.unit_index,
        {"kind": "generic", "cotwist_of": hopf.family.get("kind")},
        name=f"cotwist({hopf.name})",
    )
    if structure_equal(out, hopf):
        # identical tables: keep the family tag so downstream presentations
        # stay available
        out.family = dict(hopf.family)
        out.name = hopf.name
    return out


def coboundary_cocycle(hopf: HopfAlgebra, seed: int) -> TwoCocycle:
    """Seeded lazy cocycle on a group algebra: alpha(g, h) =
    c(g) c(h) / c(gh) for random nonzero rational weights with c(e) = 1."""
    if len(hopf.grouplikes) != hopf.dim:
        raise UnsupportedFamily("coboundary recipe needs a group algebra")
    rng = random.Random(seed)
    field = hopf.field
    weights = []
    for i in range(hopf.dim):
        if i == hopf.unit_index:
            weights.append(field.one)
        else:
            num = rng.choice([n for n in range(-9, 10) if n])
            den = rng.randint(1, 9)
            weights.append(field.scalar(Fraction(num, den)))
    values = []
    for g in range(hopf.dim):
        row = []
        for h in range(hopf.dim):
            ((gh, _),) = hopf.mult[(g, h)]
            row.append(weights[g] * weights[h] / weights[gh])
        values.append(row)
    return TwoCocycle(hopf, values, check=True)
