"""Exact Laurent coordinates attached to the basis of a Hopf algebra.

One commuting variable ``t[b]`` per basis element ``b``.  Variables sitting
over group-like elements may carry negative exponents; all others may not.
The ring knows the convolution inverse of the coordinate map, the coproduct
induced on coordinates, and the grading pulled back through the algebra.
"""

from __future__ import annotations

from .arith import FieldSpec, Scalar, format_scalar, scalar_from_strings, scalar_to_strings
from .errors import NotInvertible, NotPointedOrder, OutOfLocalization, RangeError
from .hopf import HopfAlgebra, center_table, hab_grading
from .linalg import in_span, row_reduce
from .report import Report


class TMonomial:
    """Canonical product of coordinate variables with integer exponents."""

    __slots__ = ("exps",)

    def __init__(self, exps: tuple[tuple[int, int], ...]):
        # sorted by variable index, zero exponents dropped
        self.exps = exps

    @staticmethod
    def from_pairs(pairs) -> TMonomial:
        acc: dict[int, int] = {}
        for i, e in pairs:
            acc[i] = acc.get(i, 0) + int(e)
        return TMonomial(tuple(sorted((i, e) for i, e in acc.items() if e)))

    def mul(self, other: TMonomial) -> TMonomial:
        return TMonomial.from_pairs(self.exps + other.exps)

    def pow(self, k: int) -> TMonomial:
        if k == 0:
            return TMonomial(())
        return TMonomial(tuple(sorted((i, e * k) for i, e in self.exps)))

    def exp_of(self, index: int) -> int:
        for i, e in self.exps:
            if i == index:
                return e
        return 0

    @property
    def is_unit_monomial(self) -> bool:
        return not self.exps

    def __eq__(self, other):
        return isinstance(other, TMonomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __lt__(self, other):
        return self.exps < other.exps

    def __repr__(self):
        return f"TMonomial({self.exps!r})"


class TElement:
    """Finite Scalar-linear combination of monomials, kept in canonical form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: TRing, terms: dict[TMonomial, Scalar]):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, TElement):
            return other
        try:
            c = self.ring.field.scalar(other)
        except (TypeError, ValueError):
            return None
        return self.ring.scalar(c)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in o.terms.items():
            cur = acc.get(m)
            acc[m] = c if cur is None else cur + c
        return self.ring.element(acc)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return TElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TElement):
            acc: dict[TMonomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m1.mul(m2)
                    c = c1 * c2
                    cur = acc.get(m)
                    acc[m] = c if cur is None else cur + c
            return self.ring.element(acc)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TElement):
            return self * other.inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> TElement:
        """Inverse of a single-term element; the monomial part must stay
        inside the localization, so every variable must be group-like."""
        if len(self.terms) != 1:
            raise NotInvertible(f"not a monomial: {self.to_text()}")
        (m, c), = self.terms.items()
        inv = self.ring.monomial([(i, -e) for i, e in m.exps])
        return TElement(self.ring, {inv: c.inverse()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, TElement):
            return self.ring is other.ring and self.terms == other.terms
        o = self._coerce(other)
        return NotImplemented if o is None else self.terms == o.terms

    def __hash__(self):
        return hash(frozenset((m, c) for m, c in self.terms.items()))

    def constant_term(self) -> Scalar:
        c = self.terms.get(TMonomial(()))
        return self.ring.field.zero if c is None else c

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        labels = self.ring.hopf.labels
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            factors = []
            for i, e in m.exps:
                v = f"t[{labels[i]}]"
                factors.append(v if e == 1 else f"{v}^{e}")
            fmt = format_scalar(c)
            if " " in fmt:
                fmt = f"({fmt})"
            if not factors:
                parts.append(fmt)
            elif fmt == "1":
                parts.append("*".join(factors))
            elif fmt == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([fmt] + factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": scalar_to_strings(c), "exps": [list(p) for p in m.exps]}
                for m, c in sorted(self.terms.items(), key=lambda kv: kv[0].exps)
            ]
        }

    def __repr__(self):
        return f"<TElement {self.to_text()}>"


def telement_from_json(ring: TRing, data: dict) -> TElement:
    acc: dict[TMonomial, Scalar] = {}
    for term in data["terms"]:
        m = ring.monomial([(int(i), int(e)) for i, e in term["exps"]])
        c = scalar_from_strings(ring.field, term["coeff"])
        cur = acc.get(m)
        acc[m] = c if cur is None else cur + c
    return ring.element(acc)


class TRing:
    """The coordinate ring of a fixed Hopf algebra instance."""

    __slots__ = ("hopf", "field", "grouplike_set", "_tinv", "_grading")

    def __init__(self, hopf: HopfAlgebra):
        self.hopf = hopf
        self.field: FieldSpec = hopf.field
        self.grouplike_set = set(hopf.grouplikes)
        self._tinv: list[TElement] | None = None
        self._grading = None

    def monomial(self, pairs) -> TMonomial:
        m = TMonomial.from_pairs(pairs)
        dim = self.hopf.dim
        for i, e in m.exps:
            if not 0 <= i < dim:
                raise RangeError(f"variable index {i} out of range")
            if e < 0 and i not in self.grouplike_set:
                raise OutOfLocalization(
                    f"t[{self.hopf.labels[i]}] is not invertible"
                )
        return m

    def element(self, terms: dict[TMonomial, Scalar]) -> TElement:
        return TElement(self, {m: c for m, c in terms.items() if not c.is_zero})

    def zero(self) -> TElement:
        return TElement(self, {})

    def one(self) -> TElement:
        return TElement(self, {TMonomial(()): self.field.one})

    def scalar(self, c: Scalar) -> TElement:
        return self.element({TMonomial(()): c})

    def var(self, index: int, exp: int = 1) -> TElement:
        return TElement(self, {self.monomial([(index, exp)]): self.field.one})

    def t_inverse(self, index: int) -> TElement:
        if self._tinv is None:
            self._tinv = self._solve_t_inverse()
        return self._tinv[index]

    def _solve_t_inverse(self) -> list[TElement]:
        h = self.hopf
        out: list[TElement | None] = [None] * h.dim
        for g in h.grouplikes:
            out[g] = self.var(g, -1)
        for i in range(h.dim):
            if out[i] is not None:
                continue
            head = None
            rest = []
            for j, k, c in h.comult[i]:
                if k == i:
                    if head is not None:
                        raise NotPointedOrder(
                            f"coproduct of {h.labels[i]} has two diagonal terms"
                        )
                    head = (j, c)
                else:
                    rest.append((j, k, c))
            if head is None or head[0] not in self.grouplike_set:
                raise NotPointedOrder(
                    f"coproduct of {h.labels[i]} has no group-like co-unit leg"
                )
            j0, c0 = head
            acc = self.scalar(h.counit[i])
            for j, k, c in rest:
                lower = out[k]
                if lower is None:
                    raise NotPointedOrder(
                        f"coproduct of {h.labels[i]} is not triangular in the basis order"
                    )
                acc = acc - c * (self.var(j) * lower)
            out[i] = acc * self.var(j0, -1) * c0.inverse()
        return out  # type: ignore[return-value]

    def coproduct(self, elem: TElement) -> dict[tuple[TMonomial, TMonomial], Scalar]:
        """Coordinate coproduct: t[b] goes to the sum of t[b1] (x) t[b2],
        inverted group-like variables stay diagonal, products multiply."""
        h = self.hopf
        acc: dict[tuple[TMonomial, TMonomial], Scalar] = {}
        for m, coeff in elem.terms.items():
            cur = {(TMonomial(()), TMonomial(())): coeff}
            for i, e in m.exps:
                if i in self.grouplike_set:
                    step = {(self.monomial([(i, e)]), self.monomial([(i, e)])): self.field.one}
                    cur = tensor_t_product(cur, step)
                    continue
                base = {
                    (TMonomial.from_pairs([(j, 1)]), TMonomial.from_pairs([(k, 1)])): c
                    for j, k, c in h.comult[i]
                }
                for _ in range(e):
                    cur = tensor_t_product(cur, base)
            for key, c in cur.items():
                prev = acc.get(key)
                tot = c if prev is None else prev + c
                if tot.is_zero:
                    acc.pop(key, None)
                else:
                    acc[key] = tot
        return acc

    def hab_degree(self, mon: TMonomial) -> tuple[int, ...]:
        if self._grading is None:
            self._grading = hab_grading(self.hopf)
        ab, deg = self._grading
        total = ab.identity
        for i, e in mon.exps:
            total = ab.add(total, ab.scale(deg[i], e))
        return total

    def grading_group(self):
        if self._grading is None:
            self._grading = hab_grading(self.hopf)
        return self._grading[0]

    def evaluate(self, elem: TElement, values: list[Scalar]) -> Scalar:
        """Substitute one field value per variable; negative exponents
        require the substituted value to be invertible."""
        total = self.field.zero
        for m, c in elem.terms.items():
            term = c
            for i, e in m.exps:
                v = values[i]
                term = term * (v.inverse() ** (-e) if e < 0 else v**e)
            total = total + term
        return total


def tensor_t_product(a: dict, b: dict) -> dict:
    """Componentwise product of two coordinate tensors (both legs commute)."""
    out: dict[tuple[TMonomial, TMonomial], Scalar] = {}
    for (l1, r1), c1 in a.items():
        for (l2, r2), c2 in b.items():
            key = (l1.mul(l2), r1.mul(r2))
            c = c1 * c2
            cur = out.get(key)
            tot = c if cur is None else cur + c
            if tot.is_zero:
                out.pop(key, None)
            else:
                out[key] = tot
    return out


_RING_CACHE: dict[int, TRing] = {}


def t_ring(hopf: HopfAlgebra) -> TRing:
    """The coordinate ring of this instance; one ring (and one solved
    inverse table) per algebra object."""
    ring = _RING_CACHE.get(id(hopf))
    if ring is None or ring.hopf is not hopf:
        ring = TRing(hopf)
        _RING_CACHE[id(hopf)] = ring
    return ring


def t_inverse_map(hopf: HopfAlgebra) -> tuple[TElement, ...]:
    ring = t_ring(hopf)
    return tuple(ring.t_inverse(i) for i in range(hopf.dim))


def s_coproduct(hopf: HopfAlgebra, elem: TElement) -> dict[tuple[TMonomial, TMonomial], Scalar]:
    if elem.ring.hopf is not hopf:
        raise RangeError("element belongs to a different algebra's coordinate ring")
    return elem.ring.coproduct(elem)


def verify_t_inverse(hopf: HopfAlgebra) -> Report:
    """Both convolution identities of the coordinate inverse, one basis
    element at a time: the split product against t, in either order,
    must collapse to the counit value."""
    ring = t_ring(hopf)
    rep = Report(f"coordinate inverse on {hopf.name or 'algebra'}")
    for i in range(hopf.dim):
        target = ring.scalar(hopf.counit[i])
        left = ring.zero()
        right = ring.zero()
        for j, k, c in hopf.comult[i]:
            left = left + c * (ring.var(j) * ring.t_inverse(k))
            right = right + c * (ring.t_inverse(j) * ring.var(k))
        lbl = hopf.labels[i]
        rep.add(f"left {lbl}", left == target, "" if left == target else left.to_text())
        rep.add(f"right {lbl}", right == target, "" if right == target else right.to_text())
    return rep


def hab_degree(hopf: HopfAlgebra, x) -> tuple[int, ...]:
    """Grading degree of a monomial, or the common degree of an element
    (mixed-degree elements raise)."""
    ring = t_ring(hopf)
    if isinstance(x, TMonomial):
        return ring.hab_degree(x)
    if isinstance(x, TElement):
        degs = {ring.hab_degree(m) for m in x.terms}
        if not degs:
            return ring.grading_group().identity
        if len(degs) > 1:
            raise RangeError(f"mixed degrees {sorted(degs)}")
        return degs.pop()
    raise RangeError("expected a TMonomial or TElement")


class TensorH:
    """Sum of (coordinate monomial) tensor (algebra basis element) terms.

    The right tensor factor multiplies through `algebra.mult`, so the same
    class serves the plain product and any twisted one."""

    __slots__ = ("ring", "algebra", "terms")

    def __init__(self, ring: TRing, algebra, terms: dict[tuple[TMonomial, int], Scalar]):
        self.ring = ring
        self.algebra = algebra
        self.terms = {k: c for k, c in terms.items() if not c.is_zero}

    @staticmethod
    def zero(ring: TRing, algebra) -> TensorH:
        return TensorH(ring, algebra, {})

    @staticmethod
    def from_element(ring: TRing, algebra, elem: TElement, index: int) -> TensorH:
        return TensorH(ring, algebra, {(m, index): c for m, c in elem.terms.items()})

    def _require_same(self, other: TensorH):
        if self.ring is not other.ring or self.algebra is not other.algebra:
            raise RangeError("tensor operands over different algebras")

    def __add__(self, other: TensorH):
        if not isinstance(other, TensorH):
            return NotImplemented
        self._require_same(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            cur = acc.get(k)
            acc[k] = c if cur is None else cur + c
        return TensorH(self.ring, self.algebra, acc)

    def __sub__(self, other: TensorH):
        if not isinstance(other, TensorH):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TensorH(self.ring, self.algebra, {k: -c for k, c in self.terms.items()})

    def scale(self, c) -> TensorH:
        if isinstance(c, TElement):
            acc: dict[tuple[TMonomial, int], Scalar] = {}
            for (m1, i), c1 in self.terms.items():
                for m2, c2 in c.terms.items():
                    key = (m1.mul(m2), i)
                    add = c1 * c2
                    cur = acc.get(key)
                    acc[key] = add if cur is None else cur + add
            return TensorH(self.ring, self.algebra, acc)
        s = self.ring.field.scalar(c) if not isinstance(c, Scalar) else c
        return TensorH(self.ring, self.algebra, {k: s * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorH):
            self._require_same(other)
            mult = self.algebra.mult
            acc: dict[tuple[TMonomial, int], Scalar] = {}
            for (m1, i), c1 in self.terms.items():
                for (m2, j), c2 in other.terms.items():
                    for k, c in mult.get((i, j), ()):
                        key = (m1.mul(m2), k)
                        add = c1 * c2 * c
                        cur = acc.get(key)
                        acc[key] = add if cur is None else cur + add
            return TensorH(self.ring, self.algebra, acc)
        return self.scale(other)

    __rmul__ = scale

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = TensorH(
            self.ring,
            self.algebra,
            {(TMonomial(()), self.algebra.unit_index): self.ring.field.one},
        )
        for _ in range(k):
            out = out * self
        return out

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, TensorH)
            and self.ring is other.ring
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_coinvariant(self) -> bool:
        unit = self.algebra.unit_index
        return all(i == unit for _, i in self.terms)

    def is_central(self) -> bool:
        """Every coordinate-monomial slice lies in the centre of the
        (possibly twisted) algebra."""
        reduced, pivots = _center_span(self.algebra, self.ring.field)
        slices: dict[TMonomial, dict[int, Scalar]] = {}
        for (m, i), c in self.terms.items():
            slices.setdefault(m, {})[i] = c
        return all(in_span(reduced, pivots, vec) for vec in slices.values())

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        labels = self.algebra.labels
        keys = sorted(self.terms, key=lambda k: (k[1], k[0].exps))
        parts = []
        for m, i in keys:
            coeff = TElement(self.ring, {m: self.terms[(m, i)]})
            parts.append(f"{coeff.to_text()} (x) {labels[i]}")
        return "  +  ".join(parts)

    def __repr__(self):
        return f"<TensorH {self.to_text()}>"


class TensorOps:
    """Bound constructors for tensors over one algebra (plain or twisted)."""

    __slots__ = ("ring", "algebra")

    def __init__(self, ring: TRing, algebra):
        self.ring = ring
        self.algebra = algebra

    def zero(self) -> TensorH:
        return TensorH.zero(self.ring, self.algebra)

    def one(self) -> TensorH:
        return TensorH(
            self.ring,
            self.algebra,
            {(TMonomial(()), self.algebra.unit_index): self.ring.field.one},
        )

    def term(self, coeff: TElement, index: int) -> TensorH:
        return TensorH.from_element(self.ring, self.algebra, coeff, index)

    def var_tensor(self, var_index: int, basis_index: int) -> TensorH:
        return self.term(self.ring.var(var_index), basis_index)


def tensor_ops(algebra) -> TensorOps:
    """Tensor arithmetic over `algebra`; a twisted algebra contributes its
    own mult table while coordinates come from the untwisted instance."""
    hopf = algebra if isinstance(algebra, HopfAlgebra) else algebra.hopf
    return TensorOps(t_ring(hopf), algebra)


_CENTER_CACHE: dict[int, tuple[object, list[dict], list[int]]] = {}


def _center_span(algebra, field: FieldSpec) -> tuple[list[dict], list[int]]:
    hit = _CENTER_CACHE.get(id(algebra))
    if hit is not None and hit[0] is algebra:
        return hit[1], hit[2]
    rows = center_table(algebra.dim, algebra.mult, field)
    reduced, pivots = row_reduce(rows, field)
    _CENTER_CACHE[id(algebra)] = (algebra, reduced, pivots)
    return reduced, pivots
