"""Noncommutative polynomials in one symbol per basis element, the universal
comodule-algebra map into coordinates-tensor-algebra, and the identity
detector built on it.

A polynomial is an exact linear combination of words over the symbols
``X[label]``.  Its image under `mu` lands in the tensor of the coordinate
ring with the (possibly cocycle-twisted) algebra; the polynomial is an
identity precisely when that image vanishes.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import Scalar, format_scalar, scalar_from_strings, scalar_to_strings
from .cocycle import TwoCocycle, TwistedAlgebra, twisted_algebra
from .errors import (
    CocycleMismatch,
    NotHopfMap,
    ParseError,
    RangeError,
    UnknownLabel,
    UnsupportedFamily,
)
from .hopf import HopfAlgebra, group_algebra
from .tring import TElement, TensorH, TMonomial, t_ring, tensor_ops

DEFAULT_WORD_CAP = 64

Word = tuple[int, ...]


class NCPoly:
    """Collected word → coefficient form, with a length cap on words."""

    __slots__ = ("hopf", "terms", "cap")

    def __init__(self, hopf: HopfAlgebra, terms: dict[Word, Scalar], cap: int = DEFAULT_WORD_CAP):
        self.hopf = hopf
        self.terms = {w: c for w, c in terms.items() if not c.is_zero}
        self.cap = cap
        for w in self.terms:
            if len(w) > cap:
                raise RangeError(f"word of length {len(w)} exceeds cap {cap}")

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            return other
        try:
            c = self.hopf.field.scalar(other)
        except (TypeError, ValueError):
            return None
        return NCPoly(self.hopf, {(): c}, self.cap)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for w, c in o.terms.items():
            cur = acc.get(w)
            acc[w] = c if cur is None else cur + c
        return NCPoly(self.hopf, acc, max(self.cap, o.cap))

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
        return NCPoly(self.hopf, {w: -c for w, c in self.terms.items()}, self.cap)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            cap = max(self.cap, other.cap)
            acc: dict[Word, Scalar] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    if len(w) > cap:
                        raise RangeError(f"word of length {len(w)} exceeds cap {cap}")
                    c = c1 * c2
                    cur = acc.get(w)
                    acc[w] = c if cur is None else cur + c
            return NCPoly(self.hopf, acc, cap)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = NCPoly(self.hopf, {(): self.hopf.field.one}, self.cap)
        for _ in range(k):
            out = out * self
        return out

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.hopf is other.hopf and self.terms == other.terms
        o = self._coerce(other)
        return NotImplemented if o is None else self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        labels = self.hopf.labels
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            factors = []
            run_idx, run_len = None, 0
            for i in list(w) + [None]:
                if i == run_idx:
                    run_len += 1
                    continue
                if run_idx is not None:
                    v = f"X[{labels[run_idx]}]"
                    factors.append(v if run_len == 1 else f"{v}^{run_len}")
                run_idx, run_len = i, 1
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
                {"word": list(w), "coeff": scalar_to_strings(c)}
                for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
            ]
        }

    def __repr__(self):
        return f"<NCPoly {self.to_text()}>"


def ncpoly_from_json(hopf: HopfAlgebra, data: dict, cap: int = DEFAULT_WORD_CAP) -> NCPoly:
    acc: dict[Word, Scalar] = {}
    for term in data["terms"]:
        w = tuple(int(i) for i in term["word"])
        c = scalar_from_strings(hopf.field, term["coeff"])
        cur = acc.get(w)
        acc[w] = c if cur is None else cur + c
    return NCPoly(hopf, acc, cap)


def symbol(hopf: HopfAlgebra, label_or_index, cap: int = DEFAULT_WORD_CAP) -> NCPoly:
    """The generator X over one basis element."""
    i = label_or_index if isinstance(label_or_index, int) else hopf.index_of(label_or_index)
    if not 0 <= i < hopf.dim:
        raise RangeError(f"basis index {i} out of range")
    return NCPoly(hopf, {(i,): hopf.field.one}, cap)


def ncpoly_scalar(hopf: HopfAlgebra, value, cap: int = DEFAULT_WORD_CAP) -> NCPoly:
    return NCPoly(hopf, {(): hopf.field.scalar(value)}, cap)


class _Parser:
    """Recursive descent over: expr := ['-'] term (('+'|'-') term)*;
    term := factor ('*' factor)*; factor := atom ('^' nat)*;
    atom := rational | 'q' | 'X[' label ']' | '(' expr ')'."""

    def __init__(self, text: str, hopf: HopfAlgebra, cap: int):
        self.text = text
        self.hopf = hopf
        self.cap = cap
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> NCPoly:
        out = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return out

    def expr(self) -> NCPoly:
        negate = False
        if self.peek() == "-":
            self.pos += 1
            negate = True
        out = self.term()
        if negate:
            out = -out
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            nxt = self.term()
            out = out - nxt if op == "-" else out + nxt
        return out

    def term(self) -> NCPoly:
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        return out

    def factor(self) -> NCPoly:
        out = self.atom()
        while self.peek() == "^":
            self.pos += 1
            out = out ** self.nat()
        return out

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def atom(self) -> NCPoly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            out = self.expr()
            self.eat(")")
            return out
        if ch == "q":
            self.pos += 1
            return ncpoly_scalar(self.hopf, self.hopf.field.q, self.cap)
        if ch.isdigit():
            num = self.nat()
            if self.peek() == "/":
                self.pos += 1
                den = self.nat()
                if den == 0:
                    self.error("zero denominator")
                return ncpoly_scalar(self.hopf, Fraction(num, den), self.cap)
            return ncpoly_scalar(self.hopf, num, self.cap)
        if ch == "X":
            self.pos += 1
            self.eat("[")
            end = self.text.find("]", self.pos)
            if end < 0:
                self.error("unterminated label")
            label = self.text[self.pos:end]
            self.pos = end + 1
            try:
                return symbol(self.hopf, label, self.cap)
            except UnknownLabel:
                raise UnknownLabel(f"no basis element labelled {label!r}") from None
        self.error("expected a factor")


def parse_ncpoly(text: str, hopf: HopfAlgebra, cap: int = DEFAULT_WORD_CAP) -> NCPoly:
    return _Parser(text, hopf, cap).parse()


_MU_ALGEBRA_CACHE: dict[tuple[int, int], tuple[object, object, TwistedAlgebra | HopfAlgebra]] = {}


def mu_algebra(hopf: HopfAlgebra, alpha: TwoCocycle):
    """The target algebra of `mu`: the cocycle-twisted product on the same
    basis, collapsed to the plain algebra when the twist changes nothing."""
    key = (id(hopf), id(alpha))
    hit = _MU_ALGEBRA_CACHE.get(key)
    if hit is not None and hit[0] is hopf and hit[1] is alpha:
        return hit[2]
    tw = twisted_algebra(hopf, alpha, verify=False)
    out = hopf if tw.mult == hopf.mult else tw
    _MU_ALGEBRA_CACHE[key] = (hopf, alpha, out)
    return out


def mu(hopf: HopfAlgebra, alpha: TwoCocycle, poly: NCPoly) -> TensorH:
    """Algebra-map extension of X over b mapping to the coordinate of the
    first coproduct leg tensored with the (twisted) second leg."""
    if poly.hopf is not hopf:
        raise RangeError("polynomial belongs to a different algebra")
    ring = t_ring(hopf)
    algebra = mu_algebra(hopf, alpha)
    ops = tensor_ops(algebra)
    gen_images = [
        TensorH(
            ring,
            algebra,
            _collect(((TMonomial.from_pairs([(j, 1)]), k), c) for j, k, c in hopf.comult[i]),
        )
        for i in range(hopf.dim)
    ]
    total = ops.zero()
    for word, coeff in poly.terms.items():
        img = ops.one()
        for i in word:
            img = img * gen_images[i]
        total = total + img.scale(coeff)
    return total


def _collect(pairs) -> dict:
    out: dict = {}
    for key, c in pairs:
        cur = out.get(key)
        out[key] = c if cur is None else cur + c
    return out


def is_identity(hopf: HopfAlgebra, alpha: TwoCocycle, poly: NCPoly) -> bool:
    return mu(hopf, alpha, poly).is_zero


def classify(hopf: HopfAlgebra, alpha: TwoCocycle, poly: NCPoly) -> dict:
    """Flags for the mu image: identically zero, coinvariant (coordinate
    side only), central on the algebra side."""
    image = mu(hopf, alpha, poly)
    flags = {
        "identity": image.is_zero,
        "coinvariant": image.is_coinvariant(),
        "central": image.is_central(),
    }
    if hopf.family.get("kind") == "taft" and flags["coinvariant"]:
        # one-dimensional centre: coinvariant forces central
        assert flags["central"], "coinvariant image escaped the centre"
    return flags


def tautological_coaction(hopf: HopfAlgebra, poly: NCPoly) -> dict[tuple[Word, int], Scalar]:
    """Coaction on words: each symbol splits through the coproduct, words
    multiply componentwise (word concatenation, algebra product)."""
    total: dict[tuple[Word, int], Scalar] = {}
    for word, coeff in poly.terms.items():
        cur: dict[tuple[Word, int], Scalar] = {((), hopf.unit_index): hopf.field.one}
        for i in word:
            step: dict[tuple[Word, int], Scalar] = {}
            for (w, h), c in cur.items():
                for j, k, cc in hopf.comult[i]:
                    for m, cm in hopf.mult.get((h, k), ()):
                        key = (w + (j,), m)
                        add = c * cc * cm
                        curv = step.get(key)
                        step[key] = add if curv is None else curv + add
            cur = step
        for key, c in cur.items():
            add = coeff * c
            prev = total.get(key)
            tot = add if prev is None else prev + add
            if tot.is_zero:
                total.pop(key, None)
            else:
                total[key] = tot
    return total


def comodule_map_check(hopf: HopfAlgebra, alpha: TwoCocycle, poly: NCPoly) -> bool:
    """mu intertwines the word coaction with the coaction on its image."""
    image = mu(hopf, alpha, poly)
    left: dict[tuple[TMonomial, int, int], Scalar] = {}
    for (m, i), c in image.terms.items():
        for j, k, cc in hopf.comult[i]:
            key = (m, j, k)
            add = c * cc
            cur = left.get(key)
            tot = add if cur is None else cur + add
            if tot.is_zero:
                left.pop(key, None)
            else:
                left[key] = tot
    right: dict[tuple[TMonomial, int, int], Scalar] = {}
    for (word, h), c in tautological_coaction(hopf, poly).items():
        part = mu(hopf, alpha, NCPoly(hopf, {word: c}, poly.cap))
        for (m, i), cc in part.terms.items():
            key = (m, i, h)
            cur = right.get(key)
            tot = cc if cur is None else cur + cc
            if tot.is_zero:
                right.pop(key, None)
            else:
                right[key] = tot
    return left == right


class LocalizedDenominator:
    """Multiset of family-whitelisted central elements allowed as
    denominators; kept as plain polynomials so every claim about the
    localized algebra is checked denominator-free."""

    __slots__ = ("hopf", "entries")

    def __init__(self, hopf: HopfAlgebra, entries: list[tuple]):
        kind = hopf.family.get("kind")
        for entry in entries:
            if not _denominator_allowed(hopf, kind, entry):
                raise UnsupportedFamily(f"denominator {entry!r} not whitelisted for {kind!r}")
        self.hopf = hopf
        self.entries = list(entries)

    def ncpoly(self, cap: int = DEFAULT_WORD_CAP) -> NCPoly:
        out = ncpoly_scalar(self.hopf, 1, cap)
        for entry in self.entries:
            out = out * _denominator_poly(self.hopf, entry, cap)
        return out


def _denominator_allowed(hopf: HopfAlgebra, kind: str, entry: tuple) -> bool:
    tag = entry[0]
    if kind == "taft":
        if tag == "unit":
            return len(entry) == 1
        if tag == "grouplike_power":
            return len(entry) == 2 and entry[1] in hopf.grouplikes
        return False
    if kind == "e":
        return entry in (("unit",), ("x_square",))
    if kind in ("group", "monomial"):
        if tag == "unit":
            return len(entry) == 1
        if tag == "pair_product":
            return len(entry) == 2 and entry[1] in hopf.grouplikes
        if tag == "triple_product":
            return len(entry) == 3 and entry[1] in hopf.grouplikes and entry[2] in hopf.grouplikes
        return False
    return False


def _denominator_poly(hopf: HopfAlgebra, entry: tuple, cap: int) -> NCPoly:
    tag = entry[0]
    if tag == "unit":
        return symbol(hopf, hopf.unit_index, cap)
    if tag == "x_square":
        return symbol(hopf, hopf.index_of("x"), cap) ** 2
    if tag == "grouplike_power":
        n = hopf.family["n"]
        return symbol(hopf, entry[1], cap) ** n
    if tag == "pair_product":
        g = entry[1]
        return symbol(hopf, g, cap) * symbol(hopf, hopf.grouplike_inverse(g), cap)
    if tag == "triple_product":
        g, h = entry[1], entry[2]
        gh = hopf.multiply_dicts({g: hopf.field.one}, {h: hopf.field.one})
        (k, _), = tuple(gh.items())
        return (
            symbol(hopf, g, cap)
            * symbol(hopf, h, cap)
            * symbol(hopf, hopf.grouplike_inverse(k), cap)
        )
    raise UnsupportedFamily(f"unknown denominator tag {tag!r}")


class HopfMap:
    """Linear map between two instances given by basis images, verified to
    respect product, coproduct, counit and unit."""

    __slots__ = ("source", "target", "images")

    def __init__(
        self,
        source: HopfAlgebra,
        target: HopfAlgebra,
        images: list[dict[int, Scalar]],
        check: bool = True,
    ):
        if len(images) != source.dim:
            raise NotHopfMap("one image per source basis element required")
        self.source = source
        self.target = target
        self.images = [
            {i: c for i, c in img.items() if not c.is_zero} for img in images
        ]
        if check:
            self._verify()

    def apply(self, vec: dict[int, Scalar]) -> dict[int, Scalar]:
        out: dict[int, Scalar] = {}
        for i, c in vec.items():
            for j, cj in self.images[i].items():
                cur = out.get(j)
                tot = c * cj if cur is None else cur + c * cj
                if tot.is_zero:
                    out.pop(j, None)
                else:
                    out[j] = tot
        return out

    def _verify(self):
        src, tgt = self.source, self.target
        if src.field is not tgt.field:
            raise NotHopfMap("source and target use different scalar fields")
        unit_img = self.images[src.unit_index]
        if unit_img != {tgt.unit_index: tgt.field.one}:
            raise NotHopfMap("unit is not preserved")
        dim = src.dim
        for a in range(dim):
            for b in range(dim):
                left = self.apply(src.multiply_dicts({a: src.field.one}, {b: src.field.one}))
                right = tgt.multiply_dicts(self.images[a], self.images[b])
                if left != right:
                    raise NotHopfMap(f"product broken at ({src.labels[a]}, {src.labels[b]})")
        for a in range(dim):
            mapped: dict[tuple[int, int], Scalar] = {}
            for j, k, c in src.comult[a]:
                for j2, cj in self.images[j].items():
                    for k2, ck in self.images[k].items():
                        key = (j2, k2)
                        add = c * cj * ck
                        cur = mapped.get(key)
                        tot = add if cur is None else cur + add
                        if tot.is_zero:
                            mapped.pop(key, None)
                        else:
                            mapped[key] = tot
            direct: dict[tuple[int, int], Scalar] = {}
            for i2, ci in self.images[a].items():
                for j, k, c in tgt.comult[i2]:
                    key = (j, k)
                    add = ci * c
                    cur = direct.get(key)
                    tot = add if cur is None else cur + add
                    if tot.is_zero:
                        direct.pop(key, None)
                    else:
                        direct[key] = tot
            if mapped != direct:
                raise NotHopfMap(f"coproduct broken at {src.labels[a]}")
            eps_left = src.counit[a]
            eps_right = src.field.zero
            for i2, ci in self.images[a].items():
                eps_right = eps_right + ci * tgt.counit[i2]
            if eps_left != eps_right:
                raise NotHopfMap(f"counit broken at {src.labels[a]}")


def identity_map(hopf: HopfAlgebra) -> HopfMap:
    return HopfMap(
        hopf,
        hopf,
        [{i: hopf.field.one} for i in range(hopf.dim)],
        check=False,
    )


def check_cocycle_compatibility(
    phi: HopfMap, alpha_src: TwoCocycle, alpha_tgt: TwoCocycle
) -> None:
    """alpha_tgt pulled back along phi must agree with alpha_src."""
    src = phi.source
    f = src.field
    for a in range(src.dim):
        for b in range(src.dim):
            pulled = f.zero
            for i, ci in phi.images[a].items():
                for j, cj in phi.images[b].items():
                    pulled = pulled + ci * cj * alpha_tgt(i, j)
            if pulled != alpha_src(a, b):
                raise CocycleMismatch(
                    f"cocycles disagree at ({src.labels[a]}, {src.labels[b]})"
                )


def push_forward(phi: HopfMap, poly: NCPoly) -> NCPoly:
    """Relabel symbols through the map, expanding words multilinearly."""
    if poly.hopf is not phi.source:
        raise RangeError("polynomial not over the map's source")
    tgt = phi.target
    acc: dict[Word, Scalar] = {}
    for word, coeff in poly.terms.items():
        expansions: list[tuple[Word, Scalar]] = [((), coeff)]
        for i in word:
            expansions = [
                (w + (j,), c * cj)
                for w, c in expansions
                for j, cj in phi.images[i].items()
            ]
        for w, c in expansions:
            cur = acc.get(w)
            acc[w] = c if cur is None else cur + c
    return NCPoly(tgt, acc, poly.cap)


def push_t(phi: HopfMap, elem: TElement) -> TElement:
    """Coordinate-side push-forward; negative exponents ride along the
    group-like image of their variable."""
    if elem.ring.hopf is not phi.source:
        raise RangeError("element not over the map's source")
    tgt_ring = t_ring(phi.target)
    out = tgt_ring.zero()
    for m, coeff in elem.terms.items():
        part = tgt_ring.element({TMonomial(()): coeff})
        for i, e in m.exps:
            img = phi.images[i]
            if e >= 0:
                factor = sum(
                    (cj * tgt_ring.var(j) for j, cj in img.items()),
                    tgt_ring.zero(),
                )
                part = part * factor**e
                continue
            if len(img) != 1:
                raise NotHopfMap(
                    f"negative power of {phi.source.labels[i]} needs a single image"
                )
            (j, cj), = tuple(img.items())
            if j not in tgt_ring.grouplike_set:
                raise NotHopfMap(
                    f"negative power of {phi.source.labels[i]} maps outside group-likes"
                )
            part = part * (cj.inverse() * tgt_ring.var(j, -1)) ** (-e)
        out = out + part
    return out


def monomial_group_maps(hopf: HopfAlgebra, group_hopf: HopfAlgebra | None = None):
    """For the level-graded family over a group: the inclusion of the group
    algebra as level zero and the projection killing positive levels;
    projection after inclusion is the identity."""
    if hopf.family.get("kind") != "monomial":
        raise UnsupportedFamily("group maps exist for the monomial family only")
    group = hopf.family["group"]
    if group_hopf is None:
        group_hopf = group_algebra(group, hopf.field)
    if group_hopf.dim != group.order:
        raise NotHopfMap("group algebra does not match the family's group")
    one = hopf.field.one
    iota = HopfMap(group_hopf, hopf, [{g: one} for g in range(group.order)])
    proj_images: list[dict[int, Scalar]] = []
    for i in range(hopf.dim):
        g, lvl = i % group.order, i // group.order
        proj_images.append({g: one} if lvl == 0 else {})
    pi = HopfMap(hopf, group_hopf, proj_images)
    return iota, pi
