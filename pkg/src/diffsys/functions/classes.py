"""Symbolic real functions: the closed classes and their linear combinations.

Every value is kept in a canonical form so that structural equality is
meaningful and rendering is stable:

* Polynomial coefficients are trimmed; TrigPoly drops zero frequencies.
* CosetIndicator offsets are reduced modulo the lattice.
* LinComb is flat.  Polynomial, constant and trigonometric parts are merged
  into a single summand, lattice functions over the same generators are
  merged, and equal coset indicators have their coefficients added.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import comb
from numbers import Rational

from ..errors import ContextError
from ..exact import (
    BasisContext,
    CyclotomicNumber,
    FormalReal,
    Lattice,
    as_fraction,
    render_rational,
)
from ..exact.linalg import rref
from .rules import Rule


def _term_sign(c: Fraction, body: str, first: bool) -> str:
    if first:
        return ("-" if c < 0 else "") + body
    return (" - " if c < 0 else " + ") + body


def _scaled_body(mag: Fraction, atom: str) -> str:
    return atom if mag == 1 else f"{render_rational(mag)}*{atom}"


class SymbolicFunction:
    """Base class; subclasses are immutable."""

    __slots__ = ()
    ctx: BasisContext | None = None
    kind = "function"

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return LinComb.make([(1, self), (1, other)])

    def __radd__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return LinComb.make([(1, other), (1, self)])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return LinComb.make([(1, self), (-1, other)])

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return LinComb.make([(1, other), (-1, self)])

    def __mul__(self, c):
        if isinstance(c, Rational):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "SymbolicFunction":
        return LinComb.make([(c, self)])

    def render(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"{type(self).__name__}({self.render()})"


def _lift(x):
    if isinstance(x, SymbolicFunction):
        return x
    if isinstance(x, Rational):
        return Constant(x)
    return None


class Constant(SymbolicFunction):
    __slots__ = ("value",)
    kind = "constant"

    def __init__(self, value):
        self.value = as_fraction(value)

    def scale(self, c):
        return Constant(self.value * as_fraction(c))

    def __eq__(self, other):
        return isinstance(other, Constant) and other.value == self.value

    def __hash__(self):
        return hash(("const", self.value))

    def render(self):
        return render_rational(self.value)


class Polynomial(SymbolicFunction):
    """sum_j coeffs[j] * x**j with rational coefficients."""

    __slots__ = ("coeffs",)
    kind = "polynomial"

    def __init__(self, coeffs):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def scale(self, c):
        c = as_fraction(c)
        return Polynomial([a * c for a in self.coeffs])

    def shifted(self, b: Fraction) -> "Polynomial":
        """x -> p(x + b)."""
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            bp = Fraction(1)
            for j in range(i, -1, -1):
                out[j] += c * comb(i, j) * bp
                bp *= b
        return Polynomial(out)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, Polynomial) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(("poly", self.coeffs))

    def render(self):
        return "poly(" + ", ".join(render_rational(c) for c in self.coeffs or (0,)) + ")"


class TrigPoly(SymbolicFunction):
    """const + sum over frequencies lam > 0 of Re(c_lam * exp(2 pi i lam x)).

    Frequencies are positive rationals and the coefficients are exact
    cyclotomic numbers, so translation by a rational b multiplies c_lam by
    the root of unity exp(2 pi i lam b) without leaving the class.
    """

    __slots__ = ("const", "terms")
    kind = "trig"

    def __init__(self, const=0, terms=()):
        self.const = as_fraction(const)
        merged: dict[Fraction, CyclotomicNumber] = {}
        for lam, c in terms:
            lam = as_fraction(lam)
            if not isinstance(c, CyclotomicNumber):
                c = CyclotomicNumber.rational(c)
            if lam < 0:
                # Re(c e^{-i t}) = Re(conj(c) e^{i t})
                lam, c = -lam, c.conjugate()
            if lam == 0:
                self.const += _real_rational(c)
                continue
            merged[lam] = merged[lam] + c if lam in merged else c
        self.terms = tuple(
            (lam, merged[lam].minimal()) for lam in sorted(merged) if not merged[lam].is_zero()
        )

    @classmethod
    def cos(cls, freq, coeff=1) -> "TrigPoly":
        """coeff * cos(2 pi freq x)."""
        return cls(0, [(freq, CyclotomicNumber.rational(coeff))])

    @classmethod
    def sin(cls, freq, coeff=1) -> "TrigPoly":
        """coeff * sin(2 pi freq x) = Re(-i coeff e^{2 pi i freq x})."""
        return cls(0, [(freq, CyclotomicNumber.root(4, 3) * as_fraction(coeff))])

    def scale(self, c):
        c = as_fraction(c)
        return TrigPoly(self.const * c, [(lam, a * c) for lam, a in self.terms])

    def frequencies(self):
        return tuple(lam for lam, _ in self.terms)

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return False
        if self.const != other.const or self.frequencies() != other.frequencies():
            return False
        return all(a == b for (_, a), (_, b) in zip(self.terms, other.terms))

    def __hash__(self):
        return hash(("trig", self.const, self.frequencies()))

    def render(self):
        parts = []
        if self.const:
            parts.append((self.const, render_rational(abs(self.const))))
        for lam, c in self.terms:
            q = c.as_rational()
            if q is not None:
                parts.append((q, _scaled_body(abs(q), f"cos2pi({render_rational(lam)}, x)")))
                continue
            s = (c * CyclotomicNumber.root(4, 1)).as_rational()  # c = -i s
            if s is not None:
                parts.append((s, _scaled_body(abs(s), f"sin2pi({render_rational(lam)}, x)")))
                continue
            coeffs = ", ".join(render_rational(a) for a in c.coeffs)
            parts.append((Fraction(1), f"trig({render_rational(lam)}; {c.order}; {coeffs})"))
        if not parts:
            return "0"
        return "".join(_term_sign(c, body, i == 0) for i, (c, body) in enumerate(parts))


def _real_rational(c: CyclotomicNumber) -> Fraction:
    q = c.real_part().as_rational()
    if q is None:  # pragma: no cover - real parts of cyclotomics at lam=0 are rational
        raise ValueError("constant term is not rational")
    return q


class CosetIndicator(SymbolicFunction):
    """The indicator of offset + L."""

    __slots__ = ("lattice", "offset")
    kind = "coset"

    def __init__(self, lattice: Lattice, offset: FormalReal | None = None):
        if offset is None:
            offset = lattice.ctx.zero()
        if offset.ctx != lattice.ctx:
            raise ContextError("coset offset and lattice live in different contexts")
        self.lattice = lattice
        self.offset = lattice.reduce(offset)

    @classmethod
    def of(cls, gens, offset=None, ctx=None) -> "CosetIndicator":
        return cls(Lattice.from_generators(gens, ctx), offset)

    @property
    def ctx(self):
        return self.lattice.ctx

    def contains(self, x: FormalReal) -> bool:
        return (x - self.offset) in self.lattice

    def sort_key(self):
        return (self.lattice.rank, self.lattice.basis, self.lattice.scale, self.offset.terms)

    def __eq__(self, other):
        return (
            isinstance(other, CosetIndicator)
            and other.lattice == self.lattice
            and other.offset == self.offset
        )

    def __hash__(self):
        return hash(("coset", self.lattice, self.offset))

    def render(self):
        gens = ", ".join(str(g) for g in self.lattice.basis_reals)
        if self.offset.is_zero:
            return f"chi(<{gens}>)"
        off = str(self.offset)
        if off.startswith("-"):
            return f"chi(<{gens}> - {off[1:]})"
        return f"chi(<{gens}> + {off})"


class LatticeFunction(SymbolicFunction):
    """On M = Z g_1 + ... + Z g_s the value at sum k_i g_i is rule(k); off M it is ``off``.

    The generators must be Z-independent so that the coordinates k are unique.
    """

    __slots__ = ("gens", "rule", "off", "__dict__")
    kind = "latfun"

    def __init__(self, gens, rule: Rule, off=0):
        gens = tuple(gens)
        if not gens:
            raise ValueError("a lattice function needs at least one generator")
        ctx = gens[0].ctx
        if any(g.ctx != ctx for g in gens):
            raise ContextError("generators from different contexts")
        if rule.dim != len(gens):
            raise ValueError("rule dimension does not match the number of generators")
        self.gens = gens
        self.rule = rule
        self.off = as_fraction(off)
        if self.lattice.rank != len(gens):
            raise ValueError("lattice function generators must be independent")

    @property
    def ctx(self):
        return self.gens[0].ctx

    @cached_property
    def lattice(self) -> Lattice:
        return Lattice.from_generators(self.gens, self.ctx)

    @cached_property
    def _inverse(self):
        # k = x_P * inv(G_P) for a set P of pivot columns of the generator matrix
        s = len(self.gens)
        rows = [list(g.vector()) for g in self.gens]
        _, piv = rref(rows, len(rows[0]))
        block = [[rows[i][p] for p in piv] + [1 if i == j else 0 for j in range(s)] for i in range(s)]
        red, _ = rref(block, s)
        inv = [row[s:] for row in red]
        return piv, inv

    def coords(self, x: FormalReal):
        """Integer coordinates of x in the generators, or None when x is not in M."""
        if x.ctx != self.ctx:
            raise ContextError("point and lattice function live in different contexts")
        if x not in self.lattice:
            return None
        piv, inv = self._inverse
        vec = x.vector()
        xp = [vec[p] for p in piv]
        s = len(self.gens)
        return tuple(int(sum((xp[r] * inv[r][j] for r in range(s)), Fraction(0))) for j in range(s))

    def scale(self, c):
        c = as_fraction(c)
        return LatticeFunction(self.gens, self.rule.scale(c), self.off * c)

    def sort_key(self):
        return tuple(g.terms for g in self.gens)

    def __eq__(self, other):
        return (
            isinstance(other, LatticeFunction)
            and other.gens == self.gens
            and other.rule == self.rule
            and other.off == self.off
        )

    def __hash__(self):
        return hash(("latfun", self.gens, self.rule, self.off))

    def render(self):
        gens = ", ".join(str(g) for g in self.gens)
        return f"latfun(<{gens}>; {self.rule.render()}; {render_rational(self.off)})"


class WindowTable(SymbolicFunction):
    """A finitely supported table of exact values on lattice points.

    ``values`` maps coordinate tuples (in the lattice's HNF basis) to
    rationals.  Points of the lattice outside the table are undefined;
    points off the lattice take ``off`` when that is not None.
    """

    __slots__ = ("lattice", "values", "off", "radius")
    kind = "table"

    def __init__(self, lattice: Lattice, values: dict, off=None, radius: int | None = None):
        self.lattice = lattice
        self.values = {tuple(k): as_fraction(v) for k, v in values.items()}
        self.off = None if off is None else as_fraction(off)
        self.radius = radius

    @property
    def ctx(self):
        return self.lattice.ctx

    def scale(self, c):
        c = as_fraction(c)
        off = None if self.off is None else self.off * c
        return WindowTable(self.lattice, {k: v * c for k, v in self.values.items()}, off, self.radius)

    def sort_key(self):
        return (self.lattice.basis, self.lattice.scale, self.radius or 0)

    def items(self):
        for k in sorted(self.values):
            yield self.lattice.point(k), self.values[k]

    def __eq__(self, other):
        return (
            isinstance(other, WindowTable)
            and other.lattice == self.lattice
            and other.values == self.values
            and other.off == self.off
        )

    def __hash__(self):
        return hash(("table", self.lattice, tuple(sorted(self.values.items())), self.off))

    def render(self):
        gens = ", ".join(str(g) for g in self.lattice.basis_reals)
        return f"table(<{gens}>; {len(self.values)} points)"


_ORDER = {"constant": 0, "polynomial": 0, "trig": 1, "coset": 2, "latfun": 3, "table": 4}


class LinComb(SymbolicFunction):
    """A finite rational combination of the other classes (always canonical)."""

    __slots__ = ("items",)
    kind = "lincomb"

    def __init__(self, items):
        # trusted; use make()
        self.items = tuple(items)

    @property
    def ctx(self):
        for _, f in self.items:
            if f.ctx is not None:
                return f.ctx
        return None

    @staticmethod
    def make(raw) -> SymbolicFunction:
        return combine(raw)

    def scale(self, c):
        return combine([(as_fraction(c) * a, f) for a, f in self.items])

    def __eq__(self, other):
        return isinstance(other, LinComb) and other.items == self.items

    def __hash__(self):
        return hash(("lincomb", tuple(hash(f) for _, f in self.items)))

    def render(self):
        out = []
        for i, (c, f) in enumerate(self.items):
            body = f.render()
            if c == 1 and i > 0 and body.startswith("-"):
                out.append(" - " + body[1:])
            elif c == 1:
                out.append(body if i == 0 else " + " + body)
            else:
                out.append(_term_sign(c, _scaled_body(abs(c), body), i == 0))
        return "".join(out)


def _flatten(raw, coef, out):
    for a, f in raw:
        a = as_fraction(a) * coef
        if not a:
            continue
        if isinstance(f, LinComb):
            _flatten(f.items, a, out)
        elif isinstance(f, Rational):
            out.append((a, Constant(f)))
        else:
            out.append((a, f))


def combine(raw) -> SymbolicFunction:
    """Canonical flat form of sum a_i f_i."""
    flat: list = []
    _flatten(raw, Fraction(1), flat)
    ctx = None
    for _, f in flat:
        if f.ctx is not None:
            if ctx is None:
                ctx = f.ctx
            elif f.ctx != ctx:
                raise ContextError("functions from different contexts")

    const = Fraction(0)
    poly: list[Fraction] | None = None
    trig: TrigPoly | None = None
    cosets: dict[CosetIndicator, Fraction] = {}
    latfuns: dict[tuple, LatticeFunction] = {}
    tables: dict[tuple, WindowTable] = {}
    for a, f in flat:
        if isinstance(f, Constant):
            const += a * f.value
        elif isinstance(f, Polynomial):
            cs = [a * c for c in f.coeffs]
            if poly is None:
                poly = cs
            else:
                poly = [x + y for x, y in zip(_pad(poly, len(cs)), _pad(cs, len(poly)))]
        elif isinstance(f, TrigPoly):
            g = f.scale(a)
            trig = g if trig is None else TrigPoly(trig.const + g.const, trig.terms + g.terms)
        elif isinstance(f, CosetIndicator):
            cosets[f] = cosets.get(f, 0) + a
        elif isinstance(f, LatticeFunction):
            g = f.scale(a)
            prev = latfuns.get(f.gens)
            latfuns[f.gens] = g if prev is None else LatticeFunction(f.gens, prev.rule + g.rule, prev.off + g.off)
        elif isinstance(f, WindowTable):
            key = (f.lattice, f.radius)
            g = f.scale(a)
            prev = tables.get(key)
            if prev is None:
                tables[key] = g
            else:
                keys = set(prev.values) & set(g.values)
                off = None if prev.off is None or g.off is None else prev.off + g.off
                tables[key] = WindowTable(
                    f.lattice, {k: prev.values[k] + g.values[k] for k in keys}, off, f.radius
                )
        else:
            raise TypeError(f"cannot combine {type(f).__name__}")

    items: list = []
    if poly is not None:
        poly = list(poly)
        if const:
            poly = _pad(poly, 1)
            poly[0] += const
            const = Fraction(0)
        p = Polynomial(poly)
        if p.coeffs:
            items.append((Fraction(1), p))
    if trig is not None:
        if const:
            trig = TrigPoly(trig.const + const, trig.terms)
            const = Fraction(0)
        if trig.terms:
            items.append((Fraction(1), trig))
        elif trig.const:
            const = trig.const
    if const:
        items.insert(0, (Fraction(1), Constant(const)))
    for f in sorted(cosets, key=CosetIndicator.sort_key):
        if cosets[f]:
            items.append((cosets[f], f))
    for key in sorted(latfuns, key=lambda gs: tuple(g.terms for g in gs)):
        g = latfuns[key]
        if not g.rule.is_zero() or g.off:
            items.append((Fraction(1), g))
    for key in sorted(tables, key=lambda k: tables[k].sort_key()):
        items.append((Fraction(1), tables[key]))

    if not items:
        if flat and all(isinstance(f, Polynomial) for _, f in flat):
            return Polynomial(())
        return Constant(0)
    if len(items) == 1 and items[0][0] == 1:
        return items[0][1]
    return LinComb(items)


def _pad(cs, n):
    cs = list(cs)
    return cs + [Fraction(0)] * (n - len(cs))
