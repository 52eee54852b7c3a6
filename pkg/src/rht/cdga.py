"""Free graded-commutative differential algebras over the rationals.

Generators carry a fixed declaration order.  A monomial is a sorted tuple of
(generator index, exponent) pairs; products pick up Koszul signs and odd
generators square to zero.  The differential is given on generators, raises
degree by one, and extends by the graded Leibniz rule; d(d(v)) = 0 is checked
at construction.  All values are immutable after construction and every
operation is a pure function, so instances are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Scalar = int | Fraction
Monomial = tuple
UNIT: Monomial = ()

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Generator:
    """Named generator of fixed positive degree, optionally stage-tagged."""

    name: str
    degree: int
    stage: int | None = None

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(
                f"generator {self.name!r} needs degree >= 1, got {self.degree}")
        if self.stage is not None and self.stage < 0:
            raise ValueError(f"generator {self.name!r} has a negative stage tag")


def _as_generators(gens):
    out = []
    for g in gens:
        if isinstance(g, Generator):
            out.append(g)
        else:
            name, degree = g[0], g[1]
            stage = g[2] if len(g) > 2 else None
            out.append(Generator(name, degree, stage))
    return tuple(out)


class Element:
    """Exact rational linear combination of monomial keys of one algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[k] = c
        self.alg = alg
        self.terms = clean

    # -- structure ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Common degree of all terms; None for 0 or mixed elements."""
        degs = {self.alg.key_degree(k) for k in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self):
        return len({self.alg.key_degree(k) for k in self.terms}) <= 1

    def coefficient(self, key):
        return self.terms.get(key, _ZERO)

    def homogeneous_part(self, degree):
        return Element(self.alg, {k: c for k, c in self.terms.items()
                                  if self.alg.key_degree(k) == degree})

    # -- arithmetic --------------------------------------------------------

    def _check_same(self, other):
        if other.alg is not self.alg:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, Element):
            self._check_same(other)
            out = dict(self.terms)
            for k, c in other.terms.items():
                v = out.get(k, _ZERO) + c
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
            return Element(self.alg, out)
        return NotImplemented

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check_same(other)
            return Element(self.alg, self.alg.mul_terms(self.terms, other.terms))
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Element(self.alg, {k: c * f for k, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.alg.unit()
        for _ in range(n):
            out = out * self
        return out

    def d(self):
        """Differential, extended from generators by the graded Leibniz rule."""
        return Element(self.alg, self.alg.d_terms(self.terms))

    # -- comparison / display ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alg is other.alg and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {UNIT: Fraction(other)}
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return self.alg.format_terms(self.terms)


class GradedAlgebra:
    """Shared element arithmetic for key-indexed graded algebras.

    Concrete algebras provide ``key_degree``, ``mul_keys``, ``d_key``,
    ``basis`` and ``format_key``.  The unit key is the empty tuple.
    """

    name = "A"

    # -- constructors --------------------------------------------------------

    def element(self, terms=None) -> Element:
        return Element(self, terms)

    def zero(self) -> Element:
        return Element(self, {})

    def unit(self) -> Element:
        return Element(self, {UNIT: _ONE})

    def scalar(self, c) -> Element:
        return Element(self, {UNIT: Fraction(c)})

    def sum(self, elems) -> Element:
        out = self.zero()
        for e in elems:
            out = out + e
        return out

    # -- term arithmetic -----------------------------------------------------

    def mul_terms(self, t1, t2):
        out = {}
        for k1, c1 in t1.items():
            for k2, c2 in t2.items():
                for k, s in self.mul_keys(k1, k2).items():
                    v = out.get(k, _ZERO) + c1 * c2 * s
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return out

    def d_terms(self, t):
        out = {}
        for k, c in t.items():
            for dk, dc in self.d_key(k).items():
                v = out.get(dk, _ZERO) + c * dc
                if v:
                    out[dk] = v
                elif dk in out:
                    del out[dk]
        return out

    # -- coordinates ---------------------------------------------------------

    def coords(self, element: Element, degree: int):
        """Coordinate vector of a homogeneous element over basis(degree)."""
        keys = self.basis(degree)
        pos = {k: i for i, k in enumerate(keys)}
        vec = [_ZERO] * len(keys)
        for k, c in element.terms.items():
            if self.key_degree(k) != degree:
                raise ValueError(f"term of degree {self.key_degree(k)} in a "
                                 f"degree-{degree} coordinate request")
            vec[pos[k]] = c
        return vec

    def from_coords(self, degree: int, vec) -> Element:
        keys = self.basis(degree)
        return Element(self, {k: Fraction(c) for k, c in zip(keys, vec) if c})

    # -- display -------------------------------------------------------------

    def key_sort_token(self, key):
        return (0, key)

    def format_terms(self, terms):
        if not terms:
            return "0"
        items = sorted(terms.items(),
                       key=lambda kv: (self.key_degree(kv[0]),
                                       self.key_sort_token(kv[0])))
        parts = []
        for k, c in items:
            mono = self.format_key(k)
            if mono == "1":
                body = str(abs(c)) if abs(c) != 1 else "1"
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FreeCdga(GradedAlgebra):
    """Finite-type free graded-commutative algebra with a differential.

    The canonical generator order is the declaration order; basis enumeration,
    signs and report output all derive from it.
    """

    def __init__(self, generators, differential=None, *, name="A"):
        self.name = name
        self.gens = _as_generators(generators)
        seen = set()
        for g in self.gens:
            if g.name in seen:
                raise ValueError(f"duplicate generator name {g.name!r}")
            seen.add(g.name)
        self.index = {g.name: i for i, g in enumerate(self.gens)}
        self._degrees = tuple(g.degree for g in self.gens)
        self._odd = tuple(g.degree % 2 == 1 for g in self.gens)
        diff = {}
        if differential:
            for gname, terms in differential.items():
                if gname not in self.index:
                    raise ValueError(f"differential given for unknown generator {gname!r}")
                if isinstance(terms, Element):
                    terms = terms.terms
                terms = {k: Fraction(c) for k, c in terms.items() if c}
                if terms:
                    diff[self.index[gname]] = terms
        self._diff = diff
        self._basis_cache = {}
        self._d_cache = {}
        self._mul_cache = {}
        self._validate()

    @classmethod
    def define(cls, generators, d=None, *, name="A"):
        """Build an algebra whose differential is written in its own elements.

        ``d`` is a callable receiving the zero-differential algebra and
        returning a dict {generator name: Element}.
        """
        plain = cls(generators, None, name=name)
        if d is None:
            return plain
        imgs = d(plain)
        return cls(generators, {k: v.terms if isinstance(v, Element) else v
                                for k, v in imgs.items()}, name=name)

    def _validate(self):
        for idx, terms in self._diff.items():
            g = self.gens[idx]
            for mon in terms:
                if self.key_degree(mon) != g.degree + 1:
                    raise ValueError(
                        f"d({g.name}) must be homogeneous of degree "
                        f"{g.degree + 1}; found a degree-{self.key_degree(mon)} term")
        for idx, terms in self._diff.items():
            dd = self.d_terms(terms)
            if dd:
                raise ValueError(
                    f"d(d({self.gens[idx].name})) = {self.format_terms(dd)} != 0")

    # -- generator access ----------------------------------------------------

    def __getitem__(self, name) -> Element:
        idx = self.index[name]
        return Element(self, {((idx, 1),): _ONE})

    def gen_key(self, name) -> Monomial:
        return ((self.index[name], 1),)

    def degree_of(self, name) -> int:
        return self.gens[self.index[name]].degree

    def differential_of(self, name) -> Element:
        return Element(self, self._diff.get(self.index[name], {}))

    def generator_names(self):
        return tuple(g.name for g in self.gens)

    # -- keys ----------------------------------------------------------------

    def key_degree(self, mon) -> int:
        return sum(self._degrees[i] * e for i, e in mon)

    def monomial(self, factors):
        """Normalize an arbitrarily ordered factor list.

        ``factors`` is an iterable of (name or index, exponent).  Returns
        (sign, monomial); the monomial is None when an odd generator repeats.
        The result is independent of the input order up to the Koszul sign.
        """
        odd_seq = []
        exps = {}
        for ref, e in factors:
            i = self.index[ref] if isinstance(ref, str) else ref
            if e < 0:
                raise ValueError("negative exponent")
            if e == 0:
                continue
            if self._odd[i]:
                odd_seq.extend([i] * e)
            exps[i] = exps.get(i, 0) + e
        if len(set(odd_seq)) != len(odd_seq):
            return _ZERO, None
        inversions = sum(1 for a in range(len(odd_seq))
                         for b in range(a + 1, len(odd_seq))
                         if odd_seq[a] > odd_seq[b])
        key = tuple(sorted(exps.items()))
        return (_ONE if inversions % 2 == 0 else -_ONE), key

    def monomial_element(self, factors, coeff=1) -> Element:
        sign, key = self.monomial(factors)
        if key is None:
            return self.zero()
        return Element(self, {key: sign * Fraction(coeff)})

    def mul_keys(self, m1, m2):
        if not m1:
            return {m2: _ONE}
        if not m2:
            return {m1: _ONE}
        cached = self._mul_cache.get((m1, m2))
        if cached is not None:
            return cached
        swaps = 0
        odd = self._odd
        for i2, _e2 in m2:
            if odd[i2]:
                for i1, _e1 in m1:
                    if i1 > i2 and odd[i1]:
                        swaps += 1
        merged = {}
        for i, e in m1:
            merged[i] = e
        zero = False
        for i, e in m2:
            tot = merged.get(i, 0) + e
            if odd[i] and tot > 1:
                zero = True
                break
            merged[i] = tot
        if zero:
            out = {}
        else:
            key = tuple(sorted(merged.items()))
            out = {key: _ONE if swaps % 2 == 0 else -_ONE}
        self._mul_cache[(m1, m2)] = out
        return out

    def d_key(self, mon):
        cached = self._d_cache.get(mon)
        if cached is not None:
            return cached
        out = {}
        prefix_deg = 0
        for pos, (i, e) in enumerate(mon):
            dgen = self._diff.get(i)
            if dgen:
                left = mon[:pos] + (((i, e - 1),) if e > 1 else ())
                right = mon[pos + 1:]
                coeff = Fraction(e if prefix_deg % 2 == 0 else -e)
                for dm, dc in dgen.items():
                    for k1, c1 in self.mul_keys(left, dm).items():
                        for k2, c2 in self.mul_keys(k1, right).items():
                            v = out.get(k2, _ZERO) + coeff * dc * c1 * c2
                            if v:
                                out[k2] = v
                            elif k2 in out:
                                del out[k2]
            prefix_deg += self._degrees[i] * e
        self._d_cache[mon] = out
        return out

    # -- basis ----------------------------------------------------------------

    def basis(self, degree):
        """All monomials of the given degree, deterministically ordered.

        Order: exponent of the earliest declared generator descending, then
        recursively on later generators.
        """
        if degree < 0:
            return ()
        cached = self._basis_cache.get(degree)
        if cached is not None:
            return cached
        out = []

        def rec(start, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if start >= len(self.gens):
                return
            deg = self._degrees[start]
            top = remaining // deg
            if self._odd[start]:
                top = min(top, 1)
            for e in range(top, -1, -1):
                if e:
                    acc.append((start, e))
                    rec(start + 1, remaining - e * deg, acc)
                    acc.pop()
                else:
                    rec(start + 1, remaining, acc)

        rec(0, degree, [])
        out = tuple(out)
        self._basis_cache[degree] = out
        return out

    def format_key(self, mon):
        if not mon:
            return "1"
        return "*".join(self.gens[i].name if e == 1 else f"{self.gens[i].name}^{e}"
                        for i, e in mon)

    # -- extension -------------------------------------------------------------

    def extend(self, new_generators, new_differential=None, *, name=None):
        """New algebra with generators appended after the existing ones.

        Existing monomial keys stay valid (indices are preserved), so term
        dicts of old elements can be reused directly.
        """
        gens = list(self.gens) + list(_as_generators(new_generators))
        diff = {self.gens[i].name: terms for i, terms in self._diff.items()}
        if new_differential:
            for gname, terms in new_differential.items():
                if isinstance(terms, Element):
                    terms = terms.terms
                diff[gname] = terms
        return FreeCdga(gens, diff, name=name or self.name)

    def adopt(self, element: Element) -> Element:
        """Re-home an element of an algebra this one extends."""
        other = element.alg
        for g in other.gens:
            mine = self.gens[self.index[g.name]]
            if mine.degree != g.degree:
                raise ValueError(f"generator {g.name!r} differs between algebras")
        remap = {other.index[g.name]: self.index[g.name] for g in other.gens}
        out = {}
        for mon, c in element.terms.items():
            key = tuple(sorted((remap[i], e) for i, e in mon))
            out[key] = c
        return Element(self, out)


class TruncatedCdga(GradedAlgebra):
    """Quotient of a free CDGA by everything above a top degree.

    The ideal of elements of degree above the cutoff is closed under d and
    under multiplication, so this is again a differential graded algebra.
    Used as a finite-dimensional stand-in where genuine form algebras would
    appear.
    """

    def __init__(self, base: FreeCdga, top: int, *, name=None):
        if top < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.base = base
        self.top = top
        self.name = name or f"{base.name}|<= {top}"

    def key_degree(self, mon):
        return self.base.key_degree(mon)

    def basis(self, degree):
        if degree > self.top:
            return ()
        return self.base.basis(degree)

    def mul_keys(self, m1, m2):
        return {k: c for k, c in self.base.mul_keys(m1, m2).items()
                if self.base.key_degree(k) <= self.top}

    def d_key(self, mon):
        return {k: c for k, c in self.base.d_key(mon).items()
                if self.base.key_degree(k) <= self.top}

    def format_key(self, mon):
        return self.base.format_key(mon)

    def __getitem__(self, name) -> Element:
        if self.base.degree_of(name) > self.top:
            return self.zero()
        return Element(self, {self.base.gen_key(name): _ONE})

    def degree_of(self, name):
        return self.base.degree_of(name)

    def generator_names(self):
        return self.base.generator_names()

    @property
    def gens(self):
        return self.base.gens

    @property
    def index(self):
        return self.base.index

    def differential_of(self, name) -> Element:
        e = self.base.differential_of(name)
        return Element(self, {k: c for k, c in e.terms.items()
                              if self.base.key_degree(k) <= self.top})


class DgaMorphism:
    """Algebra map defined on generators and commuting with differentials.

    The source is a free CDGA; the target may be any key-indexed graded
    algebra (free, truncated, ring presentation, cell attachment).  Both the
    degree-preservation and the chain-map condition phi(dv) = d(phi(v)) are
    checked at construction.
    """

    def __init__(self, source, target, images, *, check=True):
        self.source = source
        self.target = target
        imgs = {}
        for g in source.gens:
            if g.name not in images:
                raise ValueError(f"no image given for generator {g.name!r}")
            e = images[g.name]
            if e.alg is not target:
                raise ValueError(f"image of {g.name!r} lives in the wrong algebra")
            imgs[g.name] = e
        self.images = imgs
        self._key_cache = {UNIT: {UNIT: _ONE}}
        if check:
            self._check()

    def _check(self):
        for g in self.source.gens:
            img = self.images[g.name]
            if img and not (img.is_homogeneous() and img.degree == g.degree):
                raise ValueError(
                    f"image of {g.name!r} is not homogeneous of degree {g.degree}")
        for g in self.source.gens:
            lhs = self.apply(self.source.differential_of(g.name))
            rhs = self.images[g.name].d()
            if lhs != rhs:
                raise ValueError(
                    f"not a chain map on {g.name!r}: phi(d {g.name}) = {lhs} "
                    f"but d(phi {g.name}) = {rhs}")

    @classmethod
    def identity(cls, alg):
        return cls(alg, alg, {g.name: alg[g.name] for g in alg.gens}, check=False)

    def _image_of_key(self, mon):
        cached = self._key_cache.get(mon)
        if cached is not None:
            return cached
        tgt = self.target
        out = {UNIT: _ONE}
        for i, e in mon:
            gterms = self.images[self.source.gens[i].name].terms
            for _ in range(e):
                out = tgt.mul_terms(out, gterms)
        self._key_cache[mon] = out
        return out

    def apply_terms(self, terms):
        tgt = self.target
        out = {}
        for mon, c in terms.items():
            for k, v in self._image_of_key(mon).items():
                s = out.get(k, _ZERO) + c * v
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return out

    def apply(self, x: Element) -> Element:
        if x.alg is not self.source:
            raise ValueError("element does not belong to the morphism source")
        return Element(self.target, self.apply_terms(x.terms))

    def compose(self, inner: "DgaMorphism") -> "DgaMorphism":
        """self o inner."""
        if inner.target is not self.source:
            raise ValueError("morphisms are not composable")
        images = {g.name: self.apply(inner.images[g.name]) for g in inner.source.gens}
        return DgaMorphism(inner.source, self.target, images, check=False)

    def is_identity_on_generators(self):
        return all(self.images[g.name] == self.source[g.name] for g in self.source.gens)

    def __repr__(self):
        return f"<DgaMorphism {self.source.name} -> {getattr(self.target, 'name', '?')}>"
