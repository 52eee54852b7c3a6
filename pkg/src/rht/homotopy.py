"""Homotopies over the polynomial interval, obstruction operators, pairings.

A homotopy element lives in B (x) Q<t, dt>: finitely many body coefficients
b_i (x) t^i plus dt-coefficients c_j (x) t^j dt, with dt squaring to zero.
The two integration operators annihilate the body part and act on the
dt part by

    int_0^t  c (x) t^i dt = (-1)^deg(c) c (x) t^(i+1)/(i+1)
    int_0^1  c (x) t^i dt = (-1)^deg(c) c / (i+1)

and satisfy, exactly,

    d(int_0^t u) + int_0^t du = u - u|_{t=0,dt=0} (x) 1
    d(int_0^1 u) + int_0^1 du = u|_{t=1,dt=0} - u|_{t=0,dt=0}.

Homotopies of algebra maps are oriented here with the composite at t = 1:
H|_{t=0} is the extendee g restricted to the base and H|_{t=1} is h o f.
That orientation is forced by requiring the obstruction assignment
O(v) = (f(dv), g(v) + int_0^1 H(dv)) to be a relative cocycle; the reversed
convention is available as an explicit involution of homotopy elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import linalg
from .cdga import DgaMorphism, Element
from .cohomology import CohomologyClass, DegreeCohomology, MappingCone

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_T_CAP = 16


class HomotopyElement:
    """Element of B (x) Q<t, dt> with exact coefficients in the algebra B.

    ``body`` maps t-exponents to coefficients of t^i; ``dt_part`` maps
    t-exponents to coefficients of t^i dt.  The t-degree is capped (default
    16) and overflow raises instead of truncating.
    """

    __slots__ = ("alg", "body", "dt_part", "t_cap")

    def __init__(self, alg, body=None, dt_part=None, t_cap=DEFAULT_T_CAP):
        self.alg = alg
        self.t_cap = t_cap
        self.body = {i: e for i, e in (body or {}).items() if e}
        self.dt_part = {i: e for i, e in (dt_part or {}).items() if e}
        worst = max([*self.body, *self.dt_part, 0])
        if worst > t_cap:
            raise ValueError(f"t-degree {worst} exceeds the cap {t_cap}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, element: Element, t_cap=DEFAULT_T_CAP):
        return cls(element.alg, {0: element}, None, t_cap)

    @classmethod
    def t_power(cls, element: Element, i, *, dt=False, t_cap=DEFAULT_T_CAP):
        if dt:
            return cls(element.alg, None, {i: element}, t_cap)
        return cls(element.alg, {i: element}, None, t_cap)

    def is_zero(self):
        return not self.body and not self.dt_part

    def degree(self):
        """Common total degree (dt counts 1); None if zero or mixed."""
        degs = set()
        for e in self.body.values():
            degs.update({self.alg.key_degree(k) for k in e.terms})
        for e in self.dt_part.values():
            degs.update({self.alg.key_degree(k) + 1 for k in e.terms})
        if len(degs) == 1:
            return degs.pop()
        return None

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if other.alg is not self.alg:
            raise ValueError("homotopy elements over different algebras")

    def __add__(self, other):
        self._check(other)
        body = dict(self.body)
        for i, e in other.body.items():
            body[i] = body.get(i, e.alg.zero()) + e
        dt = dict(self.dt_part)
        for i, e in other.dt_part.items():
            dt[i] = dt.get(i, e.alg.zero()) + e
        return HomotopyElement(self.alg, body, dt, max(self.t_cap, other.t_cap))

    def __neg__(self):
        return HomotopyElement(self.alg,
                               {i: -e for i, e in self.body.items()},
                               {i: -e for i, e in self.dt_part.items()},
                               self.t_cap)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return HomotopyElement(self.alg,
                                   {i: c * e for i, e in self.body.items()},
                                   {i: c * e for i, e in self.dt_part.items()},
                                   self.t_cap)
        return NotImplemented

    def _parity_twist(self, element: Element) -> Element:
        """Multiply each homogeneous term by (-1)^degree (moving it past dt)."""
        return Element(element.alg,
                       {k: (c if self.alg.key_degree(k) % 2 == 0 else -c)
                        for k, c in element.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return other * self
        self._check(other)
        cap = max(self.t_cap, other.t_cap)
        body = {}
        dt = {}

        def acc(store, i, e):
            if e:
                store[i] = store.get(i, self.alg.zero()) + e

        for i, e1 in self.body.items():
            for j, e2 in other.body.items():
                acc(body, i + j, e1 * e2)
            for j, e2 in other.dt_part.items():
                acc(dt, i + j, e1 * e2)
        for i, e1 in self.dt_part.items():
            for j, e2 in other.body.items():
                acc(dt, i + j, e1 * self._parity_twist(e2))
            # dt * dt = 0
        return HomotopyElement(self.alg, body, dt, cap)

    def d(self):
        """Differential with d(t) = dt: d(b (x) t^i) = db (x) t^i +
        (-1)^deg(b) i b (x) t^(i-1) dt and d(c (x) t^i dt) = dc (x) t^i dt."""
        body = {}
        dt = {}
        for i, e in self.body.items():
            de = e.d()
            if de:
                body[i] = body.get(i, self.alg.zero()) + de
            if i > 0:
                tw = i * self._parity_twist(e)
                if tw:
                    dt[i - 1] = dt.get(i - 1, self.alg.zero()) + tw
        for i, e in self.dt_part.items():
            de = e.d()
            if de:
                dt[i] = dt.get(i, self.alg.zero()) + de
        return HomotopyElement(self.alg, body, dt, self.t_cap)

    def at(self, t_value) -> Element:
        """Restriction at t = t_value, dt = 0 (0 or 1)."""
        if t_value == 0:
            return self.body.get(0, self.alg.zero())
        if t_value == 1:
            out = self.alg.zero()
            for e in self.body.values():
                out = out + e
            return out
        raise ValueError("only the endpoints t = 0 and t = 1 are meaningful")

    def reversed(self):
        """Time reversal t -> 1 - t, dt -> -dt."""
        body = {}
        dt = {}
        for i, e in self.body.items():
            for k in range(i + 1):
                c = Fraction(comb(i, k) * (-1) ** k)
                if c:
                    body[k] = body.get(k, self.alg.zero()) + c * e
        for i, e in self.dt_part.items():
            for k in range(i + 1):
                c = Fraction(comb(i, k) * (-1) ** (k + 1))
                if c:
                    dt[k] = dt.get(k, self.alg.zero()) + c * e
        return HomotopyElement(self.alg, body, dt, self.t_cap)

    def __eq__(self, other):
        if isinstance(other, HomotopyElement):
            return (self.alg is other.alg and self.body == other.body
                    and self.dt_part == other.dt_part)
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        parts = []
        for i in sorted(self.body):
            coeff = repr(self.body[i])
            parts.append(coeff if i == 0 else f"({coeff})*t^{i}")
        for i in sorted(self.dt_part):
            coeff = repr(self.dt_part[i])
            parts.append(f"({coeff})*dt" if i == 0 else f"({coeff})*t^{i}dt")
        return " + ".join(parts) if parts else "0"


def integrate_0_t(u: HomotopyElement) -> HomotopyElement:
    """Formal fiberwise integral from 0 to t; body annihilated."""
    dt = {}
    for i, e in u.dt_part.items():
        coeff = Element(e.alg, {k: (c if u.alg.key_degree(k) % 2 == 0 else -c)
                                * Fraction(1, i + 1)
                                for k, c in e.terms.items()})
        if coeff:
            dt[i + 1] = coeff
    return HomotopyElement(u.alg, dt, None, u.t_cap)


def integrate_0_1(u: HomotopyElement) -> Element:
    """Formal fiberwise integral from 0 to 1; lands back in the algebra."""
    out = u.alg.zero()
    for i, e in u.dt_part.items():
        out = out + Element(e.alg, {k: (c if u.alg.key_degree(k) % 2 == 0 else -c)
                                    * Fraction(1, i + 1)
                                    for k, c in e.terms.items()})
    return out


class DgaHomotopy:
    """Homotopy between two algebra maps, given on generators.

    ``start`` and ``end`` are the restrictions at t = 0 and t = 1; the
    generator images must satisfy H(dv) = d(H(v)), checked at construction.
    """

    def __init__(self, start: DgaMorphism, end: DgaMorphism, images, *, check=True):
        if start.source is not end.source or start.target is not end.target:
            raise ValueError("homotopy endpoints must share source and target")
        self.start = start
        self.end = end
        self.source = start.source
        self.target = start.target
        self.images = dict(images)
        self._key_cache = {}
        if check:
            self._check()

    @classmethod
    def constant(cls, phi: DgaMorphism, t_cap=DEFAULT_T_CAP):
        imgs = {g.name: HomotopyElement.constant(phi.images[g.name], t_cap)
                for g in phi.source.gens}
        return cls(phi, phi, imgs, check=False)

    def _check(self):
        for g in self.source.gens:
            h = self.images.get(g.name)
            if h is None:
                raise ValueError(f"no homotopy image for generator {g.name!r}")
            if h.at(0) != self.start.images[g.name]:
                raise ValueError(f"H({g.name}) at t=0 differs from the start map")
            if h.at(1) != self.end.images[g.name]:
                raise ValueError(f"H({g.name}) at t=1 differs from the end map")
        for g in self.source.gens:
            lhs = self.apply(self.source.differential_of(g.name))
            rhs = self.images[g.name].d()
            if lhs != rhs:
                raise ValueError(f"homotopy is not a chain map on {g.name!r}")

    def _image_of_key(self, mon) -> HomotopyElement:
        cached = self._key_cache.get(mon)
        if cached is not None:
            return cached
        out = HomotopyElement.constant(self.target.unit())
        for i, e in mon:
            h = self.images[self.source.gens[i].name]
            for _ in range(e):
                out = out * h
        self._key_cache[mon] = out
        return out

    def apply(self, x: Element) -> HomotopyElement:
        if x.alg is not self.source:
            raise ValueError("element does not belong to the homotopy source")
        out = HomotopyElement(self.target, None, None)
        for mon, c in x.terms.items():
            out = out + c * self._image_of_key(mon)
        return out


# ---------------------------------------------------------------------------
# obstruction theory for elementary extensions


@dataclass
class ObstructionClass:
    """Obstruction to extending f over an elementary extension.

    ``cocycle`` maps each extension generator v to the pair
    (f(dv), g(v) + int_0^1 H(dv)) in B^(n+1) (+) C^n; ``class_coords`` are
    its coordinates in the relative cohomology of h, and ``primitives`` are
    deterministic solutions d(b, c) = O(v) when the class vanishes.
    """

    f: DgaMorphism
    g: DgaMorphism
    h: DgaMorphism
    homotopy: DgaHomotopy
    extension_degree: int
    v_names: tuple
    cocycle: dict
    class_coords: dict
    rank: int
    primitives: dict | None

    @property
    def vanishes(self):
        return self.rank == 0


def _extension_generators(f: DgaMorphism, g: DgaMorphism, v_names=None):
    base_names = set(f.source.generator_names())
    ext_names = [n for n in g.source.generator_names() if n not in base_names]
    if v_names is None:
        v_names = ext_names
    elif sorted(v_names) != sorted(ext_names):
        raise ValueError("V must list exactly the extension generators")
    if not v_names:
        raise ValueError("the extension adds no generators")
    degs = {g.source.degree_of(n) for n in v_names}
    if len(degs) != 1:
        raise ValueError("elementary extension generators must share one degree")
    n = degs.pop()
    for name in v_names:
        dv = g.source.differential_of(name)
        for mon, _c in dv.terms.items():
            for i, _e in mon:
                if g.source.gens[i].name in v_names:
                    raise ValueError(
                        f"d({name}) leaves the base algebra; extension is "
                        "not elementary")
    for gen in f.source.gens:
        if g.source.degree_of(gen.name) != gen.degree:
            raise ValueError(f"generator {gen.name!r} changes degree in A<V>")
    return tuple(v_names), n


def obstruction_class(f: DgaMorphism, g: DgaMorphism, h: DgaMorphism,
                      homotopy: DgaHomotopy | None = None,
                      v_names=None) -> ObstructionClass:
    """Obstruction cocycle O(v) = (f(dv), g(v) + int_0^1 H(dv)) and its class.

    The square is f: A -> B, h: B -> C, g: A<V> -> C, with H a homotopy from
    g|_A (at t = 0) to h o f (at t = 1) over C.  Passing no homotopy uses the
    constant one, which requires g|_A = h o f exactly.
    """
    if h.source is not f.target:
        raise ValueError("h must start at the target of f")
    if g.target is not h.target:
        raise ValueError("g and h must share a target")
    v_names, n = _extension_generators(f, g, v_names)
    restricted = DgaMorphism(f.source, g.target,
                             {gen.name: g.images[gen.name] for gen in f.source.gens},
                             check=False)
    hf = h.compose(f)
    if homotopy is None:
        for gen in f.source.gens:
            if restricted.images[gen.name] != hf.images[gen.name]:
                raise ValueError("g|_A differs from h o f; a homotopy is required")
        homotopy = DgaHomotopy.constant(restricted)
    else:
        if homotopy.source is not f.source or homotopy.target is not g.target:
            raise ValueError("homotopy does not fit the extension square")
        for gen in f.source.gens:
            if homotopy.start.images[gen.name] != restricted.images[gen.name]:
                raise ValueError("homotopy must start at g restricted to A")
            if homotopy.end.images[gen.name] != hf.images[gen.name]:
                raise ValueError("homotopy must end at h o f")

    cone = MappingCone(h)
    dc = DegreeCohomology(cone, n + 1)
    cocycle = {}
    class_coords = {}
    prim_b = {}
    prim_c = {}
    all_vanish = True
    for name in v_names:
        dv_ext = g.source.differential_of(name)
        dv_base = Element(f.source, dict(dv_ext.terms))
        b_part = f.apply(dv_base)
        c_part = g.images[name] + integrate_0_1(homotopy.apply(dv_base))
        cocycle[name] = (b_part, c_part)
        terms = cone.terms_of_pair(b_part, c_part)
        coords = dc.class_coords(terms)
        class_coords[name] = coords
        if any(coords):
            all_vanish = False
    primitives = None
    if all_vanish:
        keys_n = cone.basis(n)
        keys_n1 = cone.basis(n + 1)
        pos = {k: i for i, k in enumerate(keys_n1)}
        cols = []
        for key in keys_n:
            col = [_ZERO] * len(keys_n1)
            for k2, c in cone.d_key(key).items():
                col[pos[k2]] += c
            cols.append(col)
        primitives = {}
        for name in v_names:
            b_part, c_part = cocycle[name]
            target_vec = [_ZERO] * len(keys_n1)
            for k, c in cone.terms_of_pair(b_part, c_part).items():
                target_vec[pos[k]] += c
            sol = linalg.solve_columns(cols, len(keys_n1), target_vec)
            if sol is None:
                raise AssertionError("vanishing class without a primitive")
            terms = {k: c for k, c in zip(keys_n, sol) if c}
            primitives[name] = cone.pair_of(terms)
    rows = [class_coords[name] for name in v_names]
    rank = linalg.rank(rows) if dc.rank else 0
    return ObstructionClass(f, g, h, homotopy, n, v_names, cocycle,
                            class_coords, rank, primitives)


def extend_with_witness(obstruction: ObstructionClass):
    """Extension (f~, H~) from a vanishing obstruction's primitives.

    f~(v) = b(v) and H~(v) = g(v) + d(c(v) (x) t) + int_0^t H(dv); the
    endpoint and chain-map conditions are revalidated by the constructors.
    """
    if obstruction.primitives is None:
        raise ValueError("obstruction class does not vanish; nothing to extend")
    f, g, h = obstruction.f, obstruction.g, obstruction.h
    H = obstruction.homotopy
    for name, (b_v, c_v) in obstruction.primitives.items():
        dv = Element(f.source, dict(g.source.differential_of(name).terms))
        if b_v.d() != f.apply(dv):
            raise ValueError(f"invalid primitive: d(b({name})) != f(d{name})")
        expect = h.apply(b_v) - g.images[name] - integrate_0_1(H.apply(dv))
        if c_v.d() != expect:
            raise ValueError(f"invalid primitive: d(c({name})) mismatch on {name}")

    images_f = {gen.name: f.images[gen.name] for gen in f.source.gens}
    for name, (b_v, _c_v) in obstruction.primitives.items():
        images_f[name] = b_v
    f_ext = DgaMorphism(g.source, f.target, images_f, check=True)
    h_f_ext = h.compose(f_ext)

    images_H = {}
    for gen in f.source.gens:
        images_H[gen.name] = H.images[gen.name]
    for name, (_b_v, c_v) in obstruction.primitives.items():
        dv = Element(f.source, dict(g.source.differential_of(name).terms))
        tail = HomotopyElement.t_power(c_v, 1).d() + integrate_0_t(H.apply(dv))
        images_H[name] = HomotopyElement.constant(g.images[name]) + tail
    g_full = DgaMorphism(g.source, g.target,
                         {gen.name: g.images[gen.name] for gen in g.source.gens},
                         check=False)
    H_ext = DgaHomotopy(g_full, h_f_ext, images_H, check=True)
    return f_ext, H_ext


# ---------------------------------------------------------------------------
# Whitehead-bracket pairing


@dataclass(frozen=True)
class Leaf:
    """A multiple of the homotopy class dual to one model generator."""
    name: str
    multiplier: Fraction = Fraction(1)


@dataclass(frozen=True)
class Node:
    left: object
    right: object


BracketExpression = Leaf | Node


def parse_bracket(text: str) -> BracketExpression:
    """Parse `name`, `N*name`, or `[expr,expr]` (whitespace tolerated)."""
    s = text.strip()

    def parse(i):
        while i < len(s) and s[i].isspace():
            i += 1
        if i >= len(s):
            raise ValueError("unexpected end of bracket expression")
        if s[i] == "[":
            left, i = parse(i + 1)
            while i < len(s) and s[i].isspace():
                i += 1
            if i >= len(s) or s[i] != ",":
                raise ValueError("expected ',' inside bracket")
            right, i = parse(i + 1)
            while i < len(s) and s[i].isspace():
                i += 1
            if i >= len(s) or s[i] != "]":
                raise ValueError("expected ']' closing bracket")
            return Node(left, right), i + 1
        j = i
        while j < len(s) and (s[j].isalnum() or s[j] in "_/-"):
            j += 1
        token = s[i:j]
        if not token:
            raise ValueError(f"cannot read a leaf at {s[i:]!r}")
        while j < len(s) and s[j].isspace():
            j += 1
        if j < len(s) and s[j] == "*":
            name_expr, j2 = parse(j + 1)
            if not isinstance(name_expr, Leaf) or name_expr.multiplier != 1:
                raise ValueError("multiplier must prefix a plain name")
            return Leaf(name_expr.name, Fraction(token)), j2
        return Leaf(token, Fraction(1)), j

    expr, i = parse(0)
    if s[i:].strip():
        raise ValueError(f"trailing input after bracket expression: {s[i:]!r}")
    return expr


def bracket_degree(alg, expr) -> int:
    """Homotopy degree of the expression: leaves carry the generator degree,
    a bracket of degrees p and q has degree p + q - 1."""
    if isinstance(expr, Leaf):
        if expr.name not in alg.index:
            raise ValueError(f"unknown generator {expr.name!r} in bracket")
        return alg.degree_of(expr.name)
    return bracket_degree(alg, expr.left) + bracket_degree(alg, expr.right) - 1


def scale_leaves(expr, factor_for_degree):
    """Multiply every leaf by a degree-dependent factor (for scaling laws)."""
    if isinstance(expr, Leaf):
        return Leaf(expr.name, expr.multiplier * factor_for_degree(expr))
    return Node(scale_leaves(expr.left, factor_for_degree),
                scale_leaves(expr.right, factor_for_degree))


def whitehead_pair(model, generator: str, expr: BracketExpression) -> Fraction:
    """Pairing of a model generator against an iterated bracket expression.

    Computed from the quadratic part of the differential: a monomial x*y in
    d(v) contributes <x, left><y, right> + (-1)^(deg x deg y)
    <y, left><x, right>, recursively.  The global sign is a convention; the
    magnitude and the multilinear scaling in the leaf multipliers are not.
    """
    alg = model.algebra if hasattr(model, "algebra") else model
    if generator not in alg.index:
        raise ValueError(f"unknown generator {generator!r}")
    if bracket_degree(alg, expr) != alg.degree_of(generator):
        raise ValueError(
            f"bracket has homotopy degree {bracket_degree(alg, expr)} but "
            f"{generator!r} has degree {alg.degree_of(generator)}")
    return _pair(alg, generator, expr)


def _pair(alg, gname, expr) -> Fraction:
    if isinstance(expr, Leaf):
        return expr.multiplier if expr.name == gname else _ZERO
    if bracket_degree(alg, expr) != alg.degree_of(gname):
        return _ZERO
    total = _ZERO
    for mon, coeff in alg.differential_of(gname).terms.items():
        factors = []
        for i, e in mon:
            factors.extend([alg.gens[i].name] * e)
        if len(factors) != 2:
            continue
        x, y = factors
        px_l = _pair(alg, x, expr.left)
        py_r = _pair(alg, y, expr.right) if px_l else _ZERO
        py_l = _pair(alg, y, expr.left)
        px_r = _pair(alg, x, expr.right) if py_l else _ZERO
        sign = -1 if (alg.degree_of(x) * alg.degree_of(y)) % 2 else 1
        total += coeff * (px_l * py_r + sign * py_l * px_r)
    return total


# ---------------------------------------------------------------------------
# Massey triple products


@dataclass
class MasseyResult:
    degree: int
    class_representative: Element
    class_coords: list
    indeterminacy_rows: list
    indeterminacy_dim: int
    vanishes_mod_indeterminacy: bool


def _as_class(algebra, x):
    if isinstance(x, CohomologyClass):
        if x.representative.alg is not algebra:
            raise ValueError("class lives over a different algebra")
        return x.representative
    if isinstance(x, Element):
        if x.alg is not algebra:
            raise ValueError("element lives over a different algebra")
        if x.d():
            raise ValueError("representative is not closed")
        return x
    raise TypeError("expected a CohomologyClass or a closed Element")


def _primitive(algebra, element: Element, label: str) -> Element:
    """Deterministic primitive of an exact element; zero maps to zero."""
    if element.is_zero():
        return algebra.zero()
    deg = element.degree
    keys = list(algebra.basis(deg - 1))
    up = list(algebra.basis(deg))
    pos = {k: i for i, k in enumerate(up)}
    cols = []
    for k in keys:
        col = [_ZERO] * len(up)
        for k2, c in algebra.d_key(k).items():
            col[pos[k2]] += c
        cols.append(col)
    target = [_ZERO] * len(up)
    for k, c in element.terms.items():
        target[pos[k]] += c
    sol = linalg.solve_columns(cols, len(up), target)
    if sol is None:
        raise ValueError(f"{label} is not exact; Massey product undefined")
    return Element(algebra, {k: c for k, c in zip(keys, sol) if c})


def massey_triple(algebra, x, y, z) -> MasseyResult:
    """Triple product <x, y, z> with its indeterminacy subspace.

    Requires [x][y] = 0 and [y][z] = 0; with dxi = x y and deta = y z the
    class is [xi z - (-1)^deg(x) x eta], reported together with the subspace
    [x] H + H [z] (never silently quotiented).
    """
    ex = _as_class(algebra, x)
    ey = _as_class(algebra, y)
    ez = _as_class(algebra, z)
    if ex.is_zero() or ey.is_zero() or ez.is_zero():
        dx = (ex.degree or 0) + (ey.degree or 0) + (ez.degree or 0) - 1
        dc = DegreeCohomology(algebra, max(dx, 0))
        return MasseyResult(max(dx, 0), algebra.zero(), [_ZERO] * dc.rank,
                            [], 0, True)
    dx, dy, dz = ex.degree, ey.degree, ez.degree
    deg = dx + dy + dz - 1

    dc_xy = DegreeCohomology(algebra, dx + dy)
    if not dc_xy.is_exact((ex * ey).terms):
        raise ValueError("[x][y] does not vanish; Massey product undefined")
    dc_yz = DegreeCohomology(algebra, dy + dz)
    if not dc_yz.is_exact((ey * ez).terms):
        raise ValueError("[y][z] does not vanish; Massey product undefined")
    xi = _primitive(algebra, ex * ey, "x*y")
    eta = _primitive(algebra, ey * ez, "y*z")
    w = xi * ez - ((-1) ** dx) * (ex * eta)
    dc = DegreeCohomology(algebra, deg)
    coords = dc.class_coords(w.terms)

    indet_rows = []
    left = DegreeCohomology(algebra, dy + dz - 1)
    for vec in left.representatives():
        e = left.element_of(vec)
        indet_rows.append(dc.class_coords((ex * e).terms))
    right = DegreeCohomology(algebra, dx + dy - 1)
    for vec in right.representatives():
        e = right.element_of(vec)
        indet_rows.append(dc.class_coords((e * ez).terms))
    red, piv = linalg.rref(indet_rows)
    reduced = linalg.reduce_against(coords, red, piv)
    return MasseyResult(deg, w, coords, red, len(red), not any(reduced))


# ---------------------------------------------------------------------------
# Hopf invariants from cup squares


def hopf_invariant(ring, generator=None):
    """Cup-square coefficient of a degree-n generator against the top class.

    The presentation must have a rank-1 top degree; the result is the exact
    coefficient of w^2 over the deterministic top basis vector.
    """
    if generator is None:
        generator = ring.gens[0].name
    n = ring.degree_of(generator)
    top_degree = ring.fundamental_degree
    if top_degree is None:
        raise ValueError("presentation carries no fundamental degree")
    top = ring.basis(top_degree)
    if len(top) != 1:
        raise ValueError(f"top degree has rank {len(top)}, not 1")
    if 2 * n != top_degree:
        raise ValueError(
            f"square of {generator!r} has degree {2 * n}, not the top "
            f"degree {top_degree}")
    w2 = ring[generator] * ring[generator]
    stray = {k: c for k, c in w2.terms.items() if k != top[0]}
    if stray:
        raise ValueError("cup square is not proportional to the top class")
    return w2.terms.get(top[0], _ZERO)
