"""Graded-commutative ring presentations as finite-dimensional algebras.

A presentation is a free graded-commutative algebra modulo a homogeneous
ideal, carried with zero differential.  Per-degree bases of the quotient are
computed lazily by exact elimination: the ideal slice in degree k is spanned
by monomial multiples of the relations, and the chosen basis is the set of
non-pivot monomials, which makes reduction and reports reproducible.

No Groebner machinery: everything is degreewise linear algebra, which is all
the finite-dimensional stand-ins here need.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .cdga import Element, FreeCdga, GradedAlgebra

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RingPresentation(GradedAlgebra):
    """Finite presentation of a graded-commutative ring (zero differential).

    ``relations`` are homogeneous elements of the ambient free algebra on the
    given generators.  ``fundamental_degree`` marks the top degree of a
    Poincare-duality presentation; ``verify_duality()`` checks nonsingularity
    of the induced pairing by exact determinant ranks.
    """

    def __init__(self, generators, relations=(), *, name="R",
                 fundamental_degree=None, duality=False,
                 orientation_note=None):
        self.name = name
        self.ambient = FreeCdga(generators, None, name=f"{name}~ambient")
        rels = []
        for r in relations:
            e = r if isinstance(r, Element) else self.ambient.element(r)
            if e.alg is not self.ambient:
                e = self.ambient.adopt(e)
            if e.is_zero():
                continue
            if not e.is_homogeneous():
                raise ValueError(f"relation {e} is not homogeneous")
            rels.append(e)
        self.relations = tuple(rels)
        self.fundamental_degree = fundamental_degree
        self.duality = duality
        self.orientation_note = orientation_note
        self._slices = {}
        if duality:
            if fundamental_degree is None:
                raise ValueError("duality flag needs a fundamental degree")

    # -- quotient slices -----------------------------------------------------

    def _slice(self, degree):
        """(basis keys, pivot->reduction rows, ambient keys, position map)."""
        cached = self._slices.get(degree)
        if cached is not None:
            return cached
        amb = self.ambient.basis(degree)
        pos = {k: i for i, k in enumerate(amb)}
        rows = []
        for rel in self.relations:
            rdeg = rel.degree
            if rdeg is None or rdeg > degree:
                continue
            for mon in self.ambient.basis(degree - rdeg):
                prod = self.ambient.mul_terms({mon: _ONE}, rel.terms)
                if not prod:
                    continue
                row = [_ZERO] * len(amb)
                for k, c in prod.items():
                    row[pos[k]] = c
                rows.append(row)
        red, pivots = linalg.rref(rows)
        pivot_set = set(pivots)
        basis = tuple(k for i, k in enumerate(amb) if i not in pivot_set)
        reduction = {}
        for row, p in zip(red, pivots):
            reduction[amb[p]] = {amb[j]: -row[j] for j in range(len(amb))
                                 if j not in pivot_set and row[j]}
        out = (basis, reduction, amb, pos)
        self._slices[degree] = out
        return out

    def reduce_terms(self, terms):
        """Rewrite ambient terms on the chosen quotient basis, per degree."""
        by_degree = {}
        for k, c in terms.items():
            by_degree.setdefault(self.ambient.key_degree(k), {})[k] = c
        out = {}
        for degree, part in by_degree.items():
            _basis, reduction, _amb, _pos = self._slice(degree)
            for k, c in part.items():
                repl = reduction.get(k)
                if repl is None:
                    v = out.get(k, _ZERO) + c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
                else:
                    for k2, c2 in repl.items():
                        v = out.get(k2, _ZERO) + c * c2
                        if v:
                            out[k2] = v
                        elif k2 in out:
                            del out[k2]
        return out

    # -- GradedAlgebra interface ----------------------------------------------

    def basis(self, degree):
        if degree < 0:
            return ()
        return self._slice(degree)[0]

    def key_degree(self, key):
        return self.ambient.key_degree(key)

    def mul_keys(self, k1, k2):
        return self.reduce_terms(self.ambient.mul_keys(k1, k2))

    def d_key(self, key):
        return {}

    def format_key(self, key):
        return self.ambient.format_key(key)

    def __getitem__(self, name) -> Element:
        return Element(self, self.reduce_terms({self.ambient.gen_key(name): _ONE}))

    def degree_of(self, name):
        return self.ambient.degree_of(name)

    def generator_names(self):
        return self.ambient.generator_names()

    @property
    def gens(self):
        return self.ambient.gens

    @property
    def index(self):
        return self.ambient.index

    def dim(self, degree):
        return len(self.basis(degree))

    def differential_of(self, name) -> Element:
        return Element(self, {})

    # -- duality ----------------------------------------------------------------

    def top_basis_key(self):
        n = self.fundamental_degree
        if n is None:
            raise ValueError("presentation has no fundamental degree")
        top = self.basis(n)
        if len(top) != 1:
            raise ValueError(f"top degree {n} has rank {len(top)}, expected 1")
        return top[0]

    def verify_duality(self):
        """Nonsingularity of the pairing H^k x H^(n-k) -> H^n, all k.

        Exact check: for each degree the pairing matrix on the presented
        bases must have full rank.  Raises on failure.
        """
        n = self.fundamental_degree
        self.top_basis_key()
        for k in range(0, n // 2 + 1):
            left = self.basis(k)
            right = self.basis(n - k)
            if len(left) != len(right):
                raise ValueError(
                    f"duality fails: dim H^{k} = {len(left)} but "
                    f"dim H^{n - k} = {len(right)}")
            mat = []
            for kl in left:
                row = []
                for kr in right:
                    prod = self.mul_keys(kl, kr)
                    row.append(next(iter(prod.values()), _ZERO))
                mat.append(row)
            if linalg.rank(mat) != len(left):
                raise ValueError(f"duality pairing is singular in degree {k}")
        return True


def sphere_ring(n, *, name=None):
    """Cohomology ring of an n-sphere: one generator with square zero."""
    rels = []
    amb = FreeCdga([("x", n)])
    if n % 2 == 0:
        rels = [amb["x"] ** 2]
    return RingPresentation([("x", n)], rels, name=name or f"S{n}",
                            fundamental_degree=n, duality=True)


def projective_ring(gen_degree, power, *, name=None):
    """Truncated polynomial ring {x^(power+1) = 0} on one even generator."""
    amb = FreeCdga([("x", gen_degree)])
    return RingPresentation(
        [("x", gen_degree)], [amb["x"] ** (power + 1)],
        name=name or f"P({gen_degree},{power})",
        fundamental_degree=gen_degree * power, duality=True)


def wedge_of_spheres_ring(degrees, *, name="wedge"):
    """Ring with one generator per sphere and all products of generators zero."""
    gens = [(f"x{i}", d) for i, d in enumerate(degrees)]
    amb = FreeCdga(gens)
    rels = []
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            e = amb[gens[i][0]] * amb[gens[j][0]]
            if not e.is_zero():
                rels.append(e)
    return RingPresentation(gens, rels, name=name)
