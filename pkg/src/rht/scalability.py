"""Embedding tests into exterior algebras and the scalability classifier.

Whether a closed manifold's cohomology ring can be realized multiplicatively
by bounded forms localizes, at a point, to the question of embedding the
ring into an exterior algebra on the cotangent space.  This module houses
the decision procedures for the three algebra families where that question
is settled, generic witness verification, connected-sum ring builders, the
intersection-complete family machinery, and a descriptor-level classifier.

Every refutation carries a machine-checkable certificate (a dimension count,
an exact inertia computation, or a solved linear system); every positive
verdict carries a witness that round-trips through verify_witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg
from .cdga import Element, FreeCdga
from .presentations import RingPresentation, projective_ring, sphere_ring

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# exterior algebras


def exterior_algebra(n, *, first_index=1, name=None) -> FreeCdga:
    """Alternating algebra on n degree-1 generators, zero differential."""
    gens = [(f"dx{i}", 1) for i in range(first_index, first_index + n)]
    return FreeCdga(gens, None, name=name or f"Ext{n}")


def subset_monomial(ext: FreeCdga, subset) -> Element:
    """Wedge of the dx_i over an index subset, in ascending order."""
    key = tuple(sorted((ext.index[f"dx{i}"], 1) for i in subset))
    return Element(ext, {key: _ONE})


def complement_sign(ext: FreeCdga, subset, total) -> Fraction:
    """Sign s with dx_subset ^ dx_complement = s * volume."""
    comp = [i for i in total if i not in subset]
    prod = subset_monomial(ext, subset) * subset_monomial(ext, comp)
    vol = subset_monomial(ext, total)
    key = next(iter(vol.terms))
    return prod.terms.get(key, _ZERO)


def symplectic_form(ext: FreeCdga, n, *, first_index=1) -> Element:
    """dx1^dx2 + dx3^dx4 + ... + dx(2n-1)^dx(2n)."""
    out = ext.zero()
    for i in range(n):
        lo = first_index + 2 * i
        out = out + subset_monomial(ext, [lo, lo + 1])
    return out


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class EmbeddingWitness:
    """Assignment of presentation generators to exterior-algebra elements."""

    ring: RingPresentation
    target: FreeCdga
    images: dict
    note: str | None = None

    def __post_init__(self):
        for name, img in self.images.items():
            want = self.ring.degree_of(name)
            if img and not (img.is_homogeneous() and img.degree == want):
                raise ValueError(
                    f"witness image of {name!r} is not homogeneous of degree {want}")

    def morphism(self):
        from .cdga import DgaMorphism
        return DgaMorphism(self.ring.ambient, self.target, self.images, check=True)


@dataclass
class WitnessReport:
    passed: bool
    failing_relation: str | None = None
    failing_degree: int | None = None
    message: str = ""


def verify_witness(ring: RingPresentation, witness: EmbeddingWitness) -> WitnessReport:
    """Relations map to zero and the presented basis stays independent.

    With the duality flag set, independence reduces to nonvanishing of the
    image of the fundamental class: multiplicativity plus a nonsingular
    pairing force every nonzero element to survive.
    """
    phi = witness.morphism()
    for rel in ring.relations:
        img = phi.apply(rel)
        if not img.is_zero():
            return WitnessReport(False, failing_relation=repr(rel),
                                 message=f"relation {rel} maps to {img}")
    if ring.duality:
        mu = fundamental_class_monomial(ring)
        img = phi.apply(Element(ring.ambient, {mu: _ONE}))
        if img.is_zero():
            return WitnessReport(False, failing_degree=ring.fundamental_degree,
                                 message="fundamental class maps to zero")
        return WitnessReport(True, message="relations verified; duality shortcut")
    top = ring.fundamental_degree
    degrees = sorted({g.degree for g in ring.gens})
    limit = top if top is not None else (2 * max(degrees) if degrees else 0)
    for k in range(1, limit + 1):
        basis = ring.basis(k)
        if not basis:
            continue
        rows = []
        for mon in basis:
            img = phi.apply(Element(ring.ambient, {mon: _ONE}))
            rows.append(witness.target.coords(img, k))
        if linalg.rank(rows) != len(basis):
            return WitnessReport(False, failing_degree=k,
                                 message=f"images of the degree-{k} basis are "
                                         "linearly dependent")
    return WitnessReport(True, message="relations and degreewise independence verified")


def fundamental_class_monomial(ring):
    """Ambient monomial representing the fundamental class.

    Connected-sum rings expose one directly (no quotient computation); other
    presentations fall back to the rank-1 top-degree basis.
    """
    mono = getattr(ring, "fundamental_monomial", None)
    if mono is not None:
        return mono
    return ring.top_basis_key()


# ---------------------------------------------------------------------------
# rank bound


@dataclass
class RankBoundResult:
    dimension: int
    per_degree: list          # (degree, rank, bound, ok)
    passed: bool

    @property
    def first_failure(self):
        for k, rank_, bound, ok in self.per_degree:
            if not ok:
                return (k, rank_, bound)
        return None


def rank_bound_check(ring: RingPresentation, n: int) -> RankBoundResult:
    """For a closed n-manifold ring: rank H^k must not exceed C(n, k)."""
    rows = []
    ok = True
    for k in range(0, n + 1):
        rank_ = ring.dim(k)
        bound = comb(n, k)
        good = rank_ <= bound
        ok = ok and good
        rows.append((k, rank_, bound, good))
    return RankBoundResult(n, rows, ok)


# ---------------------------------------------------------------------------
# the wedge pairing on middle forms


@dataclass
class SignatureResult:
    n: int
    positive: int
    negative: int
    pairs: int
    dense_checked: bool

    def as_tuple(self):
        return (self.positive, self.negative)


def wedge_pairing_signature(n: int, *, dense_check=None) -> SignatureResult:
    """Signature of the wedge form on middle-degree forms of R^(2n), n even.

    dx_I pairs only with dx_(I^c), so the Gram matrix splits into 2x2
    antidiagonal blocks of inertia (1, 1): the signature is
    (C(2n, n)/2, C(2n, n)/2).  For n <= 3 the block count is cross-checked
    against a dense exact inertia computation on the full monomial basis.
    """
    if n % 2 == 1:
        raise ValueError("odd n gives an antisymmetric (symplectic) pairing; "
                         "signature is defined only for even n")
    if n < 2:
        raise ValueError("n must be at least 2")
    total = comb(2 * n, n)
    pairs = total // 2
    if dense_check is None:
        dense_check = n <= 3
    if dense_check:
        ext = exterior_algebra(2 * n)
        subsets = list(itertools.combinations(range(1, 2 * n + 1), n))
        vol_key = next(iter(subset_monomial(ext, range(1, 2 * n + 1)).terms))
        gram = []
        for I in subsets:
            row = []
            eI = subset_monomial(ext, I)
            for J in subsets:
                prod = eI * subset_monomial(ext, J)
                row.append(prod.terms.get(vol_key, _ZERO))
            gram.append(row)
        pos, neg, zero = linalg.symmetric_inertia(gram)
        if (pos, neg, zero) != (pairs, pairs, 0):
            raise AssertionError("block signature disagrees with dense inertia")
    return SignatureResult(n, pairs, pairs, pairs, dense_check)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class DimensionCountRefutation:
    description: str
    independent_classes: int
    available_dimension: int

    def check(self):
        return self.independent_classes > self.available_dimension


@dataclass
class InertiaRefutation:
    description: str
    positive: int
    negative: int
    required: int

    def check(self):
        return self.required > max(self.positive, self.negative)


@dataclass
class LinearSystemRefutation:
    description: str
    unknowns: int
    nullspace_dim: int

    def check(self):
        return self.nullspace_dim == 0


# ---------------------------------------------------------------------------
# the three families


def omega_ring(n, r, *, name=None) -> RingPresentation:
    """Ring of a connected sum of r copies of S^n x S^n."""
    return connected_sum_ring([("sphere_product", n, n)] * r, name=name)


def sigma_ring(n, r, *, name=None) -> RingPresentation:
    """r generators of even degree n with equal squares and zero cross products."""
    if n % 2 == 1:
        raise ValueError("sigma family needs even generator degree")
    gens = [(f"a{i}", n) for i in range(1, r + 1)]
    amb = FreeCdga(gens)
    rels = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            rels.append(amb[f"a{i}"] * amb[f"a{j}"])
    for i in range(2, r + 1):
        rels.append(amb[f"a{i}"] ** 2 - amb["a1"] ** 2)
    ring = RingPresentation(gens, rels, name=name or f"Sigma({n},{r})",
                            fundamental_degree=2 * n, duality=True)
    ring.fundamental_monomial = next(iter((amb["a1"] ** 2).terms))
    return ring


def pi_ring(n, r, *, name=None) -> RingPresentation:
    """r degree-2 generators with equal n-th powers and zero cross products."""
    gens = [(f"a{i}", 2) for i in range(1, r + 1)]
    amb = FreeCdga(gens)
    rels = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            rels.append(amb[f"a{i}"] * amb[f"a{j}"])
    for i in range(2, r + 1):
        rels.append(amb[f"a{i}"] ** n - amb["a1"] ** n)
    ring = RingPresentation(gens, rels, name=name or f"Pi({n},{r})",
                            fundamental_degree=2 * n, duality=True)
    ring.fundamental_monomial = next(iter((amb["a1"] ** n).terms))
    return ring


@dataclass
class Decision:
    family: str
    n: int
    r: int
    embeddable: bool | None
    boundary: int | None
    witness: EmbeddingWitness | None = None
    refutation: object = None
    nullspace_dim: int | None = None


def _subsets_containing_first(n, r, total, first):
    """First r size-n subsets of {first..first+total-1} containing ``first``,
    in lexicographic order."""
    rest = range(first + 1, first + total)
    out = []
    for tail in itertools.combinations(rest, n - 1):
        out.append((first,) + tail)
        if len(out) == r:
            break
    return out


def decide_omega(n, r) -> Decision:
    """Embeddability of the #r(S^n x S^n) ring in an exterior algebra.

    Embeds into Lambda* R^(2n) for r <= C(2n, n)/2 (monomial witness on
    complementary index sets); for larger r the 2r independent degree-n
    classes outrun dim Lambda^n R^(2n), and the internal Poincare duality
    lets any embedding be restricted to a 2n-dimensional subspace, so none
    exists.
    """
    if n < 1 or r < 1:
        raise ValueError("n and r must be positive")
    bound = comb(2 * n, n) // 2
    ring = omega_ring(n, r)
    if r > bound:
        cert = DimensionCountRefutation(
            f"2r = {2 * r} independent degree-{n} classes exceed "
            f"dim Lambda^{n} R^{2 * n} = {comb(2 * n, n)}",
            2 * r, comb(2 * n, n))
        return Decision("omega", n, r, False, bound, refutation=cert)
    ext = exterior_algebra(2 * n)
    total = range(1, 2 * n + 1)
    images = {}
    for i, subset in enumerate(_subsets_containing_first(n, r, 2 * n, 1), start=1):
        comp = [x for x in total if x not in subset]
        sign = complement_sign(ext, subset, total)
        images[f"a{i}"] = subset_monomial(ext, subset)
        images[f"b{i}"] = sign * subset_monomial(ext, comp)
    witness = EmbeddingWitness(ring, ext, images)
    report = verify_witness(ring, witness)
    if not report.passed:
        raise AssertionError(f"omega witness failed verification: {report.message}")
    return Decision("omega", n, r, True, bound, witness=witness)


def decide_sigma(n, r) -> Decision:
    """Embeddability of the r-generator equal-squares ring, n even.

    Witness for r <= C(2n, n)/2: one complementary pair per generator,
    a_i -> dx_I + s_I dx_(I^c) with the sign chosen so every square is
    2 * volume.  Beyond that bound the images would give an identity-matrix
    minor of rank r inside a form of inertia (C/2, C/2), which is impossible.
    """
    if n % 2 == 1 or n < 2:
        raise ValueError("sigma decision needs even n >= 2")
    bound = comb(2 * n, n) // 2
    ring = sigma_ring(n, r)
    if r > bound:
        sig = wedge_pairing_signature(n)
        cert = InertiaRefutation(
            f"{r} pairwise-orthogonal equal-square classes need an I_{r} "
            f"minor, but the wedge pairing has inertia "
            f"({sig.positive}, {sig.negative})",
            sig.positive, sig.negative, r)
        return Decision("sigma", n, r, False, bound, refutation=cert)
    ext = exterior_algebra(2 * n)
    total = range(1, 2 * n + 1)
    images = {}
    for i, subset in enumerate(_subsets_containing_first(n, r, 2 * n, 1), start=1):
        comp = [x for x in total if x not in subset]
        sign = complement_sign(ext, subset, total)
        images[f"a{i}"] = subset_monomial(ext, subset) + sign * subset_monomial(ext, comp)
    witness = EmbeddingWitness(ring, ext, images)
    report = verify_witness(ring, witness)
    if not report.passed:
        raise AssertionError(f"sigma witness failed verification: {report.message}")
    return Decision("sigma", n, r, True, bound, witness=witness)


def decide_pi(n, r) -> Decision:
    """Equal n-th powers of degree-2 classes with vanishing products.

    Builds the linear system for a 2-form eta killed by the standard
    symplectic omega on R^(2n): the off-pair coefficients vanish and the
    pair coefficients u_i satisfy u_i + u_j = 0 for i != j.  For n >= 3
    that system coincides with the full condition omega ^ eta = 0 (asserted
    here by a direct kernel computation) and has nullspace zero, refuting
    r > 1: the second class would be a nonzero 2-form wedging omega to
    zero.  For n = 2 the reduced system leaves the one-dimensional line
    dx1dx2 - dx3dx4 and the test is reported as inconclusive.
    """
    if n < 2:
        raise ValueError("pi decision needs n >= 2")
    if r < 1:
        raise ValueError("r must be positive")
    pairs = list(itertools.combinations(range(1, 2 * n + 1), 2))
    sympl = {(2 * i + 1, 2 * i + 2) for i in range(n)}
    rows = []
    for idx, (k, l) in enumerate(pairs):
        if (k, l) not in sympl:
            row = [_ZERO] * len(pairs)
            row[idx] = _ONE
            rows.append(row)
    diag = [i for i, p in enumerate(pairs) if p in sympl]
    for a in range(len(diag)):
        for b in range(a + 1, len(diag)):
            row = [_ZERO] * len(pairs)
            row[diag[a]] = _ONE
            row[diag[b]] = _ONE
            rows.append(row)
    dim = len(pairs) - linalg.rank(rows)
    if n >= 3:
        ext = exterior_algebra(2 * n)
        omega = symplectic_form(ext, n)
        four = ext.basis(4)
        pos = {k: i for i, k in enumerate(four)}
        cols = []
        for (i, j) in pairs:
            prod = omega * subset_monomial(ext, [i, j])
            col = [_ZERO] * len(four)
            for k, c in prod.terms.items():
                col[pos[k]] = c
            cols.append(col)
        wedge_dim = len(linalg.kernel_of_columns(cols, len(four)))
        if wedge_dim != dim:
            raise AssertionError("reduced system disagrees with omega ^ eta = 0")
    cert = LinearSystemRefutation(
        f"coefficient system for omega ^ eta = 0 over Lambda^2 R^{2 * n}: "
        f"{len(pairs)} unknowns, nullspace dimension {dim}", len(pairs), dim)
    if n >= 3 and r > 1:
        if dim != 0:
            raise AssertionError("nullspace unexpectedly nonzero for n >= 3")
        return Decision("pi", n, r, False, 1, refutation=cert, nullspace_dim=dim)
    return Decision("pi", n, r, None, 1, refutation=cert, nullspace_dim=dim)


# ---------------------------------------------------------------------------
# connected sums


class ConnectedSumRing(RingPresentation):
    """Presentation of a connected sum with identified fundamental classes.

    Atoms are ("sphere_product", n, m) or ("projective", gen_degree, power);
    orientations are +-1 per atom and a reversed atom's top class enters with
    coefficient -1.  Duality holds blockwise by construction (cross products
    vanish by relation, each atom's internal pairing is +-1-nonsingular);
    for small presentations the generic determinant check is run as well.
    """

    def __init__(self, atoms, orientations=None, *, name=None):
        atoms = [tuple(a) for a in atoms]
        if not atoms:
            raise ValueError("a connected sum needs at least one summand")
        if orientations is None:
            orientations = [1] * len(atoms)
        orientations = [1 if o >= 0 else -1 for o in orientations]
        if len(orientations) != len(atoms):
            raise ValueError("one orientation per summand required")

        def fundamental(atom):
            kind = atom[0]
            if kind == "sphere_product":
                return atom[1] + atom[2]
            if kind == "projective":
                return atom[1] * atom[2]
            raise ValueError(f"unknown summand kind {kind!r}")

        degrees = {fundamental(a) for a in atoms}
        if len(degrees) != 1:
            raise ValueError(f"summands have mixed fundamental degrees {sorted(degrees)}")
        fund = degrees.pop()

        gens = []
        atom_gens = []
        for i, atom in enumerate(atoms, start=1):
            if atom[0] == "sphere_product":
                _k, n, m = atom
                if n <= m:
                    names = [(f"a{i}", n), (f"b{i}", m)]
                else:
                    names = [(f"a{i}", m), (f"b{i}", n)]
                gens.extend(names)
                atom_gens.append(tuple(nm for nm, _d in names))
            else:
                _k, d, _p = atom
                gens.append((f"x{i}", d))
                atom_gens.append((f"x{i}",))
        amb = FreeCdga(gens)

        def top_element(i):
            atom = atoms[i - 1]
            if atom[0] == "sphere_product":
                ga, gb = atom_gens[i - 1]
                return amb[ga] * amb[gb]
            (g,) = atom_gens[i - 1]
            return amb[g] ** atom[2]

        rels = []
        for i in range(1, len(atoms) + 1):
            atom = atoms[i - 1]
            if atom[0] == "sphere_product":
                ga, gb = atom_gens[i - 1]
                for e in (amb[ga] ** 2, amb[gb] ** 2):
                    if not e.is_zero():
                        rels.append(e)
            else:
                (g,) = atom_gens[i - 1]
                rels.append(amb[g] ** (atom[2] + 1))
        for i in range(1, len(atoms) + 1):
            for j in range(i + 1, len(atoms) + 1):
                for gi in atom_gens[i - 1]:
                    for gj in atom_gens[j - 1]:
                        e = amb[gi] * amb[gj]
                        if not e.is_zero():
                            rels.append(e)
        mu1 = orientations[0] * top_element(1)
        for i in range(2, len(atoms) + 1):
            rels.append(orientations[i - 1] * top_element(i) - mu1)

        super().__init__(gens, rels,
                         name=name or "#".join(_atom_label(a, o)
                                               for a, o in zip(atoms, orientations)),
                         fundamental_degree=fund, duality=True)
        self.atoms = tuple(atoms)
        self.orientations = tuple(orientations)
        self.atom_generators = tuple(atom_gens)
        mu_terms = (orientations[0] * top_element(1)).terms
        ((mu_key, mu_coeff),) = mu_terms.items()
        self.fundamental_monomial = mu_key
        self.fundamental_monomial_sign = mu_coeff
        if len(self.ambient.basis(fund)) <= 200:
            self.verify_duality()


def _atom_label(atom, orientation):
    if atom[0] == "sphere_product":
        base = f"S{atom[1]}xS{atom[2]}"
    else:
        d, p = atom[1], atom[2]
        base = {(2, 2): "CP2", (4, 2): "HP2", (8, 2): "OP2"}.get((d, p), f"P({d},{p})")
        if atom[0] == "projective" and d == 2 and p > 2:
            base = f"CP{p}"
    return f"rev({base})" if orientation < 0 else base


def connected_sum_ring(atoms, orientations=None, *, name=None) -> ConnectedSumRing:
    return ConnectedSumRing(atoms, orientations, name=name)


# ---------------------------------------------------------------------------
# intersection-complete families


@dataclass(frozen=True)
class SetFamily:
    """Family of subsets of the ground set {0, ..., ground-1}."""

    ground: int
    members: tuple

    def __post_init__(self):
        seen = set()
        full = frozenset(range(self.ground))
        norm = []
        for m in self.members:
            fs = frozenset(m)
            if not fs or fs == full:
                raise ValueError("members must be nonempty proper subsets")
            if not fs <= full:
                raise ValueError(f"member {sorted(fs)} leaves the ground set")
            if fs in seen:
                raise ValueError(f"duplicate member {sorted(fs)}")
            seen.add(fs)
            norm.append(fs)
        object.__setattr__(self, "members", tuple(norm))

    def complement(self, member):
        return frozenset(range(self.ground)) - member


def intersection_complete(family: SetFamily):
    """All four intersections of I or I^c with J or J^c are nonempty,
    for every pair of distinct members.  Returns (ok, violation) where the
    violation names the pair and the empty quadrant."""
    full = frozenset(range(family.ground))
    for I, J in itertools.combinations(family.members, 2):
        for (left, lname) in ((I, "I"), (full - I, "I^c")):
            for (right, rname) in ((J, "J"), (full - J, "J^c")):
                if not (left & right):
                    return False, (sorted(I), sorted(J), f"{lname} * {rname}")
    return True, None


@dataclass
class FamilyForms:
    family: SetFamily
    ring: ConnectedSumRing
    witness: EmbeddingWitness
    caveat: str | None


def family_local_forms(family: SetFamily) -> FamilyForms:
    """Coordinate-form witness for the connected sum indexed by the family.

    Member I contributes the sphere-product atom (|I|, ground - |I|) and its
    generators map to dx_I and (sign-corrected) dx_(I^c); intersection
    completeness makes every non-complementary product vanish on a shared
    coordinate.  Families with singleton members or complements produce
    circle factors; the witness is still emitted, with a recorded caveat.
    """
    ok, violation = intersection_complete(family)
    if not ok:
        I, J, quadrant = violation
        raise ValueError(f"family is not intersection-complete: members {I} "
                         f"and {J} have empty {quadrant}")
    k1 = family.ground
    ext = exterior_algebra(k1, first_index=0)
    total = range(0, k1)
    atoms = []
    images = {}
    caveat = None
    for i, member in enumerate(family.members, start=1):
        size = len(member)
        atoms.append(("sphere_product", size, k1 - size))
        if min(size, k1 - size) == 1:
            caveat = ("some summands have circle factors; the ring witness "
                      "ignores the simple-connectivity hypothesis")
        comp = sorted(family.complement(member))
        sign = complement_sign(ext, sorted(member), total)
        first = subset_monomial(ext, sorted(member))
        second = sign * subset_monomial(ext, comp)
        if size <= k1 - size:
            images[f"a{i}"], images[f"b{i}"] = first, second
        else:
            images[f"a{i}"], images[f"b{i}"] = second, first
    ring = connected_sum_ring(atoms, name=f"X({family.ground};{len(atoms)})")
    witness = EmbeddingWitness(ring, ext, images, note=caveat)
    report = verify_witness(ring, witness)
    if not report.passed:
        raise AssertionError(f"family witness failed verification: {report.message}")
    return FamilyForms(family, ring, witness, caveat)


# ---------------------------------------------------------------------------
# descriptor grammar


@dataclass(frozen=True)
class Atom:
    kind: str          # sphere | sphere_product | projective
    params: tuple
    reversed: bool = False


@dataclass(frozen=True)
class CSum:
    parts: tuple       # ((count, Atom), ...)


@dataclass(frozen=True)
class Prod:
    parts: tuple


@dataclass(frozen=True)
class Wedge:
    parts: tuple


def _parse_atom(token: str) -> Atom:
    t = token.strip()
    if "x" in t:
        left, _, right = t.partition("x")
        la, ra = _parse_atom(left), _parse_atom(right)
        if la.kind != "sphere" or ra.kind != "sphere":
            raise ValueError(f"unsupported product atom {token!r}")
        return Atom("sphere_product", (la.params[0], ra.params[0]))
    for prefix, gd in (("CP", 2), ("HP", 4), ("OP", 8)):
        if t.startswith(prefix):
            power = int(t[len(prefix):])
            if power < 1:
                raise ValueError(f"bad projective space {token!r}")
            if prefix in ("HP", "OP") and power != 2:
                raise ValueError(f"only {prefix}2 is supported, got {token!r}")
            return Atom("projective", (gd, power))
    if t.startswith("S"):
        return Atom("sphere", (int(t[1:]),))
    raise ValueError(f"unsupported space descriptor {token!r}")


def parse_descriptor(text: str):
    """Parse the space grammar: atoms, rev(), csum(), prod(), wedge()."""
    s = text.strip()

    def split_args(body):
        args = []
        depth = 0
        cur = []
        for ch in body:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                args.append("".join(cur))
                cur = []
            else:
                cur.append(ch)
        if cur:
            args.append("".join(cur))
        return [a.strip() for a in args if a.strip()]

    for head, cls in (("csum", CSum), ("prod", Prod), ("wedge", Wedge)):
        if s.startswith(head + "(") and s.endswith(")"):
            body = s[len(head) + 1:-1]
            args = split_args(body)
            if not args:
                raise ValueError(f"{head}() needs at least one argument")
            if cls is CSum:
                parts = []
                for arg in args:
                    count = 1
                    if "*" in arg:
                        cnt, _, rest = arg.partition("*")
                        count = int(cnt.strip())
                        arg = rest.strip()
                    if count < 1:
                        raise ValueError("summand multiplicity must be positive")
                    parts.append((count, _parse_summand(arg)))
                return CSum(tuple(parts))
            return cls(tuple(parse_descriptor(a) for a in args))
    return _parse_summand(s)


def _parse_summand(text: str) -> Atom:
    t = text.strip()
    if t.startswith("rev(") and t.endswith(")"):
        inner = _parse_summand(t[4:-1])
        return Atom(inner.kind, inner.params, not inner.reversed)
    if t.startswith("(") and t.endswith(")"):
        return _parse_summand(t[1:-1])
    return _parse_atom(t)


# ---------------------------------------------------------------------------
# classification


SCALABLE = "Scalable"
NOT_SCALABLE = "NotScalable"
UNKNOWN = "Unknown"


@dataclass
class Classification:
    descriptor: str
    verdict: str
    reason: str
    witness: EmbeddingWitness | None = None
    refutation: object = None
    parts: list = field(default_factory=list)


def classify(descriptor) -> Classification:
    """Map a space descriptor to Scalable / NotScalable / Unknown.

    Positive verdicts carry verified witnesses; negative ones carry
    certificates valid in every exterior algebra, so they pass to products
    and wedges (where a summand or factor is a retract).  Gaps are reported
    as Unknown, never guessed.
    """
    node = parse_descriptor(descriptor) if isinstance(descriptor, str) else descriptor
    text = descriptor if isinstance(descriptor, str) else repr(descriptor)
    return _classify_node(node, text)


def _classify_node(node, text) -> Classification:
    if isinstance(node, Atom):
        return _classify_csum(CSum(((1, node),)), text)
    if isinstance(node, CSum):
        return _classify_csum(node, text)
    if isinstance(node, (Prod, Wedge)):
        op = "product" if isinstance(node, Prod) else "wedge"
        parts = [_classify_node(p, text) for p in node.parts]
        if all(p.verdict == SCALABLE for p in parts):
            return Classification(text, SCALABLE,
                                  f"{op} of scalable factors (closure under "
                                  f"products and wedges)", parts=parts)
        bad = next((p for p in parts if p.verdict == NOT_SCALABLE), None)
        if bad is not None:
            return Classification(text, NOT_SCALABLE,
                                  f"a {op} factor is a retract and its ring "
                                  f"obstruction persists: {bad.reason}",
                                  refutation=bad.refutation, parts=parts)
        return Classification(text, UNKNOWN,
                              f"undecided {op} factor", parts=parts)
    raise ValueError(f"unsupported descriptor node {node!r}")


def _sphere_witness(k):
    ring = sphere_ring(k)
    ext = exterior_algebra(k)
    images = {"x": subset_monomial(ext, range(1, k + 1))}
    witness = EmbeddingWitness(ring, ext, images)
    report = verify_witness(ring, witness)
    assert report.passed
    return witness


def _projective_witness(gen_degree, power):
    ring = projective_ring(gen_degree, power)
    half = gen_degree // 2 if gen_degree % 2 == 0 else None
    if gen_degree == 2:
        ext = exterior_algebra(2 * power)
        img = symplectic_form(ext, power)
    else:
        ext = exterior_algebra(2 * gen_degree)
        img = (subset_monomial(ext, range(1, gen_degree + 1))
               + subset_monomial(ext, range(gen_degree + 1, 2 * gen_degree + 1)))
    witness = EmbeddingWitness(ring, ext, {"x": img})
    report = verify_witness(ring, witness)
    assert report.passed, report.message
    return witness


def _classify_csum(node: CSum, text) -> Classification:
    kinds = {(atom.kind, atom.params) for _c, atom in node.parts}
    total = sum(c for c, _a in node.parts)

    if {k for k, _p in kinds} == {"sphere"}:
        if total == 1 and len(kinds) == 1:
            (_, (k,)) = kinds.pop()
            return Classification(text, SCALABLE,
                                  f"the {k}-sphere is scalable (verified "
                                  f"volume-form witness)",
                                  witness=_sphere_witness(k))
        raise ValueError("connected sums of bare spheres are not supported")

    if {k for k, _p in kinds} == {"projective"}:
        params = {p for _k, p in kinds}
        if len(params) != 1:
            return Classification(text, UNKNOWN,
                                  "mixed connected sum (different projective "
                                  "atoms); no result applies")
        (gd, power) = params.pop()
        plus = sum(c for c, a in node.parts if not a.reversed)
        minus = total - plus
        if power == 2:
            threshold = comb(2 * gd, gd) // 2
            if total == 1:
                return Classification(text, SCALABLE,
                                      "projective plane (verified witness)",
                                      witness=_projective_witness(gd, power))
            if plus <= threshold and minus <= threshold:
                witness = _plane_sum_witness(gd, plus, minus)
                return Classification(text, SCALABLE,
                                      f"{plus}+{minus} summands within the "
                                      f"inertia bound {threshold} per sign",
                                      witness=witness)
            sig = wedge_pairing_signature(gd)
            bad = plus if plus > threshold else minus
            cert = InertiaRefutation(
                f"{bad} same-orientation summands exceed the wedge-pairing "
                f"inertia ({sig.positive}, {sig.negative})",
                sig.positive, sig.negative, bad)
            return Classification(text, NOT_SCALABLE,
                                  f"equal-square family of size {bad} cannot "
                                  f"embed (threshold {threshold})",
                                  refutation=cert)
        # complex projective space of complex dimension >= 3
        if total == 1:
            return Classification(text, SCALABLE,
                                  "projective space (verified symplectic-power "
                                  "witness)", witness=_projective_witness(gd, power))
        decision = decide_pi(power, total)
        return Classification(text, NOT_SCALABLE,
                              f"two degree-2 classes with equal {power}-th "
                              f"powers and zero product cannot coexist",
                              refutation=decision.refutation)

    if {k for k, _p in kinds} == {"sphere_product"}:
        dims = {tuple(sorted(p)) for _k, p in kinds}
        if len(dims) == 1:
            n, m = dims.pop()
            if n == m:
                decision = decide_omega(n, total)
                if decision.embeddable:
                    return Classification(text, SCALABLE,
                                          f"r = {total} within the bound "
                                          f"C({2*n},{n})/2 = {decision.boundary}",
                                          witness=decision.witness)
                return Classification(text, NOT_SCALABLE,
                                      f"r = {total} exceeds the bound "
                                      f"{decision.boundary}",
                                      refutation=decision.refutation)
            lower = comb(n + m - 1, n - 1)
            upper = comb(n + m, n)
            if total <= lower:
                members = [frozenset(s) for s in
                           _subsets_containing_first(n, total, n + m, 0)]
                forms = family_local_forms(SetFamily(n + m, tuple(members)))
                return Classification(text, SCALABLE,
                                      f"r = {total} within the "
                                      f"intersection-complete bound {lower}",
                                      witness=forms.witness)
            if total > upper:
                cert = DimensionCountRefutation(
                    f"rank H^{n} = {total} exceeds dim Lambda^{n} "
                    f"R^{n + m} = {upper}", total, upper)
                return Classification(text, NOT_SCALABLE,
                                      f"r = {total} violates the rank bound "
                                      f"{upper}", refutation=cert)
            return Classification(text, UNKNOWN,
                                  f"r = {total} falls in the open gap "
                                  f"({lower}, {upper}] for S{n}xS{m} sums")
        return Classification(text, UNKNOWN,
                              "mixed sphere-product dimensions; no uniform "
                              "threshold applies")

    return Classification(text, UNKNOWN,
                          "mixed connected sum; the local obstruction theory "
                          "says nothing about it")


def _plane_sum_witness(gd, plus, minus):
    """Witness for a sum of projective planes, plus/minus orientations."""
    ring = connected_sum_ring([("projective", gd, 2)] * (plus + minus),
                              [1] * plus + [-1] * minus)
    ext = exterior_algebra(2 * gd)
    total = range(1, 2 * gd + 1)
    subsets = _subsets_containing_first(gd, max(plus, minus), 2 * gd, 1)
    images = {}
    for i in range(1, plus + 1):
        subset = subsets[i - 1]
        comp = [x for x in total if x not in subset]
        sign = complement_sign(ext, subset, total)
        images[f"x{i}"] = (subset_monomial(ext, subset)
                           + sign * subset_monomial(ext, comp))
    for j in range(1, minus + 1):
        subset = subsets[j - 1]
        comp = [x for x in total if x not in subset]
        sign = complement_sign(ext, subset, total)
        images[f"x{plus + j}"] = (subset_monomial(ext, subset)
                                  - sign * subset_monomial(ext, comp))
    witness = EmbeddingWitness(ring, ext, images)
    report = verify_witness(ring, witness)
    if not report.passed:
        raise AssertionError(f"plane-sum witness failed: {report.message}")
    return witness
