"""Named verification batteries behind the verify-paper command.

Each battery re-derives its expected values from an independent route
(hand-expanded identities, series inversions, exhaustive enumeration) and
checks the library against them with exact arithmetic.  The acceptance test
suite runs the same batteries with per-criterion time budgets.

The batteries call library entry points through their modules, so a test
harness can inject a fault (for example a sign flip in an integration
operator) and watch the corresponding battery fail by name.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import comb

from . import fileformat
from . import homotopy as homotopy_mod
from . import linalg
from . import models as models_mod
from . import scalability as scal_mod
from .cohomology import DegreeCohomology
from .cohomology import cohomology as cohomology_of
from .cdga import DgaMorphism, Element, FreeCdga, TruncatedCdga
from .presentations import (RingPresentation, projective_ring, sphere_ring,
                            wedge_of_spheres_ring)

_ZERO = Fraction(0)


@dataclass
class CheckResult:
    name: str
    criterion: int
    passed: bool
    detail: str
    seconds: float


def _data_text(filename):
    return resources.files("rht").joinpath("data").joinpath(filename).read_text()


def load_fixture(filename):
    """Parse one of the packaged presentation files."""
    return fileformat.loads(_data_text(filename))


def fixture_algebras():
    """The standing zoo of exact fixture algebras used by the law batteries."""
    mixed = FreeCdga.define(
        [("x", 2), ("u", 3), ("w", 4), ("v", 7)],
        d=lambda A: {"u": A["x"] ** 2, "v": A["w"] ** 2 - A["x"] ** 4},
        name="mixed_even_odd")
    return [
        load_fixture("s2_model.cdga"),
        load_fixture("cp2_model.cdga"),
        load_fixture("wedge335_model.cdga"),
        scal_mod.exterior_algebra(4),
        mixed,
    ]


def random_homogeneous(alg, rng, degrees, max_terms=3):
    for _ in range(8):
        deg = rng.choice(degrees)
        basis = alg.basis(deg)
        if basis:
            terms = {}
            for _ in range(rng.randint(1, max_terms)):
                mon = basis[rng.randrange(len(basis))]
                terms[mon] = terms.get(mon, 0) + Fraction(rng.randint(-4, 4))
            e = alg.element(terms)
            if e:
                return e
    return alg.unit()


def free_lie_generator_counts(loop_degrees, top):
    """Generator counts of a wedge-of-spheres model, by series inversion.

    The loop homology of a wedge of spheres is the tensor algebra on classes
    one degree below the spheres; inverting its Hilbert series through the
    Poincare-Birkhoff-Witt factorization gives the dimension of the free
    graded Lie algebra degree by degree, which is the model's generator
    count one degree up.  Only even loop degrees are supported (all factors
    polynomial), which covers odd-sphere wedges.
    """
    if any(d % 2 for d in loop_degrees):
        raise ValueError("only even loop degrees are supported")
    series = [0] * (top + 1)
    series[0] = 1
    for n in range(1, top + 1):
        series[n] = sum(series[n - d] for d in loop_degrees if d <= n)
    dims = {}
    for k in range(1, top + 1):
        m = series[k]
        dims[k] = m
        for _ in range(m):
            for n in range(top, k - 1, -1):
                series[n] -= series[n - k]
    return {k + 1: m for k, m in dims.items() if m}


# ---------------------------------------------------------------------------
# battery 1: algebra laws


def run_cdga_laws(iterations=1000, seed=0xC0F1):
    t0 = time.time()
    rng = random.Random(seed)
    algebras = fixture_algebras()
    degrees = list(range(1, 13))
    for alg in algebras:
        for _ in range(iterations):
            x = random_homogeneous(alg, rng, degrees)
            y = random_homogeneous(alg, rng, degrees)
            dx_deg = x.degree or 0
            dy_deg = y.degree or 0
            sign = -1 if (dx_deg * dy_deg) % 2 else 1
            if x * y != sign * (y * x):
                return CheckResult("cdga-laws", 1, False,
                                   f"graded commutativity fails in {alg.name}",
                                   time.time() - t0)
            lhs = (x * y).d()
            rhs = x.d() * y + (-1) ** dx_deg * (x * y.d())
            if lhs != rhs:
                return CheckResult("cdga-laws", 1, False,
                                   f"Leibniz rule fails in {alg.name}",
                                   time.time() - t0)
            if x.d().d():
                return CheckResult("cdga-laws", 1, False,
                                   f"d*d != 0 in {alg.name}", time.time() - t0)
    # monomial normalization: order independence against stepwise products
    for alg in algebras:
        if not isinstance(alg, FreeCdga):
            continue
        for _ in range(200):
            deg = rng.choice(degrees)
            basis = alg.basis(deg)
            if not basis:
                continue
            mon = basis[rng.randrange(len(basis))]
            factors = []
            for i, e in mon:
                factors.extend([(i, 1)] * e)
            rng.shuffle(factors)
            sign, key = alg.monomial(factors)
            if key != mon:
                return CheckResult("cdga-laws", 1, False,
                                   "normalization changed the monomial",
                                   time.time() - t0)
            stepwise = alg.unit()
            for i, _e in factors:
                stepwise = stepwise * alg[alg.gens[i].name]
            if stepwise != alg.element({mon: sign}):
                return CheckResult("cdga-laws", 1, False,
                                   "normalization sign disagrees with "
                                   "stepwise multiplication", time.time() - t0)
    detail = (f"{iterations} randomized Koszul/Leibniz/d2 checks on "
              f"{len(algebras)} algebras, plus 200 normalization round-trips each")
    return CheckResult("cdga-laws", 1, True, detail, time.time() - t0)


# ---------------------------------------------------------------------------
# battery 2: integration identities


def run_integration(iterations=1000, seed=0xC0F2):
    t0 = time.time()
    rng = random.Random(seed)
    algebras = [load_fixture("wedge335_model.cdga"), load_fixture("s2_model.cdga")]
    degrees = list(range(1, 10))
    count = 0
    for _ in range(iterations):
        alg = algebras[rng.randrange(len(algebras))]
        body = {}
        dt = {}
        for _ in range(rng.randint(1, 3)):
            e = random_homogeneous(alg, rng, degrees)
            i = rng.randint(0, 5)
            if rng.random() < 0.5:
                body[i] = body.get(i, alg.zero()) + e
            else:
                dt[i] = dt.get(i, alg.zero()) + e
        u = homotopy_mod.HomotopyElement(alg, body, dt)
        lhs = homotopy_mod.integrate_0_t(u).d() + homotopy_mod.integrate_0_t(u.d())
        rhs = u - homotopy_mod.HomotopyElement.constant(u.at(0))
        if lhs != rhs:
            return CheckResult("integration", 2, False,
                               "interval integration identity (0..t) fails",
                               time.time() - t0)
        lhs1 = homotopy_mod.integrate_0_1(u).d() + homotopy_mod.integrate_0_1(u.d())
        if lhs1 != u.at(1) - u.at(0):
            return CheckResult("integration", 2, False,
                               "endpoint integration identity (0..1) fails",
                               time.time() - t0)
        count += 1
    return CheckResult("integration", 2, True,
                       f"{count} randomized homotopy elements, both identities exact",
                       time.time() - t0)


# ---------------------------------------------------------------------------
# battery 3: the 2-sphere model


def run_s2_model():
    t0 = time.time()
    model = models_mod.minimal_model(sphere_ring(2), 7)
    degs = sorted(g.degree for g in model.algebra.gens)
    if degs != [2, 3]:
        return CheckResult("s2-model", 3, False,
                           f"expected generators in degrees [2, 3], got {degs}",
                           time.time() - t0)
    a = next(g.name for g in model.algebra.gens if g.degree == 2)
    b = next(g.name for g in model.algebra.gens if g.degree == 3)
    db = model.algebra.differential_of(b)
    a2 = model.algebra[a] ** 2
    if db != a2 and db != -a2:
        return CheckResult("s2-model", 3, False,
                           f"d({b}) = {db} is not +-{a}^2", time.time() - t0)
    depths = model.depths()
    if depths[a] != 0 or depths[b] != 1:
        return CheckResult("s2-model", 3, False,
                           f"depths {depths} differ from (0, 1)", time.time() - t0)
    report = models_mod.distortion_exponent(model, b)
    if report.exponent != 4 or report.sharpness != "sharp-if-scalable":
        return CheckResult("s2-model", 3, False,
                           f"distortion report {report} is not exponent 4",
                           time.time() - t0)
    return CheckResult("s2-model", 3, True,
                       f"generators ({a}:2, {b}:3), d{b} = {db}, depths (0,1), "
                       "exponent 4", time.time() - t0)


# ---------------------------------------------------------------------------
# battery 4: the wedge model through degree 13


EXPECTED_WEDGE_DIMS = {3: 2, 5: 2, 7: 4, 9: 7, 11: 16, 13: 30}


def build_wedge_model(cap=13):
    return models_mod.minimal_model(
        wedge_of_spheres_ring([3, 3, 5], name="wedge335"), cap)


def embed_table_in_model(table: FreeCdga, model) -> dict:
    """Solve a chain-map embedding of the fixture table into the model.

    Closed generators map to the model's closed generators of the same
    degree; each remaining image is an exact linear solve of
    d(psi(v)) = psi(dv).  Returns {table generator: model Element}.
    """
    alg = model.algebra
    closed3 = [g.name for g in alg.gens
               if g.degree == 3 and alg.differential_of(g.name).is_zero()]
    closed5 = [g.name for g in alg.gens
               if g.degree == 5 and alg.differential_of(g.name).is_zero()]
    if len(closed3) != 2 or len(closed5) != 1:
        raise AssertionError("wedge model lacks the expected closed generators")
    psi = {"a": alg[closed3[0]], "b": alg[closed3[1]], "c": alg[closed5[0]]}

    def solve(name):
        dv = table.differential_of(name)
        target = alg.zero()
        for mon, c in dv.terms.items():
            piece = alg.unit()
            for i, e in mon:
                piece = piece * psi[table.gens[i].name] ** e
            target = target + c * piece
        deg = table.degree_of(name)
        keys = list(alg.basis(deg))
        up = list(alg.basis(deg + 1))
        pos = {k: i for i, k in enumerate(up)}
        cols = []
        for k in keys:
            col = [_ZERO] * len(up)
            for k2, c in alg.d_key(k).items():
                col[pos[k2]] += c
            cols.append(col)
        vec = [_ZERO] * len(up)
        for k, c in target.terms.items():
            vec[pos[k]] += c
        sol = linalg.solve_columns(cols, len(up), vec)
        if sol is None:
            raise AssertionError(f"no model element solves d(psi({name}))")
        psi[name] = Element(alg, {k: c for k, c in zip(keys, sol) if c})

    for name in ("u_b", "u_c", "v_b", "w_b", "v_c", "w_c", "z"):
        solve(name)
    return psi


def run_wedge_table():
    t0 = time.time()
    table = load_fixture("wedge335_model.cdga")
    z = table["z"]
    if z.d().d():
        return CheckResult("wedge-table", 4, False,
                           "fixture table fails d*d = 0 on z", time.time() - t0)
    oracle = free_lie_generator_counts([2, 2, 4], 12)
    if oracle != EXPECTED_WEDGE_DIMS:
        return CheckResult("wedge-table", 4, False,
                           f"series oracle {oracle} disagrees with the frozen "
                           f"dimensions {EXPECTED_WEDGE_DIMS}", time.time() - t0)
    model = build_wedge_model(13)
    dims = {k: model.v_dim(k) for k in EXPECTED_WEDGE_DIMS}
    if dims != EXPECTED_WEDGE_DIMS:
        return CheckResult("wedge-table", 4, False,
                           f"V_k dimensions {dims} differ from the series "
                           f"oracle {EXPECTED_WEDGE_DIMS}", time.time() - t0)
    depths = model.depths()
    listed = {(3, 0): 2, (5, 0): 1, (5, 1): 1, (7, 1): 1, (7, 2): 1,
              (9, 2): 1, (9, 3): 1, (11, 3): 1, (13, 4): 1}
    counts = {}
    for g in model.algebra.gens:
        key = (g.degree, depths[g.name])
        counts[key] = counts.get(key, 0) + 1
    for key, minimum in listed.items():
        if counts.get(key, 0) < minimum:
            return CheckResult("wedge-table", 4, False,
                               f"no generator at degree/depth {key}",
                               time.time() - t0)
    psi = embed_table_in_model(table, model)
    alg = model.algebra
    dz_image = alg.zero()
    for mon, c in table.differential_of("z").terms.items():
        piece = alg.unit()
        for i, e in mon:
            piece = piece * psi[table.gens[i].name] ** e
        dz_image = dz_image + c * piece
    if psi["z"].d() != dz_image or dz_image.is_zero():
        return CheckResult("wedge-table", 4, False,
                           "table embedding does not satisfy d(psi z) = psi(dz)",
                           time.time() - t0)
    # certificate: psi(dz) is not the differential of anything decomposable,
    # so some degree-13 generator carries the bracket-detecting class
    keys = [m for m in alg.basis(13) if sum(e for _i, e in m) >= 2]
    up = list(alg.basis(14))
    pos = {k: i for i, k in enumerate(up)}
    cols = []
    for k in keys:
        col = [_ZERO] * len(up)
        for k2, c in alg.d_key(k).items():
            col[pos[k2]] += c
        cols.append(col)
    vec = [_ZERO] * len(up)
    for k, c in dz_image.terms.items():
        vec[pos[k]] += c
    if linalg.solve_columns(cols, len(up), vec) is not None:
        return CheckResult("wedge-table", 4, False,
                           "psi(dz) bounds a decomposable element; V_13 "
                           "generators are not needed", time.time() - t0)
    gen_part = {m: c for m, c in psi["z"].terms.items()
                if sum(e for _i, e in m) == 1}
    if not gen_part:
        return CheckResult("wedge-table", 4, False,
                           "psi(z) has no generator component", time.time() - t0)
    return CheckResult("wedge-table", 4, True,
                       f"fixture d2 = 0; V dims {dims} match the series oracle; "
                       "table embeds by exact solves and psi(z) needs V_13 "
                       "generators", time.time() - t0)


# ---------------------------------------------------------------------------
# battery 5: bracket pairings


def run_whitehead():
    t0 = time.time()
    table = load_fixture("wedge335_model.cdga")
    p1 = homotopy_mod.whitehead_pair(table, "u_b", homotopy_mod.parse_bracket("[a,b]"))
    p2 = homotopy_mod.whitehead_pair(table, "v_b",
                                     homotopy_mod.parse_bracket("[a,[a,b]]"))
    if abs(p1) != 1 or abs(p2) != 1:
        return CheckResult("whitehead", 5, False,
                           f"unit pairings came out as {p1}, {p2}",
                           time.time() - t0)
    expr = homotopy_mod.parse_bracket("[[a,c],[a,[a,b]]]")
    base = homotopy_mod.whitehead_pair(table, "z", expr)
    if base == 0:
        return CheckResult("whitehead", 5, False,
                           "base-level bracket pairing with z vanishes",
                           time.time() - t0)
    for n in range(1, 6):
        scaled = homotopy_mod.scale_leaves(
            expr, lambda leaf: Fraction(n) ** table.degree_of(leaf.name))
        value = homotopy_mod.whitehead_pair(table, "z", scaled)
        if value != Fraction(n) ** 17 * base:
            return CheckResult("whitehead", 5, False,
                               f"scaling by {n} gives {value}, not n^17 * base",
                               time.time() - t0)
    return CheckResult("whitehead", 5, True,
                       f"|<u_b,[a,b]>| = |<v_b,[a,[a,b]]>| = 1, "
                       f"<z,.> = {base} scaling as N^17 for N = 1..5",
                       time.time() - t0)


# ---------------------------------------------------------------------------
# battery 6: signatures and family decisions


def run_signatures():
    t0 = time.time()
    for n, expect in ((2, 3), (4, 35), (8, 6435)):
        sig = scal_mod.wedge_pairing_signature(n)
        if sig.as_tuple() != (expect, expect):
            return CheckResult("signatures", 6, False,
                               f"signature for n = {n} is {sig.as_tuple()}",
                               time.time() - t0)
    d3 = scal_mod.decide_sigma(2, 3)
    d4 = scal_mod.decide_sigma(2, 4)
    if not (d3.embeddable and scal_mod.verify_witness(d3.witness.ring,
                                                      d3.witness).passed):
        return CheckResult("signatures", 6, False,
                           "equal-squares witness at r = 3 failed",
                           time.time() - t0)
    if d4.embeddable or not d4.refutation.check():
        return CheckResult("signatures", 6, False,
                           "equal-squares family not refuted at r = 4",
                           time.time() - t0)
    for n in (1, 2, 3):
        bound = comb(2 * n, n) // 2
        good = scal_mod.decide_omega(n, bound)
        bad = scal_mod.decide_omega(n, bound + 1)
        if not good.embeddable or bad.embeddable:
            return CheckResult("signatures", 6, False,
                               f"sphere-product decision does not flip at "
                               f"{bound} for n = {n}", time.time() - t0)
        if not scal_mod.verify_witness(good.witness.ring, good.witness).passed:
            return CheckResult("signatures", 6, False,
                               f"witness round-trip failed at n = {n}",
                               time.time() - t0)
        if not bad.refutation.check():
            return CheckResult("signatures", 6, False,
                               f"refutation certificate fails at n = {n}",
                               time.time() - t0)
    expected_null = {2: 1, 3: 0, 4: 0, 5: 0, 6: 0}
    for n, dim in expected_null.items():
        d = scal_mod.decide_pi(n, 2)
        if d.nullspace_dim != dim:
            return CheckResult("signatures", 6, False,
                               f"nullspace dimension {d.nullspace_dim} for "
                               f"n = {n}, expected {dim}", time.time() - t0)
    return CheckResult("signatures", 6, True,
                       "signatures (3,3)/(35,35)/(6435,6435); decisions flip "
                       "at the half-binomial bounds; nullspace dims 1,0,0,0,0",
                       time.time() - t0)


# ---------------------------------------------------------------------------
# battery 7: cup-square invariants


def run_hopf():
    t0 = time.time()
    cp2 = load_fixture("cp2.ring")
    cp2.fundamental_degree = 4
    if homotopy_mod.hopf_invariant(cp2, "x") != 1:
        return CheckResult("hopf", 7, False, "projective-plane invariant is not 1",
                           time.time() - t0)
    s2s2 = load_fixture("s2s2.ring")
    s2s2.fundamental_degree = 4
    for g in ("w1", "w2"):
        if homotopy_mod.hopf_invariant(s2s2, g) != 0:
            return CheckResult("hopf", 7, False,
                               f"product-of-spheres invariant of {g} is not 0",
                               time.time() - t0)
    amb = FreeCdga([("w", 2), ("b", 4)])
    for k in (1, 2, 3):
        ring = RingPresentation(
            [("w", 2), ("b", 4)],
            [amb["w"] ** 2 - k * k * amb["b"], amb["w"] * amb["b"], amb["b"] ** 2],
            name=f"selfmap{k}", fundamental_degree=4)
        if homotopy_mod.hopf_invariant(ring, "w") != k * k:
            return CheckResult("hopf", 7, False,
                               f"degree-{k} self-map square is not {k * k}",
                               time.time() - t0)
    return CheckResult("hopf", 7, True,
                       "cup squares: 1 (projective plane), 0/0 (sphere "
                       "product), k^2 for k = 1, 2, 3", time.time() - t0)


# ---------------------------------------------------------------------------
# battery 8: Massey products and formality probes


def formal_model_fixtures():
    return [
        models_mod.bigraded_model(sphere_ring(2), 7),
        models_mod.bigraded_model(sphere_ring(3), 9),
        models_mod.bigraded_model(projective_ring(2, 2, name="CP2"), 10),
        models_mod.bigraded_model(wedge_of_spheres_ring([3, 3], name="w33"), 8),
    ]


def nonformal_cell_fixture():
    w33 = models_mod.minimal_model(wedge_of_spheres_ring([3, 3], name="w33"), 8)
    alg = w33.algebra
    a3 = [g.name for g in alg.gens if g.degree == 3]
    u5 = [g.name for g in alg.gens if g.degree == 5][0]
    target = alg[a3[0]] * alg[u5]
    vb = next(g.name for g in alg.gens if g.degree == 7 and
              alg.differential_of(g.name) in (target, -target))
    cell = models_mod.attach_cell_model(w33, {vb: 1})
    return w33, cell, a3


def run_massey():
    t0 = time.time()
    for model in formal_model_fixtures():
        alg = model.algebra
        reps = {}
        for k in range(2, model.cap + 1):
            reps[k] = cohomology_of(alg, k, model.cap).classes
        degs = [k for k in reps if reps[k]]
        for dx in degs:
            for dy in degs:
                for dz in degs:
                    if dx + dy + dz - 1 > model.cap:
                        continue
                    for cx in reps[dx]:
                        for cy in reps[dy]:
                            for cz in reps[dz]:
                                xy = cx.representative * cy.representative
                                yz = cy.representative * cz.representative
                                if (not DegreeCohomology(
                                        alg, dx + dy).is_exact(xy.terms)
                                        or not DegreeCohomology(
                                        alg, dy + dz).is_exact(yz.terms)):
                                    continue
                                res = homotopy_mod.massey_triple(
                                    alg, cx, cy, cz)
                                if not res.vanishes_mod_indeterminacy:
                                    return CheckResult(
                                        "massey", 8, False,
                                        f"nonvanishing triple product on the "
                                        f"formal model {alg.name}",
                                        time.time() - t0)
    _w33, cell, a3 = nonformal_cell_fixture()
    res = homotopy_mod.massey_triple(cell, cell[a3[0]], cell[a3[0]], cell[a3[1]])
    if res.vanishes_mod_indeterminacy or res.indeterminacy_dim != 0:
        return CheckResult("massey", 8, False,
                           "cell-attachment triple product did not certify "
                           "non-formality", time.time() - t0)
    flags = models_mod.u0_surjectivity(cell, 8)
    if flags[8] or not all(flags[k] for k in range(8)):
        return CheckResult("massey", 8, False,
                           f"closed-generator surjectivity flags wrong: {flags}",
                           time.time() - t0)
    return CheckResult("massey", 8, True,
                       "triple products vanish mod indeterminacy on all formal "
                       "fixtures; the 8-cell attachment gives a nonzero class "
                       "with zero indeterminacy and fails surjectivity in "
                       "degree 8", time.time() - t0)


# ---------------------------------------------------------------------------
# battery 9: classification


CLASSIFICATION_CASES = [
    ("S2", scal_mod.SCALABLE), ("S3", scal_mod.SCALABLE),
    ("CP2", scal_mod.SCALABLE), ("CP3", scal_mod.SCALABLE),
    ("csum(3*CP2)", scal_mod.SCALABLE),
    ("csum(3*(S2xS2))", scal_mod.SCALABLE),
    ("prod(S3,S5)", scal_mod.SCALABLE),
    ("wedge(S3,S3,S5)", scal_mod.SCALABLE),
    ("prod(CP2,csum(3*(S2xS2)))", scal_mod.SCALABLE),
    ("csum(4*CP2)", scal_mod.NOT_SCALABLE),
    ("csum(2*CP3)", scal_mod.NOT_SCALABLE),
    ("csum(4*(S2xS2))", scal_mod.NOT_SCALABLE),
    ("csum(36*HP2)", scal_mod.NOT_SCALABLE),
    ("csum(1*(S2xS2),1*CP2)", scal_mod.UNKNOWN),
]


def run_classification():
    t0 = time.time()
    for descriptor, expected in CLASSIFICATION_CASES:
        got = scal_mod.classify(descriptor)
        if got.verdict != expected:
            return CheckResult("classification", 9, False,
                               f"{descriptor} classified {got.verdict}, "
                               f"expected {expected}", time.time() - t0)
        if expected == scal_mod.SCALABLE:
            bad = _find_unverified_witness(got)
            if bad is not None:
                return CheckResult("classification", 9, False,
                                   f"{descriptor}: {bad}", time.time() - t0)
        if expected == scal_mod.NOT_SCALABLE:
            cert = got.refutation
            if cert is None or not cert.check():
                return CheckResult("classification", 9, False,
                                   f"{descriptor} lacks a checkable refutation",
                                   time.time() - t0)
    return CheckResult("classification", 9, True,
                       f"{len(CLASSIFICATION_CASES)} descriptors classified "
                       "with verified witnesses or checkable refutations",
                       time.time() - t0)


def _find_unverified_witness(classification):
    if classification.parts:
        for part in classification.parts:
            bad = _find_unverified_witness(part)
            if bad is not None:
                return bad
        return None
    witness = classification.witness
    if witness is None:
        return "scalable verdict without a witness"
    report = scal_mod.verify_witness(witness.ring, witness)
    if not report.passed:
        return f"witness failed verification: {report.message}"
    return None


# ---------------------------------------------------------------------------
# battery 10: obstruction round-trips


def obstruction_fixtures():
    """(label, obstruction) pairs; labels ending in '!' must not vanish."""
    out = []
    A = FreeCdga([("a", 2)], name="A")
    AV = FreeCdga.define([("a", 2), ("v", 3)], d=lambda X: {"v": X["a"] ** 2},
                         name="AV")
    B = FreeCdga.define([("a", 2), ("b", 3)], d=lambda X: {"b": X["a"] ** 2},
                        name="B")
    f = DgaMorphism(A, B, {"a": B["a"]})
    g_id = DgaMorphism(AV, B, {"a": B["a"], "v": B["b"]})
    out.append(("identity-h", homotopy_mod.obstruction_class(
        f, g_id, DgaMorphism.identity(B))))

    Cfree = FreeCdga.define([("e", 2), ("s", 3)], d=lambda X: {"s": X["e"] ** 2},
                            name="Cfree")
    C = TruncatedCdga(Cfree, 5, name="C")
    h = DgaMorphism(B, C, {"a": C["e"], "b": C["s"]})
    g = DgaMorphism(AV, C, {"a": C["e"], "v": C["s"]})
    out.append(("model-map", homotopy_mod.obstruction_class(f, g, h)))

    C2free = FreeCdga.define([("e", 2), ("s", 3), ("sp", 3)],
                             d=lambda X: {"s": X["e"] ** 2}, name="C2free")
    C2 = TruncatedCdga(C2free, 5, name="C2")
    h2 = DgaMorphism(B, C2, {"a": C2["e"], "b": C2["s"]})
    g2 = DgaMorphism(AV, C2, {"a": C2["e"], "v": C2["s"] + C2["sp"]})
    out.append(("shifted-target!", homotopy_mod.obstruction_class(f, g2, h2)))

    # nonconstant homotopy H(a) = e + d(q (x) t): the endpoints differ by the
    # exact form dq, so the homotopy is nullhomotopic rel its content and the
    # obstruction still vanishes, now exercising the integral terms
    C3free = FreeCdga.define(
        [("e", 2), ("p", 2), ("q", 1), ("s", 3)],
        d=lambda X: {"q": X["p"], "s": X["e"] ** 2}, name="C3free")
    C3 = TruncatedCdga(C3free, 5, name="C3")
    h3 = DgaMorphism(B, C3, {
        "a": C3["e"] + C3["p"],
        "b": C3["s"] + 2 * (C3["e"] * C3["q"]) + C3["q"] * C3["p"]})
    g3 = DgaMorphism(AV, C3, {"a": C3["e"], "v": C3["s"]})
    start3 = DgaMorphism(A, C3, {"a": C3["e"]})
    end3 = h3.compose(f)
    H3 = homotopy_mod.DgaHomotopy(
        start3, end3,
        {"a": homotopy_mod.HomotopyElement.constant(C3["e"])
              + homotopy_mod.HomotopyElement.t_power(C3["q"], 1).d()})
    out.append(("nonconstant-H", homotopy_mod.obstruction_class(f, g3, h3, H3)))
    return out


def run_obstruction():
    t0 = time.time()
    for label, ob in obstruction_fixtures():
        if label.endswith("!"):
            if ob.vanishes or ob.rank < 1:
                return CheckResult("obstruction", 10, False,
                                   f"{label}: expected a nonvanishing class",
                                   time.time() - t0)
            continue
        if not ob.vanishes:
            return CheckResult("obstruction", 10, False,
                               f"{label}: class unexpectedly nonzero",
                               time.time() - t0)
        try:
            f_ext, H_ext = homotopy_mod.extend_with_witness(ob)
        except ValueError as exc:
            return CheckResult("obstruction", 10, False,
                               f"{label}: extension rejected: {exc}",
                               time.time() - t0)
        for name in ob.v_names:
            if H_ext.images[name].at(0) != ob.g.images[name]:
                return CheckResult("obstruction", 10, False,
                                   f"{label}: extended homotopy misses g at t=0",
                                   time.time() - t0)
            if H_ext.images[name].at(1) != ob.h.apply(f_ext.images[name]):
                return CheckResult("obstruction", 10, False,
                                   f"{label}: extended homotopy misses h(f~) "
                                   "at t=1", time.time() - t0)
    return CheckResult("obstruction", 10, True,
                       "all vanishing fixtures extend with valid chain-map "
                       "homotopies; the shifted-target fixture stays obstructed",
                       time.time() - t0)


# ---------------------------------------------------------------------------
# registry


BATTERIES = {
    "cdga-laws": run_cdga_laws,
    "integration": run_integration,
    "s2-model": run_s2_model,
    "wedge-table": run_wedge_table,
    "whitehead": run_whitehead,
    "signatures": run_signatures,
    "hopf": run_hopf,
    "massey": run_massey,
    "classification": run_classification,
    "obstruction": run_obstruction,
}


def run_all(only=None):
    results = []
    for name, fn in BATTERIES.items():
        if only and name not in only:
            continue
        try:
            results.append(fn())
        except Exception as exc:  # a crash is a failure, not an abort
            results.append(CheckResult(name, 0, False,
                                       f"crashed: {type(exc).__name__}: {exc}",
                                       0.0))
    return results
