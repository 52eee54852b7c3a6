"""Minimal models: stagewise construction, depth filtration, cell attachments.

The construction adjoins, for each degree k from 2 up to the cap, generators
that kill the (k+1)st cohomology of the mapping cone of the current stage
map.  Every differential produced this way is decomposable because it lives
in the subalgebra generated below degree k+1, so minimality holds by
construction and is re-checked anyway.

The bigraded variant (for zero-differential ring targets) assigns stage tags
so that each generator's differential is pure: every monomial of d(v) has
stage sum exactly stage(v) - 1.  That purity is what makes the grading
endomorphism w -> t^(stage + degree) w an exact chain map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .cdga import DgaMorphism, Element, FreeCdga, Generator, GradedAlgebra, UNIT
from .cohomology import (DegreeCohomology, MappingCone, induced_map_on_cohomology,
                         is_quasi_isomorphism)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# model containers


@dataclass
class MinimalModel:
    """A free CDGA with decomposable differentials plus its comparison map.

    ``quasi_iso`` is None for hand-loaded models (for example fixture files);
    models produced by the constructors always carry one, verified up to cap.
    """

    algebra: FreeCdga
    cap: int
    quasi_iso: DgaMorphism | None = None
    target: object = None
    bigraded: bool = False
    trivial_warning: bool = False
    _depths: dict = field(default=None, repr=False)

    def __post_init__(self):
        for g in self.algebra.gens:
            dv = self.algebra.differential_of(g.name)
            for mon in dv.terms:
                if sum(e for _i, e in mon) < 2:
                    raise ValueError(
                        f"model is not minimal: d({g.name}) has the linear "
                        f"term {self.algebra.format_key(mon)}")

    def stages(self):
        """Generators grouped by degree (the spaces V_k)."""
        out = {}
        for g in self.algebra.gens:
            out.setdefault(g.degree, []).append(g.name)
        return out

    def generator_degree(self, name):
        return self.algebra.degree_of(name)

    def stage_of(self, name):
        return self.algebra.gens[self.algebra.index[name]].stage

    def depths(self):
        if self._depths is None:
            self._depths = compute_generator_depths(self.algebra)
        return self._depths

    def v_dim(self, degree):
        return sum(1 for g in self.algebra.gens if g.degree == degree)

    def vu_dim(self, degree, depth_bound):
        """dim (V_degree intersect U_depth_bound): generators of the degree
        whose depth is at most the bound."""
        d = self.depths()
        return sum(1 for g in self.algebra.gens
                   if g.degree == degree and d[g.name] <= depth_bound)


@dataclass(frozen=True)
class DistortionReport:
    """Predicted distortion exponent for the class dual to one generator."""

    generator: str
    degree: int
    depth: int
    exponent: int
    sharpness: str = "sharp-if-scalable"

    def __post_init__(self):
        if self.exponent != self.degree + self.depth:
            raise ValueError("exponent must equal degree + depth")


class DepthFiltration:
    """Per-generator depths and the induced per-degree subspaces U_i."""

    def __init__(self, algebra: FreeCdga, depths: dict):
        self.algebra = algebra
        self.depth = dict(depths)

    def monomial_depth(self, mon):
        return sum(e * self.depth[self.algebra.gens[i].name] for i, e in mon)

    def element_depth(self, element: Element):
        """Least i with the element in U_i; None for zero."""
        if element.is_zero():
            return None
        return max(self.monomial_depth(m) for m in element.terms)

    def u_basis(self, degree, i):
        return tuple(m for m in self.algebra.basis(degree)
                     if self.monomial_depth(m) <= i)

    def u_dim(self, degree, i):
        return len(self.u_basis(degree, i))

    def generator_depth(self, name):
        return self.depth[name]


def compute_generator_depths(algebra: FreeCdga) -> dict:
    """Least-fixed-point depth per generator.

    Depth 0 for closed generators; otherwise 1 + the maximum over monomials
    of d(v) of the sum of factor depths.  Sweeps until stable; a generator
    whose differential mentions unresolved generators stalls the sweep and is
    reported.
    """
    depths = {}
    pending = [g for g in algebra.gens]
    while pending:
        progressed = False
        still = []
        for g in pending:
            dv = algebra.differential_of(g.name)
            if dv.is_zero():
                depths[g.name] = 0
                progressed = True
                continue
            try:
                worst = max(sum(e * depths[algebra.gens[i].name] for i, e in mon)
                            for mon in dv.terms)
            except KeyError:
                still.append(g)
                continue
            depths[g.name] = worst + 1
            progressed = True
        if not progressed:
            names = ", ".join(g.name for g in still)
            raise ValueError(f"depth filtration does not stabilize on: {names}")
        pending = still
    return depths


def depth_filtration(model: MinimalModel) -> DepthFiltration:
    return DepthFiltration(model.algebra, model.depths())


def distortion_exponent(model: MinimalModel, generator: str) -> DistortionReport:
    """Exponent degree + depth; the growth-rate claim is an upper bound in
    general and sharp exactly when the target space is scalable, so the
    sharpness flag is always ``sharp-if-scalable``."""
    if generator not in model.algebra.index:
        raise ValueError(f"unknown generator {generator!r}")
    n = model.algebra.degree_of(generator)
    k = model.depths()[generator]
    return DistortionReport(generator, n, k, n + k)


# ---------------------------------------------------------------------------
# stagewise construction


def _check_target_connectivity(target, what):
    if DegreeCohomology(target, 0).rank != 1:
        raise ValueError(f"{what} must be connected (H^0 of rank 1)")
    if DegreeCohomology(target, 1).rank != 0:
        raise ValueError(f"{what} must be simply connected (H^1 = 0)")


def minimal_model(target, cap, *, name=None) -> MinimalModel:
    """Sullivan model of any finite-type graded differential algebra.

    ``target`` may be a free CDGA, a truncated CDGA, or a ring presentation
    viewed with zero differential.  Generators are named v<degree>_<index>.
    """
    if cap < 2:
        raise ValueError("cap must be at least 2")
    _check_target_connectivity(target, "minimal_model target")
    model = FreeCdga([], None, name=name or f"M({getattr(target, 'name', '?')})")
    images = {}
    rho = DgaMorphism(model, target, images, check=False)
    for k in range(2, cap + 1):
        cone = MappingCone(rho)
        dc = DegreeCohomology(cone, k + 1)
        if dc.rank == 0:
            continue
        new_gens = []
        new_diff = {}
        for i, vec in enumerate(dc.representatives()):
            terms = {key: c for key, c in zip(dc.keys, vec) if c}
            z, w = cone.pair_of(terms)
            gname = f"v{k}_{i}"
            new_gens.append(Generator(gname, k))
            new_diff[gname] = z.terms
            images[gname] = w
        model = model.extend(new_gens, new_diff)
        images = {g.name: images[g.name] for g in model.gens}
        rho = DgaMorphism(model, target, images, check=True)
    out = MinimalModel(model, cap, rho, target,
                       trivial_warning=not model.gens)
    if not is_quasi_isomorphism(rho, cap):
        raise AssertionError("stagewise construction failed its own "
                             "quasi-isomorphism audit")
    return out


def bigraded_model(ring, cap, *, name=None) -> MinimalModel:
    """Model of a formal cohomology ring, with stage tags on all generators.

    Stage-0 generators are closed and hit the ring; a stage-(s+1) generator's
    differential is a pure stage-s polynomial in earlier generators and its
    image is zero.  Generators are named v<degree>_<stage>_<index>.
    """
    if cap < 2:
        raise ValueError("cap must be at least 2")
    for k in range(0, cap + 2):
        for key in ring.basis(k):
            if ring.d_key(key):
                raise ValueError("bigraded_model needs a zero-differential ring")
        if k == 1 and ring.basis(1):
            raise ValueError("ring is not simply connected (nonzero degree 1)")
    _check_target_connectivity(ring, "bigraded_model ring")

    model = FreeCdga([], None, name=name or f"M({getattr(ring, 'name', '?')})")
    images = {}
    rho = DgaMorphism(model, ring, images, check=False)
    stage_of = {}

    def monomial_stage(mon):
        return sum(e * stage_of[model.gens[i].name] for i, e in mon)

    for k in range(2, cap + 1):
        # cokernel step: closed stage-0 generators hitting missing classes
        rows, _srank, trank = induced_map_on_cohomology(rho, k)
        red, pivots = linalg.rref(rows)
        hit = set(pivots)
        tgt_dc = DegreeCohomology(ring, k)
        reps = tgt_dc.representatives()
        new_gens = []
        new_diff = {}
        idx0 = 0
        for j in range(trank):
            if j in hit:
                continue
            gname = f"v{k}_0_{idx0}"
            idx0 += 1
            new_gens.append(Generator(gname, k, 0))
            new_diff[gname] = {}
            images[gname] = tgt_dc.element_of(reps[j])
            stage_of[gname] = 0
        if new_gens:
            model = model.extend(new_gens, new_diff)
            images = {g.name: images[g.name] for g in model.gens}
            rho = DgaMorphism(model, ring, images, check=True)

        # kernel step: per lower-degree component, kill closed elements of
        # M^(k+1) that map to zero in the ring
        comp = {}
        for mon in model.basis(k + 1):
            comp.setdefault(monomial_stage(mon), []).append(mon)
        up = list(model.basis(k + 2))
        up_pos = {m: i for i, m in enumerate(up)}
        ring_basis = list(ring.basis(k + 1))
        ring_pos = {m: i for i, m in enumerate(ring_basis)}
        down_by_stage = {}
        for mon in model.basis(k):
            down_by_stage.setdefault(monomial_stage(mon), []).append(mon)

        new_gens = []
        new_diff = {}
        for s in sorted(comp):
            keys = comp[s]
            pos = {m: i for i, m in enumerate(keys)}
            cols = []
            for mon in keys:
                col = [_ZERO] * (len(up) + len(ring_basis))
                for m2, c in model.d_key(mon).items():
                    col[up_pos[m2]] += c
                for m2, c in rho.apply_terms({mon: _ONE}).items():
                    col[len(up) + ring_pos[m2]] += c
                cols.append(col)
            kernel = linalg.kernel_of_columns(cols, len(up) + len(ring_basis))
            if not kernel:
                continue
            boundary_rows = []
            for mon in down_by_stage.get(s + 1, ()):
                dterms = model.d_key(mon)
                row = [_ZERO] * len(keys)
                for m2, c in dterms.items():
                    if m2 not in pos:
                        raise AssertionError("stage purity broken in boundaries")
                    row[pos[m2]] += c
                boundary_rows.append(row)
            bred, bpiv = linalg.rref(boundary_rows)
            reduced = [linalg.reduce_against(v, bred, bpiv) for v in kernel]
            rep_rows, _ = linalg.rref(reduced)
            idx = 0
            for vec in rep_rows:
                gname = f"v{k}_{s + 1}_{idx}"
                idx += 1
                new_gens.append(Generator(gname, k, s + 1))
                new_diff[gname] = {m: c for m, c in zip(keys, vec) if c}
                images[gname] = ring.element({})
                stage_of[gname] = s + 1
        if new_gens:
            model = model.extend(new_gens, new_diff)
            images = {g.name: images[g.name] for g in model.gens}
            rho = DgaMorphism(model, ring, images, check=True)

    out = MinimalModel(model, cap, rho, ring, bigraded=True,
                       trivial_warning=not model.gens)
    if not is_quasi_isomorphism(rho, cap):
        raise AssertionError("bigraded construction failed its own "
                             "quasi-isomorphism audit")
    depths = out.depths()
    for g in model.gens:
        if depths[g.name] != g.stage:
            raise AssertionError(
                f"stage tag of {g.name} ({g.stage}) disagrees with its "
                f"depth ({depths[g.name]})")
    return out


def grading_automorphism(model: MinimalModel, t) -> DgaMorphism:
    """Endomorphism w -> t^(stage + degree) w on a bigraded model.

    The chain-map check in the morphism constructor is exactly the purity of
    the bigrading; t = 1 gives the identity.
    """
    t = Fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    if not model.bigraded:
        raise ValueError("grading automorphism needs a bigraded model")
    alg = model.algebra
    images = {}
    for g in alg.gens:
        if g.stage is None:
            raise ValueError(f"generator {g.name} carries no stage tag")
        images[g.name] = (t ** (g.stage + g.degree)) * alg[g.name]
    return DgaMorphism(alg, alg, images, check=True)


# ---------------------------------------------------------------------------
# cell attachments


class CellAttachmentModel(GradedAlgebra):
    """Model of a complex with one extra cell attached.

    The underlying algebra is the base algebra plus a single class y in the
    cell degree with y*y = 0 and y*x = 0 for positive-degree x; the modified
    differential adds <v, attaching class> * y to d(v) on generators of
    degree one below the cell.
    """

    def __init__(self, base, pairing, cell_degree, cell_name="y", *,
                 base_model=None, name=None):
        self.base = base
        self.base_model = base_model
        self.cell_name = cell_name
        self.cell_degree = cell_degree
        self.pairing = {k: Fraction(v) for k, v in pairing.items()}
        self.name = name or f"{base.name}+cell{cell_degree}"
        if cell_name in base.index:
            raise ValueError(f"cell name {cell_name!r} collides with a generator")
        for gname in self.pairing:
            if base.degree_of(gname) != cell_degree - 1:
                raise ValueError(
                    f"attaching pairing must live on degree {cell_degree - 1} "
                    f"generators; {gname!r} has degree {base.degree_of(gname)}")
        for g in base.gens:
            dd = self.d_terms(self.d_terms({base.gen_key(g.name): _ONE}))
            if dd:
                raise ValueError(
                    f"inconsistent attaching pairing: d'(d'({g.name})) = "
                    f"{self.format_terms(dd)} != 0")

    def basis(self, degree):
        out = tuple(self.base.basis(degree))
        if degree == self.cell_degree:
            out = out + (self.cell_name,)
        return out

    def key_degree(self, key):
        if isinstance(key, str):
            return self.cell_degree
        return self.base.key_degree(key)

    def mul_keys(self, k1, k2):
        s1, s2 = isinstance(k1, str), isinstance(k2, str)
        if s1 and s2:
            return {}
        if s1 or s2:
            other = k2 if s1 else k1
            if other == UNIT:
                return {self.cell_name: _ONE}
            return {}
        return self.base.mul_keys(k1, k2)

    def d_key(self, key):
        if isinstance(key, str):
            return {}
        out = dict(self.base.d_key(key))
        if len(key) == 1 and key[0][1] == 1:
            gname = self.base.gens[key[0][0]].name
            c = self.pairing.get(gname)
            if c:
                out[self.cell_name] = out.get(self.cell_name, _ZERO) + c
        return out

    def format_key(self, key):
        if isinstance(key, str):
            return key
        return self.base.format_key(key)

    def key_sort_token(self, key):
        if isinstance(key, str):
            return (1, key)
        return (0, key)

    def __getitem__(self, name) -> Element:
        if name == self.cell_name:
            return Element(self, {self.cell_name: _ONE})
        return Element(self, {self.base.gen_key(name): _ONE})

    def lift(self, element: Element) -> Element:
        if element.alg is not self.base:
            raise ValueError("can only lift elements of the base algebra")
        return Element(self, dict(element.terms))

    def degree_of(self, name):
        if name == self.cell_name:
            return self.cell_degree
        return self.base.degree_of(name)

    @property
    def gens(self):
        return self.base.gens

    @property
    def index(self):
        return self.base.index

    def differential_of(self, name) -> Element:
        if name == self.cell_name:
            return self.zero()
        return Element(self, self.d_key(self.base.gen_key(name)))


def attach_cell_model(base_model, pairing, *, cell_name="y",
                      attaching_degree=None) -> CellAttachmentModel:
    """Non-minimal model of a cell attachment along a prescribed pairing.

    ``pairing`` maps generator names (all of the single attaching degree) to
    the rational pairing of that generator with the attaching class; the cell
    sits one degree higher.  A pairing that breaks d'd' = 0 is rejected with
    the offending generator named.
    """
    if isinstance(base_model, MinimalModel):
        base = base_model.algebra
        model = base_model
    else:
        base = base_model
        model = None
    degrees = {base.degree_of(g) for g in pairing}
    if attaching_degree is None:
        if len(degrees) != 1:
            raise ValueError("pairing must be supported on a single degree")
        attaching_degree = degrees.pop()
    elif degrees - {attaching_degree}:
        raise ValueError("pairing names generators outside the attaching degree")
    return CellAttachmentModel(base, pairing, attaching_degree + 1, cell_name,
                               base_model=model)


# ---------------------------------------------------------------------------
# formality probe


def u0_surjectivity(model_or_cell, cap) -> dict:
    """Per degree k <= cap: do products of depth-0 generators span H^k?

    A necessary condition for formality, not a formality decision.  Accepts a
    minimal model or a cell attachment built on one.
    """
    if isinstance(model_or_cell, CellAttachmentModel):
        algebra = model_or_cell
        base_alg = model_or_cell.base
        if model_or_cell.base_model is not None:
            depths = model_or_cell.base_model.depths()
        else:
            depths = compute_generator_depths(base_alg)
    elif isinstance(model_or_cell, MinimalModel):
        algebra = model_or_cell.algebra
        base_alg = algebra
        depths = model_or_cell.depths()
    else:
        algebra = model_or_cell
        base_alg = algebra
        depths = compute_generator_depths(algebra)
    u0 = {base_alg.index[name] for name, d in depths.items() if d == 0}
    out = {}
    for k in range(0, cap + 1):
        dc = DegreeCohomology(algebra, k)
        if dc.rank == 0:
            out[k] = True
            continue
        rows = []
        for mon in base_alg.basis(k):
            if all(i in u0 for i, _e in mon):
                rows.append(dc.class_coords({mon: _ONE}))
        out[k] = linalg.rank(rows) == dc.rank
    return out
