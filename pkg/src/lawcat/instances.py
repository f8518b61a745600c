"""Finite incarnations: orders, finite spaces, and the distance surrogate.

Finite topological spaces are stored as their specialization preorder
(x below y means x lies in the closure of y), so closed sets are the
down-sets.  Convergence of the principal ultrafilter at x to y reads as
y below x, which turns a space into a structure over the two-element
quantale under the ultrafilter monad and back, losslessly.

The distance-style analysis converts modules from the point into
level-set families over a truncated addition chain and replays the
closedness, irreducibility and representability conditions.
"""

from __future__ import annotations

import itertools

from .completeness import _is_phi_bimodule, decide_lawvere_complete
from .errors import GateUnavailable
from .laxext import LaxExtension
from .monad import builtin_monad
from .quantale import builtin
from .tvcat import TVCategory, check_tvfunctor, hom_xi_category, unit_tvcategory
from .vmatrix import VMatrix


class FinitePreorder:
    """Reflexive transitive relation on {0..n-1} as a boolean table."""

    def __init__(self, n, leq):
        self.n = n
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)

    def __eq__(self, other):
        return isinstance(other, FinitePreorder) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)

    def __repr__(self):
        return f"FinitePreorder({self.n})"

    def is_valid(self):
        ok_refl = all(self.leq[x][x] for x in range(self.n))
        ok_trans = all(
            not (self.leq[x][y] and self.leq[y][z]) or self.leq[x][z]
            for x in range(self.n)
            for y in range(self.n)
            for z in range(self.n)
        )
        return ok_refl and ok_trans

    @staticmethod
    def from_pairs(n, pairs):
        """Reflexive-transitive closure of generating pairs."""
        leq = [[x == y for y in range(n)] for x in range(n)]
        for (x, y) in pairs:
            leq[x][y] = True
        changed = True
        while changed:
            changed = False
            for x in range(n):
                for y in range(n):
                    if leq[x][y]:
                        for z in range(n):
                            if leq[y][z] and not leq[x][z]:
                                leq[x][z] = True
                                changed = True
        return FinitePreorder(n, leq)


def enumerate_preorders(n):
    """All preorders on n labeled points, by filtering the reflexive relations."""
    offdiag = [(x, y) for x in range(n) for y in range(n) if x != y]
    out = []
    for mask in range(1 << len(offdiag)):
        leq = [[x == y for y in range(n)] for x in range(n)]
        for i, (x, y) in enumerate(offdiag):
            if mask & (1 << i):
                leq[x][y] = True
        p = FinitePreorder(n, leq)
        if p.is_valid():
            out.append(p)
    return out


class FiniteSpace:
    """A finite space presented by its specialization preorder."""

    def __init__(self, specialization):
        self.order = specialization
        self.n = specialization.n

    def closed_sets(self):
        """Down-sets of the specialization order, as sorted tuples."""
        out = []
        for mask in range(1 << self.n):
            pts = [x for x in range(self.n) if mask & (1 << x)]
            down = all(
                not self.order.leq[y][x] or y in pts for x in pts for y in range(self.n)
            )
            if down:
                out.append(tuple(pts))
        return out

    def open_sets(self):
        full = set(range(self.n))
        return [tuple(sorted(full - set(c))) for c in self.closed_sets()]

    def closure(self, pts):
        return tuple(
            sorted(y for y in range(self.n) if any(self.order.leq[y][x] for x in pts))
        )


def space_from_preorder(p):
    return FiniteSpace(p)


def tvcategory_from_space(ext, space):
    """Convergence structure: the principal filter at x reaches y when y is below x."""
    n = space.n
    if ext.monad.size(n) != n:
        raise GateUnavailable("principal carriers", "space bridge needs TX = X")
    data = tuple(
        tuple(ext.q.unit if space.order.leq[y][x] else ext.q.bottom for y in range(n))
        for x in range(n)
    )
    return TVCategory(ext, n, VMatrix(ext.q, n, n, data), name="space")


def space_from_tvcategory(cat):
    # rows index the converging point, columns the limit: u below v iff v -> u
    n = cat.n
    k = cat.q.unit
    order = FinitePreorder(
        n, tuple(tuple(cat.a.data[v][u] == k for v in range(n)) for u in range(n))
    )
    return FiniteSpace(order)


def preorder_roundtrip(p):
    """Preorder -> space -> structure -> space -> preorder, with verdicts."""
    ultra = builtin_monad("ultra")
    ext = LaxExtension(ultra, builtin("2"))
    space = space_from_preorder(p)
    cat = tvcategory_from_space(ext, space)
    back = space_from_tvcategory(cat)
    id_ext = LaxExtension(builtin_monad("id"), builtin("2"))
    as_order_cat = TVCategory(id_ext, p.n, VMatrix(id_ext.q, p.n, p.n, cat.a.data))
    ultra_verdict = decide_lawvere_complete(cat)["complete"]
    order_verdict = decide_lawvere_complete(as_order_cat)["complete"]
    return {
        "roundtrip_identity": back.order == p,
        "ultra_complete": ultra_verdict,
        "order_complete": order_verdict,
        "verdicts_agree": ultra_verdict == order_verdict,
    }


def weakly_sober(space):
    """Irreducible closed sets and their generic points, plus the verdict.

    A nonempty closed set is irreducible when it is not the union of two
    proper closed subsets; a generic point is one whose closure is the
    whole set.  The space is weakly sober when every irreducible closed
    set has a generic point (not necessarily unique).
    """
    closed = space.closed_sets()
    closed_sets = [set(c) for c in closed]
    irreducible = []
    for c in closed:
        cs = set(c)
        if not cs:
            continue
        reducible = False
        for a in closed_sets:
            if reducible:
                break
            if a < cs:
                for b in closed_sets:
                    if b < cs and a | b == cs:
                        reducible = True
                        break
        if not reducible:
            irreducible.append(c)
    details = []
    sober = True
    for c in irreducible:
        generic = [x for x in c if set(space.closure((x,))) == set(c)]
        if not generic:
            sober = False
        details.append({"closed_set": c, "generic_points": tuple(generic)})
    return {"weakly_sober": sober, "irreducible": details, "closed_count": len(closed)}


def sober_vs_lawvere(space):
    """Both sides of the space-level equivalence, computed independently."""
    ext = LaxExtension(builtin_monad("ultra"), builtin("2"))
    cat = tvcategory_from_space(ext, space)
    sober = weakly_sober(space)["weakly_sober"]
    lawvere = decide_lawvere_complete(cat)["complete"]
    return {"weakly_sober": sober, "lawvere": lawvere, "agree": sober == lawvere}


def _num(q, idx):
    return q.numeric[idx]


def _num_le(a, b):
    if b is None:
        return True
    if a is None:
        return False
    return a <= b


class VariableSet:
    """Level-set family over a chain: one subset per chain element.

    Families are monotone in the numeric order with the infinite level
    equal to the whole carrier; on a finite chain this is exactly the
    image of the level-set encoding of maps into the chain (the
    intersection form of the constraint collapses at the top finite
    level, so monotonicity is the faithful finite reading).
    """

    def __init__(self, q, n, levels):
        self.q = q
        self.n = n
        self.levels = {v: frozenset(pts) for v, pts in levels.items()}
        for v in range(q.n):
            for u in range(q.n):
                if _num_le(_num(q, v), _num(q, u)) and not self.levels[v] <= self.levels[u]:
                    raise ValueError("family is not monotone")
        if self.levels[q.bottom] != frozenset(range(n)):
            raise ValueError("infinite level must be the whole carrier")

    def __eq__(self, other):
        return isinstance(other, VariableSet) and self.levels == other.levels

    def __repr__(self):
        return f"VariableSet({self.levels})"


def variable_set_from_row(q, n, row):
    """Level sets A_v = points whose value is numerically at most v."""
    levels = {
        v: [x for x in range(n) if _num_le(_num(q, row[x]), _num(q, v))]
        for v in range(q.n)
    }
    return VariableSet(q, n, levels)


def row_from_variable_set(vs):
    """Numerically least level containing each point."""
    q = vs.q
    order = sorted(range(q.n), key=lambda v: (q.numeric[v] is None, q.numeric[v]))
    row = []
    for x in range(vs.n):
        val = None
        for v in order:
            if x in vs.levels[v]:
                val = v
                break
        row.append(val)
    return tuple(row)


def point_distance(cat, pts, x):
    """Least structure value into x over principal filters on the subset."""
    vals = [_num(cat.q, cat.a.data[y][x]) for y in pts]
    finite = [v for v in vals if v is not None]
    if finite:
        return min(finite)
    return None


def is_closed_varset(cat, vs):
    """d(A_u, x) <= v forces x into the level at u + v, for all u, v, x."""
    q = cat.q
    for u in range(q.n):
        for v in range(q.n):
            uv = q.tens(u, v)
            for x in range(cat.n):
                d = point_distance(cat, vs.levels[u], x)
                if _num_le(d, _num(q, v)) and x not in vs.levels[uv]:
                    return False
    return True


def companion_varset(cat, vs):
    """The candidate right-adjoint family of a level-set family."""
    q = cat.q
    levels = {}
    for v in range(q.n):
        pts = []
        for y in range(cat.n):
            ok = True
            for u in range(q.n):
                uv = q.tens(u, v)
                for x in vs.levels[u]:
                    if not _num_le(_num(q, cat.a.data[y][x]), _num(q, uv)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                pts.append(y)
        levels[v] = pts
    return levels


def is_irreducible_varset(cat, vs, positive_only=False):
    """Each level meets its companion level.

    The infinite half-line quantifies this over strictly positive levels
    because the joint infimum may not be attained there; on a finite chain
    every infimum is a minimum, so the faithful reading includes level
    zero (positive_only reproduces the literal form, which is strictly
    weaker here and kept only for comparison).
    """
    q = cat.q
    comp = companion_varset(cat, vs)
    for u in range(q.n):
        if positive_only and _num(q, u) == 0:
            continue
        if not set(vs.levels[u]) & set(comp[u]):
            return False
    return True


def representable_varset(cat, vs):
    """Points whose structure row reproduces the family as distance balls."""
    q = cat.q
    reps = []
    for x in range(cat.n):
        if all(
            set(vs.levels[v])
            == {y for y in range(cat.n) if _num_le(_num(q, cat.a.data[x][y]), _num(q, v))}
            for v in range(q.n)
        ):
            reps.append(x)
    return reps


def approach_surrogate(cat):
    """Level-set analysis of one structure against the module machinery.

    For every row vector from the point: the module laws must agree with
    closedness of its family; existence of a right adjoint must agree
    with irreducibility; the point-induced families are exactly the
    distance profiles.  Returns the two completeness verdicts and the
    per-row agreement record.
    """
    ext = cat.ext
    q = cat.q
    if q.numeric is None:
        raise GateUnavailable("chain quantale", "level-set analysis needs numeric values")
    if ext.monad.size(cat.n) != cat.n or ext.monad.size(1) != 1:
        raise GateUnavailable("principal carriers", "analysis collapses filters to points")
    verdict = decide_lawvere_complete(cat)
    adjoint_phis = {pair.phi.data[0] for pair in verdict["pairs"]}
    pcat = unit_tvcategory(ext)
    vxi = hom_xi_category(ext, validate=False)

    psi_levels = {
        pair.phi.data[0]: variable_set_from_row(
            q, cat.n, tuple(r[0] for r in pair.psi.data)
        ).levels
        for pair in verdict["pairs"]
    }

    rows_checked = 0
    mismatches = []
    analysis_complete = True
    for row in itertools.product(range(q.n), repeat=cat.n):
        phi = VMatrix(q, 1, cat.n, (row,))
        bim = _is_phi_bimodule(cat, phi, pcat)
        functor = check_tvfunctor(row, cat, vxi)["ok"]
        vs = variable_set_from_row(q, cat.n, row)
        closed = is_closed_varset(cat, vs)
        if not (bim == functor == closed):
            mismatches.append({"row": row, "bimodule": bim, "functor": functor, "closed": closed})
        if bim:
            rows_checked += 1
            has_adjoint = row in adjoint_phis
            irr = is_irreducible_varset(cat, vs)
            if has_adjoint != irr:
                mismatches.append({"row": row, "has_adjoint": has_adjoint, "irreducible": irr})
            if has_adjoint:
                comp = {v: frozenset(pts) for v, pts in companion_varset(cat, vs).items()}
                if comp != psi_levels[row]:
                    mismatches.append({"row": row, "companion_mismatch": True})
            if closed and irr:
                reps = representable_varset(cat, vs)
                if not reps:
                    analysis_complete = False
    agree = not mismatches
    return {
        "rows_with_modules": rows_checked,
        "mismatches": mismatches,
        "analysis_complete": analysis_complete,
        "lawvere_complete": verdict["complete"],
        "equivalence": agree and analysis_complete == verdict["complete"],
    }
