"""Quasi-uniform spaces as filters of reflexive relations, at finite scale.

Entourage filters on a finite carrier are principal: the up-closure of
the intersection of the base.  Filters of subsets are principal too, so
filter pairs are represented by their two minimum sets and all the
Cauchy machinery becomes exact set arithmetic.  The bridge to modules
works with filters of relations between the carrier and the point,
again by their minima, with composition and reverse-inclusion order.
"""

from __future__ import annotations


def rel_compose(r, s):
    """r then s: pairs (x,z) with some y, (x,y) in r and (y,z) in s."""
    by_src = {}
    for (y, z) in s:
        by_src.setdefault(y, []).append(z)
    return frozenset((x, z) for (x, y) in r for z in by_src.get(y, ()))


def rel_image(r, pts):
    return frozenset(z for (y, z) in r if y in pts)


def rel_preimage(r, pts):
    return frozenset(y for (y, z) in r if z in pts)


class QuasiUniformity:
    """Carrier size and a base of relations; entourages are derived."""

    def __init__(self, n, base):
        self.n = n
        self.base = [frozenset(r) for r in base]
        self.w = frozenset.intersection(*self.base) if self.base else None

    def __repr__(self):
        return f"QuasiUniformity(n={self.n}, base={len(self.base)})"

    def entourages(self):
        """All relations containing the base intersection, canonical order."""
        assert self.w is not None
        allpairs = [(x, y) for x in range(self.n) for y in range(self.n)]
        rest = [p for p in allpairs if p not in self.w]
        out = []
        for mask in range(1 << len(rest)):
            extra = {rest[i] for i in range(len(rest)) if mask & (1 << i)}
            out.append(self.w | extra)
        return sorted(out, key=lambda r: sorted(r))

    def nbhd_left(self, x0):
        """Points reaching x0 through every entourage."""
        return frozenset(x for x in range(self.n) if (x, x0) in self.w)

    def nbhd_right(self, x0):
        return frozenset(y for y in range(self.n) if (x0, y) in self.w)


def validate_quniformity(u):
    """Reflexivity of every base relation and square roots for intersections."""
    if not u.base:
        return {"ok": False, "law": "empty-base", "witness": None}
    for i, r in enumerate(u.base):
        for x in range(u.n):
            if (x, x) not in r:
                return {"ok": False, "law": "reflexivity", "witness": (i, x)}
    closure = [u.base[0]]
    for r in u.base[1:]:
        closure += [c & r for c in closure] + [r]
    closure = set(closure)
    for r in closure:
        if not any(rel_compose(v, v) <= r for v in closure):
            return {"ok": False, "law": "square-root", "witness": sorted(r)}
    return {"ok": True}


def check_uniform_continuity(f, u, v):
    """For each target base relation, some source base intersection works."""
    src_cands = [u.w]
    for b in v.base:
        ok = any(
            all((f[x], f[y]) in b for (x, y) in cand) for cand in src_cands + u.base
        )
        if not ok:
            return {"ok": False, "witness": sorted(b)}
    return {"ok": True}


def lax_algebra_bridge(u):
    """The entourage filter as a reflexive transitive filter-algebra.

    Verifies pointwise reflexivity of every entourage and a square root
    inside the family for each entourage, on the materialized family.
    """
    ents = u.entourages()
    for a in ents:
        for x in range(u.n):
            if (x, x) not in a:
                return {"ok": False, "law": "unit", "witness": (sorted(a), x)}
    for a in ents:
        if not any(rel_compose(b, b) <= a for b in ents):
            return {"ok": False, "law": "composition", "witness": sorted(a)}
    return {"ok": True, "entourage_count": len(ents)}


def check_lax_morphism(f, u, v):
    """f . a <= b . f for a witness a per b, phrased with relation composites."""
    graph = frozenset((x, f[x]) for x in range(u.n))
    for b in v.base + [v.w]:
        b_after_f = rel_compose(graph, b)
        ok = any(rel_compose(a, graph) <= b_after_f for a in u.base + [u.w])
        if not ok:
            return {"ok": False, "witness": sorted(b)}
    return {"ok": True}


class FilterPair:
    """Pair of principal subset filters with pairwise intersection."""

    def __init__(self, n, left_min, right_min):
        self.n = n
        self.left = frozenset(left_min)
        self.right = frozenset(right_min)
        if not self.left or not self.right:
            raise ValueError("improper filter in pair")
        if not self.left & self.right:
            raise ValueError("filter pair members must intersect")

    def key(self):
        return (tuple(sorted(self.left)), tuple(sorted(self.right)))

    def __eq__(self, other):
        return isinstance(other, FilterPair) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FilterPair({sorted(self.left)}, {sorted(self.right)})"


def is_cauchy(u, fp):
    """Some member rectangle fits inside every entourage."""
    return all((x, y) in u.w for x in fp.left for y in fp.right)


def converges_to(u, fp):
    """All points x0 with the pair inside the two neighbourhood filters."""
    out = []
    for x0 in range(u.n):
        if fp.left <= u.nbhd_left(x0) and fp.right <= u.nbhd_right(x0):
            out.append(x0)
    return out


def coarser_pairs(fp):
    """Every filter pair contained in this one (larger minima)."""
    n = fp.n
    rest_l = [x for x in range(n) if x not in fp.left]
    rest_r = [x for x in range(n) if x not in fp.right]
    for ml in range(1 << len(rest_l)):
        left = fp.left | {rest_l[i] for i in range(len(rest_l)) if ml & (1 << i)}
        for mr in range(1 << len(rest_r)):
            right = fp.right | {rest_r[i] for i in range(len(rest_r)) if mr & (1 << i)}
            if (left, right) != (fp.left, fp.right):
                yield FilterPair(n, left, right)


def is_minimal_cauchy(u, fp):
    if not is_cauchy(u, fp):
        return False
    return all(not is_cauchy(u, coarser) for coarser in coarser_pairs(fp))


def neighbourhood_pair(u, x0):
    return FilterPair(u.n, u.nbhd_left(x0), u.nbhd_right(x0))


def cauchy_machinery(u, fp):
    return {
        "is_cauchy": is_cauchy(u, fp),
        "converges_to": converges_to(u, fp),
        "is_minimal": is_minimal_cauchy(u, fp),
    }


def all_filter_pairs(n):
    subsets = []
    for mask in range(1, 1 << n):
        subsets.append(frozenset(x for x in range(n) if mask & (1 << x)))
    out = []
    for left in subsets:
        for right in subsets:
            if left & right:
                out.append(FilterPair(n, left, right))
    return out


def decide_cauchy_complete(u):
    """Both forms of completeness, computed independently and compared.

    (i) every Cauchy filter pair converges; (ii) every minimal Cauchy
    filter pair is a neighbourhood pair.
    """
    pairs = all_filter_pairs(u.n)
    all_converge = True
    cauchy_count = 0
    for fp in pairs:
        if is_cauchy(u, fp):
            cauchy_count += 1
            if not converges_to(u, fp):
                all_converge = False
    nbhd = {neighbourhood_pair(u, x0) for x0 in range(u.n)}
    minimal_are_nbhd = True
    for fp in pairs:
        if is_minimal_cauchy(u, fp) and fp not in nbhd:
            minimal_are_nbhd = False
    if all_converge != minimal_are_nbhd:
        raise AssertionError("the two completeness forms disagree; machinery bug")
    return {
        "complete": all_converge,
        "cauchy_pairs": cauchy_count,
        "minimal_are_neighbourhoods": minimal_are_nbhd,
    }


class RelFilterModule:
    """Module pair candidate: principal filters of relations to and from the point.

    phi_min is the minimum subset standing for the filter of relations
    from the point into the carrier, psi_min the one towards the point.
    """

    def __init__(self, u, phi_min, psi_min):
        self.u = u
        self.phi = frozenset(phi_min)
        self.psi = frozenset(psi_min)

    def key(self):
        return (tuple(sorted(self.psi)), tuple(sorted(self.phi)))

    def is_phi_bimodule(self):
        # composing with the structure filter keeps the minimum inside
        return rel_image(self.u.w, self.phi) <= self.phi

    def is_psi_bimodule(self):
        return rel_preimage(self.u.w, self.psi) <= self.psi

    def is_adjoint(self):
        unit = bool(self.phi & self.psi)
        counit = all((x, y) in self.u.w for x in self.psi for y in self.phi)
        return unit and counit

    def filter_pair(self):
        return FilterPair(self.u.n, self.psi, self.phi)


def adjoint_module_pairs(u):
    """All adjoint bimodule pairs from and to the point, canonically ordered."""
    out = []
    for phi_mask in range(1, 1 << u.n):
        phi = frozenset(x for x in range(u.n) if phi_mask & (1 << x))
        for psi_mask in range(1, 1 << u.n):
            psi = frozenset(x for x in range(u.n) if psi_mask & (1 << x))
            cand = RelFilterModule(u, phi, psi)
            if cand.is_phi_bimodule() and cand.is_psi_bimodule() and cand.is_adjoint():
                out.append(cand)
    out.sort(key=RelFilterModule.key)
    return out


def bimodule_filter_bridge(u):
    """Bijection between adjoint module pairs and minimal Cauchy filter pairs."""
    mods = adjoint_module_pairs(u)
    from_mods = {m.filter_pair() for m in mods}
    minimal = {fp for fp in all_filter_pairs(u.n) if is_minimal_cauchy(u, fp)}
    forward_ok = all(is_minimal_cauchy(u, m.filter_pair()) for m in mods)
    return {
        "forward": forward_ok,
        "bijection": from_mods == minimal,
        "module_pairs": len(mods),
        "minimal_cauchy_pairs": len(minimal),
    }


def point_induced_module(u, x0):
    """The pair cut out by the map picking x0: structure after and before it."""
    return RelFilterModule(u, u.nbhd_right(x0), u.nbhd_left(x0))


def decide_lawvere_q(u):
    """Point-representability of every adjoint module pair, with the bridge.

    Returns the module-side verdict, the Cauchy-side verdict computed
    independently, and their agreement.
    """
    mods = adjoint_module_pairs(u)
    induced = {point_induced_module(u, x0).key() for x0 in range(u.n)}
    lawvere = all(m.key() in induced for m in mods)
    cauchy = decide_cauchy_complete(u)["complete"]
    bridge = bimodule_filter_bridge(u)
    return {
        "lawvere": lawvere,
        "cauchy": cauchy,
        "agree": lawvere == cauchy,
        "bridge": bridge,
        "pair_count": len(mods),
    }


def all_quniformities(n):
    """Every quasi-uniformity generated from a base of reflexive relations."""
    diag = frozenset((x, x) for x in range(n))
    offdiag = [(x, y) for x in range(n) for y in range(n) if x != y]
    rels = []
    for mask in range(1 << len(offdiag)):
        extra = frozenset(offdiag[i] for i in range(len(offdiag)) if mask & (1 << i))
        rels.append(diag | extra)
    out = []
    seen = set()
    for r in range(1, 1 << len(rels)):
        base = [rels[i] for i in range(len(rels)) if r & (1 << i)]
        u = QuasiUniformity(n, base)
        if validate_quniformity(u)["ok"] and u.w not in seen:
            seen.add(u.w)
            out.append(u)
    return out


def discrete_quniformity(n):
    return QuasiUniformity(n, [frozenset((x, x) for x in range(n))])


def indiscrete_quniformity(n):
    return QuasiUniformity(n, [frozenset((x, y) for x in range(n) for y in range(n))])


def preorder_quniformity(p):
    pairs = frozenset(
        (x, y) for x in range(p.n) for y in range(p.n) if p.leq[x][y]
    )
    return QuasiUniformity(p.n, [pairs])


def curated_three_point():
    """Hand-picked three-point instances for the exhaustive appendix sweep."""
    diag = frozenset((x, x) for x in range(3))
    full = frozenset((x, y) for x in range(3) for y in range(3))
    chain = diag | {(0, 1), (1, 2), (0, 2)}
    vee = diag | {(0, 1), (0, 2)}
    sym01 = diag | {(0, 1), (1, 0)}
    single = diag | {(0, 1)}
    return [
        QuasiUniformity(3, [diag]),
        QuasiUniformity(3, [full]),
        QuasiUniformity(3, [chain]),
        QuasiUniformity(3, [vee]),
        QuasiUniformity(3, [sym01]),
        QuasiUniformity(3, [single]),
        QuasiUniformity(3, [single, diag | {(1, 2)}]),
        QuasiUniformity(3, [chain, diag | {(2, 1)}]),
        QuasiUniformity(3, [full, chain]),
    ]
