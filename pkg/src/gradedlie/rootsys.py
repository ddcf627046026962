"""Cartan matrices, bilinear forms, root systems, and Chevalley realizations.

Weights are plain tuples of rationals in the fundamental-weight basis
(Dynkin labels); roots carry their simple-root coordinates together with
their norm under the invariant form.  Conventions:

* ``A`` is the Cartan matrix, ``epsilon`` the symmetrizer making
  ``D^{-1} A`` symmetric where ``D = diag(epsilon)``;
* ``(alpha_i, alpha_j) = A_ij / epsilon_i`` and the coroot is
  ``alpha_i^vee = epsilon_i alpha_i``, so ``(alpha_i^vee, alpha_j) = A_ij``;
* a weight ``mu`` has root coordinates ``c = A^{-1} m`` for its label
  vector ``m``, and ``(mu, nu) = m^T A^{-T} D^{-1} n``.

The Chevalley realization normalizes ``[e_gamma, e_{-gamma}] = h_gamma``
with ``h_gamma = (2/(gamma,gamma)) phi^{-1}(gamma)``, and fixes signs by
a deterministic extraspecial-pair convention keyed to the (height, lex)
order on positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg import RatMatrix, dot, inverse, rank

__all__ = [
    "CartanData",
    "Root",
    "ChevalleyAlgebra",
    "validate_cartan",
    "gram_matrix",
    "enumerate_roots",
    "weyl_reflect",
    "highest_roots",
    "is_pseudo_minuscule",
    "pseudo_minuscule_failure",
    "weyl_dimension",
    "jk_partition",
    "chevalley_realization",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Root:
    """A root: simple-root coordinates plus norm data under the form."""

    coords: tuple[int, ...]
    labels: tuple[Fraction, ...]
    norm: Fraction

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def coscale(self) -> Fraction:
        """Factor s with alpha^vee = s * alpha, i.e. 2/(alpha,alpha)."""
        return 2 / self.norm

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.coords),
                    tuple(-l for l in self.labels), self.norm)


class CartanData:
    """The triple (Cartan matrix A, symmetrizer epsilon, labels lambda)."""

    def __init__(self, a: Sequence[Sequence[int]],
                 epsilon: Sequence | None = None,
                 lam: Sequence[int] | None = None):
        self.a = tuple(tuple(int(x) for x in row) for row in a)
        self.r = len(self.a)
        if any(len(row) != self.r for row in self.a):
            raise ValueError("Cartan matrix must be square")
        if epsilon is None:
            epsilon = [1] * self.r
        self.epsilon = tuple(Fraction(e) for e in epsilon)
        if lam is None:
            lam = [0] * self.r
        self.lam = tuple(int(x) for x in lam)
        if len(self.epsilon) != self.r or len(self.lam) != self.r:
            raise ValueError("epsilon/lambda length must match the rank")

    def __eq__(self, other) -> bool:
        return (isinstance(other, CartanData) and self.a == other.a
                and self.epsilon == other.epsilon and self.lam == other.lam)

    def __hash__(self) -> int:
        return hash((self.a, self.epsilon, self.lam))

    def __repr__(self) -> str:
        return "CartanData(r=%d, lambda=%s)" % (self.r, list(self.lam))

    # -- derived matrices ---------------------------------------------------

    @cached_property
    def a_mat(self) -> RatMatrix:
        return RatMatrix.from_rows(self.a)

    @cached_property
    def a_inv(self) -> RatMatrix:
        return inverse(self.a_mat)

    @cached_property
    def gram(self) -> RatMatrix:
        """(alpha_i, alpha_j) = (D^{-1} A)_ij."""
        ent = {}
        for i in range(self.r):
            for j in range(self.r):
                if self.a[i][j]:
                    ent[(i, j)] = Fraction(self.a[i][j]) / self.epsilon[i]
        return RatMatrix(self.r, self.r, ent)

    @cached_property
    def weight_form(self) -> RatMatrix:
        """Matrix of (mu, nu) on label vectors: A^{-T} D^{-1}."""
        dinv = RatMatrix(self.r, self.r,
                         {(i, i): 1 / self.epsilon[i] for i in range(self.r)})
        return self.a_inv.transpose() @ dinv

    # -- weight arithmetic ----------------------------------------------

    def fundamental(self, i: int) -> tuple[Fraction, ...]:
        return tuple(_ONE if j == i else _ZERO for j in range(self.r))

    def weight(self, labels: Sequence) -> tuple[Fraction, ...]:
        if len(labels) != self.r:
            raise ValueError("label vector has wrong length")
        return tuple(Fraction(x) for x in labels)

    @property
    def lam_weight(self) -> tuple[Fraction, ...]:
        return self.weight(self.lam)

    def bilinear(self, mu: Sequence, nu: Sequence) -> Fraction:
        return dot(self.weight_form.mul_vec(self.weight(nu)), self.weight(mu))

    def root_coords(self, mu: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of mu in the simple-root basis: A^{-1} m."""
        return self.a_inv.mul_vec(self.weight(mu))

    def labels_of_root(self, coords: Sequence) -> tuple[Fraction, ...]:
        """Label vector of sum c_i alpha_i: m = A c."""
        return self.a_mat.mul_vec([Fraction(c) for c in coords])

    def wedge(self, mu: Sequence) -> tuple[Fraction, ...]:
        """mu^wedge = sum (mu_i / epsilon_i) Lambda_i."""
        return tuple(Fraction(m) / e for m, e in zip(mu, self.epsilon))

    def vee(self, mu: Sequence) -> tuple[Fraction, ...]:
        """mu^veecheck = sum (epsilon_i mu_i) Lambda_i."""
        return tuple(Fraction(m) * e for m, e in zip(mu, self.epsilon))

    def is_dominant_integral(self, mu: Sequence) -> bool:
        return all(Fraction(m).denominator == 1 and m >= 0 for m in mu)

    def root_pairing(self, mu: Sequence, root: Root) -> Fraction:
        """(mu^veecheck, alpha) = sum_k c_k mu_k for a root alpha."""
        return sum((Fraction(m) * c for m, c in zip(mu, root.coords)), _ZERO)

    def coroot_pairing(self, root: Root, mu: Sequence) -> Fraction:
        """(alpha^vee, mu) = 2 (alpha, mu) / (alpha, alpha)."""
        pair = sum((Fraction(m) / e * c for m, e, c in
                    zip(mu, self.epsilon, root.coords)), _ZERO)
        return 2 * pair / root.norm

    # -- diagram structure ------------------------------------------------

    def components(self) -> list[tuple[int, ...]]:
        """Connected components of the Dynkin diagram, each sorted."""
        seen: set[int] = set()
        comps = []
        for start in range(self.r):
            if start in seen:
                continue
            stack, comp = [start], set()
            while stack:
                i = stack.pop()
                if i in comp:
                    continue
                comp.add(i)
                for j in range(self.r):
                    if j != i and self.a[i][j] and j not in comp:
                        stack.append(j)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return comps

    def restrict(self, nodes: Sequence[int]) -> CartanData:
        nodes = list(nodes)
        sub = [[self.a[i][j] for j in nodes] for i in nodes]
        return CartanData(sub, [self.epsilon[i] for i in nodes],
                          [self.lam[i] for i in nodes])


# -- validation ------------------------------------------------------------


def _det(m: RatMatrix) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    det = _ONE
    for c in range(m.cols):
        sel = -1
        for i in range(c, m.rows):
            if rows[i].get(c):
                sel = i
                break
        if sel < 0:
            return _ZERO
        if sel != c:
            rows[c], rows[sel] = rows[sel], rows[c]
            det = -det
        piv = rows[c][c]
        det *= piv
        for i in range(c + 1, m.rows):
            f = rows[i].get(c)
            if not f:
                continue
            for k, v in rows[c].items():
                if k < c:
                    continue
                s = rows[i].get(k, _ZERO) - f / piv * v
                if s:
                    rows[i][k] = s
                else:
                    rows[i].pop(k, None)
    return det


def _canonical_symmetrizer(a, nodes) -> list[Fraction] | None:
    """Positive d with d_i A_ij = d_j A_ji on the component, or None."""
    d = {nodes[0]: _ONE}
    queue = [nodes[0]]
    while queue:
        i = queue.pop()
        for j in nodes:
            if j == i or not a[i][j]:
                continue
            val = d[i] * a[i][j] / a[j][i]
            if j in d:
                if d[j] != val:
                    return None
            else:
                d[j] = val
                queue.append(j)
    for i in nodes:
        for j in nodes:
            if a[i][j] and d[i] * a[i][j] != d[j] * a[j][i]:
                return None
    return [d[i] for i in nodes]


def _component_type(a, nodes) -> str:
    """'finite' / 'affine' / 'indefinite' for one indecomposable block."""
    d = _canonical_symmetrizer(a, nodes)
    if d is None:
        return "indefinite"
    n = len(nodes)
    sym = RatMatrix(n, n, {(p, q): Fraction(a[nodes[p]][nodes[q]]) / d[p]
                           for p in range(n) for q in range(n)
                           if a[nodes[p]][nodes[q]]})
    minors = []
    for k in range(1, n + 1):
        minors.append(_det(RatMatrix(k, k, {(i, j): sym[i, j]
                                            for i in range(k)
                                            for j in range(k)
                                            if sym[i, j]})))
    if all(mk > 0 for mk in minors):
        return "finite"
    if minors[-1] == 0 and all(mk > 0 for mk in minors[:-1]):
        # indecomposable symmetrizable with positive leading minors up to
        # the last and singular overall: positive semidefinite corank 1
        return "affine"
    return "indefinite"


def _norm_ratios(a, nodes) -> dict[int, Fraction]:
    """Relative squared lengths within a component, normalized to min 1."""
    ratio = {nodes[0]: _ONE}
    queue = [nodes[0]]
    while queue:
        i = queue.pop()
        for j in nodes:
            if j != i and a[i][j] and j not in ratio:
                # (alpha_j, alpha_j)/(alpha_i, alpha_i) = A_ij / A_ji
                ratio[j] = ratio[i] * a[i][j] / a[j][i]
                queue.append(j)
    low = min(ratio.values())
    return {i: v / low for i, v in ratio.items()}


def _component_series(a, nodes) -> str | None:
    """Best-effort series name (A5, D4, E6, B3, C3, F4, G2) for finite type."""
    n = len(nodes)
    if n == 1:
        return "A1"
    deg = {i: sum(1 for j in nodes if j != i and a[i][j]) for i in nodes}
    bonds = [(i, j) for i in nodes for j in nodes
             if i < j and a[i][j] and a[i][j] * a[j][i] > 1]
    maxbond = max((a[i][j] * a[j][i] for i in nodes for j in nodes if i != j
                   and a[i][j]), default=1)
    if maxbond == 3:
        return "G2" if n == 2 else None
    if maxbond == 2:
        if len(bonds) != 1:
            return None
        i, j = bonds[0]
        if n == 2:
            return "B2"
        if n == 4 and deg[i] == 2 and deg[j] == 2 and max(deg.values()) == 2:
            return "F4"
        if max(deg.values()) > 2:
            return None
        ratio = _norm_ratios(a, nodes)
        short = [k for k in nodes if ratio[k] == 1]
        if len(short) == 1:
            return "B%d" % n
        if len(short) == n - 1:
            return "C%d" % n
        return None
    # simply laced
    branch = [i for i in nodes if deg[i] >= 3]
    if not branch:
        return "A%d" % n
    if len(branch) != 1 or deg[branch[0]] != 3:
        return None
    b = branch[0]
    arms = []
    for start in (j for j in nodes if j != b and a[b][j]):
        length, prev, cur = 1, b, start
        while True:
            nxt = [k for k in nodes if k not in (prev, cur) and a[cur][k]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return "D%d" % n
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    return None


def validate_cartan(data: CartanData) -> dict:
    """Report-style validation of all CartanData invariants.

    Returns {"valid": bool, "checks": [{"name", "passed", "detail"}...],
    "components": [{"nodes", "type", "series"}...]}.
    """
    checks = []

    def check(name, passed, detail=""):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})
        return passed

    a, r = data.a, data.r
    check("diagonal_two", all(a[i][i] == 2 for i in range(r)),
          "A_ii = 2 for all i")
    check("offdiag_nonpositive",
          all(a[i][j] <= 0 for i in range(r) for j in range(r) if i != j),
          "A_ij <= 0 for i != j")
    check("zero_symmetry",
          all((a[i][j] == 0) == (a[j][i] == 0)
              for i in range(r) for j in range(r)),
          "A_ij = 0 iff A_ji = 0")
    eps_ok = check("epsilon_nonzero", all(e != 0 for e in data.epsilon),
                   "symmetrizer entries must be nonzero")
    if eps_ok:
        sym = all(Fraction(a[i][j]) / data.epsilon[i]
                  == Fraction(a[j][i]) / data.epsilon[j]
                  for i in range(r) for j in range(r))
        check("symmetrizable", sym, "D^{-1} A is symmetric")
    else:
        check("symmetrizable", False, "epsilon has zero entries")
    check("invertible", rank(data.a_mat) == r, "A is invertible")
    check("lambda_nonnegative", all(x >= 0 for x in data.lam),
          "lambda_i >= 0")

    components = []
    for nodes in data.components():
        ctype = _component_type(a, nodes)
        entry = {"nodes": list(nodes), "type": ctype}
        if ctype == "finite":
            series = _component_series(a, nodes)
            if series:
                entry["series"] = series
        components.append(entry)

    return {
        "valid": all(c["passed"] for c in checks),
        "checks": checks,
        "components": components,
    }


def _require_valid(data: CartanData) -> None:
    report = validate_cartan(data)
    if not report["valid"]:
        bad = [c["name"] for c in report["checks"] if not c["passed"]]
        raise ValueError("invalid Cartan data: %s" % ", ".join(bad))


def _require_finite(data: CartanData) -> None:
    _require_valid(data)
    for nodes in data.components():
        ctype = _component_type(data.a, nodes)
        if ctype != "finite":
            raise ValueError(
                "component %s has %s type; finite type required"
                % (list(nodes), ctype))


def gram_matrix(data: CartanData) -> RatMatrix:
    """The symmetric matrix (alpha_i, alpha_j) = (D^{-1} A)_ij."""
    _require_valid(data)
    return data.gram


# -- root systems ----------------------------------------------------------


def enumerate_roots(data: CartanData) -> list[Root]:
    """All roots of a finite-type Cartan datum, by reflection closure.

    Positive roots first, sorted by (height, coords); then the negatives
    in the mirrored order.
    """
    _require_finite(data)
    r = data.r
    simple = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for c in frontier:
            for k in range(r):
                # r_k(beta) = beta - (alpha_k^vee, beta) alpha_k
                pair = sum(data.a[k][j] * c[j] for j in range(r))
                refl = tuple(c[j] - (pair if j == k else 0) for j in range(r))
                if refl not in seen and all(x >= 0 for x in refl):
                    seen.add(refl)
                    new.append(refl)
        frontier = new
    positives = sorted(seen, key=lambda c: (sum(c), c))

    def mk(c):
        labels = data.labels_of_root(c)
        norm = data.bilinear(labels, labels)
        return Root(c, labels, norm)

    pos_roots = [mk(c) for c in positives]
    return pos_roots + [-root for root in pos_roots]


def weyl_reflect(data: CartanData, k: int, mu: Sequence) -> tuple[Fraction, ...]:
    """Simple reflection on Dynkin labels: (r_k mu)_j = mu_j - mu_k A_jk."""
    if not 0 <= k < data.r:
        raise IndexError("node index %d out of range" % k)
    m = data.weight(mu)
    return tuple(m[j] - m[k] * data.a[j][k] for j in range(data.r))


def highest_roots(data: CartanData, nodes: Sequence[int] | None = None) -> list[Root]:
    """Highest root of each indecomposable component of the subdiagram.

    Roots come back in the full datum's coordinates (labels included),
    ordered by the smallest node of their component.
    """
    if nodes is None:
        nodes = list(range(data.r))
    else:
        nodes = sorted(set(nodes))
    if not all(0 <= i < data.r for i in nodes):
        raise IndexError("subdiagram node out of range")
    result = []
    if not nodes:
        return result
    sub = data.restrict(nodes)
    for comp in sub.components():
        comp_nodes = [nodes[i] for i in comp]
        comp_data = data.restrict(comp_nodes)
        roots = enumerate_roots(comp_data)
        positives = [rt for rt in roots if rt.height > 0]
        top_height = max(rt.height for rt in positives)
        top = [rt for rt in positives if rt.height == top_height]
        assert len(top) == 1, "finite component must have a unique highest root"
        coords = [0] * data.r
        for local, node in enumerate(comp_nodes):
            coords[node] = top[0].coords[local]
        labels = data.labels_of_root(coords)
        norm = data.bilinear(labels, labels)
        result.append(Root(tuple(coords), labels, norm))
    return result


def pseudo_minuscule_failure(data: CartanData, mu: Sequence) -> tuple[Root, Fraction] | None:
    """First root alpha with (mu^veecheck, alpha) outside {0, 1}, if any.

    Non-dominant or non-integral mu is reported against the first positive
    root as a failure of the dominance requirement (value = the pairing).
    """
    roots = enumerate_roots(data)
    positives = [rt for rt in roots if rt.height > 0]
    if not data.is_dominant_integral(mu):
        rt = positives[0]
        return rt, data.root_pairing(mu, rt)
    for rt in positives:
        val = data.root_pairing(mu, rt)
        if val not in (0, 1):
            return rt, val
    return None


def is_pseudo_minuscule(data: CartanData, mu: Sequence) -> bool:
    """True iff mu is dominant integral and (mu^veecheck, alpha) in {0,1}
    for every root alpha (checked over the positives; negatives give the
    negated values, so |pairing| <= 1 overall)."""
    if not data.is_dominant_integral(mu):
        return False
    return pseudo_minuscule_failure(data, mu) is None


def weyl_dimension(data: CartanData, mu: Sequence) -> int:
    """dim of the irreducible module with highest weight mu (Weyl formula)."""
    _require_finite(data)
    m = data.weight(mu)
    if not data.is_dominant_integral(m):
        raise ValueError("weight %s is not dominant integral" % (list(mu),))
    num = _ONE
    den = _ONE
    for rt in enumerate_roots(data):
        if rt.height <= 0:
            continue
        # (nu, alpha) = sum_k c_k nu_k / epsilon_k
        top = sum((c * (mk + 1) / e for c, mk, e in
                   zip(rt.coords, m, data.epsilon)), _ZERO)
        bot = sum((c / e for c, e in zip(rt.coords, data.epsilon)
                   if c), _ZERO)
        num *= top
        den *= bot
    val = num / den
    assert val.denominator == 1 and val > 0
    return int(val)


def jk_partition(data: CartanData) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """J = {i : lambda_i != 0}, K = its complement."""
    j = tuple(i for i in range(data.r) if data.lam[i] != 0)
    k = tuple(i for i in range(data.r) if data.lam[i] == 0)
    return j, k


# -- Chevalley realization -------------------------------------------------


class ChevalleyAlgebra:
    """Finite-dimensional g in a Chevalley basis {f_beta, h_i, e_beta}.

    Basis names are ("f", i_root), ("h", i_node), ("e", i_root) where
    i_root indexes the positive roots in (height, lex) order.  The full
    structure-constant table is stored; weights (Dynkin labels) per basis
    element make weight-block computations downstream cheap.
    """

    def __init__(self, data: CartanData, pos_roots: list[Root],
                 table: dict, kappa_ef: list[Fraction]):
        self.data = data
        self.pos_roots = pos_roots
        self.names: list[tuple] = (
            [("f", i) for i in range(len(pos_roots))]
            + [("h", i) for i in range(data.r)]
            + [("e", i) for i in range(len(pos_roots))])
        self.index = {name: k for k, name in enumerate(self.names)}
        self.dim = len(self.names)
        zero = tuple(_ZERO for _ in range(data.r))
        self.weights: list[tuple[Fraction, ...]] = (
            [tuple(-l for l in rt.labels) for rt in pos_roots]
            + [zero for _ in range(data.r)]
            + [rt.labels for rt in pos_roots])
        self._table = table              # (i, j) -> {k: coeff}, all pairs
        self._kappa_ef = kappa_ef        # kappa(e_beta, f_beta) per root

    def __repr__(self) -> str:
        return "ChevalleyAlgebra(dim=%d, r=%d)" % (self.dim, self.data.r)

    def simple_root_index(self, i: int) -> int:
        target = tuple(1 if j == i else 0 for j in range(self.data.r))
        for k, rt in enumerate(self.pos_roots):
            if rt.coords == target:
                return k
        raise KeyError(i)

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        return self._table.get((i, j), {})

    def bracket_vec(self, va: dict[int, Fraction],
                    vb: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, ca in va.items():
            for j, cb in vb.items():
                for k, s in self._table.get((i, j), {}).items():
                    val = out.get(k, _ZERO) + ca * cb * s
                    if val:
                        out[k] = val
                    else:
                        out.pop(k, None)
        return out

    def ad_matrix(self, i: int) -> dict[tuple[int, int], Fraction]:
        """Sparse matrix of ad(basis_i) on the algebra."""
        out = {}
        for j in range(self.dim):
            for k, c in self._table.get((i, j), {}).items():
                out[(k, j)] = c
        return out

    def kappa(self, i: int, j: int) -> Fraction:
        """Invariant form with kappa(e_i, f_i) = epsilon_i."""
        na, nb = self.names[i], self.names[j]
        if na[0] == "h" and nb[0] == "h":
            # kappa(h_a, h_b) = epsilon_a A_ba (= epsilon_b A_ab)
            return self.data.epsilon[na[1]] * self.data.a[nb[1]][na[1]]
        if {na[0], nb[0]} == {"e", "f"} and na[1] == nb[1]:
            return self._kappa_ef[na[1]]
        return _ZERO

    def coroot_coords(self, rt: Root) -> dict[int, Fraction]:
        """h_alpha = (2/(alpha,alpha)) sum c_i h_i / epsilon_i, as coords."""
        out = {}
        for i, c in enumerate(rt.coords):
            if c:
                out[self.index[("h", i)]] = (2 / rt.norm) * c / self.data.epsilon[i]
        return out


def _extraspecial_pair(root_set: set, gamma: tuple[int, ...], r: int):
    """Minimal simple i with gamma - alpha_i a positive root, plus p+1."""
    for i in range(r):
        beta = list(gamma)
        beta[i] -= 1
        if min(beta) < 0 or sum(beta) == 0:
            continue
        if tuple(beta) in root_set:
            # p = max k with beta - k alpha_i a root
            p = 0
            probe = list(beta)
            while True:
                probe[i] -= 1
                key = tuple(probe)
                if key in root_set or tuple(-x for x in key) in root_set:
                    p += 1
                else:
                    break
            return i, tuple(beta), p + 1
    raise AssertionError("positive non-simple root with no simple summand")


def chevalley_realization(data: CartanData) -> ChevalleyAlgebra:
    """Concrete structure constants for finite-type g.

    The algebra is produced as the minimal graded extension of its
    principal local part (h at degree 0, simple root vectors at degree
    +-1), which guarantees the Jacobi identity by construction; the layer
    bases are then rescaled to the Chevalley normalization
    [e_gamma, e_{-gamma}] = h_gamma with positive extraspecial constants.
    """
    _require_finite(data)
    from . import graded  # deferred: graded imports rootsys lazily too

    r = data.r
    all_roots = enumerate_roots(data)
    positives = [rt for rt in all_roots if rt.height > 0]
    root_set = {rt.coords for rt in positives}
    max_h = max(rt.height for rt in positives)

    zero_w = tuple(_ZERO for _ in range(r))
    simple_labels = [tuple(Fraction(data.a[j][i]) for j in range(r))
                     for i in range(r)]
    local = graded.LocalSuperalgebra(
        neg_names=[("f", i) for i in range(r)],
        neg_weights=[tuple(-x for x in simple_labels[i]) for i in range(r)],
        neg_parities=[0] * r,
        zero_names=[("h", i) for i in range(r)],
        zero_weights=[zero_w] * r,
        zero_parities=[0] * r,
        pos_names=[("e", i) for i in range(r)],
        pos_weights=simple_labels,
        pos_parities=[0] * r,
        b00={},
        b0m={(i, j): {j: Fraction(-data.a[i][j])} for i in range(r)
             for j in range(r) if data.a[i][j]},
        b0p={(i, j): {j: Fraction(data.a[i][j])} for i in range(r)
             for j in range(r) if data.a[i][j]},
        bpm={(i, i): {i: _ONE} for i in range(r)},
        pairing={(i, i): data.epsilon[i] for i in range(r)},
    )
    ext = graded.minimal_extension(local, (-max_h, max_h))

    # map each engine layer basis element to its root (weight spaces are
    # one-dimensional in finite type)
    by_height: dict[int, list[Root]] = {}
    for rt in positives:
        by_height.setdefault(rt.height, []).append(rt)
    for h in range(1, max_h + 1):
        want = sorted(rt.labels for rt in by_height.get(h, []))
        got_pos = sorted(ext.layer(h).weights)
        got_neg = sorted(tuple(-x for x in w) for w in ext.layer(-h).weights)
        assert want == got_pos == got_neg, "layer/root mismatch at height %d" % h

    # engine coordinates of the normalized e_gamma / f_gamma
    pr_index = {rt.coords: k for k, rt in enumerate(positives)}
    e_vec: list[dict[int, Fraction]] = [None] * len(positives)
    f_vec: list[dict[int, Fraction]] = [None] * len(positives)
    for k, rt in enumerate(positives):
        h = rt.height
        if h == 1:
            i = rt.coords.index(1)
            e_vec[k] = {i: _ONE}
            f_vec[k] = {i: _ONE}
            continue
        i, beta, n_const = _extraspecial_pair(root_set, rt.coords, r)
        ei = e_vec[pr_index[tuple(1 if j == i else 0 for j in range(r))]]
        eb = e_vec[pr_index[beta]]
        _, vec = ext.bracket((1, ei), (h - 1, eb))
        e_vec[k] = {p: c / n_const for p, c in vec.items()}
        # f_gamma: normalize the 1-dim weight space so [e_g, f_g] = h_g
        layer = ext.layer(-h)
        target_w = tuple(-x for x in rt.labels)
        cand = {p: _ONE for p, w in enumerate(layer.weights) if w == target_w}
        assert len(cand) == 1
        _, hv = ext.bracket((h, e_vec[k]), (-h, cand))
        h_g = {i2: (2 / rt.norm) * c / data.epsilon[i2]
               for i2, c in enumerate(rt.coords) if c}
        ratios = {i2: hv[i2] / v for i2, v in h_g.items()}
        t = next(iter(ratios.values()))
        assert all(v == t for v in ratios.values()) and set(hv) == set(h_g)
        f_vec[k] = {p: c / t for p, c in cand.items()}

    # assemble the full structure-constant table in the Chevalley basis
    npos = len(positives)
    dim = 2 * npos + r

    def basis_vec(idx: int) -> tuple[int, dict[int, Fraction]]:
        if idx < npos:
            return -positives[idx].height, f_vec[idx]
        if idx < npos + r:
            return 0, {idx - npos: _ONE}
        return positives[idx - npos - r].height, e_vec[idx - npos - r]

    # per-layer inverse: engine coordinate p at degree d -> (basis idx, scale)
    convert: dict[int, dict[int, tuple[int, Fraction]]] = {}
    for k, rt in enumerate(positives):
        h = rt.height
        for deg, vec, bidx in ((h, e_vec[k], npos + r + k),
                               (-h, f_vec[k], k)):
            (p, c), = vec.items()
            convert.setdefault(deg, {})[p] = (bidx, c)
    convert[0] = {i: (npos + i, _ONE) for i in range(r)}

    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(dim):
        di, vi = basis_vec(i)
        for j in range(dim):
            dj, vj = basis_vec(j)
            if abs(di + dj) > max_h:
                continue
            d, vec = ext.bracket((di, vi), (dj, vj))
            if not vec:
                continue
            out = {}
            for p, c in vec.items():
                bidx, scale = convert[d][p]
                out[bidx] = c / scale
            table[(i, j)] = out

    kappa_ef = [2 / rt.norm for rt in positives]
    return ChevalleyAlgebra(data, positives, table, kappa_ef)
