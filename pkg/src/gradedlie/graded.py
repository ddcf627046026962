"""Local Lie superalgebras, minimal graded extensions, and decompositions.

A local superalgebra is the degree -1/0/1 slice of a Z-graded Lie
superalgebra: bases with weights and parities, the brackets that land
back inside the slice, optionally an invariant pairing between the
degree -1 and +1 parts and a grading element.

The minimal extension is built degree by degree.  Candidates for degree
-(k+1) are tensors u (x) x with u at degree -k and x at degree -1; the
value of a candidate under every degree +1 element z,

    T(u (x) x)(z) = [[z,u],x] + (-1)^{|z||u|} [u,[z,x]],

is computable from the previous layer, and the new layer is the candidate
space modulo ker T.  This successive quotient equals the quotient of the
free Lie superalgebra on the degree -1 part by the maximal graded ideal
meeting the local part trivially: anything the free algebra adds beyond
the tensor candidates (super-antisymmetry and Jacobi combinations) is
annihilated by every z and lands in the kernel automatically.  Kernels
are computed per weight block; bases are ordered by (weight, candidate),
so outputs are deterministic.

A zero layer stops the side: further layers are generated by bracketing
the zero layer with degree -+1, hence zero as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RatMatrix, kernel_basis, rref

__all__ = [
    "LocalSuperalgebra",
    "GradedSuperalgebra",
    "Layer",
    "ModuleRep",
    "check_local_axioms",
    "minimal_extension",
    "decompose_module",
    "decompose_at_degree",
    "lowest_weight_module",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

Vec = dict  # sparse coefficient vector: index -> Fraction


def vadd(a: Vec, b: Vec, scale: Fraction = _ONE) -> Vec:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, _ZERO) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(a: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def wsum(wa: tuple, wb: tuple) -> tuple:
    return tuple(x + y for x, y in zip(wa, wb))


@dataclass
class LocalSuperalgebra:
    """Bases and brackets of a degree -1/0/1 slice.

    Bracket tables are sparse and one-sided; the other orientation is
    derived through super-antisymmetry.  Conventions:

    * ``b00[(a, b)]`` = [x0_a, x0_b] as a degree-0 vector;
    * ``b0m[(a, x)]`` = [x0_a, y_x] with y at degree -1;
    * ``b0p[(a, z)]`` = [x0_a, y_z] with y at degree +1;
    * ``bpm[(z, x)]`` = [y_z, y_x], degree +1 with degree -1, landing at 0;
    * ``pairing[(x, z)]`` = <y_x | y_z> for x at -1, z at +1 (optional);
    * ``grading`` = degree-0 coordinates of the grading element (optional);
    * ``embedding`` optionally records degree-0 coordinates of named
      elements when the degree-0 basis is synthetic (cartanifications).
    """

    neg_names: list
    neg_weights: list
    neg_parities: list
    zero_names: list
    zero_weights: list
    zero_parities: list
    pos_names: list
    pos_weights: list
    pos_parities: list
    b00: dict
    b0m: dict
    b0p: dict
    bpm: dict
    pairing: dict | None = None
    grading: Vec | None = None
    embedding: dict | None = None

    @property
    def nneg(self) -> int:
        return len(self.neg_names)

    @property
    def nzero(self) -> int:
        return len(self.zero_names)

    @property
    def npos(self) -> int:
        return len(self.pos_names)

    def dims(self) -> dict[int, int]:
        return {-1: self.nneg, 0: self.nzero, 1: self.npos}

    def names_at(self, d: int) -> list:
        return {-1: self.neg_names, 0: self.zero_names, 1: self.pos_names}[d]

    def weights_at(self, d: int) -> list:
        return {-1: self.neg_weights, 0: self.zero_weights, 1: self.pos_weights}[d]

    def parities_at(self, d: int) -> list:
        return {-1: self.neg_parities, 0: self.zero_parities, 1: self.pos_parities}[d]

    def zero_coords_of(self, name) -> Vec | None:
        """Degree-0 coordinates of a named element, if representable."""
        if self.embedding is not None and name in self.embedding:
            return dict(self.embedding[name])
        if name in self.zero_names:
            return {self.zero_names.index(name): _ONE}
        return None

    # -- local brackets ----------------------------------------------------

    def bracket(self, da: int, a: int, db: int, b: int) -> Vec:
        """[basis_a at degree da, basis_b at degree db]; |da + db| <= 1."""
        key = (da, db)
        if key == (0, 0):
            return dict(self.b00.get((a, b), {}))
        if key == (0, -1):
            return dict(self.b0m.get((a, b), {}))
        if key == (0, 1):
            return dict(self.b0p.get((a, b), {}))
        if key == (1, -1):
            return dict(self.bpm.get((a, b), {}))
        if da + db > 1 or da + db < -1:
            raise ValueError("bracket of degrees %d and %d leaves the slice"
                             % (da, db))
        sign = -_ONE if (self.parities_at(da)[a] and self.parities_at(db)[b]) \
            else _ONE
        return vscale(self.bracket(db, b, da, a), -sign)

    def bracket_vec(self, da: int, va: Vec, db: int, vb: Vec) -> Vec:
        out: Vec = {}
        for a, ca in va.items():
            for b, cb in vb.items():
                out = vadd(out, self.bracket(da, a, db, b), ca * cb)
        return out

    def pair(self, x: int, z: int) -> Fraction:
        return self.pairing.get((x, z), _ZERO)


def check_local_axioms(local: LocalSuperalgebra) -> dict:
    """Itemized report: Jacobi-in-range, grading element, pairing axioms."""
    checks = []

    def record(name, failures, detail=""):
        checks.append({
            "name": name,
            "passed": not failures,
            "detail": detail,
            "witnesses": failures[:3],
        })

    # Jacobi for degree patterns whose three pairwise brackets stay in range
    patterns = [(0, 0, 0)]
    for d in (1, -1):
        patterns += [(d, 0, 0), (0, d, 0), (0, 0, d)]
    patterns += [(0, 1, -1), (0, -1, 1), (1, 0, -1),
                 (-1, 0, 1), (1, -1, 0), (-1, 1, 0)]
    failures = []
    for pat in patterns:
        d1, d2, d3 = pat
        n1 = len(local.names_at(d1))
        n2 = len(local.names_at(d2))
        n3 = len(local.names_at(d3))
        p1 = local.parities_at(d1)
        p2 = local.parities_at(d2)
        for i in range(n1):
            for j in range(n2):
                for k in range(n3):
                    # [[x,y],z] = [x,[y,z]] - (-1)^{|x||y|} [y,[x,z]]
                    lhs = local.bracket_vec(
                        d1 + d2, local.bracket(d1, i, d2, j), d3, {k: _ONE})
                    rhs = local.bracket_vec(
                        d1, {i: _ONE}, d2 + d3, local.bracket(d2, j, d3, k))
                    sgn = -_ONE if (p1[i] and p2[j]) else _ONE
                    rhs = vadd(rhs, local.bracket_vec(
                        d2, {j: _ONE}, d1 + d3, local.bracket(d1, i, d3, k)),
                        -sgn)
                    if vadd(lhs, rhs, -_ONE):
                        failures.append({"degrees": list(pat),
                                         "indices": [i, j, k]})
    record("jacobi_in_range", failures,
           "[[x,y],z] = [x,[y,z]] - (-1)^{|x||y|}[y,[x,z]] whenever defined")

    if local.grading is not None:
        failures = []
        for d in (-1, 0, 1):
            for k in range(len(local.names_at(d))):
                got = local.bracket_vec(0, local.grading, d, {k: _ONE})
                want = {k: Fraction(d)} if d else {}
                if vadd(got, want, -_ONE):
                    failures.append({"degree": d, "index": k})
        record("grading_element", failures, "[L, x_k] = k x_k")

    if local.pairing is not None:
        failures = []
        for x in range(local.nneg):
            for z in range(local.npos):
                if local.pair(x, z) and \
                        local.neg_parities[x] != local.pos_parities[z]:
                    failures.append({"neg": x, "pos": z})
        record("pairing_homogeneity", failures,
               "pairing vanishes across different parities")

        failures = []
        for a in range(local.nzero):
            for x in range(local.nneg):
                xy = local.bracket(-1, x, 0, a)
                for z in range(local.npos):
                    lhs = sum((c * local.pair(x2, z) for x2, c in xy.items()),
                              _ZERO)
                    yz = local.bracket(0, a, 1, z)
                    rhs = sum((c * local.pair(x, z2) for z2, c in yz.items()),
                              _ZERO)
                    if lhs != rhs:
                        failures.append({"zero": a, "neg": x, "pos": z})
        record("pairing_invariance", failures,
               "<[x,y0]|z> = <x|[y0,z]>")

    return {"passed": all(c["passed"] for c in checks), "checks": checks}


@dataclass
class Layer:
    """One stored degree of a graded superalgebra."""

    degree: int
    names: list
    weights: list
    parities: list
    # tensor definition for |degree| >= 2: basis elt = [parent, unit] with
    # parent in the adjacent inner layer and unit at degree sign(degree)
    tensor_parent: list | None = None
    reduce: dict | None = None     # (parent, unit) -> Vec over this layer
    # action of the opposite-sign degree-1 basis, landing one step inward
    opp_map: list | None = None    # opp_map[j][src] = Vec in inner layer
    act0: list | None = None       # act0[a][src] = Vec in this layer

    @property
    def dim(self) -> int:
        return len(self.names)


class GradedSuperalgebra:
    """Per-degree bases with bracket structure constants.

    Brackets between arbitrary stored degrees are evaluated recursively
    from the stored layer data (tensor definitions, degree +-1 actions,
    degree-0 actions) and memoized per basis pair.
    """

    def __init__(self, local: LocalSuperalgebra, layers: dict[int, Layer]):
        self.local = local
        self.layers = layers
        self._memo: dict[tuple, Vec] = {}

    def degrees(self) -> list[int]:
        return sorted(self.layers)

    def layer(self, d: int) -> Layer:
        if d not in self.layers:
            raise KeyError("degree %d not stored" % d)
        return self.layers[d]

    def dims(self) -> dict[int, int]:
        return {d: self.layers[d].dim for d in self.degrees()}

    def parity(self, d: int, i: int) -> int:
        return self.layers[d].parities[i]

    def weight(self, d: int, i: int) -> tuple:
        return self.layers[d].weights[i]

    def zero_coords_of(self, name) -> Vec | None:
        return self.local.zero_coords_of(name)

    # -- brackets ----------------------------------------------------------

    def bracket(self, a: tuple[int, Vec], b: tuple[int, Vec]) -> tuple[int, Vec]:
        """[a, b] for (degree, sparse coefficient vector) pairs."""
        da, va = a
        db, vb = b
        out: Vec = {}
        for i, ci in va.items():
            for j, cj in vb.items():
                out = vadd(out, self._bb(da, i, db, j), ci * cj)
        return da + db, out

    def _anti(self, da: int, i: int, db: int, j: int) -> Vec:
        sign = -_ONE if (self.parity(da, i) and self.parity(db, j)) else _ONE
        return vscale(self._bb(db, j, da, i), -sign)

    def _bb(self, da: int, i: int, db: int, j: int) -> Vec:
        """Basis bracket, memoized; raises if the result degree is unstored."""
        d = da + db
        if d not in self.layers:
            raise ValueError("bracket lands at unstored degree %d" % d)
        key = (da, i, db, j)
        hit = self._memo.get(key)
        if hit is not None:
            return dict(hit)
        val = self._bb_raw(da, i, db, j)
        self._memo[key] = val
        return dict(val)

    def _bb_raw(self, da: int, i: int, db: int, j: int) -> Vec:
        loc = self.local
        if da == 0 and db == 0:
            return dict(loc.b00.get((i, j), {}))
        if da == 0:
            mat = self.layers[db].act0[i]
            return dict(mat.get(j, {}))
        if db == 0:
            return self._anti(da, i, db, j)

        if da > 0 and db < 0:
            if da == 1:
                if db == -1:
                    return dict(loc.bpm.get((i, j), {}))
                return dict(self.layers[db].opp_map[i].get(j, {}))
            if db == -1:
                # positive layers store [x_{-1}, u] directly
                sign = -_ONE if (self.parity(da, i)
                                 and loc.neg_parities[j]) else _ONE
                return vscale(self.layers[da].opp_map[j].get(i, {}), -sign)
            # expand a = [u, z] via its tensor definition:
            # [[u,z],b] = [u,[z,b]] - (-1)^{|u||z|} [z,[u,b]]
            u, z = self.layers[da].tensor_parent[i]
            pu = self.parity(da - 1, u)
            pz = loc.pos_parities[z]
            t1 = self._bb(1, z, db, j)
            out = self._bracket_vec_left(da - 1, u, db + 1, t1)
            t2 = self._bb(da - 1, u, db, j)
            out2 = self._bracket_vec_left(1, z, da - 1 + db, t2)
            sgn = -_ONE if (pu and pz) else _ONE
            return vadd(out, out2, -sgn)

        if da < 0 and db > 0:
            return self._anti(da, i, db, j)

        if da < 0 and db < 0:
            if da == -1:
                if db == -1:
                    return dict(self.layers[-2].reduce[(i, j)])
                # [x_{-1}, v_q] = -(-1)^{|x||v|} [v_q, x]
                sign = -_ONE if (loc.neg_parities[i]
                                 and self.parity(db, j)) else _ONE
                red = self.layers[db - 1].reduce[(j, i)]
                return vscale(red, -sign)
            if db == -1:
                # [u, x_{-1}] is the tensor definition of the next layer
                return dict(self.layers[da - 1].reduce[(i, j)])
            # [[u,x],b] = [u,[x,b]] - (-1)^{|u||x|} [x,[u,b]]
            u, x = self.layers[da].tensor_parent[i]
            pu = self.parity(da + 1, u)
            px = loc.neg_parities[x]
            t1 = self._bb(-1, x, db, j)
            out = self._bracket_vec_left(da + 1, u, db - 1, t1)
            t2 = self._bb(da + 1, u, db, j)
            out2 = self._bracket_vec_left(-1, x, da + 1 + db, t2)
            sgn = -_ONE if (pu and px) else _ONE
            return vadd(out, out2, -sgn)

        # da > 0 and db > 0
        if da == 1:
            if db == 1:
                return dict(self.layers[2].reduce[(i, j)])
            sign = -_ONE if (loc.pos_parities[i]
                             and self.parity(db, j)) else _ONE
            red = self.layers[db + 1].reduce[(j, i)]
            return vscale(red, -sign)
        if db == 1:
            return dict(self.layers[da + 1].reduce[(i, j)])
        u, z = self.layers[da].tensor_parent[i]
        pu = self.parity(da - 1, u)
        pz = loc.pos_parities[z]
        t1 = self._bb(1, z, db, j)
        out = self._bracket_vec_left(da - 1, u, db + 1, t1)
        t2 = self._bb(da - 1, u, db, j)
        out2 = self._bracket_vec_left(1, z, da - 1 + db, t2)
        sgn = -_ONE if (pu and pz) else _ONE
        return vadd(out, out2, -sgn)

    def _bracket_vec_left(self, da: int, i: int, db: int, vb: Vec) -> Vec:
        out: Vec = {}
        for j, c in vb.items():
            out = vadd(out, self._bb(da, i, db, j), c)
        return out


def _local_layers(local: LocalSuperalgebra) -> dict[int, Layer]:
    """Wrap the three local degrees in the uniform Layer shape."""
    nneg, nzero, npos = local.nneg, local.nzero, local.npos

    act0_m = [dict() for _ in range(nzero)]
    act0_p = [dict() for _ in range(nzero)]
    for (a, x), vec in local.b0m.items():
        if vec:
            act0_m[a][x] = dict(vec)
    for (a, z), vec in local.b0p.items():
        if vec:
            act0_p[a][z] = dict(vec)
    act0_0 = [dict() for _ in range(nzero)]
    for (a, b), vec in local.b00.items():
        if vec:
            act0_0[a][b] = dict(vec)

    opp_m = [dict() for _ in range(npos)]   # [z, x] for x at degree -1
    for (z, x), vec in local.bpm.items():
        if vec:
            opp_m[z][x] = dict(vec)
    opp_p = [dict() for _ in range(nneg)]   # [x, z] for z at degree +1
    for (z, x), vec in local.bpm.items():
        sign = -_ONE if (local.pos_parities[z]
                         and local.neg_parities[x]) else _ONE
        w = vscale(vec, -sign)
        if w:
            opp_p[x][z] = w

    return {
        -1: Layer(-1, list(local.neg_names), list(local.neg_weights),
                  list(local.neg_parities), opp_map=opp_m, act0=act0_m),
        0: Layer(0, list(local.zero_names), list(local.zero_weights),
                 list(local.zero_parities), act0=act0_0),
        1: Layer(1, list(local.pos_names), list(local.pos_weights),
                 list(local.pos_parities), opp_map=opp_p, act0=act0_p),
    }


def _extend_one(local: LocalSuperalgebra, layers: dict[int, Layer],
                side: int, k: int) -> Layer:
    """Build the layer at degree side*(k+1) from the one at side*k."""
    prev = layers[side * k]
    inner = layers[side * (k - 1)] if k >= 2 else None
    if side < 0:
        unit_w = local.neg_weights
        unit_p = local.neg_parities
        acting = range(local.npos)
        act_p = local.pos_parities
    else:
        unit_w = local.pos_weights
        unit_p = local.pos_parities
        acting = range(local.nneg)
        act_p = local.neg_parities
    nunit = len(unit_w)

    def inner_mul(vec: Vec, unit: int) -> Vec:
        """[v, unit] for v one step inside the previous layer."""
        out: Vec = {}
        for p, c in vec.items():
            if k == 1:
                # v at degree 0 acting on the degree +-1 unit
                t = local.b0m.get((p, unit), {}) if side < 0 \
                    else local.b0p.get((p, unit), {})
                out = vadd(out, t, c)
            else:
                out = vadd(out, prev.reduce[(p, unit)], c)
        return out

    def act0_right(u: int, vec0: Vec) -> Vec:
        """[u, v0] = -(-1)^{|u||v0|} [v0, u] inside the previous layer."""
        out: Vec = {}
        pu = prev.parities[u]
        for a, c in vec0.items():
            t = prev.act0[a].get(u, {})
            sign = -_ONE if (pu and local.zero_parities[a]) else _ONE
            out = vadd(out, t, -sign * c)
        return out

    # candidates grouped by weight, deterministic order
    cands = [(u, x) for u in range(prev.dim) for x in range(nunit)]
    t_vals: dict[tuple, list[Vec]] = {}
    for (u, x) in cands:
        vals = []
        pu = prev.parities[u]
        for z in acting:
            if side < 0:
                zu = prev.opp_map[z].get(u, {})
                zx = local.bpm.get((z, x), {})
            else:
                zu = prev.opp_map[z].get(u, {})
                sign = -_ONE if (act_p[z] and local.pos_parities[x]) else _ONE
                zx = vscale(local.bpm.get((x, z), {}), -sign)
            term1 = inner_mul(zu, x)
            term2 = act0_right(u, zx)
            sgn = -_ONE if (act_p[z] and pu) else _ONE
            vals.append(vadd(term1, term2, sgn))
        t_vals[(u, x)] = vals

    blocks: dict[tuple, list[tuple]] = {}
    for (u, x) in cands:
        w = wsum(prev.weights[u], unit_w[x])
        blocks.setdefault(w, []).append((u, x))

    names: list = []
    weights: list = []
    parities: list = []
    tensor_parent: list = []
    reduce_map: dict = {}
    new_deg = side * (k + 1)

    pivots_per_block: list[tuple[tuple, list[tuple], list[int], RatMatrix, list[int]]] = []
    for w in sorted(blocks):
        blk = blocks[w]
        # stack the T-values of the block into one matrix
        row_index: dict[tuple, int] = {}
        entries = {}
        for col, cand in enumerate(blk):
            for zi, vec in enumerate(t_vals[cand]):
                for tgt, c in vec.items():
                    rk = (zi, tgt)
                    r = row_index.setdefault(rk, len(row_index))
                    entries[(r, col)] = c
        mat = RatMatrix(max(len(row_index), 1), len(blk), entries)
        red, piv = rref(mat)
        pivots_per_block.append((w, blk, piv, red, []))

    for w, blk, piv, red, _ in pivots_per_block:
        base = len(names)
        for pi in piv:
            u, x = blk[pi]
            names.append(("w", new_deg, len(names)))
            weights.append(w)
            parities.append((prev.parities[u] + unit_p[x]) % 2)
            tensor_parent.append((u, x))
        for col, cand in enumerate(blk):
            if col in piv:
                reduce_map[cand] = {base + piv.index(col): _ONE}
            else:
                vec = {}
                for r, pc in enumerate(piv):
                    c = red[r, col]
                    if c:
                        vec[base + r] = c
                reduce_map[cand] = vec

    layer = Layer(new_deg, names, weights, parities,
                  tensor_parent=tensor_parent, reduce=reduce_map)

    # opposite action on the new basis: the stored T-values of the pivots
    opp = [dict() for _ in acting]
    for idx, cand in enumerate(tensor_parent):
        for zi, vec in enumerate(t_vals[cand]):
            if vec:
                opp[zi][idx] = vec
    layer.opp_map = opp

    # degree-0 action: [a, [u,x]] = [[a,u],x] + (-1)^{|a||u|}[u,[a,x]]
    act0 = [dict() for _ in range(local.nzero)]
    for idx, (u, x) in enumerate(tensor_parent):
        pu = prev.parities[u]
        for a in range(local.nzero):
            au = prev.act0[a].get(u, {})
            vec: Vec = {}
            for v, c in au.items():
                vec = vadd(vec, reduce_map[(v, x)], c)
            ax = local.b0m.get((a, x), {}) if side < 0 \
                else local.b0p.get((a, x), {})
            sgn = -_ONE if (local.zero_parities[a] and pu) else _ONE
            for y, c in ax.items():
                vec = vadd(vec, reduce_map[(u, y)], sgn * c)
            if vec:
                act0[a][idx] = vec
    layer.act0 = act0
    return layer


def minimal_extension(local: LocalSuperalgebra,
                      degree_range: tuple[int, int]) -> GradedSuperalgebra:
    """Minimal Z-graded extension of a local part over the given degrees."""
    d_min, d_max = degree_range
    if d_min > -1 or d_max < 1:
        raise ValueError("degree_range must contain [-1, 1]")
    layers = _local_layers(local)
    for side, stop in ((-1, -d_min), (1, d_max)):
        for k in range(1, stop):
            if layers[side * k].dim == 0:
                layers[side * (k + 1)] = Layer(side * (k + 1), [], [], [],
                                               tensor_parent=[], reduce={},
                                               opp_map=[dict() for _ in range(
                                                   local.npos if side < 0
                                                   else local.nneg)],
                                               act0=[dict() for _ in range(
                                                   local.nzero)])
                continue
            layers[side * (k + 1)] = _extend_one(local, layers, side, k)
    return GradedSuperalgebra(local, layers)


# -- decomposition ----------------------------------------------------------


def decompose_module(weights: list, raisers: list, data) -> list[tuple]:
    """Decompose a finite g-module given its simple-raising matrices.

    ``weights``: Dynkin-label tuple per basis element; ``raisers``: one
    column-sparse matrix {src: {tgt: c}} per simple root of ``data``.
    Returns [(highest weight, multiplicity, dimension)] with the
    dimensions from the Weyl formula; their weighted sum must equal the
    module dimension (checked).
    """
    from . import rootsys  # deferred to avoid a module cycle

    blocks: dict[tuple, list[int]] = {}
    for idx, w in enumerate(weights):
        blocks.setdefault(tuple(w), []).append(idx)

    found = []
    for w in sorted(blocks):
        blk = blocks[w]
        row_index: dict[tuple, int] = {}
        entries = {}
        for col, src in enumerate(blk):
            for ri, mat in enumerate(raisers):
                for tgt, c in mat.get(src, {}).items():
                    r = row_index.setdefault((ri, tgt), len(row_index))
                    entries[(r, col)] = c
        mat = RatMatrix(max(len(row_index), 1), len(blk), entries)
        mult = len(kernel_basis(mat))
        if mult:
            dim = rootsys.weyl_dimension(data, w)
            found.append((w, mult, dim))
    total = sum(m * d for _, m, d in found)
    if total != len(weights):
        raise ValueError(
            "decomposition mismatch: highest-weight content %d != dim %d"
            % (total, len(weights)))
    found.sort(key=lambda t: (t[2], t[0]))
    return found


def decompose_at_degree(g_alg: GradedSuperalgebra, d: int, data,
                        nodes: Sequence[int] | None = None) -> list[tuple]:
    """Decompose the degree-d component under the (sub)algebra action.

    ``data`` is the CartanData of the full diagram the stored weights
    refer to; ``nodes`` picks the acting subdiagram (default: all).
    The simple raising operators are located in the degree-0 basis by
    their Chevalley names ("e", i) via the local embedding.
    """
    layer = g_alg.layer(d)
    if nodes is None:
        nodes = list(range(data.r))
    sub = data.restrict(nodes)

    raisers = []
    for node in nodes:
        # simple raising operators are embedded under node-keyed names
        coords = g_alg.zero_coords_of(("e", node))
        if coords is None:
            raise ValueError(
                "raising operator for node %d not defined on the degree-0 "
                "part" % node)
        mat: dict = {}
        for a, c in coords.items():
            for src, vec in g_alg.layers[d].act0[a].items():
                cur = mat.setdefault(src, {})
                for tgt, v in vec.items():
                    s = cur.get(tgt, _ZERO) + c * v
                    if s:
                        cur[tgt] = s
                    else:
                        cur.pop(tgt, None)
        raisers.append(mat)

    proj_weights = [tuple(w[i] for i in nodes) for w in layer.weights]
    return decompose_module(proj_weights, raisers, sub)


# -- irreducible lowest-weight modules --------------------------------------


@dataclass
class ModuleRep:
    """A finite-dimensional g-module with explicit action matrices.

    ``act[i]`` is the column-sparse matrix {src: {tgt: c}} of the i-th
    basis element of g; weights are Dynkin labels per module basis
    element.  ``lowest`` indexes the generating vector, when one exists.
    """

    weights: list
    act: list
    lowest: int = 0

    @property
    def dim(self) -> int:
        return len(self.weights)

    def apply(self, i: int, vec: Vec) -> Vec:
        out: Vec = {}
        mat = self.act[i]
        for src, c in vec.items():
            for tgt, v in mat.get(src, {}).items():
                s = out.get(tgt, _ZERO) + c * v
                if s:
                    out[tgt] = s
                else:
                    out.pop(tgt, None)
        return out


def _compose(ma: dict, mb: dict) -> dict:
    """Column composition (ma after mb) of {src: {tgt: c}} matrices."""
    out: dict = {}
    for src, vec in mb.items():
        acc: Vec = {}
        for mid, c in vec.items():
            for tgt, v in ma.get(mid, {}).items():
                s = acc.get(tgt, _ZERO) + c * v
                if s:
                    acc[tgt] = s
                else:
                    acc.pop(tgt, None)
        if acc:
            out[src] = acc
    return out


def _msub(ma: dict, mb: dict) -> dict:
    out = {k: dict(v) for k, v in ma.items()}
    for src, vec in mb.items():
        cur = out.setdefault(src, {})
        for tgt, v in vec.items():
            s = cur.get(tgt, _ZERO) - v
            if s:
                cur[tgt] = s
            else:
                cur.pop(tgt, None)
        if not cur:
            out.pop(src)
    return out


def lowest_weight_module(g, lam: Sequence) -> ModuleRep:
    """The irreducible g-module generated by a lowest-weight vector.

    ``lam`` gives the Dynkin labels of -(lowest weight): the generator
    has weight -lam, is killed by all lowerings, and the module is
    R(-lam), of dimension weyl_dimension(lam).  Levels are built by
    raising; a candidate is zero in the irreducible module exactly when
    every single lowering kills it, so each level is the raising-candidate
    space modulo the kernel of the stacked lowering map.
    """
    data = g.data
    r = data.r
    lam_w = data.weight(lam)
    if not data.is_dominant_integral(lam_w):
        raise ValueError("labels %s are not dominant integral" % (list(lam),))

    weights: list[tuple] = [tuple(-x for x in lam_w)]
    # per simple node: raising/lowering as {src: {tgt: c}}
    raise_m: list[dict] = [dict() for _ in range(r)]
    lower_m: list[dict] = [dict() for _ in range(r)]
    alpha = [data.labels_of_root([1 if j == i else 0 for j in range(r)])
             for i in range(r)]

    level = [0]
    while level:
        cands = [(i, u) for u in level for i in range(r)]
        t_vals: dict[tuple, list[Vec]] = {}
        for (i, u) in cands:
            vals = []
            for j in range(r):
                # f_j (e_i u) = e_i (f_j u) + delta_ij (alpha_i^vee, w_u) u
                vec: Vec = {}
                for v, c in lower_m[j].get(u, {}).items():
                    for tgt, s in raise_m[i].get(v, {}).items():
                        val = vec.get(tgt, _ZERO) + c * s
                        if val:
                            vec[tgt] = val
                        else:
                            vec.pop(tgt, None)
                if i == j and weights[u][i]:
                    vec = vadd(vec, {u: -weights[u][i]})
                vals.append(vec)
            t_vals[(i, u)] = vals

        blocks: dict[tuple, list[tuple]] = {}
        for (i, u) in cands:
            w = wsum(weights[u], alpha[i])
            blocks.setdefault(w, []).append((i, u))

        new_level: list[int] = []
        for w in sorted(blocks):
            blk = blocks[w]
            row_index: dict[tuple, int] = {}
            entries = {}
            for col, cand in enumerate(blk):
                for j, vec in enumerate(t_vals[cand]):
                    for tgt, c in vec.items():
                        rk = row_index.setdefault((j, tgt), len(row_index))
                        entries[(rk, col)] = c
            mat = RatMatrix(max(len(row_index), 1), len(blk), entries)
            red, piv = rref(mat)
            base = len(weights)
            for _ in piv:
                new_level.append(len(weights))
                weights.append(w)
            for col, cand in enumerate(blk):
                i, u = cand
                if col in piv:
                    cls: Vec = {base + piv.index(col): _ONE}
                else:
                    cls = {base + ri: red[ri, col] for ri in range(len(piv))
                           if red[ri, col]}
                if cls:
                    raise_m[i][u] = cls
            for col, cand in enumerate(blk):
                if col in piv:
                    idx = base + piv.index(col)
                    for j, vec in enumerate(t_vals[cand]):
                        if vec:
                            lower_m[j][idx] = vec
        level = new_level

    dim = len(weights)
    # assemble the action of every Chevalley basis element
    act: list[dict] = [dict() for _ in range(g.dim)]
    for node in range(r):
        si = g.simple_root_index(node)
        act[g.index[("e", si)]] = raise_m[node]
        act[g.index[("f", si)]] = lower_m[node]
    for i in range(r):
        hmat = {}
        for src in range(dim):
            c = weights[src][i]
            if c:
                hmat[src] = {src: Fraction(c)}
        act[g.index[("h", i)]] = hmat
    # compound root vectors: gamma = alpha_node + beta with beta positive,
    # action from the already-built lower-height actions and the structure
    # constants of g (positive roots are stored by increasing height)
    pr_index = {rt.coords: k for k, rt in enumerate(g.pos_roots)}
    for k, rt in enumerate(g.pos_roots):
        if rt.height == 1:
            continue
        for node in range(r):
            beta = list(rt.coords)
            beta[node] -= 1
            if beta[node] >= 0 and tuple(beta) in pr_index:
                break
        else:
            raise AssertionError("no simple summand for root %s"
                                 % (rt.coords,))
        si = g.simple_root_index(node)
        bidx = pr_index[tuple(beta)]
        for kind in ("e", "f"):
            tab = g.bracket(g.index[(kind, si)], g.index[(kind, bidx)])
            ((tgt, const),) = tuple(tab.items())
            assert g.names[tgt] == (kind, k)
            ma = act[g.index[(kind, si)]]
            mb = act[g.index[(kind, bidx)]]
            comm = _msub(_compose(ma, mb), _compose(mb, ma))
            act[g.index[(kind, k)]] = {
                src: vscale(vec, 1 / const) for src, vec in comm.items()
                if vec}

    return ModuleRep(weights=weights, act=act, lowest=0)
