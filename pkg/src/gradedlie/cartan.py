"""Words over a local superalgebra with restricted associativity, and the
cartanification obtained by factoring the peripheral ideal out of the
degree -1 words.

Given a local superalgebra with grading element L and an invariant pairing
between the wings, the span of words in basis letters of degrees -1, 0, 1
carries a product: words of one sign multiply by concatenation (with the
enveloping-algebra reordering of degree-0 letters), and a product of
opposite wings reduces pairwise through

    x_{-1} y_{1} = -[[y_1, x_-1]] + <x_-1|y_1> L ,
    x_{1} y_{-1} =  [[y_-1, x_1]] + <x_1|y_-1> L + <x_1|y_-1> ,

where [[-,-]] is the bracket of the local part, applied innermost first.
The pairing changes sign under swapping its arguments when both are odd and
keeps it when both are even.  The product is associative for X z Y with X a
left-canonical word, Y right-canonical of the opposite wing and z a single
letter, which is exactly enough for the commutator to define a local Lie
superalgebra on the words of degrees -1, 0, 1.

The cartanification quotients the degree -1 words x_{-1} y_0 by the kernel
of their action on degree +1 (the maximal peripheral ideal) and takes the
minimal graded extension of the result.  The degree-0 part of the quotient
is the bracket closure of the image of the action map; the grading element
survives exactly when it lies in that span.

A restriction to a degree-0 subalgebra keeps, in place of all classes, only
the submodule generated by the classes of the words f_0 y_0 with y_0 in the
restriction, where f_0 is the distinguished minus generator dual to the
lowest vector of the plus wing.  This matches the presentations in which
the single minus generator is replaced by one generator per restriction
direction, and reproduces the divergence-free subalgebra of the
Grassmann-derivation model when the restriction is the semisimple part
complementary to the weight labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import RatMatrix, kernel_basis, rref, solve
from .graded import (
    GradedSuperalgebra,
    LocalSuperalgebra,
    minimal_extension,
    wsum,
)

_ONE = Fraction(1)
_HALF = Fraction(1, 2)

# A letter is (degree, basis index) with degree in {-1, 0, 1}; a word is a
# tuple of letters, () being the scalar 1; an element maps words to
# coefficients.  Canonical words have all degree-0 letters first, sorted by
# index, followed by letters of a single nonzero degree.


def _acc(out: dict, terms: dict, scale=_ONE) -> dict:
    for w, c in terms.items():
        s = out.get(w, 0) + scale * c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


class LocAlgebra:
    """Product engine on words over a local superalgebra."""

    def __init__(self, local: LocalSuperalgebra, cap: int = 8):
        if local.grading is None:
            raise ValueError("local part has no grading element")
        self.local = local
        self.cap = cap
        self._norm_cache: dict = {}
        self._prod_cache: dict = {}

    # -- letters and words ------------------------------------------------

    def letter_parity(self, letter) -> int:
        deg, idx = letter
        return self.local.parities_at(deg)[idx]

    def word_parity(self, word) -> int:
        return sum(self.letter_parity(l) for l in word) % 2

    def word_degree(self, word) -> int:
        return sum(deg for deg, _ in word)

    def word_weight(self, word) -> tuple | None:
        acc = None
        for deg, idx in word:
            w = self.local.weights_at(deg)[idx]
            acc = tuple(w) if acc is None else wsum(acc, w)
        return acc

    def element_weight(self, el: dict) -> tuple | None:
        """Common weight of the words of an element (None for scalars)."""
        weight = None
        for w in el:
            ww = self.word_weight(w)
            if ww is None:
                continue
            if weight is None:
                weight = ww
            elif weight != ww:
                raise ValueError("element is not weight-homogeneous")
        return weight

    def from_vec(self, deg: int, vec) -> dict:
        return {((deg, i),): Fraction(c) for i, c in vec.items() if c}

    def grading_element(self) -> dict:
        return self.from_vec(0, self.local.grading)

    # -- pairing with swap signs -------------------------------------------

    def _pair_np(self, i: int, j: int) -> Fraction:
        pairing = self.local.pairing or {}
        return Fraction(pairing.get((i, j), 0))

    def _pair_pn(self, i: int, j: int) -> Fraction:
        # <x_1|y_-1> from the stored <y_-1|x_1>: sign -(-1)^((p+1)(q+1)).
        val = self._pair_np(j, i)
        if not val:
            return val
        p = self.local.parities_at(1)[i]
        q = self.local.parities_at(-1)[j]
        return -val if (p + 1) * (q + 1) % 2 == 0 else val

    # -- normal form ---------------------------------------------------------

    def _norm(self, word) -> dict:
        cached = self._norm_cache.get(word)
        if cached is not None:
            return cached
        if len(word) > self.cap:
            raise ValueError(
                "word length exceeds the cap of %d letters" % self.cap)
        out = None
        for i in range(len(word) - 1):
            (da, ia), (db, ib) = word[i], word[i + 1]
            swap = (da != 0 and db == 0) or (da == 0 == db and ia > ib)
            if swap:
                sign = -_ONE if self.letter_parity(word[i]) and \
                    self.letter_parity(word[i + 1]) else _ONE
                swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
                out = {w: sign * c for w, c in self._norm(swapped).items()}
                br = self.local.bracket(da, ia, db, ib)
                for k, c in br.items():
                    rep = word[:i] + ((da, k),) + word[i + 2:]
                    out = _acc(out, self._norm(rep), c)
                break
            if da == 0 == db and ia == ib and self.letter_parity(word[i]):
                out = {}
                br = self.local.bracket(0, ia, 0, ia)
                for k, c in br.items():
                    rep = word[:i] + ((0, k),) + word[i + 2:]
                    out = _acc(out, self._norm(rep), c * _HALF)
                break
        if out is None:
            signs = {deg for deg, _ in word if deg != 0}
            assert len(signs) <= 1, "mixed wings in a canonical word"
            out = {word: _ONE}
        self._norm_cache[word] = out
        return out

    def _tail_sign(self, word) -> int:
        for deg, _ in word:
            if deg != 0:
                return deg
        return 0

    def _tu(self, word) -> dict:
        """Rewrite a canonical word with the degree-0 block on the right."""
        for i in range(len(word) - 1):
            (da, ia), (db, ib) = word[i], word[i + 1]
            if da == 0 and db != 0:
                sign = -_ONE if self.letter_parity(word[i]) and \
                    self.letter_parity(word[i + 1]) else _ONE
                swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
                out = {w: sign * c for w, c in self._tu(swapped).items()}
                br = self.local.bracket(da, ia, db, ib)
                for k, c in br.items():
                    rep = word[:i] + ((db, k),) + word[i + 2:]
                    out = _acc(out, self._tu(rep), c)
                return out
        return {word: _ONE}

    # -- product ---------------------------------------------------------------

    def _core(self, x, y) -> dict:
        """The two-letter reduction of opposite-wing letters x y."""
        (dx, ix), (_, iy) = x, y
        out: dict = {}
        if dx == -1:
            br = self.local.bracket(1, iy, -1, ix)
            for k, c in br.items():
                out = _acc(out, {((0, k),): -c})
            pv = self._pair_np(ix, iy)
        else:
            br = self.local.bracket(-1, iy, 1, ix)
            for k, c in br.items():
                out = _acc(out, {((0, k),): c})
            pv = self._pair_pn(ix, iy)
            if pv:
                out = _acc(out, {(): pv})
        if pv:
            for k, c in self.local.grading.items():
                out = _acc(out, {((0, k),): pv * c})
        return out

    def _wprod(self, w1, w2) -> dict:
        if not w1 or not w2:
            return {w1 + w2: _ONE}
        key = (w1, w2)
        cached = self._prod_cache.get(key)
        if cached is not None:
            return cached
        s1 = self._tail_sign(w1)
        s2 = self._tail_sign(w2)
        if s1 == 0 or s2 == 0 or s1 == s2:
            out = self._norm(w1 + w2)
        else:
            out = {}
            x = w1[-1]
            head = w1[:-1]
            for tu_word, c in self._tu(w2).items():
                if not tu_word or tu_word[0][0] == 0:
                    out = _acc(out, self._norm(w1 + tu_word), c)
                    continue
                y = tu_word[0]
                rest = self._norm(tu_word[1:])
                for cw, cc in self._core(x, y).items():
                    for hw, hc in self._norm(head + cw).items():
                        for rw, rc in rest.items():
                            out = _acc(out, self._wprod(hw, rw),
                                       c * cc * hc * rc)
        self._prod_cache[key] = out
        return out

    def product(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                c = c1 * c2
                if c:
                    out = _acc(out, self._wprod(w1, w2), c)
        return out

    def commutator(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for w1, c1 in a.items():
            p1 = self.word_parity(w1)
            for w2, c2 in b.items():
                c = c1 * c2
                if not c:
                    continue
                out = _acc(out, self._wprod(w1, w2), c)
                sign = -_ONE if p1 and self.word_parity(w2) else _ONE
                out = _acc(out, self._wprod(w2, w1), -sign * c)
        return out

    def associator(self, x: dict, z: dict, y: dict) -> dict:
        left = self.product(self.product(x, z), y)
        return _acc(left, self.product(x, self.product(z, y)), -_ONE)

    # -- degree-0 values ---------------------------------------------------

    def zero_coords(self, el: dict) -> dict:
        """Sparse coordinates of an element supported on words of length at
        most one, keys 0..nzero with 0 the scalar slot."""
        coords: dict = {}
        for w, c in el.items():
            if not w:
                coords[0] = coords.get(0, 0) + c
            elif len(w) == 1 and w[0][0] == 0:
                k = 1 + w[0][1]
                coords[k] = coords.get(k, 0) + c
            else:
                raise ValueError(
                    "value is not supported on degree-0 letters")
        return {k: c for k, c in coords.items() if c}


# ---------------------------------------------------------------------------
# Sparse weight-blocked linear algebra


class WeightedSolver:
    """Express sparse vectors over a family of weight-tagged columns.

    Vectors of one weight only ever involve the columns of that weight, so
    each solve is a small dense system over the rows those columns touch.
    """

    def __init__(self, columns: list, weights: list):
        self.columns = columns
        self.blocks: dict = {}
        for j, w in enumerate(weights):
            self.blocks.setdefault(tuple(w), []).append(j)
        self._mats: dict = {}

    def _block(self, w):
        hit = self._mats.get(w)
        if hit is None:
            cols = self.blocks.get(w, [])
            rows = sorted({r for j in cols for r in self.columns[j]})
            rindex = {r: i for i, r in enumerate(rows)}
            mat = RatMatrix(max(len(rows), 1), len(cols),
                            {(rindex[r], jj): c
                             for jj, j in enumerate(cols)
                             for r, c in self.columns[j].items()})
            hit = (cols, rindex, mat)
            self._mats[w] = hit
        return hit

    def express(self, vec: dict, weight) -> dict | None:
        """Coefficients over the global column indices, or None."""
        if not vec:
            return {}
        cols, rindex, mat = self._block(tuple(weight))
        if not cols:
            return None
        rhs = [Fraction(0)] * mat.rows
        for r, c in vec.items():
            if r not in rindex:
                return None
            rhs[rindex[r]] = c
        sol = solve(mat, rhs)
        if sol is None:
            return None
        return {cols[jj]: c for jj, c in enumerate(sol) if c}


def _grow_span(span: list, vec: dict) -> dict | None:
    """Reduce vec against leading-index-reduced sparse vectors; append and
    return the reduced vector if independent, else None."""
    v = dict(vec)
    for b in span:
        lead = min(b)
        if v.get(lead):
            c = v[lead] / b[lead]
            for i, x in b.items():
                s = v.get(i, 0) - c * x
                if s:
                    v[i] = s
                else:
                    v.pop(i, None)
    if not v:
        return None
    span.append(v)
    span.sort(key=min)
    return v


class WeightedSpan:
    """Per-weight Gaussian span of sparse vectors."""

    def __init__(self):
        self.by_weight: dict = {}

    def add(self, vec: dict, weight) -> bool:
        if not vec:
            return False
        span = self.by_weight.setdefault(tuple(weight), [])
        return _grow_span(span, vec) is not None

    def dim(self) -> int:
        return sum(len(sp) for sp in self.by_weight.values())

    def basis(self) -> list:
        """(weight, vector) pairs in deterministic order, scaled to unit
        leading coefficient."""
        out = []
        for w in sorted(self.by_weight):
            for v in self.by_weight[w]:
                lead = min(v)
                out.append((w, {i: c / v[lead] for i, c in v.items()}))
        return out


# ---------------------------------------------------------------------------
# Restriction helpers


def root_subalgebra(data, local: LocalSuperalgebra, nodes) -> list:
    """Degree-0 basis vectors of the subalgebra spanned by the Cartan
    generators of the given nodes and the root vectors of roots supported
    on them.

    Expects a local part built from Cartan data, whose degree-0 names are
    the Chevalley names followed by the extension generator.
    """
    nodes = set(nodes)
    out = []
    for i, name in enumerate(local.zero_names):
        if name[0] == "h" and len(name) == 2 and name[1] in nodes:
            out.append({i: _ONE})
        elif name[0] in ("e", "f") and len(name) == 2:
            coords = data.root_coords(local.zero_weights[i])
            if all(c == 0 for j, c in enumerate(coords) if j not in nodes):
                out.append({i: _ONE})
    return out


def gminus_nodes(data) -> tuple:
    """Nodes whose weight labels vanish: the subdiagram left after removing
    the support of the weight."""
    return tuple(j for j in range(len(data.lam)) if data.lam[j] == 0)


def _vec_weight(local: LocalSuperalgebra, vec: dict) -> tuple:
    weights = {tuple(local.zero_weights[i]) for i in vec}
    if len(weights) != 1:
        raise ValueError("vector is not weight-homogeneous")
    return weights.pop()


# ---------------------------------------------------------------------------
# Cartanification


@dataclass
class Cartanification:
    """A local cartanification: quotient local part plus class maps.

    ``minus1_class`` sends a degree -1 word element to its coordinates over
    the quotient minus basis, ``zero_class`` a degree-0 vector of the
    original local part to the quotient's degree-0 coordinates.
    """

    local: LocalSuperalgebra | None
    provenance: str
    restriction: tuple | None
    candidate_count: int
    kernel_dim: int
    graded: GradedSuperalgebra | None = None
    engine: LocAlgebra | None = field(repr=False, default=None)
    zero_basis: list | None = field(repr=False, default=None)
    minus_words: list | None = field(repr=False, default=None)
    _class_solver: WeightedSolver | None = field(repr=False, default=None)
    _zero_solver: WeightedSolver | None = field(repr=False, default=None)

    def action_coords(self, el: dict) -> dict:
        """Sparse action of a degree -1 element on the plus wing: keys
        (plus index, slot) with slot 1 + k the k-th degree-0 coordinate and
        slot 0 the scalar."""
        eng = self.engine
        out: dict = {}
        for q in range(eng.local.npos):
            z = eng.from_vec(1, {q: _ONE})
            for k, c in eng.zero_coords(eng.commutator(el, z)).items():
                out[(q, k)] = c
        return out

    def minus1_class(self, el: dict) -> dict:
        """Class of a degree -1 element over the quotient minus basis."""
        if not el:
            return {}
        target = self.action_coords(el)
        if not target:
            return {}
        weight = self.engine.element_weight(el)
        sol = self._class_solver.express(target, weight)
        if sol is None:
            raise ValueError("element acts outside the cartanification")
        return sol

    def solve_action(self, action: dict, weight) -> dict | None:
        """Class coordinates whose action on the plus wing equals
        ``action`` (keys (plus index, 1 + zero index)), or None."""
        if not action:
            return {}
        return self._class_solver.express(action, tuple(weight))

    def zero_class(self, vec: dict) -> dict:
        """Quotient degree-0 coordinates of an original degree-0 vector."""
        vec = {i: Fraction(c) for i, c in vec.items() if c}
        if not vec:
            return {}
        sol = self._zero_solver.express(
            vec, _vec_weight(self.engine.local, vec))
        if sol is None:
            raise ValueError("vector lies outside the degree-0 image span")
        return sol


def local_cartanification(local: LocalSuperalgebra, restriction=None,
                          seed=None, provenance=None) -> Cartanification:
    """Quotient of the degree -1 words x_{-1} y_0 by the kernel of their
    action on the plus wing, packaged as a local superalgebra.

    ``restriction``: degree-0 vectors spanning a subalgebra; keeps the
    submodule generated by the classes of f_0 y_0 over it.  ``seed``
    overrides the minus vector playing the role of f_0 (default: index 0).
    """
    eng = LocAlgebra(local)
    nneg, nzero, npos = local.nneg, local.nzero, local.npos

    rbasis = None
    if restriction is not None:
        rbasis = [{i: Fraction(c) for i, c in v.items() if c}
                  for v in restriction]
        rsolver = WeightedSolver(
            rbasis, [_vec_weight(local, v) for v in rbasis])
        for a in rbasis:
            for b in rbasis:
                br = local.bracket_vec(0, a, 0, b)
                if br and rsolver.express(
                        br, _vec_weight(local, br)) is None:
                    raise ValueError("restriction is not a subalgebra")

    # Candidate words x_p u_j over the full degree-0 part, grouped by
    # weight; the action matrix, its kernel and its pivots all decompose
    # by weight because every map in sight is weight-homogeneous.
    shell = Cartanification(local=None, provenance="", restriction=None,
                            candidate_count=nneg * nzero, kernel_dim=0,
                            engine=eng)
    pairs = []
    cands = []
    cand_weights = []
    cand_actions = []
    for p in range(nneg):
        for j in range(nzero):
            el = eng.product(eng.from_vec(-1, {p: _ONE}),
                             eng.from_vec(0, {j: _ONE}))
            pairs.append((p, j))
            cands.append(el)
            cand_weights.append(wsum(local.neg_weights[p],
                                     local.zero_weights[j]))
            cand_actions.append(shell.action_coords(el))

    blocks: dict = {}
    for idx, w in enumerate(cand_weights):
        blocks.setdefault(w, []).append(idx)

    pivots: list = []
    kernel: list = []   # (weight, sparse dict over candidate indices)
    for w in sorted(blocks):
        blk = blocks[w]
        rows = sorted({r for j in blk for r in cand_actions[j]})
        rindex = {r: i for i, r in enumerate(rows)}
        mat = RatMatrix(max(len(rows), 1), len(blk),
                        {(rindex[r], jj): c for jj, j in enumerate(blk)
                         for r, c in cand_actions[j].items()})
        _, piv = rref(mat)
        pivots.extend(blk[jj] for jj in piv)
        for kv in kernel_basis(mat):
            kernel.append((w, {blk[jj]: c for jj, c in enumerate(kv) if c}))

    # The kernel is the peripheral ideal; it must be stable under the
    # degree-0 action for the quotient to close, so check that each
    # bracket of a kernel element still acts by zero.
    for w, kv in kernel:
        el: dict = {}
        for j, c in kv.items():
            el = _acc(el, cands[j], c)
        for u in range(nzero):
            moved = eng.commutator(eng.from_vec(0, {u: _ONE}), el)
            if moved and shell.action_coords(moved):
                raise ValueError("peripheral kernel is not invariant "
                                 "under degree-0 brackets")

    shell._class_solver = WeightedSolver(
        [cand_actions[j] for j in pivots],
        [cand_weights[j] for j in pivots])

    def weak_element(cls: dict) -> dict:
        el: dict = {}
        for t, c in cls.items():
            el = _acc(el, cands[pivots[t]], c)
        return el

    if restriction is None:
        minus_basis = [({t: _ONE}, cand_weights[pivots[t]])
                       for t in range(len(pivots))]
        provenance = provenance or "weak"
    else:
        # Seed with f_0 y_0 and close under the degree-0 action inside the
        # weak quotient.
        f0 = eng.from_vec(-1, dict(seed) if seed else {0: _ONE})
        span = WeightedSpan()
        queue = []
        for y in rbasis:
            el = eng.product(f0, eng.from_vec(0, y))
            cls = shell.minus1_class(el)
            if not cls:
                continue
            w = eng.element_weight(el)
            if span.add(cls, w):
                queue.append((w, cls))
        while queue:
            w, cls = queue.pop()
            el = weak_element(cls)
            for u in range(nzero):
                moved = eng.commutator(eng.from_vec(0, {u: _ONE}), el)
                if not moved:
                    continue
                mcls = shell.minus1_class(moved)
                if not mcls:
                    continue
                mw = wsum(local.zero_weights[u], w)
                if span.add(mcls, mw):
                    queue.append((mw, mcls))
        minus_basis = [(v, w) for w, v in span.basis()]
        provenance = provenance or "custom"

    # Quotient minus wing.
    minus_els = []
    minus_actions = []
    neg_names = []
    neg_weights = []
    neg_parities = []
    for t, (v, w) in enumerate(minus_basis):
        el = weak_element(v)
        minus_els.append(el)
        minus_actions.append(shell.action_coords(el))
        p, j = pairs[pivots[min(v)]]
        neg_names.append(("w", t))
        neg_weights.append(tuple(w))
        neg_parities.append(
            (local.neg_parities[p] + local.zero_parities[j]) % 2)

    class_solver = WeightedSolver(minus_actions, neg_weights)

    # Degree-0 part: bracket closure of the action image.
    zspan = WeightedSpan()
    zqueue = []
    for act in minus_actions:
        per_q: dict = {}
        for (q, k), c in act.items():
            assert k > 0, "pairing leaks into the action image"
            per_q.setdefault(q, {})[k - 1] = c
        for vec in per_q.values():
            w = _vec_weight(local, vec)
            if zspan.add(vec, w):
                zqueue.append((w, dict(vec)))
    while zqueue:
        w, vec = zqueue.pop()
        others = [v for sp in zspan.by_weight.values() for v in sp]
        for vec2 in others:
            br = local.bracket_vec(0, vec, 0, vec2)
            if br:
                bw = _vec_weight(local, br)
                if zspan.add(br, bw):
                    zqueue.append((bw, dict(br)))
    zero_pairs = zspan.basis()
    zero_basis = [v for _, v in zero_pairs]
    zero_wts = [tuple(w) for w, _ in zero_pairs]
    zero_solver = WeightedSolver(zero_basis, zero_wts)

    def in_zero(vec: dict, weight) -> dict:
        out = zero_solver.express(vec, weight)
        if out is None:
            raise ValueError("degree-0 image span is not closed")
        return out

    # Structure constants of the quotient local part.
    b00 = {}
    for s, us in enumerate(zero_basis):
        for t, ut in enumerate(zero_basis):
            br = local.bracket_vec(0, us, 0, ut)
            if br:
                b00[(s, t)] = in_zero(br, wsum(zero_wts[s], zero_wts[t]))
    b0p = {}
    for s, us in enumerate(zero_basis):
        for q in range(npos):
            br = local.bracket_vec(0, us, 1, {q: _ONE})
            if br:
                b0p[(s, q)] = br
    b0m = {}
    for s, us in enumerate(zero_basis):
        for t, el in enumerate(minus_els):
            moved = eng.commutator(eng.from_vec(0, us), el)
            if not moved:
                continue
            target = shell.action_coords(moved)
            if not target:
                continue
            w = wsum(zero_wts[s], neg_weights[t])
            cls = class_solver.express(target, w)
            if cls is None:
                raise ValueError("degree -1 classes are not closed under "
                                 "the degree-0 action")
            if cls:
                b0m[(s, t)] = cls
    # [z_q, w_t] from the stored action [w_t, z_q] by super-antisymmetry.
    bpm = {}
    for t, act in enumerate(minus_actions):
        per_q: dict = {}
        for (q, k), c in act.items():
            per_q.setdefault(q, {})[k - 1] = c
        for q, vec in per_q.items():
            cls = in_zero(vec, _vec_weight(local, vec))
            if cls:
                sign = -_ONE if (local.pos_parities[q]
                                 and neg_parities[t]) else _ONE
                bpm[(q, t)] = {k: -sign * c for k, c in cls.items()}

    zero_names = [("u", t) for t in range(len(zero_basis))]
    zero_pars = [local.zero_parities[min(v)] for v in zero_basis]

    result = Cartanification(
        local=None, provenance=provenance,
        restriction=tuple(tuple(sorted(v.items())) for v in rbasis)
        if rbasis is not None else None,
        candidate_count=len(cands), kernel_dim=len(kernel),
        engine=eng, zero_basis=zero_basis, minus_words=minus_els,
        _class_solver=class_solver, _zero_solver=zero_solver)

    grading = None
    if local.grading:
        try:
            grading = result.zero_class(dict(local.grading))
        except ValueError:
            grading = None

    embedding = None
    if local.embedding:
        embedding = {}
        for name, vec in local.embedding.items():
            try:
                embedding[name] = result.zero_class(dict(vec))
            except ValueError:
                continue

    result.local = LocalSuperalgebra(
        neg_names=neg_names, neg_weights=neg_weights,
        neg_parities=neg_parities,
        zero_names=zero_names, zero_weights=zero_wts,
        zero_parities=zero_pars,
        pos_names=list(local.pos_names),
        pos_weights=[tuple(w) for w in local.pos_weights],
        pos_parities=list(local.pos_parities),
        b00=b00, b0m=b0m, b0p=b0p, bpm=bpm,
        pairing=None, grading=grading, embedding=embedding)
    return result


def cartanify(local: LocalSuperalgebra, degree_range=(-4, 1),
              restriction=None, seed=None,
              provenance=None) -> Cartanification:
    """Local cartanification followed by the minimal graded extension."""
    result = local_cartanification(local, restriction=restriction,
                                   seed=seed, provenance=provenance)
    result.graded = minimal_extension(result.local, degree_range)
    return result
