"""Comparison map between the relations model and the cartanification.

For Cartan data (A, epsilon, lambda) two graded superalgebras are built
elsewhere in this package: the degree-(-1) slice of the relations model
(:mod:`gradedlie.tha`) and the cartanification of the local contragredient
superalgebra (:mod:`gradedlie.cartan`).  This module constructs the
comparison homomorphism between them and verifies, mechanically and with
exact arithmetic, whether it is an isomorphism in degree -1.

The comparison map ``phi`` sends each lowering generator of the relations
model to a product inside the cartanification,

    phi(f0_i) = class of f0 * h_i        (i in {ext} or i in K),

where ``f0`` is the canonical degree-(-1) generator of the local algebra,
``h_ext`` means the distinguished degree-0 Cartan element ``h0``, and all
degree-0 and degree-(+1) generators map to themselves.  The map respects
degree and parity by construction.

Precondition.  The map is only defined when the completed weight
``lambda^`` (the image of lambda under the extension of the weight lattice
by the grading character) is pseudo-minuscule, i.e. when ``(lambda, beta)``
lies in {0, 1} for every root beta.  When the precondition fails the
functions here raise ``ValueError`` naming the offending root and pairing
value; no verdict is guessed.

Verification is split into independent checks:

* homomorphism -- every defining relation of the relations model evaluates
  to zero in the cartanification under the assignment (``phi_check``);
* pseudo-minuscule identities -- the auxiliary identities that make the
  map well defined hold as stated: ``f0 (h0 + L) = 0``, ``f0 e_beta = 0``
  for every positive root beta with ``(lambda, beta) = 1``, and, when
  lambda equals its completion, ``f0 f_j - [f0, f_j] h_j = 0`` for all
  j with lambda_j != 0;
* surjectivity -- the degree-(-1) layer of the cartanification is spanned
  by the images ``phi(f0_i)`` together with their iterated degree-0
  brackets with the simple root vectors;
* injectivity -- the dimension and weight decomposition of the
  independently enumerated relations-model slice agree with those of the
  cartanification's degree-(-1) layer.

``check_isomorphism`` aggregates the checks into a verdict: "isomorphic"
when every check passes and the structural hypotheses (simple diagram,
pseudo-minuscule lambda, lambda equal to its completion) hold;
"hypotheses not met" when the checks are reported as data but the
hypotheses fail, so no isomorphism claim is made; "mismatch" when the
hypotheses hold but a check fails; "inconclusive" when the enumeration of
the relations model did not stabilize, in which case no boolean is
invented for injectivity.

When K is empty the relations model coincides with the contragredient
model, and the comparison additionally checks the full degree range of
the cartanification against the contragredient construction directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import tha
from .cartan import Cartanification, cartanify
from .contragredient import build_graded, build_local
from .graded import Vec, decompose_at_degree
from .rootsys import (
    CartanData,
    chevalley_realization,
    jk_partition,
    pseudo_minuscule_failure,
)

_ONE = Fraction(1)


def _element_sum(a: dict, b: dict, scale: Fraction = _ONE) -> dict:
    """Sum of two word-algebra elements (word -> coefficient maps)."""
    out = dict(a)
    for word, coeff in b.items():
        value = out.get(word, Fraction(0)) + scale * coeff
        if value:
            out[word] = value
        else:
            out.pop(word, None)
    return out


class _Span:
    """Incremental row reduction over the rationals."""

    def __init__(self) -> None:
        self.rows: list[Vec] = []

    def add(self, vec: Vec) -> bool:
        work = dict(vec)
        for row in self.rows:
            if not work:
                return False
            pivot = max(row)
            if pivot in work:
                c = work[pivot] / row[pivot]
                for key, value in row.items():
                    s = work.get(key, Fraction(0)) - c * value
                    if s:
                        work[key] = s
                    else:
                        work.pop(key, None)
        if work:
            self.rows.append(work)
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def require_pseudo_minuscule(data: CartanData) -> None:
    """Raise unless the completed weight of ``data`` is pseudo-minuscule.

    The completed weight pairs with a root beta to ``(lambda, beta)``, so
    the condition is that this number lies in {0, 1} for every root.  The
    error names the first offending root.
    """
    failure = pseudo_minuscule_failure(data, data.wedge(data.lam))
    if failure is not None:
        root, value = failure
        raise ValueError(
            "pseudo-minuscule precondition fails: the completed weight "
            "pairs with root %s to %s, expected 0 or 1"
            % (tuple(root.coords), value)
        )


@dataclass(frozen=True)
class PhiAssignment:
    """The comparison assignment from relations-model generators.

    ``assignment`` maps each generator name to a ``(degree, vector)`` pair
    in the cartanification's graded algebra; ``family_images`` restricts it
    to the lowering family ``f0_i`` whose images are the degree-(-1)
    classes of the products ``f0 * h_i``.
    """

    data: CartanData
    presentation: tha.Presentation
    cartanification: Cartanification
    assignment: dict
    family_images: dict


def phi_assignment(
    data: CartanData,
    degree_range: tuple[int, int] = (-2, 1),
    cart: Cartanification | None = None,
) -> PhiAssignment:
    """Construct the comparison assignment into the cartanification.

    Requires the pseudo-minuscule precondition; raises ``ValueError``
    naming the failing root otherwise.
    """
    require_pseudo_minuscule(data)
    pres = tha.presentation(data, "W")
    if cart is None:
        cart = cartanify(build_local(data), degree_range=degree_range)
    g = chevalley_realization(data)
    engine = cart.engine
    # degree-0 basis of the local algebra: Chevalley basis, then h0
    h0_index = g.dim

    assignment: dict = {}
    for i in range(data.r):
        p = g.simple_root_index(i)
        assignment[("e", i)] = (0, cart.zero_class({g.index[("e", p)]: _ONE}))
        assignment[("f", i)] = (0, cart.zero_class({g.index[("f", p)]: _ONE}))
        assignment[("h", i)] = (0, cart.zero_class({g.index[("h", i)]: _ONE}))
    assignment[("h0",)] = (0, cart.zero_class({h0_index: _ONE}))
    assignment[("e0",)] = (1, {0: _ONE})

    f0 = engine.from_vec(-1, {0: -_ONE})
    family_images: dict = {}
    for i in pres.family:
        h_index = h0_index if i == tha.EXT else g.index[("h", i)]
        product = engine.product(f0, engine.from_vec(0, {h_index: _ONE}))
        image = cart.minus1_class(product)
        family_images[i] = image
        assignment[("f0", i)] = (-1, image)
    return PhiAssignment(data, pres, cart, assignment, family_images)


def pseudo_minuscule_identities(
    data: CartanData, cart: Cartanification
) -> dict:
    """Verify the identities that make the comparison map well defined.

    All products are formed in the word algebra of the cartanification and
    tested for membership in the defining submodule via the degree-(-1)
    class map.  Checks:

    * ``f0 (h0 + L) = 0`` with ``L`` the grading element;
    * ``f0 e_beta = 0`` for every positive root beta with
      ``(lambda, beta) = 1`` (negative roots pair nonpositively with a
      dominant weight, so only positive roots occur);
    * when lambda equals its completion, ``f0 f_j - [f0, f_j] h_j = 0``
      for every node j with lambda_j != 0.
    """
    g = chevalley_realization(data)
    engine = cart.engine
    h0_index = g.dim
    f0 = engine.from_vec(-1, {0: -_ONE})
    checks = []

    h0_plus_l = _element_sum(
        engine.from_vec(0, {h0_index: _ONE}), engine.grading_element()
    )
    residual = cart.minus1_class(engine.product(f0, h0_plus_l))
    checks.append(
        {"name": "f0-annihilates-h0-plus-grading", "instances": 1,
         "violations": [] if not residual else [{"residual": residual}]}
    )

    raise_violations = []
    instances = 0
    for p, root in enumerate(g.pos_roots):
        if data.bilinear(data.lam, root.labels) != 1:
            continue
        instances += 1
        e_beta = engine.from_vec(0, {g.index[("e", p)]: _ONE})
        residual = cart.minus1_class(engine.product(f0, e_beta))
        if residual:
            raise_violations.append(
                {"root": tuple(root.coords), "residual": residual}
            )
    checks.append(
        {"name": "f0-annihilates-unit-pairing-raisers",
         "instances": instances, "violations": raise_violations}
    )

    if data.wedge(data.lam) == data.lam:
        j_nodes, _ = jk_partition(data)
        j_violations = []
        for j in j_nodes:
            p = g.simple_root_index(j)
            f_j = engine.from_vec(0, {g.index[("f", p)]: _ONE})
            h_j = engine.from_vec(0, {g.index[("h", j)]: _ONE})
            diff = _element_sum(
                engine.product(f0, f_j),
                engine.product(engine.commutator(f0, f_j), h_j),
                Fraction(-1),
            )
            residual = cart.minus1_class(diff)
            if residual:
                j_violations.append({"node": j, "residual": residual})
        checks.append(
            {"name": "f0-lowering-exchange", "instances": len(j_nodes),
             "violations": j_violations}
        )

    for check in checks:
        check["passed"] = not check["violations"]
    return {"passed": all(c["passed"] for c in checks), "checks": checks}


def phi_check(data: CartanData, degree_range: tuple[int, int] = (-2, 1)) -> dict:
    """Check that the comparison assignment is a homomorphism.

    Raises ``ValueError`` naming the failing root when the
    pseudo-minuscule precondition does not hold.  Otherwise evaluates
    every defining relation of the relations model in the cartanification
    under the assignment, together with the pseudo-minuscule identities,
    and reports the outcome.
    """
    phi = phi_assignment(data, degree_range=degree_range)
    relations = tha.check_relations(
        phi.presentation, phi.cartanification.graded, phi.assignment
    )
    identities = pseudo_minuscule_identities(data, phi.cartanification)
    return {
        "passed": relations["passed"] and identities["passed"],
        "relations": relations,
        "identities": identities,
        "assignment": phi,
    }


def hypothesis_record(data: CartanData) -> dict:
    """Record the structural hypotheses of the comparison theorem.

    The verdict "isomorphic" is only issued when all three hold: the
    diagram is connected (the Lie algebra is simple), lambda itself is
    pseudo-minuscule, and lambda equals its completion.  The record also
    stores whether the completion is pseudo-minuscule, which is the
    precondition for the map to exist at all.
    """
    wedge = data.wedge(data.lam)
    return {
        "simple": len(data.components()) == 1,
        "lambda_pseudo_minuscule":
            pseudo_minuscule_failure(data, data.lam) is None,
        "wedge_pseudo_minuscule":
            pseudo_minuscule_failure(data, wedge) is None,
        "lambda_equals_wedge": wedge == data.lam,
    }


def _normalize_decomposition(entries) -> list:
    return sorted(
        (tuple(int(label) for label in labels), int(mult), int(dim))
        for labels, mult, dim in entries
    )


def _generation_rank(phi: PhiAssignment) -> int:
    """Rank of the span of the family images under the degree-0 action."""
    cart = phi.cartanification
    span = _Span()
    frontier = [v for v in phi.family_images.values() if span.add(v)]
    actions = [
        phi.assignment[(kind, i)][1]
        for i in range(phi.data.r)
        for kind in ("e", "f")
    ]
    while frontier:
        next_frontier = []
        for vec in frontier:
            for action in actions:
                _, out = cart.graded.bracket((0, action), (-1, vec))
                if out and span.add(out):
                    next_frontier.append(out)
        frontier = next_frontier
    return span.rank


@dataclass(frozen=True)
class IsoVerdict:
    """Outcome of the degree-(-1) comparison for one set of Cartan data.

    ``verdict`` is one of "isomorphic", "mismatch", "hypotheses not met",
    or "inconclusive".  ``injective`` is ``None`` exactly when the verdict
    is "inconclusive": the enumeration did not stabilize, so no dimension
    comparison is available and none is invented.  ``sides`` holds the
    per-side data (dimensions and weight decompositions) so that failed or
    out-of-hypothesis runs still report what was computed.
    """

    verdict: str
    homomorphism: dict
    identities: dict
    surjective: bool
    injective: bool | None
    hypotheses: dict
    sides: dict
    certificate: dict


def check_isomorphism(
    data: CartanData,
    degree_range: tuple[int, int] = (-2, 1),
    word_cap: int = 16,
) -> IsoVerdict:
    """Decide whether the comparison map is an isomorphism in degree -1.

    Raises ``ValueError`` when the pseudo-minuscule precondition fails.
    Otherwise runs the homomorphism and identity checks, the surjectivity
    span closure, and the injectivity comparison against the independently
    enumerated relations model, and aggregates them into a verdict.  The
    degree range defaults to the smallest window containing every defining
    relation and the compared layer; widening it only adds layers to the
    cartanification.
    """
    hypotheses = hypothesis_record(data)
    phi = phi_assignment(data, degree_range=degree_range)
    cart = phi.cartanification
    homomorphism = tha.check_relations(
        phi.presentation, cart.graded, phi.assignment
    )
    identities = pseudo_minuscule_identities(data, cart)

    cart_dims = cart.graded.dims()
    minus1_dim = cart_dims[-1]
    surjective = _generation_rank(phi) == minus1_dim

    cart_decomposition = _normalize_decomposition(
        decompose_at_degree(cart.graded, -1, data)
    )
    sides: dict = {
        "cartanification": {
            "dims": dict(cart_dims),
            "minus1_dim": minus1_dim,
            "decomposition": cart_decomposition,
        },
    }

    module = tha.build_minus1(phi.presentation, word_cap=word_cap)
    if module.status != "complete":
        sides["relations_model"] = {"status": module.status}
        return IsoVerdict(
            verdict="inconclusive",
            homomorphism=homomorphism,
            identities=identities,
            surjective=surjective,
            injective=None,
            hypotheses=hypotheses,
            sides=sides,
            certificate=dict(module.certificate),
        )

    module_decomposition = _normalize_decomposition(module.decompose())
    sides["relations_model"] = {
        "status": module.status,
        "dim": module.dim,
        "decomposition": module_decomposition,
    }
    injective = (
        module.dim == minus1_dim
        and module_decomposition == cart_decomposition
    )

    direct = True
    if phi.presentation.k_empty:
        contragredient_dims = build_graded(data, degree_range).dims()
        sides["contragredient"] = {"dims": dict(contragredient_dims)}
        direct = contragredient_dims == cart_dims

    passed = (
        homomorphism["passed"]
        and identities["passed"]
        and surjective
        and injective
        and direct
    )
    hypotheses_met = (
        hypotheses["simple"]
        and hypotheses["lambda_pseudo_minuscule"]
        and hypotheses["lambda_equals_wedge"]
    )
    if not hypotheses_met:
        verdict = "hypotheses not met"
    elif passed:
        verdict = "isomorphic"
    else:
        verdict = "mismatch"
    return IsoVerdict(
        verdict=verdict,
        homomorphism=homomorphism,
        identities=identities,
        surjective=surjective,
        injective=injective,
        hypotheses=hypotheses,
        sides=sides,
        certificate=dict(module.certificate),
    )
