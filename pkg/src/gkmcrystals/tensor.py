"""Tensor products of crystals.

The statistics of a product are

    wt(b ⊗ b') = wt(b) + wt(b')
    eps_i      = max(eps_i(b), eps_i(b') - wt_i(b))
    phi_i      = max(phi_i(b) + wt_i(b'), phi_i(b'))

and the operators act on one side chosen by comparing phi of the left
factor with eps of the right factor.  Lowering always picks a side;
raising at an imaginary index has a dead band of width -a_ii in which
the result is the crystal zero:

    f_i:  left  iff phi_i(b) >  eps_i(b')
    e_i (real):      left iff phi_i(b) >= eps_i(b')
    e_i (imaginary): left iff phi_i(b) >  eps_i(b') - a_ii
                     zero iff eps_i(b') < phi_i(b) <= eps_i(b') - a_ii
                     right iff phi_i(b) <= eps_i(b')

``TensorCrystal`` stores n-ary products flat and evaluates them
left-associated; ``verify_associativity`` keeps the change of
bracketing an executable fact rather than an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass

from .checks import CheckReport
from .crystals import Crystal

LEFT = "left"
RIGHT = "right"
ZERO = "zero"


def lowering_side(phi_left, eps_right) -> str:
    return LEFT if phi_left > eps_right else RIGHT


def raising_side(is_real: bool, a_ii: int, phi_left, eps_right) -> str:
    if is_real:
        return LEFT if phi_left >= eps_right else RIGHT
    if phi_left > eps_right - a_ii:
        return LEFT
    if phi_left <= eps_right:
        return RIGHT
    return ZERO


@dataclass(frozen=True)
class TensorElement:
    """Flat ordered tuple of at least two non-tensor factors."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise ValueError("tensor elements need at least two factors")
        if any(isinstance(f, TensorElement) for f in self.factors):
            raise ValueError("tensor elements must be flat")


class TensorCrystal(Crystal):
    """Tensor product of crystals over one datum, stored flat.

    Nested tensor factors are spliced in, so products of products stay
    flat and evaluation is left-associated throughout.
    """

    def __init__(self, *factors):
        flat = []
        for c in factors:
            if isinstance(c, TensorCrystal):
                flat.extend(c.factors)
            else:
                flat.append(c)
        if len(flat) < 2:
            raise ValueError("a tensor crystal needs at least two factors")
        datum = flat[0].datum
        for c in flat[1:]:
            if c.datum != datum:
                raise ValueError("all factors must share one Borcherds-Cartan datum")
        super().__init__(datum)
        self.factors = tuple(flat)

    def element(self, *parts) -> TensorElement:
        flat = []
        for p in parts:
            if isinstance(p, TensorElement):
                flat.extend(p.factors)
            else:
                flat.append(p)
        if len(flat) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} factors, got {len(flat)}")
        return TensorElement(tuple(flat))

    def _pairs(self, b: TensorElement):
        if len(b.factors) != len(self.factors):
            raise ValueError("element does not belong to this tensor crystal")
        return list(zip(self.factors, b.factors))

    def wt(self, b):
        return _weight(self._pairs(b))

    def eps(self, i, b):
        return _eps(self.datum, i, self._pairs(b))

    def phi(self, i, b):
        return _phi(self.datum, i, self._pairs(b))

    def f(self, i, b):
        parts = _lower(self.datum, i, self._pairs(b))
        return None if parts is None else TensorElement(tuple(parts))

    def e(self, i, b):
        parts = _raise(self.datum, i, self._pairs(b))
        return None if parts is None else TensorElement(tuple(parts))


def _weight(pairs):
    w = pairs[0][0].wt(pairs[0][1])
    for crystal, elt in pairs[1:]:
        w = w + crystal.wt(elt)
    return w


def _eps(datum, i, pairs):
    if len(pairs) == 1:
        crystal, elt = pairs[0]
        return crystal.eps(i, elt)
    left, (crystal, elt) = pairs[:-1], pairs[-1]
    return max(_eps(datum, i, left), crystal.eps(i, elt) - datum.pairing(i, _weight(left)))


def _phi(datum, i, pairs):
    if len(pairs) == 1:
        crystal, elt = pairs[0]
        return crystal.phi(i, elt)
    left, (crystal, elt) = pairs[:-1], pairs[-1]
    wt_last = datum.pairing(i, crystal.wt(elt))
    return max(_phi(datum, i, left) + wt_last, crystal.phi(i, elt))


def _lower(datum, i, pairs):
    if len(pairs) == 1:
        crystal, elt = pairs[0]
        r = crystal.f(i, elt)
        return None if r is None else [r]
    left, (crystal, elt) = pairs[:-1], pairs[-1]
    if lowering_side(_phi(datum, i, left), crystal.eps(i, elt)) == LEFT:
        parts = _lower(datum, i, left)
        return None if parts is None else parts + [elt]
    r = crystal.f(i, elt)
    return None if r is None else [p[1] for p in left] + [r]


def _raise(datum, i, pairs):
    if len(pairs) == 1:
        crystal, elt = pairs[0]
        r = crystal.e(i, elt)
        return None if r is None else [r]
    left, (crystal, elt) = pairs[:-1], pairs[-1]
    side = raising_side(
        datum.is_real(i), datum.a(i, i), _phi(datum, i, left), crystal.eps(i, elt)
    )
    if side == ZERO:
        return None
    if side == LEFT:
        parts = _raise(datum, i, left)
        return None if parts is None else parts + [elt]
    r = crystal.e(i, elt)
    return None if r is None else [p[1] for p in left] + [r]


# ---------------------------------------------------------------------------
# Explicit bracket trees.  The flat representation above is justified by
# associativity; the bracket algebra below keeps that fact checkable.


@dataclass(frozen=True)
class BracketLeaf:
    crystal: object
    elt: object


@dataclass(frozen=True)
class BracketPair:
    left: object
    right: object


def bracket_wt(tree):
    if isinstance(tree, BracketLeaf):
        return tree.crystal.wt(tree.elt)
    return bracket_wt(tree.left) + bracket_wt(tree.right)


def bracket_eps(datum, i, tree):
    if isinstance(tree, BracketLeaf):
        return tree.crystal.eps(i, tree.elt)
    return max(
        bracket_eps(datum, i, tree.left),
        bracket_eps(datum, i, tree.right) - datum.pairing(i, bracket_wt(tree.left)),
    )


def bracket_phi(datum, i, tree):
    if isinstance(tree, BracketLeaf):
        return tree.crystal.phi(i, tree.elt)
    return max(
        bracket_phi(datum, i, tree.left) + datum.pairing(i, bracket_wt(tree.right)),
        bracket_phi(datum, i, tree.right),
    )


def bracket_lower(datum, i, tree):
    if isinstance(tree, BracketLeaf):
        r = tree.crystal.f(i, tree.elt)
        return None if r is None else BracketLeaf(tree.crystal, r)
    side = lowering_side(bracket_phi(datum, i, tree.left), bracket_eps(datum, i, tree.right))
    if side == LEFT:
        sub = bracket_lower(datum, i, tree.left)
        return None if sub is None else BracketPair(sub, tree.right)
    sub = bracket_lower(datum, i, tree.right)
    return None if sub is None else BracketPair(tree.left, sub)


def bracket_raise(datum, i, tree):
    if isinstance(tree, BracketLeaf):
        r = tree.crystal.e(i, tree.elt)
        return None if r is None else BracketLeaf(tree.crystal, r)
    side = raising_side(
        datum.is_real(i),
        datum.a(i, i),
        bracket_phi(datum, i, tree.left),
        bracket_eps(datum, i, tree.right),
    )
    if side == ZERO:
        return None
    if side == LEFT:
        sub = bracket_raise(datum, i, tree.left)
        return None if sub is None else BracketPair(sub, tree.right)
    sub = bracket_raise(datum, i, tree.right)
    return None if sub is None else BracketPair(tree.left, sub)


def bracket_leaves(tree):
    if tree is None:
        return None
    if isinstance(tree, BracketLeaf):
        return (tree.elt,)
    return bracket_leaves(tree.left) + bracket_leaves(tree.right)


def reassociate(tree: BracketPair) -> BracketPair:
    """((x ⊗ y) ⊗ z)  ->  (x ⊗ (y ⊗ z)), leaving subtrees untouched."""
    if not (isinstance(tree, BracketPair) and isinstance(tree.left, BracketPair)):
        raise ValueError("expected a left-nested pair")
    return BracketPair(tree.left.left, BracketPair(tree.left.right, tree.right))


def verify_associativity(g1, g2, g3) -> CheckReport:
    """Exhaustively compare the two bracketings over three graphs.

    For every element triple and every index, the weights, statistics
    and both operator actions must agree after flattening.  Exact
    equality; any mismatch is reported with the offending triple.
    """
    for g in (g1, g2, g3):
        if g.crystal is None:
            raise ValueError("associativity check needs graphs that carry their crystal")
    datum = g1.datum
    if g2.datum != datum or g3.datum != datum:
        raise ValueError("graphs must share one datum")
    rep = CheckReport()
    for b1 in g1.elements():
        leaf1 = BracketLeaf(g1.crystal, b1)
        for b2 in g2.elements():
            leaf2 = BracketLeaf(g2.crystal, b2)
            for b3 in g3.elements():
                leaf3 = BracketLeaf(g3.crystal, b3)
                lhs = BracketPair(BracketPair(leaf1, leaf2), leaf3)
                rhs = reassociate(lhs)
                tag = (b1, b2, b3)
                rep.checked += 1
                if bracket_wt(lhs) != bracket_wt(rhs):
                    rep.add(tag, None, "assoc_wt", bracket_wt(lhs), bracket_wt(rhs))
                for i in datum.indices():
                    rep.checked += 4
                    le, re_ = bracket_eps(datum, i, lhs), bracket_eps(datum, i, rhs)
                    if le != re_:
                        rep.add(tag, i, "assoc_eps", le, re_)
                    lp, rp = bracket_phi(datum, i, lhs), bracket_phi(datum, i, rhs)
                    if lp != rp:
                        rep.add(tag, i, "assoc_phi", lp, rp)
                    lf = bracket_leaves(bracket_lower(datum, i, lhs))
                    rf = bracket_leaves(bracket_lower(datum, i, rhs))
                    if lf != rf:
                        rep.add(tag, i, "assoc_f", lf, rf)
                    lr = bracket_leaves(bracket_raise(datum, i, lhs))
                    rr = bracket_leaves(bracket_raise(datum, i, rhs))
                    if lr != rr:
                        rep.add(tag, i, "assoc_e", lr, rr)
    return rep
