"""The abstract-crystal interface and its one-point and one-index models.

A crystal over a Borcherds-Cartan datum is a set B with a weight map
wt: B -> P, operators e_i, f_i: B -> B ∪ {0} and statistics
eps_i, phi_i: B -> Z ∪ {-inf}.  Crystal classes here expose exactly that
surface; elements are inert hashable values, all structure lives on the
crystal, and the crystal zero is represented by None.

Three concrete crystals are provided:

* ``ElementaryCrystal`` -- the chain {b_i(-n) : n >= 0} on which only
  index i acts;
* ``ShiftCrystal``      -- the one-point crystal of weight lam (usually
  written T_lam) with eps = phi = -inf, used to shift highest weights;
* ``UnitCrystal``       -- the one-point crystal {c} of weight 0 with
  eps = phi = 0, the gate that kills lowering once phi drops to 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import NEG_INF, BorcherdsCartanDatum, Weight


class Crystal:
    """Interface: wt / eps / phi / e / f over hashable elements.

    ``e`` and ``f`` return None for the crystal zero.  Implementations
    are pure functions of immutable data and safe to share.
    """

    def __init__(self, datum: BorcherdsCartanDatum):
        self.datum = datum

    def wt(self, b) -> Weight:
        raise NotImplementedError

    def eps(self, i: int, b):
        raise NotImplementedError

    def phi(self, i: int, b):
        raise NotImplementedError

    def e(self, i: int, b):
        raise NotImplementedError

    def f(self, i: int, b):
        raise NotImplementedError

    def wt_i(self, i: int, b) -> int:
        return self.datum.pairing(i, self.wt(b))


@dataclass(frozen=True)
class ElementaryElement:
    """b_index(-steps) with steps >= 0; steps counts lowerings from the top."""

    index: int
    steps: int

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("elementary elements live at nonpositive positions")


@dataclass(frozen=True)
class ShiftElement:
    weight: Weight


@dataclass(frozen=True)
class UnitElement:
    pass


class ElementaryCrystal(Crystal):
    """The elementary crystal on index i.

    Operator table, with n = steps:

        wt b_i(-n) = -n alpha_i
        e_i b_i(-n) = b_i(-n+1)   (zero at n = 0)
        f_i b_i(-n) = b_i(-n-1)
        eps_i = n,  phi_i = -n             for real i
        eps_i = 0,  phi_i = -n a_ii        for imaginary i
        e_j = f_j = 0, eps_j = phi_j = -inf  for j != i
    """

    def __init__(self, datum, index: int):
        super().__init__(datum)
        if not 0 <= index < datum.size:
            raise ValueError(f"index {index} out of range")
        self.index = index

    def element(self, steps: int) -> ElementaryElement:
        return ElementaryElement(self.index, steps)

    def top(self) -> ElementaryElement:
        return ElementaryElement(self.index, 0)

    def wt(self, b):
        return self.datum.alpha(self.index).scaled(-b.steps)

    def eps(self, i, b):
        if i != self.index:
            return NEG_INF
        return b.steps if self.datum.is_real(i) else 0

    def phi(self, i, b):
        if i != self.index:
            return NEG_INF
        if self.datum.is_real(i):
            return -b.steps
        return -b.steps * self.datum.a(i, i)

    def e(self, i, b):
        if i != self.index or b.steps == 0:
            return None
        return ElementaryElement(self.index, b.steps - 1)

    def f(self, i, b):
        if i != self.index:
            return None
        return ElementaryElement(self.index, b.steps + 1)


class ShiftCrystal(Crystal):
    """One-point crystal of weight lam: all operators vanish and every
    statistic is -inf, so it shifts weights without gating operators."""

    def __init__(self, datum, lam: Weight):
        super().__init__(datum)
        if len(lam.lam) != datum.size:
            raise ValueError("weight size does not match the datum")
        self.lam = lam

    def element(self) -> ShiftElement:
        return ShiftElement(self.lam)

    def wt(self, b):
        return b.weight

    def eps(self, i, b):
        return NEG_INF

    def phi(self, i, b):
        return NEG_INF

    def e(self, i, b):
        return None

    def f(self, i, b):
        return None


class UnitCrystal(Crystal):
    """The crystal {c}: weight 0, eps = phi = 0, operators vanish."""

    def element(self) -> UnitElement:
        return UnitElement()

    def wt(self, b):
        return self.datum.zero_weight()

    def eps(self, i, b):
        return 0

    def phi(self, i, b):
        return 0

    def e(self, i, b):
        return None

    def f(self, i, b):
        return None


def sort_key(elt):
    """Total order on crystal elements, used for deterministic node ids.

    Elements of one crystal always share a type, so the per-type tag
    only matters for mixed containers in tests and diagnostics.
    """
    # Imported here to avoid cycles; tensor and string elements are
    # defined in their own modules.
    from .tensor import TensorElement
    from .binfinity import StringElement

    if isinstance(elt, ElementaryElement):
        return (0, elt.index, elt.steps)
    if isinstance(elt, ShiftElement):
        return (1, elt.weight.lam, elt.weight.rt)
    if isinstance(elt, UnitElement):
        return (2,)
    if isinstance(elt, StringElement):
        return (3, elt.x)
    if isinstance(elt, TensorElement):
        return (4, tuple(sort_key(f) for f in elt.factors))
    raise TypeError(f"not a crystal element: {elt!r}")
