"""Borcherds-Cartan data, integral weights, and Z ∪ {-inf} arithmetic.

A Borcherds-Cartan matrix generalizes a Cartan matrix by allowing even
nonpositive diagonal entries.  An index i is *real* when a_ii = 2 and
*imaginary* when a_ii <= 0; every crystal-operator case split downstream
keys off that classification.  The datum also carries positive integer
symmetrizers s_i with s_i a_ij = s_j a_ji.

Weights live in the Z-span of the fundamental weights and the simple
roots and are kept as a formal coordinate pair; the datum evaluates
coroot pairings via <h_i, Lambda_j> = delta_ij and <h_i, alpha_j> = a_ij.

Crystal statistics eps_i, phi_i take values in Z ∪ {-inf}; NEG_INF is
the shared bottom element with saturating arithmetic.  All integer
arithmetic is exact (Python bignums), so overflow cannot occur.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from operator import index as _as_int


class NegInfinity:
    """The bottom element adjoined to Z, printed as -inf.

    Absorbing under addition and minimal under every comparison, which
    is exactly what the crystal statistics need:

        NEG_INF + n == NEG_INF        max(NEG_INF, n) == n

    Only the shared ``NEG_INF`` instance should be used.
    """

    __slots__ = ()

    def __repr__(self):
        return "-inf"

    def __eq__(self, other):
        return isinstance(other, NegInfinity)

    def __ne__(self, other):
        return not isinstance(other, NegInfinity)

    def __hash__(self):
        return hash("gkmcrystals.NEG_INF")

    def __lt__(self, other):
        if isinstance(other, NegInfinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (NegInfinity, int)):
            return True
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (NegInfinity, int)):
            return False
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, NegInfinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (NegInfinity, int)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __neg__(self):
        raise ArithmeticError("negation of -inf leaves Z ∪ {-inf}")


NEG_INF = NegInfinity()

ExtInt = int | NegInfinity


def is_neg_inf(value) -> bool:
    return isinstance(value, NegInfinity)


def ext_to_json(value):
    """Serialize an extended integer; -inf becomes the string "-inf"."""
    return "-inf" if is_neg_inf(value) else value


def ext_from_json(value) -> ExtInt:
    if value == "-inf":
        return NEG_INF
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"not an extended integer: {value!r}")
    return value


@dataclass(frozen=True)
class Weight:
    """Integral weight written over the spanning set {Lambda_i} ∪ {alpha_i}.

    ``lam`` holds the fundamental-weight coefficients and ``rt`` the
    simple-root coefficients.  The pair is a formal coordinate (never
    reduced); equality is componentwise.  Pairing against a coroot is
    done by the datum, which knows the Cartan integers.
    """

    lam: tuple
    rt: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(_as_int(v) for v in self.lam))
        object.__setattr__(self, "rt", tuple(_as_int(v) for v in self.rt))
        if len(self.lam) != len(self.rt):
            raise ValueError("lam and rt parts must have equal length")

    @classmethod
    def zero(cls, size: int) -> "Weight":
        return cls((0,) * size, (0,) * size)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.lam, other.lam, strict=True)),
            tuple(a + b for a, b in zip(self.rt, other.rt, strict=True)),
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.lam), tuple(-a for a in self.rt))

    def scaled(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.lam), tuple(k * a for a in self.rt))

    def is_zero(self) -> bool:
        return not any(self.lam) and not any(self.rt)

    def root_height(self) -> int:
        """Number of simple roots subtracted, i.e. -sum of the rt part."""
        return -sum(self.rt)

    def sort_key(self):
        return (self.root_height(), self.rt, self.lam)


class DatumShapeError(ValueError):
    """Structurally malformed input: not a square integer matrix with
    matching positive symmetrizers.  Distinct from condition violations."""


class DatumConditionError(ValueError):
    """A structurally sound matrix that fails the Borcherds-Cartan
    conditions; carries the full validation report."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.lines()))
        self.report = report


class DatumFormatError(ValueError):
    """A datum file whose JSON payload does not match the schema."""


@dataclass
class DatumViolation:
    condition: str
    message: str

    def __str__(self):
        return f"{self.condition}: {self.message}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, condition: str, message: str):
        self.violations.append(DatumViolation(condition, message))

    def lines(self):
        return [str(v) for v in self.violations]


def validate_cartan_data(matrix, symmetrizers) -> ValidationReport:
    """Check the Borcherds-Cartan conditions on a raw matrix.

    Violations reported (empty report means valid):
      * diagonal     -- a_ii must be 2 or an even nonpositive integer
      * sign         -- a_ij <= 0 for i != j
      * zero-symmetry-- a_ij = 0 exactly when a_ji = 0
      * symmetrizable-- s_i a_ij = s_j a_ji

    Raises DatumShapeError for inputs that are not a square integer
    matrix with matching positive integer symmetrizers.
    """
    rows = list(matrix)
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise DatumShapeError(f"matrix is not square: {n} rows, row of length {len(r)}")
        for v in r:
            if isinstance(v, bool) or not isinstance(v, int):
                raise DatumShapeError(f"matrix entry {v!r} is not an integer")
    syms = list(symmetrizers)
    if len(syms) != n:
        raise DatumShapeError(f"{len(syms)} symmetrizers for a {n}x{n} matrix")
    for s in syms:
        if isinstance(s, bool) or not isinstance(s, int) or s <= 0:
            raise DatumShapeError(f"symmetrizer {s!r} is not a positive integer")

    report = ValidationReport()
    for i in range(n):
        d = rows[i][i]
        if not (d == 2 or (d <= 0 and d % 2 == 0)):
            report.add("diagonal", f"a[{i}][{i}] = {d} is neither 2 nor an even nonpositive integer")
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] > 0:
                report.add("sign", f"a[{i}][{j}] = {rows[i][j]} > 0")
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                report.add(
                    "zero-symmetry",
                    f"a[{i}][{j}] = {rows[i][j]} but a[{j}][{i}] = {rows[j][i]}",
                )
    for i in range(n):
        for j in range(n):
            if syms[i] * rows[i][j] != syms[j] * rows[j][i]:
                report.add(
                    "symmetrizable",
                    f"s[{i}]*a[{i}][{j}] = {syms[i] * rows[i][j]} != "
                    f"s[{j}]*a[{j}][{i}] = {syms[j] * rows[j][i]}",
                )
    return report


@dataclass(frozen=True)
class BorcherdsCartanDatum:
    """A finite Borcherds-Cartan datum: named indices, the Cartan matrix,
    and its symmetrizers.  Immutable and validated at construction."""

    index_names: tuple
    cartan: tuple
    symmetrizers: tuple

    def __post_init__(self):
        object.__setattr__(self, "index_names", tuple(str(s) for s in self.index_names))
        object.__setattr__(self, "cartan", tuple(tuple(row) for row in self.cartan))
        object.__setattr__(self, "symmetrizers", tuple(self.symmetrizers))
        report = validate_cartan_data(self.cartan, self.symmetrizers)
        if not report.ok:
            raise DatumConditionError(report)
        if len(self.index_names) != len(self.cartan):
            raise DatumShapeError(
                f"{len(self.index_names)} index names for a {len(self.cartan)}x{len(self.cartan)} matrix"
            )
        if len(set(self.index_names)) != len(self.index_names):
            raise DatumShapeError("index names must be distinct")

    @property
    def size(self) -> int:
        return len(self.cartan)

    def indices(self):
        return range(self.size)

    def a(self, i: int, j: int) -> int:
        return self.cartan[i][j]

    def is_real(self, i: int) -> bool:
        return self.cartan[i][i] == 2

    def is_imaginary(self, i: int) -> bool:
        return self.cartan[i][i] <= 0

    @property
    def real_indices(self):
        return tuple(i for i in self.indices() if self.is_real(i))

    @property
    def imaginary_indices(self):
        return tuple(i for i in self.indices() if self.is_imaginary(i))

    def index_of(self, name: str) -> int:
        try:
            return self.index_names.index(str(name))
        except ValueError:
            raise KeyError(f"unknown index name {name!r}") from None

    def zero_weight(self) -> Weight:
        return Weight.zero(self.size)

    def fundamental(self, i: int) -> Weight:
        lam = [0] * self.size
        lam[i] = 1
        return Weight(tuple(lam), (0,) * self.size)

    def alpha(self, i: int) -> Weight:
        rt = [0] * self.size
        rt[i] = 1
        return Weight((0,) * self.size, tuple(rt))

    def weight(self, lam=None, rt=None) -> Weight:
        lam = tuple(lam) if lam is not None else (0,) * self.size
        rt = tuple(rt) if rt is not None else (0,) * self.size
        if len(lam) != self.size or len(rt) != self.size:
            raise ValueError(f"weight coordinates must have length {self.size}")
        return Weight(lam, rt)

    def pairing(self, i: int, w: Weight) -> int:
        """<h_i, w> for w = sum lam_j Lambda_j + sum rt_j alpha_j."""
        row = self.cartan[i]
        return w.lam[i] + sum(row[j] * w.rt[j] for j in range(self.size) if w.rt[j])

    def is_dominant(self, w: Weight) -> bool:
        return all(self.pairing(i, w) >= 0 for i in self.indices())


def make_datum(index_names, cartan, symmetrizers=None) -> BorcherdsCartanDatum:
    """Build a datum from plain sequences; symmetrizers default to all 1."""
    cartan = tuple(tuple(row) for row in cartan)
    if symmetrizers is None:
        symmetrizers = (1,) * len(cartan)
    return BorcherdsCartanDatum(tuple(index_names), cartan, tuple(symmetrizers))


_DATUM_KEYS = {"indices", "cartan", "symmetrizers", "sequence"}
_REQUIRED_KEYS = {"indices", "cartan", "symmetrizers"}


def parse_datum_payload(obj):
    """Format-check a decoded datum JSON object.

    Returns (index_names, matrix, symmetrizers, sequence_spec_or_None)
    without running the Borcherds-Cartan validation, so that callers can
    report condition violations separately from file-format problems.
    Unknown fields are rejected.
    """
    if not isinstance(obj, dict):
        raise DatumFormatError("datum file must contain a JSON object")
    unknown = sorted(set(obj) - _DATUM_KEYS)
    if unknown:
        raise DatumFormatError(f"unknown fields: {', '.join(unknown)}")
    missing = sorted(_REQUIRED_KEYS - set(obj))
    if missing:
        raise DatumFormatError(f"missing fields: {', '.join(missing)}")
    names = obj["indices"]
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise DatumFormatError('"indices" must be a list of strings')
    matrix = obj["cartan"]
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise DatumFormatError('"cartan" must be a list of rows')
    syms = obj["symmetrizers"]
    if not isinstance(syms, list):
        raise DatumFormatError('"symmetrizers" must be a list')
    seq = obj.get("sequence")
    if seq is not None and not isinstance(seq, dict):
        raise DatumFormatError('"sequence" must be an object')
    return names, matrix, syms, seq


def datum_to_dict(datum: BorcherdsCartanDatum, sequence_spec=None) -> dict:
    out = {
        "indices": list(datum.index_names),
        "cartan": [list(row) for row in datum.cartan],
        "symmetrizers": list(datum.symmetrizers),
    }
    if sequence_spec is not None:
        out["sequence"] = sequence_spec
    return out


def load_datum_file(path):
    """Load and validate a datum file.

    Returns (datum, sequence_spec_or_None).  Raises json.JSONDecodeError
    or DatumFormatError for unreadable payloads, DatumShapeError /
    DatumConditionError for invalid data.
    """
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    names, matrix, syms, seq = parse_datum_payload(obj)
    return make_datum(names, matrix, syms), seq


def save_datum_file(path, datum: BorcherdsCartanDatum, sequence_spec=None):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(datum_to_dict(datum, sequence_spec), fh, indent=2, sort_keys=True)
        fh.write("\n")
