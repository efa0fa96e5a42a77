"""Closed-form relative dominant dimensions and cover quality for S(2, d).

Everything here is arithmetic in d and a coefficient regime; the module
oracle provides the independent cross-check on explicit modules.

A regime is either a field, flagged by whether the quantum characteristic
is 2 (char K = 2 with u = 1, or q = -1 with q != 1), or a local regular
integral domain that is not a field, flagged by whether 1 + q is a unit
and whether 1 + q = 0.  Finite dominant dimensions occur exactly when d is
even and the regime is quantum-characteristic-2 (field case) or 1 + q is a
non-unit (integral case).

Infinity is the symbolic singleton INFINITY, absorbing under addition and
subtraction of integers and larger than every integer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .weights import projective_column


class Infinity:
    """Symbolic infinite value; absorbing and comparable with ints."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Infinity):
            raise ArithmeticError("infinity - infinity is undefined")
        return self

    def __mul__(self, other):
        if isinstance(other, int) and other <= 0:
            raise ArithmeticError("infinity times a nonpositive int is undefined")
        return self

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __hash__(self):
        return hash("tlschur-infinity")

    def __repr__(self):
        return "infinity"


INFINITY = Infinity()

ExtendedNat = "int | Infinity"


def encode_extnat(x) -> object:
    """JSON encoding: plain int, or the string 'infinity'."""
    return "infinity" if isinstance(x, Infinity) else int(x)


def parse_extnat(x):
    if x == "infinity":
        return INFINITY
    return int(x)


@dataclass(frozen=True)
class FieldRegime:
    """Coefficients form a field; the flag records quantum characteristic 2."""

    quantum_char_is_2: bool

    @property
    def kind(self) -> str:
        return "field"

    def describe(self) -> str:
        return "field, quantum characteristic 2" if self.quantum_char_is_2 else "field, generic"


@dataclass(frozen=True)
class IntegralRegime:
    """Local regular integral domain that is not a field.

    one_plus_q_unit and one_plus_q_zero cannot both hold; when neither
    holds, 1 + q is a nonzero non-unit.  2-partial q-divisibility means
    one_plus_q_unit or one_plus_q_zero.
    """

    one_plus_q_unit: bool
    one_plus_q_zero: bool

    def __post_init__(self):
        if self.one_plus_q_unit and self.one_plus_q_zero:
            raise ValueError("1+q cannot be both a unit and zero")

    @property
    def kind(self) -> str:
        return "integral"

    @property
    def partially_divisible(self) -> bool:
        return self.one_plus_q_unit or self.one_plus_q_zero

    def describe(self) -> str:
        if self.one_plus_q_zero:
            return "local regular integral domain, 1+q = 0"
        if self.one_plus_q_unit:
            return "local regular integral domain, 1+q a unit"
        return "local regular integral domain, 1+q a nonzero non-unit"


Regime = "FieldRegime | IntegralRegime"


def _finite_field_case(d: int, regime: FieldRegime) -> bool:
    return regime.quantum_char_is_2 and d % 2 == 0


def domdim_regular(d: int, regime: FieldRegime):
    """Dominant dimension of S(2, d) relative to tensor space: d, or infinity."""
    if d < 1:
        raise ValueError("degree must be positive")
    if not isinstance(regime, FieldRegime):
        raise ValueError("regular-module dominant dimension is a field-regime statement")
    return d if _finite_field_case(d, regime) else INFINITY


def domdim_char_tilting(d: int, regime) -> object:
    """Dominant dimension of the characteristic tilting module: half the regular value."""
    if d < 1:
        raise ValueError("degree must be positive")
    if isinstance(regime, FieldRegime):
        return d // 2 if _finite_field_case(d, regime) else INFINITY
    if isinstance(regime, IntegralRegime):
        return d // 2 if (not regime.one_plus_q_unit and d % 2 == 0) else INFINITY
    raise ValueError(f"unknown regime {regime!r}")


def domdim_standard(d: int, m: int, regime: FieldRegime):
    """Dominant dimension of the standard module of weight m, finite regime only."""
    if not isinstance(regime, FieldRegime) or not _finite_field_case(d, regime):
        raise ValueError("standard-module values are stated for the finite field regime")
    if m < 0 or m > d or m % 2 != d % 2:
        raise ValueError(f"weight {m} not admissible in degree {d}")
    return m // 2 + d // 2


@dataclass(frozen=True)
class ProjectiveClass:
    """Relative dominant dimension of one indecomposable projective."""

    weight: int
    column_size: int
    value: object  # int or INFINITY

    @property
    def finite(self) -> bool:
        return not isinstance(self.value, Infinity)


def classify_projective(d: int, m: int, regime: FieldRegime | None = None) -> ProjectiveClass:
    """Finite versus infinite dominant dimension of the projective P(m).

    In the finite regime the value is read off the parity of the column of
    m in the decomposition matrix: an even column size gives infinity, an
    odd column size gives exactly d.
    """
    if regime is not None and not _finite_field_case(d, regime):
        raise ValueError("projective classification applies to the finite field regime")
    col = projective_column(d, m)
    val = INFINITY if len(col) % 2 == 0 else d
    return ProjectiveClass(m, len(col), val)


def hn_dimension(d: int, regime) -> object:
    """Cover quality of the Schur-algebra cover of TL_d.

    Field regime: d/2 - 2 in the finite case, infinity otherwise.  Integral
    regime: the tilting value T = domdim_char_tilting is corrected by -2
    when 2-partially q-divisible and by -1 otherwise; odd d gives infinity.
    """
    if d < 2:
        raise ValueError("cover quality needs d >= 2")
    if isinstance(regime, FieldRegime):
        if _finite_field_case(d, regime):
            return d // 2 - 2
        return INFINITY
    if isinstance(regime, IntegralRegime):
        t = domdim_char_tilting(d, regime)
        if isinstance(t, Infinity):
            return INFINITY
        return t - 2 if regime.partially_divisible else t - 1
    raise ValueError(f"unknown regime {regime!r}")


def cover_report(d: int, regime) -> dict:
    """JSON-friendly bundle of the cover invariants for degree d."""
    notes: list[str] = []
    if d == 2:
        notes.append("TL_2 coincides with the Hecke algebra of the symmetric group on two letters")
    if d % 2 == 1:
        notes.append("odd degree: TL_d is split quasi-hereditary, the Ringel dual of the Schur algebra")
    if isinstance(regime, FieldRegime) and not regime.quantum_char_is_2:
        notes.append("generic field: tensor space is a characteristic tilting module and TL_d is the Ringel dual")
    if isinstance(regime, IntegralRegime) and d > 2:
        notes.append("integral regime, d > 2: the Schur algebra is the unique cover of TL_d with these invariants")
    if isinstance(regime, FieldRegime):
        reg = domdim_regular(d, regime)
    else:
        reg = None
    tilt = domdim_char_tilting(d, regime)
    return {
        "d": d,
        "regime": regime.describe(),
        "domdim_regular": encode_extnat(reg) if reg is not None else None,
        "domdim_tilting": encode_extnat(tilt),
        "hn_dim": encode_extnat(hn_dimension(d, regime)),
        "delta": "-u - u^(-1)",
        "notes": notes,
    }


def hn_batch_csv(d_start: int, d_end: int, regime) -> str:
    """CSV rows (d, tilting value, cover quality) over a degree range."""
    lines = ["d,domdim_tilting,hn_dim"]
    for d in range(d_start, d_end + 1):
        t = encode_extnat(domdim_char_tilting(d, regime))
        h = encode_extnat(hn_dimension(d, regime))
        lines.append(f"{d},{t},{h}")
    return "\n".join(lines) + "\n"
