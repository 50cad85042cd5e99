"""Size arithmetic for Bitcoin's two length-prefix schemes.

CompactSize varints prefix counts and script lengths in the transaction
serialization; push-data opcodes prefix literal data inside Script. This
module computes how many bytes those prefixes occupy; it never encodes or
decodes actual byte strings (see :mod:`txsizes.rawtx` for that).

All byte counts in this package are exact rationals (``fractions.Fraction``),
because averaged signature sizes introduce half bytes (71.5) and the
weight-to-vbyte division introduces quarters and eighths. ``SizeQ`` is an
alias documenting that convention. Arithmetic on these values is exact; no
rounding happens anywhere inside the estimation pipeline.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidSpec

SizeQ = Fraction

U16_MAX = 0xFFFF
U32_MAX = 0xFFFF_FFFF
U64_MAX = 0xFFFF_FFFF_FFFF_FFFF

# Largest value a single CompactSize byte can carry.
VARINT_ONE_BYTE_MAX = 252
# Largest data length Script encodes without an explicit push opcode.
PUSH_ONE_BYTE_MAX = 75


def varint_size(n: int | Fraction) -> SizeQ:
    """Bytes needed to encode ``n`` as a CompactSize varint (1, 3, 5, or 9).

    ``n`` may be a rational: length estimates built from averaged signature
    sizes are fractional, and the model applies the step thresholds directly
    to the average.
    """
    if n < 0:
        raise InvalidSpec(f"varint of negative value {n}")
    if n > U64_MAX:
        raise InvalidSpec(f"varint of value {n} exceeds 64 bits")
    if n <= VARINT_ONE_BYTE_MAX:
        return Fraction(1)
    if n <= U16_MAX:
        return Fraction(3)
    if n <= U32_MAX:
        return Fraction(5)
    return Fraction(9)


def push_size(length: int | Fraction) -> SizeQ:
    """Bytes of Script overhead to push ``length`` bytes of data.

    Covers the implicit single-byte encoding for lengths up to 75 and the
    explicit one/two/four-byte forms beyond; the pushed data itself is not
    counted. A zero-length push still costs one opcode byte.
    """
    if length < 0:
        raise InvalidSpec(f"push of negative length {length}")
    if length > U32_MAX:
        raise InvalidSpec(f"push of {length} bytes exceeds the 2^32-1 limit")
    if length <= PUSH_ONE_BYTE_MAX:
        return Fraction(1)
    if length <= 0xFF:
        return Fraction(2)
    if length <= U16_MAX:
        return Fraction(3)
    return Fraction(5)


def op_int_size(k: int) -> SizeQ:
    """Bytes to place the small integer ``k`` on the stack in Script.

    0 through 16 have dedicated one-byte opcodes; 17 and up must be pushed
    as one-byte literals, costing a length prefix plus the byte.
    """
    if k < 0:
        raise InvalidSpec(f"script integer {k} is negative")
    if k <= 16:
        return Fraction(1)
    return Fraction(2)


def to_number(q: Fraction) -> int | float:
    """Convert an exact size to the JSON-friendly int/float equivalent.

    Every size produced by this package has a power-of-two denominator of at
    most 8, so the float conversion is exact and round-trips through its
    decimal repr.
    """
    if q.denominator == 1:
        return int(q)
    return float(q)


def format_size(q: Fraction) -> str:
    """Render an exact size as a terminating decimal string ("296", "191.5")."""
    return str(to_number(q))
