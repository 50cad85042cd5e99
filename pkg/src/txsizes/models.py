"""Size models for public keys and signatures.

These are the only knobs in the estimator: everything else about a
transaction's size is fixed by its structure. The defaults reflect current
network practice: compressed SEC keys, ECDSA signatures averaging 71.5 bytes
(the low-s rule leaves the r value needing a padding byte half the time),
and Schnorr signatures with the implicit default sighash type.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .encoding import SizeQ
from .errors import InvalidSpec


class PubKey(enum.Enum):
    """Public-key encoding; the value is the encoded size in bytes."""

    COMPRESSED = 33
    UNCOMPRESSED = 65
    XONLY = 32


class SchnorrSig(enum.Enum):
    """Schnorr signature encoding; the value is the size in bytes.

    64 bytes with the implicit default sighash type, 65 with an explicit
    sighash byte appended.
    """

    DEFAULT_SIGHASH = 64
    CUSTOM_SIGHASH = 65


@dataclass(frozen=True)
class EcdsaSig:
    """An ECDSA signature size assumption (DER framing + sighash byte included)."""

    name: str
    size: SizeQ

    FIXED_MIN = 8
    FIXED_MAX = 73

    @classmethod
    def fixed(cls, size: int) -> "EcdsaSig":
        """A constant signature size, for experiments and fixtures."""
        if not cls.FIXED_MIN <= size <= cls.FIXED_MAX:
            raise InvalidSpec(
                f"fixed signature size {size} outside [{cls.FIXED_MIN}, {cls.FIXED_MAX}]"
            )
        return cls(f"fixed:{size}", Fraction(size))


# Low-s is enforced by relay policy, so only r needs a padding byte, half the
# time: 71.5 bytes on average. Wallets grinding low r as well save that half
# byte; pre-low-s signatures needed padding for either value half the time.
ECDSA_AVERAGE = EcdsaSig("average", Fraction(143, 2))
ECDSA_LOW_S = EcdsaSig("low-s", Fraction(143, 2))
ECDSA_LOW_R = EcdsaSig("low-r", Fraction(71))
ECDSA_LEGACY = EcdsaSig("legacy", Fraction(72))

_ECDSA_NAMED = {
    "average": ECDSA_AVERAGE,
    "low-s": ECDSA_LOW_S,
    "low-r": ECDSA_LOW_R,
    "legacy": ECDSA_LEGACY,
    "conservative": ECDSA_LEGACY,
}


def ecdsa_model_from_name(name: str) -> EcdsaSig:
    """Resolve a CLI-style model name ("average", "low-r", "fixed:71", ...)."""
    if name in _ECDSA_NAMED:
        return _ECDSA_NAMED[name]
    if name.startswith("fixed:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise InvalidSpec(f"bad fixed signature size in {name!r}") from None
        return EcdsaSig.fixed(k)
    raise InvalidSpec(
        f"unknown signature model {name!r}; expected one of "
        f"{', '.join(sorted(_ECDSA_NAMED))} or fixed:K"
    )


@dataclass(frozen=True)
class SizeModel:
    """Bundle of the three size assumptions used throughout the estimator."""

    pubkey: PubKey = PubKey.COMPRESSED
    ecdsa: EcdsaSig = ECDSA_AVERAGE
    schnorr: SchnorrSig = SchnorrSig.DEFAULT_SIGHASH


DEFAULT_MODEL = SizeModel()


def pubkey_size(model: PubKey) -> SizeQ:
    """Encoded size of a public key under ``model``."""
    return Fraction(model.value)


def ecdsa_sig_size(model: EcdsaSig) -> SizeQ:
    """Size of a DER-encoded ECDSA signature, sighash byte included."""
    return model.size


def schnorr_sig_size(model: SchnorrSig) -> SizeQ:
    """Size of a Schnorr signature witness item under ``model``."""
    return Fraction(model.value)
