"""Per-script-type size formulas for locking scripts, unlocking scripts, and witnesses.

Each supported script family gets an exact size built bottom-up: inner
script sizes first, then the push opcodes / varints that frame them, then
the fixed per-input and per-output fields. Results come back as a
:class:`ComponentSize` whose labeled parts always sum to the total.

Closed forms quoted in docstrings (34n+12, 72.5m+34n+46, ...) hold in the
ranges where every length prefix stays in its one-byte regime; the code
computes the general case, so the documented +1/+2 steps at the 75-byte push
and 252-byte varint boundaries fall out automatically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .encoding import SizeQ, op_int_size, push_size, varint_size
from .errors import InvalidSpec
from .models import (
    DEFAULT_MODEL,
    SizeModel,
    ecdsa_sig_size,
    pubkey_size,
    schnorr_sig_size,
)

MAX_MULTISIG_KEYS = 20
NULL_DATA_POLICY_MAX = 80  # relay default, not consensus; overridable

OUTPUT_KINDS = frozenset(
    {"p2pk", "p2pkh", "ms", "nulldata", "p2sh", "p2wpkh", "p2wsh", "p2tr"}
)

INPUT_KINDS = frozenset(
    {
        "p2pk",
        "p2pkh",
        "ms",
        "p2sh-ms",
        "p2sh-p2wsh-ms",
        "p2sh-p2wpkh",
        "p2wpkh",
        "p2wsh-ms",
        "p2tr",
        "p2tr-script",
    }
)

# Kinds whose spending data lives in the witness.
WITNESS_KINDS = frozenset(
    {"p2sh-p2wsh-ms", "p2sh-p2wpkh", "p2wpkh", "p2wsh-ms", "p2tr", "p2tr-script"}
)

_MULTISIG_KINDS = frozenset({"ms", "p2sh-ms", "p2sh-p2wsh-ms", "p2wsh-ms"})


@dataclass(frozen=True)
class TaprootScriptShape:
    """Shape parameters of a script-path spend.

    ``stack_items``/``stack_data_len`` describe the data satisfying the leaf
    script; ``script_len`` the revealed script; ``merkle_depth`` how many
    32-byte sibling hashes the control block carries. By default each stack
    item is assumed small enough for a one-byte length varint; pass
    ``item_sizes`` when individual items exceed 252 bytes.
    """

    stack_items: int
    stack_data_len: int
    script_len: int
    merkle_depth: int = 0
    item_sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.stack_items < 0:
            raise InvalidSpec("negative stack item count")
        if self.stack_data_len < 0:
            raise InvalidSpec("negative stack data length")
        if self.script_len < 1:
            raise InvalidSpec("script-path script must be at least one byte")
        if not 0 <= self.merkle_depth <= 128:
            raise InvalidSpec("merkle depth must be within [0, 128]")
        if self.item_sizes is not None:
            if len(self.item_sizes) != self.stack_items:
                raise InvalidSpec("item_sizes length disagrees with stack_items")
            if sum(self.item_sizes) != self.stack_data_len:
                raise InvalidSpec("item_sizes sum disagrees with stack_data_len")
            if any(s < 0 for s in self.item_sizes):
                raise InvalidSpec("negative stack item size")

    @classmethod
    def from_items(
        cls, item_sizes: tuple[int, ...], script_len: int, merkle_depth: int = 0
    ) -> "TaprootScriptShape":
        return cls(
            stack_items=len(item_sizes),
            stack_data_len=sum(item_sizes),
            script_len=script_len,
            merkle_depth=merkle_depth,
            item_sizes=tuple(item_sizes),
        )

    @property
    def control_block_len(self) -> int:
        # leaf-version byte + 32-byte internal key + one 32-byte hash per level
        return 33 + 32 * self.merkle_depth


def _check_multisig(kind: str, m: int | None, n: int | None) -> tuple[int, int]:
    if m is None or n is None:
        raise InvalidSpec(f"{kind} spec requires m and n")
    if not (1 <= m <= n <= MAX_MULTISIG_KEYS):
        raise InvalidSpec(
            f"{kind} requires 1 <= m <= n <= {MAX_MULTISIG_KEYS}, got {m}-of-{n}"
        )
    return m, n


@dataclass(frozen=True)
class OutputSpec:
    """A typed transaction-output descriptor.

    ``ms`` carries both m and n: the locking script embeds OP_m, which costs
    a second byte once m exceeds 16. ``nulldata`` carries the embedded data
    length.
    """

    kind: str
    m: int | None = None
    n: int | None = None
    data_len: int | None = None

    def __post_init__(self):
        if self.kind not in OUTPUT_KINDS:
            raise InvalidSpec(f"unknown output kind {self.kind!r}")
        if self.kind == "ms":
            _check_multisig("ms", self.m, self.n)
        elif self.kind == "nulldata":
            if self.data_len is None or self.data_len < 0:
                raise InvalidSpec("nulldata spec requires a non-negative data length")
        else:
            if self.m is not None or self.n is not None or self.data_len is not None:
                raise InvalidSpec(f"{self.kind} output takes no parameters")


@dataclass(frozen=True)
class InputSpec:
    """A typed transaction-input descriptor."""

    kind: str
    m: int | None = None
    n: int | None = None
    taproot: TaprootScriptShape | None = None

    def __post_init__(self):
        if self.kind not in INPUT_KINDS:
            raise InvalidSpec(f"unknown input kind {self.kind!r}")
        if self.kind in _MULTISIG_KINDS:
            _check_multisig(self.kind, self.m, self.n)
        elif self.kind == "p2tr-script":
            if self.taproot is None:
                raise InvalidSpec("p2tr-script spec requires a TaprootScriptShape")
        else:
            if self.m is not None or self.n is not None:
                raise InvalidSpec(f"{self.kind} input takes no m/n parameters")
        if self.kind != "p2tr-script" and self.taproot is not None:
            raise InvalidSpec(f"{self.kind} input takes no taproot shape")

    @property
    def is_witness_spend(self) -> bool:
        return self.kind in WITNESS_KINDS


@dataclass(frozen=True)
class ComponentSize:
    """An exact component size with its labeled constituent parts."""

    total: SizeQ
    detail: dict[str, SizeQ]

    @classmethod
    def from_parts(cls, parts: list[tuple[str, SizeQ]]) -> "ComponentSize":
        detail: dict[str, SizeQ] = {}
        for label, size in parts:
            detail[label] = detail.get(label, Fraction(0)) + size
        return cls(total=sum(detail.values(), Fraction(0)), detail=detail)


def multisig_script_len(m: int, n: int, key_len: SizeQ) -> SizeQ:
    """Size of an m-of-n CHECKMULTISIG script (locking, redeem, or witness script).

    OP_m, n pushed keys, OP_n, OP_CHECKMULTISIG; 34n+3 with 33-byte keys
    while m and n fit single-byte opcodes (<= 16).
    """
    return op_int_size(m) + n * (push_size(key_len) + key_len) + op_int_size(n) + 1


def _locking_script_len(spec: OutputSpec, model: SizeModel) -> SizeQ:
    key = pubkey_size(model.pubkey)
    if spec.kind == "p2pk":
        return push_size(key) + key + 1
    if spec.kind == "p2pkh":
        # OP_DUP OP_HASH160 <20-byte hash> OP_EQUALVERIFY OP_CHECKSIG
        return Fraction(25)
    if spec.kind == "ms":
        return multisig_script_len(spec.m, spec.n, key)
    if spec.kind == "nulldata":
        return 1 + push_size(spec.data_len) + spec.data_len
    if spec.kind == "p2sh":
        # OP_HASH160 <20-byte hash> OP_EQUAL
        return Fraction(23)
    if spec.kind == "p2wpkh":
        # OP_0 <20-byte hash>
        return Fraction(22)
    if spec.kind in ("p2wsh", "p2tr"):
        # version opcode + <32-byte hash / x-only key>
        return Fraction(34)
    raise InvalidSpec(f"unknown output kind {spec.kind!r}")


def output_size(
    spec: OutputSpec,
    model: SizeModel = DEFAULT_MODEL,
    *,
    allow_large_data: bool = False,
) -> ComponentSize:
    """Estimated size of one transaction output.

    8-byte amount + script-length varint + locking script. ``model`` only
    matters for the kinds that embed public keys (p2pk, bare ms). Data
    payloads past the 80-byte relay policy cap are rejected unless
    ``allow_large_data`` is set.
    """
    if (
        spec.kind == "nulldata"
        and spec.data_len > NULL_DATA_POLICY_MAX
        and not allow_large_data
    ):
        raise InvalidSpec(
            f"nulldata payload of {spec.data_len} bytes exceeds the "
            f"{NULL_DATA_POLICY_MAX}-byte relay policy (pass allow_large_data to override)"
        )
    script = _locking_script_len(spec, model)
    return ComponentSize.from_parts(
        [
            ("amount", Fraction(8)),
            ("script length", varint_size(script)),
            ("locking script", script),
        ]
    )


def _unlocking_script_parts(spec: InputSpec, model: SizeModel) -> list[tuple[str, SizeQ]]:
    sig = ecdsa_sig_size(model.ecdsa)
    key = pubkey_size(model.pubkey)
    if spec.kind == "p2pk":
        return [("signature push", push_size(sig)), ("signature", sig)]
    if spec.kind == "p2pkh":
        return [
            ("signature push", push_size(sig)),
            ("signature", sig),
            ("public key push", push_size(key)),
            ("public key", key),
        ]
    if spec.kind == "ms":
        return [
            ("checkmultisig dummy", Fraction(1)),
            ("signature pushes", spec.m * push_size(sig)),
            ("signatures", spec.m * sig),
        ]
    if spec.kind == "p2sh-ms":
        redeem = multisig_script_len(spec.m, spec.n, key)
        return [
            ("checkmultisig dummy", Fraction(1)),
            ("signature pushes", spec.m * push_size(sig)),
            ("signatures", spec.m * sig),
            ("redeem script push", push_size(redeem)),
            ("redeem script", redeem),
        ]
    if spec.kind == "p2sh-p2wsh-ms":
        # redeem script is OP_0 <32-byte witness script hash>
        return [("redeem script push", push_size(34)), ("redeem script", Fraction(34))]
    if spec.kind == "p2sh-p2wpkh":
        # redeem script is OP_0 <20-byte key hash>
        return [("redeem script push", push_size(22)), ("redeem script", Fraction(22))]
    if spec.kind in ("p2wpkh", "p2wsh-ms", "p2tr", "p2tr-script"):
        return []
    raise InvalidSpec(f"unknown input kind {spec.kind!r}")


def input_size(spec: InputSpec, model: SizeModel = DEFAULT_MODEL) -> ComponentSize:
    """Estimated size of one transaction input (witness excluded).

    32-byte txid + 4-byte output index + script-length varint + unlocking
    script + 4-byte sequence. Witness-spending kinds carry an empty
    unlocking script and come to a fixed 41 bytes.
    """
    script_parts = _unlocking_script_parts(spec, model)
    script = sum((size for _, size in script_parts), Fraction(0))
    parts = [
        ("previous txid", Fraction(32)),
        ("output index", Fraction(4)),
        ("script length", varint_size(script)),
        *script_parts,
        ("sequence", Fraction(4)),
    ]
    return ComponentSize.from_parts(parts)


def empty_witness_stub() -> ComponentSize:
    """The one-byte zero-item witness a legacy input occupies in a SegWit tx."""
    return ComponentSize(total=Fraction(1), detail={"item count": Fraction(1)})


def witness_size(spec: InputSpec, model: SizeModel = DEFAULT_MODEL) -> ComponentSize:
    """Estimated witness size for one input.

    Non-witness kinds get the one-byte empty-witness stub they occupy inside
    a SegWit transaction (item count zero).
    """
    sig = ecdsa_sig_size(model.ecdsa)
    key = pubkey_size(model.pubkey)
    if spec.kind in ("p2wpkh", "p2sh-p2wpkh"):
        return ComponentSize.from_parts(
            [
                ("item count", varint_size(2)),
                ("signature length", varint_size(sig)),
                ("signature", sig),
                ("public key length", varint_size(key)),
                ("public key", key),
            ]
        )
    if spec.kind in ("p2wsh-ms", "p2sh-p2wsh-ms"):
        script = multisig_script_len(spec.m, spec.n, key)
        return ComponentSize.from_parts(
            [
                ("item count", varint_size(spec.m + 2)),
                ("checkmultisig dummy item", Fraction(1)),
                ("signature lengths", spec.m * varint_size(sig)),
                ("signatures", spec.m * sig),
                ("script length", varint_size(script)),
                ("witness script", script),
            ]
        )
    if spec.kind == "p2tr":
        sig = schnorr_sig_size(model.schnorr)
        return ComponentSize.from_parts(
            [
                ("item count", varint_size(1)),
                ("signature length", varint_size(sig)),
                ("signature", sig),
            ]
        )
    if spec.kind == "p2tr-script":
        shape = spec.taproot
        if shape.item_sizes is not None:
            item_varints = sum(
                (varint_size(s) for s in shape.item_sizes), Fraction(0)
            )
        else:
            # default assumption: every stack item fits a one-byte varint
            item_varints = Fraction(shape.stack_items)
        cb = shape.control_block_len
        return ComponentSize.from_parts(
            [
                ("item count", varint_size(shape.stack_items + 2)),
                ("stack item lengths", item_varints),
                ("stack items", Fraction(shape.stack_data_len)),
                ("script length", varint_size(shape.script_len)),
                ("script", Fraction(shape.script_len)),
                ("control block length", varint_size(cb)),
                ("control block", Fraction(cb)),
            ]
        )
    return empty_witness_stub()
