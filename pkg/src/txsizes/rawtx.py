"""Decode consensus-serialized transactions and measure their real component sizes.

This is the empirical counterpart to the estimator: it parses hex or binary
transactions losslessly (re-serializing reproduces the input byte for byte),
classifies each input, output, and witness against the supported script
families by pure pattern matching, and reports measured sizes suitable for
histogram aggregation.

Classification is best-effort and total: anything that does not match a
known template is ``unknown``, never an error, because real chain data is
full of nonstandard scripts. Spending-side classification is inherently
heuristic since the spent output's type is not part of the spending
transaction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .encoding import SizeQ
from .errors import ParseError
from .templates import TaprootScriptShape

# One full block of weight; anything larger cannot be a valid transaction.
MAX_TX_SIZE = 4_000_000

_OP_RETURN = 0x6A
_OP_CHECKSIG = 0xAC
_OP_CHECKMULTISIG = 0xAE
_OP_PUSHDATA1 = 0x4C
_OP_PUSHDATA2 = 0x4D
_OP_PUSHDATA4 = 0x4E


def encode_compact_size(n: int) -> bytes:
    """Minimal CompactSize encoding of ``n``."""
    if n < 0 or n > 0xFFFF_FFFF_FFFF_FFFF:
        raise ParseError(f"compact size {n} out of range")
    if n <= 252:
        return bytes([n])
    if n <= 0xFFFF:
        return b"\xfd" + n.to_bytes(2, "little")
    if n <= 0xFFFF_FFFF:
        return b"\xfe" + n.to_bytes(4, "little")
    return b"\xff" + n.to_bytes(8, "little")


def compact_size_len(n: int) -> int:
    return len(encode_compact_size(n))


@dataclass(frozen=True)
class Classification:
    """Outcome of matching a script (plus witness) against the known templates."""

    kind: str
    m: int | None = None
    n: int | None = None
    data_len: int | None = None
    shape: TaprootScriptShape | None = None


UNKNOWN = Classification("unknown")


@dataclass
class ParsedInput:
    prev_txid: bytes
    prev_index: int
    script: bytes
    sequence: int
    classification: Classification = UNKNOWN

    @property
    def size(self) -> int:
        return 32 + 4 + compact_size_len(len(self.script)) + len(self.script) + 4

    def serialize(self) -> bytes:
        return (
            self.prev_txid
            + self.prev_index.to_bytes(4, "little")
            + encode_compact_size(len(self.script))
            + self.script
            + self.sequence.to_bytes(4, "little")
        )


@dataclass
class ParsedOutput:
    amount: int
    script: bytes
    classification: Classification = UNKNOWN

    @property
    def size(self) -> int:
        return 8 + compact_size_len(len(self.script)) + len(self.script)

    def serialize(self) -> bytes:
        return (
            self.amount.to_bytes(8, "little")
            + encode_compact_size(len(self.script))
            + self.script
        )


@dataclass
class ParsedWitness:
    items: tuple[bytes, ...]
    kind: str = "unknown"

    @property
    def size(self) -> int:
        return compact_size_len(len(self.items)) + sum(
            compact_size_len(len(item)) + len(item) for item in self.items
        )

    def serialize(self) -> bytes:
        out = encode_compact_size(len(self.items))
        for item in self.items:
            out += encode_compact_size(len(item)) + item
        return out


@dataclass
class ParsedTx:
    version: int
    segwit: bool
    inputs: list[ParsedInput]
    outputs: list[ParsedOutput]
    witnesses: list[ParsedWitness]
    locktime: int
    total_size: int
    base_size: int

    @property
    def weight(self) -> int:
        return 4 * self.base_size + (self.total_size - self.base_size)

    @property
    def vbytes(self) -> SizeQ:
        return Fraction(self.weight, 4)


class _Reader:
    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def read(self, n: int, what: str) -> bytes:
        if self.pos + n > len(self.data):
            raise ParseError(f"truncated while reading {what}", offset=self.pos)
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def read_u32(self, what: str) -> int:
        return int.from_bytes(self.read(4, what), "little")

    def read_compact_size(self, what: str) -> int:
        start = self.pos
        first = self.read(1, what)[0]
        if first <= 252:
            return first
        widths = {0xFD: 2, 0xFE: 4, 0xFF: 8}
        floors = {0xFD: 253, 0xFE: 0x1_0000, 0xFF: 0x1_0000_0000}
        value = int.from_bytes(self.read(widths[first], what), "little")
        if value < floors[first]:
            raise ParseError(f"non-canonical compact size for {what}", offset=start)
        return value


def _read_one_tx(r: _Reader) -> ParsedTx:
    start = r.pos
    version = r.read_u32("version")

    segwit = (
        r.pos + 2 <= len(r.data)
        and r.data[r.pos] == 0x00
        and r.data[r.pos + 1] == 0x01
    )
    if not segwit and r.pos < len(r.data) and r.data[r.pos] == 0x00:
        raise ParseError("SegWit marker without 0x01 flag", offset=r.pos)
    if segwit:
        r.read(2, "segwit marker+flag")

    n_inputs = r.read_compact_size("input count")
    inputs = []
    for i in range(n_inputs):
        txid = r.read(32, f"input {i} txid")
        index = r.read_u32(f"input {i} output index")
        script_len = r.read_compact_size(f"input {i} script length")
        script = r.read(script_len, f"input {i} script")
        sequence = r.read_u32(f"input {i} sequence")
        inputs.append(ParsedInput(txid, index, script, sequence))

    n_outputs = r.read_compact_size("output count")
    outputs = []
    for i in range(n_outputs):
        amount = int.from_bytes(r.read(8, f"output {i} amount"), "little")
        script_len = r.read_compact_size(f"output {i} script length")
        script = r.read(script_len, f"output {i} script")
        outputs.append(ParsedOutput(amount, script))

    witnesses: list[ParsedWitness] = []
    witness_bytes = 0
    if segwit:
        wit_start = r.pos
        for i in range(n_inputs):
            n_items = r.read_compact_size(f"witness {i} item count")
            items = []
            for j in range(n_items):
                item_len = r.read_compact_size(f"witness {i} item {j} length")
                items.append(r.read(item_len, f"witness {i} item {j}"))
            witnesses.append(ParsedWitness(tuple(items)))
        witness_bytes = r.pos - wit_start

    locktime = r.read_u32("locktime")

    total_size = r.pos - start
    base_size = total_size - (witness_bytes + 2 if segwit else 0)
    tx = ParsedTx(
        version=version,
        segwit=segwit,
        inputs=inputs,
        outputs=outputs,
        witnesses=witnesses,
        locktime=locktime,
        total_size=total_size,
        base_size=base_size,
    )
    _classify_tx(tx)
    return tx


def read_tx(data: bytes, offset: int = 0) -> tuple[ParsedTx, int]:
    """Read one transaction starting at ``offset``; returns it and the next offset."""
    r = _Reader(data, offset)
    tx = _read_one_tx(r)
    return tx, r.pos


def _normalize(raw: bytes | str) -> bytes:
    if isinstance(raw, str):
        compact = "".join(raw.split())
        try:
            return bytes.fromhex(compact)
        except ValueError as exc:
            raise ParseError(f"invalid hex: {exc}") from None
    return bytes(raw)


def parse_tx(raw: bytes | str) -> ParsedTx:
    """Parse one complete serialized transaction (raw bytes, or hex with whitespace).

    The decomposition is lossless: :func:`serialize_tx` on the result
    reproduces the input exactly. Trailing bytes are an error.
    """
    data = _normalize(raw)
    if len(data) > MAX_TX_SIZE:
        raise ParseError(
            f"transaction of {len(data)} bytes exceeds the {MAX_TX_SIZE}-byte cap"
        )
    tx, end = read_tx(data)
    if end != len(data):
        raise ParseError(f"{len(data) - end} trailing bytes after transaction", offset=end)
    return tx


def serialize_tx(tx: ParsedTx) -> bytes:
    """Re-serialize a parsed transaction (inverse of :func:`parse_tx`)."""
    out = tx.version.to_bytes(4, "little")
    if tx.segwit:
        out += b"\x00\x01"
    out += encode_compact_size(len(tx.inputs))
    for txin in tx.inputs:
        out += txin.serialize()
    out += encode_compact_size(len(tx.outputs))
    for txout in tx.outputs:
        out += txout.serialize()
    if tx.segwit:
        for wit in tx.witnesses:
            out += wit.serialize()
    out += tx.locktime.to_bytes(4, "little")
    return out


# ---------------------------------------------------------------------------
# script-shape predicates
# ---------------------------------------------------------------------------

def _iter_pushes(script: bytes):
    """Yield (opcode, data) per element; data is None for non-push opcodes.

    Returns None (not raises) on malformed/truncated pushes: callers treat
    that as "does not match any template".
    """
    elems = []
    pos = 0
    while pos < len(script):
        op = script[pos]
        pos += 1
        if 1 <= op <= 75:
            length = op
        elif op == _OP_PUSHDATA1:
            if pos + 1 > len(script):
                return None
            length = script[pos]
            pos += 1
        elif op == _OP_PUSHDATA2:
            if pos + 2 > len(script):
                return None
            length = int.from_bytes(script[pos : pos + 2], "little")
            pos += 2
        elif op == _OP_PUSHDATA4:
            if pos + 4 > len(script):
                return None
            length = int.from_bytes(script[pos : pos + 4], "little")
            pos += 4
        else:
            elems.append((op, None))
            continue
        if pos + length > len(script):
            return None
        elems.append((op, script[pos : pos + length]))
        pos += length
    return elems


def _small_int(elem: tuple[int, bytes | None]) -> int | None:
    """Value of a Script element that places a small integer on the stack."""
    op, data = elem
    if data is None:
        if op == 0x00:
            return 0
        if 0x51 <= op <= 0x60:
            return op - 0x50
        return None
    if len(data) == 1:
        return data[0]
    return None


def _is_der_sig(item: bytes) -> bool:
    return 8 <= len(item) <= 73 and item[0] == 0x30 and item[1] == len(item) - 3


def _is_pubkey(item: bytes) -> bool:
    return (len(item) == 33 and item[0] in (2, 3)) or (
        len(item) == 65 and item[0] == 4
    )


def _is_control_block(item: bytes) -> bool:
    return (
        len(item) >= 33
        and (len(item) - 33) % 32 == 0
        and (len(item) - 33) // 32 <= 128
        and item[0] & 0xFE == 0xC0
    )


def _parse_ms_script(script: bytes) -> tuple[int, int] | None:
    """Extract (m, n) if ``script`` is an m-of-n CHECKMULTISIG script."""
    elems = _iter_pushes(script)
    if not elems or len(elems) < 4:
        return None
    if elems[-1] != (_OP_CHECKMULTISIG, None):
        return None
    m = _small_int(elems[0])
    n = _small_int(elems[-2])
    if m is None or n is None or not (1 <= m <= n <= 20):
        return None
    keys = elems[1:-2]
    if len(keys) != n:
        return None
    if not all(data is not None and len(data) in (33, 65) for _, data in keys):
        return None
    return m, n


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify_output(script: bytes) -> Classification:
    """Match a locking script against the supported output families."""
    n = len(script)
    if n == 25 and script[:3] == b"\x76\xa9\x14" and script[23:] == b"\x88\xac":
        return Classification("p2pkh")
    if n == 23 and script[:2] == b"\xa9\x14" and script[22] == 0x87:
        return Classification("p2sh")
    if n == 22 and script[:2] == b"\x00\x14":
        return Classification("p2wpkh")
    if n == 34 and script[:2] == b"\x00\x20":
        return Classification("p2wsh")
    if n == 34 and script[:2] == b"\x51\x20":
        return Classification("p2tr")
    if (
        n in (35, 67)
        and script[-1] == _OP_CHECKSIG
        and script[0] == n - 2
        and _is_pubkey(script[1:-1])
    ):
        return Classification("p2pk")
    if n >= 1 and script[0] == _OP_RETURN:
        if n == 1:
            return Classification("nulldata", data_len=0)
        elems = _iter_pushes(script[1:])
        if elems is not None and len(elems) == 1 and elems[0][1] is not None:
            return Classification("nulldata", data_len=len(elems[0][1]))
        if elems is not None and len(elems) == 1 and elems[0][0] == 0x00:
            return Classification("nulldata", data_len=0)
        return UNKNOWN
    ms = _parse_ms_script(script)
    if ms is not None:
        return Classification("ms", m=ms[0], n=ms[1])
    return UNKNOWN


def _classify_witness_program(items: tuple[bytes, ...]) -> Classification | None:
    """Shared matcher for native/wrapped witness stacks (v0 and v1)."""
    if len(items) == 2 and _is_der_sig(items[0]) and _is_pubkey(items[1]):
        return Classification("p2wpkh")
    if len(items) == 1 and len(items[0]) in (64, 65):
        return Classification("p2tr")
    if len(items) >= 2 and _is_control_block(items[-1]) and len(items[-2]) >= 1:
        shape = TaprootScriptShape.from_items(
            item_sizes=tuple(len(item) for item in items[:-2]),
            script_len=len(items[-2]),
            merkle_depth=(len(items[-1]) - 33) // 32,
        )
        return Classification("p2tr-script", shape=shape)
    if len(items) >= 2:
        ms = _parse_ms_script(items[-1])
        if (
            ms is not None
            and items[0] == b""
            and len(items) == ms[0] + 2
            and all(_is_der_sig(item) for item in items[1:-1])
        ):
            return Classification("p2wsh-ms", m=ms[0], n=ms[1])
    return None


def classify_input(
    script: bytes, witness_items: tuple[bytes, ...] | None = None
) -> Classification:
    """Match an unlocking script (and witness stack, if any) against input families."""
    witness_items = tuple(witness_items or ())

    if not script:
        found = _classify_witness_program(witness_items)
        return found if found is not None else UNKNOWN

    # P2SH-wrapped witness programs: a lone push of the redeem script.
    if len(script) == 23 and script[:3] == b"\x16\x00\x14":
        return Classification("p2sh-p2wpkh")
    if len(script) == 35 and script[:3] == b"\x22\x00\x20":
        nested = _classify_witness_program(witness_items)
        if nested is not None and nested.kind == "p2wsh-ms":
            return Classification("p2sh-p2wsh-ms", m=nested.m, n=nested.n)
        return UNKNOWN

    elems = _iter_pushes(script)
    if not elems:
        return UNKNOWN

    # multisig spends start with the one-byte CHECKMULTISIG dummy (OP_0)
    if elems[0] == (0x00, None) and len(elems) >= 2:
        rest = [data for _, data in elems[1:]]
        if all(d is not None for d in rest):
            if all(_is_der_sig(d) for d in rest):
                return Classification("ms", m=len(rest))
            redeem, sigs = rest[-1], rest[:-1]
            ms = _parse_ms_script(redeem)
            if ms is not None and len(sigs) == ms[0] and all(
                _is_der_sig(d) for d in sigs
            ):
                return Classification("p2sh-ms", m=ms[0], n=ms[1])
        return UNKNOWN

    datas = [data for _, data in elems]
    if any(data is None for data in datas):
        return UNKNOWN
    if len(elems) == 1 and _is_der_sig(datas[0]):
        return Classification("p2pk")
    if len(elems) == 2 and _is_der_sig(datas[0]) and _is_pubkey(datas[1]):
        return Classification("p2pkh")
    return UNKNOWN


def _classify_tx(tx: ParsedTx) -> None:
    for out in tx.outputs:
        out.classification = classify_output(out.script)
    for i, txin in enumerate(tx.inputs):
        items = tx.witnesses[i].items if tx.segwit else None
        txin.classification = classify_input(txin.script, items)
    for i, wit in enumerate(tx.witnesses):
        wit.kind = tx.inputs[i].classification.kind if wit.items else "empty"


def measure(tx: ParsedTx) -> list[tuple[str, str, int]]:
    """Per-component (role, kind, size-in-bytes) tuples for histogram aggregation."""
    rows: list[tuple[str, str, int]] = []
    for txin in tx.inputs:
        rows.append(("input", txin.classification.kind, txin.size))
    for txout in tx.outputs:
        rows.append(("output", txout.classification.kind, txout.size))
    for wit in tx.witnesses:
        rows.append(("witness", wit.kind, wit.size))
    return rows
