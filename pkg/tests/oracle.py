"""Independent size oracles for the test suite.

Two deliberately separate routes from the library under test:

* byte-level builders that assemble real scripts, witnesses, and whole
  transactions out of dummy material of controlled lengths, so sizes can be
  measured with ``len()`` on actual serialized bytes;
* an element walker that enumerates every field of each script/witness
  layout and sums the element sizes, for models with fractional (averaged)
  signature sizes that cannot be materialized as bytes.

Nothing here calls into txsizes' arithmetic; specs are consumed only as
parameter records (kind, m, n, lengths).
"""

from __future__ import annotations

from fractions import Fraction

OP_0 = 0x00
OP_RETURN = 0x6A
OP_DUP = 0x76
OP_EQUAL = 0x87
OP_EQUALVERIFY = 0x88
OP_HASH160 = 0xA9
OP_CHECKSIG = 0xAC
OP_CHECKMULTISIG = 0xAE
OP_PUSHDATA1 = 0x4C
OP_PUSHDATA2 = 0x4D
OP_PUSHDATA4 = 0x4E


def cs(n: int) -> bytes:
    """CompactSize encoding."""
    if n <= 252:
        return bytes([n])
    if n <= 0xFFFF:
        return b"\xfd" + n.to_bytes(2, "little")
    if n <= 0xFFFF_FFFF:
        return b"\xfe" + n.to_bytes(4, "little")
    return b"\xff" + n.to_bytes(8, "little")


def push(data: bytes) -> bytes:
    """Script data push: opcode(s) plus the data."""
    n = len(data)
    if n <= 75:
        return bytes([n]) + data
    if n <= 0xFF:
        return bytes([OP_PUSHDATA1, n]) + data
    if n <= 0xFFFF:
        return bytes([OP_PUSHDATA2]) + n.to_bytes(2, "little") + data
    return bytes([OP_PUSHDATA4]) + n.to_bytes(4, "little") + data


def op_int(k: int) -> bytes:
    """Script encoding of the small integer k (OP_1..OP_16, else a 1-byte push)."""
    if k == 0:
        return bytes([OP_0])
    if 1 <= k <= 16:
        return bytes([0x50 + k])
    return push(bytes([k]))


# --- dummy material of controlled sizes ------------------------------------

def dummy_key(length: int = 33) -> bytes:
    prefix = b"\x02" if length == 33 else b"\x04"
    return prefix + bytes(range(1, length))[: length - 1].ljust(length - 1, b"\x55")


def dummy_der_sig(length: int) -> bytes:
    """Structurally valid DER signature + sighash byte, exactly ``length`` bytes.

    layout: 0x30 <seqlen> 0x02 <rlen> r 0x02 <slen> s <sighash>
    """
    assert 9 <= length <= 73, "cannot build a DER signature of that size"
    payload = length - 7
    r_len = min(32, payload - 1)
    s_len = payload - r_len
    r = b"\x01" * r_len
    s = b"\x02" * s_len
    body = b"\x02" + bytes([r_len]) + r + b"\x02" + bytes([s_len]) + s
    return b"\x30" + bytes([len(body)]) + body + b"\x01"


def dummy_schnorr_sig(length: int = 64) -> bytes:
    assert length in (64, 65)
    return b"\x07" * length


def dummy_hash(length: int) -> bytes:
    return b"\xaa" * length


def control_block(depth: int) -> bytes:
    return b"\xc0" + b"\x33" * 32 + b"\x44" * (32 * depth)


# --- script builders straight from the layout tables -----------------------

def ms_script(m: int, n: int, key_len: int = 33) -> bytes:
    """m-of-n CHECKMULTISIG script (locking / redeem / witness script)."""
    out = op_int(m)
    for _ in range(n):
        out += push(dummy_key(key_len))
    out += op_int(n) + bytes([OP_CHECKMULTISIG])
    return out


def locking_script(spec, key_len: int = 33) -> bytes:
    kind = spec.kind
    if kind == "p2pk":
        return push(dummy_key(key_len)) + bytes([OP_CHECKSIG])
    if kind == "p2pkh":
        return (
            bytes([OP_DUP, OP_HASH160])
            + push(dummy_hash(20))
            + bytes([OP_EQUALVERIFY, OP_CHECKSIG])
        )
    if kind == "ms":
        return ms_script(spec.m, spec.n, key_len)
    if kind == "nulldata":
        return bytes([OP_RETURN]) + push(b"\x6e" * spec.data_len)
    if kind == "p2sh":
        return bytes([OP_HASH160]) + push(dummy_hash(20)) + bytes([OP_EQUAL])
    if kind == "p2wpkh":
        return bytes([OP_0]) + push(dummy_hash(20))
    if kind == "p2wsh":
        return bytes([OP_0]) + push(dummy_hash(32))
    if kind == "p2tr":
        return bytes([0x51]) + push(dummy_hash(32))
    raise AssertionError(f"no locking script builder for {kind}")


def unlocking_script(spec, sig_len: int, key_len: int = 33) -> bytes:
    kind = spec.kind
    if kind == "p2pk":
        return push(dummy_der_sig(sig_len))
    if kind == "p2pkh":
        return push(dummy_der_sig(sig_len)) + push(dummy_key(key_len))
    if kind == "ms":
        out = bytes([OP_0])
        for _ in range(spec.m):
            out += push(dummy_der_sig(sig_len))
        return out
    if kind == "p2sh-ms":
        out = bytes([OP_0])
        for _ in range(spec.m):
            out += push(dummy_der_sig(sig_len))
        return out + push(ms_script(spec.m, spec.n, key_len))
    if kind == "p2sh-p2wsh-ms":
        return push(bytes([OP_0]) + push(dummy_hash(32)))
    if kind == "p2sh-p2wpkh":
        return push(bytes([OP_0]) + push(dummy_hash(20)))
    if kind in ("p2wpkh", "p2wsh-ms", "p2tr", "p2tr-script"):
        return b""
    raise AssertionError(f"no unlocking script builder for {kind}")


def _split_stack_data(shape) -> list[int]:
    if shape.item_sizes is not None:
        return list(shape.item_sizes)
    # even split; any split works as long as every chunk keeps its 1-byte varint
    items, total = shape.stack_items, shape.stack_data_len
    if items == 0:
        assert total == 0, "stack data without stack items"
        return []
    assert total <= 252 * items, "items would exceed 252 bytes; pass item_sizes"
    base, extra = divmod(total, items)
    return [base + (1 if i < extra else 0) for i in range(items)]


def witness_items(spec, sig_len: int, key_len: int = 33, schnorr_len: int = 64):
    """Witness stack for a spend of ``spec``, or None for non-witness kinds."""
    kind = spec.kind
    if kind in ("p2wpkh", "p2sh-p2wpkh"):
        return [dummy_der_sig(sig_len), dummy_key(key_len)]
    if kind in ("p2wsh-ms", "p2sh-p2wsh-ms"):
        items = [b""]
        items += [dummy_der_sig(sig_len) for _ in range(spec.m)]
        items.append(ms_script(spec.m, spec.n, key_len))
        return items
    if kind == "p2tr":
        return [dummy_schnorr_sig(schnorr_len)]
    if kind == "p2tr-script":
        shape = spec.taproot
        items = [b"\x6d" * size for size in _split_stack_data(shape)]
        items.append(b"\x51" * shape.script_len)
        items.append(control_block(shape.merkle_depth))
        return items
    return None


def serialize_witness(items: list[bytes]) -> bytes:
    out = cs(len(items))
    for item in items:
        out += cs(len(item)) + item
    return out


def build_tx(
    input_specs,
    output_specs,
    sig_len: int = 71,
    key_len: int = 33,
    schnorr_len: int = 64,
    version: int = 2,
    locktime: int = 0,
) -> bytes:
    """Serialize a complete dummy transaction for the given component specs."""
    stacks = [witness_items(spec, sig_len, key_len, schnorr_len) for spec in input_specs]
    segwit = any(stack is not None for stack in stacks)

    out = version.to_bytes(4, "little")
    if segwit:
        out += b"\x00\x01"
    out += cs(len(input_specs))
    for i, spec in enumerate(input_specs):
        script = unlocking_script(spec, sig_len, key_len)
        out += bytes([i % 256]) * 32  # txid
        out += (i).to_bytes(4, "little")
        out += cs(len(script)) + script
        out += b"\xff\xff\xff\xff"
    out += cs(len(output_specs))
    for spec in output_specs:
        script = locking_script(spec, key_len)
        out += (5000).to_bytes(8, "little")
        out += cs(len(script)) + script
    if segwit:
        for stack in stacks:
            out += serialize_witness(stack if stack is not None else [])
    out += locktime.to_bytes(4, "little")
    return out


# --- element walker for fractional (averaged) models -----------------------

def _cs_len(n) -> Fraction:
    if n <= 252:
        return Fraction(1)
    if n <= 0xFFFF:
        return Fraction(3)
    if n <= 0xFFFF_FFFF:
        return Fraction(5)
    return Fraction(9)


def _push_len(n) -> Fraction:
    if n <= 75:
        return Fraction(1)
    if n <= 0xFF:
        return Fraction(2)
    if n <= 0xFFFF:
        return Fraction(3)
    return Fraction(5)


def _op_int_len(k: int) -> Fraction:
    return Fraction(1) if k <= 16 else Fraction(2)


def _ms_script_size(m: int, n: int, key) -> Fraction:
    # OP_m, n * (push + key), OP_n, OP_CHECKMULTISIG
    return _op_int_len(m) + n * (_push_len(key) + key) + _op_int_len(n) + 1


def expected_output_size(spec, key=Fraction(33)) -> Fraction:
    kind = spec.kind
    if kind == "p2pk":
        script = _push_len(key) + key + 1
    elif kind == "p2pkh":
        script = 1 + 1 + 1 + 20 + 1 + 1
    elif kind == "ms":
        script = _ms_script_size(spec.m, spec.n, key)
    elif kind == "nulldata":
        script = 1 + _push_len(spec.data_len) + spec.data_len
    elif kind == "p2sh":
        script = 1 + 1 + 20 + 1
    elif kind == "p2wpkh":
        script = 1 + 1 + 20
    elif kind in ("p2wsh", "p2tr"):
        script = 1 + 1 + 32
    else:
        raise AssertionError(f"no expected size for output {kind}")
    return 8 + _cs_len(script) + script


def expected_input_size(spec, sig=Fraction(143, 2), key=Fraction(33)) -> Fraction:
    kind = spec.kind
    if kind == "p2pk":
        script = _push_len(sig) + sig
    elif kind == "p2pkh":
        script = _push_len(sig) + sig + _push_len(key) + key
    elif kind == "ms":
        script = 1 + spec.m * (_push_len(sig) + sig)
    elif kind == "p2sh-ms":
        redeem = _ms_script_size(spec.m, spec.n, key)
        script = 1 + spec.m * (_push_len(sig) + sig) + _push_len(redeem) + redeem
    elif kind == "p2sh-p2wsh-ms":
        script = _push_len(34) + 1 + 1 + 32
    elif kind == "p2sh-p2wpkh":
        script = _push_len(22) + 1 + 1 + 20
    elif kind in ("p2wpkh", "p2wsh-ms", "p2tr", "p2tr-script"):
        script = Fraction(0)
    else:
        raise AssertionError(f"no expected size for input {kind}")
    return 32 + 4 + _cs_len(script) + script + 4


def expected_witness_size(
    spec, sig=Fraction(143, 2), key=Fraction(33), schnorr=Fraction(64)
) -> Fraction | None:
    kind = spec.kind
    if kind in ("p2wpkh", "p2sh-p2wpkh"):
        return _cs_len(2) + _cs_len(sig) + sig + _cs_len(key) + key
    if kind in ("p2wsh-ms", "p2sh-p2wsh-ms"):
        script = _ms_script_size(spec.m, spec.n, key)
        return (
            _cs_len(spec.m + 2)
            + 1
            + spec.m * (_cs_len(sig) + sig)
            + _cs_len(script)
            + script
        )
    if kind == "p2tr":
        return _cs_len(1) + _cs_len(schnorr) + schnorr
    if kind == "p2tr-script":
        shape = spec.taproot
        if shape.item_sizes is not None:
            item_cost = sum((_cs_len(s) + s for s in shape.item_sizes), Fraction(0))
        else:
            # per-item sizes unknown; every item assumed small enough for 1 byte
            item_cost = Fraction(shape.stack_items + shape.stack_data_len)
        cb = 33 + 32 * shape.merkle_depth
        return (
            _cs_len(shape.stack_items + 2)
            + item_cost
            + _cs_len(shape.script_len)
            + shape.script_len
            + _cs_len(cb)
            + cb
        )
    return None
