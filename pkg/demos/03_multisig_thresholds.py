"""
Multisig growth and the length-prefix steps
===========================================

m-of-n sizes grow linearly in m (signatures) and n (keys), except where a
length prefix changes width: data pushes cost an extra byte past 75 bytes,
and CompactSize varints jump from 1 to 3 bytes past 252. Both steps show up
in p2sh multisig inputs, which is why a 2-of-3 spend costs 296 bytes while
the bare linear formula would say 293.
"""

from txsizes import EcdsaSig, InputSpec, SizeModel, format_size, input_size, witness_size

print("p2sh m-of-n multisig input sizes (average signature model):")
corner = "m/n"
print(f"{corner:>4}" + "".join(f"{n:>8}" for n in range(1, 8)))
for m in range(1, 8):
    cells = []
    for n in range(1, 8):
        if m > n:
            cells.append(f"{'':>8}")
        else:
            total = input_size(InputSpec("p2sh-ms", m=m, n=n)).total
            cells.append(f"{format_size(total):>8}")
    print(f"{m:>4}" + "".join(cells))

# The jump between n=2 and n=3 on any row is 35 bytes, not 34: at three keys
# a redeem script outgrows the single-byte push (34*3+3 = 105 > 75).
one_of_two = input_size(InputSpec("p2sh-ms", m=1, n=2)).total
one_of_three = input_size(InputSpec("p2sh-ms", m=1, n=3)).total
print(f"\nadding the third key costs {format_size(one_of_three - one_of_two)} bytes")

# The varint step is visible with fixed-size signatures. With two 71-byte
# signatures a 2-of-3 unlocking script is exactly 252 bytes and keeps its
# 1-byte length varint; two 72-byte signatures push it to 254 and a 3-byte
# varint, so the spend grows by four bytes, not two.
spec = InputSpec("p2sh-ms", m=2, n=3)
for k in (71, 72):
    total = input_size(spec, SizeModel(ecdsa=EcdsaSig.fixed(k))).total
    print(f"2-of-3 p2sh input with {k}-byte signatures: {format_size(total)} bytes")

# Witness-side multisig pays the same structural costs at a quarter of the
# weight. The witness script's length lives in a varint, so its step sits at
# 252 bytes (n=8 for 33-byte keys), not at 75.
print()
for n in (7, 8):
    total = witness_size(InputSpec("p2wsh-ms", m=1, n=n)).total
    print(f"1-of-{n} p2wsh witness: {format_size(total)} bytes")
