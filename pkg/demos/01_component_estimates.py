"""
Component size estimates by script type
========================================

Every supported output, input, and witness family has an exact analytic
size. Sizes are `fractions.Fraction` values: averaged signatures contribute
half bytes, and nothing is ever rounded inside the library.
"""

from txsizes import (
    InputSpec,
    OutputSpec,
    format_size,
    input_size,
    output_size,
    witness_size,
)

# The fixed-size families first. Outputs are 8 bytes of amount plus the
# locking script and its length prefix; inputs are the 40-byte outpoint and
# sequence plus the unlocking script and its length prefix.
rows = [
    ("p2pk", OutputSpec("p2pk"), InputSpec("p2pk")),
    ("p2pkh", OutputSpec("p2pkh"), InputSpec("p2pkh")),
    ("p2sh + 2-of-3 multisig", OutputSpec("p2sh"), InputSpec("p2sh-ms", m=2, n=3)),
    ("p2sh-p2wpkh", OutputSpec("p2sh"), InputSpec("p2sh-p2wpkh")),
    ("p2wpkh", OutputSpec("p2wpkh"), InputSpec("p2wpkh")),
    ("p2wsh 2-of-3 multisig", OutputSpec("p2wsh"), InputSpec("p2wsh-ms", m=2, n=3)),
    ("p2tr key path", OutputSpec("p2tr"), InputSpec("p2tr")),
]

print(f"{'type':<24} {'output':>8} {'input':>8} {'witness':>8}")
for name, out_spec, in_spec in rows:
    wit = witness_size(in_spec)
    wit_text = format_size(wit.total) if in_spec.is_witness_spend else "-"
    print(
        f"{name:<24} {format_size(output_size(out_spec).total):>8} "
        f"{format_size(input_size(in_spec).total):>8} {wit_text:>8}"
    )

# Data-carrying outputs scale with their payload: 11 bytes of framing up to
# 75 bytes of data, one more beyond that (the explicit push opcode).
print()
for data_len in (20, 75, 76, 80):
    total = output_size(OutputSpec("nulldata", data_len=data_len)).total
    print(f"nulldata with {data_len:>2} bytes of data -> {format_size(total)} bytes")

# Each component also reports its labeled parts, which always sum to the
# total. Here is where the 147.5 bytes of a p2pkh input come from:
print()
comp = input_size(InputSpec("p2pkh"))
for label, size in comp.detail.items():
    print(f"  {label:<16} {format_size(size):>6}")
print(f"  {'total':<16} {format_size(comp.total):>6}")
