"""Bottom-up assembly of whole-transaction size estimates.

A template (ordered inputs, ordered outputs, size model) becomes an exact
estimate of total bytes, base bytes, witness bytes, weight units, and
virtual bytes, with a per-component breakdown that sums to the total.

Weight counts base bytes four times and witness bytes once; virtual bytes
are weight over four, kept as an exact rational (real nodes round up for fee
purposes, which is left to display code). The two SegWit marker/flag bytes
are tallied with the witness data, since they only exist in the witness
serialization and weigh one unit each.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .encoding import SizeQ, varint_size
from .errors import InvalidSpec
from .models import DEFAULT_MODEL, SizeModel
from .templates import (
    ComponentSize,
    InputSpec,
    OutputSpec,
    empty_witness_stub,
    input_size,
    output_size,
    witness_size,
)


@dataclass(frozen=True)
class TxTemplate:
    """A transaction shape to estimate: typed inputs and outputs plus a size model."""

    inputs: tuple[InputSpec, ...]
    outputs: tuple[OutputSpec, ...]
    model: SizeModel = DEFAULT_MODEL
    allow_large_data: bool = False
    # allow component-only queries with an empty side
    allow_partial: bool = False

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))

    @property
    def is_segwit(self) -> bool:
        return any(spec.is_witness_spend for spec in self.inputs)


@dataclass(frozen=True)
class TxEstimate:
    """Exact size figures for one template, with the per-component breakdown."""

    total_bytes: SizeQ
    base_bytes: SizeQ
    witness_bytes: SizeQ
    weight: SizeQ
    vbytes: SizeQ
    overhead: ComponentSize
    inputs: tuple[ComponentSize, ...]
    outputs: tuple[ComponentSize, ...]
    witnesses: tuple[ComponentSize, ...]  # empty for legacy transactions
    template: TxTemplate = field(repr=False, compare=False, default=None)

    @property
    def breakdown(self) -> tuple[ComponentSize, ...]:
        return (self.overhead, *self.inputs, *self.outputs, *self.witnesses)


def estimate_tx(tpl: TxTemplate) -> TxEstimate:
    """Estimate the serialized size of a transaction built from ``tpl``.

    Base bytes cover version, the two count varints, inputs, outputs, and
    locktime; if any input spends a witness program, every input contributes
    a witness (legacy ones a one-byte empty stub) plus the two marker/flag
    bytes.
    """
    if not tpl.allow_partial and (not tpl.inputs or not tpl.outputs):
        raise InvalidSpec("template needs at least one input and one output")

    in_sizes = tuple(input_size(spec, tpl.model) for spec in tpl.inputs)
    out_sizes = tuple(
        output_size(spec, tpl.model, allow_large_data=tpl.allow_large_data)
        for spec in tpl.outputs
    )
    segwit = tpl.is_segwit

    overhead_parts = [
        ("version", Fraction(4)),
        ("input count", varint_size(len(tpl.inputs))),
        ("output count", varint_size(len(tpl.outputs))),
        ("locktime", Fraction(4)),
    ]
    if segwit:
        overhead_parts.insert(1, ("segwit marker+flag", Fraction(2)))
    overhead = ComponentSize.from_parts(overhead_parts)

    base = (
        Fraction(8)
        + varint_size(len(tpl.inputs))
        + varint_size(len(tpl.outputs))
        + sum((c.total for c in in_sizes), Fraction(0))
        + sum((c.total for c in out_sizes), Fraction(0))
    )

    if segwit:
        wit_sizes = tuple(
            witness_size(spec, tpl.model)
            if spec.is_witness_spend
            else empty_witness_stub()
            for spec in tpl.inputs
        )
        witness = Fraction(2) + sum((c.total for c in wit_sizes), Fraction(0))
    else:
        wit_sizes = ()
        witness = Fraction(0)

    total = base + witness
    weight = 4 * base + witness
    return TxEstimate(
        total_bytes=total,
        base_bytes=base,
        witness_bytes=witness,
        weight=weight,
        vbytes=weight / 4,
        overhead=overhead,
        inputs=in_sizes,
        outputs=out_sizes,
        witnesses=wit_sizes,
        template=tpl,
    )


def explain(tpl: TxTemplate) -> TxEstimate:
    """Like :func:`estimate_tx`; the name signals interest in the breakdown.

    Every estimate already carries the full per-component detail, so this is
    the same computation; front ends render the labeled parts when asked to
    explain.
    """
    return estimate_tx(tpl)
