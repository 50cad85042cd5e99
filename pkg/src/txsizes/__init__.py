"""Analytic size estimates for Bitcoin transactions.

Build a :class:`TxTemplate` from typed input/output specs and get exact
bytes, weight units, and virtual bytes back, with a per-component breakdown;
or parse real serialized transactions and measure how the estimates hold up.

Quick start::

    from txsizes import TxTemplate, estimate_tx, parse_input_descriptors, \
        parse_output_descriptors

    tpl = TxTemplate(parse_input_descriptors(["p2wpkh"]),
                     parse_output_descriptors(["p2wpkh", "p2pkh"]))
    est = estimate_tx(tpl)
    est.total_bytes   # Fraction(451, 2) == 225.5
"""

from .encoding import SizeQ, format_size, push_size, to_number, varint_size
from .errors import (
    CorpusError,
    DescriptorError,
    InvalidSpec,
    ParseError,
    RangeError,
    RpcError,
    TxSizeError,
)
from .estimator import TxEstimate, TxTemplate, estimate_tx, explain
from .models import (
    DEFAULT_MODEL,
    ECDSA_AVERAGE,
    ECDSA_LEGACY,
    ECDSA_LOW_R,
    ECDSA_LOW_S,
    EcdsaSig,
    PubKey,
    SchnorrSig,
    SizeModel,
    ecdsa_model_from_name,
    ecdsa_sig_size,
    pubkey_size,
    schnorr_sig_size,
)
from .descriptors import (
    input_descriptor,
    output_descriptor,
    parse_input_descriptor,
    parse_input_descriptors,
    parse_output_descriptor,
    parse_output_descriptors,
)
from .rawtx import (
    Classification,
    ParsedInput,
    ParsedOutput,
    ParsedTx,
    ParsedWitness,
    classify_input,
    classify_output,
    measure,
    parse_tx,
    serialize_tx,
)
from .templates import (
    ComponentSize,
    InputSpec,
    OutputSpec,
    TaprootScriptShape,
    input_size,
    multisig_script_len,
    output_size,
    witness_size,
)

__version__ = "0.1.0"

__all__ = [
    "SizeQ",
    "format_size",
    "push_size",
    "to_number",
    "varint_size",
    "TxSizeError",
    "InvalidSpec",
    "DescriptorError",
    "ParseError",
    "CorpusError",
    "RpcError",
    "RangeError",
    "TxEstimate",
    "TxTemplate",
    "estimate_tx",
    "explain",
    "DEFAULT_MODEL",
    "ECDSA_AVERAGE",
    "ECDSA_LEGACY",
    "ECDSA_LOW_R",
    "ECDSA_LOW_S",
    "EcdsaSig",
    "PubKey",
    "SchnorrSig",
    "SizeModel",
    "ecdsa_model_from_name",
    "ecdsa_sig_size",
    "pubkey_size",
    "schnorr_sig_size",
    "input_descriptor",
    "output_descriptor",
    "parse_input_descriptor",
    "parse_input_descriptors",
    "parse_output_descriptor",
    "parse_output_descriptors",
    "Classification",
    "ParsedInput",
    "ParsedOutput",
    "ParsedTx",
    "ParsedWitness",
    "classify_input",
    "classify_output",
    "measure",
    "parse_tx",
    "serialize_tx",
    "ComponentSize",
    "InputSpec",
    "OutputSpec",
    "TaprootScriptShape",
    "input_size",
    "multisig_script_len",
    "output_size",
    "witness_size",
]
