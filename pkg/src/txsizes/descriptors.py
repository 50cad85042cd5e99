"""Textual descriptors for input/output specs.

The grammar the CLI (and anything scripting it) uses:

    inputs:  p2pk | p2pkh | ms:M/N | p2sh-ms:M/N | p2sh-p2wsh-ms:M/N |
             p2sh-p2wpkh | p2wpkh | p2wsh-ms:M/N | p2tr |
             p2tr-script:items=I,data=D,script=S,depth=K
    outputs: p2pk | p2pkh | ms:M/N | nulldata:LEN | p2sh | p2wpkh | p2wsh | p2tr

Any descriptor may carry a repetition suffix ``xCOUNT`` ("p2wpkhx3").
"""

from __future__ import annotations

from .errors import DescriptorError, InvalidSpec
from .templates import (
    INPUT_KINDS,
    OUTPUT_KINDS,
    InputSpec,
    OutputSpec,
    TaprootScriptShape,
)

_INPUT_SYNTAX = (
    "p2pk, p2pkh, ms:M/N, p2sh-ms:M/N, p2sh-p2wsh-ms:M/N, p2sh-p2wpkh, "
    "p2wpkh, p2wsh-ms:M/N, p2tr, p2tr-script:items=I,data=D,script=S,depth=K"
)
_OUTPUT_SYNTAX = "p2pk, p2pkh, ms:M/N, nulldata:LEN, p2sh, p2wpkh, p2wsh, p2tr"


def _split_repeat(token: str) -> tuple[str, int]:
    """Split a trailing xCOUNT repetition suffix off ``token``."""
    head, sep, tail = token.rpartition("x")
    if sep and head and tail.isdigit():
        count = int(tail)
        if count < 1:
            raise DescriptorError(f"repetition count must be positive in {token!r}")
        return head, count
    return token, 1


def _parse_m_of_n(kind: str, arg: str, token: str) -> tuple[int, int]:
    parts = arg.split("/")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise DescriptorError(f"{kind} needs M/N, got {token!r}")
    return int(parts[0]), int(parts[1])


def _parse_taproot_shape(arg: str, token: str) -> TaprootScriptShape:
    fields = {}
    for part in arg.split(","):
        key, sep, value = part.partition("=")
        if not sep or not value.lstrip("-").isdigit():
            raise DescriptorError(f"bad p2tr-script parameter {part!r} in {token!r}")
        fields[key] = int(value)
    expected = {"items", "data", "script", "depth"}
    if set(fields) != expected:
        raise DescriptorError(
            f"p2tr-script needs exactly items=,data=,script=,depth= in {token!r}"
        )
    return TaprootScriptShape(
        stack_items=fields["items"],
        stack_data_len=fields["data"],
        script_len=fields["script"],
        merkle_depth=fields["depth"],
    )


def parse_input_descriptor(token: str) -> list[InputSpec]:
    """Parse one input descriptor, expanding any repetition suffix."""
    body, count = _split_repeat(token)
    kind, sep, arg = body.partition(":")
    try:
        if kind in ("ms", "p2sh-ms", "p2sh-p2wsh-ms", "p2wsh-ms"):
            if not sep:
                raise DescriptorError(f"{kind} needs :M/N, got {token!r}")
            m, n = _parse_m_of_n(kind, arg, token)
            spec = InputSpec(kind, m=m, n=n)
        elif kind == "p2tr-script":
            if not sep:
                raise DescriptorError(f"p2tr-script needs parameters, got {token!r}")
            spec = InputSpec(kind, taproot=_parse_taproot_shape(arg, token))
        elif kind in INPUT_KINDS:
            if sep:
                raise DescriptorError(f"{kind} takes no parameters, got {token!r}")
            spec = InputSpec(kind)
        else:
            raise DescriptorError(
                f"unknown input kind {kind!r}; valid kinds: {_INPUT_SYNTAX}"
            )
    except InvalidSpec as exc:
        raise DescriptorError(f"bad input descriptor {token!r}: {exc}") from None
    return [spec] * count


def parse_output_descriptor(token: str) -> list[OutputSpec]:
    """Parse one output descriptor, expanding any repetition suffix."""
    body, count = _split_repeat(token)
    kind, sep, arg = body.partition(":")
    try:
        if kind == "ms":
            if not sep:
                raise DescriptorError(f"ms needs :M/N, got {token!r}")
            m, n = _parse_m_of_n(kind, arg, token)
            spec = OutputSpec(kind, m=m, n=n)
        elif kind == "nulldata":
            if not sep or not arg.isdigit():
                raise DescriptorError(f"nulldata needs :LEN, got {token!r}")
            spec = OutputSpec(kind, data_len=int(arg))
        elif kind in OUTPUT_KINDS:
            if sep:
                raise DescriptorError(f"{kind} takes no parameters, got {token!r}")
            spec = OutputSpec(kind)
        else:
            raise DescriptorError(
                f"unknown output kind {kind!r}; valid kinds: {_OUTPUT_SYNTAX}"
            )
    except InvalidSpec as exc:
        raise DescriptorError(f"bad output descriptor {token!r}: {exc}") from None
    return [spec] * count


def parse_input_descriptors(tokens: list[str]) -> list[InputSpec]:
    specs: list[InputSpec] = []
    for token in tokens:
        specs.extend(parse_input_descriptor(token))
    return specs


def parse_output_descriptors(tokens: list[str]) -> list[OutputSpec]:
    specs: list[OutputSpec] = []
    for token in tokens:
        specs.extend(parse_output_descriptor(token))
    return specs


def input_descriptor(spec: InputSpec) -> str:
    """Render an input spec back to its descriptor form."""
    if spec.kind in ("ms", "p2sh-ms", "p2sh-p2wsh-ms", "p2wsh-ms"):
        return f"{spec.kind}:{spec.m}/{spec.n}"
    if spec.kind == "p2tr-script":
        s = spec.taproot
        return (
            f"p2tr-script:items={s.stack_items},data={s.stack_data_len},"
            f"script={s.script_len},depth={s.merkle_depth}"
        )
    return spec.kind


def output_descriptor(spec: OutputSpec) -> str:
    """Render an output spec back to its descriptor form."""
    if spec.kind == "ms":
        return f"ms:{spec.m}/{spec.n}"
    if spec.kind == "nulldata":
        return f"nulldata:{spec.data_len}"
    return spec.kind
