from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from txsizes import (
    EcdsaSig,
    InputSpec,
    InvalidSpec,
    OutputSpec,
    PubKey,
    SizeModel,
    TaprootScriptShape,
    input_size,
    output_size,
    witness_size,
)

import oracle

F = Fraction


# --- fixed output sizes -----------------------------------------------------

@pytest.mark.parametrize(
    "spec,expected",
    [
        (OutputSpec("p2pk"), 44),
        (OutputSpec("p2pkh"), 34),
        (OutputSpec("ms", m=1, n=2), 80),
        (OutputSpec("ms", m=1, n=3), 114),
        (OutputSpec("nulldata", data_len=0), 11),
        (OutputSpec("nulldata", data_len=20), 31),
        (OutputSpec("nulldata", data_len=75), 86),
        (OutputSpec("nulldata", data_len=76), 88),
        (OutputSpec("nulldata", data_len=80), 92),
        (OutputSpec("p2sh"), 32),
        (OutputSpec("p2wpkh"), 31),
        (OutputSpec("p2wsh"), 43),
        (OutputSpec("p2tr"), 43),
    ],
)
def test_output_sizes(spec, expected):
    comp = output_size(spec)
    assert comp.total == F(expected)
    assert sum(comp.detail.values()) == comp.total


# --- fixed input sizes under the default model -------------------------------

@pytest.mark.parametrize(
    "spec,expected",
    [
        (InputSpec("p2pk"), F("113.5")),
        (InputSpec("p2pkh"), F("147.5")),
        (InputSpec("ms", m=1, n=2), F("114.5")),
        (InputSpec("ms", m=1, n=3), F("114.5")),
        (InputSpec("p2sh-ms", m=2, n=2), 259),
        (InputSpec("p2sh-ms", m=2, n=3), 296),
        (InputSpec("p2sh-p2wsh-ms", m=2, n=3), 76),
        (InputSpec("p2sh-p2wpkh"), 64),
        (InputSpec("p2wpkh"), 41),
        (InputSpec("p2wsh-ms", m=2, n=3), 41),
        (InputSpec("p2tr"), 41),
    ],
)
def test_input_sizes(spec, expected):
    comp = input_size(spec)
    assert comp.total == F(expected)
    assert sum(comp.detail.values()) == comp.total


# --- fixed witness sizes ------------------------------------------------------

@pytest.mark.parametrize(
    "spec,expected",
    [
        (InputSpec("p2wpkh"), F("107.5")),
        (InputSpec("p2sh-p2wpkh"), F("107.5")),
        (InputSpec("p2wsh-ms", m=1, n=1), F("112.5")),
        (InputSpec("p2wsh-ms", m=2, n=2), 219),
        (InputSpec("p2wsh-ms", m=2, n=3), 253),
        (InputSpec("p2sh-p2wsh-ms", m=2, n=2), 219),
        (InputSpec("p2sh-p2wsh-ms", m=2, n=3), 253),
        (InputSpec("p2tr"), 66),
    ],
)
def test_witness_sizes(spec, expected):
    comp = witness_size(spec)
    assert comp.total == F(expected)
    assert sum(comp.detail.values()) == comp.total


def test_p2pk_input_with_fixed_71_signature():
    model = SizeModel(ecdsa=EcdsaSig.fixed(71))
    assert input_size(InputSpec("p2pk"), model).total == 40 + 1 + 1 + 71


def test_uncompressed_key_model_reproduces_historic_sizes():
    """Early-chain artifacts: 76-byte p2pk outputs, ~180-byte p2pkh inputs."""
    model = SizeModel(pubkey=PubKey.UNCOMPRESSED)
    assert output_size(OutputSpec("p2pk"), model).total == 76
    assert input_size(InputSpec("p2pkh"), model).total == F("179.5")


def test_legacy_kind_witness_is_the_empty_stub():
    assert witness_size(InputSpec("p2pkh")).total == 1
    assert witness_size(InputSpec("p2sh-ms", m=2, n=3)).total == 1


def test_taproot_keypath_custom_sighash():
    from txsizes import SchnorrSig

    model = SizeModel(schnorr=SchnorrSig.CUSTOM_SIGHASH)
    assert witness_size(InputSpec("p2tr"), model).total == 67


def test_taproot_script_path_example():
    shape = TaprootScriptShape(
        stack_items=1, stack_data_len=64, script_len=34, merkle_depth=0
    )
    comp = witness_size(InputSpec("p2tr-script", taproot=shape))
    assert comp.total == 1 + (1 + 64) + (1 + 34) + (1 + 33)


def test_taproot_script_path_explicit_item_sizes():
    shape = TaprootScriptShape.from_items((300,), script_len=40, merkle_depth=2)
    comp = witness_size(InputSpec("p2tr-script", taproot=shape))
    # 300-byte item needs a 3-byte varint; control block is 33 + 64
    assert comp.total == 1 + (3 + 300) + (1 + 40) + (1 + 97)


def test_control_block_grows_32_per_level():
    def total(depth):
        shape = TaprootScriptShape(1, 64, 34, depth)
        return witness_size(InputSpec("p2tr-script", taproot=shape)).total

    assert total(1) - total(0) == 32
    assert total(6) - total(0) == 32 * 6
    # past depth 6 the control block outgrows the single-byte length varint
    assert total(128) - total(0) == 32 * 128 + 2


# --- spec validation ----------------------------------------------------------

def test_invalid_specs_rejected():
    with pytest.raises(InvalidSpec):
        OutputSpec("p2pq")
    with pytest.raises(InvalidSpec):
        OutputSpec("ms", m=2, n=1)
    with pytest.raises(InvalidSpec):
        OutputSpec("ms", m=0, n=3)
    with pytest.raises(InvalidSpec):
        OutputSpec("ms", m=1, n=21)
    with pytest.raises(InvalidSpec):
        InputSpec("p2sh-ms", m=3)
    with pytest.raises(InvalidSpec):
        InputSpec("p2wpkh", m=1, n=1)
    with pytest.raises(InvalidSpec):
        TaprootScriptShape(1, 64, 0, 0)
    with pytest.raises(InvalidSpec):
        TaprootScriptShape(1, 64, 34, 129)
    with pytest.raises(InvalidSpec):
        TaprootScriptShape(2, 64, 34, 0, item_sizes=(64,))


def test_nulldata_policy_cap():
    with pytest.raises(InvalidSpec):
        output_size(OutputSpec("nulldata", data_len=81))
    assert output_size(OutputSpec("nulldata", data_len=81), allow_large_data=True).total == 93


# --- byte-level oracle sweep ----------------------------------------------------

_FIXED_MODELS = [
    SizeModel(ecdsa=EcdsaSig.fixed(k)) for k in (70, 71, 72, 73)
]


@pytest.mark.parametrize("key", [PubKey.COMPRESSED, PubKey.UNCOMPRESSED])
def test_multisig_families_match_assembled_bytes(key):
    """Every m-of-n estimate equals the measured size of real assembled bytes."""
    for model in _FIXED_MODELS:
        model = SizeModel(pubkey=key, ecdsa=model.ecdsa)
        sig_len = int(model.ecdsa.size)
        key_len = key.value
        for n in range(1, 21):
            for m in range(1, n + 1):
                out_spec = OutputSpec("ms", m=m, n=n)
                assert output_size(out_spec, model).total == len(
                    oracle.cs(len(oracle.locking_script(out_spec, key_len)))
                ) + len(oracle.locking_script(out_spec, key_len)) + 8
                for kind in ("ms", "p2sh-ms"):
                    spec = InputSpec(kind, m=m, n=n)
                    script = oracle.unlocking_script(spec, sig_len, key_len)
                    real = 40 + len(oracle.cs(len(script))) + len(script)
                    assert input_size(spec, model).total == real, (kind, m, n, model)
                for kind in ("p2wsh-ms", "p2sh-p2wsh-ms"):
                    spec = InputSpec(kind, m=m, n=n)
                    items = oracle.witness_items(spec, sig_len, key_len)
                    real = len(oracle.serialize_witness(items))
                    assert witness_size(spec, model).total == real, (kind, m, n, model)


def test_nulldata_sweep_matches_assembled_bytes():
    for data_len in range(0, 121):
        spec = OutputSpec("nulldata", data_len=data_len)
        script = oracle.locking_script(spec)
        real = 8 + len(oracle.cs(len(script))) + len(script)
        assert output_size(spec, allow_large_data=True).total == real


# --- threshold behavior -----------------------------------------------------------

def test_p2sh_ms_push_step():
    """+1 exactly when the redeem script leaves the single-byte push range."""
    model = SizeModel(ecdsa=EcdsaSig.fixed(71))

    def total(n):
        return input_size(InputSpec("p2sh-ms", m=1, n=n), model).total

    # redeem script is 34n+3: 71 bytes at n=2, 105 at n=3
    assert total(3) - total(2) == 34 + 1


def test_p2sh_ms_varint_step():
    """+2 more when the whole unlocking script leaves the 1-byte varint range."""
    model_71 = SizeModel(ecdsa=EcdsaSig.fixed(71))
    model_72 = SizeModel(ecdsa=EcdsaSig.fixed(72))
    spec = InputSpec("p2sh-ms", m=2, n=3)
    # 2x71-byte sigs keep the unlocking script at 252 bytes; 2x72 pushes it to 254
    assert input_size(spec, model_71).total == 293
    assert input_size(spec, model_72).total == 297


def test_witness_script_varint_step():
    model = SizeModel(ecdsa=EcdsaSig.fixed(71))

    def total(n):
        return witness_size(InputSpec("p2wsh-ms", m=1, n=n), model).total

    # witness script is 34n+3: 241 bytes at n=7, 275 at n=8
    assert total(8) - total(7) == 34 + 2


# --- model substitution -------------------------------------------------------------

def test_half_byte_per_signature_off_thresholds():
    """average -> fixed:71 saves exactly 0.5 per signature while no prefix steps."""
    fixed71 = SizeModel(ecdsa=EcdsaSig.fixed(71))
    for m, n in ((1, 1), (1, 3), (2, 3), (3, 5)):
        spec = InputSpec("ms", m=m, n=n)
        if m >= 4:
            continue  # unlocking script would cross the varint step
        assert input_size(spec).total - input_size(spec, fixed71).total == F(m, 2)
    assert input_size(InputSpec("p2pkh")).total - input_size(
        InputSpec("p2pkh"), fixed71
    ).total == F(1, 2)


def test_one_byte_per_signature_between_fixed_models_off_thresholds():
    fixed71 = SizeModel(ecdsa=EcdsaSig.fixed(71))
    fixed72 = SizeModel(ecdsa=EcdsaSig.fixed(72))
    for m, n in ((1, 1), (2, 2), (3, 4)):
        spec = InputSpec("p2wsh-ms", m=m, n=n)
        delta = witness_size(spec, fixed72).total - witness_size(spec, fixed71).total
        assert delta == m


# --- monotonicity -----------------------------------------------------------------

@given(
    st.integers(min_value=1, max_value=19),
    st.integers(min_value=1, max_value=19),
)
def test_multisig_monotonicity(m, n):
    if m > n:
        m, n = n, m
    spec = InputSpec("p2sh-ms", m=m, n=n)
    bigger_m = InputSpec("p2sh-ms", m=m + 1, n=max(n, m + 1))
    bigger_n = InputSpec("p2sh-ms", m=m, n=n + 1)
    assert input_size(bigger_n).total > input_size(spec).total
    assert input_size(bigger_m).total > input_size(spec).total
    wit = InputSpec("p2wsh-ms", m=m, n=n)
    assert witness_size(InputSpec("p2wsh-ms", m=m, n=n + 1)).total > witness_size(wit).total


# --- detail maps --------------------------------------------------------------------

def test_detail_sums_to_total_everywhere():
    specs = [
        (output_size, OutputSpec("nulldata", data_len=76)),
        (input_size, InputSpec("p2sh-ms", m=3, n=5)),
        (witness_size, InputSpec("p2sh-p2wsh-ms", m=2, n=3)),
    ]
    for fn, spec in specs:
        comp = fn(spec)
        assert sum(comp.detail.values()) == comp.total
