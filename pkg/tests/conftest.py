import random

import pytest

from txsizes import InputSpec, OutputSpec, TaprootScriptShape

INPUT_POOL = [
    lambda rng: InputSpec("p2pk"),
    lambda rng: InputSpec("p2pkh"),
    lambda rng: InputSpec("p2wpkh"),
    lambda rng: InputSpec("p2sh-p2wpkh"),
    lambda rng: InputSpec("p2tr"),
    lambda rng: _ms(rng, "ms"),
    lambda rng: _ms(rng, "p2sh-ms"),
    lambda rng: _ms(rng, "p2wsh-ms"),
    lambda rng: _ms(rng, "p2sh-p2wsh-ms"),
    lambda rng: _taproot_script(rng),
]

OUTPUT_POOL = [
    lambda rng: OutputSpec("p2pk"),
    lambda rng: OutputSpec("p2pkh"),
    lambda rng: OutputSpec("p2sh"),
    lambda rng: OutputSpec("p2wpkh"),
    lambda rng: OutputSpec("p2wsh"),
    lambda rng: OutputSpec("p2tr"),
    lambda rng: _ms_out(rng),
    lambda rng: OutputSpec("nulldata", data_len=rng.randint(0, 80)),
]


def _mn(rng, cap=20):
    n = rng.randint(1, cap)
    return rng.randint(1, n), n


def _ms(rng, kind):
    m, n = _mn(rng)
    return InputSpec(kind, m=m, n=n)


def _ms_out(rng):
    m, n = _mn(rng)
    return OutputSpec("ms", m=m, n=n)


def _taproot_script(rng):
    items = rng.randint(0, 4)
    if rng.random() < 0.3:
        # explicit per-item sizes, occasionally beyond the 252-byte default
        sizes = tuple(rng.randint(0, 400) for _ in range(items))
        shape = TaprootScriptShape.from_items(
            sizes, script_len=rng.randint(1, 300), merkle_depth=rng.randint(0, 8)
        )
    else:
        data = rng.randint(0, 200 * items) if items else 0
        shape = TaprootScriptShape(
            stack_items=items,
            stack_data_len=data,
            script_len=rng.randint(1, 300),
            merkle_depth=rng.randint(0, 8),
        )
    return InputSpec("p2tr-script", taproot=shape)


def random_components(rng: random.Random):
    """A random non-empty list of input specs and output specs."""
    inputs = [rng.choice(INPUT_POOL)(rng) for _ in range(rng.randint(1, 4))]
    outputs = [rng.choice(OUTPUT_POOL)(rng) for _ in range(rng.randint(1, 4))]
    return inputs, outputs


@pytest.fixture
def rng():
    return random.Random(0xB17C01)
