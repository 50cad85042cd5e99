"""Command-line front end: estimate, explain, parse, and corpus subcommands.

Exit codes follow sysexits conventions: 0 on success, 2 for usage and input
errors, 70 for internal failures. JSON output is deterministic: fixed key
order, exact decimal rendering of fractional byte counts.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .corpus import (
    export_histogram,
    ingest_file,
    ingest_rpc,
    result_from_json,
    result_to_json,
)
from .descriptors import (
    input_descriptor,
    output_descriptor,
    parse_input_descriptors,
    parse_output_descriptors,
)
from .encoding import to_number
from .errors import TxSizeError
from .estimator import TxEstimate, TxTemplate, estimate_tx
from .models import PubKey, SchnorrSig, SizeModel, ecdsa_model_from_name
from .rawtx import ParsedTx, parse_tx

ENV_RPC_URL = "TXSIZE_RPC_URL"
ENV_RPC_USER = "TXSIZE_RPC_USER"
ENV_RPC_PASS = "TXSIZE_RPC_PASS"

EXIT_USAGE = 2
EXIT_INTERNAL = 70

_PUBKEY_NAMES = {
    "compressed": PubKey.COMPRESSED,
    "uncompressed": PubKey.UNCOMPRESSED,
    "xonly": PubKey.XONLY,
}
_SCHNORR_NAMES = {
    "default": SchnorrSig.DEFAULT_SIGHASH,
    "custom": SchnorrSig.CUSTOM_SIGHASH,
}


def _build_model(args: argparse.Namespace) -> SizeModel:
    return SizeModel(
        pubkey=_PUBKEY_NAMES[args.pubkey_model],
        ecdsa=ecdsa_model_from_name(args.sig_model),
        schnorr=_SCHNORR_NAMES[args.schnorr_model],
    )


def _estimate_doc(est: TxEstimate, detail: bool, vbytes_mode: str) -> dict:
    tpl = est.template
    vbytes = (
        math.ceil(est.vbytes) if vbytes_mode == "ceil" else to_number(est.vbytes)
    )
    breakdown = []

    def entry(component: str, index: int | None, label: str, size) -> dict:
        doc = {"component": component}
        if index is not None:
            doc["index"] = index
        doc["spec"] = label
        doc["bytes"] = to_number(size.total)
        if detail:
            doc["detail"] = {k: to_number(v) for k, v in size.detail.items()}
        return doc

    breakdown.append(entry("overhead", None, "fixed fields", est.overhead))
    for i, (spec, size) in enumerate(zip(tpl.inputs, est.inputs)):
        breakdown.append(entry("input", i, input_descriptor(spec), size))
    for i, (spec, size) in enumerate(zip(tpl.outputs, est.outputs)):
        breakdown.append(entry("output", i, output_descriptor(spec), size))
    for i, (spec, size) in enumerate(zip(tpl.inputs, est.witnesses)):
        breakdown.append(entry("witness", i, input_descriptor(spec), size))

    return {
        "total_bytes": to_number(est.total_bytes),
        "base_bytes": to_number(est.base_bytes),
        "witness_bytes": to_number(est.witness_bytes),
        "weight": to_number(est.weight),
        "vbytes": vbytes,
        "breakdown": breakdown,
    }


def _print_estimate(doc: dict, detail: bool) -> None:
    width = max(len(str(e["spec"])) for e in doc["breakdown"]) + 14
    for e in doc["breakdown"]:
        where = e["component"] + (f"[{e['index']}]" if "index" in e else "")
        print(f"{where + ' ' + e['spec']:<{width}} {e['bytes']}")
        if detail:
            for label, size in e["detail"].items():
                print(f"    {label:<{width - 4}} {size}")
    print()
    for key in ("total_bytes", "base_bytes", "witness_bytes", "weight", "vbytes"):
        print(f"{key:<{width}} {doc[key]}")


def _cmd_estimate(args: argparse.Namespace, detail: bool) -> int:
    inputs = parse_input_descriptors(args.input)
    outputs = parse_output_descriptors(args.output)
    tpl = TxTemplate(
        inputs,
        outputs,
        model=_build_model(args),
        allow_large_data=args.allow_large_nulldata,
    )
    est = estimate_tx(tpl)
    doc = _estimate_doc(est, detail, args.vbytes_mode)
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        _print_estimate(doc, detail)
    return 0


def _parsed_doc(tx: ParsedTx) -> dict:
    def classification_doc(c) -> dict:
        doc = {"kind": c.kind}
        if c.m is not None:
            doc["m"] = c.m
        if c.n is not None:
            doc["n"] = c.n
        if c.data_len is not None:
            doc["data_len"] = c.data_len
        if c.shape is not None:
            doc["taproot"] = {
                "items": c.shape.stack_items,
                "data": c.shape.stack_data_len,
                "script": c.shape.script_len,
                "depth": c.shape.merkle_depth,
            }
        return doc

    return {
        "version": tx.version,
        "segwit": tx.segwit,
        "total_size": tx.total_size,
        "base_size": tx.base_size,
        "weight": tx.weight,
        "vbytes": to_number(tx.vbytes),
        "locktime": tx.locktime,
        "inputs": [
            {
                "index": i,
                **classification_doc(txin.classification),
                "script_size": len(txin.script),
                "size": txin.size,
            }
            for i, txin in enumerate(tx.inputs)
        ],
        "outputs": [
            {
                "index": i,
                **classification_doc(txout.classification),
                "script_size": len(txout.script),
                "size": txout.size,
            }
            for i, txout in enumerate(tx.outputs)
        ],
        "witnesses": [
            {"index": i, "kind": wit.kind, "items": len(wit.items), "size": wit.size}
            for i, wit in enumerate(tx.witnesses)
        ],
    }


def _cmd_parse(args: argparse.Namespace) -> int:
    if args.file == "-":
        raw: bytes | str = sys.stdin.read()
    else:
        with open(args.file, "rb") as handle:
            data = handle.read()
        try:
            raw = data.decode("ascii")
        except UnicodeDecodeError:
            raw = data  # raw binary transaction
    tx = parse_tx(raw)
    doc = _parsed_doc(tx)
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(
            f"version {doc['version']}  segwit {str(doc['segwit']).lower()}  "
            f"size {doc['total_size']}  base {doc['base_size']}  "
            f"weight {doc['weight']}  vbytes {doc['vbytes']}"
        )
        for row in doc["inputs"]:
            print(f"input[{row['index']}]   {row['kind']:<14} {row['size']} bytes")
        for row in doc["outputs"]:
            print(f"output[{row['index']}]  {row['kind']:<14} {row['size']} bytes")
        for row in doc["witnesses"]:
            print(f"witness[{row['index']}] {row['kind']:<14} {row['size']} bytes")
    return 0


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_corpus(args: argparse.Namespace) -> int:
    kinds = frozenset(args.filter.split(",")) if getattr(args, "filter", None) else None
    if args.corpus_cmd == "ingest-file":
        result = ingest_file(args.file, kinds)
        _write_output(result_to_json(result), args.output)
        if result.skipped:
            print(f"skipped {result.skipped} malformed lines", file=sys.stderr)
        return 0
    if args.corpus_cmd == "ingest-rpc":
        url = os.environ.get(ENV_RPC_URL)
        if not url:
            raise TxSizeError(
                f"{ENV_RPC_URL} is not set; RPC credentials are passed via "
                f"{ENV_RPC_URL}/{ENV_RPC_USER}/{ENV_RPC_PASS} only"
            )
        result = ingest_rpc(
            url,
            args.start,
            args.end,
            user=os.environ.get(ENV_RPC_USER),
            password=os.environ.get(ENV_RPC_PASS),
            kinds=kinds,
            checkpoint_path=args.checkpoint,
        )
        _write_output(result_to_json(result), args.output)
        return 0
    if args.corpus_cmd == "export":
        with open(args.file, "r", encoding="utf-8") as handle:
            result = result_from_json(handle.read())
        if args.kind not in result.histograms:
            known = ", ".join(sorted(result.histograms)) or "none"
            raise TxSizeError(f"no histogram for kind {args.kind!r}; present: {known}")
        _write_output(export_histogram(result.histograms[args.kind], args.format), None)
        return 0
    raise TxSizeError(f"unknown corpus subcommand {args.corpus_cmd!r}")


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--sig-model",
        default="average",
        help="ECDSA signature size assumption: average (71.5, default), "
        "low-s, low-r, legacy, conservative, or fixed:K",
    )
    parser.add_argument(
        "--pubkey-model", choices=sorted(_PUBKEY_NAMES), default="compressed"
    )
    parser.add_argument(
        "--schnorr-model", choices=sorted(_SCHNORR_NAMES), default="default"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="txsizes",
        description="Analytic size estimates for Bitcoin transactions, and a "
        "raw-transaction parser to check them against real data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("estimate", "estimate a transaction assembled from typed components"),
        ("explain", "like estimate, with the per-field breakdown of every component"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--input",
            action="append",
            default=[],
            metavar="SPEC",
            help="input descriptor, e.g. p2wpkh, p2sh-ms:2/3, p2wpkhx4 (repeatable)",
        )
        p.add_argument(
            "--output",
            action="append",
            default=[],
            metavar="SPEC",
            help="output descriptor, e.g. p2pkh, nulldata:20 (repeatable)",
        )
        _add_model_flags(p)
        p.add_argument("--vbytes-mode", choices=("exact", "ceil"), default="exact")
        p.add_argument(
            "--allow-large-nulldata",
            action="store_true",
            help="permit nulldata payloads beyond the 80-byte relay policy",
        )
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("parse", help="decode a serialized transaction (hex or binary)")
    p.add_argument("file", metavar="FILE", help="path to the transaction, or - for stdin")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("corpus", help="aggregate component-size histograms")
    corpus_sub = p.add_subparsers(dest="corpus_cmd", required=True)

    pf = corpus_sub.add_parser("ingest-file", help="ingest newline-delimited tx hex")
    pf.add_argument("file", metavar="FILE")
    pf.add_argument("--filter", metavar="KINDS", help="comma-separated kind filter")
    pf.add_argument("-o", "--output", metavar="PATH", help="write histograms here")

    pr = corpus_sub.add_parser(
        "ingest-rpc",
        help=f"ingest blocks over node RPC; credentials via {ENV_RPC_URL}, "
        f"{ENV_RPC_USER}, {ENV_RPC_PASS}",
    )
    pr.add_argument("--start", type=int, required=True, metavar="HEIGHT")
    pr.add_argument("--end", type=int, required=True, metavar="HEIGHT")
    pr.add_argument("--checkpoint", metavar="PATH", help="resume/progress file")
    pr.add_argument("--filter", metavar="KINDS")
    pr.add_argument("-o", "--output", metavar="PATH")

    pe = corpus_sub.add_parser("export", help="export one histogram from a saved run")
    pe.add_argument("file", metavar="PATH", help="histogram JSON from an ingest run")
    pe.add_argument("--kind", required=True, metavar="KIND", help="e.g. input/p2pkh")
    pe.add_argument("--format", choices=("csv", "json"), default="csv")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "estimate":
            return _cmd_estimate(args, detail=False)
        if args.command == "explain":
            return _cmd_estimate(args, detail=True)
        if args.command == "parse":
            return _cmd_parse(args)
        if args.command == "corpus":
            return _cmd_corpus(args)
        parser.error(f"unknown command {args.command!r}")
    except TxSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
