"""Aggregate measured component sizes into per-type histograms.

Two ingestion paths: a newline-delimited hex file, or a node's JSON-RPC
interface (``getblockhash`` + ``getblock`` at verbosity 0). Both stream
transactions through the parser and fold the measurements into counters, so
memory stays constant regardless of corpus size. RPC ingestion checkpoints
the last processed height after every block (written atomically) and resumes
from there on the next run against the same endpoint.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass, field

import requests

from .errors import CorpusError, ParseError, RangeError, RpcError
from .rawtx import ParsedTx, measure, parse_tx, read_tx

RETRY_ATTEMPTS = 3
RETRY_BASE_DELAY = 1.0  # seconds; doubles per retry


@dataclass
class Histogram:
    """Counts of observed byte sizes for one component kind (e.g. "input/p2pkh")."""

    kind: str
    buckets: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.buckets.values())

    def add(self, size: int, count: int = 1) -> None:
        self.buckets[size] = self.buckets.get(size, 0) + count


@dataclass
class IngestResult:
    """Histograms plus bookkeeping from one ingestion run."""

    histograms: dict[str, Histogram] = field(default_factory=dict)
    transactions: int = 0
    skipped: int = 0

    def record(self, tx: ParsedTx, kind_filter: frozenset[str] | None) -> None:
        self.transactions += 1
        for role, kind, size in measure(tx):
            key = f"{role}/{kind}"
            if kind_filter is not None and key not in kind_filter and kind not in kind_filter:
                continue
            self.histograms.setdefault(key, Histogram(key)).add(size)

    def merge(self, other: "IngestResult") -> "IngestResult":
        merged = IngestResult(
            transactions=self.transactions + other.transactions,
            skipped=self.skipped + other.skipped,
        )
        for src in (self.histograms, other.histograms):
            for key, hist in src.items():
                target = merged.histograms.setdefault(key, Histogram(key))
                for size, count in hist.buckets.items():
                    target.add(size, count)
        return merged


def _normalize_filter(kinds) -> frozenset[str] | None:
    if kinds is None:
        return None
    return frozenset(kinds)


def ingest_file(path: str | os.PathLike, kinds=None) -> IngestResult:
    """Build histograms from a file of newline-delimited transaction hex.

    Blank lines are ignored; malformed lines are counted and skipped. If
    more than half of the non-blank lines fail to parse, the whole corpus is
    rejected as bad input rather than silently producing a near-empty result.
    """
    kind_filter = _normalize_filter(kinds)
    result = IngestResult()
    try:
        # replacement decoding keeps reading total; bad bytes fail per-line parsing
        handle = open(path, "r", encoding="utf-8", errors="replace")
    except OSError as exc:
        raise CorpusError(f"cannot read corpus file {path}: {exc}") from None
    lines = 0
    with handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            lines += 1
            try:
                tx = parse_tx(line)
            except ParseError:
                result.skipped += 1
                continue
            result.record(tx, kind_filter)
    if lines and result.skipped * 2 > lines:
        raise CorpusError(
            f"corpus quality too low: {result.skipped} of {lines} lines malformed"
        )
    return result


def export_histogram(hist: Histogram, fmt: str) -> str:
    """Render one histogram as CSV (size,count ascending) or JSON."""
    if fmt == "csv":
        rows = ["size,count"]
        rows.extend(f"{size},{hist.buckets[size]}" for size in sorted(hist.buckets))
        return "\n".join(rows) + "\n"
    if fmt == "json":
        doc = {
            "kind": hist.kind,
            "buckets": [
                {"size": size, "count": hist.buckets[size]}
                for size in sorted(hist.buckets)
            ],
            "total": hist.total,
        }
        return json.dumps(doc, indent=2) + "\n"
    raise CorpusError(f"unknown export format {fmt!r}; expected csv or json")


def result_to_json(result: IngestResult) -> str:
    """Stable JSON document for a whole ingestion run."""
    doc = {
        "transactions": result.transactions,
        "skipped": result.skipped,
        "histograms": [
            {
                "kind": key,
                "buckets": [
                    {"size": size, "count": hist.buckets[size]}
                    for size in sorted(hist.buckets)
                ],
                "total": hist.total,
            }
            for key, hist in sorted(result.histograms.items())
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def result_from_json(text: str) -> IngestResult:
    doc = json.loads(text)
    result = IngestResult(
        transactions=doc.get("transactions", 0), skipped=doc.get("skipped", 0)
    )
    for entry in doc.get("histograms", []):
        hist = Histogram(entry["kind"])
        for bucket in entry["buckets"]:
            hist.add(bucket["size"], bucket["count"])
        result.histograms[hist.kind] = hist
    return result


# ---------------------------------------------------------------------------
# node RPC ingestion
# ---------------------------------------------------------------------------

def _endpoint_fingerprint(url: str) -> str:
    return hashlib.sha256(url.encode()).hexdigest()[:16]


def read_checkpoint(path: str | os.PathLike, url: str) -> int | None:
    """Last processed height recorded for ``url``, or None."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except FileNotFoundError:
        return None
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"unreadable checkpoint {path}: {exc}") from None
    if doc.get("endpoint") != _endpoint_fingerprint(url):
        raise CorpusError(
            f"checkpoint {path} belongs to a different endpoint; remove it to restart"
        )
    return int(doc["height"])


def write_checkpoint(path: str | os.PathLike, url: str, height: int) -> None:
    """Atomically persist the last processed height (write temp, then rename)."""
    doc = {"height": height, "endpoint": _endpoint_fingerprint(url)}
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".checkpoint-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(doc, handle)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class RpcClient:
    """Minimal JSON-RPC-over-HTTP client with retrying transport."""

    def __init__(
        self,
        url: str,
        user: str | None = None,
        password: str | None = None,
        retry_delay: float = RETRY_BASE_DELAY,
        timeout: float = 30.0,
    ):
        self.url = url
        self.auth = (user or "", password or "") if user or password else None
        self.retry_delay = retry_delay
        self.timeout = timeout
        self._session = requests.Session()
        self._id = 0

    def call(self, method: str, params: list) -> object:
        self._id += 1
        payload = {"jsonrpc": "1.0", "id": self._id, "method": method, "params": params}
        delay = self.retry_delay
        last_failure = None
        for attempt in range(RETRY_ATTEMPTS):
            if attempt:
                time.sleep(delay)
                delay *= 2
            try:
                resp = self._session.post(
                    self.url, json=payload, auth=self.auth, timeout=self.timeout
                )
            except requests.RequestException as exc:
                last_failure = str(exc)
                continue
            if resp.status_code != 200:
                body = {}
                try:
                    body = resp.json()
                except ValueError:
                    pass
                error = body.get("error") if isinstance(body, dict) else None
                if error:
                    # application-level errors are deterministic; don't retry
                    raise_rpc_app_error(method, error)
                last_failure = f"HTTP {resp.status_code}"
                continue
            try:
                body = resp.json()
            except ValueError:
                last_failure = "response is not JSON"
                continue
            if body.get("error"):
                raise_rpc_app_error(method, body["error"])
            return body.get("result")
        raise RpcError(
            f"{method} failed after {RETRY_ATTEMPTS} attempts against {self.url}: "
            f"{last_failure}"
        )


def raise_rpc_app_error(method: str, error: dict) -> None:
    message = error.get("message", str(error))
    code = error.get("code")
    # -8 is the node's "block height out of range"
    if code == -8 or "out of range" in str(message).lower():
        raise RangeError(f"{method}: {message}")
    raise RpcError(f"{method} returned error {code}: {message}")


def iter_block_txs(block: bytes) -> list[ParsedTx]:
    """Split a raw serialized block into its parsed transactions."""
    if len(block) < 81:
        raise ParseError("block shorter than header", offset=len(block))
    offset = 80  # header
    first = block[offset]
    if first <= 252:
        count, offset = first, offset + 1
    elif first == 0xFD:
        count, offset = int.from_bytes(block[offset + 1 : offset + 3], "little"), offset + 3
    elif first == 0xFE:
        count, offset = int.from_bytes(block[offset + 1 : offset + 5], "little"), offset + 5
    else:
        count, offset = int.from_bytes(block[offset + 1 : offset + 9], "little"), offset + 9
    txs = []
    for _ in range(count):
        tx, offset = read_tx(block, offset)
        txs.append(tx)
    if offset != len(block):
        raise ParseError("trailing bytes after block transactions", offset=offset)
    return txs


def ingest_rpc(
    url: str,
    start: int,
    end: int,
    user: str | None = None,
    password: str | None = None,
    kinds=None,
    checkpoint_path: str | os.PathLike | None = None,
    retry_delay: float = RETRY_BASE_DELAY,
) -> IngestResult:
    """Build histograms from blocks [start, end] fetched over node RPC.

    With a checkpoint path, processing resumes after the recorded height and
    the checkpoint advances after every block, so an interrupted run loses at
    most the block in flight. Histograms cover only the blocks processed by
    this call; merge results across runs with :meth:`IngestResult.merge`.
    """
    if start > end:
        raise RangeError(f"empty block range [{start}, {end}]")
    client = RpcClient(url, user, password, retry_delay=retry_delay)
    kind_filter = _normalize_filter(kinds)
    first = start
    if checkpoint_path is not None:
        done = read_checkpoint(checkpoint_path, url)
        if done is not None:
            first = max(first, done + 1)
    result = IngestResult()
    for height in range(first, end + 1):
        block_hash = client.call("getblockhash", [height])
        block_hex = client.call("getblock", [block_hash, 0])
        try:
            block = bytes.fromhex(block_hex)
        except (TypeError, ValueError) as exc:
            raise CorpusError(f"block {height} is not valid hex: {exc}") from None
        for tx in iter_block_txs(block):
            result.record(tx, kind_filter)
        if checkpoint_path is not None:
            write_checkpoint(checkpoint_path, url, height)
    return result
