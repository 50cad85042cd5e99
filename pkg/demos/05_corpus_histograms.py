"""
Size histograms over a transaction corpus
=========================================

Point the corpus machinery at a file of newline-delimited transaction hex
(or a node's RPC interface) and it folds every parsed component into
per-type size histograms. `sample_txs.hex` next to this script holds a few
synthetic transactions covering several script families.

The same thing from the command line:

    txsizes corpus ingest-file demos/sample_txs.hex -o hist.json
    txsizes corpus export hist.json --kind input/p2pkh --format csv
"""

import pathlib

from txsizes.corpus import export_histogram, ingest_file

corpus = pathlib.Path(__file__).with_name("sample_txs.hex")
result = ingest_file(corpus)

print(f"ingested {result.transactions} transactions ({result.skipped} skipped)\n")

for kind in sorted(result.histograms):
    hist = result.histograms[kind]
    buckets = ", ".join(f"{size}B x{count}" for size, count in sorted(hist.buckets.items()))
    print(f"{kind:<20} {buckets}")

# p2pkh inputs in the sample carry 71- and 72-byte signatures, so the
# histogram splits across 147 and 148 bytes around the 147.5 estimate.
print()
print(export_histogram(result.histograms["input/p2pkh"], "csv"))

# Histograms export as CSV (above) or JSON for plotting elsewhere.
print(export_histogram(result.histograms["witness/p2wsh-ms"], "json"))
