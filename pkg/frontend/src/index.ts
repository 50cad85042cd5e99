/**
 * Thin bindings over the `txsizes` command-line tool.
 *
 * Every number comes straight out of the CLI's `--json` output; this module
 * contains no size arithmetic of its own, so it can never drift from the
 * core. Fractional byte counts (191.5, 109.375) are exact in JSON and in
 * JavaScript numbers alike.
 *
 * The CLI executable is located via the TXSIZES_CLI environment variable
 * (a command line, e.g. "python3 -m txsizes"); it defaults to `txsizes` on
 * the PATH.
 */

import { spawnSync } from "node:child_process";

export interface BreakdownEntry {
  component: "overhead" | "input" | "output" | "witness";
  index?: number;
  spec: string;
  bytes: number;
  detail?: Record<string, number>;
}

export interface BoundEstimate {
  total_bytes: number;
  base_bytes: number;
  witness_bytes: number;
  weight: number;
  vbytes: number;
  breakdown: BreakdownEntry[];
}

export interface ParsedComponent {
  index: number;
  kind: string;
  m?: number;
  n?: number;
  data_len?: number;
  taproot?: { items: number; data: number; script: number; depth: number };
  script_size?: number;
  items?: number;
  size: number;
}

export interface ParsedTransaction {
  version: number;
  segwit: boolean;
  total_size: number;
  base_size: number;
  weight: number;
  vbytes: number;
  locktime: number;
  inputs: ParsedComponent[];
  outputs: ParsedComponent[];
  witnesses: ParsedComponent[];
}

/** Raised when the CLI rejects the request; carries its diagnostic and exit code. */
export class CliError extends Error {
  constructor(message: string, readonly exitCode: number) {
    super(message);
    this.name = "CliError";
  }
}

function cliCommand(): string[] {
  const override = process.env.TXSIZES_CLI;
  if (override && override.trim().length > 0) {
    return override.trim().split(/\s+/);
  }
  return ["txsizes"];
}

function runCli(args: string[], stdin?: string): string {
  const [exe, ...prefix] = cliCommand();
  const proc = spawnSync(exe, [...prefix, ...args], {
    input: stdin,
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw new CliError(`failed to launch ${exe}: ${proc.error.message}`, -1);
  }
  if (proc.status !== 0) {
    const diagnostic = (proc.stderr || proc.stdout || "").trim();
    throw new CliError(diagnostic || `exit code ${proc.status}`, proc.status ?? -1);
  }
  return proc.stdout;
}

/**
 * Estimate a transaction assembled from descriptor strings
 * ("p2wpkh", "p2sh-ms:2/3", "nulldata:20", repetition "p2wpkhx4", ...).
 */
export function boundEstimate(
  inputs: string[],
  outputs: string[],
  sigModel?: string,
): BoundEstimate {
  const args = ["estimate", "--json"];
  for (const spec of inputs) args.push("--input", spec);
  for (const spec of outputs) args.push("--output", spec);
  if (sigModel !== undefined) args.push("--sig-model", sigModel);
  return JSON.parse(runCli(args)) as BoundEstimate;
}

/** Decode a serialized transaction (hex string) into its measured components. */
export function boundParse(hex: string): ParsedTransaction {
  return JSON.parse(runCli(["parse", "-", "--json"], hex)) as ParsedTransaction;
}
