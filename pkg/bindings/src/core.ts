/**
 * Subprocess plumbing: every operation drives the mrcmask CLI and exchanges
 * data through its documented JSONL/JSON file formats. Nothing in this
 * package re-implements pipeline semantics.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export class HandleReleasedError extends Error {
  constructor() {
    super("operation on a released handle");
    this.name = "HandleReleased";
  }
}

export class CliError extends Error {
  readonly exitCode: number;
  constructor(name: string, message: string, exitCode: number) {
    super(message);
    this.name = name;
    this.exitCode = exitCode;
  }
}

function pythonExecutable(): string {
  return process.env.MRCMASK_PYTHON ?? "python3";
}

/** Run one CLI subcommand; throws CliError carrying the core's error name. */
export function runCli(args: string[]): string {
  const result = spawnSync(pythonExecutable(), ["-m", "mrcmask", ...args], {
    encoding: "utf-8",
    maxBuffer: 256 * 1024 * 1024,
  });
  if (result.error) {
    throw result.error;
  }
  if (result.status !== 0) {
    const stderr = (result.stderr ?? "").trim();
    // Error lines look like "mrcmask: error: validation: NoPlacement: ...".
    const match = stderr.match(/mrcmask: error: \w+: (\w+): (.*)/);
    if (match) {
      throw new CliError(match[1], match[2], result.status ?? 1);
    }
    throw new CliError("CliError", stderr || `exit ${result.status}`, result.status ?? 1);
  }
  return result.stdout ?? "";
}

export function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "mrcmask-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

export function writeJsonl(path: string, records: unknown[]): void {
  writeFileSync(path, records.map((r) => JSON.stringify(r)).join("\n") + "\n", "utf-8");
}

export function readJsonl(path: string): any[] {
  return readFileSync(path, "utf-8")
    .split("\n")
    .filter((line) => line.trim().length > 0)
    .map((line) => JSON.parse(line));
}
