/**
 * Thin binding layer over the mrcmask pipeline for Node processes.
 *
 * Exposed operations: loadVocab, tokenize, loadDistribution,
 * makeMaskingConfig, planAndApply, assembleSpan, assembleCloze, scoreSpan,
 * scoreCloze, version. Each call delegates to the CLI; records come back as
 * plain objects/arrays, and an optional outPath captures the CLI's raw
 * output file byte-for-byte.
 */

import { copyFileSync, readFileSync } from "node:fs";
import { join } from "node:path";

import { readJsonl, runCli, withTempDir, writeJsonl } from "./core.js";
import {
  DistHandle,
  MaskingConfigHandle,
  MaskingConfigOptions,
  VocabHandle,
} from "./handles.js";

export { HandleReleasedError, CliError } from "./core.js";
export { VocabHandle, DistHandle, MaskingConfigHandle } from "./handles.js";

export interface CallOptions {
  /** Copy the CLI's raw output file here (bit-exact golden surface). */
  outPath?: string;
}

export interface TokenizedText {
  id: string;
  tokens: string[];
  ids: number[];
}

export interface MaskedSequenceRecord {
  seq_id: string;
  dupe_index: number;
  input_ids: number[];
  labels: number[];
  spans: [number, number, string][];
}

export interface InputSequenceRecord {
  origin: string;
  window_index: number;
  ids: number[];
  segment_ids: number[];
  attention_mask: number[];
  answer_in_window?: boolean;
}

export interface SpanRecord {
  id?: string;
  question: string;
  context: string;
  answer?: { text: string; answer_start: number };
}

export interface ClozeRecord {
  id?: string;
  passage: string;
  options: Record<string, string>;
}

export interface AssemblyOptions extends CallOptions {
  maxLen?: number;
  stride?: number;
}

export interface ScoreOptions extends CallOptions {
  overlap?: "mcs" | "bag";
  average?: "macro" | "micro";
  reference?: string;
}

export function version(): string {
  return runCli(["--version"]).trim();
}

export function loadVocab(path: string): VocabHandle {
  return new VocabHandle(path);
}

export function loadDistribution(path: string): DistHandle {
  return new DistHandle(path);
}

export function makeMaskingConfig(options: MaskingConfigOptions): MaskingConfigHandle {
  return new MaskingConfigHandle(options);
}

function capture(tmpOut: string, opts?: CallOptions): void {
  if (opts?.outPath) {
    copyFileSync(tmpOut, opts.outPath);
  }
}

export function tokenize(vocab: VocabHandle, text: string, opts?: CallOptions): TokenizedText;
export function tokenize(vocab: VocabHandle, texts: string[], opts?: CallOptions): TokenizedText[];
export function tokenize(
  vocab: VocabHandle,
  text: string | string[],
  opts?: CallOptions
): TokenizedText | TokenizedText[] {
  const vocabPath = vocab.path;
  const texts = typeof text === "string" ? [text] : text;
  const records = withTempDir((dir) => {
    const input = join(dir, "in.jsonl");
    const output = join(dir, "out.jsonl");
    requireNonempty(texts, "tokenize needs at least one text");
    writeJsonl(
      input,
      texts.map((t, i) => ({ id: String(i), text: t }))
    );
    runCli(["tokenize", "--in", input, "--vocab", vocabPath, "--out", output]);
    capture(output, opts);
    return readJsonl(output) as TokenizedText[];
  });
  return typeof text === "string" ? records[0] : records;
}

export function planAndApply(
  ids: number[] | number[][],
  config: MaskingConfigHandle,
  seed?: number,
  opts?: CallOptions
): MaskedSequenceRecord[] {
  const vocabPath = config.vocab.path;
  const distPath = config.dist.path;
  const batch: number[][] = Array.isArray(ids[0]) ? (ids as number[][]) : [ids as number[]];
  return withTempDir((dir) => {
    const input = join(dir, "in.jsonl");
    const output = join(dir, "out.jsonl");
    requireNonempty(batch, "planAndApply needs at least one id sequence");
    writeJsonl(
      input,
      batch.map((seq, i) => ({ id: String(i), ids: seq }))
    );
    runCli([
      "maskgen",
      "--in", input,
      "--out", output,
      "--vocab", vocabPath,
      "--dist-from", distPath,
      "--input-format", "ids",
      "--budget", String(config.budgetFraction),
      "--dupe", String(config.dupeFactor),
      "--seed", String(seed ?? config.seed),
    ]);
    capture(output, opts);
    return readJsonl(output) as MaskedSequenceRecord[];
  });
}

function assemble(
  task: "span" | "cloze",
  vocab: VocabHandle,
  records: object[],
  opts?: AssemblyOptions
): InputSequenceRecord[] {
  const vocabPath = vocab.path;
  return withTempDir((dir) => {
    const input = join(dir, "in.jsonl");
    const output = join(dir, "out.jsonl");
    requireNonempty(records, "assemble needs at least one record");
    writeJsonl(
      input,
      records.map((record, i) => ({ id: String(i), ...record }))
    );
    const args = [
      "assemble",
      "--task", task,
      "--in", input,
      "--vocab", vocabPath,
      "--out", output,
    ];
    if (opts?.maxLen !== undefined) {
      args.push("--max-len", String(opts.maxLen));
    }
    if (opts?.stride !== undefined) {
      args.push("--stride", String(opts.stride));
    }
    runCli(args);
    capture(output, opts);
    return readJsonl(output) as InputSequenceRecord[];
  });
}

export function assembleSpan(
  vocab: VocabHandle,
  records: SpanRecord | SpanRecord[],
  opts?: AssemblyOptions
): InputSequenceRecord[] {
  return assemble("span", vocab, Array.isArray(records) ? records : [records], opts);
}

export function assembleCloze(
  vocab: VocabHandle,
  records: ClozeRecord | ClozeRecord[],
  opts?: AssemblyOptions
): InputSequenceRecord[] {
  return assemble("cloze", vocab, Array.isArray(records) ? records : [records], opts);
}

function score(task: "span" | "cloze", goldPath: string, predPath: string, opts?: ScoreOptions) {
  return withTempDir((dir) => {
    const output = join(dir, "report.json");
    const args = ["score", "--task", task, "--gold", goldPath, "--pred", predPath, "--out", output];
    if (opts?.overlap) {
      args.push("--overlap", opts.overlap);
    }
    if (opts?.average) {
      args.push("--average", opts.average);
    }
    if (opts?.reference) {
      args.push("--reference", opts.reference);
    }
    runCli(args);
    capture(output, opts);
    return JSON.parse(readFileSync(output, "utf-8"));
  });
}

export function scoreSpan(goldPath: string, predPath: string, opts?: ScoreOptions) {
  return score("span", goldPath, predPath, opts);
}

export function scoreCloze(goldPath: string, predPath: string, opts?: ScoreOptions) {
  return score("cloze", goldPath, predPath, opts);
}

function requireNonempty(items: unknown[], message: string): void {
  if (items.length === 0) {
    throw new Error(message);
  }
}
