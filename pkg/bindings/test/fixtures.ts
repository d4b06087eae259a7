/** Deterministic fixture generation for the golden parity suite. */

import { writeFileSync } from "node:fs";
import { join } from "node:path";

export const REQUIRED_SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"];
export const BLANK_TOKENS = Array.from({ length: 9 }, (_, i) => `[BLANK${i + 1}]`);
export const CJK_POOL = Array.from({ length: 200 }, (_, i) => String.fromCharCode(0x4e00 + i));

/** mulberry32: small seeded PRNG so fixtures are fixed across runs. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function writeVocab(dir: string): string {
  const path = join(dir, "vocab.txt");
  const entries = [...REQUIRED_SPECIALS, ...BLANK_TOKENS, ...CJK_POOL, "，", "。", "！", "？"];
  writeFileSync(path, entries.join("\n") + "\n", "utf-8");
  return path;
}

export function writeDistribution(dir: string): string {
  const path = join(dir, "short_span.dist.json");
  writeFileSync(
    path,
    JSON.stringify({ counts: { "4": 16171, "5": 8566, "6": 6653 }, total: 31390 }) + "\n",
    "utf-8"
  );
  return path;
}

export function randomText(rand: () => number, length: number): string {
  let out = "";
  for (let i = 0; i < length; i++) {
    out += CJK_POOL[Math.floor(rand() * CJK_POOL.length)];
  }
  return out;
}

export function fixtureTexts(n: number, seed = 0xc0ffee): string[] {
  const rand = mulberry32(seed);
  return Array.from({ length: n }, () => randomText(rand, 20 + Math.floor(rand() * 41)));
}

export function writeJsonlFile(path: string, records: unknown[]): void {
  writeFileSync(path, records.map((r) => JSON.stringify(r)).join("\n") + "\n", "utf-8");
}
