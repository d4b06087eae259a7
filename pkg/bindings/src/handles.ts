/**
 * Handles hold validated references to the core's file-format artifacts
 * (vocabulary, length distribution) plus masking parameters. They are
 * immutable after construction; releasing one makes every later use throw
 * HandleReleased instead of touching the filesystem again.
 */

import { readFileSync } from "node:fs";

import { HandleReleasedError } from "./core.js";

export const REQUIRED_SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] as const;

abstract class Handle {
  #released = false;

  release(): void {
    this.#released = true;
  }

  get released(): boolean {
    return this.#released;
  }

  protected check(): void {
    if (this.#released) {
      throw new HandleReleasedError();
    }
  }
}

export class VocabHandle extends Handle {
  readonly #path: string;
  readonly size: number;

  /** Validates the one-token-per-line contract: dense ids, no duplicates,
   * all five special tokens present. */
  constructor(path: string) {
    super();
    const lines = readFileSync(path, "utf-8").split("\n");
    if (lines.length > 0 && lines[lines.length - 1] === "") {
      lines.pop();
    }
    const seen = new Set<string>();
    lines.forEach((raw, i) => {
      const token = raw.replace(/\r$/, "");
      if (token.length === 0) {
        throw new Error(`empty token at line ${i + 1}`);
      }
      if (seen.has(token)) {
        const err = new Error(`duplicate token ${JSON.stringify(token)} at line ${i + 1}`);
        err.name = "DuplicateToken";
        throw err;
      }
      seen.add(token);
    });
    for (const special of REQUIRED_SPECIALS) {
      if (!seen.has(special)) {
        const err = new Error(`required special token ${special} missing from vocabulary`);
        err.name = "MissingSpecial";
        throw err;
      }
    }
    this.#path = path;
    this.size = seen.size;
  }

  get path(): string {
    this.check();
    return this.#path;
  }
}

export class DistHandle extends Handle {
  readonly #path: string;
  readonly counts: Record<string, number>;
  readonly total: number;

  constructor(path: string) {
    super();
    const payload = JSON.parse(readFileSync(path, "utf-8"));
    const counts: Record<string, number> = payload.counts ?? {};
    const total = Object.values(counts).reduce((a, b) => a + b, 0);
    if (total <= 0) {
      const err = new Error(`${path}: distribution has no nonzero counts`);
      err.name = "EmptyDataset";
      throw err;
    }
    if (payload.total !== undefined && payload.total !== total) {
      throw new Error(`${path}: declared total ${payload.total} != sum of counts ${total}`);
    }
    this.#path = path;
    this.counts = counts;
    this.total = total;
  }

  get path(): string {
    this.check();
    return this.#path;
  }
}

export interface MaskingConfigOptions {
  vocab: VocabHandle;
  dist: DistHandle;
  budgetFraction?: number;
  dupeFactor?: number;
  seed: number;
}

export class MaskingConfigHandle extends Handle {
  readonly #vocab: VocabHandle;
  readonly #dist: DistHandle;
  readonly budgetFraction: number;
  readonly dupeFactor: number;
  readonly seed: number;

  constructor(options: MaskingConfigOptions) {
    super();
    const budget = options.budgetFraction ?? 0.15;
    const dupe = options.dupeFactor ?? 10;
    if (!(budget > 0 && budget < 1)) {
      throw new Error(`budgetFraction ${budget} not in (0, 1)`);
    }
    if (!Number.isInteger(dupe) || dupe < 1) {
      throw new Error(`dupeFactor ${dupe} must be an integer >= 1`);
    }
    if (!Number.isInteger(options.seed)) {
      throw new Error("seed must be an integer");
    }
    this.#vocab = options.vocab;
    this.#dist = options.dist;
    this.budgetFraction = budget;
    this.dupeFactor = dupe;
    this.seed = options.seed;
  }

  get vocab(): VocabHandle {
    this.check();
    return this.#vocab;
  }

  get dist(): DistHandle {
    this.check();
    return this.#dist;
  }
}
