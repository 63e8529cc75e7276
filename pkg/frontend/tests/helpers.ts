/** Test utilities: service lifecycle, CLI invocation, seeded data generation. */

import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

export const PYTHON = process.env.ANLS_PYTHON ?? "python3";
export const REPO_ROOT = fileURLToPath(new URL("../..", import.meta.url));

export interface ServerHandle {
  baseUrl: string;
  stop: () => void;
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export async function startServer(port: number): Promise<ServerHandle> {
  const child = spawn(
    PYTHON,
    [
      "-m",
      "uvicorn",
      "anls_star.service:app",
      "--host",
      "127.0.0.1",
      "--port",
      String(port),
      "--log-level",
      "warning",
    ],
    { cwd: REPO_ROOT, stdio: ["ignore", "ignore", "pipe"] },
  );
  let stderr = "";
  child.stderr?.on("data", (chunk: Buffer) => {
    stderr += chunk.toString();
  });
  const baseUrl = `http://127.0.0.1:${port}`;
  for (let attempt = 0; attempt < 120; attempt++) {
    if (child.exitCode !== null) {
      break;
    }
    try {
      const response = await fetch(`${baseUrl}/health`);
      if (response.ok) {
        return { baseUrl, stop: () => child.kill() };
      }
    } catch {
      // not up yet
    }
    await sleep(150);
  }
  child.kill();
  throw new Error(`service did not come up on ${baseUrl}\n${stderr}`);
}

export interface CliResult {
  status: number;
  stdout: string;
  stderr: string;
}

export function runCli(args: string[]): CliResult {
  const result = spawnSync(PYTHON, ["-m", "anls_star.cli", ...args], {
    cwd: REPO_ROOT,
    encoding: "utf-8",
    maxBuffer: 64 * 1024 * 1024,
  });
  return { status: result.status ?? -1, stdout: result.stdout, stderr: result.stderr };
}

export function tempDir(prefix: string): string {
  return mkdtempSync(join(tmpdir(), prefix));
}

export function writeJson(path: string, value: unknown): void {
  writeFileSync(path, JSON.stringify(value), "utf-8");
}

export function writeJsonl(path: string, records: Array<{ id: string; value: unknown }>): void {
  writeFileSync(path, records.map((record) => JSON.stringify(record)).join("\n") + "\n", "utf-8");
}

/** Deterministic 32-bit PRNG so datasets are reproducible across runs. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

type Rng = () => number;
export type JsonValue = null | string | number | boolean | JsonValue[] | { [key: string]: JsonValue };

const ALPHABET = [..."ab xyñ0."];
const KEYS = ["a", "b", "c", "d", "e", "key f"];

const pick = <T>(rng: Rng, items: readonly T[]): T => items[Math.floor(rng() * items.length)]!;
const rangeInt = (rng: Rng, lo: number, hi: number) => lo + Math.floor(rng() * (hi - lo + 1));

export function randomText(rng: Rng, maxLen = 8): string {
  return Array.from({ length: rangeInt(rng, 0, maxLen) }, () => pick(rng, ALPHABET)).join("");
}

export function randomValue(rng: Rng, depth = 1, maxDepth = 3, gt = false): JsonValue {
  const leafKinds = ["null", "string", "number", "bool"] as const;
  let kind: string;
  if (depth >= maxDepth) {
    kind = pick(rng, leafKinds);
  } else {
    kind = pick(rng, ["null", "string", "string", "number", "bool", "list", "dict"] as const);
    if (gt && rng() < 0.1) {
      kind = "oneof";
    }
  }
  switch (kind) {
    case "null":
      return null;
    case "string":
      return randomText(rng);
    case "number": {
      const roll = rng();
      if (roll < 0.4) return rangeInt(rng, -99, 99);
      if (roll < 0.5) return 0.2;
      return rng() * 20 - 10;
    }
    case "bool":
      return rng() < 0.5;
    case "list":
      return Array.from({ length: rangeInt(rng, 0, 4) }, () =>
        randomValue(rng, depth + 1, maxDepth, gt),
      );
    case "oneof":
      return {
        $oneof: Array.from({ length: rangeInt(rng, 1, 3) }, () =>
          randomValue(rng, depth + 1, maxDepth, gt),
        ),
      };
    default: {
      const out: { [key: string]: JsonValue } = {};
      for (const key of KEYS) {
        if (rng() < 0.4) {
          out[key] = randomValue(rng, depth + 1, maxDepth, gt);
        }
      }
      return out;
    }
  }
}

/** Derive a plausible prediction from a ground-truth value. */
export function mutateValue(rng: Rng, value: JsonValue): JsonValue {
  return stripOneOf(rng, mutate(rng, value));
}

function mutate(rng: Rng, value: JsonValue): JsonValue {
  if (value !== null && typeof value === "object" && !Array.isArray(value)) {
    if ("$oneof" in value) {
      const alternatives = value.$oneof as JsonValue[];
      return mutate(rng, pick(rng, alternatives));
    }
    const out: { [key: string]: JsonValue } = {};
    for (const [key, item] of Object.entries(value)) {
      const roll = rng();
      if (roll < 0.15) continue;
      out[key] = roll < 0.7 ? mutate(rng, item) : item;
    }
    if (rng() < 0.15) {
      out["hallucinated"] = randomValue(rng, 2);
    }
    return out;
  }
  if (Array.isArray(value)) {
    const items = value.map((item) => (rng() < 0.5 ? mutate(rng, item) : item));
    for (let i = items.length - 1; i > 0; i--) {
      const j = Math.floor(rng() * (i + 1));
      [items[i], items[j]] = [items[j]!, items[i]!];
    }
    if (items.length > 0 && rng() < 0.2) items.pop();
    if (rng() < 0.15) items.push(randomValue(rng, 2));
    return items;
  }
  if (typeof value === "string") {
    const roll = rng();
    if (roll < 0.4 || value.length === 0) return value;
    if (roll < 0.7) {
      const i = Math.floor(rng() * value.length);
      return value.slice(0, i) + pick(rng, ALPHABET) + value.slice(i + 1);
    }
    return randomText(rng);
  }
  if (rng() < 0.3) return randomValue(rng, 2);
  return value;
}

function stripOneOf(rng: Rng, value: JsonValue): JsonValue {
  if (value !== null && typeof value === "object" && !Array.isArray(value)) {
    if ("$oneof" in value) {
      return stripOneOf(rng, pick(rng, value.$oneof as JsonValue[]));
    }
    return Object.fromEntries(
      Object.entries(value).map(([key, item]) => [key, stripOneOf(rng, item)]),
    );
  }
  if (Array.isArray(value)) {
    return value.map((item) => stripOneOf(rng, item));
  }
  return value;
}
