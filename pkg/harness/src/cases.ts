/**
 * Workspace builder: drives the `axkern` CLI to produce a fixture model,
 * calibration statistics, a threshold sweep, selected configurations, and
 * generated bundles, then materializes the shared test cases: 1 all-zero
 * input plus 100 seeded-random inputs, with per-plan simulator outputs as
 * the expected bytes.
 *
 * Bundles: the exact network, the zero-accuracy-loss front pick, the
 * cheapest front pick, and a middle front point (used by the footprint
 * ordering suite, where plans must differ in nonzero-weight code).
 *
 * Everything lands under .work/ and is rebuilt from scratch whenever the
 * READY marker is missing, so `rm -rf .work` resets the suite.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { readBundle, runChecked } from "./driver";

export const ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..");
export const WORK = path.join(ROOT, ".work");
export const SHIM_SOURCE = path.join(ROOT, "csrc", "harness_main.c");

export type PlanLabel = "exact" | "zero_loss" | "mid_loss" | "any_loss";

export const DIRS = {
  fixture: path.join(WORK, "fx"),
  dse: path.join(WORK, "dse"),
  config: path.join(WORK, "cfg"),
  gen: (plan: PlanLabel) => path.join(WORK, "gen", plan),
  inputs: path.join(WORK, "inputs"),
  expected: (plan: PlanLabel) => path.join(WORK, "expected", plan),
  build: path.join(WORK, "build"),
};

export const MODEL = path.join(DIRS.fixture, "model.json");
export const SIG = path.join(DIRS.fixture, "model.axsg");
export const RESULTS = path.join(DIRS.dse, "dse_results.csv");
export const FRONT = path.join(DIRS.dse, "dse_front.csv");

export function configPath(plan: PlanLabel): string {
  return path.join(DIRS.config, `${plan}.json`);
}

export const RANDOM_CASES = 100;
const SEED = 0x5eed;
const READY = path.join(WORK, "READY");
const STAMP = "axkern-harness workspace v2";

export function cli(args: string[]): string {
  return runChecked("axkern", args).stdout;
}

/** Deterministic 32-bit PRNG; good enough for byte soup, stable across runs. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function caseName(i: number): string {
  return `case_${String(i).padStart(3, "0")}.bin`;
}

function writeInputs(inLen: number): void {
  fs.mkdirSync(DIRS.inputs, { recursive: true });
  fs.writeFileSync(path.join(DIRS.inputs, caseName(0)), Buffer.alloc(inLen));
  const next = mulberry32(SEED);
  for (let i = 1; i <= RANDOM_CASES; i++) {
    const buf = Buffer.alloc(inLen);
    for (let j = 0; j < inLen; j++) {
      buf[j] = Math.floor(next() * 256);
    }
    fs.writeFileSync(path.join(DIRS.inputs, caseName(i)), buf);
  }
}

export interface TestCase {
  name: string;
  inputPath: string;
  expectedPath: string;
}

export function listCases(plan: PlanLabel): TestCase[] {
  const cases: TestCase[] = [];
  for (let i = 0; i <= RANDOM_CASES; i++) {
    const name = caseName(i);
    cases.push({
      name,
      inputPath: path.join(DIRS.inputs, name),
      expectedPath: path.join(DIRS.expected(plan), name),
    });
  }
  return cases;
}

/**
 * Threshold settings of the middle Pareto-front row. The front orders rows
 * by ascending config ordinal, which on a uniform sweep means descending
 * retained MACs, so the middle row sits strictly between the zero-loss and
 * cheapest picks.
 */
function midFrontConfig(): { layers: { layer: number; tau: number }[] } {
  const text = fs.readFileSync(FRONT, "utf-8").trim();
  const lines = text.split("\n").map((l) => l.split(","));
  const head = lines[0];
  const rows = lines.slice(1);
  if (rows.length < 3) {
    throw new Error(`front has only ${rows.length} rows; need at least 3 distinct plans`);
  }
  const mid = rows[Math.floor(rows.length / 2)];
  const layers: { layer: number; tau: number }[] = [];
  head.forEach((name, i) => {
    if (name.startsWith("tau_l") && mid[i] !== "") {
      layers.push({ layer: Number(name.slice(5)), tau: Number(mid[i]) });
    }
  });
  return { layers };
}

function codegen(plan: PlanLabel): void {
  const args = ["codegen", "--model", MODEL, "--out", DIRS.gen(plan), "--prefix", "ax"];
  if (plan !== "exact") {
    args.push("--sig", SIG, "--config", configPath(plan));
  }
  cli(args);
}

function simulateExpected(plan: PlanLabel): void {
  const args = [
    "simulate",
    "--model",
    MODEL,
    "--input-dir",
    DIRS.inputs,
    "--out",
    DIRS.expected(plan),
  ];
  if (plan !== "exact") {
    args.push("--sig", SIG, "--config", configPath(plan));
  }
  cli(args);
}

export function ensurePipeline(): void {
  if (fs.existsSync(READY) && fs.readFileSync(READY, "utf-8") === STAMP) {
    return;
  }
  fs.rmSync(WORK, { recursive: true, force: true });
  fs.mkdirSync(DIRS.config, { recursive: true });

  cli(["fixture", "--out", DIRS.fixture, "--seed", "7"]);
  cli(["analyze", "--model", MODEL, "--calib", path.join(DIRS.fixture, "calib.axds"), "--out", SIG]);
  cli([
    "dse",
    "--model",
    MODEL,
    "--dataset",
    path.join(DIRS.fixture, "eval.axds"),
    "--sig",
    SIG,
    "--out",
    DIRS.dse,
    "--threads",
    "6",
  ]);
  cli(["select", "--results", RESULTS, "--max-loss", "0.0", "--out", configPath("zero_loss")]);
  cli(["select", "--results", RESULTS, "--max-loss", "1.0", "--out", configPath("any_loss")]);
  fs.writeFileSync(configPath("mid_loss"), JSON.stringify(midFrontConfig(), null, 2) + "\n");

  const plans: PlanLabel[] = ["exact", "zero_loss", "mid_loss", "any_loss"];
  for (const plan of plans) {
    codegen(plan);
  }
  writeInputs(readBundle(DIRS.gen("exact")).inLen);
  for (const plan of plans) {
    simulateExpected(plan);
  }

  fs.writeFileSync(READY, STAMP);
}
