/**
 * Differential testing: compiled bundle vs simulator.
 *
 * Each generated bundle (exact, zero-accuracy-loss front pick, cheapest
 * front pick) is compiled behind the file-protocol shim and run on one
 * all-zero input plus 100 seeded-random inputs. The binary's output file
 * must equal the simulator's output for the same plan byte for byte:
 * logits first, then the class index as little-endian u32.
 *
 * A deliberately corrupted copy of one bundle (single packed-weight
 * literal nudged by one) must diverge on at least one case; that guards
 * the comparison itself against vacuous passes.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { beforeAll, describe, expect, it } from "vitest";
import {
  DIRS,
  PlanLabel,
  SHIM_SOURCE,
  TestCase,
  caseName,
  configPath,
  listCases,
} from "../src/cases";
import { buildRunner, readBundle, runnerExit } from "../src/driver";

interface CaseOutcome {
  name: string;
  matches: boolean;
}

function runAllCases(bin: string, cases: TestCase[], outDir: string): CaseOutcome[] {
  fs.mkdirSync(outDir, { recursive: true });
  return cases.map((c) => {
    const outPath = path.join(outDir, c.name);
    const status = runnerExit(bin, c.inputPath, outPath);
    if (status !== 0) {
      return { name: c.name, matches: false };
    }
    const matches = fs.readFileSync(outPath).equals(fs.readFileSync(c.expectedPath));
    return { name: c.name, matches };
  });
}

function mismatchNames(outcomes: CaseOutcome[]): string[] {
  return outcomes.filter((o) => !o.matches).map((o) => o.name);
}

describe("selected configurations", () => {
  it("zero-loss and cheapest picks are distinct non-trivial plans", () => {
    const zero = JSON.parse(fs.readFileSync(configPath("zero_loss"), "utf-8"));
    const any = JSON.parse(fs.readFileSync(configPath("any_loss"), "utf-8"));
    expect(zero.layers.length).toBeGreaterThan(0);
    expect(any.layers.length).toBeGreaterThan(0);
    expect(any).not.toEqual(zero);
  });
});

const planRows: [PlanLabel][] = [["exact"], ["zero_loss"], ["any_loss"]];

describe.each(planRows)("bundle %s", (plan) => {
  const cases = listCases(plan);
  const buildDir = path.join(DIRS.build, `eq_${plan}`);
  const outDir = path.join(buildDir, "out");
  let bin = "";

  beforeAll(() => {
    bin = buildRunner(readBundle(DIRS.gen(plan)), SHIM_SOURCE, buildDir);
  });

  it("matches the simulator byte for byte on all 101 cases", () => {
    expect(mismatchNames(runAllCases(bin, cases, outDir))).toEqual([]);
  });

  it("agrees with the simulator's class on the all-zero input", () => {
    const outPath = path.join(outDir, caseName(0));
    expect(runnerExit(bin, cases[0].inputPath, outPath)).toBe(0);
    const got = fs.readFileSync(outPath);
    const want = fs.readFileSync(cases[0].expectedPath);
    expect(got.readUInt32LE(got.length - 4)).toBe(want.readUInt32LE(want.length - 4));
  });
});

describe("shim error handling", () => {
  const buildDir = path.join(DIRS.build, "eq_exact");
  const bin = path.join(buildDir, "runner");
  const scratch = path.join(DIRS.build, "errors");
  const sample = listCases("exact")[1].inputPath;

  beforeAll(() => {
    if (!fs.existsSync(bin)) {
      buildRunner(readBundle(DIRS.gen("exact")), SHIM_SOURCE, buildDir);
    }
    fs.mkdirSync(scratch, { recursive: true });
  });

  it("exits 2 on a truncated input file", () => {
    const short = path.join(scratch, "short.bin");
    fs.writeFileSync(short, fs.readFileSync(sample).subarray(0, 10));
    expect(runnerExit(bin, short, path.join(scratch, "short.out"))).toBe(2);
  });

  it("exits 2 on an oversized input file", () => {
    const long = path.join(scratch, "long.bin");
    fs.writeFileSync(long, Buffer.concat([fs.readFileSync(sample), Buffer.from([0])]));
    expect(runnerExit(bin, long, path.join(scratch, "long.out"))).toBe(2);
  });

  it("exits 2 when the input file is missing", () => {
    expect(runnerExit(bin, path.join(scratch, "absent.bin"), path.join(scratch, "absent.out"))).toBe(2);
  });
});

describe("corrupted bundle", () => {
  const srcDir = path.join(DIRS.build, "mutated_src");
  const buildDir = path.join(DIRS.build, "eq_mutated");

  function mutateOneLiteral(): void {
    fs.rmSync(srcDir, { recursive: true, force: true });
    fs.mkdirSync(srcDir, { recursive: true });
    for (const name of fs.readdirSync(DIRS.gen("zero_loss"))) {
      fs.copyFileSync(path.join(DIRS.gen("zero_loss"), name), path.join(srcDir, name));
    }
    const b = readBundle(srcDir);
    const kernels = b.sources.filter((s) => s !== `${b.prefix}_net.c`);
    const largest = kernels
      .map((s) => ({ s, bytes: fs.statSync(path.join(srcDir, s)).size }))
      .sort((a, c) => c.bytes - a.bytes)[0].s;
    const kernelPath = path.join(srcDir, largest);
    const text = fs.readFileSync(kernelPath, "utf-8");
    const pattern = new RegExp(`${b.prefix}_dmac\\(acc, (-?\\d+),`);
    const m = pattern.exec(text);
    if (m === null) {
      throw new Error(`no packed literal found in ${largest}`);
    }
    const v = Number(m[1]);
    const mutated = v >> 16 >= 127 ? v - 65536 : v + 65536;
    fs.writeFileSync(
      kernelPath,
      text.slice(0, m.index) + m[0].replace(m[1], String(mutated)) + text.slice(m.index + m[0].length),
    );
  }

  it("a single mutated packed literal is detected", () => {
    mutateOneLiteral();
    const bin = buildRunner(readBundle(srcDir), SHIM_SOURCE, buildDir);
    const bad = mismatchNames(runAllCases(bin, listCases("zero_loss"), path.join(buildDir, "out")));
    expect(bad.length).toBeGreaterThan(0);
  });
});
