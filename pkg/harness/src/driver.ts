/**
 * Build and run machinery: compiles a generated bundle with strict C99
 * conformance flags, links it behind the file-protocol shim, and runs
 * individual cases. Compiler failures surface verbatim so a warning in
 * generated code fails the suite (all warnings are errors).
 */

import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as path from "node:path";

export const CC = process.env.CC ?? "gcc";

export const CFLAGS = ["-std=c99", "-Wall", "-Wextra", "-Wpedantic", "-Werror", "-O2"];

export interface BundleInfo {
  dir: string;
  prefix: string;
  header: string;
  entry: string;
  inLenMacro: string;
  numClassesMacro: string;
  inLen: number;
  numClasses: number;
  /** every .c file of the bundle, relative to dir, deduplicated */
  sources: string[];
  retainedPairs: number;
  retainedSingleMacs: number;
}

interface ManifestLayer {
  index: number;
  type: string;
  symbol: string;
  file: string;
}

interface ManifestKernel {
  layer_index: number;
  file: string;
  retained_pairs: number;
  retained_single_macs: number;
  estimated_flash_bytes: number;
}

export function readBundle(dir: string): BundleInfo {
  const names = fs.readdirSync(dir).filter((n) => n.endsWith("_manifest.json"));
  if (names.length !== 1) {
    throw new Error(`expected one manifest in ${dir}, found ${names.length}`);
  }
  const doc = JSON.parse(fs.readFileSync(path.join(dir, names[0]), "utf-8"));
  const layers = doc.layers as ManifestLayer[];
  const kernels = doc.kernels as ManifestKernel[];
  const sources: string[] = [];
  for (const layer of layers) {
    if (!sources.includes(layer.file)) {
      sources.push(layer.file);
    }
  }
  return {
    dir,
    prefix: doc.prefix,
    header: doc.header,
    entry: doc.entry,
    inLenMacro: doc.in_len_macro,
    numClassesMacro: doc.num_classes_macro,
    inLen: doc.in_len,
    numClasses: doc.num_classes,
    sources,
    retainedPairs: kernels.reduce((s, k) => s + k.retained_pairs, 0),
    retainedSingleMacs: kernels.reduce((s, k) => s + k.retained_single_macs, 0),
  };
}

export interface RunResult {
  status: number;
  stdout: string;
  stderr: string;
}

export function run(cmd: string, args: string[]): RunResult {
  const r = spawnSync(cmd, args, { encoding: "utf-8" });
  if (r.error) {
    throw r.error;
  }
  return { status: r.status ?? -1, stdout: r.stdout, stderr: r.stderr };
}

export function runChecked(cmd: string, args: string[]): RunResult {
  const r = run(cmd, args);
  if (r.status !== 0) {
    throw new Error(`${cmd} ${args.join(" ")} exited ${r.status}\n${r.stderr}`);
  }
  return r;
}

/** Compile the bundle's own translation units; returns the .o paths. */
export function compileBundleObjects(b: BundleInfo, buildDir: string): string[] {
  fs.mkdirSync(buildDir, { recursive: true });
  const objects: string[] = [];
  for (const src of b.sources) {
    const obj = path.join(buildDir, src.replace(/\.c$/, ".o"));
    runChecked(CC, [...CFLAGS, "-I", b.dir, "-c", path.join(b.dir, src), "-o", obj]);
    objects.push(obj);
  }
  return objects;
}

/** Compile the shim against the bundle header and link everything. */
export function buildRunner(b: BundleInfo, shimSource: string, buildDir: string): string {
  const objects = compileBundleObjects(b, buildDir);
  const shimObj = path.join(buildDir, "harness_main.o");
  runChecked(CC, [
    ...CFLAGS,
    "-I",
    b.dir,
    `-DAXH_HEADER="${b.header}"`,
    `-DAXH_ENTRY=${b.entry}`,
    `-DAXH_IN_LEN=${b.inLenMacro}`,
    `-DAXH_NUM_CLASSES=${b.numClassesMacro}`,
    "-c",
    shimSource,
    "-o",
    shimObj,
  ]);
  const bin = path.join(buildDir, "runner");
  runChecked(CC, [shimObj, ...objects, "-o", bin]);
  return bin;
}

/** Run one case; returns the process exit code (output file may be absent). */
export function runnerExit(bin: string, inputPath: string, outputPath: string): number {
  return run(bin, [inputPath, outputPath]).status;
}

export function totalObjectBytes(objects: string[]): number {
  return objects.reduce((s, p) => s + fs.statSync(p).size, 0);
}
