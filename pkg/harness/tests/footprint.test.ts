/**
 * Flash footprint ordering: more skipping means less emitted straight-line
 * code, so both the linear estimate and the real compiled object sizes must
 * shrink strictly from the zero-loss front pick through a middle front
 * point to the cheapest front pick.
 *
 * The exact bundle is deliberately not part of this ordering: the fixture's
 * forced-zero weights emit multiply-by-zero literals there, and the
 * optimizer folds those away, leaving machine code identical to the
 * zero-loss bundle. The three compared plans differ in nonzero-weight
 * products only. Objects are built with the same strict flags as the
 * equivalence suite, so this also proves each bundle compiles warning-free
 * on its own.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { describe, expect, it } from "vitest";
import { DIRS, PlanLabel } from "../src/cases";
import { compileBundleObjects, readBundle, totalObjectBytes } from "../src/driver";

const plans: PlanLabel[] = ["zero_loss", "mid_loss", "any_loss"];

function retainedOps(plan: PlanLabel): number {
  const b = readBundle(DIRS.gen(plan));
  return 2 * b.retainedPairs + b.retainedSingleMacs;
}

function estimatedFlash(plan: PlanLabel): number {
  const dir = DIRS.gen(plan);
  const b = readBundle(dir);
  const report = JSON.parse(
    fs.readFileSync(path.join(dir, `${b.prefix}_footprint.json`), "utf-8"),
  );
  return report.flash_bytes as number;
}

function strictlyDecreasing(xs: number[]): boolean {
  return xs.every((x, i) => i === 0 || x < xs[i - 1]);
}

describe("footprint ordering", () => {
  it("the three plans retain strictly decreasing MAC counts", () => {
    const ops = plans.map(retainedOps);
    expect(ops.every((n) => n > 0)).toBe(true);
    expect(strictlyDecreasing(ops)).toBe(true);
  });

  it("the modeled flash estimate follows the same order", () => {
    expect(strictlyDecreasing(plans.map(estimatedFlash))).toBe(true);
  });

  it("compiled object sizes follow the same order", () => {
    const sizes = plans.map((plan) => {
      const objects = compileBundleObjects(
        readBundle(DIRS.gen(plan)),
        path.join(DIRS.build, `fp_${plan}`),
      );
      return totalObjectBytes(objects);
    });
    expect(sizes.every((n) => n > 0)).toBe(true);
    expect(strictlyDecreasing(sizes)).toBe(true);
  });
});
