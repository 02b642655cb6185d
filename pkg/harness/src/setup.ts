// vitest global setup: build the shared workspace once, before any worker.

import { ensurePipeline } from "./cases";

export default function setup(): void {
  ensurePipeline();
}
