import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    globalSetup: "./src/setup.ts",
    // compile + several hundred subprocess runs per file
    testTimeout: 300_000,
    hookTimeout: 300_000,
    fileParallelism: false,
  },
});
