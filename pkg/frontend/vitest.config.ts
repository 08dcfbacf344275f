import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    // integration tests spawn a real service process
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
