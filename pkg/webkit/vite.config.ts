import { defineConfig } from 'vitest/config'

export default defineConfig({
  build: {
    lib: {
      entry: 'src/index.ts',
      name: 'webkit',
      formats: ['iife'],
      fileName: () => 'webkit.js',
    },
    outDir: 'dist',
    emptyOutDir: true,
  },
  test: {
    environment: 'jsdom',
    testTimeout: 30000,
    hookTimeout: 120000,
  },
})
