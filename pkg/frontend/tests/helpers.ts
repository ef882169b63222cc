import { readFileSync } from 'node:fs';
import { resolve } from 'node:path';
import type { KeyValueStore } from '../src/state.js';
import type { TreeDoc } from '../src/types.js';

// vitest runs with cwd = frontend/; the tree ships with the Python package.
const TREE_PATH = resolve(process.cwd(), '../src/fairaudit/data/default_tree.json');

export function defaultTreeDoc(): TreeDoc {
  return JSON.parse(readFileSync(TREE_PATH, 'utf-8')) as TreeDoc;
}

export class MemoryStorage implements KeyValueStore {
  private map = new Map<string, string>();

  getItem(key: string): string | null {
    return this.map.get(key) ?? null;
  }

  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }

  removeItem(key: string): void {
    this.map.delete(key);
  }
}

export async function waitFor(
  predicate: () => boolean,
  timeoutMs = 5000,
  stepMs = 20,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (predicate()) return;
    await new Promise((resolve) => setTimeout(resolve, stepMs));
  }
  throw new Error('condition not met in time');
}

/** Timestamp-free canonical JSON used for byte-for-byte record comparison. */
export function canonicalRecord(record: unknown): string {
  const strip = (value: unknown): unknown => {
    if (Array.isArray(value)) return value.map(strip);
    if (value && typeof value === 'object') {
      const out: Record<string, unknown> = {};
      for (const key of Object.keys(value as Record<string, unknown>).sort()) {
        if (key === 'timestamp') continue;
        out[key] = strip((value as Record<string, unknown>)[key]);
      }
      return out;
    }
    return value;
  };
  return JSON.stringify(strip(record), null, 2);
}
