import type { TreeDoc } from './types.js';

export interface LayoutNode {
  id: string;
  layer: number;
  x: number;
  y: number;
}

export interface LayoutEdge {
  from: string;
  to: string;
  label: string;
}

export interface Layout {
  nodes: Map<string, LayoutNode>;
  edges: LayoutEdge[];
  width: number;
  height: number;
}

export const NODE_W = 170;
export const NODE_H = 54;
const GAP_X = 70;
const GAP_Y = 26;

/**
 * Layered left-to-right layout for the DAG: layer = longest path from the
 * root (all edges point forward), rows ordered by the mean row of each
 * node's predecessors to keep crossings low. Deterministic for a given
 * document.
 */
export function layoutTree(doc: TreeDoc): Layout {
  const byId = new Map(doc.nodes.map((n) => [n.id, n]));
  const layers = new Map<string, number>();

  const assignLayer = (id: string, depth: number, seen: Set<string>): void => {
    if (seen.has(id) || !byId.has(id)) return;
    layers.set(id, Math.max(layers.get(id) ?? 0, depth));
    const next = new Set(seen).add(id);
    for (const edge of byId.get(id)?.edges ?? []) {
      assignLayer(edge.target, depth + 1, next);
    }
  };
  assignLayer(doc.root, 0, new Set());

  const layered = new Map<number, string[]>();
  for (const node of doc.nodes) {
    if (!layers.has(node.id)) continue; // unreachable nodes are not drawn
    const layer = layers.get(node.id) as number;
    const row = layered.get(layer) ?? [];
    row.push(node.id);
    layered.set(layer, row);
  }

  const rowIndex = new Map<string, number>();
  const predecessors = new Map<string, string[]>();
  for (const node of doc.nodes) {
    for (const edge of node.edges ?? []) {
      const sources = predecessors.get(edge.target) ?? [];
      sources.push(node.id);
      predecessors.set(edge.target, sources);
    }
  }

  const maxLayer = Math.max(...layered.keys());
  let tallest = 0;
  for (let layer = 0; layer <= maxLayer; layer += 1) {
    const row = layered.get(layer) ?? [];
    if (layer > 0) {
      row.sort((a, b) => {
        const mean = (id: string): number => {
          const sources = (predecessors.get(id) ?? []).filter((s) => rowIndex.has(s));
          if (sources.length === 0) return 0;
          return sources.reduce((acc, s) => acc + (rowIndex.get(s) as number), 0) / sources.length;
        };
        return mean(a) - mean(b) || a.localeCompare(b);
      });
    }
    row.forEach((id, index) => rowIndex.set(id, index));
    tallest = Math.max(tallest, row.length);
  }

  const nodes = new Map<string, LayoutNode>();
  for (const [layer, row] of layered) {
    row.forEach((id, index) => {
      nodes.set(id, {
        id,
        layer,
        x: layer * (NODE_W + GAP_X),
        y: index * (NODE_H + GAP_Y),
      });
    });
  }

  const edges: LayoutEdge[] = [];
  for (const node of doc.nodes) {
    if (!nodes.has(node.id)) continue;
    for (const edge of node.edges ?? []) {
      if (nodes.has(edge.target)) {
        edges.push({ from: node.id, to: edge.target, label: edge.label });
      }
    }
  }

  return {
    nodes,
    edges,
    width: (maxLayer + 1) * (NODE_W + GAP_X),
    height: tallest * (NODE_H + GAP_Y),
  };
}
