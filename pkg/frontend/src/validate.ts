import type { TreeDoc } from './types.js';

/**
 * Structural validation for user-uploaded tree documents, mirroring the
 * service's rules so a broken upload is explained before anything renders.
 * Graph checks only; no fairness semantics live client-side.
 */
export function validateTree(doc: unknown): string[] {
  const problems: string[] = [];
  if (typeof doc !== 'object' || doc === null || Array.isArray(doc)) {
    return ['document root must be a JSON object'];
  }
  const tree = doc as Partial<TreeDoc>;
  if (!Array.isArray(tree.nodes)) {
    return ["document lacks a 'nodes' list"];
  }

  const ids = new Set<string>();
  for (const node of tree.nodes) {
    if (!node || typeof node.id !== 'string' || !node.id) {
      problems.push("every node needs an 'id'");
      continue;
    }
    if (ids.has(node.id)) {
      problems.push(`duplicate node id '${node.id}'`);
    }
    ids.add(node.id);
    if (!['decision', 'action', 'definition'].includes(node.kind as string)) {
      problems.push(`node '${node.id}' has unknown kind '${String(node.kind)}'`);
      continue;
    }
    const edges = Array.isArray(node.edges) ? node.edges : [];
    if (node.kind === 'definition') {
      if (edges.length > 0) problems.push(`definition node '${node.id}' must not have edges`);
      if (!node.definition) problems.push(`definition node '${node.id}' lacks a fairness definition`);
    }
    if (node.kind === 'decision' && edges.length < 2) {
      problems.push(`decision node '${node.id}' needs at least 2 edges, has ${edges.length}`);
    }
    if (node.kind === 'action' && edges.length !== 1) {
      problems.push(`action node '${node.id}' needs exactly 1 edge, has ${edges.length}`);
    }
  }

  const adjacency = new Map<string, string[]>();
  for (const node of tree.nodes) {
    if (!node?.id) continue;
    const targets: string[] = [];
    for (const edge of node.edges ?? []) {
      if (!edge || typeof edge.target !== 'string') {
        problems.push(`node '${node.id}': edge entries need a target`);
        continue;
      }
      if (!ids.has(edge.target)) {
        problems.push(
          `edge '${edge.label ?? ''}' of node '${node.id}' targets missing node '${edge.target}'`,
        );
      } else {
        targets.push(edge.target);
      }
    }
    adjacency.set(node.id, targets);
  }

  if (typeof tree.root !== 'string' || !ids.has(tree.root)) {
    problems.push(`root '${String(tree.root)}' is not a node`);
    return problems;
  }

  // Cycle check via iterative colouring.
  const colour = new Map<string, 1 | 2>();
  for (const start of ids) {
    if (colour.has(start)) continue;
    const stack: Array<{ id: string; index: number }> = [{ id: start, index: 0 }];
    colour.set(start, 1);
    while (stack.length > 0) {
      const frame = stack[stack.length - 1];
      const targets = adjacency.get(frame.id) ?? [];
      if (frame.index < targets.length) {
        const next = targets[frame.index];
        frame.index += 1;
        if (colour.get(next) === 1) {
          problems.push(`cycle detected through node '${next}'`);
          colour.set(next, 2);
          continue;
        }
        if (!colour.has(next)) {
          colour.set(next, 1);
          stack.push({ id: next, index: 0 });
        }
      } else {
        colour.set(frame.id, 2);
        stack.pop();
      }
    }
  }

  // Reachability from the root.
  const seen = new Set<string>([tree.root]);
  const queue = [tree.root];
  while (queue.length > 0) {
    const next = queue.pop() as string;
    for (const target of adjacency.get(next) ?? []) {
      if (!seen.has(target)) {
        seen.add(target);
        queue.push(target);
      }
    }
  }
  for (const id of ids) {
    if (!seen.has(id)) {
      problems.push(`node '${id}' is unreachable from the root`);
    }
  }

  return problems;
}
