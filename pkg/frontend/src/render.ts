import { layoutTree, NODE_H, NODE_W } from './layout.js';
import { recordToDownload, WizardStore } from './state.js';
import type { NodeDoc, TreeDoc } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const PAD = 24;

type Download = (text: string, filename: string) => void;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: Array<Node | string> = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  for (const child of children) node.append(child);
  return node;
}

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

function nodeShape(node: NodeDoc, x: number, y: number): SVGElement {
  if (node.kind === 'decision') {
    const cx = x + NODE_W / 2;
    const cy = y + NODE_H / 2;
    const points = [
      `${cx},${y - 6}`,
      `${x + NODE_W + 10},${cy}`,
      `${cx},${y + NODE_H + 6}`,
      `${x - 10},${cy}`,
    ].join(' ');
    return svgEl('polygon', { points });
  }
  return svgEl('rect', {
    x: String(x),
    y: String(y),
    width: String(NODE_W),
    height: String(NODE_H),
    rx: node.kind === 'definition' ? '16' : '3',
  });
}

function shorten(text: string, max = 46): string {
  return text.length <= max ? text : `${text.slice(0, max - 1)}…`;
}

/** Render the tree as a layered DAG with the answered path highlighted. */
export function renderGraph(
  doc: TreeDoc,
  pathIds: string[],
  pathEdges: Array<[string, string]>,
  currentId: string | null,
): SVGElement {
  const layout = layoutTree(doc);
  const byId = new Map(doc.nodes.map((n) => [n.id, n]));
  const onPath = new Set(pathIds);
  const onEdgePath = new Set(pathEdges.map(([a, b]) => `${a}->${b}`));

  const svg = svgEl('svg', {
    viewBox: `${-PAD} ${-PAD} ${layout.width + 2 * PAD} ${layout.height + 2 * PAD}`,
    class: 'tree-graph',
    'data-testid': 'tree-graph',
  });

  for (const edge of layout.edges) {
    const from = layout.nodes.get(edge.from);
    const to = layout.nodes.get(edge.to);
    if (!from || !to) continue;
    const x1 = from.x + NODE_W;
    const y1 = from.y + NODE_H / 2;
    const x2 = to.x;
    const y2 = to.y + NODE_H / 2;
    const mid = (x1 + x2) / 2;
    const path = svgEl('path', {
      d: `M ${x1} ${y1} C ${mid} ${y1}, ${mid} ${y2}, ${x2} ${y2}`,
      class: onEdgePath.has(`${edge.from}->${edge.to}`) ? 'edge highlight' : 'edge',
      'data-edge': `${edge.from}->${edge.to}`,
    });
    svg.append(path);
    if (edge.label) {
      const label = svgEl('text', {
        x: String(mid),
        y: String((y1 + y2) / 2 - 5),
        class: 'edge-label',
      });
      label.textContent = edge.label;
      svg.append(label);
    }
  }

  for (const place of layout.nodes.values()) {
    const node = byId.get(place.id);
    if (!node) continue;
    const classes = ['node', node.kind];
    if (onPath.has(node.id)) classes.push('on-path');
    if (node.id === currentId) classes.push('current');
    const group = svgEl('g', { class: classes.join(' '), 'data-node-id': node.id });
    group.append(nodeShape(node, place.x, place.y));
    const title = svgEl('title');
    title.textContent = node.tooltip;
    group.append(title);
    const text = svgEl('text', {
      x: String(place.x + NODE_W / 2),
      y: String(place.y + NODE_H / 2 + 4),
      class: 'node-label',
    });
    text.textContent = shorten(node.prompt);
    group.append(text);
    svg.append(group);
  }
  return svg;
}

function wizardCard(store: WizardStore, download: Download): HTMLElement {
  const session = store.state.session;
  const card = el('section', { class: 'card wizard', 'data-testid': 'wizard' });
  if (!session) {
    card.append(el('p', {}, ['Connecting…']));
    return card;
  }

  if (session.complete) {
    const tree = store.state.tree;
    const leaf = tree?.nodes.find((n) => n.id === session.current.id);
    card.append(el('h2', {}, ['Recommended definition']));
    card.append(
      el('p', { class: 'recommendation', 'data-testid': 'recommendation' }, [
        session.recommendation ?? '',
      ]),
    );
    card.append(el('p', { class: 'explainer' }, [leaf?.tooltip ?? '']));
    if (store.state.exportWarning) {
      card.append(
        el('p', { class: 'warning', 'data-testid': 'export-warning' }, [
          store.state.exportWarning,
        ]),
      );
      const force = el('button', { 'data-testid': 'export-anyway' }, ['Export anyway']);
      force.addEventListener('click', () => {
        void store.exportRecord(true).then((record) => {
          if (record) download(recordToDownload(record), 'decision-record.json');
        });
      });
      card.append(force);
    }
    const exportButton = el('button', { 'data-testid': 'export' }, ['Export decision record']);
    exportButton.addEventListener('click', () => {
      void store.exportRecord().then((record) => {
        if (record) download(recordToDownload(record), 'decision-record.json');
      });
    });
    card.append(exportButton);
  } else {
    card.append(el('h2', { 'data-testid': 'prompt' }, [session.current.prompt]));
    if (session.current.tooltip) {
      card.append(el('p', { class: 'tooltip', 'data-testid': 'tooltip' }, [session.current.tooltip]));
    }
    const rationale = el('textarea', {
      'data-testid': 'rationale',
      placeholder: 'Why? (optional, stored with the decision)',
    });
    const choices = el('div', { class: 'choices' });
    for (const label of session.current.choices) {
      const button = el('button', { 'data-choice': label }, [label]);
      button.addEventListener('click', () => {
        void store.answer(label, rationale.value.trim());
        rationale.value = '';
      });
      choices.append(button);
    }
    card.append(choices, el('label', {}, ['Rationale']), rationale);
  }

  const nav = el('div', { class: 'nav' });
  const back = el('button', { 'data-testid': 'back' }, ['← Back']);
  if (session.trail.length === 0) back.setAttribute('disabled', 'disabled');
  back.addEventListener('click', () => void store.undo());
  const restart = el('button', { 'data-testid': 'restart' }, ['Restart']);
  restart.addEventListener('click', () => void store.restart());
  nav.append(back, restart);
  card.append(nav);

  if (store.state.error) {
    card.append(el('p', { class: 'error', 'data-testid': 'error' }, [store.state.error]));
  }
  return card;
}

function trailCard(store: WizardStore): HTMLElement {
  const card = el('section', { class: 'card trail', 'data-testid': 'trail' });
  card.append(el('h3', {}, ['Decision path']));
  const tree = store.state.tree;
  const list = el('ol');
  for (const step of store.state.session?.trail ?? []) {
    const node = tree?.nodes.find((n) => n.id === step.node);
    const parts: string[] = [node?.prompt ?? step.node];
    if (step.answer) parts.push(` → ${step.answer}`);
    const item = el('li', { 'data-trail-node': step.node }, [parts.join('')]);
    if (step.rationale) {
      item.append(el('div', { class: 'rationale' }, [step.rationale]));
    }
    list.append(item);
  }
  card.append(list);
  return card;
}

function uploadCard(store: WizardStore): HTMLElement {
  const card = el('section', { class: 'card upload' });
  card.append(el('h3', {}, ['Preview a custom tree']));
  const input = el('textarea', {
    'data-testid': 'upload-input',
    placeholder: 'Paste tree JSON to validate and preview it',
  });
  const button = el('button', { 'data-testid': 'upload-validate' }, ['Validate']);
  button.addEventListener('click', () => store.previewUpload(input.value));
  card.append(input, button);
  if (store.state.previewErrors) {
    const list = el('ul', { class: 'error', 'data-testid': 'upload-errors' });
    for (const problem of store.state.previewErrors) list.append(el('li', {}, [problem]));
    card.append(list);
  } else if (store.state.previewTree) {
    card.append(
      el('p', { class: 'ok', 'data-testid': 'upload-ok' }, [
        `Valid tree (version ${store.state.previewTree.version}); previewing below. ` +
          'Sessions keep using the service tree.',
      ]),
    );
    const clear = el('button', { 'data-testid': 'upload-clear' }, ['Back to service tree']);
    clear.addEventListener('click', () => store.clearPreview());
    card.append(clear);
  }
  return card;
}

function formatNumber(value: number | null): string {
  return value === null ? 'undefined' : value.toFixed(4);
}

function gapBar(gap: number | null, tolerance: number): HTMLElement {
  const wrap = el('div', { class: 'gap-bar' });
  if (gap === null) return wrap;
  const denominator = Math.max(gap, tolerance * 2, 0.001);
  const fill = el('div', {
    class: gap <= tolerance ? 'fill ok' : 'fill bad',
    style: `width:${Math.min(100, (gap / denominator) * 100).toFixed(1)}%`,
  });
  const marker = el('div', {
    class: 'marker',
    style: `left:${Math.min(100, (tolerance / denominator) * 100).toFixed(1)}%`,
    title: `tolerance ${tolerance}`,
  });
  wrap.append(fill, marker);
  return wrap;
}

function auditCard(store: WizardStore): HTMLElement {
  const card = el('section', { class: 'card audit' });
  card.append(el('h3', {}, ['Audit a dataset']));
  const dataset = el('textarea', {
    'data-testid': 'audit-dataset',
    placeholder: 'CSV with a header row',
  });
  const schema = el('textarea', {
    'data-testid': 'audit-schema',
    placeholder: '{"sensitive": "gender", "y_true": "actual", "y_pred": "predicted", "favourable": 0}',
  });
  const definitions = el('input', {
    'data-testid': 'audit-definitions',
    placeholder: 'DemographicParity,EqualisedOdds',
  });
  const run = el('button', { 'data-testid': 'audit-run' }, ['Run audit']);
  run.addEventListener('click', () => {
    let schemaDoc: unknown;
    try {
      schemaDoc = JSON.parse(schema.value || '{}');
    } catch (error) {
      store.state.auditError = `schema is not valid JSON: ${String(error)}`;
      store.state.auditReport = null;
      card.dispatchEvent(new Event('audit-error'));
      return;
    }
    void store.runAudit({
      dataset: dataset.value,
      schema: schemaDoc,
      definitions: definitions.value.split(',').map((d) => d.trim()).filter(Boolean),
    });
  });
  card.append(dataset, schema, definitions, run);

  if (store.state.auditError) {
    card.append(el('p', { class: 'error', 'data-testid': 'audit-error' }, [store.state.auditError]));
  }
  const report = store.state.auditReport;
  if (report) {
    const result = el('div', { 'data-testid': 'audit-report' });
    const groups = Object.keys(report.groups);
    const table = el('table', { class: 'rates' });
    const head = el('tr', {}, [el('th', {}, ['measure'])]);
    for (const group of groups) {
      head.append(el('th', {}, [`${group} (n=${report.groups[group].size})`]));
    }
    table.append(head);
    const measures = Object.keys(report.groups[groups[0]]?.rates ?? {});
    for (const measure of measures) {
      const row = el('tr', {}, [el('td', {}, [measure])]);
      for (const group of groups) {
        row.append(el('td', {}, [formatNumber(report.groups[group].rates?.[measure] ?? null)]));
      }
      table.append(row);
    }
    result.append(table);

    for (const item of report.results) {
      const verdict = item.satisfied === null ? 'n/a' : item.satisfied ? 'pass' : 'fail';
      const block = el('div', { class: `result ${verdict}`, 'data-definition': item.definition });
      block.append(
        el('strong', {}, [`${item.definition} (${item.family}): ${verdict.toUpperCase()}`]),
        el('span', { class: 'gap' }, [
          ` max gap ${formatNumber(item.max_gap)} at tolerance ${item.tolerance}`,
        ]),
        gapBar(item.max_gap, item.tolerance),
      );
      for (const note of item.notes) block.append(el('div', { class: 'note' }, [note]));
      result.append(block);
    }

    if (report.compatibility) {
      for (const conflict of report.compatibility.conflicts) {
        result.append(
          el('p', { class: 'warning conflict', 'data-testid': 'conflict' }, [
            `⚠ ${conflict.pair.join(' vs ')}: ${conflict.explanation}`,
          ]),
        );
      }
    }
    for (const finding of report.findings) {
      result.append(el('p', { class: 'finding' }, [finding]));
    }
    card.append(result);
  }
  return card;
}

/** Mount the app: subscribes to the store and re-renders on every change. */
export function bindApp(root: HTMLElement, store: WizardStore, download: Download): void {
  const render = (): void => {
    root.textContent = '';
    const doc = store.state.previewTree ?? store.state.tree;
    const header = el('header', {}, [
      el('h1', {}, ['Fairness definition selector']),
      el('span', { class: 'version' }, [doc ? `tree ${doc.version}` : '']),
    ]);
    const graphPane = el('section', { class: 'pane graph-pane' });
    if (doc) {
      const highlight = store.state.previewTree ? [] : store.pathNodeIds();
      const edges = store.state.previewTree ? [] : store.pathEdges();
      graphPane.append(
        renderGraph(doc, highlight, edges, store.state.session?.current.id ?? null),
      );
    }
    const sidePane = el('aside', { class: 'pane side-pane' }, [
      wizardCard(store, download),
      trailCard(store),
      uploadCard(store),
      auditCard(store),
    ]);
    root.append(header, el('main', { class: 'layout' }, [graphPane, sidePane]));
  };
  store.subscribe(render);
  render();
}
