import { ApiClient, ApiError } from './api.js';
import { validateTree } from './validate.js';
import type {
  AuditReportDoc,
  RecordDoc,
  SessionPayload,
  TrailStep,
  TreeDoc,
} from './types.js';

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const SESSION_KEY = 'fairaudit.session';

export interface WizardState {
  tree: TreeDoc | null;
  sessionId: string | null;
  session: SessionPayload | null;
  error: string | null;
  exportWarning: string | null;
  previewTree: TreeDoc | null;
  previewErrors: string[] | null;
  auditReport: AuditReportDoc | null;
  auditError: string | null;
}

type Listener = (state: WizardState) => void;

/**
 * View model for the wizard. It mirrors service state and never derives
 * fairness results or tree edits client-side; every transition is an API
 * call whose response replaces the local copy.
 */
export class WizardStore {
  readonly state: WizardState = {
    tree: null,
    sessionId: null,
    session: null,
    error: null,
    exportWarning: null,
    previewTree: null,
    previewErrors: null,
    auditReport: null,
    auditError: null,
  };

  private listeners: Listener[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly storage: KeyValueStore,
  ) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  private adopt(payload: SessionPayload): void {
    this.state.sessionId = payload.id;
    this.state.session = payload;
    this.state.error = null;
    this.state.exportWarning = null;
    this.storage.setItem(SESSION_KEY, payload.id);
  }

  /** Fetch the tree, then restore the stored session or start a fresh one. */
  async init(): Promise<void> {
    this.state.tree = await this.api.getTree();
    const stored = this.storage.getItem(SESSION_KEY);
    if (stored) {
      try {
        this.adopt(await this.api.getSession(stored));
        this.emit();
        return;
      } catch {
        this.storage.removeItem(SESSION_KEY);
      }
    }
    this.adopt(await this.api.createSession());
    this.emit();
  }

  async answer(label: string, rationale: string): Promise<void> {
    const { sessionId, session } = this.state;
    if (!sessionId || !session) return;
    try {
      // Send the node we believe is current so a stale tab gets a 409
      // instead of silently answering the wrong question.
      this.adopt(await this.api.answer(sessionId, label, rationale, session.current.id));
    } catch (error) {
      this.state.error = error instanceof ApiError ? error.hint() : String(error);
    }
    this.emit();
  }

  async undo(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      this.adopt(await this.api.undo(this.state.sessionId));
    } catch (error) {
      this.state.error = error instanceof ApiError ? error.hint() : String(error);
    }
    this.emit();
  }

  async restart(): Promise<void> {
    this.storage.removeItem(SESSION_KEY);
    this.adopt(await this.api.createSession());
    this.emit();
  }

  /** Node ids on the answered path, current node included. */
  pathNodeIds(): string[] {
    const session = this.state.session;
    if (!session) return [];
    return [...session.trail.map((step) => step.node), session.current.id];
  }

  /** Consecutive (from, to) pairs along the answered path. */
  pathEdges(): Array<[string, string]> {
    const ids = this.pathNodeIds();
    const pairs: Array<[string, string]> = [];
    for (let i = 0; i + 1 < ids.length; i += 1) pairs.push([ids[i], ids[i + 1]]);
    return pairs;
  }

  private stepsWithoutRationale(trail: TrailStep[]): TrailStep[] {
    // Action steps are auto-traversed and never carry an answer or rationale.
    return trail.filter((step) => step.answer !== '' && step.rationale === '');
  }

  /**
   * Fetch the decision record for download. Rationales are optional per
   * step, but a first export attempt with gaps raises a warning; pass
   * force=true to export anyway.
   */
  async exportRecord(force = false): Promise<RecordDoc | null> {
    const { sessionId, session } = this.state;
    if (!sessionId || !session) return null;
    if (!force) {
      const missing = this.stepsWithoutRationale(session.trail);
      if (missing.length > 0) {
        this.state.exportWarning =
          `No rationale recorded for: ${missing.map((s) => s.node).join(', ')}. ` +
          'Export anyway or go back and add reasoning.';
        this.emit();
        return null;
      }
    }
    try {
      const record = await this.api.getRecord(sessionId);
      this.state.exportWarning = null;
      this.emit();
      return record;
    } catch (error) {
      this.state.error = error instanceof ApiError ? error.hint() : String(error);
      this.emit();
      return null;
    }
  }

  /** Validate an uploaded tree document and stage it for preview. */
  previewUpload(jsonText: string): void {
    let doc: unknown;
    try {
      doc = JSON.parse(jsonText);
    } catch (error) {
      this.state.previewTree = null;
      this.state.previewErrors = [`not valid JSON: ${String(error)}`];
      this.emit();
      return;
    }
    const problems = validateTree(doc);
    if (problems.length > 0) {
      this.state.previewTree = null;
      this.state.previewErrors = problems;
    } else {
      this.state.previewTree = doc as TreeDoc;
      this.state.previewErrors = null;
    }
    this.emit();
  }

  clearPreview(): void {
    this.state.previewTree = null;
    this.state.previewErrors = null;
    this.emit();
  }

  async runAudit(body: unknown): Promise<void> {
    try {
      const response = await this.api.audit(body);
      this.state.auditReport = response.report;
      this.state.auditError = null;
    } catch (error) {
      this.state.auditReport = null;
      this.state.auditError = error instanceof ApiError ? error.hint() : String(error);
    }
    this.emit();
  }
}

/** Canonical download bytes for a record: stable key order, 2-space indent. */
export function recordToDownload(record: RecordDoc): string {
  return `${stableStringify(record, 2)}\n`;
}

function stableStringify(value: unknown, indent: number): string {
  const sort = (input: unknown): unknown => {
    if (Array.isArray(input)) return input.map(sort);
    if (input && typeof input === 'object') {
      const out: Record<string, unknown> = {};
      for (const key of Object.keys(input as Record<string, unknown>).sort()) {
        out[key] = sort((input as Record<string, unknown>)[key]);
      }
      return out;
    }
    return input;
  };
  return JSON.stringify(sort(value), null, indent);
}
