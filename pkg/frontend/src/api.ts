import type {
  ApiErrorBody,
  AuditResponse,
  RecordDoc,
  SessionPayload,
  TreeDoc,
} from './types.js';

/** Raised for non-2xx responses; carries the service's structured error. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.message);
  }

  /** Human hint, including valid choices when the service offers them. */
  hint(): string {
    if (this.body.valid_choices?.length) {
      return `${this.body.message} (valid: ${this.body.valid_choices.join(', ')})`;
    }
    return this.body.message;
  }
}

async function parseJson(response: Response): Promise<unknown> {
  const text = await response.text();
  try {
    return text ? JSON.parse(text) : {};
  } catch {
    return { code: 'bad_response', message: text.slice(0, 200) };
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await parseJson(response);
    if (!response.ok) {
      throw new ApiError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  getTree(): Promise<TreeDoc> {
    return this.request<TreeDoc>('GET', '/tree');
  }

  createSession(): Promise<SessionPayload> {
    return this.request<SessionPayload>('POST', '/sessions');
  }

  getSession(id: string): Promise<SessionPayload> {
    return this.request<SessionPayload>('GET', `/sessions/${id}`);
  }

  answer(
    id: string,
    label: string,
    rationale: string,
    node?: string,
  ): Promise<SessionPayload> {
    return this.request<SessionPayload>('POST', `/sessions/${id}/answers`, {
      label,
      rationale,
      node,
    });
  }

  undo(id: string): Promise<SessionPayload> {
    return this.request<SessionPayload>('POST', `/sessions/${id}/undo`);
  }

  getRecord(id: string): Promise<RecordDoc> {
    return this.request<RecordDoc>('GET', `/sessions/${id}/record`);
  }

  audit(body: unknown): Promise<AuditResponse> {
    return this.request<AuditResponse>('POST', '/audits', body);
  }
}
