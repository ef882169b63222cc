/** Wire types of the fairaudit HTTP API. The UI treats them as read-only. */

export type NodeKind = 'decision' | 'action' | 'definition';

export interface EdgeDoc {
  label: string;
  target: string;
  [extra: string]: unknown;
}

export interface NodeDoc {
  id: string;
  kind: NodeKind;
  prompt: string;
  tooltip: string;
  definition?: string;
  edges: EdgeDoc[];
  [extra: string]: unknown;
}

export interface TreeDoc {
  version: string;
  root: string;
  nodes: NodeDoc[];
  [extra: string]: unknown;
}

export interface TrailStep {
  node: string;
  answer: string;
  rationale: string;
  timestamp: string;
}

export interface CurrentNode {
  id: string;
  kind: NodeKind;
  prompt: string;
  tooltip: string;
  choices: string[];
  definition: string | null;
}

export interface SessionPayload {
  id: string;
  tree_version: string;
  complete: boolean;
  current: CurrentNode;
  trail: TrailStep[];
  recommendation: string | null;
}

export interface RecordDoc {
  tree_version: string;
  recommendation: string;
  context: string;
  trail: TrailStep[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  valid_choices?: string[];
  current?: string;
}

export interface RateTable {
  [measure: string]: number | null;
}

export interface GroupEntry {
  size: number;
  rates: RateTable | null;
}

export interface ResultDoc {
  definition: string;
  family: string;
  satisfied: boolean | null;
  max_gap: number | null;
  tolerance: number;
  per_group_stats: { [group: string]: { [stat: string]: number | null } };
  notes: string[];
}

export interface ConflictDoc {
  pair: string[];
  explanation: string;
}

export interface CompatibilityDoc {
  base_rate_gap: number;
  equal_base_rates: boolean;
  perfect_classifier: boolean;
  conflicts: ConflictDoc[];
}

export interface AuditReportDoc {
  favourable: number;
  tolerance: number;
  satisfied: boolean;
  groups: { [group: string]: GroupEntry };
  results: ResultDoc[];
  compatibility: CompatibilityDoc | null;
  findings: string[];
}

export interface AuditResponse {
  id: string;
  report: AuditReportDoc;
}
