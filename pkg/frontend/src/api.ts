// Typed client for the curation service HTTP API. The UI talks to the
// backend exclusively through this module; no view computes graph
// semantics locally.

export interface SessionInfo {
  token: string;
  username: string;
  role: 'guest' | 'expert' | 'meta_expert' | 'admin';
  expires_at: string;
}

export interface DocumentRow {
  id: string;
  graph_id: string;
  title: string;
  standard: string;
  state: 'Ingesting' | 'Draft' | 'UnderReview' | 'Certified';
  created_at: string;
  certified_at: string | null;
  page_count: number;
  node_count: number;
  edge_count: number;
  deleted_count: number;
}

export interface Provenance {
  document_id: string;
  page: number | null;
  chunk_index: number | null;
  evidence_sentence: string | null;
}

export interface TripleView {
  id: string;
  graph_id: string;
  subject: string;
  predicate: string;
  object: string;
  status: 'Draft' | 'Certified' | 'Rejected';
  deleted: boolean;
  origin: string;
  provenance: Provenance;
  created_by: string;
  created_at: string;
  last_updated_by: string;
  last_updated_at: string;
  judgments?: JudgmentView[];
  aggregate?: AggregateView;
}

export interface JudgmentView {
  id: string;
  triple_id: string;
  reviewer: string;
  action: 'keep' | 'edit' | 'delete';
  feedback: string;
  created_at: string;
  suggested_triple: { subject: string; predicate: string; object: string } | null;
  verdict: string | null;
  confidence: number | null;
}

export interface AggregateView {
  triple_id: string;
  human_actions: string[];
  verifier: string | null;
  conflict: boolean;
  meta_verdict: string | null;
}

export interface GraphStats {
  node_count: number;
  edge_count: number;
  deleted_count: number;
  predicate_histogram: Record<string, number>;
}

export interface SubgraphView {
  nodes: Array<{ id: string; name: string }>;
  edges: TripleView[];
  truncated: boolean;
  stats: GraphStats;
}

export interface EvidenceView {
  triple_id: string;
  document_id: string;
  document_title: string;
  page: number | null;
  chunk_index: number | null;
  evidence_sentence: string | null;
}

export interface ReadinessView {
  document_id: string;
  total_triples: number;
  inserted_triples: number;
  reviewed_triples: number;
  coverage: number;
  unresolved_conflicts: number;
  finalized_triples: number;
  retained_triples: number;
  retention: number;
  certifiable: boolean;
  high_risk: string[];
}

export interface VerifierAssessment {
  verdict: 'CORRECT' | 'NEEDS_IMPROVEMENT' | 'INCORRECT';
  confidence: number;
  reasoning: string;
  evidence_quote: string;
  issues: string[];
  suggested_triplet: { subject: string; predicate: string; object: string };
  expert_action_hint: 'keep' | 'edit' | 'delete';
}

export interface AnalysisReportView {
  overview: string;
  graph_health: Array<{ title: string; status: 'good' | 'watch' | 'risk'; detail: string }>;
  top_risks: Array<{ title: string; severity: 'high' | 'medium' | 'low'; detail: string }>;
  coverage_gaps: Array<{ topic: string; reason: string; priority: string }>;
  questionable_triples: Array<{ subject: string; predicate: string; object: string; issue: string }>;
  recommended_actions: Array<{ title: string; impact: string; effort: string; confidence: string; why: string }>;
  confidence_summary: string;
}

export interface PathView {
  nodes: string[];
  edges: TripleView[];
  length: number;
}

export interface KgqaView {
  keywords: string[];
  matched_entities: Array<{ entity: string; score: number }>;
  answer: string | null;
  reasoning_paths: PathView[];
  evidence_subgraph: SubgraphView;
  provenance: Provenance[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public detail?: unknown,
  ) {
    super(message);
  }
}

export class ApiClient {
  token: string | null = null;
  role: SessionInfo['role'] | null = null;
  username: string | null = null;

  constructor(public base: string) {}

  get canEdit(): boolean {
    return this.role === 'expert' || this.role === 'meta_expert';
  }

  get canCertify(): boolean {
    return this.role === 'meta_expert';
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { 'Content-Type': 'application/json' };
    if (this.token) headers['Authorization'] = `Bearer ${this.token}`;
    const response = await fetch(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const payload = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new ApiError(
        response.status,
        payload.code ?? 'error',
        payload.message ?? response.statusText,
        payload.detail,
      );
    }
    return payload as T;
  }

  async login(username: string, password: string): Promise<SessionInfo> {
    const session = await this.request<SessionInfo>('POST', '/auth/login', { username, password });
    this.token = session.token;
    this.role = session.role;
    this.username = session.username;
    return session;
  }

  async guest(): Promise<SessionInfo> {
    const session = await this.request<SessionInfo>('POST', '/auth/guest');
    this.token = session.token;
    this.role = session.role;
    this.username = session.username;
    return session;
  }

  catalog(sort = 'date', order = 'asc') {
    return this.request<{ documents: DocumentRow[] }>('GET', `/catalog?sort=${sort}&order=${order}`);
  }

  document(id: string) {
    return this.request<DocumentRow>('GET', `/documents/${id}`);
  }

  pages(id: string) {
    return this.request<{ document_id: string; pages: Array<{ page: number; text: string }> }>(
      'GET', `/documents/${id}/pages`);
  }

  report(id: string) {
    return this.request<{ document_id: string; state: string; report: Record<string, unknown> | null }>(
      'GET', `/documents/${id}/report`);
  }

  graph(documentId: string, params: {
    entity?: string; hops?: number; predicates?: string[];
    include_deleted?: boolean; cap?: number; include_review?: boolean;
  } = {}) {
    const query = new URLSearchParams();
    if (params.entity) query.set('entity', params.entity);
    if (params.hops !== undefined) query.set('hops', String(params.hops));
    if (params.predicates?.length) query.set('predicates', params.predicates.join(','));
    if (params.include_deleted) query.set('include_deleted', 'true');
    if (params.include_review) query.set('include_review', 'true');
    if (params.cap !== undefined) query.set('cap', String(params.cap));
    const suffix = query.toString() ? `?${query.toString()}` : '';
    return this.request<SubgraphView>('GET', `/documents/${documentId}/graph${suffix}`);
  }

  readiness(documentId: string) {
    return this.request<ReadinessView>('GET', `/documents/${documentId}/readiness`);
  }

  certify(documentId: string) {
    return this.request<{ document_id: string; triple_count: number }>(
      'POST', `/documents/${documentId}/certify`);
  }

  triple(id: string) {
    return this.request<TripleView>('GET', `/triples/${id}`);
  }

  evidence(id: string) {
    return this.request<EvidenceView>('GET', `/triples/${id}/evidence`);
  }

  createTriple(body: {
    graph_id: string; subject: string; predicate: string; object: string;
    provenance: { document_id: string; page?: number };
  }) {
    return this.request<TripleView>('POST', '/triples', body);
  }

  updateTriple(id: string, patch: { subject?: string; predicate?: string; object?: string }) {
    return this.request<TripleView>('PATCH', `/triples/${id}`, patch);
  }

  deleteTriple(id: string) {
    return this.request<TripleView>('DELETE', `/triples/${id}`);
  }

  restoreTriple(id: string) {
    return this.request<TripleView>('POST', `/triples/${id}/restore`);
  }

  submitJudgment(tripleId: string, body: {
    action: 'keep' | 'edit' | 'delete';
    feedback?: string;
    suggested_triple?: { subject: string; predicate: string; object: string };
    apply?: boolean;
  }) {
    return this.request<JudgmentView>('POST', `/triples/${tripleId}/judgments`, body);
  }

  verifyTriple(tripleId: string) {
    return this.request<VerifierAssessment>('POST', `/triples/${tripleId}/verify`);
  }

  finalizeTriple(tripleId: string, final: 'certify' | 'reject', note = '') {
    return this.request<TripleView>('POST', `/triples/${tripleId}/finalize`, { final, note });
  }

  fusionOverlaps(graphIds: string[]) {
    return this.request<{
      shared_entities: Array<{ normalized: string; variants_per_graph: Record<string, string[]> }>;
      naming_conflicts: Array<{ normalized: string; variants: string[] }>;
      per_graph_unique_counts: Record<string, number>;
    }>('POST', '/fusion/overlaps', { graph_ids: graphIds });
  }

  fusionPreview(graphIds: string[], edgeCap?: number) {
    return this.request<{
      nodes: Array<{ normalized: string; members: Record<string, string[]> }>;
      edges: Array<{ subject: string; predicate: string; object: string; origin_graph: string }>;
      truncated: boolean;
      summary: { node_count: number; edge_count: number; merged_class_count: number };
    }>('POST', '/fusion/preview', { graph_ids: graphIds, edge_cap: edgeCap });
  }

  fusionMerge(plan: {
    actions: Array<{ kind: 'rename' | 'merge'; graph_id: string; from: string[]; to: string }>;
    author: string;
  }) {
    return this.request<{ renamed: number; merged: number; resulting_stats: Record<string, GraphStats> }>(
      'POST', '/fusion/merge', { plan });
  }

  task<T>(name: string, body: Record<string, unknown>) {
    return this.request<T>('POST', `/tasks/${name}`, body);
  }

  kgqa(graphId: string, question: string, useLlm = false) {
    return this.task<KgqaView>('kgqa', { graph_id: graphId, question, use_llm: useLlm });
  }

  analytics(graphId: string, preset: string, depth: number, userPrompt?: string) {
    return this.request<AnalysisReportView>('POST', '/analytics', {
      graph_id: graphId, preset, depth, user_prompt: userPrompt,
    });
  }

  exportUrl(graphId: string, format: 'csv' | 'json', predicates?: string[]): string {
    const query = new URLSearchParams({ graph_id: graphId });
    if (format === 'csv') query.set('format', 'csv');
    if (predicates?.length) query.set('predicates', predicates.join(','));
    return `${this.base}/export/edges?${query.toString()}`;
  }
}
