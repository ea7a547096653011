// Review console: per-triple keep/edit/delete judgments with feedback,
// on-demand LLM verification, meta-expert finalization, the readiness
// dial, and certification. The certify button is enabled exactly when
// the API says the document is certifiable and the session may certify.

import { ApiClient, ApiError, ReadinessView, TripleView, VerifierAssessment } from '../api.js';
import { clear, el, mutationButton, toast } from '../dom.js';

export class ReviewView {
  readiness: ReadinessView | null = null;
  private listBox: HTMLElement;
  private dialBox: HTMLElement;
  private toastBox: HTMLElement;

  constructor(
    private container: HTMLElement,
    private api: ApiClient,
    private documentId: string,
    private graphId: string,
  ) {
    clear(container);
    container.className = 'review-view';
    this.toastBox = el('div', { class: 'toasts' });
    this.dialBox = el('div', { class: 'readiness-dial' });
    this.listBox = el('div', { class: 'review-list' });
    container.append(this.toastBox, this.dialBox, this.listBox);
  }

  async load(): Promise<void> {
    const [readiness, document_] = await Promise.all([
      this.api.readiness(this.documentId),
      this.api.document(this.documentId),
    ]);
    this.readiness = readiness;
    this.renderDial(readiness, document_.state);
    const subgraph = await this.api.graph(this.documentId,
      { cap: 10000, include_review: true });
    clear(this.listBox);
    for (const triple of subgraph.edges) {
      this.listBox.append(this.renderTripleRow(triple, document_.state));
    }
  }

  private renderDial(readiness: ReadinessView, state: string): void {
    clear(this.dialBox);
    const certifyAllowed = this.api.canCertify && readiness.certifiable
      && state !== 'Certified';
    this.dialBox.append(
      el('span', { class: 'coverage', 'data-coverage': String(readiness.coverage) },
        `coverage ${(readiness.coverage * 100).toFixed(0)}%`),
      el('span', { class: 'conflicts', 'data-conflicts': String(readiness.unresolved_conflicts) },
        `${readiness.unresolved_conflicts} unresolved conflicts`),
      el('span', { class: 'retention' },
        `${readiness.retained_triples}/${readiness.inserted_triples} retained`),
      el('span', { class: 'doc-state', 'data-state': state }, state),
    );
    const certify = mutationButton('Certify document', certifyAllowed, () => {
      void this.api.certify(this.documentId)
        .then(() => this.load())
        .catch((error: ApiError) => {
          toast(this.toastBox, 'error', `not ready: ${error.message}`,
            JSON.stringify(error.detail ?? {}, null, 2));
        });
    }, 'certify-button');
    // Disabled (never hidden) when the gate is closed.
    this.dialBox.append(certify);
    if (readiness.high_risk.length) {
      this.dialBox.append(el('div', { class: 'high-risk' },
        `high-risk triples: ${readiness.high_risk.join(', ')}`));
    }
  }

  private renderTripleRow(triple: TripleView, documentState: string): HTMLElement {
    const canJudge = this.api.canEdit && documentState !== 'Certified';
    const row = el('div', { class: 'review-row', 'data-triple-id': triple.id });
    const feedback = el('input', { class: 'feedback-input', placeholder: 'feedback' });
    const verdictBox = el('div', { class: 'verdict-box' });

    const judge = (action: 'keep' | 'edit' | 'delete') => {
      const body: Parameters<ApiClient['submitJudgment']>[1] = {
        action, feedback: feedback.value,
      };
      if (action === 'edit') {
        body.suggested_triple = {
          subject: triple.subject, predicate: triple.predicate, object: triple.object,
        };
      }
      void this.api.submitJudgment(triple.id, body)
        .then(() => this.load())
        .catch((error: ApiError) => toast(this.toastBox, 'error', error.message));
    };

    row.append(
      el('span', { class: 'triple-text' },
        `(${triple.subject}, ${triple.predicate}, ${triple.object})`),
      el('span', { class: 'triple-status', 'data-status': triple.status }, triple.status),
      el('span', { class: 'review-state' },
        triple.aggregate
          ? `${triple.aggregate.human_actions.join('/') || 'unreviewed'}`
            + (triple.aggregate.conflict ? ' [conflict]' : '')
          : ''),
      feedback,
      mutationButton('keep', canJudge, () => judge('keep'), 'judge-keep'),
      mutationButton('edit', canJudge, () => judge('edit'), 'judge-edit'),
      mutationButton('delete', canJudge, () => judge('delete'), 'judge-delete'),
      mutationButton('Verify with LLM', canJudge, () => {
        void this.api.verifyTriple(triple.id)
          .then((assessment) => this.renderAssessment(verdictBox, assessment, canJudge))
          .catch((error: ApiError) => {
            const payload = (error.detail as { payload?: string } | undefined)?.payload;
            toast(this.toastBox, 'error', `verifier failed: ${error.message}`, payload);
          });
      }, 'verify-llm'),
      mutationButton('finalize: certify', this.api.canCertify, () => {
        void this.api.finalizeTriple(triple.id, 'certify')
          .then(() => this.load())
          .catch((error: ApiError) => toast(this.toastBox, 'error', error.message));
      }, 'finalize-certify'),
      mutationButton('finalize: reject', this.api.canCertify, () => {
        void this.api.finalizeTriple(triple.id, 'reject')
          .then(() => this.load())
          .catch((error: ApiError) => toast(this.toastBox, 'error', error.message));
      }, 'finalize-reject'),
      verdictBox,
    );
    return row;
  }

  private renderAssessment(box: HTMLElement, assessment: VerifierAssessment,
                           canJudge: boolean): void {
    clear(box);
    const suggested = assessment.suggested_triplet;
    box.append(
      el('span', { class: `verdict verdict-${assessment.verdict.toLowerCase()}` },
        assessment.verdict),
      el('span', { class: 'confidence' }, ` ${(assessment.confidence * 100).toFixed(0)}%`),
      el('div', { class: 'reasoning' }, assessment.reasoning),
      el('div', { class: 'suggested' },
        `suggested: (${suggested.subject}, ${suggested.predicate}, ${suggested.object})`),
      // Copy-into-edit only; the suggestion is never auto-applied.
      mutationButton('copy into edit', canJudge, () => {
        const tripleId = (box.closest('.review-row') as HTMLElement).dataset.tripleId!;
        void this.api.submitJudgment(tripleId, {
          action: 'edit',
          feedback: `verifier suggestion: ${assessment.reasoning}`,
          suggested_triple: suggested,
        }).then(() => this.load());
      }, 'copy-suggestion'),
    );
  }
}

export async function renderReview(
  container: HTMLElement,
  api: ApiClient,
  documentId: string,
  graphId: string,
): Promise<ReviewView> {
  const view = new ReviewView(container, api, documentId, graphId);
  await view.load();
  return view;
}
