// Fusion workspace: overlap report, fused preview summary, and a
// rename/merge form that submits one atomic plan.

import { ApiClient, ApiError, DocumentRow } from '../api.js';
import { clear, el, mutationButton, toast } from '../dom.js';

export class FusionView {
  private resultBox: HTMLElement;
  private toastBox: HTMLElement;

  constructor(private container: HTMLElement, private api: ApiClient) {
    clear(container);
    container.className = 'fusion-view';
    this.toastBox = el('div', { class: 'toasts' });
    this.resultBox = el('div', { class: 'fusion-results' });
  }

  async load(): Promise<void> {
    const { documents } = await this.api.catalog();
    const selections = documents.map((doc) => {
      const box = el('input', { type: 'checkbox', 'data-graph-id': doc.graph_id });
      return { doc, box };
    });
    const picker = el('div', { class: 'graph-picker' },
      ...selections.map(({ doc, box }) =>
        el('label', {}, box, ` ${doc.title} (${doc.graph_id}, ${doc.state})`)));

    const chosen = (): string[] =>
      selections.filter((s) => s.box.checked).map((s) => s.doc.graph_id);

    this.container.append(
      this.toastBox,
      picker,
      el('div', { class: 'fusion-actions' },
        el('button', {
          class: 'detect-overlaps',
          onclick: () => { void this.showOverlaps(chosen()); },
        }, 'Detect overlaps'),
        el('button', {
          class: 'preview-fused',
          onclick: () => { void this.showPreview(chosen()); },
        }, 'Fused preview')),
      this.resultBox,
      this.mergeForm(documents),
    );
  }

  private async showOverlaps(graphIds: string[]): Promise<void> {
    clear(this.resultBox);
    try {
      const report = await this.api.fusionOverlaps(graphIds);
      this.resultBox.append(
        el('h3', {}, `Shared entities (${report.shared_entities.length})`),
        ...report.shared_entities.map((s) =>
          el('div', { class: 'shared-entity' },
            el('code', {}, s.normalized), ' ',
            JSON.stringify(s.variants_per_graph))),
        el('h3', {}, `Naming conflicts (${report.naming_conflicts.length})`),
        ...report.naming_conflicts.map((c) =>
          el('div', { class: 'naming-conflict' },
            el('code', {}, c.normalized), ` variants: ${c.variants.join(' | ')}`)),
      );
    } catch (error) {
      toast(this.toastBox, 'error', (error as ApiError).message);
    }
  }

  private async showPreview(graphIds: string[]): Promise<void> {
    clear(this.resultBox);
    try {
      const fused = await this.api.fusionPreview(graphIds);
      this.resultBox.append(
        el('div', { class: 'fused-summary' },
          `nodes: ${fused.summary.node_count}, edges: ${fused.summary.edge_count}, `
          + `merged classes: ${fused.summary.merged_class_count}`
          + (fused.truncated ? ' (capped)' : '')),
        el('ul', { class: 'fused-edges' },
          ...fused.edges.slice(0, 50).map((e) =>
            el('li', {}, `(${e.subject}, ${e.predicate}, ${e.object}) `,
              el('span', { class: 'origin-tag' }, e.origin_graph)))),
      );
    } catch (error) {
      toast(this.toastBox, 'error', (error as ApiError).message);
    }
  }

  private mergeForm(documents: DocumentRow[]): HTMLElement {
    const graphInput = el('input', { class: 'merge-graph', placeholder: 'graph id' });
    const kindSelect = el('select', { class: 'merge-kind' },
      el('option', { value: 'rename' }, 'rename'),
      el('option', { value: 'merge' }, 'merge'));
    const fromInput = el('input', {
      class: 'merge-from', placeholder: 'from name(s), | separated' });
    const toInput = el('input', { class: 'merge-to', placeholder: 'to name' });

    return el('div', { class: 'merge-form' },
      el('h3', {}, 'Rename / merge'),
      graphInput, kindSelect, fromInput, toInput,
      mutationButton('Apply plan', this.api.canEdit, () => {
        const plan = {
          actions: [{
            kind: kindSelect.value as 'rename' | 'merge',
            graph_id: graphInput.value,
            from: fromInput.value.split('|').map((s) => s.trim()).filter(Boolean),
            to: toInput.value,
          }],
          author: this.api.username ?? 'unknown',
        };
        void this.api.fusionMerge(plan)
          .then((result) => {
            toast(this.toastBox, 'info',
              `applied: ${result.renamed} renamed, ${result.merged} merged`);
          })
          .catch((error: ApiError) => {
            // Atomic failure: nothing rendered as applied.
            toast(this.toastBox, 'error', `plan rejected: ${error.message}`);
          });
      }, 'apply-merge'),
    );
  }
}

export async function renderFusion(container: HTMLElement, api: ApiClient): Promise<FusionView> {
  const view = new FusionView(container, api);
  await view.load();
  return view;
}
