// Task console: one form per task endpoint, rendering subgraphs, paths,
// and tables straight from the API responses.

import { ApiClient, ApiError, KgqaView, PathView, SubgraphView } from '../api.js';
import { clear, el, toast } from '../dom.js';

export class TasksView {
  private resultBox: HTMLElement;
  private toastBox: HTMLElement;

  constructor(private container: HTMLElement, private api: ApiClient) {
    clear(container);
    container.className = 'tasks-view';
    this.toastBox = el('div', { class: 'toasts' });
    this.resultBox = el('div', { class: 'task-results' });
  }

  async load(): Promise<void> {
    const { documents } = await this.api.catalog();
    const graphSelect = el('select', { class: 'graph-select' },
      ...documents.map((d) => el('option', { value: d.graph_id },
        `${d.title} (${d.graph_id})`)));
    const questionInput = el('input', { class: 'question-input', placeholder: 'question' });
    const useLlm = el('input', { type: 'checkbox', class: 'use-llm' });
    const entityInput = el('input', { class: 'entity-input', placeholder: 'entity' });
    const sourceInput = el('input', { class: 'source-input', placeholder: 'source' });
    const targetInput = el('input', { class: 'target-input', placeholder: 'target' });
    const entitiesInput = el('input', {
      class: 'entities-input', placeholder: 'entities, | separated' });

    const run = (name: string, body: Record<string, unknown>) => {
      void this.api.task<Record<string, unknown>>(name, {
        graph_id: graphSelect.value, ...body,
      }).then((result) => this.renderResult(name, result))
        .catch((error: ApiError) => toast(this.toastBox, 'error',
          `${name}: ${error.message}`));
    };

    this.container.append(
      this.toastBox,
      el('div', { class: 'task-forms' },
        graphSelect,
        el('div', { class: 'task-kgqa' }, questionInput,
          el('label', {}, useLlm, ' compose answer with LLM'),
          el('button', {
            class: 'run-kgqa',
            onclick: () => {
              void this.api.kgqa(graphSelect.value, questionInput.value, useLlm.checked)
                .then((result) => this.renderKgqa(result))
                .catch((error: ApiError) =>
                  toast(this.toastBox, 'error', `kgqa: ${error.message}`));
            },
          }, 'Ask')),
        el('div', { class: 'task-neighborhood' }, entityInput,
          el('button', { class: 'run-neighborhood',
            onclick: () => run('neighborhood', { entity: entityInput.value, hops: 2 }) },
            'Neighborhood')),
        el('div', { class: 'task-paths' }, sourceInput, targetInput,
          el('button', { class: 'run-paths',
            onclick: () => run('paths', { source: sourceInput.value,
                                          target: targetInput.value, max_hops: 3 }) },
            'Paths')),
        el('div', { class: 'task-compare' }, entitiesInput,
          el('button', { class: 'run-compare',
            onclick: () => run('compare', {
              entities: entitiesInput.value.split('|').map((s) => s.trim()).filter(Boolean),
            }) }, 'Compare')),
        el('button', { class: 'run-duplicates', onclick: () => run('duplicates', {}) },
          'Duplicates'),
        el('button', { class: 'run-gaps', onclick: () => run('gaps', {}) }, 'Coverage gaps'),
        el('button', { class: 'run-diagnostics', onclick: () => run('diagnostics', {}) },
          'Diagnostics'),
        el('button', { class: 'run-trace', onclick: () => run('trace', {}) },
          'Provenance trace'),
      ),
      this.resultBox,
    );
  }

  private renderKgqa(result: KgqaView): void {
    clear(this.resultBox);
    this.resultBox.append(
      el('div', { class: 'kgqa-matches' },
        `matched: ${result.matched_entities.map((m) => `${m.entity} (${m.score})`).join(', ')}`),
    );
    // The answer section exists only when the LLM composed one.
    if (result.answer !== null) {
      this.resultBox.append(el('div', { class: 'kgqa-answer' }, result.answer));
    }
    this.resultBox.append(this.subgraphTable(result.evidence_subgraph));
    if (result.reasoning_paths.length) {
      this.resultBox.append(el('div', { class: 'kgqa-paths' },
        ...result.reasoning_paths.map((p) => this.pathLine(p))));
    }
  }

  private pathLine(path: PathView): HTMLElement {
    const parts: string[] = [];
    path.nodes.forEach((node, i) => {
      parts.push(node);
      if (i < path.edges.length) parts.push(`-[${path.edges[i].predicate}]-`);
    });
    return el('div', { class: 'path-line' }, parts.join(' '));
  }

  private subgraphTable(subgraph: SubgraphView): HTMLElement {
    return el('table', { class: 'subgraph-table' },
      el('thead', {}, el('tr', {},
        el('th', {}, 'subject'), el('th', {}, 'predicate'), el('th', {}, 'object'))),
      el('tbody', {},
        ...subgraph.edges.map((e) => el('tr', { 'data-edge-id': e.id },
          el('td', {}, e.subject), el('td', {}, e.predicate), el('td', {}, e.object)))),
    );
  }

  private renderResult(name: string, result: Record<string, unknown>): void {
    clear(this.resultBox);
    this.resultBox.append(
      el('h3', {}, name),
      el('pre', { class: `result-${name}` }, JSON.stringify(result, null, 2)),
    );
  }
}

export async function renderTasks(container: HTMLElement, api: ApiClient): Promise<TasksView> {
  const view = new TasksView(container, api);
  await view.load();
  return view;
}
