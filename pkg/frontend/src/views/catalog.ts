// Sortable, status-aware dashboard of ingested documents.

import { ApiClient, DocumentRow } from '../api.js';
import { clear, el } from '../dom.js';

export interface CatalogCallbacks {
  onOpen(documentId: string): void;
}

export async function renderCatalog(
  container: HTMLElement,
  api: ApiClient,
  callbacks: CatalogCallbacks,
  sort: 'name' | 'status' | 'date' = 'date',
  order: 'asc' | 'desc' = 'asc',
): Promise<void> {
  clear(container);
  container.className = 'catalog-view';
  const { documents } = await api.catalog(sort, order);

  const controls = el('div', { class: 'catalog-controls' },
    'Sort by: ',
    ...(['name', 'status', 'date'] as const).map((key) =>
      el('button', {
        class: `sort-button${key === sort ? ' active' : ''}`,
        'data-sort': key,
        onclick: () => {
          const nextOrder = key === sort && order === 'asc' ? 'desc' : 'asc';
          void renderCatalog(container, api, callbacks, key, nextOrder);
        },
      }, key)),
  );
  container.append(controls);

  if (!documents.length) {
    container.append(el('p', { class: 'empty-state' },
      'No documents ingested yet. Ingest one through the API or CLI to get started.'));
    return;
  }

  const table = el('table', { class: 'catalog-table' },
    el('thead', {}, el('tr', {},
      el('th', {}, 'Title'), el('th', {}, 'Standard'), el('th', {}, 'State'),
      el('th', {}, 'Nodes'), el('th', {}, 'Edges'), el('th', {}, 'Created'))),
  );
  const body = el('tbody');
  for (const row of documents) {
    body.append(renderRow(row, callbacks));
  }
  table.append(body);
  container.append(table);
}

function renderRow(row: DocumentRow, callbacks: CatalogCallbacks): HTMLElement {
  return el('tr', {
    class: 'catalog-row',
    'data-document-id': row.id,
    onclick: () => callbacks.onOpen(row.id),
  },
    el('td', {}, row.title),
    el('td', {}, el('span', { class: 'standard-badge' }, row.standard)),
    el('td', {}, el('span', {
      class: `state-badge state-${row.state.toLowerCase()}`,
      'data-state': row.state,
    }, row.state)),
    el('td', {}, String(row.node_count)),
    el('td', {}, String(row.edge_count)),
    el('td', {}, row.created_at.slice(0, 10)),
  );
}
