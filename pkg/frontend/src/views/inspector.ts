// Edge inspector: triple details, evidence on demand, role-gated CRUD.
// Every number and sentence shown comes from an API response field.

import { ApiClient, TripleView } from '../api.js';
import { clear, el, mutationButton, toast } from '../dom.js';

export interface InspectorCallbacks {
  onChanged(): void; // triple mutated: parent view refreshes from the API
}

export async function renderInspector(
  container: HTMLElement,
  api: ApiClient,
  tripleId: string,
  callbacks: InspectorCallbacks,
): Promise<void> {
  clear(container);
  container.className = 'inspector-panel';
  const triple = await api.triple(tripleId);

  container.append(
    el('h3', {}, 'Triple inspector'),
    el('div', { class: 'triple-text', 'data-triple-id': triple.id },
      el('span', { class: 'subject' }, triple.subject), ' ',
      el('span', { class: 'predicate' }, triple.predicate), ' ',
      el('span', { class: 'object' }, triple.object)),
    metaTable(triple),
  );

  const evidenceBox = el('div', { class: 'evidence-box' });
  const viewEvidence = el('button', {
    class: 'view-evidence',
    onclick: () => {
      void api.evidence(triple.id).then((evidence) => {
        clear(evidenceBox);
        evidenceBox.append(
          el('blockquote', { class: 'evidence-sentence' },
            evidence.evidence_sentence ?? '[No source sentence stored]'),
          el('div', { class: 'evidence-source' },
            `${evidence.document_title} (${evidence.document_id})`
            + (evidence.page !== null ? `, page ${evidence.page}` : '')),
        );
      });
    },
  }, 'View evidence');
  container.append(viewEvidence, evidenceBox);

  // Source page text stands in for the PDF side panel: the intake
  // stores text, not binaries.
  const pageBox = el('div', { class: 'page-text-box' });
  container.append(el('button', {
    class: 'view-page-text',
    onclick: () => {
      void api.pages(triple.provenance.document_id).then(({ pages }) => {
        clear(pageBox);
        const wanted = triple.provenance.page;
        const page = pages.find((p) => p.page === wanted) ?? pages[0];
        if (page) {
          pageBox.append(
            el('h4', {}, `Page ${page.page}`),
            el('pre', { class: 'page-text' }, page.text));
        }
      });
    },
  }, 'View page text'), pageBox);

  const actions = el('div', { class: 'inspector-actions' });
  const editForm = el('div', { class: 'edit-form', hidden: true });
  actions.append(
    mutationButton('Edit', api.canEdit, () => {
      editForm.hidden = !editForm.hidden;
    }),
    triple.deleted
      ? mutationButton('Restore', api.canEdit, () => {
          void api.restoreTriple(triple.id).then(() => callbacks.onChanged());
        })
      : mutationButton('Delete', api.canEdit, () => {
          void api.deleteTriple(triple.id).then(() => callbacks.onChanged());
        }),
    el('button', {
      class: 'copy-triple',
      onclick: () => {
        const text = `(${triple.subject}, ${triple.predicate}, ${triple.object})`;
        if (navigator.clipboard) void navigator.clipboard.writeText(text);
      },
    }, 'Copy triple'),
  );
  container.append(actions);

  const fields: Record<'subject' | 'predicate' | 'object', HTMLInputElement> = {
    subject: el('input', { value: triple.subject, name: 'subject' }),
    predicate: el('input', { value: triple.predicate, name: 'predicate' }),
    object: el('input', { value: triple.object, name: 'object' }),
  };
  fields.subject.value = triple.subject;
  fields.predicate.value = triple.predicate;
  fields.object.value = triple.object;
  editForm.append(
    fields.subject, fields.predicate, fields.object,
    mutationButton('Save', api.canEdit, () => {
      void api.updateTriple(triple.id, {
        subject: fields.subject.value,
        predicate: fields.predicate.value,
        object: fields.object.value,
      }).then(() => callbacks.onChanged())
        .catch((error) => toast(container, 'error', String(error.message ?? error)));
    }),
  );
  container.append(editForm);
}

function metaTable(triple: TripleView): HTMLElement {
  const aggregate = triple.aggregate;
  return el('table', { class: 'triple-meta' },
    row('Status', triple.status + (triple.deleted ? ' (deleted)' : '')),
    row('Origin', triple.origin),
    row('Document', triple.provenance.document_id),
    row('Page', triple.provenance.page === null ? '-' : String(triple.provenance.page)),
    row('Created', `${triple.created_at.slice(0, 19)} by ${triple.created_by}`),
    row('Updated', `${triple.last_updated_at.slice(0, 19)} by ${triple.last_updated_by}`),
    row('Review', aggregate
      ? `${aggregate.human_actions.length} human, `
        + `verifier: ${aggregate.verifier ?? 'none'}, `
        + (aggregate.conflict ? 'CONFLICT' : 'no conflict')
      : '-'),
  );
}

function row(label: string, value: string): HTMLElement {
  return el('tr', {}, el('th', {}, label), el('td', {}, value));
}
