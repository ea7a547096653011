// View state encoded in the URL fragment so every screen is deep-linkable.
// Format: #/<route>[/<document-id>][?key=value&...]

export type Route = 'catalog' | 'graph' | 'review' | 'fusion' | 'tasks' | 'analytics';

export interface ViewState {
  route: Route;
  documentId: string | null;
  entity: string | null;
  hops: number;
  predicates: string[];
  includeDeleted: boolean;
  layout: 'force' | 'hierarchical';
  zoom: number;
  edgeCap: number;
  selection: { kind: 'node' | 'edge'; id: string } | null;
}

export const DEFAULT_STATE: ViewState = {
  route: 'catalog',
  documentId: null,
  entity: null,
  hops: 1,
  predicates: [],
  includeDeleted: false,
  layout: 'force',
  zoom: 1,
  edgeCap: 500,
  selection: null,
};

const ROUTES: Route[] = ['catalog', 'graph', 'review', 'fusion', 'tasks', 'analytics'];

export function encodeFragment(state: ViewState): string {
  let path = '#/';
  if (state.route !== 'catalog') {
    path += state.route;
    if (state.documentId) path += `/${encodeURIComponent(state.documentId)}`;
  }
  const query = new URLSearchParams();
  if (state.entity) query.set('entity', state.entity);
  if (state.hops !== DEFAULT_STATE.hops) query.set('hops', String(state.hops));
  if (state.predicates.length) query.set('predicates', state.predicates.join(','));
  if (state.includeDeleted) query.set('deleted', '1');
  if (state.layout !== DEFAULT_STATE.layout) query.set('layout', state.layout);
  if (state.zoom !== DEFAULT_STATE.zoom) query.set('zoom', String(state.zoom));
  if (state.edgeCap !== DEFAULT_STATE.edgeCap) query.set('cap', String(state.edgeCap));
  if (state.selection) query.set('sel', `${state.selection.kind}:${state.selection.id}`);
  const suffix = query.toString();
  return suffix ? `${path}?${suffix}` : path;
}

export function parseFragment(fragment: string): ViewState {
  const state: ViewState = { ...DEFAULT_STATE, predicates: [] };
  const raw = fragment.replace(/^#\/?/, '');
  if (!raw) return state;
  const [pathPart, queryPart] = raw.split('?', 2);
  const segments = pathPart.split('/').filter(Boolean);
  if (segments.length) {
    const candidate = segments[0] as Route;
    if (ROUTES.includes(candidate)) {
      state.route = candidate;
      if (segments[1]) state.documentId = decodeURIComponent(segments[1]);
    }
  }
  if (queryPart) {
    const query = new URLSearchParams(queryPart);
    state.entity = query.get('entity');
    if (query.has('hops')) state.hops = clampInt(query.get('hops'), 1, 4, 1);
    const predicates = query.get('predicates');
    state.predicates = predicates ? predicates.split(',').filter(Boolean) : [];
    state.includeDeleted = query.get('deleted') === '1';
    if (query.get('layout') === 'hierarchical') state.layout = 'hierarchical';
    if (query.has('zoom')) {
      const zoom = Number(query.get('zoom'));
      if (Number.isFinite(zoom) && zoom > 0.1 && zoom <= 10) state.zoom = zoom;
    }
    if (query.has('cap')) state.edgeCap = clampInt(query.get('cap'), 1, 100000, 500);
    const selection = query.get('sel');
    if (selection) {
      const [kind, ...rest] = selection.split(':');
      if ((kind === 'node' || kind === 'edge') && rest.length) {
        state.selection = { kind, id: rest.join(':') };
      }
    }
  }
  return state;
}

function clampInt(raw: string | null, min: number, max: number, fallback: number): number {
  const value = Number(raw);
  if (!Number.isInteger(value)) return fallback;
  return Math.min(max, Math.max(min, value));
}
