// Interactive node-link canvas over one document's graph: entity search,
// neighborhood expansion, filtering, zoom, layout switching, edge-cap
// indicator, plus the inspector for the selected edge.

import { ApiClient, SubgraphView } from '../api.js';
import { clear, el } from '../dom.js';
import { forceLayout, hierarchicalLayout, Point } from '../layout.js';
import { ViewState } from '../state.js';
import { renderInspector } from './inspector.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const WIDTH = 800;
const HEIGHT = 520;

export interface GraphCallbacks {
  onStateChange(patch: Partial<ViewState>): void;
}

export class GraphView {
  subgraph: SubgraphView | null = null;
  private canvasBox: HTMLElement;
  private inspectorBox: HTMLElement;
  private statsBox: HTMLElement;

  constructor(
    private container: HTMLElement,
    private api: ApiClient,
    private documentId: string,
    private state: ViewState,
    private callbacks: GraphCallbacks,
  ) {
    clear(container);
    container.className = 'graph-view';
    this.statsBox = el('div', { class: 'stats-panel' });
    this.canvasBox = el('div', { class: 'graph-canvas-box' });
    this.inspectorBox = el('div', { class: 'inspector-box' });
    container.append(this.buildControls(), this.statsBox,
      el('div', { class: 'graph-columns' }, this.canvasBox, this.inspectorBox));
  }

  async load(): Promise<void> {
    this.subgraph = await this.api.graph(this.documentId, {
      entity: this.state.entity ?? undefined,
      hops: this.state.entity ? this.state.hops : undefined,
      predicates: this.state.predicates,
      include_deleted: this.state.includeDeleted,
      cap: this.state.edgeCap,
    });
    this.renderStats();
    this.renderCanvas();
    if (this.state.selection?.kind === 'edge') {
      const present = this.subgraph.edges.some((e) => e.id === this.state.selection!.id);
      if (present) await this.openInspector(this.state.selection.id);
      else this.callbacks.onStateChange({ selection: null });
    }
  }

  private buildControls(): HTMLElement {
    const entityInput = el('input', {
      class: 'entity-search',
      placeholder: 'entity name',
      value: this.state.entity ?? '',
    });
    entityInput.value = this.state.entity ?? '';
    const hopsInput = el('input', { type: 'number', min: '1', max: '4', class: 'hops-input' });
    hopsInput.value = String(this.state.hops);
    const zoomSlider = el('input', {
      type: 'range', min: '0.4', max: '2.5', step: '0.1', class: 'zoom-slider',
      oninput: () => {
        this.callbacks.onStateChange({ zoom: Number(zoomSlider.value) });
        this.applyZoom(Number(zoomSlider.value));
      },
    });
    zoomSlider.value = String(this.state.zoom);

    return el('div', { class: 'graph-controls' },
      entityInput, hopsInput,
      el('button', {
        class: 'focus-entity',
        onclick: () => {
          this.callbacks.onStateChange({
            entity: entityInput.value || null,
            hops: Number(hopsInput.value) || 1,
            selection: null,
          });
        },
      }, 'Focus'),
      el('button', {
        class: 'layout-switch',
        onclick: () => {
          this.callbacks.onStateChange({
            layout: this.state.layout === 'force' ? 'hierarchical' : 'force',
          });
        },
      }, `Layout: ${this.state.layout}`),
      el('button', {
        class: 'layout-reset',
        onclick: () => this.renderCanvas(),
      }, 'Reset view'),
      el('label', { class: 'deleted-toggle' },
        (() => {
          const box = el('input', { type: 'checkbox' });
          box.checked = this.state.includeDeleted;
          box.disabled = !this.api.canEdit;
          box.addEventListener('change', () =>
            this.callbacks.onStateChange({ includeDeleted: box.checked }));
          return box;
        })(),
        ' show deleted'),
      zoomSlider,
      el('a', {
        class: 'export-link',
        href: this.api.exportUrl(this.documentId, 'csv', this.state.predicates),
      }, 'Export CSV'),
    );
  }

  private renderStats(): void {
    if (!this.subgraph) return;
    clear(this.statsBox);
    const stats = this.subgraph.stats;
    this.statsBox.append(
      el('span', { class: 'stat-nodes' }, `nodes: ${stats.node_count}`),
      el('span', { class: 'stat-edges' }, `edges: ${stats.edge_count}`),
      el('span', { class: 'stat-deleted' }, `deleted: ${stats.deleted_count}`),
    );
    if (this.subgraph.truncated) {
      this.statsBox.append(el('span', { class: 'edge-cap-indicator' },
        `capped at ${this.state.edgeCap} edges`));
    }
  }

  private positions(): Map<string, Point> {
    const names = this.subgraph!.nodes.map((n) => n.name);
    const pairs: Array<[string, string]> =
      this.subgraph!.edges.map((e) => [e.subject, e.object]);
    if (this.state.layout === 'hierarchical') {
      const root = this.state.entity ?? names[0] ?? null;
      return hierarchicalLayout(names, pairs, root, WIDTH, HEIGHT);
    }
    return forceLayout(names, pairs, WIDTH, HEIGHT);
  }

  private renderCanvas(): void {
    if (!this.subgraph) return;
    clear(this.canvasBox);
    const svg = document.createElementNS(SVG_NS, 'svg');
    svg.setAttribute('class', 'graph-canvas');
    svg.setAttribute('viewBox', `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute('width', '100%');
    const positions = this.positions();
    const inner = document.createElementNS(SVG_NS, 'g');
    inner.setAttribute('class', 'zoom-layer');
    svg.append(inner);

    for (const edge of this.subgraph.edges) {
      const a = positions.get(edge.subject);
      const b = positions.get(edge.object);
      if (!a || !b) continue;
      const group = document.createElementNS(SVG_NS, 'g');
      group.setAttribute('class', 'edge'
        + (edge.deleted ? ' deleted' : '')
        + (this.state.selection?.kind === 'edge' && this.state.selection.id === edge.id
          ? ' selected' : ''));
      group.setAttribute('data-edge-id', edge.id);
      const line = document.createElementNS(SVG_NS, 'line');
      line.setAttribute('x1', String(a.x));
      line.setAttribute('y1', String(a.y));
      line.setAttribute('x2', String(b.x));
      line.setAttribute('y2', String(b.y));
      const label = document.createElementNS(SVG_NS, 'text');
      label.setAttribute('x', String((a.x + b.x) / 2));
      label.setAttribute('y', String((a.y + b.y) / 2));
      label.setAttribute('class', 'edge-label');
      label.textContent = edge.predicate;
      group.append(line, label);
      group.addEventListener('click', () => {
        this.callbacks.onStateChange({ selection: { kind: 'edge', id: edge.id } });
        void this.openInspector(edge.id);
      });
      inner.append(group);
    }

    for (const node of this.subgraph.nodes) {
      const p = positions.get(node.name);
      if (!p) continue;
      const group = document.createElementNS(SVG_NS, 'g');
      group.setAttribute('class', 'node'
        + (this.state.selection?.kind === 'node' && this.state.selection.id === node.name
          ? ' selected' : ''));
      group.setAttribute('data-node-name', node.name);
      const circle = document.createElementNS(SVG_NS, 'circle');
      circle.setAttribute('cx', String(p.x));
      circle.setAttribute('cy', String(p.y));
      circle.setAttribute('r', '10');
      const label = document.createElementNS(SVG_NS, 'text');
      label.setAttribute('x', String(p.x + 12));
      label.setAttribute('y', String(p.y + 4));
      label.textContent = node.name;
      group.append(circle, label);
      group.addEventListener('click', () => {
        this.callbacks.onStateChange({ selection: { kind: 'node', id: node.name } });
        group.classList.add('selected');
      });
      group.addEventListener('dblclick', () => {
        void this.expandNeighborhood(node.name);
      });
      inner.append(group);
    }
    this.canvasBox.append(svg);
    this.applyZoom(this.state.zoom);
  }

  private applyZoom(zoom: number): void {
    const layer = this.canvasBox.querySelector('.zoom-layer') as SVGGElement | null;
    if (layer) layer.setAttribute('transform', `scale(${zoom})`);
  }

  /** One hops=1 neighborhood request, merged into the current view. */
  async expandNeighborhood(entity: string): Promise<void> {
    if (!this.subgraph) return;
    const addition = await this.api.graph(this.documentId, {
      entity, hops: 1,
      predicates: this.state.predicates,
      include_deleted: this.state.includeDeleted,
      cap: this.state.edgeCap,
    });
    const nodeNames = new Set(this.subgraph.nodes.map((n) => n.name));
    for (const node of addition.nodes) {
      if (!nodeNames.has(node.name)) {
        nodeNames.add(node.name);
        this.subgraph.nodes.push(node);
      }
    }
    const edgeIds = new Set(this.subgraph.edges.map((e) => e.id));
    for (const edge of addition.edges) {
      if (!edgeIds.has(edge.id)) {
        edgeIds.add(edge.id);
        this.subgraph.edges.push(edge);
      }
    }
    this.renderCanvas();
  }

  async openInspector(edgeId: string): Promise<void> {
    await renderInspector(this.inspectorBox, this.api, edgeId, {
      onChanged: () => { void this.load(); },
    });
  }
}

export async function renderGraph(
  container: HTMLElement,
  api: ApiClient,
  documentId: string,
  state: ViewState,
  callbacks: GraphCallbacks,
): Promise<GraphView> {
  const view = new GraphView(container, api, documentId, state, callbacks);
  await view.load();
  return view;
}
