// Analytics viewer: preset + depth form, report sections rendered as
// cards. Health cards take their color class from the status enum and
// risks from severity, straight off the response.

import { AnalysisReportView, ApiClient, ApiError } from '../api.js';
import { clear, el, toast } from '../dom.js';

export class AnalyticsView {
  private resultBox: HTMLElement;
  private toastBox: HTMLElement;

  constructor(private container: HTMLElement, private api: ApiClient) {
    clear(container);
    container.className = 'analytics-view';
    this.toastBox = el('div', { class: 'toasts' });
    this.resultBox = el('div', { class: 'analytics-result' });
  }

  async load(): Promise<void> {
    const { documents } = await this.api.catalog();
    const graphSelect = el('select', { class: 'graph-select' },
      ...documents.map((d) => el('option', { value: d.graph_id }, d.title)));
    const presetSelect = el('select', { class: 'preset-select' },
      ...['executive', 'quality_audit', 'compliance', 'ontology_health'].map((p) =>
        el('option', { value: p }, p)));
    const depthSelect = el('select', { class: 'depth-select' },
      ...['1', '2', '3'].map((d) => el('option', { value: d }, `depth ${d}`)));
    const promptInput = el('input', {
      class: 'user-prompt', placeholder: 'optional instruction' });

    this.container.append(
      this.toastBox,
      el('div', { class: 'analytics-form' },
        graphSelect, presetSelect, depthSelect, promptInput,
        el('button', {
          class: 'run-analysis',
          onclick: () => {
            void this.api.analytics(graphSelect.value, presetSelect.value,
                                    Number(depthSelect.value),
                                    promptInput.value || undefined)
              .then((report) => this.renderReport(report))
              .catch((error: ApiError) => {
                const payload = (error.detail as { payload?: string } | undefined)?.payload;
                toast(this.toastBox, 'error', `analysis failed: ${error.message}`, payload);
              });
          },
        }, 'Run analysis')),
      this.resultBox,
    );
  }

  private renderReport(report: AnalysisReportView): void {
    clear(this.resultBox);
    this.resultBox.append(
      el('p', { class: 'overview' }, report.overview),
      el('div', { class: 'health-cards' },
        ...report.graph_health.map((h) =>
          el('div', { class: `health-card status-${h.status}`, 'data-status': h.status },
            el('strong', {}, h.title), el('p', {}, h.detail)))),
      el('div', { class: 'risk-cards' },
        ...report.top_risks.map((r) =>
          el('div', { class: `risk-card severity-${r.severity}` },
            el('strong', {}, r.title), el('p', {}, r.detail)))),
      el('ul', { class: 'gap-list' },
        ...report.coverage_gaps.map((g) =>
          el('li', {}, `${g.topic}: ${g.reason} (${g.priority})`))),
      el('ul', { class: 'action-list' },
        ...report.recommended_actions.map((a) =>
          el('li', {}, `${a.title} [impact ${a.impact} / effort ${a.effort}] ${a.why}`))),
      el('p', { class: 'confidence-summary' }, report.confidence_summary),
    );
  }
}

export async function renderAnalytics(container: HTMLElement, api: ApiClient): Promise<AnalyticsView> {
  const view = new AnalyticsView(container, api);
  await view.load();
  return view;
}
