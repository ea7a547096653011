// Application shell: session bar, fragment routing, view mounting.
// All view state lives in the URL fragment; reloading a deep link
// reproduces the same screen.

import { ApiClient } from './api.js';
import { clear, el } from './dom.js';
import { DEFAULT_STATE, encodeFragment, parseFragment, ViewState } from './state.js';
import { renderAnalytics } from './views/analytics.js';
import { renderCatalog } from './views/catalog.js';
import { renderFusion } from './views/fusion.js';
import { renderGraph } from './views/graph.js';
import { renderReview } from './views/review.js';
import { renderTasks } from './views/tasks.js';

export class App {
  state: ViewState = { ...DEFAULT_STATE };
  private main: HTMLElement;
  private sessionBar: HTMLElement;

  constructor(private root: HTMLElement, public api: ApiClient) {
    clear(root);
    this.sessionBar = el('div', { class: 'session-bar' });
    this.main = el('main', { class: 'main-view' });
    root.append(this.sessionBar, this.buildNav(), this.main);
    window.addEventListener('hashchange', () => { void this.route(); });
  }

  private buildNav(): HTMLElement {
    const link = (label: string, fragment: string) =>
      el('a', { class: 'nav-link', href: fragment }, label);
    return el('nav', { class: 'top-nav' },
      link('Catalog', '#/'),
      link('Fusion', '#/fusion'),
      link('Tasks', '#/tasks'),
      link('Analytics', '#/analytics'));
  }

  renderSessionBar(): void {
    clear(this.sessionBar);
    if (this.api.token) {
      this.sessionBar.append(
        el('span', { class: 'session-user' },
          `${this.api.username} (${this.api.role})`));
      return;
    }
    const username = el('input', { class: 'login-username', placeholder: 'username' });
    const password = el('input', { class: 'login-password', type: 'password' });
    this.sessionBar.append(
      username, password,
      el('button', {
        class: 'login-button',
        onclick: () => {
          void this.api.login(username.value, password.value).then(() => {
            this.renderSessionBar();
            void this.route();
          });
        },
      }, 'Log in'),
      el('button', {
        class: 'guest-button',
        onclick: () => {
          void this.api.guest().then(() => {
            this.renderSessionBar();
            void this.route();
          });
        },
      }, 'Browse as guest'));
  }

  setState(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    const fragment = encodeFragment(this.state);
    if (window.location.hash !== fragment) {
      window.location.hash = fragment; // triggers hashchange -> route()
    } else {
      void this.route();
    }
  }

  async route(): Promise<void> {
    this.state = parseFragment(window.location.hash);
    if (!this.api.token) {
      this.renderSessionBar();
      clear(this.main).append(el('p', { class: 'login-hint' },
        'Log in or browse as guest to continue.'));
      return;
    }
    const { route, documentId } = this.state;
    if (route === 'catalog' || !documentId && (route === 'graph' || route === 'review')) {
      await renderCatalog(this.main, this.api, {
        onOpen: (id) => this.setState({ route: 'graph', documentId: id, selection: null }),
      });
      return;
    }
    if (route === 'graph' && documentId) {
      await renderGraph(this.main, this.api, documentId, this.state, {
        onStateChange: (patch) => this.setState(patch),
      });
      return;
    }
    if (route === 'review' && documentId) {
      const doc = await this.api.document(documentId);
      await renderReview(this.main, this.api, documentId, doc.graph_id);
      return;
    }
    if (route === 'fusion') {
      await renderFusion(this.main, this.api);
      return;
    }
    if (route === 'tasks') {
      await renderTasks(this.main, this.api);
      return;
    }
    if (route === 'analytics') {
      await renderAnalytics(this.main, this.api);
      return;
    }
  }
}

export function mountApp(root: HTMLElement, baseUrl: string): App {
  const app = new App(root, new ApiClient(baseUrl));
  app.renderSessionBar();
  return app;
}
