import { readFileSync } from 'node:fs';
import { resolve } from 'node:path';

import { ApiClient } from '../src/api.js';

const REPO_ROOT = resolve(__dirname, '..', '..');

export function serviceBase(): string {
  const raw = readFileSync(resolve(__dirname, '.tmp', 'service.json'), 'utf-8');
  return JSON.parse(raw).base as string;
}

export async function loginAs(
  username: 'ui-expert' | 'ui-expert2' | 'ui-meta' | 'ui-admin',
): Promise<ApiClient> {
  const api = new ApiClient(serviceBase());
  await api.login(username, 'ui-password');
  return api;
}

export async function guestClient(): Promise<ApiClient> {
  const api = new ApiClient(serviceBase());
  await api.guest();
  return api;
}

export function demoIntake(): Record<string, unknown> {
  const raw = readFileSync(resolve(REPO_ROOT, 'fixtures', 'review_demo_intake.json'), 'utf-8');
  return JSON.parse(raw);
}

/** Ingest the 5-triple demo document; returns {document_id, graph_id}. */
export async function ingestDemoDocument(api: ApiClient): Promise<{ documentId: string; graphId: string }> {
  const response = await fetch(`${api.base}/documents?wait=true`, {
    method: 'POST',
    headers: {
      'Content-Type': 'application/json',
      Authorization: `Bearer ${api.token}`,
    },
    body: JSON.stringify({ intake: demoIntake() }),
  });
  if (!response.ok) throw new Error(`ingest failed: ${await response.text()}`);
  const body = await response.json();
  if (body.state !== 'done') throw new Error(`ingest job state: ${body.state} ${body.error ?? ''}`);
  return { documentId: body.document_id, graphId: body.graph_id };
}

export function mount(): HTMLElement {
  document.body.innerHTML = '';
  const root = document.createElement('div');
  root.id = 'app';
  document.body.append(root);
  return root;
}

export async function waitFor(
  condition: () => boolean,
  label: string,
  timeoutMs = 8_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (condition()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error(`timed out waiting for: ${label}`);
}

export function click(element: Element | null): void {
  if (!element) throw new Error('attempted to click a missing element');
  element.dispatchEvent(new MouseEvent('click', { bubbles: true }));
}
