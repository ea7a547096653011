// Minimal DOM construction helpers; no framework.

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | boolean | EventListener> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === 'function') {
      node.addEventListener(key.replace(/^on/, ''), value as EventListener);
    } else if (typeof value === 'boolean') {
      if (key === 'disabled' && node instanceof HTMLButtonElement) {
        node.disabled = value;
      } else if (value) {
        node.setAttribute(key, '');
      }
    } else {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.append(child instanceof Node ? child : document.createTextNode(child));
  }
  return node;
}

export function clear(node: HTMLElement): HTMLElement {
  node.replaceChildren();
  return node;
}

/** A mutation control: rendered for everyone, enabled only when allowed.
 *  Unauthorized roles see it disabled rather than hidden. */
export function mutationButton(
  label: string,
  allowed: boolean,
  onClick: () => void,
  extraClass = '',
): HTMLButtonElement {
  const button = el('button', {
    class: `mutation ${extraClass}`.trim(),
    'data-mutation': label,
    onclick: () => { if (allowed) onClick(); },
  }, label);
  button.disabled = !allowed;
  if (!allowed) button.title = 'Your role does not permit this action';
  return button;
}

export function toast(container: HTMLElement, kind: 'info' | 'error', message: string,
                      rawPayload?: string): HTMLElement {
  const box = el('div', { class: `toast toast-${kind}` }, el('span', {}, message));
  if (rawPayload !== undefined) {
    const details = el('details', { class: 'toast-payload' },
      el('summary', {}, 'raw payload'),
      el('pre', {}, rawPayload));
    box.append(details);
  }
  container.append(box);
  return box;
}
