import { describe, expect, it } from 'vitest';

import { DEFAULT_STATE, encodeFragment, parseFragment, ViewState } from '../src/state.js';

describe('view state fragment encoding', () => {
  it('round-trips the default state', () => {
    expect(parseFragment(encodeFragment(DEFAULT_STATE))).toEqual(DEFAULT_STATE);
    expect(encodeFragment(DEFAULT_STATE)).toBe('#/');
  });

  it('round-trips a fully populated graph state', () => {
    const state: ViewState = {
      route: 'graph',
      documentId: 'd1',
      entity: 'GHG Emissions',
      hops: 3,
      predicates: ['covers', 'has target of'],
      includeDeleted: true,
      layout: 'hierarchical',
      zoom: 1.6,
      edgeCap: 250,
      selection: { kind: 'edge', id: 't42' },
    };
    expect(parseFragment(encodeFragment(state))).toEqual(state);
  });

  it('parses deep links with document ids and selections', () => {
    const state = parseFragment('#/review/d7?sel=node:Scope 1');
    expect(state.route).toBe('review');
    expect(state.documentId).toBe('d7');
    expect(state.selection).toEqual({ kind: 'node', id: 'Scope 1' });
  });

  it('falls back to defaults on garbage', () => {
    expect(parseFragment('')).toEqual(DEFAULT_STATE);
    expect(parseFragment('#/unknown-route?hops=banana&zoom=-4')).toEqual(DEFAULT_STATE);
    const clamped = parseFragment('#/graph/d1?hops=99&cap=0');
    expect(clamped.hops).toBe(4);
    expect(clamped.edgeCap).toBe(1);
  });

  it('keeps selection ids containing colons intact', () => {
    const state = parseFragment('#/graph/d1?sel=edge:weird:id:1');
    expect(state.selection).toEqual({ kind: 'edge', id: 'weird:id:1' });
  });
});
