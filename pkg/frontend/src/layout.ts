// Deterministic graph layouts. Positions derive from node names (hash
// seeded), so a given subgraph always renders the same picture and the
// layout switch is a pure re-projection that cannot lose selection.

export interface Point { x: number; y: number; }

function hash(name: string): number {
  let h = 2166136261;
  for (let i = 0; i < name.length; i += 1) {
    h ^= name.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return (h >>> 0) / 4294967295;
}

export function forceLayout(
  nodes: string[],
  edges: Array<[string, string]>,
  width: number,
  height: number,
  iterations = 120,
): Map<string, Point> {
  const positions = new Map<string, Point>();
  nodes.forEach((name) => {
    positions.set(name, {
      x: 40 + hash(name) * (width - 80),
      y: 40 + hash(name + '|y') * (height - 80),
    });
  });
  const k = Math.sqrt((width * height) / Math.max(nodes.length, 1)) * 0.6;
  for (let step = 0; step < iterations; step += 1) {
    const forces = new Map<string, Point>(nodes.map((n) => [n, { x: 0, y: 0 }]));
    for (let i = 0; i < nodes.length; i += 1) {
      for (let j = i + 1; j < nodes.length; j += 1) {
        const a = positions.get(nodes[i])!;
        const b = positions.get(nodes[j])!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const dist = Math.max(Math.hypot(dx, dy), 0.01);
        const repulse = (k * k) / dist;
        const fx = (dx / dist) * repulse;
        const fy = (dy / dist) * repulse;
        const fa = forces.get(nodes[i])!;
        const fb = forces.get(nodes[j])!;
        fa.x += fx; fa.y += fy;
        fb.x -= fx; fb.y -= fy;
      }
    }
    for (const [source, target] of edges) {
      const a = positions.get(source);
      const b = positions.get(target);
      if (!a || !b) continue;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 0.01);
      const attract = (dist * dist) / k;
      const fx = (dx / dist) * attract;
      const fy = (dy / dist) * attract;
      const fa = forces.get(source)!;
      const fb = forces.get(target)!;
      fa.x -= fx; fa.y -= fy;
      fb.x += fx; fb.y += fy;
    }
    const temperature = 0.1 * Math.max(width, height) * (1 - step / iterations);
    for (const name of nodes) {
      const p = positions.get(name)!;
      const f = forces.get(name)!;
      const mag = Math.max(Math.hypot(f.x, f.y), 0.01);
      p.x += (f.x / mag) * Math.min(mag, temperature);
      p.y += (f.y / mag) * Math.min(mag, temperature);
      p.x = Math.min(width - 20, Math.max(20, p.x));
      p.y = Math.min(height - 20, Math.max(20, p.y));
    }
  }
  return positions;
}

export function hierarchicalLayout(
  nodes: string[],
  edges: Array<[string, string]>,
  root: string | null,
  width: number,
  height: number,
): Map<string, Point> {
  const adjacency = new Map<string, string[]>();
  for (const [a, b] of edges) {
    adjacency.set(a, [...(adjacency.get(a) ?? []), b]);
    adjacency.set(b, [...(adjacency.get(b) ?? []), a]);
  }
  const start = root && nodes.includes(root) ? root : nodes[0];
  const level = new Map<string, number>();
  if (start !== undefined) {
    level.set(start, 0);
    const queue = [start];
    while (queue.length) {
      const current = queue.shift()!;
      for (const next of adjacency.get(current) ?? []) {
        if (!level.has(next)) {
          level.set(next, level.get(current)! + 1);
          queue.push(next);
        }
      }
    }
  }
  let extra = 0;
  for (const name of nodes) {
    if (!level.has(name)) {
      extra += 1;
      level.set(name, extra); // disconnected nodes fan out below
    }
  }
  const byLevel = new Map<number, string[]>();
  for (const name of [...nodes].sort()) {
    const l = level.get(name)!;
    byLevel.set(l, [...(byLevel.get(l) ?? []), name]);
  }
  const depth = Math.max(...byLevel.keys(), 0) + 1;
  const positions = new Map<string, Point>();
  for (const [l, names] of byLevel) {
    names.forEach((name, index) => {
      positions.set(name, {
        x: ((index + 1) / (names.length + 1)) * width,
        y: ((l + 0.5) / depth) * height,
      });
    });
  }
  return positions;
}
