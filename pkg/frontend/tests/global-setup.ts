// Spawns the real curation service (replay fixtures, no network) once
// for the whole UI test run, and tears it down afterwards.

import { spawn, execFileSync, ChildProcess } from 'node:child_process';
import { mkdirSync, rmSync, writeFileSync } from 'node:fs';
import { resolve } from 'node:path';

const FRONTEND_DIR = resolve(__dirname, '..');
const REPO_ROOT = resolve(FRONTEND_DIR, '..');
const TMP_DIR = resolve(__dirname, '.tmp');
const PORT = 8793;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;

export default async function setup(): Promise<() => void> {
  rmSync(TMP_DIR, { recursive: true, force: true });
  mkdirSync(TMP_DIR, { recursive: true });

  const dataDir = resolve(TMP_DIR, 'data');
  const fixture = resolve(REPO_ROOT, 'fixtures', 'managed_care_replay.jsonl');
  const configPath = resolve(TMP_DIR, 'config.yaml');
  writeFileSync(configPath, [
    `listen: {host: 127.0.0.1, port: ${PORT}}`,
    `data_dir: ${dataDir}`,
    'llm:',
    '  mode: replay',
    `  fixture_path: ${fixture}`,
    'thresholds: {coverage_threshold: 1.0, edge_cap: 500, session_ttl_hours: 24}',
    '',
  ].join('\n'));

  const accounts: Array<[string, string]> = [
    ['ui-expert', 'expert'],
    ['ui-expert2', 'expert'],
    ['ui-meta', 'meta_expert'],
    ['ui-admin', 'admin'],
  ];
  for (const [username, role] of accounts) {
    execFileSync('python3', [
      '-m', 'kgcurate.cli', 'account', 'create',
      '--username', username, '--password', 'ui-password', '--role', role,
      '--data-dir', dataDir,
    ], { cwd: REPO_ROOT });
  }

  server = spawn('python3', ['-m', 'kgcurate.cli', 'serve', '--config', configPath], {
    cwd: REPO_ROOT,
    stdio: ['ignore', 'pipe', 'pipe'],
  });
  server.stderr?.on('data', () => { /* uvicorn logs; keep quiet */ });

  const deadline = Date.now() + 60_000;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/health`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      server.kill();
      throw new Error('service did not become healthy within 60s');
    }
    await new Promise((r) => setTimeout(r, 100));
  }

  writeFileSync(resolve(TMP_DIR, 'service.json'), JSON.stringify({ base: BASE }));

  return () => {
    server?.kill();
  };
}
