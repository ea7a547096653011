import { mountApp } from './app.js';

const params = new URLSearchParams(window.location.search);
const base = params.get('api') ?? `${window.location.protocol}//${window.location.hostname}:8080`;

const root = document.getElementById('app');
if (root) {
  const app = mountApp(root, base);
  void app.route();
}
