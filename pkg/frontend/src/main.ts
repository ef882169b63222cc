import { ApiClient } from './api.js';
import { bindApp } from './render.js';
import { WizardStore } from './state.js';

declare global {
  interface Window {
    FAIRAUDIT_API?: string;
  }
}

function browserDownload(text: string, filename: string): void {
  const blob = new Blob([text], { type: 'application/json' });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement('a');
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

export async function boot(root: HTMLElement, baseUrl: string): Promise<WizardStore> {
  const store = new WizardStore(new ApiClient(baseUrl), window.sessionStorage);
  bindApp(root, store, browserDownload);
  await store.init();
  return store;
}

const mount = document.getElementById('app');
if (mount) {
  void boot(mount, window.FAIRAUDIT_API ?? '');
}
