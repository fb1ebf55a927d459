/** Wiring: state, scheduler and rendering over the scenario-service API. */

import { Client } from "./api.js";
import { QueryScheduler } from "./scheduler.js";
import {
  renderCompare,
  renderDecisions,
  renderMonitors,
  renderNetworkError,
  renderUtilities,
} from "./render.js";
import type {
  LockMap,
  ModelCatalog,
  ScenarioResult,
  StoredScenario,
} from "./types.js";

const client = new Client();

interface UiState {
  catalog: ModelCatalog | null;
  locks: LockMap;
  live: ScenarioResult | null;
  pins: StoredScenario[];
}

const state: UiState = { catalog: null, locks: {}, live: null, pins: [] };

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

const scheduler = new QueryScheduler(
  (locks, signal) => client.query(locks, signal),
  (result) => {
    state.live = result;
    document.body.classList.remove("stale");
    redraw();
  },
  () => {
    document.body.classList.add("stale");
    renderNetworkError(byId("banner"), () => scheduler.request(state.locks));
  },
);

function redraw(): void {
  if (!state.catalog) return;
  renderDecisions(byId("decisions"), state.catalog.nodes, state.locks, {
    onLock: (node, stateName) => {
      state.locks = { ...state.locks, [node]: stateName };
      redraw();
      scheduler.request(state.locks);
    },
    onUnlock: (node) => {
      const { [node]: _gone, ...rest } = state.locks;
      state.locks = rest;
      redraw();
      scheduler.request(state.locks);
    },
  });
  renderMonitors(byId("monitors"), state.catalog.nodes, state.live);
  renderUtilities(byId("utilities"), byId("banner"),
    state.catalog.utilities, state.live);
  byId("version").textContent =
    state.live?.model_version ?? state.catalog.model_version;
}

async function refreshPins(): Promise<void> {
  if (!state.catalog) return;
  state.pins = await client.listScenarios();
  const rows = state.pins.length
    ? await client.compare(state.pins.map((p) => p.locks))
    : [];
  renderCompare(byId("pins"), state.catalog.utilities, state.pins, rows, {
    onUnpin: (id) => {
      void client.deleteScenario(id).then(refreshPins);
    },
  });
}

async function pinCurrent(): Promise<void> {
  if (!state.live || !state.live.consistent) {
    return; // only consistent scenarios can be pinned
  }
  let name = prompt("Scenario name:");
  while (name) {
    if (!state.pins.some((p) => p.name === name)) break;
    name = prompt(`"${name}" is taken, pick another name:`, name);
  }
  if (!name) return;
  await client.saveScenario(name, state.locks);
  await refreshPins();
}

function initializeNetwork(): void {
  state.locks = {};
  redraw();
  scheduler.request(state.locks);
}

async function boot(): Promise<void> {
  state.catalog = await client.getModel();
  redraw();
  scheduler.request(state.locks);
  await refreshPins();
  byId("pin").addEventListener("click", () => void pinCurrent());
  byId("reset").addEventListener("click", initializeNetwork);
}

void boot();
