/** DOM rendering; every number on screen is read from an API response. */

import {
  bestByMagnitude,
  formatPercent,
  formatValue,
  routePairs,
  utilityRows,
} from "./format.js";
import type {
  CompareRow,
  LockMap,
  NodeInfo,
  ScenarioResult,
  StoredScenario,
  UtilityInfo,
} from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

export interface DecisionHandlers {
  onLock: (node: string, state: string) => void;
  onUnlock: (node: string) => void;
}

/** Decision cards: an unlocked node shows all states green; locking one
 * turns it red and greys the rest. The routes node renders as a select
 * grouped by direction pairs. */
export function renderDecisions(
  container: HTMLElement,
  nodes: NodeInfo[],
  locks: LockMap,
  handlers: DecisionHandlers,
): void {
  container.replaceChildren();
  for (const node of nodes.filter((n) => n.kind === "decision")) {
    const card = el("div", "card decision-card");
    const head = el("div", "card-head", node.name);
    if (node.admissibility_depends_on?.length) {
      const hint = el("span", "hint");
      hint.textContent = "constrained by " + node.admissibility_depends_on.join(", ");
      head.appendChild(hint);
    }
    card.appendChild(head);
    const locked = locks[node.id];
    if (node.id === "routes") {
      card.appendChild(renderRoutePicker(node, locked, handlers));
    } else {
      const row = el("div", "states");
      for (const state of node.states) {
        const chip = el("button", "state-chip", state);
        if (locked === undefined) {
          chip.classList.add("free");
        } else if (locked === state) {
          chip.classList.add("locked");
        } else {
          chip.classList.add("inactive");
        }
        chip.addEventListener("click", () => {
          if (locked === state) handlers.onUnlock(node.id);
          else handlers.onLock(node.id, state);
        });
        row.appendChild(chip);
      }
      card.appendChild(row);
    }
    container.appendChild(card);
  }
}

function renderRoutePicker(
  node: NodeInfo,
  locked: string | number | undefined,
  handlers: DecisionHandlers,
): HTMLElement {
  const select = el("select", "route-picker");
  const none = el("option", "", "any route (unlocked)");
  none.value = "";
  select.appendChild(none);
  for (const group of routePairs(node.states)) {
    const og = document.createElement("optgroup");
    og.label = `pair ${group.pair}`;
    for (const label of group.labels) {
      const opt = el("option", "", label);
      opt.value = label;
      if (locked === label) opt.selected = true;
      og.appendChild(opt);
    }
    select.appendChild(og);
  }
  select.addEventListener("change", () => {
    if (select.value === "") handlers.onUnlock(node.id);
    else handlers.onLock(node.id, select.value);
  });
  return select;
}

/** Posterior bar monitors for every chance node. */
export function renderMonitors(
  container: HTMLElement,
  nodes: NodeInfo[],
  result: ScenarioResult | null,
): void {
  container.replaceChildren();
  for (const node of nodes.filter((n) => n.kind === "chance")) {
    const card = el("div", "card monitor");
    card.appendChild(el("div", "card-head", node.name));
    const probs = result?.posteriors[node.id];
    node.states.forEach((state, i) => {
      const row = el("div", "bar-row");
      row.appendChild(el("span", "bar-label", state));
      const track = el("div", "bar-track");
      const fill = el("div", "bar-fill");
      const p = probs ? probs[i] : 0;
      fill.style.width = `${100 * p}%`;
      track.appendChild(fill);
      row.appendChild(track);
      row.appendChild(el("span", "bar-value", probs ? formatPercent(p) : "-"));
      card.appendChild(row);
    });
    container.appendChild(card);
  }
}

/** Nine utilities with units, or the inconsistency banner instead. */
export function renderUtilities(
  panel: HTMLElement,
  banner: HTMLElement,
  utilities: UtilityInfo[],
  result: ScenarioResult | null,
): void {
  banner.replaceChildren();
  banner.hidden = true;
  panel.replaceChildren();
  if (!result) return;
  if (!result.consistent) {
    banner.hidden = false;
    banner.appendChild(el("strong", "", "Inconsistent scenario: "));
    banner.appendChild(document.createTextNode(result.reason));
    return;
  }
  for (const row of utilityRows(utilities, result)) {
    const line = el("div", "utility-row");
    line.appendChild(el("span", "utility-name", row.name));
    line.appendChild(el("span", "utility-units", row.units));
    line.appendChild(el("span", "utility-value", formatValue(row.value)));
    panel.appendChild(line);
  }
}

export function renderNetworkError(banner: HTMLElement, retry: () => void): void {
  banner.hidden = false;
  banner.replaceChildren();
  banner.appendChild(el("strong", "", "Network error. "));
  const btn = el("button", "retry", "Retry");
  btn.addEventListener("click", retry);
  banner.appendChild(btn);
}

export interface PinHandlers {
  onUnpin: (id: string) => void;
}

/** Pinned-scenario comparison: one column per utility, the value closest
 * to zero highlighted per column (tooltip states the convention). */
export function renderCompare(
  container: HTMLElement,
  utilities: UtilityInfo[],
  pins: StoredScenario[],
  rows: CompareRow[],
  handlers: PinHandlers,
): void {
  container.replaceChildren();
  if (!pins.length) {
    container.appendChild(el("p", "empty", "No pinned scenarios yet."));
    return;
  }
  const table = el("table", "compare");
  const head = el("tr");
  head.appendChild(el("th", "", "scenario"));
  for (const u of utilities) {
    const th = el("th", "", u.name);
    th.title = "The further the value is from zero, the more undesirable; " +
      "the value closest to zero is highlighted.";
    head.appendChild(th);
  }
  head.appendChild(el("th"));
  table.appendChild(head);

  const columns = utilities.map((u) =>
    rows.map((r) => (r.consistent ? r.utilities[u.id] : null)),
  );
  const best = columns.map(bestByMagnitude);

  pins.forEach((pin, ri) => {
    const tr = el("tr");
    tr.appendChild(el("td", "pin-name", pin.name));
    const row = rows[ri];
    utilities.forEach((u, ci) => {
      if (!row || !row.consistent) {
        tr.appendChild(el("td", "inconsistent", row ? row.reason ?? "-" : "-"));
        return;
      }
      const td = el("td", "value", formatValue(row.utilities[u.id]));
      if (best[ci] === ri) td.classList.add("best");
      tr.appendChild(td);
    });
    const act = el("td");
    const unpin = el("button", "unpin", "unpin");
    unpin.addEventListener("click", () => handlers.onUnpin(pin.id));
    act.appendChild(unpin);
    tr.appendChild(act);
    table.appendChild(tr);
  });
  container.appendChild(table);
}
