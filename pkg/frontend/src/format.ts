/** Pure presentation helpers; no model math happens here, the values shown
 * are exactly the ones the service returned. */

import type { ScenarioResult, UtilityInfo } from "./types.js";

export function formatValue(v: number): string {
  return v.toLocaleString("en-US", {
    minimumFractionDigits: 2,
    maximumFractionDigits: 2,
  });
}

export function formatPercent(p: number): string {
  return (100 * p).toFixed(1) + " %";
}

/** Index of the value closest to zero (the negative-utility convention:
 * smaller magnitude is better); -1 when nothing is comparable. */
export function bestByMagnitude(values: Array<number | null>): number {
  let best = -1;
  let bestAbs = Infinity;
  values.forEach((v, i) => {
    if (v !== null && Math.abs(v) < bestAbs) {
      bestAbs = Math.abs(v);
      best = i;
    }
  });
  return best;
}

export interface UtilityRow {
  id: string;
  name: string;
  units: string;
  value: number;
}

/** Pair the catalog's utility metadata with the raw response values. */
export function utilityRows(
  utilities: UtilityInfo[],
  result: ScenarioResult,
): UtilityRow[] {
  return utilities.map((u) => ({
    id: u.id,
    name: u.name,
    units: u.units,
    value: result.utilities[u.id],
  }));
}

export interface RoutePair {
  pair: string;
  labels: string[];
}

/** Group route states by their outbound/return direction pairing:
 * "1A"/"1B" share pair "1" and keep catalog order. */
export function routePairs(states: string[]): RoutePair[] {
  const groups: RoutePair[] = [];
  const index = new Map<string, RoutePair>();
  for (const label of states) {
    const pair = label.replace(/[AB]$/, "");
    let group = index.get(pair);
    if (!group) {
      group = { pair, labels: [] };
      index.set(pair, group);
      groups.push(group);
    }
    group.labels.push(label);
  }
  return groups;
}
