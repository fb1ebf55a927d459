/** Shapes of the scenario-service API payloads. */

export type NodeKind = "decision" | "chance";

export interface NodeInfo {
  id: string;
  name: string;
  kind: NodeKind;
  states: string[];
  parents: string[];
  admissibility_depends_on?: string[];
}

export interface UtilityInfo {
  id: string;
  name: string;
  units: string;
  parents: string[];
}

export interface ModelCatalog {
  model_version: string;
  nodes: NodeInfo[];
  utilities: UtilityInfo[];
  meta: Record<string, unknown>;
}

export interface ScenarioResult {
  consistent: boolean;
  reason: string;
  posteriors: Record<string, number[]>;
  utilities: Record<string, number>;
  model_version?: string;
}

export interface StoredScenario {
  id: string;
  name: string;
  locks: Record<string, number>;
  note: string;
  created_at: number;
}

export interface CompareRow {
  scenario: string;
  consistent: boolean;
  reason?: string;
  utilities: Record<string, number>;
}

/** Locks keyed by node id; values are state names or indices. */
export type LockMap = Record<string, string | number>;
