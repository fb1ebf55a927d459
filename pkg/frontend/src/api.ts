/** Thin typed client for the scenario service; all numbers displayed by the
 * UI come straight out of these responses. */

import type {
  CompareRow,
  LockMap,
  ModelCatalog,
  ScenarioResult,
  StoredScenario,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public detail: string = "",
    public status: number = 0,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function handle<T>(resp: Response): Promise<T> {
  if (resp.ok) {
    return (await resp.json()) as T;
  }
  let code = "model_error";
  let message = `request failed with status ${resp.status}`;
  let detail = "";
  try {
    const body = await resp.json();
    if (body && body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
      detail = body.error.detail ?? "";
    }
  } catch {
    // non-JSON error body; keep the status message
  }
  throw new ApiError(code, message, detail, resp.status);
}

export class Client {
  constructor(private base: string = "") {}

  private async post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    const resp = await fetch(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    return handle<T>(resp);
  }

  async getModel(): Promise<ModelCatalog> {
    return handle(await fetch(this.base + "/api/model"));
  }

  query(locks: LockMap, signal?: AbortSignal): Promise<ScenarioResult> {
    return this.post("/api/query", { locks }, signal);
  }

  async compare(lockSets: LockMap[]): Promise<CompareRow[]> {
    const body = { scenarios: lockSets.map((locks) => ({ locks })) };
    const resp = await this.post<{ rows: CompareRow[] }>("/api/compare", body);
    return resp.rows;
  }

  async listScenarios(): Promise<StoredScenario[]> {
    const resp = await handle<{ scenarios: StoredScenario[] }>(
      await fetch(this.base + "/api/scenarios"),
    );
    return resp.scenarios;
  }

  saveScenario(name: string, locks: LockMap, note = ""): Promise<StoredScenario> {
    return this.post("/api/scenarios", { name, locks, note });
  }

  async deleteScenario(id: string): Promise<void> {
    await handle(await fetch(`${this.base}/api/scenarios/${id}`, { method: "DELETE" }));
  }
}
