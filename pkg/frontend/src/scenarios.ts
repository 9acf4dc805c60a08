import type { PredictRequest } from "./types";

/**
 * One saved what-if scenario. `predictedCost` is set only from a service
 * response; while a request is in flight the scenario stays pending so the
 * UI never shows a number it did not receive.
 */
export interface Scenario {
  id: number;
  label: string;
  request: PredictRequest;
  predictedCost: number | null;
}

export interface ComparisonRow {
  scenario: Scenario;
  /** Dollar difference against the cheapest priced scenario. */
  delta: number;
}

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

const STORAGE_KEY = "cost-explorer-scenarios";

/**
 * Session-scoped scenario list with stale-response protection.
 *
 * Each scenario carries a request token; a predict response is applied only
 * if its token is still current, so re-submits and removals silently drop
 * answers that arrive late.
 */
export class ScenarioStore {
  private scenarios: Scenario[] = [];
  private tokens = new Map<number, number>();
  private nextId = 1;
  private nextToken = 1;
  private storage: StorageLike | null;

  constructor(storage: StorageLike | null = defaultStorage()) {
    this.storage = storage;
    this.restore();
  }

  list(): readonly Scenario[] {
    return this.scenarios;
  }

  /** Add a pending scenario; labels must be unique within the session. */
  add(label: string, request: PredictRequest): Scenario {
    const trimmed = label.trim();
    if (!trimmed) throw new Error("scenario label must not be empty");
    if (this.scenarios.some((s) => s.label === trimmed)) {
      throw new Error(`scenario label already in use: ${trimmed}`);
    }
    const scenario: Scenario = {
      id: this.nextId++,
      label: trimmed,
      request: { ...request },
      predictedCost: null,
    };
    this.scenarios.push(scenario);
    this.persist();
    return scenario;
  }

  /** Mark a request in flight; the returned token gates the response. */
  beginRequest(id: number): number {
    const token = this.nextToken++;
    this.tokens.set(id, token);
    return token;
  }

  /**
   * Record a service response. Returns false (and changes nothing) when the
   * scenario is gone or the token is no longer the current one.
   */
  completeRequest(id: number, token: number, cost: number): boolean {
    if (this.tokens.get(id) !== token) return false;
    const scenario = this.scenarios.find((s) => s.id === id);
    if (!scenario) return false;
    scenario.predictedCost = cost;
    this.tokens.delete(id);
    this.persist();
    return true;
  }

  remove(id: number): void {
    this.scenarios = this.scenarios.filter((s) => s.id !== id);
    this.tokens.delete(id);
    this.persist();
  }

  /**
   * Priced scenarios sorted cheapest first, each with its delta against the
   * cheapest. Pending scenarios are excluded until the service answers.
   */
  compare(): ComparisonRow[] {
    const priced = this.scenarios
      .filter((s): s is Scenario & { predictedCost: number } => s.predictedCost !== null)
      .slice()
      .sort((a, b) => a.predictedCost - b.predictedCost);
    if (priced.length === 0) return [];
    const cheapest = priced[0].predictedCost;
    return priced.map((scenario) => ({ scenario, delta: scenario.predictedCost - cheapest }));
  }

  private persist(): void {
    if (!this.storage) return;
    this.storage.setItem(
      STORAGE_KEY,
      JSON.stringify({ nextId: this.nextId, scenarios: this.scenarios }),
    );
  }

  private restore(): void {
    if (!this.storage) return;
    const raw = this.storage.getItem(STORAGE_KEY);
    if (!raw) return;
    try {
      const doc = JSON.parse(raw) as { nextId?: number; scenarios?: Scenario[] };
      if (Array.isArray(doc.scenarios)) {
        this.scenarios = doc.scenarios;
        this.nextId = doc.nextId ?? this.scenarios.length + 1;
      }
    } catch {
      /* corrupt storage: start clean */
    }
  }
}

function defaultStorage(): StorageLike | null {
  try {
    return typeof sessionStorage === "undefined" ? null : sessionStorage;
  } catch {
    return null;
  }
}
