/** Wire types for the prediction service. */

export interface SchemaFeature {
  name: string;
  kind: "categorical" | "numeric";
  /** Present only for categorical features; sorted lexicographically. */
  categories?: string[];
}

export interface ServiceSchema {
  features: SchemaFeature[];
  target: string;
  fingerprint: string;
}

/** One value per schema feature: strings for categories, numbers otherwise. */
export type PredictRequest = Record<string, string | number>;

export interface PredictResponse {
  predicted_cost: number;
  model_family: string;
  schema_fingerprint: string;
}

export interface HealthResponse {
  status: string;
  model_loaded: boolean;
  model_family?: string;
}
