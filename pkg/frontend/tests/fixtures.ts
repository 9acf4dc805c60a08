import type { PredictRequest, ServiceSchema } from "../src/types";

/**
 * The standard discharge schema: 11 features, all categorical except
 * Length of Stay. Vocabularies are small stand-ins; order matters (the
 * form renders in schema order, dropdowns in vocabulary order).
 */
export const FIXTURE_SCHEMA: ServiceSchema = {
  features: [
    { name: "Operating Certificate Number", kind: "categorical", categories: ["0101", "0202", "0303"] },
    { name: "Length of Stay", kind: "numeric" },
    { name: "CCS Diagnosis Code", kind: "categorical", categories: ["100", "109", "122"] },
    { name: "APR DRG Code", kind: "categorical", categories: ["194", "720"] },
    { name: "Payment Typology 1", kind: "categorical", categories: ["Medicaid", "Medicare", "Private"] },
    { name: "Ethnicity", kind: "categorical", categories: ["Not Span/Hispanic", "Spanish/Hispanic"] },
    { name: "APR Medical Surgical Description", kind: "categorical", categories: ["Medical", "Surgical"] },
    { name: "APR Risk of Mortality", kind: "categorical", categories: ["Extreme", "Major", "Minor", "Moderate"] },
    { name: "Gender", kind: "categorical", categories: ["F", "M"] },
    { name: "Emergency Department Indicator", kind: "categorical", categories: ["N", "Y"] },
    { name: "APR Severity of Illness Code", kind: "categorical", categories: ["1", "2", "3", "4"] },
  ],
  target: "Total Costs",
  fingerprint: "aaaabbbbccccdddd",
};

/** A complete, valid request against FIXTURE_SCHEMA. */
export function fixtureRequest(overrides: PredictRequest = {}): PredictRequest {
  const request: PredictRequest = {};
  for (const feature of FIXTURE_SCHEMA.features) {
    request[feature.name] =
      feature.kind === "numeric" ? 4 : (feature.categories as string[])[0];
  }
  return { ...request, ...overrides };
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/**
 * Fetch stand-in wired to a depth-1 tree model: stays of 2.5 days or less
 * cost $1,000, longer stays cost $9,000. Mirrors the service's endpoints
 * and error contract closely enough for client tests.
 */
export function fixtureFetch(input: string, init?: RequestInit): Promise<Response> {
  const path = input.replace(/^https?:\/\/[^/]+/, "");
  if (path === "/health") {
    return Promise.resolve(
      jsonResponse(200, { status: "ok", model_loaded: true, model_family: "tree" }),
    );
  }
  if (path === "/schema") {
    return Promise.resolve(jsonResponse(200, FIXTURE_SCHEMA));
  }
  if (path === "/predict") {
    const body = JSON.parse((init?.body as string) ?? "{}") as PredictRequest;
    for (const feature of FIXTURE_SCHEMA.features) {
      if (!(feature.name in body)) {
        return Promise.resolve(jsonResponse(400, { detail: `missing field: ${feature.name}` }));
      }
    }
    const stay = Number(body["Length of Stay"]);
    if (stay < 0) {
      return Promise.resolve(
        jsonResponse(422, { detail: "field Length of Stay must be non-negative" }),
      );
    }
    const cost = stay <= 2.5 ? 1000 : 9000;
    return Promise.resolve(
      jsonResponse(200, {
        predicted_cost: cost,
        model_family: "tree",
        schema_fingerprint: FIXTURE_SCHEMA.fingerprint,
      }),
    );
  }
  return Promise.resolve(jsonResponse(404, { detail: `no route: ${path}` }));
}

/** Wait for queued microtasks/timers so in-flight predictions settle. */
export function settle(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
