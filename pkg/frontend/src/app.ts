import { ApiClient, ApiError } from "./api";
import { featureFromDetail, PredictForm } from "./form";
import { formatUSD } from "./money";
import { ScenarioStore } from "./scenarios";
import { renderComparisonTable } from "./table";
import type { ServiceSchema } from "./types";

/**
 * Wires the schema-driven form, the scenario store, and the comparison
 * table into a container element. Exported as a function so tests can
 * mount it against a mocked client and a detached DOM node.
 */
export async function mountApp(
  root: HTMLElement,
  client: ApiClient,
  store: ScenarioStore = new ScenarioStore(),
): Promise<void> {
  root.textContent = "";

  let schema: ServiceSchema;
  try {
    schema = await client.schema();
  } catch (error) {
    renderRetryBanner(root, error, () => mountApp(root, client, store));
    return;
  }

  const banner = document.createElement("div");
  banner.className = "banner";
  banner.hidden = true;

  const result = document.createElement("p");
  result.className = "latest-result";

  const tableMount = document.createElement("div");
  tableMount.className = "comparison-mount";

  const form = new PredictForm(schema, (label, request) => {
    banner.hidden = true;
    let scenario;
    try {
      scenario = store.add(label, request);
    } catch (error) {
      showBanner(banner, (error as Error).message);
      return;
    }
    const token = store.beginRequest(scenario.id);
    client
      .predict(request)
      .then((response) => {
        if (!store.completeRequest(scenario.id, token, response.predicted_cost)) return;
        result.textContent = `${scenario.label}: ${formatUSD(response.predicted_cost)}`;
        refreshTable();
      })
      .catch((error) => {
        // Validation problems point at the field; anything else (server
        // down, 5xx) raises the banner and the scenario stays pending.
        if (error instanceof ApiError && (error.status === 400 || error.status === 422)) {
          const feature = featureFromDetail(error.detail, schema);
          if (feature) form.showFieldError(feature, error.detail);
          else showBanner(banner, error.detail);
        } else {
          showBanner(banner, `prediction failed: ${(error as Error).message}`);
        }
      });
  });

  const refreshTable = () => {
    tableMount.textContent = "";
    tableMount.append(
      renderComparisonTable(store.compare(), (id) => {
        store.remove(id);
        refreshTable();
      }),
    );
  };

  refreshTable();
  root.append(banner, form.element, result, tableMount);
}

function showBanner(banner: HTMLElement, message: string): void {
  banner.textContent = message;
  banner.hidden = false;
}

function renderRetryBanner(root: HTMLElement, error: unknown, retry: () => void): void {
  const banner = document.createElement("div");
  banner.className = "banner retry-banner";
  banner.textContent = `could not load the model schema: ${(error as Error).message}`;
  const button = document.createElement("button");
  button.type = "button";
  button.textContent = "retry";
  button.addEventListener("click", retry);
  banner.append(" ", button);
  root.append(banner);
}
