import { formatUSD } from "./money";
import type { ComparisonRow } from "./scenarios";

function cell(tag: "td" | "th", text: string, className = ""): HTMLTableCellElement {
  const el = document.createElement(tag);
  el.textContent = text;
  if (className) el.className = className;
  return el;
}

/**
 * Comparison table: one row per priced scenario, cheapest first, with the
 * dollar delta against the cheapest. Every displayed amount comes from a
 * service response; pending scenarios never appear here.
 */
export function renderComparisonTable(
  rows: ComparisonRow[],
  onRemove: (id: number) => void,
): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "comparison";

  const thead = document.createElement("thead");
  const headRow = document.createElement("tr");
  for (const title of ["Scenario", "Predicted cost", "Delta vs cheapest", ""]) {
    headRow.append(cell("th", title));
  }
  thead.append(headRow);

  const tbody = document.createElement("tbody");
  for (const { scenario, delta } of rows) {
    const row = document.createElement("tr");
    row.dataset.scenarioId = String(scenario.id);
    row.append(
      cell("td", scenario.label),
      cell("td", formatUSD(scenario.predictedCost as number), "cost"),
      cell("td", delta === 0 ? formatUSD(0) : `+${formatUSD(delta)}`, "delta"),
    );

    const removeButton = document.createElement("button");
    removeButton.type = "button";
    removeButton.textContent = "remove";
    removeButton.addEventListener("click", () => onRemove(scenario.id));
    const actions = cell("td", "");
    actions.append(removeButton);
    row.append(actions);
    tbody.append(row);
  }

  table.append(thead, tbody);
  return table;
}
