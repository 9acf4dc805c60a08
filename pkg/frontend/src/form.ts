import type { PredictRequest, ServiceSchema } from "./types";

/**
 * Schema-driven input form: one control per feature in schema order, a
 * dropdown for categoricals (options in vocabulary order behind an empty
 * placeholder) and a non-negative number input for numerics. Submit stays
 * disabled until every field has a value.
 */
export class PredictForm {
  readonly element: HTMLFormElement;
  private readonly controls = new Map<string, HTMLSelectElement | HTMLInputElement>();
  private readonly errors = new Map<string, HTMLElement>();
  private readonly submitButton: HTMLButtonElement;

  constructor(
    private readonly schema: ServiceSchema,
    private readonly onSubmit: (label: string, request: PredictRequest) => void,
  ) {
    const doc = document;
    this.element = doc.createElement("form");
    this.element.className = "predict-form";

    const labelRow = doc.createElement("div");
    labelRow.className = "form-row";
    const labelInput = doc.createElement("input");
    labelInput.type = "text";
    labelInput.name = "scenario-label";
    labelInput.placeholder = "Scenario label";
    labelInput.required = true;
    labelRow.append(fieldLabel(doc, "Scenario label"), labelInput);
    this.element.append(labelRow);

    for (const feature of schema.features) {
      const row = doc.createElement("div");
      row.className = "form-row";
      row.dataset.feature = feature.name;

      let control: HTMLSelectElement | HTMLInputElement;
      if (feature.kind === "categorical") {
        const select = doc.createElement("select");
        select.name = feature.name;
        const placeholder = doc.createElement("option");
        placeholder.value = "";
        placeholder.textContent = "choose...";
        select.append(placeholder);
        for (const category of feature.categories ?? []) {
          const option = doc.createElement("option");
          option.value = category;
          option.textContent = category;
          select.append(option);
        }
        control = select;
      } else {
        const input = doc.createElement("input");
        input.type = "number";
        input.name = feature.name;
        input.min = "0";
        input.step = "any";
        control = input;
      }
      control.addEventListener("input", () => this.refreshSubmitState());
      control.addEventListener("change", () => this.refreshSubmitState());
      this.controls.set(feature.name, control);

      const errorSlot = doc.createElement("span");
      errorSlot.className = "field-error";
      errorSlot.hidden = true;
      this.errors.set(feature.name, errorSlot);

      row.append(fieldLabel(doc, feature.name), control, errorSlot);
      this.element.append(row);
    }

    this.submitButton = doc.createElement("button");
    this.submitButton.type = "submit";
    this.submitButton.textContent = "Predict cost";
    this.submitButton.disabled = true;
    this.element.append(this.submitButton);

    labelInput.addEventListener("input", () => this.refreshSubmitState());
    this.element.addEventListener("submit", (event) => {
      event.preventDefault();
      if (this.submitButton.disabled) return;
      this.clearErrors();
      this.onSubmit(labelInput.value.trim(), this.values());
    });
  }

  /** Current form values typed per the schema. */
  values(): PredictRequest {
    const request: PredictRequest = {};
    for (const feature of this.schema.features) {
      const control = this.controls.get(feature.name)!;
      request[feature.name] =
        feature.kind === "numeric" ? Number(control.value) : control.value;
    }
    return request;
  }

  /** Repopulate every control from a saved scenario's request. */
  setValues(request: PredictRequest): void {
    for (const feature of this.schema.features) {
      const control = this.controls.get(feature.name);
      const value = request[feature.name];
      if (control && value !== undefined) control.value = String(value);
    }
    this.refreshSubmitState();
  }

  /** Show a service validation message inline next to the named field. */
  showFieldError(featureName: string, message: string): void {
    const slot = this.errors.get(featureName);
    if (!slot) return;
    slot.textContent = message;
    slot.hidden = false;
  }

  clearErrors(): void {
    for (const slot of this.errors.values()) {
      slot.textContent = "";
      slot.hidden = true;
    }
  }

  private refreshSubmitState(): void {
    const labelInput = this.element.querySelector<HTMLInputElement>(
      'input[name="scenario-label"]',
    )!;
    const allSet =
      labelInput.value.trim() !== "" &&
      [...this.controls.values()].every((control) => control.value !== "");
    this.submitButton.disabled = !allSet;
  }
}

function fieldLabel(doc: Document, text: string): HTMLLabelElement {
  const label = doc.createElement("label");
  label.textContent = text;
  return label;
}

/**
 * Map a service 400/422 detail string back to the offending feature, e.g.
 * "missing field: Gender" or "field Length of Stay must be a number".
 */
export function featureFromDetail(detail: string, schema: ServiceSchema): string | null {
  for (const feature of schema.features) {
    if (detail.includes(feature.name)) return feature.name;
  }
  return null;
}
