const usd = new Intl.NumberFormat("en-US", {
  style: "currency",
  currency: "USD",
  minimumFractionDigits: 2,
  maximumFractionDigits: 2,
});

/** Render a dollar amount exactly as the service returned it, to cents. */
export function formatUSD(value: number): string {
  return usd.format(value);
}
