/** Number formatting shared across panels. */

/**
 * Format at 15 significant digits with trailing zeros stripped, matching
 * the service's coefficient text so displayed values agree digit for
 * digit with CLI and report output.
 */
export function fmt15(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  if (value === 0) return "0";
  let s = value.toPrecision(15);
  if (s.includes("e") || s.includes("E")) return s;
  if (s.includes(".")) s = s.replace(/0+$/, "").replace(/\.$/, "");
  return s;
}

/** Fixed six decimals, matching the CLI's utility rendering. */
export function fmtUtility(value: number): string {
  return value.toFixed(6);
}
