// Shared formatters: the tests render expected payload fields through these
// same functions, so DOM text and payload values can be compared exactly.

export function fmtPm(value: number): string {
  return value.toFixed(1);
}

export function fmtCost(value: number): string {
  return Math.round(value).toString();
}

export function fmtScore(value: number): string {
  return value.toFixed(4);
}

export function fmtFraction(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}
