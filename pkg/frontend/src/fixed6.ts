/**
 * Exact fixed-point rendering of a double with six fractional digits.
 *
 * Matches CPython's "%.6f": the decision digits come from the exact binary
 * value of the double (not from a 17-digit shortcut) and halfway cases
 * round to even. Number.prototype.toFixed rounds halfway cases up instead,
 * so it cannot be used to reproduce the CLI's output.
 */

const SCALE = 1_000_000n;

export function formatFixed6(x: number): string {
  if (!Number.isFinite(x)) {
    throw new RangeError(`finite number required, got ${x}`);
  }
  const view = new DataView(new ArrayBuffer(8));
  view.setFloat64(0, x);
  const hi = view.getUint32(0);
  const lo = view.getUint32(4);
  const negative = hi >>> 31 === 1;
  const biasedExponent = (hi >>> 20) & 0x7ff;
  let mantissa = (BigInt(hi & 0xfffff) << 32n) | BigInt(lo);
  let exponent: bigint;
  if (biasedExponent === 0) {
    exponent = -1074n; // subnormal
  } else {
    mantissa |= 1n << 52n;
    exponent = BigInt(biasedExponent - 1075);
  }

  // units = round(|x| * 10^6), half to even, computed exactly
  let units: bigint;
  if (exponent >= 0n) {
    units = (mantissa << exponent) * SCALE;
  } else {
    const numerator = mantissa * SCALE;
    const quotient = numerator >> -exponent;
    const remainder = numerator - (quotient << -exponent);
    const half = 1n << (-exponent - 1n);
    const roundUp = remainder > half || (remainder === half && (quotient & 1n) === 1n);
    units = roundUp ? quotient + 1n : quotient;
  }

  const sign = negative ? "-" : "";
  const whole = units / SCALE;
  const fraction = (units % SCALE).toString().padStart(6, "0");
  return `${sign}${whole}.${fraction}`;
}
