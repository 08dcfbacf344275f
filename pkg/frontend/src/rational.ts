/** Exact rationals as the API ships them: "num" or "num/den" strings.
 *
 * Display always passes the server string through verbatim; parsing
 * exists only so the what-if panel can tell whether a bound moved.
 */

export interface Rat {
  num: bigint;
  den: bigint;
}

const RAT_RE = /^-?\d+(\/[1-9]\d*)?$/;

export function isRatText(text: string): boolean {
  return RAT_RE.test(text);
}

export function parseRat(text: string): Rat {
  if (!RAT_RE.test(text)) {
    throw new Error(`not an exact rational: '${text}'`);
  }
  const slash = text.indexOf("/");
  if (slash < 0) {
    return { num: BigInt(text), den: 1n };
  }
  return { num: BigInt(text.slice(0, slash)), den: BigInt(text.slice(slash + 1)) };
}

export function cmpRat(a: Rat, b: Rat): -1 | 0 | 1 {
  const left = a.num * b.den;
  const right = b.num * a.den;
  return left < right ? -1 : left > right ? 1 : 0;
}

export function cmpRatText(a: string, b: string): -1 | 0 | 1 {
  return cmpRat(parseRat(a), parseRat(b));
}
